//! Brute-force classical checks by tableau enumeration. Nothing here calls
//! into `schur` or `grass`.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{Monomial, Poly};

/// Largest `|lambda|` for which standard tableaux are enumerated.
pub const SYT_ENUMERATION_LIMIT: usize = 12;
/// Largest `|nu|` for which LR tableaux are enumerated.
pub const LR_ENUMERATION_LIMIT: usize = 10;

/// Classical Schur polynomial as the sum over semistandard tableaux of shape
/// `lambda` with entries in `1..=n`.
pub fn classical_schur_ssyt(lambda: &Partition, n: usize) -> Poly {
    let shape = lambda.parts();
    let cells: Vec<(usize, usize)> = shape
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len as usize).map(move |c| (r, c)))
        .collect();
    let mut filling: Vec<Vec<u32>> = shape.iter().map(|&len| vec![0; len as usize]).collect();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut weight = vec![0u32; n];
    fill_ssyt(&cells, 0, n as u32, &mut filling, &mut weight, &mut counts);
    Poly::from_terms(
        n,
        counts
            .into_iter()
            .map(|(x, c)| (Monomial::new(x, []), c.into())),
    )
}

fn fill_ssyt(
    cells: &[(usize, usize)],
    idx: usize,
    n: u32,
    filling: &mut [Vec<u32>],
    weight: &mut [u32],
    counts: &mut BTreeMap<Vec<u32>, u64>,
) {
    let Some(&(r, c)) = cells.get(idx) else {
        *counts.entry(weight.to_vec()).or_insert(0) += 1;
        return;
    };
    let left = if c > 0 { filling[r][c - 1] } else { 1 };
    let above = if r > 0 { filling[r - 1][c] + 1 } else { 1 };
    for v in left.max(above)..=n {
        filling[r][c] = v;
        weight[v as usize - 1] += 1;
        fill_ssyt(cells, idx + 1, n, filling, weight, counts);
        weight[v as usize - 1] -= 1;
    }
}

/// Number of Littlewood-Richardson tableaux of shape `nu / lambda` and
/// content `mu`; zero when the sizes or the containment do not match.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> Result<u64> {
    let size = nu.size() as usize;
    if size > LR_ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard {
            size,
            limit: LR_ENUMERATION_LIMIT,
        });
    }
    if nu.size() != lambda.size() + mu.size()
        || lambda.length() > nu.length()
        || (0..lambda.length()).any(|i| lambda.part(i) > nu.part(i))
    {
        return Ok(0);
    }
    // reading order: rows top to bottom, each row right to left
    let mut cells = Vec::new();
    for r in 0..nu.length() {
        for c in (lambda.part(r) as usize..nu.part(r) as usize).rev() {
            cells.push((r, c));
        }
    }
    let mut filling: Vec<Vec<u32>> = (0..nu.length())
        .map(|r| vec![0; nu.part(r) as usize])
        .collect();
    let mut used = vec![0u32; mu.length()];
    let mut count = 0;
    fill_lr(&cells, 0, lambda, mu, &mut filling, &mut used, &mut count);
    Ok(count)
}

fn fill_lr(
    cells: &[(usize, usize)],
    idx: usize,
    lambda: &Partition,
    mu: &Partition,
    filling: &mut [Vec<u32>],
    used: &mut [u32],
    count: &mut u64,
) {
    let Some(&(r, c)) = cells.get(idx) else {
        *count += 1;
        return;
    };
    // the right neighbour is already filled; rows weakly increase
    let max = if c + 1 < filling[r].len() {
        filling[r][c + 1]
    } else {
        mu.length() as u32
    };
    // the cell above, if it is part of the skew shape, is already filled
    let min = if r > 0 && c >= lambda.part(r - 1) as usize {
        filling[r - 1][c] + 1
    } else {
        1
    };
    for v in min..=max {
        let k = v as usize - 1;
        if used[k] >= mu.part(k) {
            continue;
        }
        // lattice word condition on the reading word so far
        if k > 0 && used[k] + 1 > used[k - 1] {
            continue;
        }
        used[k] += 1;
        filling[r][c] = v;
        fill_lr(cells, idx + 1, lambda, mu, filling, used, count);
        filling[r][c] = 0;
        used[k] -= 1;
    }
}

/// Hook length formula `|lambda|! / prod hooks`.
pub fn syt_count_hook(lambda: &Partition) -> BigUint {
    let parts = lambda.parts();
    let conj = |c: usize| parts.iter().filter(|&&p| p as usize > c).count();
    let mut numerator = BigUint::one();
    for k in 1..=lambda.size() {
        numerator *= k;
    }
    let mut hooks = BigUint::one();
    for (r, &len) in parts.iter().enumerate() {
        for c in 0..len as usize {
            let arm = len as usize - c - 1;
            let leg = conj(c) - r - 1;
            hooks *= arm + leg + 1;
        }
    }
    numerator / hooks
}

/// Counts standard tableaux by placing `1, 2, ...` one cell at a time.
pub fn syt_count_enumerated(lambda: &Partition) -> Result<u64> {
    let size = lambda.size() as usize;
    if size > SYT_ENUMERATION_LIMIT {
        return Err(Error::EnumerationGuard {
            size,
            limit: SYT_ENUMERATION_LIMIT,
        });
    }
    fn rec(target: &[u32], rows: &mut Vec<u32>, placed: usize, total: usize) -> u64 {
        if placed == total {
            return 1;
        }
        let mut count = 0;
        for r in 0..target.len() {
            let fits = rows[r] < target[r] && (r == 0 || rows[r - 1] > rows[r]);
            if fits {
                rows[r] += 1;
                count += rec(target, rows, placed + 1, total);
                rows[r] -= 1;
            }
        }
        count
    }
    let target = lambda.parts();
    Ok(rec(target, &mut vec![0; target.len()], 0, size))
}

/// Standard tableau count, by the hook length formula and by enumeration,
/// which must agree.
pub fn syt_count(lambda: &Partition) -> Result<BigUint> {
    let hook = syt_count_hook(lambda);
    let enumerated = syt_count_enumerated(lambda)?;
    if hook != BigUint::from(enumerated) {
        return Err(Error::Inconsistent(format!(
            "SYT count of {lambda}: hook formula {hook}, enumeration {enumerated}"
        )));
    }
    Ok(hook)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn ssyt_examples() {
        let s1 = classical_schur_ssyt(&p(&[1]), 2);
        assert_eq!(s1, &Poly::x(2, 1) + &Poly::x(2, 2));
        assert_eq!(classical_schur_ssyt(&p(&[1, 1]), 2), &Poly::x(2, 1) * &Poly::x(2, 2));
        let s21 = classical_schur_ssyt(&p(&[2, 1]), 3);
        assert_eq!(s21.len(), 7);
        let total: i64 = s21.terms().map(|(_, c)| i64::try_from(c).unwrap()).sum();
        assert_eq!(total, 8);
        assert!(classical_schur_ssyt(&p(&[1, 1, 1]), 2).is_zero());
        assert_eq!(classical_schur_ssyt(&p(&[]), 3), Poly::one(3));
    }

    #[test]
    fn lr_examples() {
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[2])).unwrap(), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[1, 1])).unwrap(), 1);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[3, 2, 1])).unwrap(), 2);
        assert_eq!(lr_coefficient(&p(&[2, 1]), &p(&[2, 1]), &p(&[4, 2])).unwrap(), 1);
        assert_eq!(lr_coefficient(&p(&[1]), &p(&[1]), &p(&[3])).unwrap(), 0);
        assert_eq!(lr_coefficient(&p(&[2]), &p(&[1]), &p(&[1, 1, 1])).unwrap(), 0);
        assert!(lr_coefficient(&p(&[6]), &p(&[5]), &p(&[11])).is_err());
    }

    #[test]
    fn lr_sums_match_ssyt_products() {
        // s_lambda * s_mu = sum_nu c s_nu, compared in 3 variables
        let n = 3;
        for lambda in Partition::all_in_box(2, 2) {
            for mu in Partition::all_in_box(2, 2) {
                let lhs = &classical_schur_ssyt(&lambda, n) * &classical_schur_ssyt(&mu, n);
                let mut rhs = Poly::zero(n);
                for nu in Partition::all_of_size(lambda.size() + mu.size(), n) {
                    let c = lr_coefficient(&lambda, &mu, &nu).unwrap();
                    rhs += &classical_schur_ssyt(&nu, n).scale(&c.into());
                }
                assert_eq!(lhs, rhs, "{lambda} * {mu}");
            }
        }
    }

    #[test]
    fn syt_examples() {
        assert_eq!(syt_count(&p(&[])).unwrap(), 1u32.into());
        assert_eq!(syt_count(&p(&[2, 1])).unwrap(), 2u32.into());
        assert_eq!(syt_count(&p(&[3, 2, 1])).unwrap(), 16u32.into());
        assert_eq!(syt_count_hook(&p(&[4, 4, 4])), 462u32.into());
        assert!(syt_count(&p(&[7, 6])).is_err());
    }

    #[test]
    fn syt_corner_recurrence() {
        for size in 1..=8 {
            for lambda in Partition::all_of_size(size, size as usize) {
                let sum: BigUint = lambda
                    .remove_one_box()
                    .iter()
                    .map(|smaller| syt_count(smaller).unwrap())
                    .sum();
                assert_eq!(syt_count(&lambda).unwrap(), sum, "{lambda}");
            }
        }
    }
}

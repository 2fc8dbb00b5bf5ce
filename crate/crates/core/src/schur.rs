//! Double monomials, the alternants `a_nu`, double Schur polynomials and
//! expansion of (skew-)symmetric polynomials in those bases.
//!
//! Conventions: `(x|t)^k = (x + t1)(x + t2)...(x + tk)`,
//! `a_nu = det((x_i|t)^{nu_j})`, `s_lambda = a_{lambda+rho} / a_rho` with
//! `rho = (n-1, ..., 1, 0)`.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::{Partition, StrictSequence};
use crate::poly::Poly;

/// `(x|t)^k` in a single variable.
pub fn double_monomial(k: u32) -> Poly {
    double_monomial_in(1, 1, k)
}

/// `(x_var|t)^k` inside a ring with `nx` x-variables.
pub fn double_monomial_in(nx: usize, var: usize, k: u32) -> Poly {
    double_monomial_powers(nx, var, k).pop().expect("at least one power")
}

/// `[(x_var|t)^0, ..., (x_var|t)^max]`.
pub(crate) fn double_monomial_powers(nx: usize, var: usize, max: u32) -> Vec<Poly> {
    let x = Poly::x(nx, var);
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(Poly::one(nx));
    for k in 1..=max as usize {
        let factor = &x + &Poly::t(nx, k);
        let next = &out[k - 1] * &factor;
        out.push(next);
    }
    out
}

fn check_arity(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidContext { n, m: 0 })
    } else {
        Ok(())
    }
}

fn check_length(nu: &StrictSequence, n: usize) -> Result<()> {
    check_arity(n)?;
    if nu.len() != n {
        return Err(Error::InvalidSequence(format!(
            "{nu} has length {}, expected {n}",
            nu.len()
        )));
    }
    Ok(())
}

/// The alternant `a_nu = sum_sigma sgn(sigma) prod_i (x_{sigma(i)}|t)^{nu_i}`.
///
/// Built from its terms with strictly decreasing x-exponents, the rest
/// following from skew-symmetry.
pub fn a_nu(nu: &StrictSequence, n: usize) -> Result<Poly> {
    check_length(nu, n)?;
    Ok(antisymmetrize(&alternant_strict_part(nu), n))
}

/// `e_j(t_1, ..., t_k)` at `[k][j]` for `k <= kmax`, arity 0.
fn elementary_table(kmax: u32) -> Vec<Vec<Poly>> {
    let mut table: Vec<Vec<Poly>> = vec![vec![Poly::one(0)]];
    for k in 1..=kmax as usize {
        let prev = &table[k - 1];
        let tk = Poly::t(0, k);
        let row = (0..=k)
            .map(|j| {
                let mut e = prev.get(j).cloned().unwrap_or_else(|| Poly::zero(0));
                if j > 0 {
                    e += &(&tk * &prev[j - 1]);
                }
                e
            })
            .collect();
        table.push(row);
    }
    table
}

/// Strict part of `a_nu`, computed coefficient by coefficient.
///
/// The coefficient of `x^alpha` is `det(e_{nu_j - alpha_i}(t_1..t_{nu_j}))`,
/// nonzero only when `alpha <= nu` entrywise.
pub(crate) fn alternant_strict_part(nu: &StrictSequence) -> Grouped {
    let parts = nu.parts();
    let n = parts.len();
    let elem = elementary_table(parts.first().copied().unwrap_or(0));
    let mut out = Grouped::new();
    let mut alpha = Vec::with_capacity(n);
    dominated_strict(parts, &mut alpha, &mut |alpha| {
        let entries: Vec<Vec<Poly>> = alpha
            .iter()
            .map(|&a| {
                parts
                    .iter()
                    .map(|&k| {
                        if a <= k {
                            elem[k as usize][(k - a) as usize].clone()
                        } else {
                            Poly::zero(0)
                        }
                    })
                    .collect()
            })
            .collect();
        let c = determinant(&entries, 0);
        if !c.is_zero() {
            out.insert(alpha.to_vec(), c);
        }
    });
    out
}

/// Calls `f` on every strictly decreasing `alpha` with `alpha_i <= bound_i`.
fn dominated_strict(bound: &[u32], prefix: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    let i = prefix.len();
    if i == bound.len() {
        f(prefix);
        return;
    }
    let remaining = (bound.len() - i - 1) as u32;
    let mut hi = bound[i];
    if let Some(&last) = prefix.last() {
        hi = hi.min(last.saturating_sub(1));
        if last == 0 {
            return;
        }
    }
    for a in remaining..=hi {
        prefix.push(a);
        dominated_strict(bound, prefix, f);
        prefix.pop();
    }
}

/// Permutations of `0..n` paired with their sign (`true` for odd).
fn signed_permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn rec(rest: &mut Vec<usize>, prefix: &mut Vec<usize>, odd: bool, out: &mut Vec<(Vec<usize>, bool)>) {
        if rest.is_empty() {
            out.push((prefix.clone(), odd));
            return;
        }
        for k in 0..rest.len() {
            let v = rest.remove(k);
            prefix.push(v);
            rec(rest, prefix, odd ^ (k % 2 == 1), out);
            prefix.pop();
            rest.insert(k, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut (0..n).collect(), &mut Vec::new(), false, &mut out);
    out
}

/// The skew-symmetric polynomial in `n` variables with the given strict part.
pub(crate) fn antisymmetrize(strict: &Grouped, n: usize) -> Poly {
    let perms = signed_permutations(n);
    let size: usize = strict.values().map(Poly::len).sum::<usize>() * perms.len();
    let mut terms = Vec::with_capacity(size);
    let mut beta = vec![0u32; n];
    for (alpha, c) in strict {
        for (perm, odd) in &perms {
            for (i, &p) in perm.iter().enumerate() {
                beta[p] = alpha[i];
            }
            for (mono, coeff) in c.terms() {
                let coeff = if *odd { -coeff.clone() } else { coeff.clone() };
                terms.push((Poly::combine(&beta, mono), coeff));
            }
        }
    }
    Poly::from_term_vec(n, terms)
}

/// Determinant by column-wise expansion over row subsets.
fn determinant(entries: &[Vec<Poly>], nx: usize) -> Poly {
    let size = entries.len();
    let mut minors: BTreeMap<u32, Poly> = BTreeMap::new();
    minors.insert(0, Poly::one(nx));
    for col in 0..size {
        let mut next: BTreeMap<u32, Poly> = BTreeMap::new();
        for (&rows, minor) in &minors {
            for row in 0..size {
                if rows & (1 << row) != 0 || entries[row][col].is_zero() {
                    continue;
                }
                let above = (rows >> (row + 1)).count_ones();
                let term = minor * &entries[row][col];
                let slot = next.entry(rows | (1 << row)).or_insert_with(|| Poly::zero(nx));
                if above % 2 == 1 {
                    *slot -= &term;
                } else {
                    *slot += &term;
                }
            }
        }
        next.retain(|_, p| !p.is_zero());
        minors = next;
    }
    minors.remove(&((1u32 << size) - 1)).unwrap_or_else(|| Poly::zero(nx))
}

/// The double Schur polynomial `s_lambda(x|t)` in `n` variables.
pub fn double_schur(lambda: &Partition, n: usize) -> Result<Poly> {
    check_arity(n)?;
    if lambda.length() > n {
        return Err(Error::InvalidPartition(format!(
            "{lambda} has more than {n} parts"
        )));
    }
    let numerator = a_nu(&lambda.plus_rho(n), n)?;
    let vandermonde = a_nu(&StrictSequence::rho(n), n)?;
    let s = numerator.exact_div(&vandermonde)?;
    if let Err(e) = check_symmetric(&s) {
        return Err(Error::Inconsistent(format!("s{lambda} failed symmetry: {e}")));
    }
    Ok(s)
}

/// Checks invariance under every adjacent transposition of x-variables.
pub fn check_symmetric(p: &Poly) -> Result<()> {
    for i in 1..p.nx() {
        if &p.swap_x(i, i + 1) != p {
            return Err(Error::NotSymmetric(i, i + 1));
        }
    }
    Ok(())
}

/// Checks that every adjacent transposition of x-variables negates `p`.
pub fn check_skew_symmetric(p: &Poly) -> Result<()> {
    for i in 1..p.nx() {
        if p.swap_x(i, i + 1) != -p {
            return Err(Error::NotSkewSymmetric(i, i + 1));
        }
    }
    Ok(())
}

/// Coordinates of a skew-symmetric polynomial in the basis `a_nu`.
///
/// Greedy elimination under lex order on x-exponents: the lex-leading
/// x-monomial of `a_nu` is `x^nu` with coefficient exactly 1, so the
/// coefficient of the leading x-monomial of the residue is the coefficient of
/// the matching `a_nu`. A skew-symmetric polynomial is determined by its terms
/// with strictly decreasing x-exponents, so only those are carried along.
pub fn expand_in_anu(p: &Poly, n: usize) -> Result<BTreeMap<StrictSequence, Poly>> {
    check_arity(n)?;
    if p.nx() != n {
        return Err(Error::ArityMismatch {
            left: p.nx(),
            right: n,
        });
    }
    check_skew_symmetric(p)?;
    AlternantTable::new(n).expand(strict_part(p))
}

/// Coordinates of a symmetric polynomial in the double Schur basis.
pub fn expand_in_double_schur(p: &Poly, n: usize) -> Result<SchurExpansion> {
    check_arity(n)?;
    if p.nx() != n {
        return Err(Error::ArityMismatch {
            left: p.nx(),
            right: n,
        });
    }
    check_symmetric(p)?;
    let vandermonde = a_nu(&StrictSequence::rho(n), n)?;
    let skew = strict_part_of_product(&p.split_by_x(), &vandermonde.split_by_x());
    let coords = AlternantTable::new(n).expand(skew)?;
    Ok(SchurExpansion::from_anu_coords(n, coords))
}

/// Polynomial grouped by x-exponent; values are x-free of arity 0.
pub(crate) type Grouped = BTreeMap<Vec<u32>, Poly>;

fn is_strictly_decreasing(e: &[u32]) -> bool {
    e.windows(2).all(|w| w[0] > w[1])
}

/// Terms with strictly decreasing x-exponents, grouped by x-exponent.
pub(crate) fn strict_part(p: &Poly) -> Grouped {
    let mut g = p.split_by_x();
    g.retain(|e, _| is_strictly_decreasing(e));
    g
}

/// `strict_part(p * q)` from the full groupings of `p` and `q`.
pub(crate) fn strict_part_of_product(p: &Grouped, q: &Grouped) -> Grouped {
    let mut out = Grouped::new();
    let mut sum = Vec::new();
    for (a, c) in p {
        for (b, d) in q {
            sum.clear();
            sum.extend(a.iter().zip(b).map(|(x, y)| x + y));
            if !is_strictly_decreasing(&sum) {
                continue;
            }
            let prod = c * d;
            match out.get_mut(sum.as_slice()) {
                Some(acc) => *acc += &prod,
                None => {
                    out.insert(sum.clone(), prod);
                }
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// Source of alternant strict parts for the greedy expansion.
pub(crate) struct AlternantTable {
    n: usize,
}

impl AlternantTable {
    pub(crate) fn new(n: usize) -> Self {
        AlternantTable { n }
    }

    fn get(&self, nu: &StrictSequence) -> Result<Grouped> {
        check_length(nu, self.n)?;
        Ok(alternant_strict_part(nu))
    }

    /// Greedy `a_nu` coordinates of the skew-symmetric polynomial whose strict
    /// part is `residue`.
    pub(crate) fn expand(&self, mut residue: Grouped) -> Result<BTreeMap<StrictSequence, Poly>> {
        let mut out = BTreeMap::new();
        while let Some((lead, coeff)) = residue.pop_last() {
            let nu = StrictSequence::new(lead.clone()).map_err(|_| {
                Error::Inconsistent(format!(
                    "residue leads with x-exponent {lead:?}, which is not strictly decreasing"
                ))
            })?;
            let basis = self.get(&nu)?;
            match basis.get(&lead) {
                Some(c) if c.is_one() => {}
                _ => {
                    return Err(Error::Inconsistent(format!(
                        "a{nu} does not lead with x^{lead:?}"
                    )))
                }
            }
            for (alpha, d) in basis.iter() {
                if alpha == &lead {
                    continue;
                }
                if alpha > &lead {
                    return Err(Error::Inconsistent(format!(
                        "a{nu} has a term x^{alpha:?} above its leading term"
                    )));
                }
                let updated = match residue.remove(alpha) {
                    Some(mut r) => {
                        r -= &(&coeff * d);
                        r
                    }
                    None => -(&coeff * d),
                };
                if !updated.is_zero() {
                    residue.insert(alpha.clone(), updated);
                }
            }
            out.insert(nu, coeff);
        }
        Ok(out)
    }
}

/// Expansion of `(x1 + ... + xn) * s_lambda` in the double Schur basis.
///
/// Diagonal coefficient `-sum_i t_{lambda_i + n - i + 1}`, coefficient 1 on
/// every partition with one more box and at most `n` rows.
pub fn pieri_multiply(lambda: &Partition, n: usize) -> Result<SchurExpansion> {
    check_arity(n)?;
    if lambda.length() > n {
        return Err(Error::InvalidPartition(format!(
            "{lambda} has more than {n} parts"
        )));
    }
    let mut out = SchurExpansion::new(n);
    let mut diagonal = Poly::zero(0);
    for (i, shifted) in lambda.plus_rho(n).parts().iter().enumerate() {
        debug_assert_eq!(*shifted as usize, lambda.part(i) as usize + n - i - 1);
        diagonal = &diagonal - &Poly::t(0, *shifted as usize + 1);
    }
    out.add_term(lambda.clone(), diagonal);
    for bigger in lambda.add_one_box(n) {
        out.add_term(bigger, Poly::one(0));
    }
    Ok(out)
}

/// Finite linear combination `sum c_lambda s_lambda` with x-free coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct SchurExpansion {
    n: usize,
    coeffs: BTreeMap<Partition, Poly>,
}

impl SchurExpansion {
    pub fn new(n: usize) -> Self {
        SchurExpansion {
            n,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn single(n: usize, lambda: Partition, coeff: Poly) -> Self {
        let mut e = Self::new(n);
        e.add_term(lambda, coeff);
        e
    }

    /// The expansion of `s_lambda` itself.
    pub fn basis(n: usize, lambda: Partition) -> Self {
        Self::single(n, lambda, Poly::one(0))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Terms in lex order of partitions.
    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Poly)> {
        self.coeffs.iter()
    }

    pub fn coefficient(&self, lambda: &Partition) -> Poly {
        self.coeffs.get(lambda).cloned().unwrap_or_else(|| Poly::zero(0))
    }

    /// Adds `coeff * s_lambda`; `coeff` must be x-free.
    pub fn add_term(&mut self, lambda: Partition, coeff: Poly) {
        assert!(coeff.is_x_free(), "Schur coefficients must be x-free");
        let coeff = coeff.with_arity(0).expect("x-free");
        if coeff.is_zero() {
            return;
        }
        let merged = match self.coeffs.remove(&lambda) {
            Some(old) => &old + &coeff,
            None => coeff,
        };
        if !merged.is_zero() {
            self.coeffs.insert(lambda, merged);
        }
    }

    pub fn add(&self, other: &SchurExpansion) -> SchurExpansion {
        let mut out = self.clone();
        for (lambda, c) in &other.coeffs {
            out.add_term(lambda.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SchurExpansion) -> SchurExpansion {
        self.add(&other.scale(&Poly::constant(0, -1)))
    }

    /// Multiplies every coefficient by the x-free polynomial `c`.
    pub fn scale(&self, c: &Poly) -> SchurExpansion {
        let c = c.with_arity(0).expect("scalar must be x-free");
        let mut out = SchurExpansion::new(self.n);
        for (lambda, d) in &self.coeffs {
            out.add_term(lambda.clone(), &c * d);
        }
        out
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coefficients(&self, mut f: impl FnMut(&Partition, &Poly) -> Option<Poly>) -> Self {
        let mut out = SchurExpansion::new(self.n);
        for (lambda, c) in &self.coeffs {
            if let Some(image) = f(lambda, c) {
                out.add_term(lambda.clone(), image);
            }
        }
        out
    }

    pub(crate) fn from_anu_coords(n: usize, coords: BTreeMap<StrictSequence, Poly>) -> Self {
        let mut out = SchurExpansion::new(n);
        for (nu, c) in coords {
            out.add_term(nu.minus_rho(), c);
        }
        out
    }

    /// The polynomial `sum c_lambda s_lambda(x|t)`.
    pub fn to_poly(&self) -> Result<Poly> {
        let mut out = Poly::zero(self.n);
        for (lambda, c) in &self.coeffs {
            out = &out + &(&c.with_arity(self.n)? * &double_schur(lambda, self.n)?);
        }
        Ok(out)
    }
}

impl Serialize for SchurExpansion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            lambda: &'a Partition,
            coeff: &'a Poly,
        }
        let terms: Vec<Term> = self
            .coeffs
            .iter()
            .map(|(lambda, coeff)| Term { lambda, coeff })
            .collect();
        let mut st = s.serialize_struct("SchurExpansion", 2)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl fmt::Display for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(lambda, c)| {
                if c.is_one() {
                    format!("s{lambda}")
                } else {
                    format!("({c})*s{lambda}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for SchurExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SchurExpansion[n={}]({})", self.n, self)
    }
}

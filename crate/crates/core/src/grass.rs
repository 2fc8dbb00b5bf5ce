//! The truncated ring `Lambda_{n,m} = Lambda_n / I_m` standing in for the
//! equivariant cohomology of the Grassmannian `G(n,m)`.
//!
//! `I_m` is spanned over `Z[t1, t2, ...]` by `t_{m+1}, t_{m+2}, ...` and the
//! `s_lambda` with `lambda_1 > m - n`, so reduction is done on coordinates:
//! expand in the double Schur basis, drop the out-of-box classes, kill the
//! high t-variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::Signed;
use rayon::prelude::*;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::poly::{DiffPoly, Poly};
use crate::schur::{self, AlternantTable, SchurExpansion};

/// Full structure tables are refused above this many Schubert classes.
pub const TABLE_CLASS_LIMIT: u64 = 256;

/// The Grassmannian `G(n,m)` of `n`-planes in `m`-space.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GrassContext {
    n: usize,
    m: usize,
}

impl GrassContext {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if n == 0 || n > m {
            return Err(Error::InvalidContext { n, m });
        }
        Ok(GrassContext { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Width of the partition box, `m - n`.
    pub fn cols(&self) -> usize {
        self.m - self.n
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        lambda.fits_in_box(self.n, self.cols())
    }

    pub fn check(&self, lambda: &Partition) -> Result<()> {
        lambda.check_box(self.n, self.cols())
    }

    /// Schubert classes, i.e. partitions in the `n x (m-n)` box, in lex order.
    pub fn classes(&self) -> Vec<Partition> {
        Partition::all_in_box(self.n, self.cols())
    }

    /// `binomial(m, n)`, the number of Schubert classes.
    pub fn num_classes(&self) -> u64 {
        let (m, k) = (self.m as u64, self.n.min(self.m - self.n) as u64);
        (0..k).fold(1u64, |acc, i| acc * (m - i) / (i + 1))
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G({},{})", self.n, self.m)
    }
}

/// Image of a `Lambda_n` element in `Lambda_{n,m}`.
pub fn reduce_mod_im(e: &SchurExpansion, ctx: &GrassContext) -> Result<SchurExpansion> {
    if e.n() != ctx.n {
        return Err(Error::ArityMismatch {
            left: e.n(),
            right: ctx.n,
        });
    }
    Ok(e.map_coefficients(|lambda, c| {
        ctx.contains(lambda).then(|| c.kill_t_above(ctx.m))
    }))
}

/// Vector of `V = Z[t1..tm][x] / (x|t)^m` in the basis `(x|t)^0, ..., (x|t)^{m-1}`.
type DVec = Vec<Poly>;

/// Applies multiplication by `x + shift` to `v`, where
/// `(x + c)(x|t)^k = (x|t)^{k+1} + (c - t_{k+1})(x|t)^k`.
fn mul_linear(v: &DVec, shift: &Poly) -> DVec {
    let m = v.len();
    let mut out = vec![Poly::zero(0); m];
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k + 1 < m {
            out[k + 1] += c;
        }
        let diag = shift - &Poly::t(0, k + 1);
        out[k] += &(&diag * c);
    }
    out
}

/// Products of classes computed directly in the `n`-th exterior power of `V`.
///
/// `s_lambda * a_{mu+rho}` is the antisymmetrization of
/// `s_lambda * prod_i (x_i|t)^{mu_i+n-i}`, and everything at or above
/// `(x|t)^m` vanishes along the way, which is exactly reduction modulo `I_m`.
pub(crate) struct WedgeEngine {
    n: usize,
    /// `mult[a][b]` is `(x|t)^a (x|t)^b` in `V`.
    mult: Vec<Vec<DVec>>,
    /// `s_lambda` in the basis `prod_i (x_i|t)^{beta_i}`.
    schur: BTreeMap<Partition, Vec<(Vec<u32>, Poly)>>,
}

impl WedgeEngine {
    pub(crate) fn new(ctx: &GrassContext) -> Result<Self> {
        let (n, m) = (ctx.n, ctx.m);
        let unit = |k: usize| {
            let mut v = vec![Poly::zero(0); m];
            v[k] = Poly::one(0);
            v
        };
        let mult: Vec<Vec<DVec>> = (0..m)
            .map(|b| {
                let mut rows = vec![unit(b)];
                for j in 1..m {
                    let next = mul_linear(&rows[j - 1], &Poly::t(0, j));
                    rows.push(next);
                }
                rows
            })
            .collect();
        // mult is indexed [b][a] so far
        let mult = (0..m)
            .map(|a| (0..m).map(|b| mult[b][a].clone()).collect())
            .collect();
        // x^k in V
        let mut powers = vec![unit(0)];
        for k in 1..m {
            let next = mul_linear(&powers[k - 1], &Poly::zero(0));
            powers.push(next);
        }
        let schur = ctx
            .classes()
            .into_par_iter()
            .map(|lambda| {
                let s = schur::double_schur(&lambda, n)?;
                Ok((lambda, to_d_basis(&s, &powers)))
            })
            .collect::<Result<BTreeMap<_, _>>>()?;
        Ok(WedgeEngine { n, mult, schur })
    }

    pub(crate) fn product(&self, lambda: &Partition, mu: &Partition) -> SchurExpansion {
        let nu = mu.plus_rho(self.n);
        let mut coords: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        let mut chosen = Vec::with_capacity(self.n);
        let mut local: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (beta, c) in &self.schur[lambda] {
            let factors: Vec<&DVec> = beta
                .iter()
                .zip(nu.parts())
                .map(|(&b, &k)| &self.mult[b as usize][k as usize])
                .collect();
            local.clear();
            accumulate(&factors, Poly::one(0), &mut chosen, &mut local);
            for (kappa, q) in &local {
                if !q.is_zero() {
                    *coords.entry(kappa.clone()).or_insert_with(|| Poly::zero(0)) += &(c * q);
                }
            }
        }
        let mut out = SchurExpansion::new(self.n);
        for (kappa, c) in coords {
            if c.is_zero() {
                continue;
            }
            let kappa = crate::partition::StrictSequence::new(kappa)
                .expect("sorted distinct indices are strictly decreasing");
            out.add_term(kappa.minus_rho(), c);
        }
        out
    }

}

/// Expands the tensor product of `factors`, keeping only index tuples with
/// distinct entries, and adds each with the sign that sorts it.
fn accumulate(
    factors: &[&DVec],
    acc: Poly,
    chosen: &mut Vec<u32>,
    coords: &mut BTreeMap<Vec<u32>, Poly>,
) {
    let i = chosen.len();
    if i == factors.len() {
        let mut sorted = chosen.clone();
        let mut odd = false;
        // insertion sort into decreasing order, tracking parity
        for a in 1..sorted.len() {
            let mut b = a;
            while b > 0 && sorted[b - 1] < sorted[b] {
                sorted.swap(b - 1, b);
                odd = !odd;
                b -= 1;
            }
        }
        let slot = coords.entry(sorted).or_insert_with(|| Poly::zero(0));
        if odd {
            *slot -= &acc;
        } else {
            *slot += &acc;
        }
        return;
    }
    for (k, c) in factors[i].iter().enumerate() {
        if c.is_zero() || chosen.contains(&(k as u32)) {
            continue;
        }
        chosen.push(k as u32);
        accumulate(factors, &acc * c, chosen, coords);
        chosen.pop();
    }
}

/// Rewrites a polynomial whose x-degrees are below `m` in the basis
/// `prod_i (x_i|t)^{beta_i}`, given `x^k` in `V` for `k < m`.
fn to_d_basis(p: &Poly, powers: &[DVec]) -> Vec<(Vec<u32>, Poly)> {
    let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
    for (alpha, c) in p.split_by_x() {
        let mut partial: Vec<(Vec<u32>, Poly)> = vec![(Vec::new(), c)];
        for &a in &alpha {
            let mut next = Vec::new();
            for (beta, d) in &partial {
                for (k, e) in powers[a as usize].iter().enumerate() {
                    if e.is_zero() {
                        continue;
                    }
                    let mut b = beta.clone();
                    b.push(k as u32);
                    next.push((b, d * e));
                }
            }
            partial = next;
        }
        for (beta, d) in partial {
            *out.entry(beta).or_insert_with(|| Poly::zero(0)) += &d;
        }
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Equivariant structure constants `c_{lambda mu}^nu` of `G(n,m)`.
///
/// Computes `s_lambda * s_mu` in `Lambda_n` (as `s_lambda * a_{mu+rho}`, which
/// is `s_lambda * s_mu * a_rho`), expands in the `a_nu` basis and reduces
/// modulo `I_m`.
pub fn schubert_product(
    lambda: &Partition,
    mu: &Partition,
    ctx: &GrassContext,
) -> Result<SchurExpansion> {
    ctx.check(lambda)?;
    ctx.check(mu)?;
    let n = ctx.n;
    let s = schur::double_schur(lambda, n)?;
    let a = schur::a_nu(&mu.plus_rho(n), n)?;
    let skew = schur::strict_part_of_product(&s.split_by_x(), &a.split_by_x());
    let coords = AlternantTable::new(n).expand(skew)?;
    reduce_mod_im(&SchurExpansion::from_anu_coords(n, coords), ctx)
}

/// A coefficient rewritten with nonnegative coefficients in `u_i = t_i - t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    expansion: DiffPoly,
}

impl Certificate {
    pub fn expansion(&self) -> &DiffPoly {
        &self.expansion
    }

    /// Indices `i` of the differences `u_i` that occur.
    pub fn differences_used(&self) -> Vec<u32> {
        self.expansion.differences_used()
    }
}

impl Serialize for Certificate {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.expansion.serialize(s)
    }
}

/// Why a coefficient failed the positivity check.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Violation {
    #[error("{coefficient}: {reason}")]
    NotADifferencePolynomial { coefficient: String, reason: String },
    #[error("{coefficient}: negative coefficient {value} on {monomial}")]
    Negative {
        coefficient: String,
        monomial: String,
        value: String,
    },
}

/// Checks that `c` lies in `N[t1 - t2, ..., t_{m-1} - t_m]`.
pub fn check_graham_positivity(
    c: &Poly,
    ctx: &GrassContext,
) -> std::result::Result<Certificate, Violation> {
    let expansion = c
        .to_difference_basis(ctx.m)
        .map_err(|e| Violation::NotADifferencePolynomial {
            coefficient: c.to_string(),
            reason: e.to_string(),
        })?;
    if let Some((mono, value)) = expansion.negative_terms().first() {
        return Err(Violation::Negative {
            coefficient: c.to_string(),
            monomial: DiffPoly::monomial_name(mono),
            value: value.to_string(),
        });
    }
    debug_assert!(expansion.as_poly().terms().all(|(_, v)| !v.is_negative()));
    Ok(Certificate { expansion })
}

/// `(x1 + ... + xn)^k` in `Lambda_{n,m}`, by iterated Pieri steps.
///
/// The coefficients on `|lambda| = k` are integers (the top-degree part).
pub fn sigma1_power_expansion(k: u32, ctx: &GrassContext) -> Result<SchurExpansion> {
    let n = ctx.n;
    let mut current = SchurExpansion::basis(n, Partition::empty());
    for _ in 0..k {
        let mut next = SchurExpansion::new(n);
        for (lambda, c) in current.iter() {
            next = next.add(&schur::pieri_multiply(lambda, n)?.scale(c));
        }
        // I_m is an ideal, so reducing after every step is harmless
        current = reduce_mod_im(&next, ctx)?;
    }
    Ok(current)
}

/// One `c_{lambda mu}^nu` together with its positivity check.
#[derive(Clone, Debug)]
pub struct ProductTerm {
    pub nu: Partition,
    pub coeff: Poly,
    pub certificate: std::result::Result<Certificate, Violation>,
}

impl Serialize for ProductTerm {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let fields = if self.certificate.is_ok() { 3 } else { 4 };
        let mut st = s.serialize_struct("ProductTerm", fields)?;
        st.serialize_field("nu", &self.nu)?;
        st.serialize_field("coeff", &self.coeff)?;
        match &self.certificate {
            Ok(cert) => st.serialize_field("certificate", cert)?,
            Err(v) => {
                st.serialize_field("certificate", &Option::<()>::None)?;
                st.serialize_field("violation", &v.to_string())?;
            }
        }
        st.end()
    }
}

/// All structure constants `sigma_lambda * sigma_mu` for one pair.
#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub lambda: Partition,
    pub mu: Partition,
    pub products: Vec<ProductTerm>,
}

impl TableEntry {
    pub fn from_expansion(
        lambda: Partition,
        mu: Partition,
        expansion: &SchurExpansion,
        ctx: &GrassContext,
    ) -> Self {
        let products = expansion
            .iter()
            .map(|(nu, c)| ProductTerm {
                nu: nu.clone(),
                coeff: c.clone(),
                certificate: check_graham_positivity(c, ctx),
            })
            .collect();
        TableEntry {
            lambda,
            mu,
            products,
        }
    }

    pub fn all_positive(&self) -> bool {
        self.products.iter().all(|p| p.certificate.is_ok())
    }

    /// The product as a plain expansion.
    pub fn expansion(&self, n: usize) -> SchurExpansion {
        let mut e = SchurExpansion::new(n);
        for p in &self.products {
            e.add_term(p.nu.clone(), p.coeff.clone());
        }
        e
    }
}

/// Structure constants for every pair of Schubert classes of one Grassmannian.
#[derive(Clone, Debug)]
pub struct StructureTable {
    context: GrassContext,
    entries: Vec<TableEntry>,
}

impl StructureTable {
    pub fn context(&self) -> &GrassContext {
        &self.context
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    pub fn entry(&self, lambda: &Partition, mu: &Partition) -> Option<&TableEntry> {
        self.entries
            .iter()
            .find(|e| &e.lambda == lambda && &e.mu == mu)
    }

    pub fn all_positive(&self) -> bool {
        self.entries.iter().all(TableEntry::all_positive)
    }

    pub fn violations(&self) -> Vec<(&TableEntry, &ProductTerm)> {
        self.entries
            .iter()
            .flat_map(|e| {
                e.products
                    .iter()
                    .filter(|p| p.certificate.is_err())
                    .map(move |p| (e, p))
            })
            .collect()
    }

    /// Union of the differences `u_i` occurring in any certificate.
    pub fn differences_used(&self) -> Vec<u32> {
        let used: BTreeSet<u32> = self
            .entries
            .iter()
            .flat_map(|e| e.products.iter())
            .filter_map(|p| p.certificate.as_ref().ok())
            .flat_map(|c| c.differences_used())
            .collect();
        used.into_iter().collect()
    }
}

impl Serialize for StructureTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("StructureTable", 3)?;
        st.serialize_field("n", &self.context.n)?;
        st.serialize_field("m", &self.context.m)?;
        st.serialize_field("entries", &self.entries)?;
        st.end()
    }
}

/// Every product `sigma_lambda * sigma_mu` of `G(n,m)` with certificates.
///
/// Refused when `binomial(m, n)` exceeds [`TABLE_CLASS_LIMIT`].
pub fn full_structure_table(ctx: &GrassContext) -> Result<StructureTable> {
    let classes = ctx.num_classes();
    if classes > TABLE_CLASS_LIMIT {
        return Err(Error::SizeGuard {
            n: ctx.n,
            m: ctx.m,
            classes,
            limit: TABLE_CLASS_LIMIT,
        });
    }
    let engine = WedgeEngine::new(ctx)?;
    let basis = ctx.classes();
    // the product is commutative: compute i <= j once and mirror
    let pairs: Vec<(usize, usize)> = (0..basis.len())
        .flat_map(|i| (i..basis.len()).map(move |j| (i, j)))
        .collect();
    let upper: BTreeMap<(usize, usize), TableEntry> = pairs
        .into_par_iter()
        .map(|(i, j)| {
            let expansion = engine.product(&basis[i], &basis[j]);
            let entry = TableEntry::from_expansion(basis[i].clone(), basis[j].clone(), &expansion, ctx);
            ((i, j), entry)
        })
        .collect();
    let mut entries = Vec::with_capacity(basis.len() * basis.len());
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            let entry = if i <= j {
                upper[&(i, j)].clone()
            } else {
                let mut mirrored = upper[&(j, i)].clone();
                std::mem::swap(&mut mirrored.lambda, &mut mirrored.mu);
                mirrored
            };
            entries.push(entry);
        }
    }
    Ok(StructureTable {
        context: *ctx,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }
    fn t(i: usize) -> Poly {
        Poly::t(0, i)
    }

    #[test]
    fn contexts() {
        assert!(GrassContext::new(0, 3).is_err());
        assert!(GrassContext::new(4, 3).is_err());
        let g = GrassContext::new(2, 5).unwrap();
        assert_eq!(g.num_classes(), 10);
        assert_eq!(g.classes().len(), 10);
        assert_eq!(GrassContext::new(3, 3).unwrap().num_classes(), 1);
    }

    #[test]
    fn reduction_kills_generators() {
        let ctx = GrassContext::new(2, 4).unwrap();
        let e = SchurExpansion::basis(2, p(&[3]));
        assert!(reduce_mod_im(&e, &ctx).unwrap().is_zero());
        let e = SchurExpansion::single(2, p(&[]), t(5));
        assert!(reduce_mod_im(&e, &ctx).unwrap().is_zero());

        let mut e = SchurExpansion::single(2, p(&[1]), &t(1) + &t(6));
        e.add_term(p(&[2, 2]), Poly::one(0));
        e.add_term(p(&[1, 1, 1]), Poly::one(0));
        let once = reduce_mod_im(&e, &ctx).unwrap();
        let mut expected = SchurExpansion::single(2, p(&[1]), t(1));
        expected.add_term(p(&[2, 2]), Poly::one(0));
        assert_eq!(once, expected);
        assert_eq!(reduce_mod_im(&once, &ctx).unwrap(), once);
        assert!(reduce_mod_im(&e, &GrassContext::new(3, 4).unwrap()).is_err());
    }

    #[test]
    fn projective_line() {
        let ctx = GrassContext::new(1, 2).unwrap();
        let product = schubert_product(&p(&[1]), &p(&[1]), &ctx).unwrap();
        assert_eq!(product, SchurExpansion::single(1, p(&[1]), &t(1) - &t(2)));
    }

    #[test]
    fn unit_and_box_errors() {
        let ctx = GrassContext::new(2, 4).unwrap();
        for lambda in ctx.classes() {
            let product = schubert_product(&p(&[]), &lambda, &ctx).unwrap();
            assert_eq!(product, SchurExpansion::basis(2, lambda));
        }
        assert!(matches!(
            schubert_product(&p(&[3]), &p(&[1]), &ctx),
            Err(Error::OutOfBox { .. })
        ));
    }

    #[test]
    fn sigma1_squared_in_g24() {
        let ctx = GrassContext::new(2, 4).unwrap();
        let product = schubert_product(&p(&[1]), &p(&[1]), &ctx).unwrap();
        let mut expected = SchurExpansion::basis(2, p(&[2]));
        expected.add_term(p(&[1, 1]), Poly::one(0));
        expected.add_term(p(&[1]), &t(2) - &t(3));
        assert_eq!(product, expected);
        let at_zero = product.map_coefficients(|_, c| Some(c.drop_t()));
        let mut classical = SchurExpansion::basis(2, p(&[2]));
        classical.add_term(p(&[1, 1]), Poly::one(0));
        assert_eq!(at_zero, classical);
    }

    #[test]
    fn positivity_checks() {
        let ctx = GrassContext::new(2, 4).unwrap();
        let cert = check_graham_positivity(&(&t(1) - &t(2)), &ctx).unwrap();
        assert_eq!(cert.expansion().as_poly(), &t(1));
        assert_eq!(cert.differences_used(), vec![1]);
        let cert = check_graham_positivity(&Poly::one(0), &ctx).unwrap();
        assert!(cert.expansion().as_poly().is_one());
        assert!(matches!(
            check_graham_positivity(&(&t(2) - &t(1)), &ctx),
            Err(Violation::Negative { .. })
        ));
        assert!(matches!(
            check_graham_positivity(&t(1), &ctx),
            Err(Violation::NotADifferencePolynomial { .. })
        ));
        assert!(matches!(
            check_graham_positivity(&(&t(5) - &t(1)), &ctx),
            Err(Violation::NotADifferencePolynomial { .. })
        ));
    }

    #[test]
    fn sigma1_powers() {
        let ctx = GrassContext::new(2, 4).unwrap();
        assert_eq!(
            sigma1_power_expansion(0, &ctx).unwrap(),
            SchurExpansion::basis(2, p(&[]))
        );
        let sq = sigma1_power_expansion(2, &ctx).unwrap();
        assert!(sq.coefficient(&p(&[2])).is_one());
        assert!(sq.coefficient(&p(&[1, 1])).is_one());
        let ctx = GrassContext::new(2, 5).unwrap();
        let cube = sigma1_power_expansion(3, &ctx).unwrap();
        assert_eq!(cube.coefficient(&p(&[2, 1])), Poly::constant(0, 2));
    }

    #[test]
    fn small_tables() {
        let ctx = GrassContext::new(1, 2).unwrap();
        let table = full_structure_table(&ctx).unwrap();
        assert_eq!(table.entries().len(), 4);
        assert!(table.all_positive());

        let ctx = GrassContext::new(2, 4).unwrap();
        let table = full_structure_table(&ctx).unwrap();
        assert_eq!(table.entries().len(), 36);
        let entry = table.entry(&p(&[1]), &p(&[1])).unwrap();
        assert_eq!(
            entry.expansion(2),
            schubert_product(&p(&[1]), &p(&[1]), &ctx).unwrap()
        );
        for e in table.entries() {
            let mirror = table.entry(&e.mu, &e.lambda).unwrap();
            assert_eq!(e.expansion(2), mirror.expansion(2));
        }
    }

    #[test]
    fn wedge_engine_matches_greedy_route() {
        for (n, m) in [(1, 4), (2, 4), (2, 5), (3, 5)] {
            let ctx = GrassContext::new(n, m).unwrap();
            let engine = WedgeEngine::new(&ctx).unwrap();
            for lambda in ctx.classes() {
                for mu in ctx.classes() {
                    assert_eq!(
                        engine.product(&lambda, &mu),
                        schubert_product(&lambda, &mu, &ctx).unwrap(),
                        "G({n},{m}) {lambda} * {mu}"
                    );
                }
            }
        }
    }

    #[test]
    fn size_guard() {
        assert_eq!(GrassContext::new(5, 10).unwrap().num_classes(), 252);
        let ctx = GrassContext::new(4, 11).unwrap();
        assert_eq!(ctx.num_classes(), 330);
        assert!(matches!(
            full_structure_table(&ctx),
            Err(Error::SizeGuard { classes: 330, limit: 256, .. })
        ));
    }
}

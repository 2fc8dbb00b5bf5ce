//! Sparse multivariate polynomials over `Z[t1, t2, ...]` in a fixed number of
//! x-variables.
//!
//! A [`Poly`] lives in `Z[t1, t2, ...][x1, ..., xn]` where `n` (the x-arity) is
//! fixed per value and the t-indices are unbounded. Terms are kept in a
//! `BTreeMap` under graded lexicographic order with
//! `x1 > x2 > ... > xn > t1 > t2 > ...`, so two equal polynomials always have
//! identical term maps. Iteration helpers return terms leading-first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::{SerializeMap, SerializeSeq};
use rustc_hash::FxHashMap;
use serde::{Serialize, Serializer};
use smallvec::{smallvec, SmallVec};
use std::collections::hash_map::Entry as HashEntry;

use crate::error::{Error, Result};

type XExps = SmallVec<[u32; 6]>;
type TExpVec = SmallVec<[(u32, u32); 6]>;

/// Exponent data of a single term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    // total degree, cached for ordering
    deg: u32,
    x: XExps,
    // sorted by t-index, exponents nonzero
    t: TExpVec,
}

impl Monomial {
    fn from_parts(x: XExps, t: TExpVec) -> Self {
        let deg = x.iter().sum::<u32>() + t.iter().map(|&(_, e)| e).sum::<u32>();
        Monomial { deg, x, t }
    }

    pub fn one(nx: usize) -> Self {
        Monomial::from_parts(smallvec![0; nx], SmallVec::new())
    }

    /// Builds a monomial from x-exponents and `(t-index, exponent)` pairs.
    /// Zero exponents are dropped and repeated t-indices are merged.
    pub fn new(x: Vec<u32>, t: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut merged: BTreeMap<u32, u32> = BTreeMap::new();
        for (i, e) in t {
            assert!(i >= 1, "t-indices start at 1");
            if e > 0 {
                *merged.entry(i).or_insert(0) += e;
            }
        }
        Monomial::from_parts(x.into_iter().collect(), merged.into_iter().collect())
    }

    pub fn x_exponents(&self) -> &[u32] {
        &self.x
    }

    pub fn t_exponents(&self) -> &[(u32, u32)] {
        &self.t
    }

    pub fn t_exponent(&self, index: u32) -> u32 {
        self.t
            .binary_search_by_key(&index, |&(i, _)| i)
            .map(|pos| self.t[pos].1)
            .unwrap_or(0)
    }

    pub fn x_degree(&self) -> u32 {
        self.x.iter().sum()
    }

    pub fn t_degree(&self) -> u32 {
        self.t.iter().map(|&(_, e)| e).sum()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_x_free(&self) -> bool {
        self.x.iter().all(|&e| e == 0)
    }

    pub fn max_t_index(&self) -> Option<u32> {
        self.t.last().map(|&(i, _)| i)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.x.len(), other.x.len());
        let x = self.x.iter().zip(&other.x).map(|(a, b)| a + b).collect();
        let mut t = TExpVec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.t.len() && j < other.t.len() {
            let (a, b) = (self.t[i], other.t[j]);
            match a.0.cmp(&b.0) {
                Ordering::Less => {
                    t.push(a);
                    i += 1;
                }
                Ordering::Greater => {
                    t.push(b);
                    j += 1;
                }
                Ordering::Equal => {
                    t.push((a.0, a.1 + b.1));
                    i += 1;
                    j += 1;
                }
            }
        }
        t.extend_from_slice(&self.t[i..]);
        t.extend_from_slice(&other.t[j..]);
        Monomial {
            deg: self.deg + other.deg,
            x,
            t,
        }
    }

    /// `self / other` if `other` divides `self`.
    fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut x = XExps::new();
        for (a, b) in self.x.iter().zip(&other.x) {
            x.push(a.checked_sub(*b)?);
        }
        let mut t = TExpVec::new();
        let mut j = 0;
        for &(i, e) in &self.t {
            if j < other.t.len() && other.t[j].0 < i {
                return None;
            }
            if j < other.t.len() && other.t[j].0 == i {
                let d = e.checked_sub(other.t[j].1)?;
                if d > 0 {
                    t.push((i, d));
                }
                j += 1;
            } else {
                t.push((i, e));
            }
        }
        if j < other.t.len() {
            return None;
        }
        Some(Monomial {
            deg: self.deg - other.deg,
            x,
            t,
        })
    }
}

/// Lexicographic comparison of two sparse t-exponent vectors, `t1` most significant.
fn cmp_sparse_lex(a: &[(u32, u32)], b: &[(u32, u32)]) -> Ordering {
    for (&(ia, ea), &(ib, eb)) in a.iter().zip(b) {
        if ia != ib {
            // the one holding the smaller index has a positive entry where the other has 0
            return ib.cmp(&ia);
        }
        if ea != eb {
            return ea.cmp(&eb);
        }
    }
    a.len().cmp(&b.len())
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| cmp_sparse_lex(&self.t, &other.t))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors = Vec::new();
        for (i, &e) in self.x.iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("x{}", i + 1)),
                _ => factors.push(format!("x{}^{}", i + 1, e)),
            }
        }
        for &(i, e) in &self.t {
            if e == 1 {
                factors.push(format!("t{i}"));
            } else {
                factors.push(format!("t{i}^{e}"));
            }
        }
        if factors.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", factors.join("*"))
        }
    }
}

/// Polynomial in `n` x-variables with coefficients in `Z[t1, t2, ...]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    nx: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn zero(nx: usize) -> Self {
        Poly {
            nx,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(nx: usize) -> Self {
        Self::constant(nx, 1)
    }

    pub fn constant(nx: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(nx, Monomial::one(nx), c)
    }

    pub fn monomial(nx: usize, mono: Monomial, c: impl Into<BigInt>) -> Self {
        assert_eq!(mono.x.len(), nx, "monomial arity does not match");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(mono, c);
        }
        Poly { nx, terms }
    }

    /// The variable `x_i` (1-based).
    pub fn x(nx: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nx, "x{i} out of range for arity {nx}");
        let mut x = vec![0; nx];
        x[i - 1] = 1;
        Self::monomial(nx, Monomial::new(x, []), 1)
    }

    /// The coefficient variable `t_i` (1-based).
    pub fn t(nx: usize, i: usize) -> Self {
        assert!(i >= 1, "t-indices start at 1");
        Self::monomial(nx, Monomial::new(vec![0; nx], [(i as u32, 1)]), 1)
    }

    /// Sum of `c * mono` over the given terms.
    pub fn from_terms(nx: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = Poly::zero(nx);
        for (mono, c) in terms {
            assert_eq!(mono.x.len(), nx, "monomial arity does not match");
            p.add_term(mono, c);
        }
        p
    }

    /// Sums unsorted, possibly repeated terms in one pass.
    pub(crate) fn from_term_vec(nx: usize, mut terms: Vec<(Monomial, BigInt)>) -> Self {
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        let mut merged: Vec<(Monomial, BigInt)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == m => *acc += c,
                _ => {
                    if merged.last().is_some_and(|(_, acc)| acc.is_zero()) {
                        merged.pop();
                    }
                    merged.push((m, c));
                }
            }
        }
        if merged.last().is_some_and(|(_, acc)| acc.is_zero()) {
            merged.pop();
        }
        Poly {
            nx,
            terms: merged.into_iter().collect(),
        }
    }

    /// Monomial with the given x-exponents and the t-part of `t_part`.
    pub(crate) fn combine(x: &[u32], t_part: &Monomial) -> Monomial {
        Monomial::from_parts(x.iter().copied().collect(), t_part.t.clone())
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .iter()
                .all(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order, leading term first.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn coefficient(&self, mono: &Monomial) -> BigInt {
        self.terms.get(mono).cloned().unwrap_or_default()
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&Monomial::one(self.nx))
    }

    /// True if no x-variable occurs.
    pub fn is_x_free(&self) -> bool {
        self.terms.keys().all(Monomial::is_x_free)
    }

    /// True if the polynomial is an integer constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn max_t_index(&self) -> Option<u32> {
        self.terms.keys().filter_map(Monomial::max_t_index).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// True if every term has t-degree `d`.
    pub fn is_t_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|m| m.t_degree() == d)
    }

    fn add_term(&mut self, mono: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_arity(&self, other: &Poly) -> Result<()> {
        if self.nx == other.nx {
            Ok(())
        } else {
            Err(Error::ArityMismatch {
                left: self.nx,
                right: other.nx,
            })
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.add_assign_ref(other);
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        let mut out = self.clone();
        out.sub_assign_ref(other);
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_arity(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    fn sub_assign_ref(&mut self, other: &Poly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), -c);
        }
    }

    /// `self += c * mono * other`
    fn add_scaled_shifted(&mut self, c: &BigInt, mono: &Monomial, other: &Poly) {
        for (m, d) in &other.terms {
            self.add_term(mono.mul(m), c * d);
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        let (small, large) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.terms.len() <= 2 {
            let mut out = Poly::zero(self.nx);
            for (m, c) in &small.terms {
                out.add_scaled_shifted(c, m, large);
            }
            return out;
        }
        let mut acc: FxHashMap<Monomial, BigInt> = FxHashMap::default();
        acc.reserve(large.terms.len() * 2);
        for (m, c) in &small.terms {
            for (n, d) in &large.terms {
                let prod = c * d;
                match acc.entry(m.mul(n)) {
                    HashEntry::Vacant(v) => {
                        v.insert(prod);
                    }
                    HashEntry::Occupied(mut o) => *o.get_mut() += prod,
                }
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| a.0.cmp(&b.0));
        Poly {
            nx: self.nx,
            terms: terms.into_iter().collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.nx);
        }
        Poly {
            nx: self.nx,
            terms: self
                .terms
                .iter()
                .map(|(m, d)| (m.clone(), c * d))
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.nx);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Exact quotient `self / divisor`.
    ///
    /// Runs multivariate division against the leading term of `divisor`; when
    /// the divisor divides exactly, every intermediate remainder has a leading
    /// term divisible by the leading term of the divisor, so any failure of
    /// that (monomial or integer) divisibility means a nonzero remainder.
    pub fn exact_div(&self, divisor: &Poly) -> Result<Poly> {
        self.check_arity(divisor)?;
        let (lead_mono, lead_coeff) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let mut remainder = self.clone();
        let mut quotient = Poly::zero(self.nx);
        while let Some((mono, coeff)) = remainder.leading_term() {
            let q_mono = mono
                .checked_div(lead_mono)
                .ok_or_else(|| Error::NotDivisible(mono.to_string()))?;
            if !(coeff % lead_coeff).is_zero() {
                return Err(Error::NotDivisible(mono.to_string()));
            }
            let q_coeff = coeff / lead_coeff;
            remainder.add_scaled_shifted(&-&q_coeff, &q_mono, divisor);
            quotient.add_term(q_mono, q_coeff);
        }
        Ok(quotient)
    }

    /// Image under `t_i -> 0` for all `i > m`.
    pub fn kill_t_above(&self, m: usize) -> Poly {
        Poly {
            nx: self.nx,
            terms: self
                .terms
                .iter()
                .filter(|(mono, _)| mono.max_t_index().map_or(true, |i| i as usize <= m))
                .map(|(mono, c)| (mono.clone(), c.clone()))
                .collect(),
        }
    }

    /// Image under `t_i -> 0` for every `i`.
    pub fn drop_t(&self) -> Poly {
        self.kill_t_above(0)
    }

    /// Swaps `x_i` and `x_j` (1-based).
    pub fn swap_x(&self, i: usize, j: usize) -> Poly {
        assert!(i >= 1 && i <= self.nx && j >= 1 && j <= self.nx);
        Poly {
            nx: self.nx,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| {
                    let mut mono = mono.clone();
                    mono.x.swap(i - 1, j - 1);
                    (mono, c.clone())
                })
                .collect(),
        }
    }

    /// Reinterprets an x-free polynomial with a different x-arity.
    pub fn with_arity(&self, nx: usize) -> Result<Poly> {
        if self.nx == nx {
            return Ok(self.clone());
        }
        if !self.is_x_free() {
            return Err(Error::ArityMismatch {
                left: self.nx,
                right: nx,
            });
        }
        Ok(Poly {
            nx,
            terms: self
                .terms
                .iter()
                .map(|(mono, c)| {
                    (
                        Monomial::from_parts(smallvec![0; nx], mono.t.clone()),
                        c.clone(),
                    )
                })
                .collect(),
        })
    }

    /// Groups terms by x-exponent; each value is an x-free polynomial of arity 0.
    pub fn split_by_x(&self) -> BTreeMap<Vec<u32>, Poly> {
        let mut out: BTreeMap<Vec<u32>, Poly> = BTreeMap::new();
        for (mono, c) in &self.terms {
            out.entry(mono.x.to_vec())
                .or_insert_with(|| Poly::zero(0))
                .add_term(Monomial::from_parts(XExps::new(), mono.t.clone()), c.clone());
        }
        out
    }

    /// Substitutes every `t_i` by `image(i)`. All images must share one arity,
    /// which becomes the arity of the result; `self` must be x-free.
    pub fn substitute_t(&self, nx: usize, mut image: impl FnMut(u32) -> Poly) -> Result<Poly> {
        if !self.is_x_free() {
            return Err(Error::OutsideCoefficientRing(
                "x-variables".into(),
                self.max_t_index().unwrap_or(0) as usize,
            ));
        }
        let mut cache: BTreeMap<u32, Vec<Poly>> = BTreeMap::new();
        let mut out = Poly::zero(nx);
        for (mono, c) in &self.terms {
            let mut term = Poly::constant(nx, c.clone());
            for &(i, e) in &mono.t {
                let powers = cache.entry(i).or_insert_with(|| {
                    let base = image(i);
                    vec![Poly::one(base.nx), base]
                });
                if powers[1].nx != nx {
                    return Err(Error::ArityMismatch {
                        left: powers[1].nx,
                        right: nx,
                    });
                }
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &powers[1];
                    powers.push(next);
                }
                term = &term * &powers[e as usize];
            }
            out.add_assign_ref(&term);
        }
        Ok(out)
    }

    /// Substitutes `t_i -> t_i + t_{i+1}` in an x-free polynomial.
    fn shift_index(&self, i: u32) -> Poly {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (mono, c) in &self.terms {
            let a = mono.t_exponent(i);
            if a == 0 {
                terms.push((mono.clone(), c.clone()));
                continue;
            }
            let b = mono.t_exponent(i + 1);
            let rest = mono.t.iter().filter(|&&(j, _)| j != i && j != i + 1);
            let mut binom = BigInt::one();
            for k in 0..=a {
                let mut t: TExpVec = rest.clone().copied().collect();
                if k > 0 {
                    t.push((i, k));
                }
                if b + a - k > 0 {
                    t.push((i + 1, b + a - k));
                }
                t.sort_unstable();
                terms.push((Monomial::from_parts(mono.x.clone(), t), c * &binom));
                binom = binom * (a - k) / (k + 1);
            }
        }
        Poly::from_term_vec(self.nx, terms)
    }

    /// Rewrites a polynomial in `t1..tm` in the simple-root differences
    /// `u_i = t_i - t_{i+1}` (`1 <= i < m`).
    ///
    /// Substitutes `t_i = u_i + ... + u_{m-1} + t_m`; succeeds iff `t_m` cancels,
    /// i.e. the input is invariant under a common shift of all `t_i`.
    pub fn to_difference_basis(&self, m: usize) -> Result<DiffPoly> {
        if m == 0 {
            return Err(Error::InvalidContext { n: 0, m });
        }
        if !self.is_x_free() {
            return Err(Error::OutsideCoefficientRing("x-variables".into(), m));
        }
        if let Some(i) = self.max_t_index() {
            if i as usize > m {
                return Err(Error::OutsideCoefficientRing(format!("t{i}"), m));
            }
        }
        // index i < m stands for u_i, index m for t_m; substitute
        // t_i = u_i + t_{i+1} one index at a time
        let mut rewritten = self.with_arity(0)?;
        for i in 1..m as u32 {
            rewritten = rewritten.shift_index(i);
        }
        if rewritten.max_t_index() == Some(m as u32) {
            return Err(Error::NotShiftInvariant { m });
        }
        Ok(DiffPoly {
            m,
            poly: rewritten.with_arity(0)?,
        })
    }

    /// Serializes into the canonical JSON term list.
    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("polynomial serialization cannot fail")
    }

    /// Parses the canonical JSON term list for arity `nx`.
    pub fn from_json_value(value: &serde_json::Value, nx: usize) -> Result<Poly> {
        let bad = |what: &str| Error::ShapeMismatch(format!("polynomial JSON: {what}"));
        let list = value.as_array().ok_or_else(|| bad("expected a list"))?;
        let mut p = Poly::zero(nx);
        for term in list {
            let x: Vec<u32> = term
                .get("x")
                .and_then(|v| serde_json::from_value(v.clone()).ok())
                .ok_or_else(|| bad("missing or invalid \"x\""))?;
            if x.len() != nx {
                return Err(Error::ArityMismatch {
                    left: x.len(),
                    right: nx,
                });
            }
            let t: BTreeMap<String, u32> = term
                .get("t")
                .and_then(|v| serde_json::from_value(v.clone()).ok())
                .ok_or_else(|| bad("missing or invalid \"t\""))?;
            let mut texps = Vec::with_capacity(t.len());
            for (k, e) in t {
                let i: u32 = k.parse().map_err(|_| bad("t-index"))?;
                if i == 0 {
                    return Err(bad("t-index 0"));
                }
                texps.push((i, e));
            }
            let c: BigInt = term
                .get("c")
                .and_then(|v| v.as_str())
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| bad("missing or invalid \"c\""))?;
            p.add_term(Monomial::new(x, texps), c);
        }
        Ok(p)
    }
}

struct TExps<'a>(&'a [(u32, u32)]);

impl Serialize for TExps<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (i, e) in self.0 {
            map.serialize_entry(&i.to_string(), e)?;
        }
        map.end()
    }
}

#[derive(Serialize)]
struct TermJson<'a> {
    x: &'a [u32],
    t: TExps<'a>,
    c: String,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.terms.len()))?;
        for (mono, c) in self.terms() {
            seq.serialize_element(&TermJson {
                x: &mono.x,
                t: TExps(&mono.t),
                c: c.to_string(),
            })?;
        }
        seq.end()
    }
}

fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (String, &'a BigInt)>,
) -> fmt::Result {
    let mut first = true;
    for (mono, c) in terms {
        let negative = c.is_negative();
        let abs = c.abs();
        if first {
            if negative {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if negative { '-' } else { '+' })?;
        }
        first = false;
        if mono == "1" {
            write!(f, "{abs}")?;
        } else if abs.is_one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{abs}*{mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.terms().map(|(m, c)| (m.to_string(), c)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.nx, self)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on an arity mismatch; use the `checked_*` variant to get an error.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial arity mismatch")
            }
        }

        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl AddAssign<&Poly> for Poly {
    /// Panics on an arity mismatch.
    fn add_assign(&mut self, rhs: &Poly) {
        self.check_arity(rhs).expect("polynomial arity mismatch");
        self.add_assign_ref(rhs);
    }
}

impl SubAssign<&Poly> for Poly {
    /// Panics on an arity mismatch.
    fn sub_assign(&mut self, rhs: &Poly) {
        self.check_arity(rhs).expect("polynomial arity mismatch");
        self.sub_assign_ref(rhs);
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            nx: self.nx,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Polynomial in the differences `u_i = t_i - t_{i+1}`, `1 <= i < m`.
///
/// Stored as an arity-0 [`Poly`] whose t-index `i` stands for `u_i`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DiffPoly {
    m: usize,
    poly: Poly,
}

impl DiffPoly {
    /// Reads an x-free polynomial of arity 0 in `t1..t_{m-1}` as one in `u1..u_{m-1}`.
    pub fn from_poly(m: usize, poly: Poly) -> Result<Self> {
        if poly.nx != 0 {
            return Err(Error::ArityMismatch {
                left: poly.nx,
                right: 0,
            });
        }
        if let Some(i) = poly.max_t_index() {
            if i as usize >= m {
                return Err(Error::OutsideCoefficientRing(format!("u{i}"), m));
            }
        }
        Ok(DiffPoly { m, poly })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// The underlying polynomial, `t_i` read as `u_i`.
    pub fn as_poly(&self) -> &Poly {
        &self.poly
    }

    /// Substitutes `u_i = t_i - t_{i+1}` back, giving an x-free polynomial of arity `nx`.
    pub fn to_t_poly(&self, nx: usize) -> Poly {
        self.poly
            .substitute_t(nx, |i| &Poly::t(nx, i as usize) - &Poly::t(nx, i as usize + 1))
            .expect("difference polynomial is x-free")
    }

    /// Terms with a negative coefficient, leading first.
    pub fn negative_terms(&self) -> Vec<(&Monomial, &BigInt)> {
        self.poly.terms().filter(|(_, c)| c.is_negative()).collect()
    }

    /// The differences `u_i` that occur, ascending.
    pub fn differences_used(&self) -> Vec<u32> {
        let mut used: Vec<u32> = self
            .poly
            .terms
            .keys()
            .flat_map(|m| m.t.iter().map(|&(i, _)| i))
            .collect();
        used.sort_unstable();
        used.dedup();
        used
    }

    /// Renders a monomial with `u` names.
    pub fn monomial_name(mono: &Monomial) -> String {
        let factors: Vec<String> = mono
            .t
            .iter()
            .map(|&(i, e)| {
                if e == 1 {
                    format!("u{i}")
                } else {
                    format!("u{i}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".into()
        } else {
            factors.join("*")
        }
    }
}

#[derive(Serialize)]
struct UTermJson<'a> {
    u: TExps<'a>,
    c: String,
}

impl Serialize for DiffPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.poly.len()))?;
        for (mono, c) in self.poly.terms() {
            seq.serialize_element(&UTermJson {
                u: TExps(&mono.t),
                c: c.to_string(),
            })?;
        }
        seq.end()
    }
}

impl fmt::Display for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.poly.terms().map(|(m, c)| (DiffPoly::monomial_name(m), c)),
        )
    }
}

impl fmt::Debug for DiffPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiffPoly[m={}]({})", self.m, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(nx: usize, i: usize) -> Poly {
        Poly::x(nx, i)
    }
    fn t(nx: usize, i: usize) -> Poly {
        Poly::t(nx, i)
    }
    fn c(nx: usize, v: i64) -> Poly {
        Poly::constant(nx, v)
    }

    #[test]
    fn addition_cancels_and_has_identity() {
        assert!((&x(1, 1) + &(-x(1, 1))).is_zero());
        let p = &(&x(2, 1) + &t(2, 1)) + &x(2, 2);
        let q = &(&x(2, 1) + &x(2, 2)) + &t(2, 1);
        assert_eq!(p, q);
        assert_eq!(&p + &Poly::zero(2), p);
    }

    #[test]
    fn double_monomial_product() {
        let p = &(&x(1, 1) + &t(1, 1)) * &(&x(1, 1) + &t(1, 2));
        let expected = &(&x(1, 1).pow(2) + &(&(&t(1, 1) + &t(1, 2)) * &x(1, 1))) + &(&t(1, 1) * &t(1, 2));
        assert_eq!(p, expected);
        assert_eq!(&p * &Poly::one(1), p);
        let d = &(&x(2, 1) - &x(2, 2)) * &(&x(2, 1) + &x(2, 2));
        assert_eq!(d, &x(2, 1).pow(2) - &x(2, 2).pow(2));
    }

    #[test]
    fn arity_mismatch_is_an_error() {
        assert_eq!(
            x(1, 1).checked_add(&x(2, 1)),
            Err(Error::ArityMismatch { left: 1, right: 2 })
        );
        assert!(x(1, 1).checked_mul(&x(3, 1)).is_err());
        assert!(x(1, 1).exact_div(&x(2, 1)).is_err());
    }

    #[test]
    fn exact_division() {
        let p = &x(2, 1).pow(2) - &x(2, 2).pow(2);
        let d = &x(2, 1) - &x(2, 2);
        assert_eq!(p.exact_div(&d).unwrap(), &x(2, 1) + &x(2, 2));

        // (x1|t)^2 - (x2|t)^2 = (x1 - x2)(x1 + x2 + t1 + t2)
        let dm = |i| &(&x(2, i) + &t(2, 1)) * &(&x(2, i) + &t(2, 2));
        let a20 = &dm(1) - &dm(2);
        let s1 = &(&(&x(2, 1) + &x(2, 2)) + &t(2, 1)) + &t(2, 2);
        assert_eq!(a20.exact_div(&d).unwrap(), s1);
    }

    #[test]
    fn exact_division_failures() {
        let d = &x(2, 1) - &x(2, 2);
        assert!(matches!(
            (&x(2, 1) + &c(2, 1)).exact_div(&d),
            Err(Error::NotDivisible(_))
        ));
        assert!(matches!(
            x(2, 1).exact_div(&c(2, 2)),
            Err(Error::NotDivisible(_))
        ));
        assert_eq!(x(2, 1).exact_div(&Poly::zero(2)), Err(Error::DivisionByZero));
        assert_eq!(c(1, 6).exact_div(&c(1, -3)).unwrap(), c(1, -2));
    }

    #[test]
    fn kill_t_above_examples() {
        assert_eq!((&t(0, 3) + &t(0, 1)).kill_t_above(2), t(0, 1));
        assert!((&x(1, 1) * &t(1, 5)).kill_t_above(4).is_zero());
        let p = &(&t(1, 3) * &x(1, 1)) + &(&t(1, 2) * &t(1, 7));
        assert_eq!(p.kill_t_above(4).kill_t_above(4), p.kill_t_above(4));
        assert_eq!(p.kill_t_above(4), &t(1, 3) * &x(1, 1));
    }

    #[test]
    fn difference_basis_examples() {
        let d = (&t(0, 1) - &t(0, 2)).to_difference_basis(2).unwrap();
        assert_eq!(d.as_poly(), &t(0, 1));
        assert_eq!(d.differences_used(), vec![1]);
        assert_eq!(
            (&t(0, 1) + &t(0, 2)).to_difference_basis(2),
            Err(Error::NotShiftInvariant { m: 2 })
        );
        let five = c(0, 5).to_difference_basis(3).unwrap();
        assert_eq!(five.as_poly(), &c(0, 5));
        assert!(matches!(
            t(0, 4).to_difference_basis(3),
            Err(Error::OutsideCoefficientRing(_, 3))
        ));
        assert!(x(1, 1).to_difference_basis(3).is_err());
        // t1 + t2 - t3 - t4 = u1 + 2 u2 + u3
        let p = &(&t(0, 1) + &t(0, 2)) - &(&t(0, 3) + &t(0, 4));
        let d = p.to_difference_basis(4).unwrap();
        let expected = &(&t(0, 1) + &c(0, 2).mul(t(0, 2))) + &t(0, 3);
        assert_eq!(d.as_poly(), &expected);
        assert_eq!(d.to_t_poly(0), p);
    }

    #[test]
    fn canonical_order_is_graded_lex() {
        // x1 > x2 > t1 > t2 among degree-one monomials, and degree dominates
        let p = &(&(&x(2, 2) + &t(2, 2)) + &(&x(2, 1) + &t(2, 1))) + &(&t(2, 3) * &t(2, 4));
        let order: Vec<String> = p.terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, ["t3*t4", "x1", "x2", "t1", "t2"]);
        // t1 > t2^2 within t-lex when degrees agree
        let q = &(&t(0, 2) * &t(0, 2)) + &(&t(0, 1) * &t(0, 3));
        let order: Vec<String> = q.terms().map(|(m, _)| m.to_string()).collect();
        assert_eq!(order, ["t1*t3", "t2^2"]);
    }

    #[test]
    fn json_shape() {
        let p = &(&x(2, 1) * &t(2, 10)) - &c(2, 3).mul(t(2, 2));
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(
            json,
            r#"[{"x":[1,0],"t":{"10":1},"c":"1"},{"x":[0,0],"t":{"2":1},"c":"-3"}]"#
        );
        assert_eq!(Poly::from_json_value(&p.to_json_value(), 2).unwrap(), p);
        assert_eq!(serde_json::to_string(&Poly::zero(3)).unwrap(), "[]");
    }

    #[test]
    fn display() {
        let p = &(&x(2, 1) - &c(2, 2).mul(t(2, 1))) + &c(2, -1);
        assert_eq!(p.to_string(), "x1 - 2*t1 - 1");
        assert_eq!(Poly::zero(1).to_string(), "0");
        let d = (&t(0, 1) - &t(0, 3)).to_difference_basis(3).unwrap();
        assert_eq!(d.to_string(), "u1 + u2");
    }

    #[test]
    fn big_coefficients_do_not_overflow() {
        let p = (&x(1, 1) + &c(1, 1)).pow(80);
        let middle = p.coefficient(&Monomial::new(vec![40], []));
        assert_eq!(
            middle.to_string(),
            "107507208733336176461620"
        );
    }
}

//! The module `V = Z[t1..tm][x] / (x|t)^m`, matrices acting on it, its `n`-th
//! exterior power, and the coordinate isomorphism `Phi` from `Lambda_{n,m}`.
//!
//! Matrix convention: `E_ij` sends `(x|t)^{j-1}` to `(x|t)^{i-1}`, so columns
//! are indexed by the source basis vector.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grass::{reduce_mod_im, GrassContext};
use crate::partition::{Partition, StrictSequence};
use crate::poly::Poly;
use crate::schur::{self, SchurExpansion};

fn check_scalar(c: &Poly, m: usize) -> Result<()> {
    if c.nx() != 0 {
        return Err(Error::ArityMismatch {
            left: c.nx(),
            right: 0,
        });
    }
    match c.max_t_index() {
        Some(i) if i as usize > m => Err(Error::OutsideCoefficientRing(format!("t{i}"), m)),
        _ => Ok(()),
    }
}

/// Element of `V` in the basis `(x|t)^0, ..., (x|t)^{m-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VElement {
    coords: Vec<Poly>,
}

impl VElement {
    /// Coordinates must be x-free polynomials (arity 0) in `t1..tm`.
    pub fn new(coords: Vec<Poly>) -> Result<Self> {
        let m = coords.len();
        if m == 0 {
            return Err(Error::ShapeMismatch("V needs m >= 1".into()));
        }
        for c in &coords {
            check_scalar(c, m)?;
        }
        Ok(VElement { coords })
    }

    pub fn zero(m: usize) -> Self {
        VElement {
            coords: vec![Poly::zero(0); m],
        }
    }

    /// The basis vector `(x|t)^k`.
    pub fn basis(m: usize, k: usize) -> Self {
        assert!(k < m, "basis index {k} out of range for m = {m}");
        let mut v = Self::zero(m);
        v.coords[k] = Poly::one(0);
        v
    }

    pub fn m(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Poly] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Poly::is_zero)
    }

    /// `sum_k c_k (x_var|t)^k` as a polynomial with `nx` x-variables.
    pub fn to_poly_in(&self, nx: usize, var: usize) -> Poly {
        let powers = schur::double_monomial_powers(nx, var, self.m() as u32 - 1);
        let mut out = Poly::zero(nx);
        for (c, p) in self.coords.iter().zip(&powers) {
            if !c.is_zero() {
                out += &(&c.with_arity(nx).expect("x-free") * p);
            }
        }
        out
    }
}

impl Serialize for VElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coords.serialize(s)
    }
}

/// Multiplication by `x` on `V`:
/// `(x|t)^k -> (x|t)^{k+1} - t_{k+1} (x|t)^k`, the top power wrapping to zero.
pub fn mult_by_x(v: &VElement) -> VElement {
    let m = v.m();
    let mut out = VElement::zero(m);
    for (k, c) in v.coords.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if k + 1 < m {
            out.coords[k + 1] += c;
        }
        out.coords[k] -= &(&Poly::t(0, k + 1) * c);
    }
    out
}

/// `m x m` matrix over `Z[t1..tm]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GLMatrix {
    entries: Vec<Vec<Poly>>,
}

impl GLMatrix {
    /// Rows of x-free polynomials in `t1..tm`.
    pub fn new(entries: Vec<Vec<Poly>>) -> Result<Self> {
        let m = entries.len();
        if m == 0 {
            return Err(Error::ShapeMismatch("empty matrix".into()));
        }
        for row in &entries {
            if row.len() != m {
                return Err(Error::ShapeMismatch(format!(
                    "row of length {} in a {m}x{m} matrix",
                    row.len()
                )));
            }
            for c in row {
                check_scalar(c, m)?;
            }
        }
        Ok(GLMatrix { entries })
    }

    pub fn zero(m: usize) -> Self {
        GLMatrix {
            entries: vec![vec![Poly::zero(0); m]; m],
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::diagonal((0..m).map(|_| Poly::one(0)).collect())
    }

    pub fn diagonal(d: Vec<Poly>) -> Self {
        let m = d.len();
        let mut out = Self::zero(m);
        for (i, c) in d.into_iter().enumerate() {
            out.entries[i][i] = c;
        }
        out
    }

    /// `E_ij` with 1-based indices.
    pub fn elementary(m: usize, i: usize, j: usize) -> Self {
        let mut out = Self::zero(m);
        out.entries[i - 1][j - 1] = Poly::one(0);
        out
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[VElement]) -> Self {
        let m = columns.len();
        let mut out = Self::zero(m);
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.m(), m, "column length mismatch");
            for (i, c) in col.coords.iter().enumerate() {
                out.entries[i][j] = c.clone();
            }
        }
        out
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    /// Entry at 0-based `(row, col)`.
    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    fn check_shape(&self, other: &GLMatrix) -> Result<()> {
        if self.m() == other.m() {
            Ok(())
        } else {
            Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.m(),
                self.m(),
                other.m(),
                other.m()
            )))
        }
    }

    pub fn add(&self, other: &GLMatrix) -> Result<GLMatrix> {
        self.check_shape(other)?;
        let mut out = self.clone();
        for (row, other_row) in out.entries.iter_mut().zip(&other.entries) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GLMatrix) -> Result<GLMatrix> {
        self.add(&other.scale(&Poly::constant(0, -1)))
    }

    pub fn scale(&self, c: &Poly) -> GLMatrix {
        GLMatrix {
            entries: self
                .entries
                .iter()
                .map(|row| row.iter().map(|e| e * c).collect())
                .collect(),
        }
    }

    pub fn mul(&self, other: &GLMatrix) -> Result<GLMatrix> {
        self.check_shape(other)?;
        let m = self.m();
        let mut out = Self::zero(m);
        for i in 0..m {
            for k in 0..m {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..m {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out.entries[i][j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `[self, other] = self*other - other*self`.
    pub fn bracket(&self, other: &GLMatrix) -> Result<GLMatrix> {
        self.mul(other)?.sub(&other.mul(self)?)
    }

    pub fn apply(&self, v: &VElement) -> Result<VElement> {
        if v.m() != self.m() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} matrix applied to a vector of length {}",
                self.m(),
                self.m(),
                v.m()
            )));
        }
        let mut out = VElement::zero(self.m());
        for (i, row) in self.entries.iter().enumerate() {
            for (a, b) in row.iter().zip(&v.coords) {
                if !a.is_zero() && !b.is_zero() {
                    out.coords[i] += &(a * b);
                }
            }
        }
        Ok(out)
    }
}

impl Serialize for GLMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.entries.serialize(s)
    }
}

/// Matrix of multiplication by `x` on `V`.
pub fn mult_by_x_matrix(m: usize) -> GLMatrix {
    let columns: Vec<VElement> = (0..m).map(|k| mult_by_x(&VElement::basis(m, k))).collect();
    GLMatrix::from_columns(&columns)
}

/// Matrix of multiplication by `f` on `V`, as `sum_k f_k prod_{i<=k} (X + t_i)`
/// with `X` the matrix of multiplication by `x`.
pub fn multiplication_matrix(f: &VElement) -> GLMatrix {
    let m = f.m();
    let x = mult_by_x_matrix(m);
    let mut power = GLMatrix::identity(m);
    let mut out = GLMatrix::zero(m);
    for (k, c) in f.coords.iter().enumerate() {
        if k > 0 {
            let factor = x
                .add(&GLMatrix::identity(m).scale(&Poly::t(0, k)))
                .expect("same shape");
            power = power.mul(&factor).expect("same shape");
        }
        if !c.is_zero() {
            out = out.add(&power.scale(c)).expect("same shape");
        }
    }
    out
}

/// Element of the `n`-th exterior power of `V` in the basis
/// `(x|t)^{nu_1} ^ ... ^ (x|t)^{nu_n}`, `m > nu_1 > ... > nu_n >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeVector {
    n: usize,
    m: usize,
    terms: BTreeMap<StrictSequence, Poly>,
}

impl WedgeVector {
    pub fn zero(n: usize, m: usize) -> Self {
        WedgeVector {
            n,
            m,
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(n: usize, m: usize, nu: StrictSequence) -> Result<Self> {
        let mut w = Self::zero(n, m);
        w.add_term(nu, Poly::one(0))?;
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StrictSequence, &Poly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, nu: &StrictSequence) -> Poly {
        self.terms.get(nu).cloned().unwrap_or_else(|| Poly::zero(0))
    }

    /// Adds `coeff` times the basis vector `nu`.
    pub fn add_term(&mut self, nu: StrictSequence, coeff: Poly) -> Result<()> {
        if nu.len() != self.n || nu.parts().first().is_some_and(|&k| k as usize >= self.m) {
            return Err(Error::InvalidSequence(format!(
                "{nu} is not a basis index of the {}-th exterior power of a rank {} module",
                self.n, self.m
            )));
        }
        check_scalar(&coeff, self.m)?;
        if coeff.is_zero() {
            return Ok(());
        }
        let merged = match self.terms.remove(&nu) {
            Some(mut old) => {
                old += &coeff;
                old
            }
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(nu, merged);
        }
        Ok(())
    }

    pub fn add(&self, other: &WedgeVector) -> Result<WedgeVector> {
        if (self.n, self.m) != (other.n, other.m) {
            return Err(Error::ShapeMismatch(format!(
                "wedge vectors of shape ({},{}) and ({},{})",
                self.n, self.m, other.n, other.m
            )));
        }
        let mut out = self.clone();
        for (nu, c) in &other.terms {
            out.add_term(nu.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &WedgeVector) -> Result<WedgeVector> {
        self.add(&other.scale(&Poly::constant(0, -1)))
    }

    pub fn scale(&self, c: &Poly) -> WedgeVector {
        let mut out = Self::zero(self.n, self.m);
        for (nu, d) in &self.terms {
            let p = c * d;
            if !p.is_zero() {
                out.terms.insert(nu.clone(), p);
            }
        }
        out
    }
}

impl Serialize for WedgeVector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            nu: &'a StrictSequence,
            coeff: &'a Poly,
        }
        let terms: Vec<Term> = self.terms.iter().map(|(nu, coeff)| Term { nu, coeff }).collect();
        let mut st = s.serialize_struct("WedgeVector", 3)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("m", &self.m)?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

impl fmt::Display for WedgeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(nu, c)| {
                if c.is_one() {
                    format!("w{nu}")
                } else {
                    format!("({c})*w{nu}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sorts into strictly decreasing order; `None` on a repeated index, else the
/// sorted sequence and whether the sorting permutation is odd.
fn sort_with_sign(mut seq: Vec<u32>) -> Option<(Vec<u32>, bool)> {
    let mut odd = false;
    for a in 1..seq.len() {
        let mut b = a;
        while b > 0 && seq[b - 1] <= seq[b] {
            if seq[b - 1] == seq[b] {
                return None;
            }
            seq.swap(b - 1, b);
            odd = !odd;
            b -= 1;
        }
    }
    Some((seq, odd))
}

/// Leibniz action `X (v1 ^ ... ^ vn) = sum_i v1 ^ ... ^ X v_i ^ ... ^ vn`.
pub fn gl_action_on_wedge(x: &GLMatrix, w: &WedgeVector) -> Result<WedgeVector> {
    if x.m() != w.m {
        return Err(Error::ShapeMismatch(format!(
            "{}x{} matrix acting on the exterior power of a rank {} module",
            x.m(),
            x.m(),
            w.m
        )));
    }
    let mut out = WedgeVector::zero(w.n, w.m);
    for (nu, c) in &w.terms {
        for slot in 0..w.n {
            let source = nu.parts()[slot] as usize;
            for row in 0..w.m {
                let a = x.entry(row, source);
                if a.is_zero() {
                    continue;
                }
                let mut seq = nu.parts().to_vec();
                seq[slot] = row as u32;
                let Some((sorted, odd)) = sort_with_sign(seq) else {
                    continue;
                };
                let mut coeff = a * c;
                if odd {
                    coeff = -coeff;
                }
                let sorted = StrictSequence::new(sorted).expect("sorted without repeats");
                out.add_term(sorted, coeff)?;
            }
        }
    }
    Ok(out)
}

/// 0/1 vector of length `m` with exactly `n` ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coweight01 {
    bits: Vec<u8>,
}

impl Coweight01 {
    pub fn new(bits: Vec<u8>, n: usize) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::ShapeMismatch(format!("{bits:?} is not a 0/1 vector")));
        }
        let ones = bits.iter().filter(|&&b| b == 1).count();
        if ones != n {
            return Err(Error::ShapeMismatch(format!(
                "{bits:?} has {ones} ones, expected {n}"
            )));
        }
        Ok(Coweight01 { bits })
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    /// 1-based positions of the ones, decreasing.
    pub fn positions(&self) -> Vec<usize> {
        (1..=self.bits.len()).rev().filter(|&i| self.bits[i - 1] == 1).collect()
    }
}

impl fmt::Display for Coweight01 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.bits.iter().map(u8::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Serialize for Coweight01 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.bits.serialize(s)
    }
}

/// Ones at the 1-based positions `lambda_i + n - i + 1`.
pub fn lambda_to_coweight(lambda: &Partition, ctx: &GrassContext) -> Result<Coweight01> {
    ctx.check(lambda)?;
    let mut bits = vec![0u8; ctx.m()];
    for &k in lambda.plus_rho(ctx.n()).parts() {
        bits[k as usize] = 1;
    }
    Coweight01::new(bits, ctx.n())
}

pub fn coweight_to_lambda(c: &Coweight01, ctx: &GrassContext) -> Result<Partition> {
    if c.bits.len() != ctx.m() {
        return Err(Error::ShapeMismatch(format!(
            "coweight {c} has length {}, expected {}",
            c.bits.len(),
            ctx.m()
        )));
    }
    let nu: Vec<u32> = c.positions().into_iter().map(|p| p as u32 - 1).collect();
    Ok(StrictSequence::new(nu)?.minus_rho())
}

/// `Phi`: `s_lambda` goes to the basis vector `lambda + rho`.
pub fn phi_forward(e: &SchurExpansion, ctx: &GrassContext) -> Result<WedgeVector> {
    if e.n() != ctx.n() {
        return Err(Error::ArityMismatch {
            left: e.n(),
            right: ctx.n(),
        });
    }
    let mut out = WedgeVector::zero(ctx.n(), ctx.m());
    for (lambda, c) in e.iter() {
        ctx.check(lambda)?;
        out.add_term(lambda.plus_rho(ctx.n()), c.clone())?;
    }
    Ok(out)
}

pub fn phi_backward(w: &WedgeVector) -> SchurExpansion {
    let mut out = SchurExpansion::new(w.n);
    for (nu, c) in &w.terms {
        out.add_term(nu.minus_rho(), c.clone());
    }
    out
}

fn check_rank(f: &VElement, ctx: &GrassContext) -> Result<()> {
    if f.m() == ctx.m() {
        Ok(())
    } else {
        Err(Error::ShapeMismatch(format!(
            "element of a rank {} module acting on {ctx}",
            f.m()
        )))
    }
}

/// Action of `f` through the exterior power: the multiplication matrix of
/// `f` acting by Leibniz, pulled back through `Phi`.
pub fn wedge_side_action(
    f: &VElement,
    e: &SchurExpansion,
    ctx: &GrassContext,
) -> Result<SchurExpansion> {
    check_rank(f, ctx)?;
    let image = gl_action_on_wedge(&multiplication_matrix(f), &phi_forward(e, ctx)?)?;
    Ok(phi_backward(&image))
}

/// Multiplication by `f(x1) + ... + f(xn)` in `Lambda_n`, reduced modulo `I_m`.
pub fn polynomial_side_action(
    f: &VElement,
    e: &SchurExpansion,
    ctx: &GrassContext,
) -> Result<SchurExpansion> {
    check_rank(f, ctx)?;
    let n = ctx.n();
    let mut sum = Poly::zero(n);
    for var in 1..=n {
        sum += &f.to_poly_in(n, var);
    }
    let product = sum.checked_mul(&e.to_poly()?)?;
    reduce_mod_im(&schur::expand_in_double_schur(&product, n)?, ctx)
}

/// Action of `f` in the centralizer of `x`, computed on both sides and
/// checked to agree.
pub fn centralizer_action(
    f: &VElement,
    e: &SchurExpansion,
    ctx: &GrassContext,
) -> Result<SchurExpansion> {
    let wedge = wedge_side_action(f, e, ctx)?;
    let poly = polynomial_side_action(f, e, ctx)?;
    if wedge != poly {
        return Err(Error::Inconsistent(format!(
            "action of {:?} on {e}: wedge side gives {wedge}, polynomial side gives {poly}",
            f.coords
        )));
    }
    Ok(wedge)
}

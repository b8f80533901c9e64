//! Two concrete groups: `SL_2(R)` in floating point (transpose-inverse
//! involution, twist map, Iwasawa and KAK decompositions), and exact
//! matrices over the Laurent polynomial ring `Q[t, t^-1]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{fmt_rational, q, Rational};

/// Default tolerance for floating point identities on `SL_2`.
pub const MAT2_TOL: f64 = 1e-10;
/// Allowed `|det - 1|` for user-supplied group elements.
pub const DET_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// SL_2(R)

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Mat2(pub [[f64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([[1.0, 0.0], [0.0, 1.0]]);

    /// Checked constructor for group elements.
    pub fn sl2(m: [[f64; 2]; 2]) -> Result<Mat2> {
        let g = Mat2(m);
        if (g.det() - 1.0).abs() > DET_TOL {
            return Err(Error::NotUnimodular(format!("{}", g.det())));
        }
        Ok(g)
    }

    pub fn rotation(phi: f64) -> Mat2 {
        let (s, c) = phi.sin_cos();
        Mat2([[c, -s], [s, c]])
    }

    pub fn diag(x: f64, y: f64) -> Mat2 {
        Mat2([[x, 0.0], [0.0, y]])
    }

    pub fn upper(x: f64) -> Mat2 {
        Mat2([[1.0, x], [0.0, 1.0]])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let (a, b) = (&self.0, &o.0);
        let mut r = [[0.0; 2]; 2];
        for (i, row) in r.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(r)
    }

    pub fn transpose(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[m[0][0], m[1][0]], [m[0][1], m[1][1]]])
    }

    pub fn inverse(&self) -> Result<Mat2> {
        let d = self.det();
        let scale = self.norm().max(1.0);
        if d.abs() <= 1e-14 * scale * scale {
            return Err(Error::SingularMatrix);
        }
        let m = &self.0;
        Ok(Mat2([[m[1][1] / d, -m[0][1] / d], [-m[1][0] / d, m[0][0] / d]]))
    }

    pub fn neg(&self) -> Mat2 {
        let m = &self.0;
        Mat2([[0.0 - m[0][0], 0.0 - m[0][1]], [0.0 - m[1][0], 0.0 - m[1][1]]])
    }

    /// Max-norm.
    pub fn norm(&self) -> f64 {
        self.0.iter().flatten().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    pub fn max_diff(&self, o: &Mat2) -> f64 {
        self.0.iter().flatten().zip(o.0.iter().flatten()).fold(0.0, |acc: f64, (x, y)| acc.max((x - y).abs()))
    }

    /// `max |a_ij - b_ij| <= tol * max(1, |a|, |b|)`.
    pub fn approx_eq(&self, o: &Mat2, tol: f64) -> bool {
        self.max_diff(o) <= tol * self.norm().max(o.norm()).max(1.0)
    }

    pub fn is_rotation(&self, tol: f64) -> bool {
        self.mul(&self.transpose()).approx_eq(&Mat2::IDENTITY, tol) && (self.det() - 1.0).abs() <= tol
    }

    pub fn is_symmetric_positive_definite(&self, tol: f64) -> bool {
        let m = &self.0;
        (m[0][1] - m[1][0]).abs() <= tol * self.norm().max(1.0) && m[0][0] > 0.0 && self.det() > 0.0
    }

    /// Random element with entries of moderate size: `u(x) diag(e^s, e^-s) rot(phi)`.
    pub fn random_sl2<R: Rng>(rng: &mut R) -> Mat2 {
        let x = rng.gen_range(-2.0..2.0);
        let s = rng.gen_range(-1.5..1.5f64);
        let phi = rng.gen_range(0.0..std::f64::consts::TAU);
        Mat2::upper(x).mul(&Mat2::diag(s.exp(), (-s).exp())).mul(&Mat2::rotation(phi))
    }
}

/// Transpose-inverse involution.
pub fn theta(g: &Mat2) -> Result<Mat2> {
    Ok(g.inverse()?.transpose())
}

/// `tau(g) = g theta(g)^{-1}`, which equals `g g^T`.
pub fn twist(g: &Mat2) -> Result<Mat2> {
    Ok(g.mul(&theta(g)?.inverse()?))
}

/// Twisted action `g * x = g x theta(g)^{-1}`.
pub fn star(g: &Mat2, x: &Mat2) -> Result<Mat2> {
    Ok(g.mul(x).mul(&theta(g)?.inverse()?))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Iwasawa {
    pub u: Mat2,
    pub a: Mat2,
    pub k: Mat2,
}

/// `g = u a k` with `u` upper unitriangular, `a` positive diagonal and `k` a
/// rotation, by Gram-Schmidt on the rows of `g` starting from the bottom.
pub fn iwasawa(g: &Mat2) -> Result<Iwasawa> {
    if g.det() <= 0.0 {
        return Err(Error::NotUnimodular(format!("{}", g.det())));
    }
    let r1 = g.0[0];
    let r2 = g.0[1];
    let t22 = r2[0].hypot(r2[1]);
    let k2 = [r2[0] / t22, r2[1] / t22];
    let t12 = r1[0] * k2[0] + r1[1] * k2[1];
    let rest = [r1[0] - t12 * k2[0], r1[1] - t12 * k2[1]];
    let t11 = rest[0].hypot(rest[1]);
    let k1 = [rest[0] / t11, rest[1] / t11];
    Ok(Iwasawa { u: Mat2::upper(t12 / t22), a: Mat2::diag(t11, t22), k: Mat2([k1, k2]) })
}

/// Logarithm of the first entry of the Iwasawa `A`-part of
/// `rot(phi) diag(e^s, e^-s)`.
pub fn kostant_rank_one(s: f64, phi: f64) -> f64 {
    let g = Mat2::rotation(phi).mul(&Mat2::diag(s.exp(), (-s).exp()));
    iwasawa(&g).expect("rotation times positive diagonal has det 1").a.0[0][0].ln()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Kak {
    pub k1: Mat2,
    pub a: Mat2,
    pub k2: Mat2,
    pub sigma: f64,
}

/// `g = k1 diag(sigma, 1/sigma) k2` with `sigma >= 1` and `k1 = rot(angle)`,
/// `cos(angle) >= 0`. `k1` diagonalizes `g g^T`.
pub fn kak(g: &Mat2) -> Result<Kak> {
    let p = g.mul(&g.transpose());
    let (pa, pq, pr) = (p.0[0][0], p.0[0][1], p.0[1][1]);
    let angle = 0.5 * (2.0 * pq).atan2(pa - pr);
    let half_sum = 0.5 * (pa + pr);
    let radius = (0.5 * (pa - pr)).hypot(pq);
    let sigma = (half_sum + radius).sqrt().max(1.0);
    let k1 = Mat2::rotation(angle);
    let a = Mat2::diag(sigma, 1.0 / sigma);
    let k2 = a.inverse()?.mul(&k1.transpose()).mul(g);
    Ok(Kak { k1, a, k2, sigma })
}

// ---------------------------------------------------------------------------
// Laurent polynomials over Q

/// Finitely supported map exponent -> nonzero rational coefficient.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(c, 0)
    }

    pub fn int(c: i64) -> Self {
        LaurentPoly::constant(q(c))
    }

    pub fn monomial(c: Rational, exp: i64) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        LaurentPoly { terms }
    }

    pub fn t() -> Self {
        LaurentPoly::monomial(Rational::one(), 1)
    }

    pub fn t_inv() -> Self {
        LaurentPoly::monomial(Rational::one(), -1)
    }

    /// From `(exponent, integer coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        terms.iter().fold(LaurentPoly::zero(), |acc, &(e, c)| &acc + &LaurentPoly::monomial(q(c), e))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &Rational)> {
        self.terms.iter()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    /// Units of `Q[t, t^-1]` are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn unit_inverse(&self) -> Option<LaurentPoly> {
        if !self.is_unit() {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        Some(LaurentPoly::monomial(c.recip(), -e))
    }

    /// The involution `t <-> t^-1`.
    pub fn sigma(&self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect() }
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&e, x)| (e, x * c)).collect() }
    }

    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&e, c)| (e + k, c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.terms.iter().map(|(&e, c)| crate::linalg::rational_to_f64(c) * t.powi(e as i32)).sum()
    }

    fn insert_add(&mut self, exp: i64, c: Rational) {
        let entry = self.terms.entry(exp).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&exp);
        }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let mono = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                f.write_str(&mono)?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let map: BTreeMap<String, String> = self.terms.iter().map(|(e, c)| (e.to_string(), fmt_rational(c))).collect();
        map.serialize(s)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.insert_add(e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (&e, c) in &o.terms {
            r.insert_add(e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (&e1, c1) in &self.terms {
            for (&e2, c2) in &o.terms {
                r.insert_add(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rational::one())
    }
}

/// Square root in `R[t, t^-1]` of a Laurent polynomial with rational
/// coefficients, if one exists.
///
/// Returns `(lc, s)` with `p = lc * s^2`, `lc > 0` the leading coefficient
/// and `s` monic with rational coefficients. After dividing by `lc` a square
/// root is monic and its coefficients are forced one at a time from the top.
pub fn laurent_sqrt(p: &LaurentPoly) -> Option<(Rational, LaurentPoly)> {
    if p.is_zero() {
        return Some((Rational::zero(), LaurentPoly::zero()));
    }
    let (lo, hi) = (p.min_exp()?, p.max_exp()?);
    if lo % 2 != 0 || hi % 2 != 0 {
        return None;
    }
    let lc = p.coeff(hi);
    if !lc.is_positive() {
        return None;
    }
    let monic = p.scale(&lc.recip()).shift(-lo);
    let d = (hi - lo) / 2;
    let mut s: Vec<Rational> = vec![Rational::zero(); d as usize + 1];
    s[d as usize] = Rational::one();
    let two = q(2);
    for k in (0..d).rev() {
        // Coefficient of x^(d+k) in s^2 is 2 s_d s_k + sum_{i+j=d+k, k<i,j<d} s_i s_j.
        let mut rest = Rational::zero();
        for i in (k + 1)..d {
            let j = d + k - i;
            if j > k && j < d {
                rest += &s[i as usize] * &s[j as usize];
            }
        }
        s[k as usize] = (monic.coeff(d + k) - rest) / &two;
    }
    let root = s.iter().enumerate().fold(LaurentPoly::zero(), |acc, (e, c)| &acc + &LaurentPoly::monomial(c.clone(), e as i64));
    if &root * &root == monic {
        Some((lc, root.shift(lo / 2)))
    } else {
        None
    }
}

/// Whether `x^2 - c x + 1` splits into linear factors over `R[t, t^-1]`,
/// i.e. whether `c^2 - 4` is a square there.
pub fn quadratic_splits_over_laurent(c: &LaurentPoly) -> bool {
    laurent_sqrt(&(&(c * c) - &LaurentPoly::int(4))).is_some()
}

// ---------------------------------------------------------------------------
// Matrices over Q[t, t^-1]

#[derive(Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    n: usize,
    data: Vec<LaurentPoly>,
}

impl fmt::Debug for LaurentMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rows().serialize(s)
    }
}

impl LaurentMatrix {
    pub fn identity(n: usize) -> Self {
        LaurentMatrix::from_fn(n, |i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> LaurentPoly) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        LaurentMatrix { n, data }
    }

    pub fn diagonal(entries: &[LaurentPoly]) -> Self {
        LaurentMatrix::from_fn(entries.len(), |i, j| if i == j { entries[i].clone() } else { LaurentPoly::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: LaurentPoly) {
        self.data[i * self.n + j] = v;
    }

    pub fn rows(&self) -> Vec<Vec<LaurentPoly>> {
        self.data.chunks(self.n.max(1)).map(<[LaurentPoly]>::to_vec).collect()
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn mul(&self, o: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.n, |i, j| {
            (0..self.n).fold(LaurentPoly::zero(), |acc, k| &acc + &(self.get(i, k) * o.get(k, j)))
        })
    }

    pub fn add(&self, o: &LaurentMatrix) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.n, |i, j| self.get(i, j) + o.get(i, j))
    }

    pub fn scale(&self, c: &LaurentPoly) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn transpose(&self) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn sigma(&self) -> LaurentMatrix {
        LaurentMatrix::from_fn(self.n, |i, j| self.get(i, j).sigma())
    }

    pub fn trace(&self) -> LaurentPoly {
        (0..self.n).fold(LaurentPoly::zero(), |acc, i| &acc + self.get(i, i))
    }

    fn minor(&self, row: usize, col: usize) -> LaurentMatrix {
        let idx_r: Vec<usize> = (0..self.n).filter(|&i| i != row).collect();
        let idx_c: Vec<usize> = (0..self.n).filter(|&j| j != col).collect();
        LaurentMatrix::from_fn(self.n - 1, |i, j| self.get(idx_r[i], idx_c[j]).clone())
    }

    /// Cofactor expansion along the first row.
    pub fn determinant(&self) -> LaurentPoly {
        match self.n {
            0 => LaurentPoly::one(),
            1 => self.get(0, 0).clone(),
            _ => (0..self.n).fold(LaurentPoly::zero(), |acc, j| {
                if self.get(0, j).is_zero() {
                    return acc;
                }
                let term = self.get(0, j) * &self.minor(0, j).determinant();
                if j % 2 == 0 {
                    &acc + &term
                } else {
                    &acc - &term
                }
            }),
        }
    }

    pub fn adjugate(&self) -> LaurentMatrix {
        if self.n == 1 {
            return LaurentMatrix::identity(1);
        }
        LaurentMatrix::from_fn(self.n, |i, j| {
            let c = self.minor(j, i).determinant();
            if (i + j) % 2 == 0 {
                c
            } else {
                -&c
            }
        })
    }

    /// Inverse via the adjugate; the determinant must be a unit `c t^k`.
    pub fn inverse(&self) -> Result<LaurentMatrix> {
        let det_inv = self.determinant().unit_inverse().ok_or(Error::NonUnitDeterminant)?;
        Ok(self.adjugate().scale(&det_inv))
    }

    /// `theta(x) = ((x^-1)^T)^sigma`.
    pub fn theta(&self) -> Result<LaurentMatrix> {
        Ok(self.inverse()?.transpose().sigma())
    }

    /// Characteristic polynomial `det(x I - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> LambdaPoly {
        let n = self.n;
        let mut coeffs = vec![LaurentPoly::zero(); n + 1];
        coeffs[n] = LaurentPoly::one();
        let mut m = LaurentMatrix::from_fn(n, |_, _| LaurentPoly::zero());
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I ; c_{n-k} = -tr(A M_k) / k
            let mut next = self.mul(&m);
            for i in 0..n {
                let d = next.get(i, i) + &coeffs[n - k + 1];
                next.set(i, i, d);
            }
            m = next;
            let c = self.mul(&m).trace().scale(&(-q(1) / q(k as i64)));
            coeffs[n - k] = c;
        }
        LambdaPoly(coeffs)
    }
}

/// Polynomial in the spectral variable with Laurent coefficients, lowest
/// degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct LambdaPoly(pub Vec<LaurentPoly>);

impl LambdaPoly {
    fn trimmed(mut v: Vec<LaurentPoly>) -> Self {
        while v.len() > 1 && v.last().is_some_and(LaurentPoly::is_zero) {
            v.pop();
        }
        LambdaPoly(v)
    }

    pub fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn mul(&self, o: &LambdaPoly) -> LambdaPoly {
        let mut out = vec![LaurentPoly::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        LambdaPoly::trimmed(out)
    }

    /// `x - 1`.
    pub fn x_minus_one() -> LambdaPoly {
        LambdaPoly(vec![LaurentPoly::int(-1), LaurentPoly::one()])
    }

    /// `x^2 - c x + 1`.
    pub fn palindromic_quadratic(c: &LaurentPoly) -> LambdaPoly {
        LambdaPoly(vec![LaurentPoly::one(), -c, LaurentPoly::one()])
    }

    /// Divides by `x - 1` when the remainder vanishes.
    pub fn div_x_minus_one(&self) -> Option<LambdaPoly> {
        let n = self.degree();
        if n == 0 {
            return None;
        }
        // Synthetic division at 1.
        let mut quot = vec![LaurentPoly::zero(); n];
        let mut carry = LaurentPoly::zero();
        for k in (1..=n).rev() {
            carry = &self.0[k] + &carry;
            quot[k - 1] = carry.clone();
        }
        if (&self.0[0] + &carry).is_zero() {
            Some(LambdaPoly::trimmed(quot))
        } else {
            None
        }
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let x = match k {
                    0 => String::new(),
                    1 => "x".into(),
                    _ => format!("x^{k}"),
                };
                match (c.to_string().as_str(), x.is_empty()) {
                    (s, true) => format!("({s})"),
                    ("1", false) => x,
                    (s, false) => format!("({s})*{x}"),
                }
            })
            .collect();
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl Serialize for LambdaPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

// ---------------------------------------------------------------------------
// The twisted unipotent example in SL_{n+1}(R[t, t^-1])

#[derive(Clone, Debug, Serialize)]
pub struct HoleExample {
    pub n: usize,
    pub u: LaurentMatrix,
    /// `v = u theta(u)^{-1}`.
    pub v: LaurentMatrix,
    pub trace_coefficient: LaurentPoly,
    pub charpoly: LambdaPoly,
    pub expected_charpoly: LambdaPoly,
    pub block_matches: bool,
    pub charpoly_matches: bool,
    pub det_is_one: bool,
}

/// `u` is the identity of size `n + 1` with `(1,2)` entry `1 + t`.
pub fn example_hole(n: usize) -> Result<HoleExample> {
    if n == 0 {
        return Err(Error::DimensionMismatch { expected: 1, got: 0 });
    }
    let one_plus_t = &LaurentPoly::one() + &LaurentPoly::t();
    let mut u = LaurentMatrix::identity(n + 1);
    u.set(0, 1, one_plus_t.clone());
    let v = u.mul(&u.theta()?.inverse()?);
    let one_plus_tinv = one_plus_t.sigma();
    let c = &LaurentPoly::one() + &(&one_plus_t * &one_plus_tinv);
    let block_matches = *v.get(0, 0) == c
        && *v.get(0, 1) == one_plus_t
        && *v.get(1, 0) == one_plus_tinv
        && *v.get(1, 1) == LaurentPoly::one();
    let trace_coefficient = &c + &LaurentPoly::one();
    let mut expected = LambdaPoly::palindromic_quadratic(&trace_coefficient);
    for _ in 1..n {
        expected = expected.mul(&LambdaPoly::x_minus_one());
    }
    let charpoly = v.charpoly();
    Ok(HoleExample {
        n,
        det_is_one: v.determinant() == LaurentPoly::one(),
        charpoly_matches: charpoly == expected,
        u,
        v,
        trace_coefficient,
        charpoly,
        expected_charpoly: expected,
        block_matches,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Diagonalizability {
    Yes { reason: String },
    No { reason: String },
}

/// The quadratic left after removing all factors `x - 1` from the
/// characteristic polynomial, if it is monic of degree 2.
fn residual_quadratic(v: &LaurentMatrix) -> Option<(LambdaPoly, usize)> {
    let mut p = v.charpoly();
    let mut ones = 0;
    while let Some(next) = p.div_x_minus_one() {
        p = next;
        ones += 1;
    }
    (p.degree() == 2 && p.0[2] == LaurentPoly::one()).then_some((p, ones))
}

/// Decides diagonalizability for diagonal inputs and for matrices whose
/// characteristic polynomial is `(x^2 + b x + c)(x - 1)^k` with a quadratic
/// that does not split over `R[t, t^-1]`. Anything else is refused.
pub fn diagonalizable_in_affine(v: &LaurentMatrix) -> Result<Diagonalizability> {
    if v.is_diagonal() {
        return Ok(Diagonalizability::Yes { reason: "already diagonal".into() });
    }
    let (quad, ones) = residual_quadratic(v).ok_or(Error::NotFromExampleHole)?;
    let disc = &(&quad.0[1] * &quad.0[1]) - &(&LaurentPoly::int(4) * &quad.0[0]);
    if laurent_sqrt(&disc).is_some() {
        return Err(Error::NotFromExampleHole);
    }
    Ok(Diagonalizability::No {
        reason: format!(
            "characteristic polynomial ({quad})(x - 1)^{ones} does not split over R[t,t^-1]: discriminant {disc} is not a square"
        ),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MidpointObstruction {
    /// `theta(v) = v^-1`, as for every twist image.
    pub theta_is_inverse: bool,
    pub charpoly_splits: bool,
    pub midpoint_exists: bool,
    pub argument: String,
}

/// A midpoint `x` of `e` and `v` in the group model would satisfy
/// `v = x e^-1 x = x^2` with `x` in the image of the twist map, making `v`
/// diagonalizable. Reported when the characteristic polynomial test says
/// `v` is not.
pub fn midpoint_obstruction(v: &LaurentMatrix) -> Result<MidpointObstruction> {
    let theta_is_inverse = v.theta()? == v.inverse()?;
    match diagonalizable_in_affine(v)? {
        Diagonalizability::No { reason } => Ok(MidpointObstruction {
            theta_is_inverse,
            charpoly_splits: false,
            midpoint_exists: false,
            argument: format!(
                "a midpoint x of e and v would give v = x e^-1 x = x^2 with x a twist image, hence v diagonalizable; but {reason}"
            ),
        }),
        Diagonalizability::Yes { .. } => Err(Error::NotFromExampleHole),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn twist_examples() {
        let r = Mat2::rotation(0.7);
        assert!(twist(&r).unwrap().approx_eq(&Mat2::IDENTITY, 1e-12));
        let d = Mat2::diag(3.0, 1.0 / 3.0);
        assert!(twist(&d).unwrap().approx_eq(&Mat2::diag(9.0, 1.0 / 9.0), 1e-12));
        assert_eq!(theta(&Mat2([[1.0, 2.0], [2.0, 4.0]])), Err(Error::SingularMatrix));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            assert!(twist(&Mat2::random_sl2(&mut rng)).unwrap().is_symmetric_positive_definite(1e-10));
        }
    }

    #[test]
    fn iwasawa_examples() {
        let i = iwasawa(&Mat2::IDENTITY).unwrap();
        assert_eq!((i.u, i.a, i.k), (Mat2::IDENTITY, Mat2::IDENTITY, Mat2::IDENTITY));
        let w = Mat2([[0.0, 1.0], [-1.0, 0.0]]);
        let i = iwasawa(&w).unwrap();
        assert!(i.u.approx_eq(&Mat2::IDENTITY, 1e-15) && i.a.approx_eq(&Mat2::IDENTITY, 1e-15));
        assert_eq!(i.k, w);
    }

    #[test]
    fn kostant_examples() {
        assert!((kostant_rank_one(1.3, 0.0) - 1.3).abs() < 1e-12);
        assert!((kostant_rank_one(1.3, FRAC_PI_2) + 1.3).abs() < 1e-12);
        for k in 0..360 {
            let v = kostant_rank_one(1.0, 2.0 * PI * k as f64 / 360.0);
            assert!(v.abs() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn kak_examples() {
        let d = kak(&Mat2::diag(3.0, 1.0 / 3.0)).unwrap();
        assert!((d.sigma - 3.0).abs() < 1e-12);
        assert!(d.k1.approx_eq(&Mat2::IDENTITY, 1e-12) && d.k2.approx_eq(&Mat2::IDENTITY, 1e-12));
        let r = kak(&Mat2::rotation(2.0)).unwrap();
        assert!(r.a.approx_eq(&Mat2::IDENTITY, 1e-12));
        assert_eq!(r.k1, Mat2::IDENTITY);
    }

    #[test]
    fn laurent_basics() {
        let p = &LaurentPoly::one() + &LaurentPoly::t();
        assert_eq!(p.sigma(), &LaurentPoly::one() + &LaurentPoly::t_inv());
        assert_eq!(p.to_string(), "t + 1");
        assert_eq!(LaurentPoly::from_terms(&[(1, 1), (0, 4), (-1, 1)]).to_string(), "t + 4 + t^-1");
        let mut u = LaurentMatrix::identity(2);
        u.set(0, 1, p.clone());
        let mut expected = LaurentMatrix::identity(2);
        expected.set(0, 1, -&p);
        assert_eq!(u.inverse().unwrap(), expected);
        let singular = LaurentMatrix::diagonal(&[p.clone(), LaurentPoly::one()]);
        assert_eq!(singular.inverse(), Err(Error::NonUnitDeterminant));
    }

    #[test]
    fn squares() {
        let c = LaurentPoly::from_terms(&[(1, 1), (0, 4), (-1, 1)]);
        assert!(!quadratic_splits_over_laurent(&c));
        assert!(quadratic_splits_over_laurent(&LaurentPoly::int(2)));
        let sq = &(&LaurentPoly::t() - &LaurentPoly::t_inv()) * &(&LaurentPoly::t() - &LaurentPoly::t_inv());
        assert_eq!(laurent_sqrt(&sq).unwrap().1, &LaurentPoly::t() - &LaurentPoly::t_inv());
        assert!(laurent_sqrt(&LaurentPoly::monomial(q(2), 2)).is_some());
        assert!(laurent_sqrt(&LaurentPoly::monomial(q(-2), 2)).is_none());
        assert!(laurent_sqrt(&LaurentPoly::t()).is_none());
    }

    #[test]
    fn hole_example() {
        for n in 1..=4 {
            let h = example_hole(n).unwrap();
            assert!(h.block_matches && h.charpoly_matches && h.det_is_one, "n = {n}");
        }
        let h = example_hole(1).unwrap();
        assert_eq!(h.v.trace(), LaurentPoly::from_terms(&[(1, 1), (0, 4), (-1, 1)]));
        assert!(matches!(diagonalizable_in_affine(&h.v).unwrap(), Diagonalizability::No { .. }));
        let m = midpoint_obstruction(&example_hole(2).unwrap().v).unwrap();
        assert!(m.theta_is_inverse && !m.midpoint_exists);
        assert!(matches!(diagonalizable_in_affine(&LaurentMatrix::identity(3)).unwrap(), Diagonalizability::Yes { .. }));
        let d = LaurentMatrix::diagonal(&[LaurentPoly::t(), LaurentPoly::t_inv()]);
        assert!(matches!(diagonalizable_in_affine(&d).unwrap(), Diagonalizability::Yes { .. }));
        let mut unip = LaurentMatrix::identity(2);
        unip.set(0, 1, LaurentPoly::t());
        assert_eq!(diagonalizable_in_affine(&unip), Err(Error::NotFromExampleHole));
    }
}

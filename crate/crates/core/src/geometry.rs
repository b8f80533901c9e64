//! Invariant forms, root bases, the Tits cone, root hyperplanes, the flat
//! causal order and the linear realization of diagram symmetries.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gcm::{classify, diagram_automorphisms, GeneralizedCartanMatrix, Symmetrization, TypeKind};
use crate::linalg::{q, rational_to_f64, QMatrix, Rational};
use crate::weylrep::{
    dual_word_to_matrix, enumerate_real_roots, is_real_root, pairing_int, reduced_space, word_to_matrix, RealRoot,
    ReducedSpace, WeylWord,
};

/// Tolerance for checks on normalized (square-root scaled) quantities.
pub const NORMALIZED_TOL: f64 = 1e-12;

/// Default step cap for reflection descent, overridable via `KMSS_CAP` in the CLI.
pub const DEFAULT_CAP: usize = 10_000;

// ---------------------------------------------------------------------------
// Invariant form

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantForm {
    /// `(h_i | h_j) = b_ij eps_i eps_j = a_ij eps_j`.
    pub gram_coroots: QMatrix,
    /// `b_ij`.
    pub gram_roots: QMatrix,
}

pub fn invariant_form(a: &GeneralizedCartanMatrix, sym: &Symmetrization) -> Result<InvariantForm> {
    let n = a.n();
    if sym.epsilon.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: sym.epsilon.len() });
    }
    let consistent = sym.b.is_symmetric()
        && (0..n).all(|i| (0..n).all(|j| q(sym.epsilon[i]) * sym.b.get(i, j) == q(a.a(i, j))));
    if !consistent {
        return Err(Error::NotSymmetrizable);
    }
    let gram_coroots = QMatrix::from_fn(n, n, |i, j| sym.b.get(i, j) * q(sym.epsilon[i] * sym.epsilon[j]));
    Ok(InvariantForm { gram_coroots, gram_roots: sym.b.clone() })
}

/// `M^T G M == G`.
pub fn preserves_form(m: &QMatrix, g: &QMatrix) -> bool {
    m.transpose().mul(g).mul(m) == *g
}

/// `(n_i | n_j)` for the unit-normalized simple coroots: `-sqrt(a_ij a_ji) / 2`
/// off the diagonal, 1 on it.
pub fn normalized_pairing(a: &GeneralizedCartanMatrix, i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        -0.5 * ((a.a(i, j) * a.a(j, i)) as f64).sqrt()
    }
}

// ---------------------------------------------------------------------------
// Root basis axioms

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OffDiagonalCheck {
    pub i: usize,
    pub j: usize,
    pub value: f64,
    /// `m` with `value = -cos(pi/m)`, absent when `value <= -1`.
    pub m: Option<u32>,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PushforwardCheck {
    pub checked: bool,
    pub skipped_reason: Option<String>,
    /// Gram matrix of the images of the simple coroots in the quotient,
    /// compared exactly with the Gram matrix upstairs.
    pub exact_gram_match: Option<bool>,
    /// `(n_i | n_j) = sqrt(eps_j / eps_i) a_ij / 2` within tolerance.
    pub normalized_match: Option<bool>,
    /// Coefficients `c` (over the simple roots) of a functional in the
    /// quotient dual that is strictly positive on every simple coroot.
    pub positive_functional: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootBasisReport {
    pub normalized_gram: Vec<Vec<f64>>,
    pub unit_norms: bool,
    pub off_diagonal: Vec<OffDiagonalCheck>,
    pub positive_functional: bool,
    pub pushforward: PushforwardCheck,
}

fn coxeter_angle(value: f64) -> Option<u32> {
    (2..=10_000u32).find(|&m| (value + (std::f64::consts::PI / m as f64).cos()).abs() <= NORMALIZED_TOL)
}

/// Checks the root basis axioms for the normalized simple coroots on the
/// coroot space and, for non-affine matrices, for their images in the
/// quotient by the center.
pub fn verify_root_basis(a: &GeneralizedCartanMatrix, sym: &Symmetrization) -> Result<RootBasisReport> {
    let n = a.n();
    let form = invariant_form(a, sym)?;
    let eps: Vec<f64> = sym.epsilon.iter().map(|&e| e as f64).collect();
    // Gram matrix of h_i / sqrt(2 eps_i), computed from the exact form.
    let normalized_gram: Vec<Vec<f64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| rational_to_f64(form.gram_coroots.get(i, j)) / (2.0 * (eps[i] * eps[j]).sqrt()))
                .collect()
        })
        .collect();
    let unit_norms = (0..n).all(|i| (normalized_gram[i][i] - 1.0).abs() <= NORMALIZED_TOL);
    let mut off_diagonal = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let value = normalized_pairing(a, i, j);
            let m = coxeter_angle(value);
            let ok = (value - normalized_gram[i][j]).abs() <= NORMALIZED_TOL
                && (m.is_some() || value <= -1.0 + NORMALIZED_TOL);
            off_diagonal.push(OffDiagonalCheck { i: i + 1, j: j + 1, value, m: m.filter(|_| value > -1.0 + NORMALIZED_TOL), ok });
        }
    }
    // The simple coroots are a basis upstairs, so the sum of dual coordinates is positive on them.
    let positive_functional = true;

    let kind = classify(a)?.kind;
    let pushforward = if kind == TypeKind::Affine {
        PushforwardCheck {
            checked: false,
            skipped_reason: Some("affine: the images of the simple coroots in the quotient are not a root basis".into()),
            exact_gram_match: None,
            normalized_match: None,
            positive_functional: None,
        }
    } else {
        let red = reduced_space(a);
        let g_red = red.section.transpose().mul(&form.gram_coroots).mul(&red.section);
        let images: Vec<Vec<Rational>> = (0..n).map(|i| red.projection.col(i)).collect();
        let exact = (0..n).all(|i| {
            (0..n).all(|j| {
                let gv = g_red.mul_vec(&images[j]);
                crate::linalg::dot(&images[i], &gv) == *form.gram_coroots.get(i, j)
            })
        });
        let normalized = (0..n).all(|i| {
            (0..n).all(|j| {
                let expected = if i == j { 1.0 } else { 0.5 * (eps[j] / eps[i]).sqrt() * a.a(i, j) as f64 };
                (expected - normalized_gram[i][j]).abs() <= NORMALIZED_TOL
                    && (expected - normalized_pairing(a, i, j)).abs() <= NORMALIZED_TOL
            })
        });
        let functional = positive_functional_on_quotient(a, sym);
        PushforwardCheck {
            checked: true,
            skipped_reason: None,
            exact_gram_match: Some(exact),
            normalized_match: Some(normalized),
            positive_functional: functional.map(|c| c.iter().map(crate::linalg::fmt_rational).collect()),
        }
    };

    let report = RootBasisReport { normalized_gram, unit_norms, off_diagonal, positive_functional, pushforward };
    if !report.unit_norms {
        return Err(Error::AxiomViolation("normalized coroots are not unit vectors".into()));
    }
    if let Some(bad) = report.off_diagonal.iter().find(|c| !c.ok) {
        return Err(Error::AxiomViolation(format!(
            "pairing of {} and {} is {} which is neither -cos(pi/m) nor <= -1",
            bad.i, bad.j, bad.value
        )));
    }
    let p = &report.pushforward;
    if p.checked {
        if p.exact_gram_match != Some(true) || p.normalized_match != Some(true) {
            return Err(Error::AxiomViolation("quotient Gram matrix differs from the coroot Gram matrix".into()));
        }
        if p.positive_functional.is_none() {
            return Err(Error::AxiomViolation("no positive functional found on the quotient".into()));
        }
    }
    Ok(report)
}

/// A root-lattice functional `lambda = sum c_j alpha_j` (which vanishes on the
/// center) with `lambda(h_i) > 0` for all `i`, verified exactly.
///
/// Spherical: `c` solves `A c = 1`. Otherwise `c = -E v` where `v` is the
/// Perron eigenvector of the lowest eigenvalue of `G = A E`, found in floats
/// and rounded; for indefinite type `A (E v) = mu v < 0`.
fn positive_functional_on_quotient(a: &GeneralizedCartanMatrix, sym: &Symmetrization) -> Option<Vec<Rational>> {
    let n = a.n();
    let am = a.to_qmatrix();
    let check = |c: &[Rational]| am.mul_vec(c).iter().all(|v| v.is_positive());
    if let Some(inv) = am.inverse() {
        let c = inv.mul_vec(&vec![Rational::one(); n]);
        if check(&c) {
            return Some(c);
        }
    }
    let g: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| (a.a(i, j) * sym.epsilon[j]) as f64).collect()).collect();
    let shift = g.iter().map(|r| r.iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max) + 1.0;
    let mut v = vec![1.0f64; n];
    for _ in 0..5000 {
        let mut next: Vec<f64> = (0..n).map(|i| shift * v[i] - (0..n).map(|j| g[i][j] * v[j]).sum::<f64>()).collect();
        let norm = next.iter().map(|x| x * x).sum::<f64>().sqrt();
        next.iter_mut().for_each(|x| *x /= norm);
        v = next;
    }
    let scale = 1_000_000.0;
    let c: Vec<Rational> = (0..n)
        .map(|i| -q((v[i] * sym.epsilon[i] as f64 * scale).round() as i64) / q(scale as i64))
        .collect();
    if check(&c) {
        let g = c.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x.numer()));
        Some(c.iter().map(|x| x / Rational::from_integer(g.clone())).collect())
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Tits cone

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TitsConeQuery {
    /// Coroot coordinates.
    pub point: Vec<Rational>,
    pub max_steps: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ConeVerdict {
    /// `word_to_matrix(witness) * X` lies in the fundamental chamber.
    InCone {
        witness: WeylWord,
        /// Strictly inside the chamber after descent.
        interior: bool,
        /// In the interior of the Tits cone: the simple roots vanishing after
        /// descent generate a finite parabolic subgroup.
        open: bool,
        steps: usize,
    },
    /// Same certificate for `-X`.
    InNegativeCone { witness: WeylWord, interior: bool, open: bool, steps: usize },
    Undetermined { steps: usize },
}

impl ConeVerdict {
    pub fn is_in_cone(&self) -> bool {
        matches!(self, ConeVerdict::InCone { .. })
    }
}

struct Descent {
    applied: Vec<usize>,
    values: Vec<BigInt>,
}

/// Reflection descent on the simple root values only:
/// `alpha_j(r_i X) = alpha_j(X) - alpha_i(X) a_ij`.
fn descend(a: &GeneralizedCartanMatrix, x: &[Rational], cap: usize) -> std::result::Result<Descent, usize> {
    let n = a.n();
    let den = x.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let xi: Vec<BigInt> = x.iter().map(|c| (c * Rational::from_integer(den.clone())).to_integer()).collect();
    let mut values: Vec<BigInt> =
        (0..n).map(|i| (0..n).fold(BigInt::zero(), |acc, j| acc + &xi[j] * a.a(j, i))).collect();
    let mut applied = Vec::new();
    loop {
        let Some(i) = values.iter().position(|v| v.is_negative()) else {
            return Ok(Descent { applied, values });
        };
        if applied.len() >= cap {
            return Err(applied.len());
        }
        let vi = values[i].clone();
        for (j, v) in values.iter_mut().enumerate() {
            let aij = a.a(i, j);
            if aij != 0 {
                *v -= &vi * aij;
            }
        }
        applied.push(i);
    }
}

fn certificate(a: &GeneralizedCartanMatrix, d: Descent) -> (WeylWord, bool, bool, usize) {
    let zeros: Vec<usize> = (0..a.n()).filter(|&i| d.values[i].is_zero()).collect();
    let interior = zeros.is_empty();
    let open = a.principal(&zeros).is_spherical_type();
    let steps = d.applied.len();
    (WeylWord(d.applied.into_iter().rev().collect()), interior, open, steps)
}

/// Decides membership of `X` in the Tits cone by reflection descent, using
/// the lowest index with `alpha_i(X) < 0` at each step. Falls back to `-X`
/// when the cap is reached.
pub fn tits_cone_membership(a: &GeneralizedCartanMatrix, query: &TitsConeQuery) -> Result<ConeVerdict> {
    if query.point.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), got: query.point.len() });
    }
    match descend(a, &query.point, query.max_steps) {
        Ok(d) => {
            let (witness, interior, open, steps) = certificate(a, d);
            Ok(ConeVerdict::InCone { witness, interior, open, steps })
        }
        Err(steps) => {
            let neg: Vec<Rational> = query.point.iter().map(|c| -c).collect();
            match descend(a, &neg, query.max_steps) {
                Ok(d) => {
                    let (witness, interior, open, steps) = certificate(a, d);
                    Ok(ConeVerdict::InNegativeCone { witness, interior, open, steps })
                }
                Err(_) => Ok(ConeVerdict::Undetermined { steps }),
            }
        }
    }
}

/// Membership for a point of the quotient given in reduced coordinates.
pub fn tits_cone_membership_reduced(
    a: &GeneralizedCartanMatrix,
    red: &ReducedSpace,
    y: &[Rational],
    cap: usize,
) -> Result<ConeVerdict> {
    if y.len() != red.l {
        return Err(Error::DimensionMismatch { expected: red.l, got: y.len() });
    }
    tits_cone_membership(a, &TitsConeQuery { point: red.lift(y), max_steps: cap })
}

// ---------------------------------------------------------------------------
// Root hyperplanes

/// Enumerated positive real roots (height at most `height_bound`) vanishing at `X`.
pub fn singular_roots_at(a: &GeneralizedCartanMatrix, x: &[Rational], height_bound: i64) -> Result<Vec<RealRoot>> {
    if x.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), got: x.len() });
    }
    Ok(enumerate_real_roots(a, height_bound).into_iter().filter(|r| pairing_int(a, &r.coords, x).is_zero()).collect())
}

// ---------------------------------------------------------------------------
// Causal order on the quotient

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalRelation {
    Precedes,
    Succeeds,
    Equal,
    Incomparable,
    Undetermined,
}

#[derive(PartialEq, Eq)]
enum Side {
    Open,
    Outside,
    Unknown,
}

/// Whether `d` lies in the open Tits cone. Outside is certified either by a
/// boundary-only membership or by lying in the negative cone, which meets
/// the cone only in 0 for non-affine, non-spherical type.
fn open_cone_side(a: &GeneralizedCartanMatrix, red: &ReducedSpace, d: &[Rational], cap: usize) -> Result<Side> {
    Ok(match tits_cone_membership_reduced(a, red, d, cap)? {
        ConeVerdict::InCone { open: true, .. } => Side::Open,
        ConeVerdict::InCone { open: false, .. } | ConeVerdict::InNegativeCone { .. } => Side::Outside,
        ConeVerdict::Undetermined { .. } => Side::Unknown,
    })
}

/// Compares two points of the quotient (reduced coordinates): `X` precedes
/// `Y` when `Y - X` lies in the open Tits cone.
pub fn causal_flat_order(
    a: &GeneralizedCartanMatrix,
    x: &[Rational],
    y: &[Rational],
    cap: usize,
) -> Result<CausalRelation> {
    match classify(a)?.kind {
        TypeKind::Affine => {
            return Err(Error::AffineType(
                "the Tits cone of an affine matrix is a half-space in the quotient, so no causal order is defined".into(),
            ))
        }
        TypeKind::Spherical => {
            return Err(Error::SphericalType(
                "the Tits cone of a spherical matrix is the whole space, so no causal order is defined".into(),
            ))
        }
        TypeKind::Indefinite => {}
    }
    let red = reduced_space(a);
    for v in [x, y] {
        if v.len() != red.l {
            return Err(Error::DimensionMismatch { expected: red.l, got: v.len() });
        }
    }
    if x == y {
        return Ok(CausalRelation::Equal);
    }
    let d: Vec<Rational> = y.iter().zip(x).map(|(b, a)| b - a).collect();
    let neg: Vec<Rational> = d.iter().map(|c| -c).collect();
    let forward = open_cone_side(a, &red, &d, cap)?;
    if forward == Side::Open {
        return Ok(CausalRelation::Precedes);
    }
    let backward = open_cone_side(a, &red, &neg, cap)?;
    if backward == Side::Open {
        return Ok(CausalRelation::Succeeds);
    }
    if forward == Side::Outside && backward == Side::Outside {
        Ok(CausalRelation::Incomparable)
    } else {
        Ok(CausalRelation::Undetermined)
    }
}

// ---------------------------------------------------------------------------
// Linear realization of W x| Aut(diagram) x Z/2 on the quotient

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealizationSource {
    pub word: WeylWord,
    /// 1-based images `sigma(1), ..., sigma(n)`.
    pub automorphism: Vec<usize>,
    pub sign: i8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChamberImage {
    Chamber,
    NegativeChamber,
    Other,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinearRealization {
    pub source: RealizationSource,
    /// Matrix on the quotient in reduced coordinates.
    pub matrix: QMatrix,
    pub preserves_form: bool,
    /// Every enumerated hyperplane `ker alpha` is sent onto `ker beta` for the
    /// real root `beta = sign * w sigma(alpha)`, checked exactly.
    pub maps_hyperplanes: bool,
    /// The set of enumerated hyperplanes is mapped onto itself.
    pub permutes_enumerated: bool,
    pub chamber_image: ChamberImage,
    pub height_bound: i64,
}

/// Realizes `(w, sigma, sign)` as the map `sign * rho(w) * P_sigma` induced
/// on the quotient, where `P_sigma` sends `h_i` to `h_sigma(i)`. `sigma` is
/// 0-based and must be a Dynkin diagram automorphism.
pub fn canonical_linear_realization(
    a: &GeneralizedCartanMatrix,
    sym: &Symmetrization,
    word: &WeylWord,
    sigma: &[usize],
    sign: i8,
    height_bound: i64,
) -> Result<LinearRealization> {
    let n = a.n();
    if n < 2 || !a.is_irreducible() || classify(a)?.kind == TypeKind::Affine {
        return Err(Error::AffineOrRankOne);
    }
    if sign != 1 && sign != -1 {
        return Err(Error::Parse(format!("sign must be +1 or -1, got {sign}")));
    }
    if sigma.len() != n || !diagram_automorphisms(a).iter().any(|p| p == sigma) {
        return Err(Error::NotADiagramAutomorphism);
    }
    let s = q(sign as i64);
    let p_sigma = QMatrix::from_fn(n, n, |i, j| if sigma[j] == i { Rational::one() } else { Rational::zero() });
    let upstairs = word_to_matrix(a, word)?.to_qmatrix().mul(&p_sigma).scale(&s);
    let red = reduced_space(a);
    let matrix = red.restrict(&upstairs);

    let form = invariant_form(a, sym)?;
    let g_red = red.section.transpose().mul(&form.gram_coroots).mul(&red.section);
    let preserves_form = preserves_form(&matrix, &g_red);

    // Dual action on roots: alpha_i -> alpha_sigma(i), then w, then the sign.
    let dual_w = dual_word_to_matrix(a, word)?;
    let image_root = |alpha: &[i64]| -> Result<Vec<i64>> {
        let mut permuted = vec![0i64; n];
        for (i, &c) in alpha.iter().enumerate() {
            permuted[sigma[i]] = c;
        }
        Ok(dual_w.apply_int(&permuted)?.into_iter().map(|c| c * sign as i64).collect())
    };

    let roots = enumerate_real_roots(a, height_bound);
    let basis: Vec<Vec<Rational>> =
        (0..red.l).map(|k| (0..red.l).map(|m| if m == k { Rational::one() } else { Rational::zero() }).collect()).collect();
    let moved: Vec<Vec<Rational>> = basis.iter().map(|y| red.lift(&matrix.mul_vec(y))).collect();
    let lifted: Vec<Vec<Rational>> = basis.iter().map(|y| red.lift(y)).collect();
    let mut maps_hyperplanes = true;
    let mut images = BTreeSet::new();
    for r in &roots {
        let beta = image_root(&r.coords)?;
        if !is_real_root(a, &beta) {
            maps_hyperplanes = false;
        }
        let equivariant =
            (0..red.l).all(|k| pairing_int(a, &beta, &moved[k]) == pairing_int(a, &r.coords, &lifted[k]));
        maps_hyperplanes &= equivariant;
        let positive = if beta.iter().all(|&c| c <= 0) { beta.iter().map(|c| -c).collect() } else { beta };
        images.insert(positive);
    }
    let originals: BTreeSet<Vec<i64>> = roots.iter().map(|r| r.coords.clone()).collect();
    let permutes_enumerated = images == originals;

    let simple_images: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            image_root(&e)
        })
        .collect::<Result<_>>()?;
    let is_unit = |v: &Vec<i64>, s: i64| v.iter().filter(|&&c| c != 0).count() == 1 && v.contains(&s);
    let chamber_image = if simple_images.iter().all(|v| is_unit(v, 1)) {
        ChamberImage::Chamber
    } else if simple_images.iter().all(|v| is_unit(v, -1)) {
        ChamberImage::NegativeChamber
    } else {
        ChamberImage::Other
    };

    Ok(LinearRealization {
        source: RealizationSource { word: word.clone(), automorphism: sigma.iter().map(|s| s + 1).collect(), sign },
        matrix,
        preserves_form,
        maps_hyperplanes,
        permutes_enumerated,
        chamber_image,
        height_bound,
    })
}

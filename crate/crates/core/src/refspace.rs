//! Reflection spaces `(X, mu)` with `s_x(y) = mu(x, y)`, checked against the
//! axioms
//!
//! * RS1 `x.x = x`
//! * RS2 `x.(x.y) = y`
//! * RS3 `x.(y.z) = (x.y).(x.z)`
//! * RS4 `x.y = y` implies `y = x`
//!
//! plus transvection groups, weak flats and the quadratic representation.
//! Checks sample points from a seeded generator; finite models are checked
//! exhaustively and then count as proved.

use std::fmt::Debug;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::liegroup::{Mat2, MAT2_TOL};
use crate::linalg::{fmt_rational, q, qf, Rational};

pub trait ReflectionSpace {
    type Point: Clone + Debug;

    fn name(&self) -> String;
    fn mul(&self, x: &Self::Point, y: &Self::Point) -> Self::Point;
    fn eq(&self, x: &Self::Point, y: &Self::Point) -> bool;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point;
    fn to_json(&self, p: &Self::Point) -> Value;
    /// Special points always included in scans (e.g. the identity).
    fn probes(&self) -> Vec<Self::Point> {
        Vec::new()
    }
    /// All points, for finite models.
    fn elements(&self) -> Option<Vec<Self::Point>> {
        None
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    /// Checked on every point of a finite model.
    Proved,
    /// No counterexample among the samples.
    Passed,
    Failed,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub checked: usize,
    pub witness: Option<Value>,
}

impl Check {
    pub fn ok(&self) -> bool {
        self.status != Status::Failed
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub model: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(Check::ok)
    }
}

/// Runs `test` on every tuple drawn from the model: all tuples of points for
/// finite models, otherwise probe tuples followed by `samples` random ones.
fn scan<M: ReflectionSpace>(
    model: &M,
    name: &str,
    arity: usize,
    samples: usize,
    rng: &mut ChaCha8Rng,
    mut test: impl FnMut(&[M::Point]) -> bool,
) -> Check {
    let witness = |pts: &[M::Point]| Value::Array(pts.iter().map(|p| model.to_json(p)).collect());
    let fail = |pts: &[M::Point], checked| Check { name: name.into(), status: Status::Failed, checked, witness: Some(witness(pts)) };
    if let Some(all) = model.elements() {
        let mut checked = 0;
        for tuple in tuples(&all, arity) {
            checked += 1;
            if !test(&tuple) {
                return fail(&tuple, checked);
            }
        }
        return Check { name: name.into(), status: Status::Proved, checked, witness: None };
    }
    let mut checked = 0;
    for tuple in tuples(&model.probes(), arity) {
        checked += 1;
        if !test(&tuple) {
            return fail(&tuple, checked);
        }
    }
    for _ in 0..samples {
        let tuple: Vec<M::Point> = (0..arity).map(|_| model.sample(rng)).collect();
        checked += 1;
        if !test(&tuple) {
            return fail(&tuple, checked);
        }
    }
    Check { name: name.into(), status: Status::Passed, checked, witness: None }
}

fn tuples<P: Clone>(points: &[P], arity: usize) -> Vec<Vec<P>> {
    let mut out: Vec<Vec<P>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out.into_iter().flat_map(|t| points.iter().map(move |p| {
            let mut v = t.clone();
            v.push(p.clone());
            v
        })).collect();
    }
    if points.is_empty() {
        out.clear();
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Axiom {
    RS1,
    RS2,
    RS3,
    RS4,
}

impl Axiom {
    pub const ALL: [Axiom; 4] = [Axiom::RS1, Axiom::RS2, Axiom::RS3, Axiom::RS4];
}

pub fn check_axioms<M: ReflectionSpace>(model: &M, samples: usize, seed: u64, which: &[Axiom]) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let checks = which
        .iter()
        .map(|ax| match ax {
            Axiom::RS1 => scan(model, "RS1", 1, samples, &mut rng, |p| model.eq(&model.mul(&p[0], &p[0]), &p[0])),
            Axiom::RS2 => scan(model, "RS2", 2, samples, &mut rng, |p| {
                model.eq(&model.mul(&p[0], &model.mul(&p[0], &p[1])), &p[1])
            }),
            Axiom::RS3 => scan(model, "RS3", 3, samples, &mut rng, |p| {
                let lhs = model.mul(&p[0], &model.mul(&p[1], &p[2]));
                let rhs = model.mul(&model.mul(&p[0], &p[1]), &model.mul(&p[0], &p[2]));
                model.eq(&lhs, &rhs)
            }),
            Axiom::RS4 => scan(model, "RS4", 2, samples, &mut rng, |p| {
                model.eq(&p[0], &p[1]) || !model.eq(&model.mul(&p[0], &p[1]), &p[1])
            }),
        })
        .collect();
    Report { model: model.name(), seed, samples, checks }
}

/// `s_x s_y s_x = s_{s_x(y)}`, compared pointwise.
pub fn conjugation_identity<M: ReflectionSpace>(model: &M, samples: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let check = scan(model, "conjugation", 3, samples, &mut rng, |p| {
        let lhs = model.mul(&p[0], &model.mul(&p[1], &model.mul(&p[0], &p[2])));
        let rhs = model.mul(&model.mul(&p[0], &p[1]), &p[2]);
        model.eq(&lhs, &rhs)
    });
    Report { model: model.name(), seed, samples, checks: vec![check] }
}

// ---------------------------------------------------------------------------
// Transvections along a geodesic

/// Real parameter of a geodesic: exact rationals or floats.
pub trait Parameter: Clone + Debug {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn half(&self) -> Self;
    fn origin() -> Self;
    fn sample(rng: &mut ChaCha8Rng) -> Self;
    fn to_json(&self) -> Value;
}

impl Parameter for f64 {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn half(&self) -> Self {
        self / 2.0
    }
    fn origin() -> Self {
        0.0
    }
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        rng.gen_range(-1.0..1.0)
    }
    fn to_json(&self) -> Value {
        json!(self)
    }
}

impl Parameter for Rational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn half(&self) -> Self {
        self / q(2)
    }
    fn origin() -> Self {
        Rational::zero()
    }
    fn sample(rng: &mut ChaCha8Rng) -> Self {
        qf(rng.gen_range(-40..=40), rng.gen_range(1..=8))
    }
    fn to_json(&self) -> Value {
        json!(fmt_rational(self))
    }
}

/// `t[x, y] = s_{phi(y)} s_{phi((x+y)/2)}` applied to `z`.
pub fn transvection<M: ReflectionSpace, T: Parameter>(
    model: &M,
    phi: &dyn Fn(&T) -> M::Point,
    x: &T,
    y: &T,
    z: &M::Point,
) -> M::Point {
    let mid = x.add(y).half();
    model.mul(&phi(y), &model.mul(&phi(&mid), z))
}

/// Checks the one-parameter group structure of the transvections along
/// `phi`, after verifying `phi(2x - y) = s_{phi(x)}(phi(y))` on samples.
pub fn translation_group_checks<M: ReflectionSpace, T: Parameter>(
    model: &M,
    phi: &dyn Fn(&T) -> M::Point,
    samples: usize,
    seed: u64,
) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = |rng: &mut ChaCha8Rng, k: usize| (0..k).map(|_| T::sample(rng)).collect::<Vec<T>>();
    for _ in 0..samples.max(1) {
        let p = params(&mut rng, 2);
        let lhs = phi(&p[0].add(&p[0]).sub(&p[1]));
        let rhs = model.mul(&phi(&p[0]), &phi(&p[1]));
        if !model.eq(&lhs, &rhs) {
            return Err(Error::NotAGeodesic(format!("fails at parameters {:?}, {:?}", p[0], p[1])));
        }
    }
    let zero = T::origin();
    let t = |x: &T, y: &T, z: &M::Point| transvection(model, phi, x, y, z);
    let mut run = |name: &str, test: &dyn Fn(&[T], &M::Point) -> bool| {
        for checked in 1..=samples {
            let p = params(&mut rng, 3);
            let z = model.sample(&mut rng);
            if !test(&p, &z) {
                let mut w: Vec<Value> = p.iter().map(T::to_json).collect();
                w.push(model.to_json(&z));
                return Check { name: name.into(), status: Status::Failed, checked, witness: Some(Value::Array(w)) };
            }
        }
        Check { name: name.into(), status: Status::Passed, checked: samples, witness: None }
    };
    let checks = vec![
        run("homomorphism", &|p, z| model.eq(&t(&zero, &p[0], &t(&zero, &p[1], z)), &t(&zero, &p[0].add(&p[1]), z))),
        run("base_independence", &|p, z| model.eq(&t(&p[0], &p[0].add(&p[1]), z), &t(&zero, &p[1], z))),
        run("doubling", &|p, z| {
            let y = p[0].add(&p[1]);
            let h = p[0].add(&p[1].half());
            model.eq(&t(&p[0], &y, z), &t(&p[0], &h, &t(&p[0], &h, z)))
        }),
        run("commutativity", &|p, z| {
            model.eq(&t(&zero, &p[0], &t(&zero, &p[1], z)), &t(&zero, &p[1], &t(&zero, &p[0], z)))
        }),
        run("identity", &|p, z| model.eq(&t(&p[0], &p[0], z), z)),
    ];
    Ok(Report { model: model.name(), seed, samples, checks })
}

// ---------------------------------------------------------------------------
// Weak flats

/// A candidate flat inside a model.
pub trait Subset<P> {
    fn contains(&self, p: &P) -> bool;
    /// A point `m` of the subset with `m . x = y`, if one exists.
    fn midpoint(&self, x: &P, y: &P) -> Option<P>;
    fn sample(&self, rng: &mut ChaCha8Rng) -> P;
    fn probes(&self) -> Vec<P> {
        Vec::new()
    }
}

/// F1 closure under reflections, F2 existence of midpoints, F3 the weakly
/// abelian identity `x.(z.(y.z)) = y.(z.(x.z))`.
pub fn weak_flat_checks<M: ReflectionSpace>(model: &M, subset: &dyn Subset<M::Point>, samples: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let probes = subset.probes();
    let mut run = |name: &str, arity: usize, test: &dyn Fn(&[M::Point]) -> bool| {
        let mut checked = 0;
        let fixed = tuples(&probes, arity);
        let random = (0..samples).map(|_| (0..arity).map(|_| subset.sample(&mut rng)).collect::<Vec<_>>()).collect::<Vec<_>>();
        for tuple in fixed.into_iter().chain(random) {
            checked += 1;
            if !test(&tuple) {
                let w = Value::Array(tuple.iter().map(|p| model.to_json(p)).collect());
                return Check { name: name.into(), status: Status::Failed, checked, witness: Some(w) };
            }
        }
        Check { name: name.into(), status: Status::Passed, checked, witness: None }
    };
    let checks = vec![
        run("F1", 2, &|p| subset.contains(&model.mul(&p[0], &p[1]))),
        run("F2", 2, &|p| match subset.midpoint(&p[0], &p[1]) {
            Some(m) => subset.contains(&m) && model.eq(&model.mul(&m, &p[0]), &p[1]),
            None => false,
        }),
        run("F3", 3, &|p| {
            let lhs = model.mul(&p[0], &model.mul(&p[2], &model.mul(&p[1], &p[2])));
            let rhs = model.mul(&p[1], &model.mul(&p[2], &model.mul(&p[0], &p[2])));
            model.eq(&lhs, &rhs)
        }),
    ];
    Report { model: model.name(), seed, samples, checks }
}

// ---------------------------------------------------------------------------
// Quadratic representation t_x = s_x s_o

pub fn quadratic_representation_checks<M: ReflectionSpace>(model: &M, o: &M::Point, samples: usize, seed: u64) -> Report {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let t = |x: &M::Point, z: &M::Point| model.mul(x, &model.mul(o, z));
    let t_inv = |x: &M::Point, z: &M::Point| model.mul(o, &model.mul(x, z));
    let checks = vec![
        scan(model, "t_x s_o = s_x", 2, samples, &mut rng, |p| model.eq(&t(&p[0], &model.mul(o, &p[1])), &model.mul(&p[0], &p[1]))),
        // Distinct x, y must give maps differing at o or at x.y.
        scan(model, "injective", 2, samples, &mut rng, |p| {
            let z = model.mul(&p[0], &p[1]);
            model.eq(&p[0], &p[1]) || !model.eq(&t(&p[0], o), &t(&p[1], o)) || !model.eq(&t(&p[0], &z), &t(&p[1], &z))
        }),
        scan(model, "t_x t_y^-1 t_x = t_{s_x(y)}", 3, samples, &mut rng, |p| {
            let lhs = t(&p[0], &t_inv(&p[1], &t(&p[0], &p[2])));
            let rhs = t(&model.mul(&p[0], &p[1]), &p[2]);
            model.eq(&lhs, &rhs)
        }),
        scan(model, "t_o = id", 1, samples, &mut rng, |p| model.eq(&t(o, &p[0]), &p[0])),
    ];
    Report { model: model.name(), seed, samples, checks }
}

// ---------------------------------------------------------------------------
// Models

/// `R^n` with `x.y = 2x - y`, exact over the rationals.
#[derive(Clone, Debug)]
pub struct EuclideanModel {
    pub dim: usize,
}

pub fn euclidean_model(dim: usize) -> EuclideanModel {
    EuclideanModel { dim }
}

impl ReflectionSpace for EuclideanModel {
    type Point = Vec<Rational>;

    fn name(&self) -> String {
        format!("euclidean(R^{})", self.dim)
    }
    fn mul(&self, x: &Self::Point, y: &Self::Point) -> Self::Point {
        x.iter().zip(y).map(|(a, b)| a + a - b).collect()
    }
    fn eq(&self, x: &Self::Point, y: &Self::Point) -> bool {
        x == y
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point {
        (0..self.dim).map(|_| Rational::sample(rng)).collect()
    }
    fn to_json(&self, p: &Self::Point) -> Value {
        Value::Array(p.iter().map(|c| json!(fmt_rational(c))).collect())
    }
}

/// Group operations used by the group and involution models.
pub trait Group {
    type Elem: Clone + Debug;
    fn name(&self) -> String;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn identity(&self) -> Self::Elem;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Elem;
    fn to_json(&self, a: &Self::Elem) -> Value;
    fn probes(&self) -> Vec<Self::Elem> {
        vec![self.identity()]
    }
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }
}

/// A group with `x.y = x y^-1 x`.
#[derive(Clone, Debug)]
pub struct GroupModel<G: Group> {
    pub group: G,
}

pub fn group_model<G: Group>(group: G) -> GroupModel<G> {
    GroupModel { group }
}

impl<G: Group> ReflectionSpace for GroupModel<G> {
    type Point = G::Elem;

    fn name(&self) -> String {
        format!("group({})", self.group.name())
    }
    fn mul(&self, x: &Self::Point, y: &Self::Point) -> Self::Point {
        let g = &self.group;
        g.mul(&g.mul(x, &g.inv(y)), x)
    }
    fn eq(&self, x: &Self::Point, y: &Self::Point) -> bool {
        self.group.eq(x, y)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point {
        self.group.sample(rng)
    }
    fn to_json(&self, p: &Self::Point) -> Value {
        self.group.to_json(p)
    }
    fn probes(&self) -> Vec<Self::Point> {
        self.group.probes()
    }
    fn elements(&self) -> Option<Vec<Self::Point>> {
        self.group.elements()
    }
}

/// A conjugation-closed set of involutions with `s.r = s r s`.
#[derive(Clone, Debug)]
pub struct InvolutionModel<G: Group> {
    pub group: G,
    pub set: Vec<G::Elem>,
}

/// Checks that `set` consists of involutions and is closed under mutual
/// conjugation: exhaustively for finite groups, on `samples` pairs otherwise.
pub fn involution_model<G: Group>(group: G, set: Vec<G::Elem>) -> Result<InvolutionModel<G>> {
    let one = group.identity();
    for s in &set {
        if group.eq(s, &one) || !group.eq(&group.mul(s, s), &one) {
            return Err(Error::NotClosed(format!("{s:?} is not an involution")));
        }
    }
    for s in &set {
        for r in &set {
            let c = group.mul(&group.mul(s, r), s);
            if !set.iter().any(|x| group.eq(x, &c)) {
                return Err(Error::NotClosed(format!("{s:?} {r:?} {s:?} = {c:?} is missing")));
            }
        }
    }
    Ok(InvolutionModel { group, set })
}

impl<G: Group> ReflectionSpace for InvolutionModel<G> {
    type Point = G::Elem;

    fn name(&self) -> String {
        format!("involutions({})", self.group.name())
    }
    fn mul(&self, x: &Self::Point, y: &Self::Point) -> Self::Point {
        self.group.mul(&self.group.mul(x, y), x)
    }
    fn eq(&self, x: &Self::Point, y: &Self::Point) -> bool {
        self.group.eq(x, y)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Self::Point {
        self.set[rng.gen_range(0..self.set.len())].clone()
    }
    fn to_json(&self, p: &Self::Point) -> Value {
        self.group.to_json(p)
    }
    fn elements(&self) -> Option<Vec<Self::Point>> {
        Some(self.set.clone())
    }
}

/// `SL_2(R)` in floating point with relative tolerance.
#[derive(Clone, Debug)]
pub struct Sl2Group {
    pub tol: f64,
}

impl Default for Sl2Group {
    fn default() -> Self {
        Sl2Group { tol: MAT2_TOL }
    }
}

fn mat2_json(m: &Mat2) -> Value {
    json!(m.0)
}

impl Group for Sl2Group {
    type Elem = Mat2;

    fn name(&self) -> String {
        "SL2(R)".into()
    }
    fn mul(&self, a: &Mat2, b: &Mat2) -> Mat2 {
        a.mul(b)
    }
    fn inv(&self, a: &Mat2) -> Mat2 {
        // Exact for det 1 up to rounding; no singular elements are sampled.
        let m = &a.0;
        Mat2([[m[1][1], -m[0][1]], [-m[1][0], m[0][0]]])
    }
    fn identity(&self) -> Mat2 {
        Mat2::IDENTITY
    }
    fn eq(&self, a: &Mat2, b: &Mat2) -> bool {
        a.approx_eq(b, self.tol)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Mat2 {
        Mat2::random_sl2(rng)
    }
    fn to_json(&self, a: &Mat2) -> Value {
        mat2_json(a)
    }
    fn probes(&self) -> Vec<Mat2> {
        vec![Mat2::IDENTITY, Mat2::IDENTITY.neg()]
    }
}

/// Permutations of `{0, .., n-1}`; `(p q)(i) = p(q(i))`.
#[derive(Clone, Debug)]
pub struct SymmetricGroup {
    pub n: usize,
}

impl SymmetricGroup {
    pub fn transposition(&self, i: usize, j: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..self.n).collect();
        p.swap(i, j);
        p
    }

    pub fn transpositions(&self) -> Vec<Vec<usize>> {
        (0..self.n).flat_map(|i| ((i + 1)..self.n).map(move |j| (i, j))).map(|(i, j)| self.transposition(i, j)).collect()
    }
}

impl Group for SymmetricGroup {
    type Elem = Vec<usize>;

    fn name(&self) -> String {
        format!("S{}", self.n)
    }
    fn mul(&self, a: &Vec<usize>, b: &Vec<usize>) -> Vec<usize> {
        b.iter().map(|&i| a[i]).collect()
    }
    fn inv(&self, a: &Vec<usize>) -> Vec<usize> {
        let mut r = vec![0; self.n];
        for (i, &ai) in a.iter().enumerate() {
            r[ai] = i;
        }
        r
    }
    fn identity(&self) -> Vec<usize> {
        (0..self.n).collect()
    }
    fn eq(&self, a: &Vec<usize>, b: &Vec<usize>) -> bool {
        a == b
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<usize> {
        use rand::seq::SliceRandom;
        let mut p = self.identity();
        p.shuffle(rng);
        p
    }
    fn to_json(&self, a: &Vec<usize>) -> Value {
        json!(a.iter().map(|i| i + 1).collect::<Vec<_>>())
    }
    fn elements(&self) -> Option<Vec<Vec<usize>>> {
        fn perms(n: usize) -> Vec<Vec<usize>> {
            if n == 0 {
                return vec![Vec::new()];
            }
            perms(n - 1)
                .into_iter()
                .flat_map(|p| (0..n).map(move |k| {
                    let mut v = p.clone();
                    v.insert(k, n - 1);
                    v
                }))
                .collect()
        }
        Some(perms(self.n))
    }
}

/// Positive definite symmetric 2x2 matrices of determinant 1 with
/// `x.y = x y^-1 x`: the hyperbolic plane as the image of the twist map.
#[derive(Clone, Debug)]
pub struct HyperbolicModel {
    pub tol: f64,
}

impl Default for HyperbolicModel {
    fn default() -> Self {
        HyperbolicModel { tol: MAT2_TOL }
    }
}

impl HyperbolicModel {
    /// Geodesic `t -> diag(e^t, e^-t)` through the identity.
    pub fn diagonal_geodesic(t: &f64) -> Mat2 {
        Mat2::diag(t.exp(), (-t).exp())
    }
}

impl ReflectionSpace for HyperbolicModel {
    type Point = Mat2;

    fn name(&self) -> String {
        "hyperbolic(SPD2)".into()
    }
    fn mul(&self, x: &Mat2, y: &Mat2) -> Mat2 {
        Sl2Group::default().mul(&x.mul(&Sl2Group::default().inv(y)), x)
    }
    fn eq(&self, x: &Mat2, y: &Mat2) -> bool {
        x.approx_eq(y, self.tol)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Mat2 {
        let g = Mat2::random_sl2(rng);
        g.mul(&g.transpose())
    }
    fn to_json(&self, p: &Mat2) -> Value {
        mat2_json(p)
    }
    fn probes(&self) -> Vec<Mat2> {
        vec![Mat2::IDENTITY]
    }
}

// ---------------------------------------------------------------------------
// Subsets used as flat candidates

/// The affine line `base + s * dir` in a Euclidean model.
#[derive(Clone, Debug)]
pub struct AffineLine {
    pub base: Vec<Rational>,
    pub dir: Vec<Rational>,
}

impl AffineLine {
    fn param(&self, p: &[Rational]) -> Option<Rational> {
        let k = self.dir.iter().position(|d| !d.is_zero())?;
        let s = (&p[k] - &self.base[k]) / &self.dir[k];
        let on = p.iter().zip(&self.base).zip(&self.dir).all(|((x, b), d)| *x == b + &s * d);
        on.then_some(s)
    }

    fn at(&self, s: &Rational) -> Vec<Rational> {
        self.base.iter().zip(&self.dir).map(|(b, d)| b + s * d).collect()
    }
}

impl Subset<Vec<Rational>> for AffineLine {
    fn contains(&self, p: &Vec<Rational>) -> bool {
        self.param(p).is_some()
    }
    fn midpoint(&self, x: &Vec<Rational>, y: &Vec<Rational>) -> Option<Vec<Rational>> {
        let (a, b) = (self.param(x)?, self.param(y)?);
        Some(self.at(&((a + b) / q(2))))
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        self.at(&Rational::sample(rng))
    }
}

/// The integers inside the Euclidean line.
#[derive(Clone, Debug)]
pub struct IntegerLattice;

impl Subset<Vec<Rational>> for IntegerLattice {
    fn contains(&self, p: &Vec<Rational>) -> bool {
        p.iter().all(|c| c.is_integer())
    }
    fn midpoint(&self, x: &Vec<Rational>, y: &Vec<Rational>) -> Option<Vec<Rational>> {
        let m: Vec<Rational> = x.iter().zip(y).map(|(a, b)| (a + b) / q(2)).collect();
        self.contains(&m).then_some(m)
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<Rational> {
        vec![q(rng.gen_range(-50..=50))]
    }
    fn probes(&self) -> Vec<Vec<Rational>> {
        vec![vec![q(0)], vec![q(1)]]
    }
}

/// Positive diagonal matrices `diag(s, 1/s)` in `SL_2(R)`.
#[derive(Clone, Debug)]
pub struct PositiveDiagonal {
    pub tol: f64,
}

impl Default for PositiveDiagonal {
    fn default() -> Self {
        PositiveDiagonal { tol: MAT2_TOL }
    }
}

impl Subset<Mat2> for PositiveDiagonal {
    fn contains(&self, p: &Mat2) -> bool {
        let m = &p.0;
        let scale = p.norm().max(1.0);
        m[0][1].abs() <= self.tol * scale
            && m[1][0].abs() <= self.tol * scale
            && m[0][0] > 0.0
            && (m[0][0] * m[1][1] - 1.0).abs() <= self.tol * scale
    }
    /// `m x^-1 m = y` with everything diagonal and positive: `m = sqrt(x y)`.
    fn midpoint(&self, x: &Mat2, y: &Mat2) -> Option<Mat2> {
        let a = (x.0[0][0] * y.0[0][0]).sqrt();
        let d = (x.0[1][1] * y.0[1][1]).sqrt();
        (a.is_finite() && d.is_finite()).then(|| Mat2::diag(a, d))
    }
    fn sample(&self, rng: &mut ChaCha8Rng) -> Mat2 {
        let s: f64 = rng.gen_range(-2.0..2.0);
        Mat2::diag(s.exp(), (-s).exp())
    }
    fn probes(&self) -> Vec<Mat2> {
        vec![Mat2::IDENTITY]
    }
}

/// The zero vector, for the quadratic representation on a Euclidean model.
pub fn euclidean_origin(dim: usize) -> Vec<Rational> {
    vec![Rational::zero(); dim]
}

/// Unit vector `(1, 0, ..., 0)`.
pub fn euclidean_unit(dim: usize) -> Vec<Rational> {
    let mut v = euclidean_origin(dim);
    if dim > 0 {
        v[0] = Rational::one();
    }
    v
}

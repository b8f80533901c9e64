//! Generalized Cartan matrices and the combinatorial data derived from them:
//! Dynkin and Coxeter diagrams, symmetrizations, type classification,
//! diagram automorphisms.
//!
//! Entries follow the convention `a_ij = alpha_j(coroot_i)`. Internally all
//! indices are 0-based; JSON and DOT output use 1-based vertex labels.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{q, QMatrix, Rational};

/// Integer square matrix with `a_ii = 2`, `a_ij <= 0` off the diagonal and
/// `a_ij = 0` exactly when `a_ji = 0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GeneralizedCartanMatrix {
    n: usize,
    entries: Vec<i64>,
}

impl fmt::Debug for GeneralizedCartanMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GCM{:?}", self.to_rows())
    }
}

#[derive(Serialize, Deserialize)]
struct GcmJson {
    #[serde(rename = "A")]
    a: Vec<Vec<i64>>,
}

impl Serialize for GeneralizedCartanMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GcmJson { a: self.to_rows() }.serialize(s)
    }
}

/// Checks the GCM axioms and returns the validated matrix.
pub fn validate_gcm(raw: &[Vec<i64>]) -> Result<GeneralizedCartanMatrix> {
    let n = raw.len();
    if n == 0 {
        return Err(Error::Empty);
    }
    if raw.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    for (i, row) in raw.iter().enumerate() {
        if row[i] != 2 {
            return Err(Error::DiagonalNotTwo(i + 1));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            if raw[i][j] > 0 {
                return Err(Error::PositiveOffDiagonal(i + 1, j + 1));
            }
            if (raw[i][j] == 0) != (raw[j][i] == 0) {
                return Err(Error::AsymmetricZero(i + 1, j + 1));
            }
        }
    }
    Ok(GeneralizedCartanMatrix { n, entries: raw.iter().flatten().copied().collect() })
}

impl GeneralizedCartanMatrix {
    pub fn new(rows: Vec<Vec<i64>>) -> Result<Self> {
        validate_gcm(&rows)
    }

    /// Parses either `{"A": [[...]]}` or a bare nested array.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let rows = match &v {
            serde_json::Value::Object(m) => m.get("A").cloned().ok_or_else(|| Error::Parse("missing key \"A\"".into()))?,
            _ => v,
        };
        let rows: Vec<Vec<i64>> = serde_json::from_value(rows).map_err(|e| Error::Parse(e.to_string()))?;
        validate_gcm(&rows)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a_ij`, 0-based.
    pub fn a(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(self.n).map(<[i64]>::to_vec).collect()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_fn(self.n, self.n, |i, j| q(self.a(i, j)))
    }

    /// Label `a_ij * a_ji` of the pair `{i, j}`.
    pub fn bond(&self, i: usize, j: usize) -> i64 {
        self.a(i, j) * self.a(j, i)
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&j| j != v && self.a(v, j) != 0).collect()
    }

    /// Principal submatrix on `idx` (in the given order).
    pub fn principal(&self, idx: &[usize]) -> GeneralizedCartanMatrix {
        let n = idx.len();
        let entries = idx.iter().flat_map(|&i| idx.iter().map(move |&j| (i, j))).map(|(i, j)| self.a(i, j)).collect();
        GeneralizedCartanMatrix { n, entries }
    }

    /// Simultaneous row/column permutation: the result has entry
    /// `a_{perm[i], perm[j]}` at position `(i, j)`.
    pub fn permuted(&self, perm: &[usize]) -> GeneralizedCartanMatrix {
        self.principal(perm)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        self.to_qmatrix().rank()
    }

    /// Connected components of the Dynkin diagram, each sorted, in order of
    /// their smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_irreducible(&self) -> bool {
        self.components().len() == 1
    }

    /// No Dynkin label `a_ij a_ji` exceeds 3.
    pub fn is_two_spherical(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.bond(i, j) <= 3))
    }

    /// Every connected component is symmetrizable with positive definite
    /// symmetrized form. The empty matrix counts as spherical.
    pub fn is_spherical_type(&self) -> bool {
        self.components().iter().all(|c| {
            let sub = self.principal(c);
            matches!(classify(&sub), Ok(Classification { kind: TypeKind::Spherical, .. }))
        })
    }

    /// The star of `v`: `v` together with its Dynkin neighbors, sorted.
    pub fn star(&self, v: usize) -> Vec<usize> {
        let mut s = self.neighbors(v);
        s.push(v);
        s.sort_unstable();
        s
    }

    /// Every vertex star (full induced subdiagram on `v` and its neighbors)
    /// is of spherical type.
    pub fn is_star_spherical(&self) -> bool {
        (0..self.n).all(|v| self.principal(&self.star(v)).is_spherical_type())
    }
}

pub fn is_irreducible(a: &GeneralizedCartanMatrix) -> bool {
    a.is_irreducible()
}

pub fn is_two_spherical(a: &GeneralizedCartanMatrix) -> bool {
    a.is_two_spherical()
}

pub fn is_star_spherical(a: &GeneralizedCartanMatrix) -> bool {
    a.is_star_spherical()
}

// ---------------------------------------------------------------------------
// Coxeter matrix

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoxeterLabel {
    Finite(u32),
    Infinite,
}

impl CoxeterLabel {
    /// Coxeter label of a pair with Dynkin label `a_ij a_ji`.
    pub fn from_bond(bond: i64) -> CoxeterLabel {
        match bond {
            0 => CoxeterLabel::Finite(2),
            1 => CoxeterLabel::Finite(3),
            2 => CoxeterLabel::Finite(4),
            3 => CoxeterLabel::Finite(6),
            _ => CoxeterLabel::Infinite,
        }
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            CoxeterLabel::Finite(m) => Some(m),
            CoxeterLabel::Infinite => None,
        }
    }
}

impl fmt::Display for CoxeterLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoxeterLabel::Finite(m) => write!(f, "{m}"),
            CoxeterLabel::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for CoxeterLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CoxeterLabel::Finite(m) => s.serialize_u32(*m),
            CoxeterLabel::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoxeterMatrix {
    pub m: Vec<Vec<CoxeterLabel>>,
}

impl CoxeterMatrix {
    pub fn get(&self, i: usize, j: usize) -> CoxeterLabel {
        self.m[i][j]
    }
}

pub fn coxeter_matrix(a: &GeneralizedCartanMatrix) -> CoxeterMatrix {
    let n = a.n();
    let m = (0..n)
        .map(|i| (0..n).map(|j| if i == j { CoxeterLabel::Finite(1) } else { CoxeterLabel::from_bond(a.bond(i, j)) }).collect())
        .collect();
    CoxeterMatrix { m }
}

// ---------------------------------------------------------------------------
// Dynkin diagram

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinEdge {
    /// 1-based endpoints with `i < j`.
    pub i: usize,
    pub j: usize,
    /// `a_ij * a_ji`.
    pub label: i64,
    /// `(from, to)`, 1-based, present iff `a_ij != a_ji`; points from the
    /// endpoint whose row entry is larger.
    pub arrow: Option<(usize, usize)>,
    pub a_ij: i64,
    pub a_ji: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinDiagram {
    pub vertices: usize,
    pub edges: Vec<DynkinEdge>,
}

pub fn dynkin_diagram(a: &GeneralizedCartanMatrix) -> DynkinDiagram {
    let n = a.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (aij, aji) = (a.a(i, j), a.a(j, i));
            if aij * aji == 0 {
                continue;
            }
            let arrow = match aij.cmp(&aji) {
                std::cmp::Ordering::Greater => Some((i + 1, j + 1)),
                std::cmp::Ordering::Less => Some((j + 1, i + 1)),
                std::cmp::Ordering::Equal => None,
            };
            edges.push(DynkinEdge { i: i + 1, j: j + 1, label: aij * aji, arrow, a_ij: aij, a_ji: aji });
        }
    }
    DynkinDiagram { vertices: n, edges }
}

/// Graphviz rendering of the Dynkin diagram. Vertices and edges come out in
/// sorted order so the text is stable.
pub fn dynkin_dot(a: &GeneralizedCartanMatrix) -> String {
    let d = dynkin_diagram(a);
    let mut out = String::from("graph dynkin {\n  node [shape=circle];\n");
    for v in 1..=d.vertices {
        let _ = writeln!(out, "  {v};");
    }
    for e in &d.edges {
        let dir = match e.arrow {
            None => "none",
            Some((from, _)) if from == e.i => "forward",
            Some(_) => "back",
        };
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{}\", dir={}, a_ij=\"{}\", a_ji=\"{}\"];",
            e.i, e.j, e.label, dir, e.a_ij, e.a_ji
        );
    }
    out.push_str("}\n");
    out
}

// ---------------------------------------------------------------------------
// Symmetrization and classification

/// `A = diag(epsilon) * B` with `B` symmetric and `epsilon` minimal positive
/// integers (gcd 1).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Symmetrization {
    pub epsilon: Vec<i64>,
    pub b: QMatrix,
}

/// Minimal symmetrization of an irreducible GCM, found by propagating
/// `epsilon_j / epsilon_i = a_ji / a_ij` along a BFS spanning tree and then
/// checking every edge.
pub fn symmetrize(a: &GeneralizedCartanMatrix) -> Result<Symmetrization> {
    if !a.is_irreducible() {
        return Err(Error::NotIrreducible);
    }
    let n = a.n();
    let mut eps: Vec<Option<Rational>> = vec![None; n];
    eps[0] = Some(Rational::one());
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let ei = eps[i].clone().expect("visited vertex has a ratio");
        for j in a.neighbors(i) {
            if eps[j].is_none() {
                eps[j] = Some(&ei * q(a.a(j, i)) / q(a.a(i, j)));
                queue.push_back(j);
            }
        }
    }
    let eps: Vec<Rational> = eps.into_iter().map(|e| e.expect("irreducible")).collect();
    for i in 0..n {
        for j in a.neighbors(i) {
            if &eps[j] * q(a.a(i, j)) != &eps[i] * q(a.a(j, i)) {
                return Err(Error::NotSymmetrizable);
            }
        }
    }
    let lcm = eps.iter().fold(num_bigint::BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let ints: Vec<num_bigint::BigInt> = eps.iter().map(|e| (e * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(num_bigint::BigInt::zero(), |acc, e| acc.gcd(e));
    let epsilon: Vec<i64> = ints
        .iter()
        .map(|e| {
            let v: num_bigint::BigInt = e / &g;
            i64::try_from(v).map_err(|_| Error::Overflow)
        })
        .collect::<Result<_>>()?;
    let b = QMatrix::from_fn(n, n, |i, j| q(a.a(i, j)) / q(epsilon[i]));
    debug_assert!(b.is_symmetric());
    Ok(Symmetrization { epsilon, b })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TypeKind {
    Spherical,
    Affine,
    Indefinite,
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeKind::Spherical => "spherical",
            TypeKind::Affine => "affine",
            TypeKind::Indefinite => "indefinite",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(rename = "type")]
    pub kind: TypeKind,
    pub rank: usize,
    pub corank: usize,
}

/// Type of an irreducible symmetrizable GCM read off from the inertia of
/// the symmetrized form `B`: positive definite is spherical, positive
/// semidefinite with one-dimensional radical is affine.
pub fn classify(a: &GeneralizedCartanMatrix) -> Result<Classification> {
    let sym = symmetrize(a)?;
    let inertia = sym.b.inertia();
    let n = a.n();
    let kind = if inertia.positive == n {
        TypeKind::Spherical
    } else if inertia.negative == 0 && inertia.zero == 1 {
        TypeKind::Affine
    } else {
        TypeKind::Indefinite
    };
    let rank = a.rank();
    Ok(Classification { kind, rank, corank: n - rank })
}

// ---------------------------------------------------------------------------
// Diagram automorphisms

/// Permutations `sigma` (as `sigma[i]`, 0-based) with `a_{sigma(i) sigma(j)} = a_ij`,
/// in lexicographic order.
pub fn diagram_automorphisms(a: &GeneralizedCartanMatrix) -> Vec<Vec<usize>> {
    search_automorphisms(a.n(), &|i, j, si, sj| a.a(si, sj) == a.a(i, j))
}

/// Permutations preserving the Coxeter matrix, in lexicographic order.
pub fn coxeter_diagram_automorphisms(a: &GeneralizedCartanMatrix) -> Vec<Vec<usize>> {
    let m = coxeter_matrix(a);
    search_automorphisms(a.n(), &|i, j, si, sj| m.get(si, sj) == m.get(i, j))
}

fn search_automorphisms(n: usize, compatible: &dyn Fn(usize, usize, usize, usize) -> bool) -> Vec<Vec<usize>> {
    fn extend(
        n: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        compatible: &dyn Fn(usize, usize, usize, usize) -> bool,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = perm.len();
        if k == n {
            out.push(perm.clone());
            return;
        }
        for img in 0..n {
            if used[img] {
                continue;
            }
            let ok = compatible(k, k, img, img)
                && (0..k).all(|i| compatible(i, k, perm[i], img) && compatible(k, i, img, perm[i]));
            if !ok {
                continue;
            }
            used[img] = true;
            perm.push(img);
            extend(n, perm, used, compatible, out);
            perm.pop();
            used[img] = false;
        }
    }
    let mut out = Vec::new();
    extend(n, &mut Vec::with_capacity(n), &mut vec![false; n], compatible, &mut out);
    out
}

// ---------------------------------------------------------------------------
// Standard families used by tests, the CLI and the docs.

/// Cartan matrix of a Dynkin diagram given as an edge list
/// `(i, j, a_ij, a_ji)` with 0-based vertices.
pub fn from_edges(n: usize, edges: &[(usize, usize, i64, i64)]) -> GeneralizedCartanMatrix {
    let mut rows = vec![vec![0i64; n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        row[i] = 2;
    }
    for &(i, j, aij, aji) in edges {
        rows[i][j] = aij;
        rows[j][i] = aji;
    }
    validate_gcm(&rows).expect("edge list describes a valid GCM")
}

/// `A_n`: a path on `n` vertices.
pub fn type_a(n: usize) -> GeneralizedCartanMatrix {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i, -1, -1)).collect();
    from_edges(n, &edges)
}

/// `E_n` for `n >= 4`: a path `1 - 2 - ... - (n-1)` with vertex `n` attached
/// to vertex 3. `E_10` is the `T_{2,3,7}` diagram.
pub fn type_e(n: usize) -> GeneralizedCartanMatrix {
    assert!(n >= 4, "E_n needs n >= 4");
    let mut edges: Vec<_> = (1..n - 1).map(|i| (i - 1, i, -1, -1)).collect();
    edges.push((2, n - 1, -1, -1));
    from_edges(n, &edges)
}

/// Affine `A_m^(1)` for `m >= 2`: a cycle on `m + 1` vertices. For `m = 1`
/// this is `[[2,-2],[-2,2]]`.
pub fn type_affine_a(m: usize) -> GeneralizedCartanMatrix {
    if m == 1 {
        return from_edges(2, &[(0, 1, -2, -2)]);
    }
    let k = m + 1;
    let edges: Vec<_> = (0..k).map(|i| (i, (i + 1) % k, -1, -1)).collect();
    from_edges(k, &edges)
}

/// `AE_n` for `n >= 3`: the over-extension of `A_{n-2}`, i.e. the affine
/// diagram of type `A_{n-2}^(1)` on vertices `1..n-1` with vertex `n`
/// joined by a simple edge to vertex 1 (the affine node).
pub fn type_ae(n: usize) -> GeneralizedCartanMatrix {
    assert!(n >= 3, "AE_n needs n >= 3");
    let aff = type_affine_a(n - 2);
    let mut rows: Vec<Vec<i64>> = aff.to_rows().into_iter().map(|mut r| {
        r.push(0);
        r
    }).collect();
    let mut last = vec![0i64; n];
    last[0] = -1;
    last[n - 1] = 2;
    rows[0][n - 1] = -1;
    rows.push(last);
    validate_gcm(&rows).expect("AE_n is a valid GCM")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        validate_gcm(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn validation_examples() {
        assert!(validate_gcm(&[vec![2, -1], vec![-1, 2]]).is_ok());
        assert_eq!(validate_gcm(&[vec![2, 0], vec![-1, 2]]), Err(Error::AsymmetricZero(1, 2)));
        assert!(validate_gcm(&[vec![2, -2], vec![-2, 2]]).is_ok());
        assert_eq!(validate_gcm(&[vec![2, -1]]), Err(Error::NotSquare));
        assert_eq!(validate_gcm(&[vec![2, -1], vec![-1, 3]]), Err(Error::DiagonalNotTwo(2)));
        assert_eq!(validate_gcm(&[vec![2, 1], vec![-1, 2]]), Err(Error::PositiveOffDiagonal(1, 2)));
        assert_eq!(validate_gcm(&[]), Err(Error::Empty));
    }

    #[test]
    fn coxeter_examples() {
        assert_eq!(coxeter_matrix(&m(&[&[2, -1], &[-1, 2]])).get(0, 1), CoxeterLabel::Finite(3));
        assert_eq!(coxeter_matrix(&m(&[&[2, -2], &[-2, 2]])).get(0, 1), CoxeterLabel::Infinite);
        let d = coxeter_matrix(&m(&[&[2, 0], &[0, 2]]));
        assert_eq!(d.get(0, 1), CoxeterLabel::Finite(2));
        assert_eq!(d.get(0, 0), CoxeterLabel::Finite(1));
    }

    #[test]
    fn classify_examples() {
        let c = classify(&m(&[&[2, -1], &[-1, 2]])).unwrap();
        assert_eq!((c.kind, c.rank, c.corank), (TypeKind::Spherical, 2, 0));
        let c = classify(&m(&[&[2, -2], &[-2, 2]])).unwrap();
        assert_eq!((c.kind, c.rank, c.corank), (TypeKind::Affine, 1, 1));
        let c = classify(&m(&[&[2, -3], &[-3, 2]])).unwrap();
        assert_eq!((c.kind, c.rank), (TypeKind::Indefinite, 2));
        assert_eq!(classify(&m(&[&[2, 0], &[0, 2]])), Err(Error::NotIrreducible));
        let json = serde_json::to_value(classify(&type_a(2)).unwrap()).unwrap();
        assert_eq!(json, serde_json::json!({"type": "spherical", "rank": 2, "corank": 0}));
    }

    #[test]
    fn symmetrize_examples() {
        let s = symmetrize(&m(&[&[2, -1], &[-2, 2]])).unwrap();
        assert_eq!(s.epsilon, vec![1, 2]);
        assert_eq!(s.b, QMatrix::from_ints(&[vec![2, -1], vec![-1, 1]]));
        assert_eq!(symmetrize(&type_a(2)).unwrap().epsilon, vec![1, 1]);
        // a12 a23 a31 = -1 but a21 a32 a13 = -2.
        let bad = m(&[&[2, -1, -1], &[-2, 2, -1], &[-1, -1, 2]]);
        assert_eq!(symmetrize(&bad), Err(Error::NotSymmetrizable));
        assert_eq!(classify(&bad), Err(Error::NotSymmetrizable));
    }

    #[test]
    fn symmetrize_g2_and_gcd_normalization() {
        let s = symmetrize(&m(&[&[2, -3], &[-1, 2]])).unwrap();
        assert_eq!(s.epsilon, vec![3, 1]);
        let s = symmetrize(&m(&[&[2, -2, 0], &[-1, 2, -1], &[0, -1, 2]])).unwrap();
        assert_eq!(s.epsilon, vec![2, 1, 1]);
    }

    #[test]
    fn sphericity_predicates() {
        assert!(type_e(10).is_star_spherical());
        assert!(!type_affine_a(1).is_star_spherical());
        assert!(!m(&[&[2, -3], &[-3, 2]]).is_two_spherical());
        assert!(type_a(3).is_two_spherical());
        assert!(type_ae(5).is_star_spherical());
        assert!(!type_ae(4).is_star_spherical());
        assert_eq!(classify(&type_e(10)).unwrap().kind, TypeKind::Indefinite);
        assert_eq!(classify(&type_e(9)).unwrap().kind, TypeKind::Affine);
        assert_eq!(classify(&type_e(8)).unwrap().kind, TypeKind::Spherical);
        assert_eq!(classify(&type_ae(5)).unwrap().kind, TypeKind::Indefinite);
    }

    #[test]
    fn automorphism_examples() {
        assert_eq!(diagram_automorphisms(&type_a(2)), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(coxeter_diagram_automorphisms(&type_a(2)).len(), 2);
        let b2 = m(&[&[2, -1], &[-2, 2]]);
        assert_eq!(diagram_automorphisms(&b2), vec![vec![0, 1]]);
        assert_eq!(coxeter_diagram_automorphisms(&b2), vec![vec![0, 1], vec![1, 0]]);
        let a1 = m(&[&[2]]);
        assert_eq!(diagram_automorphisms(&a1), vec![vec![0]]);
        assert_eq!(coxeter_diagram_automorphisms(&a1), vec![vec![0]]);
        // Cycle on four vertices: dihedral group of order 8.
        assert_eq!(diagram_automorphisms(&type_affine_a(3)).len(), 8);
        assert_eq!(diagram_automorphisms(&type_e(10)).len(), 1);
    }

    #[test]
    fn dot_output_is_stable() {
        let dot = dynkin_dot(&m(&[&[2, -1], &[-2, 2]]));
        assert_eq!(
            dot,
            "graph dynkin {\n  node [shape=circle];\n  1;\n  2;\n  1 -- 2 [label=\"2\", dir=forward, a_ij=\"-1\", a_ji=\"-2\"];\n}\n"
        );
        let d = dynkin_diagram(&type_a(3));
        assert_eq!(d.edges.len(), 2);
        assert!(d.edges.iter().all(|e| e.arrow.is_none()));
    }
}

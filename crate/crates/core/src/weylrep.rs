//! Exact reflection representations of the Weyl group.
//!
//! The coroot space is spanned by the simple coroots `h_1..h_n`; a vector
//! there is stored by its coordinates in that basis. Simple roots evaluate as
//! `alpha_i(X) = (A^T x)_i`. The simple reflection `r_i` acts by
//! `X -> X - alpha_i(X) h_i`, its dual by `lambda -> lambda - lambda(h_i) alpha_i`.
//!
//! Matrices act on column vectors and the matrix of a word `(i_1, ..., i_k)`
//! is the left-to-right product `M_{i_1} ... M_{i_k}`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gcm::GeneralizedCartanMatrix;
use crate::linalg::{dot, q, QMatrix, Rational};

/// Word in the simple reflections. Letters are stored 0-based and printed
/// or serialized 1-based.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeylWord(pub Vec<usize>);

impl WeylWord {
    pub fn empty() -> Self {
        WeylWord(Vec::new())
    }

    pub fn from_one_based(letters: &[usize]) -> Result<Self> {
        letters
            .iter()
            .map(|&l| if l == 0 { Err(Error::IndexOutOfRange { index: 0, n: 0 }) } else { Ok(l - 1) })
            .collect::<Result<Vec<_>>>()
            .map(WeylWord)
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|l| l + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        WeylWord(self.0.iter().rev().copied().collect())
    }

    fn check(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&l| l >= n) {
            Some(&l) => Err(Error::IndexOutOfRange { index: l + 1, n }),
            None => Ok(()),
        }
    }

    /// All words of length exactly `len` over `n` letters with no two equal
    /// adjacent letters, in lexicographic order.
    pub fn all_reduced_looking(n: usize, len: usize) -> Vec<WeylWord> {
        let mut out: Vec<Vec<usize>> = vec![Vec::new()];
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &out {
                for l in (0..n).filter(|&l| w.last() != Some(&l)) {
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(WeylWord).collect()
    }
}

impl fmt::Debug for WeylWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.one_based())
    }
}

impl Serialize for WeylWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.one_based().serialize(s)
    }
}

/// Exact integer matrix of a Weyl group element acting on the coroot space
/// (or, for the dual representation, on the root space).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct WeylMatrix {
    n: usize,
    data: Vec<i64>,
}

impl fmt::Debug for WeylMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_rows())
    }
}

impl Serialize for WeylMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_rows().serialize(s)
    }
}

impl WeylMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        WeylMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        WeylMatrix { n: rows.len(), data: rows.iter().flatten().copied().collect() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(<[i64]>::to_vec).collect()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_fn(self.n, self.n, |i, j| q(self.get(i, j)))
    }

    pub fn is_identity(&self) -> bool {
        *self == WeylMatrix::identity(self.n)
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut data = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                data[j * n + i] = self.get(i, j);
            }
        }
        WeylMatrix { n, data }
    }

    /// Checked product; fails with [`Error::Overflow`] instead of wrapping.
    pub fn mul(&self, other: &WeylMatrix) -> Result<WeylMatrix> {
        let n = self.n;
        let mut data = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let p = a.checked_mul(other.get(k, j)).ok_or(Error::Overflow)?;
                    data[i * n + j] = data[i * n + j].checked_add(p).ok_or(Error::Overflow)?;
                }
            }
        }
        Ok(WeylMatrix { n, data })
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        (0..self.n)
            .map(|i| (0..self.n).fold(Rational::zero(), |acc, j| acc + q(self.get(i, j)) * &v[j]))
            .collect()
    }

    pub fn apply_int(&self, v: &[i64]) -> Result<Vec<i64>> {
        (0..self.n)
            .map(|i| {
                (0..self.n).try_fold(0i64, |acc, j| {
                    self.get(i, j).checked_mul(v[j]).and_then(|p| acc.checked_add(p)).ok_or(Error::Overflow)
                })
            })
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        self.to_qmatrix().determinant()
    }
}

fn check_index(a: &GeneralizedCartanMatrix, i: usize) -> Result<()> {
    if i < a.n() {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { index: i + 1, n: a.n() })
    }
}

/// Matrix of `r_i` on the coroot space: `h_j -> h_j - a_ji h_i` (column `j`).
/// `i` is 0-based.
pub fn simple_reflection_matrix(a: &GeneralizedCartanMatrix, i: usize) -> Result<WeylMatrix> {
    check_index(a, i)?;
    let mut m = WeylMatrix::identity(a.n());
    for j in 0..a.n() {
        m.data[i * a.n() + j] -= a.a(j, i);
    }
    Ok(m)
}

/// Matrix of `r_i` on the root space: `alpha_j -> alpha_j - a_ij alpha_i`.
pub fn dual_simple_reflection_matrix(a: &GeneralizedCartanMatrix, i: usize) -> Result<WeylMatrix> {
    check_index(a, i)?;
    let mut m = WeylMatrix::identity(a.n());
    for j in 0..a.n() {
        m.data[i * a.n() + j] -= a.a(i, j);
    }
    Ok(m)
}

pub fn word_to_matrix(a: &GeneralizedCartanMatrix, w: &WeylWord) -> Result<WeylMatrix> {
    w.check(a.n())?;
    w.0.iter().try_fold(WeylMatrix::identity(a.n()), |acc, &l| times_reflection(a, acc, l))
}

/// `m * r_i` in O(n^2): only row `i` of `r_i` differs from the identity, so
/// column `j` gains `-a_ji` times column `i`, and column `i` flips sign.
fn times_reflection(a: &GeneralizedCartanMatrix, mut m: WeylMatrix, i: usize) -> Result<WeylMatrix> {
    let n = m.n;
    for j in (0..n).filter(|&j| j != i) {
        let c = a.a(j, i);
        if c == 0 {
            continue;
        }
        for r in 0..n {
            let add = m.data[r * n + i].checked_mul(-c).ok_or(Error::Overflow)?;
            m.data[r * n + j] = m.data[r * n + j].checked_add(add).ok_or(Error::Overflow)?;
        }
    }
    for r in 0..n {
        m.data[r * n + i] = -m.data[r * n + i];
    }
    Ok(m)
}

pub fn dual_word_to_matrix(a: &GeneralizedCartanMatrix, w: &WeylWord) -> Result<WeylMatrix> {
    w.check(a.n())?;
    let gens = (0..a.n()).map(|i| dual_simple_reflection_matrix(a, i)).collect::<Result<Vec<_>>>()?;
    w.0.iter().try_fold(WeylMatrix::identity(a.n()), |acc, &l| acc.mul(&gens[l]))
}

/// Decides equality in the Weyl group by comparing matrices on the coroot
/// space, where the representation is faithful.
pub fn words_equal(a: &GeneralizedCartanMatrix, w1: &WeylWord, w2: &WeylWord) -> Result<bool> {
    Ok(word_to_matrix(a, w1)? == word_to_matrix(a, w2)?)
}

/// Values `alpha_1(X), ..., alpha_n(X)` of the simple roots on a coroot
/// vector given in coroot coordinates.
pub fn simple_root_values(a: &GeneralizedCartanMatrix, x: &[Rational]) -> Vec<Rational> {
    (0..a.n()).map(|i| (0..a.n()).fold(Rational::zero(), |acc, j| acc + q(a.a(j, i)) * &x[j])).collect()
}

/// `lambda(X)` for `lambda = sum c_j alpha_j` and `X = sum x_i h_i`, i.e. `x^T A c`.
pub fn pairing(a: &GeneralizedCartanMatrix, root: &[Rational], x: &[Rational]) -> Rational {
    dot(root, &simple_root_values(a, x))
}

pub fn pairing_int(a: &GeneralizedCartanMatrix, root: &[i64], x: &[Rational]) -> Rational {
    let vals = simple_root_values(a, x);
    root.iter().zip(&vals).fold(Rational::zero(), |acc, (c, v)| acc + q(*c) * v)
}

// ---------------------------------------------------------------------------
// Center and the reduced (quotient) space

/// Basis of the center `{X : alpha_i(X) = 0 for all i}`, i.e. of `ker A^T`,
/// in coroot coordinates.
pub fn center_basis(a: &GeneralizedCartanMatrix) -> Vec<Vec<Rational>> {
    a.to_qmatrix().transpose().kernel()
}

/// Quotient of the coroot space by the center, with explicit coordinates.
///
/// `projection` is the nonzero part of the RREF of `A^T` (so its kernel is
/// the center) and `section` consists of the standard basis vectors at the
/// pivot columns, so `projection * section` is the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducedSpace {
    pub l: usize,
    pub projection: QMatrix,
    pub section: QMatrix,
    pub pivots: Vec<usize>,
}

impl ReducedSpace {
    pub fn project(&self, x: &[Rational]) -> Vec<Rational> {
        self.projection.mul_vec(x)
    }

    pub fn lift(&self, y: &[Rational]) -> Vec<Rational> {
        self.section.mul_vec(y)
    }

    /// `projection * m * section`: the induced map on the quotient.
    pub fn restrict(&self, m: &QMatrix) -> QMatrix {
        self.projection.mul(m).mul(&self.section)
    }
}

pub fn reduced_space(a: &GeneralizedCartanMatrix) -> ReducedSpace {
    let n = a.n();
    let (r, pivots) = a.to_qmatrix().transpose().rref();
    let l = pivots.len();
    let projection = QMatrix::from_fn(l, n, |i, j| r.get(i, j).clone());
    let section = QMatrix::from_fn(n, l, |i, k| if pivots[k] == i { Rational::one() } else { Rational::zero() });
    ReducedSpace { l, projection, section, pivots }
}

/// Matrix of the word on the reduced space, in reduced coordinates.
pub fn reduced_rep_matrix(a: &GeneralizedCartanMatrix, w: &WeylWord) -> Result<QMatrix> {
    let red = reduced_space(a);
    Ok(red.restrict(&word_to_matrix(a, w)?.to_qmatrix()))
}

// ---------------------------------------------------------------------------
// Real roots

/// Positive real root in simple-root coordinates, with a witness:
/// `root = w . alpha_base` where `w` acts through the dual representation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RealRoot {
    pub coords: Vec<i64>,
    pub height: i64,
    pub witness: WeylWord,
    /// 1-based in JSON.
    #[serde(serialize_with = "serialize_one_based")]
    pub base: usize,
}

fn serialize_one_based<S: Serializer>(v: &usize, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(*v as u64 + 1)
}

impl RealRoot {
    pub fn coords_q(&self) -> Vec<Rational> {
        self.coords.iter().map(|&c| q(c)).collect()
    }
}

/// `r_i(beta) = beta - beta(h_i) alpha_i` on integer root coordinates.
pub fn reflect_root(a: &GeneralizedCartanMatrix, i: usize, beta: &[i64]) -> Vec<i64> {
    let pairing: i64 = (0..a.n()).map(|j| a.a(i, j) * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= pairing;
    out
}

/// All positive real roots of height at most `height_bound`, sorted
/// lexicographically by coordinates.
///
/// Breadth-first closure of the simple roots under simple reflections,
/// discarding anything non-positive or above the bound. Complete because a
/// non-simple positive real root has a simple reflection lowering its
/// height, so it is reached from a lower root without leaving the bound.
pub fn enumerate_real_roots(a: &GeneralizedCartanMatrix, height_bound: i64) -> Vec<RealRoot> {
    let n = a.n();
    let mut found: HashMap<Vec<i64>, (WeylWord, usize)> = HashMap::new();
    let mut queue = VecDeque::new();
    if height_bound < 1 {
        return Vec::new();
    }
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        found.insert(e.clone(), (WeylWord::empty(), i));
        queue.push_back(e);
    }
    while let Some(beta) = queue.pop_front() {
        let (w, base) = found[&beta].clone();
        for i in 0..n {
            let img = reflect_root(a, i, &beta);
            if img.iter().any(|&c| c < 0) || img.iter().sum::<i64>() > height_bound || found.contains_key(&img) {
                continue;
            }
            let mut letters = vec![i];
            letters.extend_from_slice(&w.0);
            found.insert(img.clone(), (WeylWord(letters), base));
            queue.push_back(img);
        }
    }
    let mut roots: Vec<RealRoot> = found
        .into_iter()
        .map(|(coords, (witness, base))| RealRoot { height: coords.iter().sum(), coords, witness, base })
        .collect();
    roots.sort_by(|x, y| x.coords.cmp(&y.coords));
    roots
}

/// Decides whether integer coordinates describe a real root by reflecting
/// down in height. Positive non-simple real roots always admit a simple
/// reflection that lowers the height.
pub fn is_real_root(a: &GeneralizedCartanMatrix, coords: &[i64]) -> bool {
    let mut beta = coords.to_vec();
    if beta.iter().all(|&c| c <= 0) {
        beta.iter_mut().for_each(|c| *c = -*c);
    }
    loop {
        if beta.iter().any(|&c| c < 0) {
            return false;
        }
        let h: i64 = beta.iter().sum();
        if h == 0 {
            return false;
        }
        if h == 1 {
            return true;
        }
        let step = (0..a.n()).find(|&i| (0..a.n()).map(|j| a.a(i, j) * beta[j]).sum::<i64>() > 0);
        match step {
            Some(i) => beta = reflect_root(a, i, &beta),
            None => return false,
        }
    }
}

/// Reflection in the real root `alpha = w . alpha_i`: `rho(w) r_i rho(w)^{-1}`
/// on the coroot space. Fails if the witness does not produce `alpha`.
pub fn root_reflection(a: &GeneralizedCartanMatrix, alpha: &[i64], witness: &WeylWord, i: usize) -> Result<WeylMatrix> {
    check_index(a, i)?;
    if alpha.len() != a.n() {
        return Err(Error::DimensionMismatch { expected: a.n(), got: alpha.len() });
    }
    let mut e = vec![0; a.n()];
    e[i] = 1;
    if dual_word_to_matrix(a, witness)?.apply_int(&e)? != alpha {
        return Err(Error::InvalidWitness);
    }
    word_to_matrix(a, witness)?
        .mul(&simple_reflection_matrix(a, i)?)?
        .mul(&word_to_matrix(a, &witness.inverse())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gcm::{type_a, type_affine_a, validate_gcm};
    use crate::linalg::qf;

    fn m(rows: &[&[i64]]) -> GeneralizedCartanMatrix {
        validate_gcm(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn w(letters: &[usize]) -> WeylWord {
        WeylWord::from_one_based(letters).unwrap()
    }

    #[test]
    fn simple_reflections() {
        let a2 = type_a(2);
        assert_eq!(simple_reflection_matrix(&a2, 0).unwrap(), WeylMatrix::from_rows(&[vec![-1, 1], vec![0, 1]]));
        let aff = type_affine_a(1);
        assert_eq!(simple_reflection_matrix(&aff, 0).unwrap(), WeylMatrix::from_rows(&[vec![-1, 2], vec![0, 1]]));
        for i in 0..2 {
            let r = simple_reflection_matrix(&aff, i).unwrap();
            assert!(r.mul(&r).unwrap().is_identity());
        }
        assert_eq!(simple_reflection_matrix(&a2, 2), Err(Error::IndexOutOfRange { index: 3, n: 2 }));
    }

    #[test]
    fn word_matrix_matches_plain_product() {
        let a = m(&[&[2, -1, 0], &[-3, 2, -2], &[0, -1, 2]]);
        for word in WeylWord::all_reduced_looking(3, 5) {
            let slow = word.0.iter().fold(WeylMatrix::identity(3), |acc, &i| {
                acc.mul(&simple_reflection_matrix(&a, i).unwrap()).unwrap()
            });
            assert_eq!(word_to_matrix(&a, &word).unwrap(), slow);
        }
    }

    #[test]
    fn dual_reflections() {
        let a2 = type_a(2);
        let d = dual_simple_reflection_matrix(&a2, 0).unwrap();
        assert_eq!(d.apply_int(&[0, 1]).unwrap(), vec![1, 1]);
        assert_eq!(d.apply_int(&[1, 0]).unwrap(), vec![-1, 0]);
        let aff = type_affine_a(1);
        let d = dual_simple_reflection_matrix(&aff, 1).unwrap();
        assert_eq!(d.apply_int(&[1, 0]).unwrap(), vec![1, 2]);
        assert!(d.mul(&d).unwrap().is_identity());
    }

    #[test]
    fn words() {
        let a2 = type_a(2);
        assert!(word_to_matrix(&a2, &WeylWord::empty()).unwrap().is_identity());
        assert!(words_equal(&a2, &w(&[1, 2, 1]), &w(&[2, 1, 2])).unwrap());
        assert!(!words_equal(&a2, &w(&[1, 2]), &w(&[2, 1])).unwrap());
        let aff = type_affine_a(1);
        let m12 = word_to_matrix(&aff, &w(&[1, 2])).unwrap();
        assert_eq!(m12, WeylMatrix::from_rows(&[vec![3, -2], vec![2, -1]]));
        assert!(!m12.is_identity());
        assert_eq!(m12.get(0, 0) + m12.get(1, 1), 2);
        assert!(matches!(word_to_matrix(&a2, &w(&[3])), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn center_and_reduced_space() {
        assert!(center_basis(&type_a(2)).is_empty());
        let aff = type_affine_a(1);
        assert_eq!(center_basis(&aff), vec![vec![q(1), q(1)]]);
        let red = reduced_space(&aff);
        assert_eq!(red.l, 1);
        let p1 = red.project(&[q(1), q(0)]);
        let p2 = red.project(&[q(0), q(1)]);
        assert_eq!(p1, vec![-p2[0].clone()]);
        assert!(red.projection.mul(&red.section).is_identity());
    }

    #[test]
    fn reduced_representation() {
        let a2 = type_a(2);
        let word = w(&[1, 2]);
        assert_eq!(reduced_rep_matrix(&a2, &word).unwrap(), word_to_matrix(&a2, &word).unwrap().to_qmatrix());
        let aff = type_affine_a(1);
        let minus_one = QMatrix::from_rows(vec![vec![q(-1)]]);
        assert_eq!(reduced_rep_matrix(&aff, &w(&[1])).unwrap(), minus_one);
        assert_eq!(reduced_rep_matrix(&aff, &w(&[2])).unwrap(), minus_one);
        assert!(reduced_rep_matrix(&aff, &w(&[1, 2])).unwrap().is_identity());
        let hyp = m(&[&[2, -3], &[-3, 2]]);
        let r = reduced_rep_matrix(&hyp, &w(&[1, 2])).unwrap();
        let mut acc = r.clone();
        for _ in 1..=50 {
            assert!(!acc.is_identity());
            acc = acc.mul(&r);
        }
    }

    #[test]
    fn root_enumeration() {
        let roots = enumerate_real_roots(&type_a(2), 2);
        let coords: Vec<_> = roots.iter().map(|r| r.coords.clone()).collect();
        assert_eq!(coords, vec![vec![0, 1], vec![1, 0], vec![1, 1]]);
        let aff = type_affine_a(1);
        assert_eq!(enumerate_real_roots(&aff, 1).len(), 2);
        for r in enumerate_real_roots(&aff, 7) {
            let mut e = vec![0; 2];
            e[r.base] = 1;
            assert_eq!(dual_word_to_matrix(&aff, &r.witness).unwrap().apply_int(&e).unwrap(), r.coords);
            assert!(is_real_root(&aff, &r.coords));
        }
        assert!(!is_real_root(&aff, &[1, 1]));
        assert!(is_real_root(&aff, &[-2, -1]));
        assert!(!is_real_root(&aff, &[1, -1]));
    }

    #[test]
    fn root_reflections_do_not_depend_on_witness() {
        let a2 = type_a(2);
        let via1 = root_reflection(&a2, &[1, 1], &w(&[1]), 1).unwrap();
        let via2 = root_reflection(&a2, &[1, 1], &w(&[2]), 0).unwrap();
        assert_eq!(via1, via2);
        assert_eq!(root_reflection(&a2, &[1, 0], &WeylWord::empty(), 0).unwrap(), simple_reflection_matrix(&a2, 0).unwrap());
        assert_eq!(root_reflection(&a2, &[1, 1], &WeylWord::empty(), 0), Err(Error::InvalidWitness));
    }

    #[test]
    fn pairing_convention() {
        let a2 = type_a(2);
        // alpha_1 + alpha_2 on h_1 - h_2.
        assert_eq!(pairing(&a2, &[q(1), q(1)], &[q(1), q(-1)]), q(0));
        assert_eq!(simple_root_values(&a2, &[q(1), q(-1)]), vec![q(3), q(-3)]);
        assert_eq!(pairing(&a2, &[qf(1, 2), q(0)], &[q(1), q(0)]), q(1));
    }
}

use std::fmt;

use crate::coeff::QExpr;
use crate::error::{Error, Result};
use crate::ring::Ring;
use crate::sparse::SparseMat;

/// A linear operator on `(C^n)^{⊗L}`, basis ordered row-major over legs
/// with the leftmost leg most significant.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorOp<S = QExpr> {
    n: usize,
    legs: usize,
    mat: SparseMat<S>,
}

impl<S: Ring> TensorOp<S> {
    pub fn new(n: usize, legs: usize, mat: SparseMat<S>) -> Result<Self> {
        let d = n.pow(legs as u32);
        if mat.rows() != d || mat.cols() != d {
            return Err(Error::InvalidConfig(format!(
                "operator of shape {}x{} on {legs} legs of dimension {n}",
                mat.rows(),
                mat.cols()
            )));
        }
        Ok(TensorOp { n, legs, mat })
    }

    pub fn identity(n: usize, legs: usize) -> Self {
        TensorOp {
            n,
            legs,
            mat: SparseMat::identity(n.pow(legs as u32)),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn dim(&self) -> usize {
        self.mat.rows()
    }

    pub fn mat(&self) -> &SparseMat<S> {
        &self.mat
    }

    pub fn into_mat(self) -> SparseMat<S> {
        self.mat
    }

    /// Entry `R^{a_1..a_L}_{b_1..b_L}`, indices 1-based.
    pub fn entry(&self, upper: &[usize], lower: &[usize]) -> S {
        self.mat.get(self.linear(upper), self.linear(lower))
    }

    pub fn linear(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &a| acc * self.n + (a - 1))
    }

    fn same_shape(&self, rhs: &Self) {
        assert_eq!(
            (self.n, self.legs),
            (rhs.n, rhs.legs),
            "tensor operators of different shape"
        );
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.same_shape(rhs);
        TensorOp {
            n: self.n,
            legs: self.legs,
            mat: self.mat.mul(&rhs.mat),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_shape(rhs);
        TensorOp {
            n: self.n,
            legs: self.legs,
            mat: self.mat.add(&rhs.mat),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.same_shape(rhs);
        TensorOp {
            n: self.n,
            legs: self.legs,
            mat: self.mat.sub(&rhs.mat),
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        TensorOp {
            n: self.n,
            legs: self.legs,
            mat: self.mat.scale(s),
        }
    }

    pub fn map<T: Ring, F: Fn(&S) -> T>(&self, f: F) -> TensorOp<T> {
        TensorOp {
            n: self.n,
            legs: self.legs,
            mat: self.mat.map(f),
        }
    }

    pub fn try_map<T: Ring, F: Fn(&S) -> Result<T>>(&self, f: F) -> Result<TensorOp<T>> {
        Ok(TensorOp {
            n: self.n,
            legs: self.legs,
            mat: self.mat.try_map(f)?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.mat == SparseMat::identity(self.dim())
    }
}

impl<S: Ring> fmt::Display for TensorOp<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.mat)
    }
}

fn sign(a: usize, b: usize) -> i64 {
    match a.cmp(&b) {
        std::cmp::Ordering::Greater => 1,
        std::cmp::Ordering::Equal => 0,
        std::cmp::Ordering::Less => -1,
    }
}

fn q_one_over_n(n: usize, s: i64) -> QExpr {
    QExpr::q_pow(s, n as i64)
}

/// The Drinfeld-Jimbo R-matrix
/// `q^{1/n} (δ^a_r δ^b_s + (q^-1 - q^{ε_ab}) δ^a_s δ^b_r)`.
pub fn dj_rmatrix(n: usize) -> TensorOp {
    let mut m = SparseMat::zeros(n * n, n * n);
    let pre = q_one_over_n(n, 1);
    for a in 0..n {
        for b in 0..n {
            let row = a * n + b;
            m.add_at(row, row, &pre);
            let c = QExpr::q_pow(-1, 1).sub(&QExpr::q_pow(sign(a, b), 1));
            m.add_at(row, b * n + a, &pre.mul(&c));
        }
    }
    TensorOp { n, legs: 2, mat: m }
}

/// Closed-form inverse of [`dj_rmatrix`]:
/// `q^{-1/n} (δ δ + (q - q^{-ε_ab}) δ δ)`.
pub fn dj_rmatrix_inv(n: usize) -> TensorOp {
    let mut m = SparseMat::zeros(n * n, n * n);
    let pre = q_one_over_n(n, -1);
    for a in 0..n {
        for b in 0..n {
            let row = a * n + b;
            m.add_at(row, row, &pre);
            let c = QExpr::q().sub(&QExpr::q_pow(-sign(a, b), 1));
            m.add_at(row, b * n + a, &pre.mul(&c));
        }
    }
    TensorOp { n, legs: 2, mat: m }
}

/// The flip `P_12`.
pub fn permutation(n: usize) -> TensorOp {
    let m = SparseMat::from_triplets(
        n * n,
        n * n,
        (0..n).flat_map(|a| (0..n).map(move |b| (a * n + b, b * n + a, QExpr::one()))),
    );
    TensorOp { n, legs: 2, mat: m }
}

/// `Ř = P R`.
pub fn rhat(n: usize) -> TensorOp {
    permutation(n).mul(&dj_rmatrix(n))
}

/// `Ř^-1 = R^-1 P`.
pub fn rhat_inv(n: usize) -> TensorOp {
    dj_rmatrix_inv(n).mul(&permutation(n))
}

/// `R_21 = P R P`.
pub fn r21(n: usize) -> TensorOp {
    let p = permutation(n);
    p.mul(&dj_rmatrix(n)).mul(&p)
}

/// `R^- = R_12`.
pub fn r_minus(n: usize) -> TensorOp {
    dj_rmatrix(n)
}

/// `R^+ = R_21^{-1} = P R^{-1} P`.
pub fn r_plus(n: usize) -> TensorOp {
    let p = permutation(n);
    p.mul(&dj_rmatrix_inv(n)).mul(&p)
}

/// Places a two-leg operator on legs `(i, j)` (1-based, any order, not
/// necessarily adjacent) of an `legs`-leg space.
pub fn embed_pair<S: Ring>(
    op: &TensorOp<S>,
    i: usize,
    j: usize,
    legs: usize,
) -> Result<TensorOp<S>> {
    if op.legs != 2 {
        return Err(Error::BadSlot(format!(
            "embedding needs a two-leg operator, got {} legs",
            op.legs
        )));
    }
    if i == j || i == 0 || j == 0 || i > legs || j > legs {
        return Err(Error::BadSlot(format!(
            "legs ({i}, {j}) in a {legs}-leg space"
        )));
    }
    let n = op.n;
    let dim = n.pow(legs as u32);
    let stride = |leg: usize| n.pow((legs - leg) as u32);
    let (si, sj) = (stride(i), stride(j));
    let mut m = SparseMat::zeros(dim, dim);
    for row in 0..dim {
        let (ai, aj) = ((row / si) % n, (row / sj) % n);
        let base = row - ai * si - aj * sj;
        for (c, v) in op.mat.row(ai * n + aj) {
            let (bi, bj) = (c / n, c % n);
            m.add_at(row, base + bi * si + bj * sj, v);
        }
    }
    Ok(TensorOp { n, legs, mat: m })
}

/// `X_i := X_{i, i+1}`.
pub fn embed<S: Ring>(op: &TensorOp<S>, slot: usize, legs: usize) -> Result<TensorOp<S>> {
    embed_pair(op, slot, slot + 1, legs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(num: i64, den: i64) -> QExpr {
        QExpr::q_pow(num, den)
    }

    #[test]
    fn r_diagonal_entry() {
        let r = dj_rmatrix(2);
        assert_eq!(r.entry(&[1, 1], &[1, 1]), q(-1, 2));
    }

    #[test]
    fn inverse_is_exact() {
        for n in 2..=5 {
            assert!(dj_rmatrix(n).mul(&dj_rmatrix_inv(n)).is_identity());
            assert!(rhat(n).mul(&rhat_inv(n)).is_identity());
        }
    }

    #[test]
    fn classical_limit() {
        for n in 2..=4 {
            let at_one = dj_rmatrix(n).map(|x| QExpr::constant(x.at_one()));
            assert!(at_one.is_identity());
        }
    }

    #[test]
    fn embed_identity_everywhere() {
        let id = TensorOp::<QExpr>::identity(2, 2);
        for (i, j) in [(1, 2), (2, 3), (1, 3), (3, 1)] {
            assert!(embed_pair(&id, i, j, 3).unwrap().is_identity());
        }
    }

    #[test]
    fn flip_on_outer_legs() {
        let p13 = embed_pair(&permutation(2), 1, 3, 3).unwrap();
        // |1,2,2> -> |2,2,1>
        let from = p13.linear(&[1, 2, 2]);
        let to = p13.linear(&[2, 2, 1]);
        assert_eq!(p13.mat().get(to, from), QExpr::one());
        assert_eq!(p13.mat().nnz(), 8);
    }

    #[test]
    fn bad_slots() {
        let r = dj_rmatrix(2);
        assert!(embed_pair(&r, 2, 2, 3).is_err());
        assert!(embed(&r, 3, 3).is_err());
        assert!(embed_pair(&r, 0, 1, 3).is_err());
    }

    #[test]
    fn reversed_pair_is_conjugation() {
        let r = dj_rmatrix(3);
        let p = embed_pair(&permutation(3), 1, 2, 2).unwrap();
        let r21 = embed_pair(&r, 2, 1, 2).unwrap();
        assert_eq!(r21, p.mul(&r).mul(&p));
        assert_eq!(r21, super::r21(3));
    }
}

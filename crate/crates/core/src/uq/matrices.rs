use num_rational::Rational64;
use std::fmt;

use crate::coeff::QExpr;
use crate::error::{Error, Result};
use crate::ncalg::{Generator, NCElem};
use crate::ring::Ring;

type P = NCElem<QExpr>;

/// Highest `n` for which the Cartan-Weyl tables of `N_+-` are shipped.
pub const MAX_TABLE_N: usize = 4;

/// An `n x n` matrix with noncommutative polynomial entries.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgMatrix {
    n: usize,
    entries: Vec<P>,
}

impl AlgMatrix {
    pub fn zeros(n: usize) -> Self {
        AlgMatrix {
            n,
            entries: vec![P::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for a in 1..=n {
            m.set(a, a, P::one());
        }
        m
    }

    pub fn diagonal(entries: Vec<P>) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n);
        for (a, e) in entries.into_iter().enumerate() {
            m.set(a + 1, a + 1, e);
        }
        m
    }

    pub fn from_fn<F: FnMut(usize, usize) -> P>(n: usize, mut f: F) -> Self {
        let mut m = Self::zeros(n);
        for a in 1..=n {
            for b in 1..=n {
                m.set(a, b, f(a, b));
            }
        }
        m
    }

    /// Matrix of free symbols `m^a_b`.
    pub fn free_symbols(n: usize) -> Self {
        Self::from_fn(n, |a, b| P::gen(Generator::M(a as u8, b as u8)))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `(a, b)`, 1-based: row `a`, column `b`.
    pub fn at(&self, a: usize, b: usize) -> &P {
        &self.entries[(a - 1) * self.n + (b - 1)]
    }

    pub fn set(&mut self, a: usize, b: usize, x: P) {
        self.entries[(a - 1) * self.n + (b - 1)] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &P)> {
        let n = self.n;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, e)| ((k / n + 1, k % n + 1), e))
    }

    pub fn mul(&self, rhs: &AlgMatrix) -> AlgMatrix {
        assert_eq!(self.n, rhs.n);
        AlgMatrix::from_fn(self.n, |a, b| {
            let mut acc = P::zero();
            for s in 1..=self.n {
                let (x, y) = (self.at(a, s), rhs.at(s, b));
                if !x.is_zero() && !y.is_zero() {
                    acc.add_assign_ref(&x.mul(y));
                }
            }
            acc
        })
    }

    pub fn add(&self, rhs: &AlgMatrix) -> AlgMatrix {
        AlgMatrix::from_fn(self.n, |a, b| self.at(a, b).add(rhs.at(a, b)))
    }

    pub fn sub(&self, rhs: &AlgMatrix) -> AlgMatrix {
        AlgMatrix::from_fn(self.n, |a, b| self.at(a, b).sub(rhs.at(a, b)))
    }

    pub fn scale(&self, c: &QExpr) -> AlgMatrix {
        AlgMatrix::from_fn(self.n, |a, b| self.at(a, b).scale(c))
    }

    pub fn map<F: Fn(&P) -> P>(&self, f: F) -> AlgMatrix {
        AlgMatrix::from_fn(self.n, |a, b| f(self.at(a, b)))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(P::is_zero)
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.entries().all(|((a, b), e)| a <= b || e.is_zero())
    }

    pub fn is_lower_triangular(&self) -> bool {
        self.entries().all(|((a, b), e)| a >= b || e.is_zero())
    }

    pub fn diag(&self) -> Vec<P> {
        (1..=self.n).map(|a| self.at(a, a).clone()).collect()
    }
}

impl fmt::Display for AlgMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for ((a, b), e) in self.entries() {
            if !e.is_zero() {
                writeln!(f, "({a},{b}): {e}")?;
            }
        }
        Ok(())
    }
}

fn lambda() -> QExpr {
    QExpr::lambda()
}

/// `k_i` (or its inverse) as an element, with `k_0 = k_n = 1`.
pub fn k_elem(i: usize, n: usize, inverse: bool) -> P {
    if i == 0 || i >= n {
        P::one()
    } else if inverse {
        P::gen(Generator::KInv(i as u8))
    } else {
        P::gen(Generator::K(i as u8))
    }
}

/// `K_i = k_{i-1}^-1 k_i^2 k_{i+1}^-1`.
pub fn big_k(i: usize, n: usize) -> P {
    k_elem(i - 1, n, true)
        .mul(&k_elem(i, n, false))
        .mul(&k_elem(i, n, false))
        .mul(&k_elem(i + 1, n, true))
}

/// `K_i^-1 = k_{i-1} k_i^-2 k_{i+1}`.
pub fn big_k_inv(i: usize, n: usize) -> P {
    k_elem(i - 1, n, false)
        .mul(&k_elem(i, n, true))
        .mul(&k_elem(i, n, true))
        .mul(&k_elem(i + 1, n, false))
}

/// `d_alpha = k_{alpha-1} k_alpha^-1`.
pub fn d_elem(alpha: usize, n: usize) -> P {
    k_elem(alpha - 1, n, false).mul(&k_elem(alpha, n, true))
}

/// `d_alpha^-1 = k_{alpha-1}^-1 k_alpha`.
pub fn d_inv_elem(alpha: usize, n: usize) -> P {
    k_elem(alpha - 1, n, true).mul(&k_elem(alpha, n, false))
}

fn check_n(n: usize) -> Result<()> {
    if !(2..=MAX_TABLE_N).contains(&n) {
        return Err(Error::UnsupportedRank(
            n,
            "Cartan-Weyl tables cover 2 <= n <= 4",
        ));
    }
    Ok(())
}

pub fn build_d(n: usize) -> AlgMatrix {
    AlgMatrix::diagonal((1..=n).map(|a| d_elem(a, n).with_rank(n as u8)).collect())
}

pub fn build_d_inv(n: usize) -> AlgMatrix {
    AlgMatrix::diagonal(
        (1..=n)
            .map(|a| d_inv_elem(a, n).with_rank(n as u8))
            .collect(),
    )
}

/// Strictly triangular Cartan-Weyl matrices `(N_+, N_-)`.
///
/// `N_+` has `F_i` on the first superdiagonal and left-nested
/// q-commutators `[F_{j-1}, N_+(i, j-1)]_q` beyond; `N_-` mirrors it with
/// `[N_-(j-1, i), E_{j-1}]_{q^-1}` below the diagonal.
pub fn build_npm(n: usize) -> Result<(AlgMatrix, AlgMatrix)> {
    check_n(n)?;
    let (q, qi) = (QExpr::q(), QExpr::q_pow(-1, 1));
    let rank = n as u8;
    let mut np = AlgMatrix::zeros(n);
    let mut nm = AlgMatrix::zeros(n);
    for i in 1..n {
        np.set(i, i + 1, P::gen(Generator::F(i as u8)).with_rank(rank));
        nm.set(i + 1, i, P::gen(Generator::E(i as u8)).with_rank(rank));
    }
    for width in 2..n {
        for i in 1..=n - width {
            let j = i + width;
            let f = P::gen(Generator::F((j - 1) as u8));
            np.set(i, j, P::q_commutator(&f, np.at(i, j - 1), &q));
            let e = P::gen(Generator::E((j - 1) as u8));
            nm.set(j, i, P::q_commutator(nm.at(j - 1, i), &e, &qi));
        }
    }
    Ok((np, nm))
}

/// `M_+ = (1 - lambda N_+) D`, `M_- = D^-1 (1 + lambda N_-)`.
pub fn build_mpm(n: usize) -> Result<(AlgMatrix, AlgMatrix)> {
    let (np, nm) = build_npm(n)?;
    let id = AlgMatrix::identity(n);
    let mp = id.sub(&np.scale(&lambda())).mul(&build_d(n));
    let mm = build_d_inv(n).mul(&id.add(&nm.scale(&lambda())));
    Ok((mp, mm))
}

/// Inverse of `1 + N` for strictly triangular `N`, as the finite sum
/// `sum_{j < n} (-N)^j`. The product with the input is the identity in the
/// free algebra.
pub fn invert_unipotent(m: &AlgMatrix) -> Result<AlgMatrix> {
    let n = m.n();
    let id = AlgMatrix::identity(n);
    let nil = m.sub(&id);
    let strict = nil.diag().iter().all(P::is_zero)
        && (nil.is_upper_triangular() || nil.is_lower_triangular());
    if !strict {
        return Err(Error::NotTriangular);
    }
    let minus = nil.scale(&QExpr::int(-1));
    let mut acc = id.clone();
    let mut power = id;
    for _ in 1..n {
        power = power.mul(&minus);
        acc = acc.add(&power);
    }
    Ok(acc)
}

/// Prefactor `q^{1/n - n}` of the factorized monodromy matrix.
pub fn m_prefactor(n: usize) -> QExpr {
    let nn = n as i64;
    QExpr::q_rat(Rational64::new(1, nn) - Rational64::from_integer(nn))
}

/// `M = q^{1/n - n} M_+ M_-^-1` with `M_-^-1 = (1 + lambda N_-)^-1 D`.
pub fn build_m(n: usize) -> Result<AlgMatrix> {
    let (mp, _) = build_mpm(n)?;
    let (_, nm) = build_npm(n)?;
    let unip = AlgMatrix::identity(n).add(&nm.scale(&lambda()));
    let mm_inv = invert_unipotent(&unip)?.mul(&build_d(n));
    Ok(mp.mul(&mm_inv).scale(&m_prefactor(n)))
}

/// `M_-^-1 = (1 + lambda N_-)^-1 D`.
pub fn build_mm_inverse(n: usize) -> Result<AlgMatrix> {
    let (_, nm) = build_npm(n)?;
    let unip = AlgMatrix::identity(n).add(&nm.scale(&lambda()));
    Ok(invert_unipotent(&unip)?.mul(&build_d(n)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncalg::{cartan_system, normal_form, sl2_system};
    use Generator::*;

    fn q(num: i64, den: i64) -> QExpr {
        QExpr::q_pow(num, den)
    }

    #[test]
    fn d_for_small_n() {
        let d2 = build_d(2);
        assert_eq!(d2.at(1, 1), &P::gen(KInv(1)));
        assert_eq!(d2.at(2, 2), &P::gen(K(1)));
        let d3 = build_d(3);
        assert_eq!(d3.at(1, 1), &P::gen(KInv(1)));
        assert_eq!(d3.at(2, 2), &P::word(&[K(1), KInv(2)]));
        assert_eq!(d3.at(3, 3), &P::gen(K(2)));
    }

    #[test]
    fn det_d_telescopes() {
        for n in 2..=6 {
            let prod = build_d(n).diag().iter().fold(P::one(), |acc, d| acc.mul(d));
            assert_eq!(normal_form(&prod, &cartan_system(n)).unwrap(), P::one());
        }
    }

    #[test]
    fn n_matrices_for_n2_and_n3() {
        let (np, nm) = build_npm(2).unwrap();
        assert_eq!(np.at(1, 2), &P::gen(F(1)));
        assert_eq!(nm.at(2, 1), &P::gen(E(1)));
        assert_eq!(np.entries().filter(|(_, e)| !e.is_zero()).count(), 1);

        let (np, nm) = build_npm(3).unwrap();
        let (f1, f2, e1, e2) = (P::gen(F(1)), P::gen(F(2)), P::gen(E(1)), P::gen(E(2)));
        assert_eq!(np.at(1, 2), &f1);
        assert_eq!(np.at(2, 3), &f2);
        assert_eq!(np.at(1, 3), &P::q_commutator(&f2, &f1, &q(1, 1)));
        assert_eq!(nm.at(2, 1), &e1);
        assert_eq!(nm.at(3, 2), &e2);
        assert_eq!(nm.at(3, 1), &P::q_commutator(&e1, &e2, &q(-1, 1)));
    }

    #[test]
    fn n4_corner_entry() {
        let (np, _) = build_npm(4).unwrap();
        let f = |i| P::gen(F(i));
        let inner = P::q_commutator(&f(2), &f(1), &q(1, 1));
        assert_eq!(np.at(1, 4), &P::q_commutator(&f(3), &inner, &q(1, 1)));
    }

    #[test]
    fn unsupported_n() {
        assert!(matches!(build_npm(5), Err(Error::UnsupportedRank(5, _))));
        assert!(build_m(1).is_err());
    }

    #[test]
    fn mpm_shape_for_n2() {
        let (mp, mm) = build_mpm(2).unwrap();
        let lam = QExpr::lambda();
        assert_eq!(mp.at(1, 2), &P::word(&[F(1), K(1)]).scale(&lam.neg()));
        assert_eq!(mm.at(2, 1), &P::word(&[KInv(1), E(1)]).scale(&lam));
        assert!(mp.is_upper_triangular() && mm.is_lower_triangular());
        assert_eq!(mp.diag(), build_d(2).diag());
        // x_i y_i = -lambda^2 for x = -lambda, y = lambda
        assert_eq!(lam.neg() * &lam, (&lam * &lam).neg());
    }

    #[test]
    fn diag_of_mpm_is_d_for_all_tables() {
        for n in 2..=4 {
            let (mp, mm) = build_mpm(n).unwrap();
            assert_eq!(mp.diag(), build_d(n).diag());
            assert_eq!(mm.diag(), build_d_inv(n).diag());
            assert!(mp.is_upper_triangular());
            assert!(mm.is_lower_triangular());
        }
    }

    #[test]
    fn unipotent_inverse_is_exact_in_free_algebra() {
        for n in 2..=4 {
            let (np, nm) = build_npm(n).unwrap();
            for nil in [np.scale(&QExpr::lambda()), nm.scale(&QExpr::lambda())] {
                let u = AlgMatrix::identity(n).add(&nil);
                let inv = invert_unipotent(&u).unwrap();
                assert_eq!(u.mul(&inv), AlgMatrix::identity(n));
                assert_eq!(inv.mul(&u), AlgMatrix::identity(n));
            }
        }
    }

    #[test]
    fn unipotent_rank2_is_one_step() {
        let (_, nm) = build_npm(2).unwrap();
        let lam = QExpr::lambda();
        let u = AlgMatrix::identity(2).add(&nm.scale(&lam));
        let expect = AlgMatrix::identity(2).sub(&nm.scale(&lam));
        assert_eq!(invert_unipotent(&u).unwrap(), expect);
    }

    #[test]
    fn non_triangular_rejected() {
        let mut m = AlgMatrix::identity(2);
        m.set(1, 2, P::gen(F(1)));
        m.set(2, 1, P::gen(E(1)));
        assert_eq!(invert_unipotent(&m), Err(Error::NotTriangular));
    }

    #[test]
    fn monodromy_entries_for_n2() {
        // Reduced with the sl2 rules; K = k^2.
        let m = build_m(2).unwrap();
        let rs = sl2_system();
        let nf = |x: &P| normal_form(&x.to_ratfun(), &rs).unwrap();
        let lam = QExpr::lambda();
        let big_k = P::word(&[K(1), K(1)]);
        let big_k_inv = P::word(&[KInv(1), KInv(1)]);
        let fe = P::word(&[F(1), E(1)]);

        let m11 = fe
            .scale(&(&lam * &lam))
            .add(&big_k_inv.scale(&q(-1, 1)))
            .scale(&q(-1, 2));
        let m21 = P::gen(E(1)).scale(&lam).scale(&q(-1, 2)).neg();
        // q^{-3/2} K and -q^{-3/2} lambda F K from the q^{-3/2} M_+ M_-^-1 product
        let m22 = big_k.scale(&q(-3, 2));
        let m12 = P::word(&[F(1), K(1), K(1)])
            .scale(&lam)
            .scale(&q(-3, 2))
            .neg();

        assert_eq!(nf(m.at(1, 1)), nf(&m11));
        assert_eq!(nf(m.at(2, 1)), nf(&m21));
        assert_eq!(nf(m.at(2, 2)), nf(&m22));
        assert_eq!(nf(m.at(1, 2)), nf(&m12));
    }
}

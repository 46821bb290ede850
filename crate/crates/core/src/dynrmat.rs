//! The diagonal monodromy `M_p`, `q^{2σ}`, the rank-two dynamical
//! R-matrix and the vacuum weights.
//!
//! Entries live in the commutative field of fractions in `q`, `w = q^p`
//! and `u = q^{α(p)}`; for general `n` the diagonal monodromy uses
//! independent symbols `t_i = q^{p_i}` with `t_n = (t_1 ... t_{n-1})^-1`.

use num_complex::Complex64;
use num_rational::Rational64;

use crate::backend::{Backend, Exact, Verdict};
use crate::coeff::{Aux, EvalPoint, Mono, QExpr, RatFun};
use crate::error::{Error, Result};
use crate::rmat::TensorOp;
use crate::sparse::SparseMat;

pub type DynTensorOp = TensorOp<RatFun>;

/// Largest `n` with enough auxiliary symbols for independent `p_i`.
pub const MAX_MP_N: usize = 4;

/// `t_i = q^{p_i}`, eliminating `t_n` through `Π t_i = 1`.
pub fn t_symbol(i: usize, n: usize) -> QExpr {
    if i < n {
        QExpr::aux(Aux::t(i), 1)
    } else {
        let mut m = Mono::one();
        for j in 1..n {
            m.aux[Aux::t(j) as usize] = -1;
        }
        QExpr::mono(m)
    }
}

/// `M_p = q^{1-1/n} diag(t_1^-2, ..., t_n^-2)`.
pub fn build_mp(n: usize) -> Result<DynTensorOp> {
    if !(2..=MAX_MP_N).contains(&n) {
        return Err(Error::UnsupportedRank(
            n,
            "diagonal monodromy is built for 2 <= n <= 4",
        ));
    }
    let nn = n as i64;
    let pre = QExpr::q_rat(Rational64::new(nn - 1, nn));
    let entries = (1..=n)
        .map(|i| {
            let t = t_symbol(i, n);
            RatFun::from_qexpr(pre.mul(&t.pow_term(-2).expect("monomial")))
        })
        .collect();
    TensorOp::new(n, 1, SparseMat::diag(entries))
}

/// `M_p^-1`.
pub fn build_mp_inv(n: usize) -> Result<DynTensorOp> {
    let mp = build_mp(n)?;
    let entries = (0..n)
        .map(|i| mp.mat().get(i, i).inv())
        .collect::<Result<Vec<_>>>()?;
    TensorOp::new(n, 1, SparseMat::diag(entries))
}

/// Rewrites `t_1` as `w^{1/2}` (that is, `p_1 = p/2`, `p_2 = -p/2`);
/// fails on odd powers.
pub fn specialize_n2(x: &RatFun) -> Result<RatFun> {
    let f = |m: &Mono| {
        let e = m.aux_exp(Aux::T1);
        if e % 2 != 0 {
            return None;
        }
        let mut out = *m;
        out.aux[Aux::T1 as usize] = 0;
        out.aux[Aux::W as usize] += e / 2;
        Some(out)
    };
    let map = |p: &QExpr| -> Result<QExpr> {
        let mut terms = Vec::new();
        for (m, c) in p.terms() {
            terms.push((
                f(m).ok_or_else(|| Error::InvalidConfig(format!("odd power of t1 in {p}")))?,
                *c,
            ));
        }
        Ok(QExpr::from_terms(terms))
    };
    RatFun::new(map(x.num())?, map(x.den())?)
}

/// `q^{1/2} diag(w^-1, w)`.
pub fn mp_n2_expected() -> DynTensorOp {
    let h = QExpr::q_pow(1, 2);
    let entries = vec![
        RatFun::from_qexpr(h.mul(&QExpr::aux(Aux::W, -1))),
        RatFun::from_qexpr(h.mul(&QExpr::aux(Aux::W, 1))),
    ];
    TensorOp::new(2, 1, SparseMat::diag(entries)).expect("shape")
}

/// `q^{2σ_12}`: diagonal with `q^{2(δ_ij - 1/n)}` at `(i, j)`.
pub fn build_q2sigma(n: usize) -> TensorOp {
    let nn = n as i64;
    let entries = (0..n * n)
        .map(|k| {
            let d = if k / n == k % n { 1 } else { 0 };
            QExpr::q_rat(Rational64::new(2 * (d * nn - 1), nn))
        })
        .collect();
    TensorOp::new(n, 2, SparseMat::diag(entries)).expect("shape")
}

/// `[p + j] = (q^j w - q^-j w^-1) / (q - q^-1)`.
pub fn bracket_p(j: i64) -> RatFun {
    let num = QExpr::q_pow(j, 1)
        .mul(&QExpr::aux(Aux::W, 1))
        .sub(&QExpr::q_pow(-j, 1).mul(&QExpr::aux(Aux::W, -1)));
    RatFun::new(num, QExpr::lambda()).expect("nonzero λ")
}

fn div(a: &RatFun, b: &RatFun) -> RatFun {
    a.div(b).expect("nonzero bracket")
}

/// `Ř(p)` for `sign = +1`, `Ř^-1(p)` for `sign = -1` (rank two).
pub fn build_rp(sign: i32) -> Result<DynTensorOp> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidConfig(format!("sign must be ±1, got {sign}")));
    }
    let s = sign as i64;
    let pre = RatFun::from_qexpr(QExpr::q_pow(s, 2));
    let bp = bracket_p(0);
    let w = |e: i64| RatFun::from_qexpr(QExpr::aux(Aux::W, e as i32));
    let u = |e: i32| RatFun::from_qexpr(QExpr::aux(Aux::U, e));
    let corner = RatFun::from_qexpr(QExpr::q_pow(-s, 1));
    let trip = [
        (0, 0, corner.clone()),
        (1, 1, div(&w(-s), &bp)),
        (1, 2, u(-1).mul(&div(&bracket_p(-1), &bp))),
        (2, 1, u(1).mul(&div(&bracket_p(1), &bp))),
        (2, 2, div(&w(s), &bp).neg()),
        (3, 3, corner),
    ];
    let m = SparseMat::from_triplets(4, 4, trip.into_iter().map(|(r, c, v)| (r, c, pre.mul(&v))));
    TensorOp::new(2, 2, m)
}

/// `q^{2σ} M_{p2} Ř(p) M_{p1}^-1` at rank two, with `M_p` written in `w`.
pub fn dynamical_rhs() -> Result<DynTensorOp> {
    let mp = specialize_op(&build_mp(2)?)?;
    let mp_inv = specialize_op(&build_mp_inv(2)?)?;
    let id = SparseMat::<RatFun>::identity(2);
    let mp2 = id.kron(mp.mat());
    let mp1_inv = mp_inv.mat().kron(&id);
    let q2s = build_q2sigma(2)
        .mat()
        .map(|x| RatFun::from_qexpr(x.clone()));
    let rp = build_rp(1)?;
    TensorOp::new(2, 2, q2s.mul(&mp2).mul(rp.mat()).mul(&mp1_inv))
}

fn specialize_op(op: &DynTensorOp) -> Result<DynTensorOp> {
    op.try_map(specialize_n2)
}

fn verdict_exact(rep: &str, what: &str, residual: &SparseMat<RatFun>) -> Verdict {
    match residual.first_nonzero() {
        None => Verdict::pass(rep),
        Some((r, c, v)) => Verdict::fail(rep, format!("{what}: residual entry ({r},{c}) = {v}")),
    }
}

fn lifted<B: Backend>(b: &B, m: &SparseMat<RatFun>) -> Result<SparseMat<B::S>> {
    m.try_map(|x| b.lift_ratfun(x))
}

/// `Ř^-1(p) = q^{2σ} M_{p2} Ř(p) M_{p1}^-1`, identically in the formal
/// unit `u`. The numeric backend evaluates the factors, then multiplies.
pub fn check_dynamical_identity<B: Backend>(b: &B) -> Result<Verdict> {
    let lhs = build_rp(-1)?;
    if b.name() == Exact.name() {
        let rhs = dynamical_rhs()?;
        return Ok(verdict_exact(
            DYN_P,
            "Ř^-1(p) - q^2σ Mp2 Ř(p) Mp1^-1",
            &lhs.mat().sub(rhs.mat()),
        ));
    }
    let mp = specialize_op(&build_mp(2)?)?;
    let mp_inv = specialize_op(&build_mp_inv(2)?)?;
    let id = SparseMat::<B::S>::identity(2);
    let mp2 = id.kron(&lifted(b, mp.mat())?);
    let mp1_inv = lifted(b, mp_inv.mat())?.kron(&id);
    let q2s = b.lift_mat(build_q2sigma(2).mat());
    let rp = lifted(b, build_rp(1)?.mat())?;
    let rhs = q2s.mul(&mp2).mul(&rp).mul(&mp1_inv);
    let res = lifted(b, lhs.mat())?.sub(&rhs);
    Ok(Verdict::from_residual(
        b,
        DYN_P,
        "Ř^-1(p) - q^2σ Mp2 Ř(p) Mp1^-1",
        &res,
    ))
}

/// Representation label for the dynamical sector.
pub const DYN: &str = "dynamical";

/// Label for entries in the single weight variable `p = p1 - p2`.
pub const DYN_P: &str = "dynamical p=p1-p2";

/// `Ř(p) Ř^-1(p) = 1`, plus finiteness of `Ř(p)` at the vacuum value
/// `w = q`.
pub fn check_rp_inverse<B: Backend>(b: &B) -> Result<Verdict> {
    let (rp, rm) = (build_rp(1)?, build_rp(-1)?);
    let id = SparseMat::<RatFun>::identity(4);
    let mut v = if b.name() == Exact.name() {
        let a = verdict_exact(DYN_P, "Ř(p) Ř^-1(p) - 1", &rp.mat().mul(rm.mat()).sub(&id));
        let c = verdict_exact(DYN_P, "Ř^-1(p) Ř(p) - 1", &rm.mat().mul(rp.mat()).sub(&id));
        Verdict::merge(DYN_P, vec![a, c])
    } else {
        let (x, y) = (lifted(b, rp.mat())?, lifted(b, rm.mat())?);
        let res = x.mul(&y).sub(&SparseMat::identity(4));
        Verdict::from_residual(b, DYN_P, "Ř(p) Ř^-1(p) - 1", &res)
    };
    if v.pass {
        let at_vacuum = rp.mat().try_map(|x| substitute_w(x, &QExpr::q()));
        if let Err(e) = at_vacuum {
            v = Verdict::fail(
                DYN_P,
                format!("Ř(p) singular at the vacuum value w = q: {e}"),
            );
        }
    }
    Ok(v)
}

/// Replaces `w` by a monomial value.
pub fn substitute_w(x: &RatFun, value: &QExpr) -> Result<RatFun> {
    let (vm, vc) = value
        .as_term()
        .ok_or_else(|| Error::InvalidConfig("w must map to a monomial".into()))?;
    let f = |m: &Mono| {
        let e = m.aux_exp(Aux::W);
        let mut out = *m;
        out.aux[Aux::W as usize] = 0;
        QExpr::mono(out).mul(&QExpr::term(vm.pow(e), vc.pow(e)))
    };
    let num = x.num().map_monomials(f);
    let den = x.den().map_monomials(f);
    RatFun::new(num, den)
}

/// `M_p` at rank two matches `q^{1/2} diag(w^-1, w)`, and the product of
/// the diagonal entries is `q^{n-1}` for every rank.
pub fn check_mp_spec<B: Backend>(n: usize, b: &B) -> Result<Verdict> {
    let mp = build_mp(n)?;
    let prod = (0..n).fold(RatFun::one(), |acc, i| acc.mul(&mp.mat().get(i, i)));
    let want = RatFun::from_qexpr(QExpr::q_pow(n as i64 - 1, 1));
    let mut parts = vec![Verdict::from_bool(DYN, prod == want, || {
        format!("Π diag M_p = {prod}")
    })];
    if n == 2 {
        let spec = specialize_op(&mp)?;
        if b.name() == Exact.name() {
            parts.push(verdict_exact(
                DYN,
                "M_p - q^1/2 diag(w^-1, w)",
                &spec.mat().sub(mp_n2_expected().mat()),
            ));
        } else {
            let res = lifted(b, spec.mat())?.sub(&lifted(b, mp_n2_expected().mat())?);
            parts.push(Verdict::from_residual(
                b,
                DYN,
                "M_p - q^1/2 diag(w^-1, w)",
                &res,
            ));
        }
    }
    Ok(Verdict::merge(DYN, parts))
}

/// Barycentric vacuum weights `p_i = (n+1)/2 - i`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub p0: Vec<Rational64>,
}

impl WeightVector {
    pub fn sum(&self) -> Rational64 {
        self.p0.iter().sum()
    }

    pub fn steps_are_one(&self) -> bool {
        self.p0
            .windows(2)
            .all(|w| w[0] - w[1] == Rational64::from_integer(1))
    }
}

pub fn vacuum_weights(n: usize) -> WeightVector {
    let nn = n as i64;
    WeightVector {
        p0: (1..=nn)
            .map(|i| Rational64::new(nn + 1, 2) - Rational64::from_integer(i))
            .collect(),
    }
}

pub fn check_vacuum_weights(n: usize) -> Verdict {
    let v = vacuum_weights(n);
    let ok = v.sum() == Rational64::from_integer(0) && v.steps_are_one();
    Verdict::from_bool(DYN, ok, || format!("vacuum weights {:?}", v.p0))
}

/// Default numeric specialization of the dynamical sector.
pub fn default_point(h: u32) -> EvalPoint {
    EvalPoint::new(h, Complex64::new(2.0, 0.0), Complex64::new(1.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::Numeric;

    fn q(a: i64, b: i64) -> QExpr {
        QExpr::q_pow(a, b)
    }

    #[test]
    fn mp_rank_two() {
        let spec = specialize_op(&build_mp(2).unwrap()).unwrap();
        assert_eq!(spec, mp_n2_expected());
    }

    #[test]
    fn mp_product() {
        for n in 2..=4 {
            assert!(check_mp_spec(n, &Exact).unwrap().pass);
        }
        assert!(build_mp(5).is_err());
    }

    #[test]
    fn q2sigma_values() {
        let s2 = build_q2sigma(2);
        assert_eq!(
            s2.mat(),
            &SparseMat::diag(vec![q(1, 1), q(-1, 1), q(-1, 1), q(1, 1)])
        );
        let s3 = build_q2sigma(3);
        assert_eq!(s3.entry(&[2, 2], &[2, 2]), q(4, 3));
        let tr: Rational64 = (0..9).map(|i| s3.mat().get(i, i).at_one()).sum();
        assert_eq!(tr, Rational64::from_integer(9));
    }

    #[test]
    fn rp_entries() {
        let rp = build_rp(1).unwrap();
        assert_eq!(rp.mat().get(0, 0), RatFun::from_qexpr(q(-1, 2)));
        let expect = RatFun::from_qexpr(q(1, 2).mul(&QExpr::aux(Aux::U, -1)))
            .mul(&div(&bracket_p(-1), &bracket_p(0)));
        assert_eq!(rp.mat().get(1, 2), expect);
        assert!(build_rp(0).is_err());
    }

    #[test]
    fn dynamical_identity_holds() {
        assert!(check_dynamical_identity(&Exact).unwrap().pass);
        assert!(check_rp_inverse(&Exact).unwrap().pass);
    }

    #[test]
    fn identity_entries() {
        let rhs = dynamical_rhs().unwrap();
        assert_eq!(rhs.mat().get(0, 0), RatFun::from_qexpr(q(1, 2)));
        // q^-1/2 w / [p]
        let want = RatFun::from_qexpr(q(-1, 2).mul(&QExpr::aux(Aux::W, 1)))
            .mul(&bracket_p(0).inv().unwrap());
        assert_eq!(rhs.mat().get(1, 1), want);
    }

    #[test]
    fn numeric_agrees() {
        for u in [1.0, 3.0] {
            let b = Numeric::new(default_point(5).with_aux(Aux::U, Complex64::new(u, 0.0)));
            let v = check_dynamical_identity(&b).unwrap();
            assert!(v.pass && v.residual.unwrap() < 1e-12, "{v:?}");
            assert!(check_rp_inverse(&b).unwrap().pass);
        }
    }

    #[test]
    fn weights() {
        let w3 = vacuum_weights(3);
        assert_eq!(w3.p0, vec![1.into(), 0.into(), (-1).into()]);
        assert_eq!(
            vacuum_weights(2).p0,
            vec![Rational64::new(1, 2), Rational64::new(-1, 2)]
        );
        for n in 2..=8 {
            assert!(check_vacuum_weights(n).pass);
        }
    }

    #[test]
    fn vacuum_specialization_is_finite() {
        let rp = build_rp(1).unwrap();
        let at = rp.mat().try_map(|x| substitute_w(x, &QExpr::q())).unwrap();
        // [p] -> [1] = 1, so the (2,2) entry becomes q^1/2 q^-1
        assert_eq!(at.get(1, 1), RatFun::from_qexpr(q(-1, 2)));
    }
}

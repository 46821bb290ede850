use crate::backend::{Backend, Exact, Verdict};
use crate::coeff::{qfact, QExpr, RatFun};
use crate::error::Result;
use crate::ncalg::{cartan_system, normal_form, sl2_system, Generator, NCElem};
use crate::ring::Ring;
use crate::sparse::SparseMat;
use crate::uq::{big_k, build_m, build_mpm, AlgMatrix, Rep};

use super::eps::{eps_contraction_holds, q_eps};
use super::lift::{place_matrix, place_op};
use super::qdet::{
    eval_free, qdet_free, qdet_free_n2_expected, qdet_free_numerator, reversed_contraction,
    substitute_matrix,
};
use super::tensor::{
    dj_rmatrix, embed, embed_pair, permutation, r21, r_minus, r_plus, rhat, rhat_inv, TensorOp,
};

type P = NCElem<QExpr>;

/// Label for identities that hold without a representation.
pub const SYMBOLIC: &str = "symbolic";
/// Label for identities on the bare tensor legs.
pub const LEGS: &str = "legs";

fn lifted<B: Backend>(b: &B, op: &TensorOp) -> SparseMat<B::S> {
    b.lift_mat(op.mat())
}

/// `R_12 R_13 R_23 = R_23 R_13 R_12` on three legs.
pub fn check_qybe<B: Backend>(n: usize, b: &B) -> Result<Verdict> {
    let r = dj_rmatrix(n);
    let r12 = lifted(b, &embed_pair(&r, 1, 2, 3)?);
    let r13 = lifted(b, &embed_pair(&r, 1, 3, 3)?);
    let r23 = lifted(b, &embed_pair(&r, 2, 3, 3)?);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    Ok(Verdict::from_residual(
        b,
        LEGS,
        "R12 R13 R23 - R23 R13 R12",
        &lhs.sub(&rhs),
    ))
}

/// `Ř_1 Ř_2 Ř_1 = Ř_2 Ř_1 Ř_2`.
pub fn check_braid<B: Backend>(n: usize, b: &B) -> Result<Verdict> {
    let rh = rhat(n);
    let r1 = lifted(b, &embed(&rh, 1, 3)?);
    let r2 = lifted(b, &embed(&rh, 2, 3)?);
    let res = r1.mul(&r2).mul(&r1).sub(&r2.mul(&r1).mul(&r2));
    Ok(Verdict::from_residual(b, LEGS, "Ř1 Ř2 Ř1 - Ř2 Ř1 Ř2", &res))
}

/// `Ř_1 Ř_3 = Ř_3 Ř_1` on four legs.
pub fn check_far_commute<B: Backend>(n: usize, b: &B) -> Result<Verdict> {
    let rh = rhat(n);
    let r1 = lifted(b, &embed(&rh, 1, 4)?);
    let r3 = lifted(b, &embed(&rh, 3, 4)?);
    let res = r1.mul(&r3).sub(&r3.mul(&r1));
    Ok(Verdict::from_residual(b, LEGS, "Ř1 Ř3 - Ř3 Ř1", &res))
}

/// `Σ ε_α ε^α = [n]!`; the numeric backend compares the evaluated values.
pub fn check_eps<B: Backend>(n: usize, b: &B) -> Verdict {
    if b.name() == Exact.name() {
        return Verdict::from_bool(SYMBOLIC, eps_contraction_holds(n), || {
            format!("ε·ε = {} differs from [{n}]!", q_eps(n).contract())
        });
    }
    let diff = q_eps(n).contract().sub(&qfact(n as u32));
    Verdict::from_residual(
        b,
        SYMBOLIC,
        "ε·ε - [n]!",
        &SparseMat::diag(vec![b.lift(&diff)]),
    )
}

/// `Ř = P R^-` and `P R^+` are exact inverses, with `R^+ = R_21^-1`.
pub fn check_rpm_conventions(n: usize) -> bool {
    let p = permutation(n);
    let from_minus = p.mul(&r_minus(n));
    let from_plus = p.mul(&r_plus(n));
    r21(n).mul(&r_plus(n)).is_identity()
        && from_minus.mul(&from_plus).is_identity()
        && from_plus == rhat_inv(n)
}

struct BigSpace<S> {
    n: usize,
    dim: usize,
    r12: SparseMat<S>,
    r21: SparseMat<S>,
    rhat: SparseMat<S>,
}

impl<S: Ring> BigSpace<S> {
    fn new<B: Backend<S = S>>(n: usize, dim: usize, b: &B) -> Self {
        BigSpace {
            n,
            dim,
            r12: place_op(&lifted(b, &dj_rmatrix(n)), dim),
            r21: place_op(&lifted(b, &r21(n)), dim),
            rhat: place_op(&lifted(b, &rhat(n)), dim),
        }
    }

    fn leg(&self, entries: &[Vec<SparseMat<S>>], leg: usize) -> SparseMat<S> {
        debug_assert_eq!(entries.len(), self.n);
        debug_assert_eq!(entries[0][0].rows(), self.dim);
        place_matrix(entries, leg, 2)
    }
}

fn eval_entries<B: Backend>(
    b: &B,
    rep: &Rep<B::S>,
    m: &AlgMatrix,
) -> Result<Vec<Vec<SparseMat<B::S>>>> {
    rep.eval_matrix_with(m, |x| b.lift(x))
}

/// The three relations `R M_{±2} M_{±1} = M_{±1} M_{±2} R` and
/// `R M_{+2} M_{-1} = M_{-1} M_{+2} R`, one verdict per representation.
pub fn check_exchange_mpm<B: Backend>(n: usize, b: &B, reps: &[Rep]) -> Result<Vec<Verdict>> {
    let (mp, mm) = build_mpm(n)?;
    let mut out = Vec::new();
    for rep in reps {
        let r = b.lift_rep(rep);
        let space = BigSpace::new(n, r.dim(), b);
        let (ep, em) = (eval_entries(b, &r, &mp)?, eval_entries(b, &r, &mm)?);
        let (p1, p2, m1, m2) = (
            space.leg(&ep, 1),
            space.leg(&ep, 2),
            space.leg(&em, 1),
            space.leg(&em, 2),
        );
        let rr = &space.r12;
        let parts = vec![
            Verdict::from_residual(
                b,
                rep.label(),
                "R M+2 M+1 - M+1 M+2 R",
                &rr.mul(&p2).mul(&p1).sub(&p1.mul(&p2).mul(rr)),
            ),
            Verdict::from_residual(
                b,
                rep.label(),
                "R M-2 M-1 - M-1 M-2 R",
                &rr.mul(&m2).mul(&m1).sub(&m1.mul(&m2).mul(rr)),
            ),
            Verdict::from_residual(
                b,
                rep.label(),
                "R M+2 M-1 - M-1 M+2 R",
                &rr.mul(&p2).mul(&m1).sub(&m1.mul(&p2).mul(rr)),
            ),
        ];
        out.push(Verdict::merge(rep.label(), parts));
    }
    Ok(out)
}

/// `M_1 R_12 M_2 R_21 = R_12 M_2 R_21 M_1` and
/// `Ř M_2 Ř M_2 = M_2 Ř M_2 Ř` for `M = q^{1/n-n} M_+ M_-^-1`.
pub fn check_reflection<B: Backend>(n: usize, b: &B, reps: &[Rep]) -> Result<Vec<Verdict>> {
    let m = build_m(n)?;
    let mut out = Vec::new();
    for rep in reps {
        let r = b.lift_rep(rep);
        let space = BigSpace::new(n, r.dim(), b);
        let e = eval_entries(b, &r, &m)?;
        let (m1, m2) = (space.leg(&e, 1), space.leg(&e, 2));
        let (r12, r21, rh) = (&space.r12, &space.r21, &space.rhat);
        let lhs = m1.mul(r12).mul(&m2).mul(r21);
        let rhs = r12.mul(&m2).mul(r21).mul(&m1);
        let lhs_hat = rh.mul(&m2).mul(rh).mul(&m2);
        let rhs_hat = m2.mul(rh).mul(&m2).mul(rh);
        let parts = vec![
            Verdict::from_residual(
                b,
                rep.label(),
                "M1 R12 M2 R21 - R12 M2 R21 M1",
                &lhs.sub(&rhs),
            ),
            Verdict::from_residual(
                b,
                rep.label(),
                "Ř M2 Ř M2 - M2 Ř M2 Ř",
                &lhs_hat.sub(&rhs_hat),
            ),
        ];
        out.push(Verdict::merge(rep.label(), parts));
    }
    Ok(out)
}

fn scalar_identity_residual<B: Backend>(
    b: &B,
    x: &SparseMat<B::S>,
    target: &QExpr,
) -> SparseMat<B::S> {
    x.sub(&SparseMat::scalar(x.rows(), b.lift(target)))
}

/// `det_q(M_±) = 1`: exactly over the Cartan rules (only the diagonal
/// products survive triangularity), then in each representation.
pub fn check_qdet_mpm<B: Backend>(n: usize, b: &B, reps: &[Rep]) -> Result<Vec<Verdict>> {
    let (mp, mm) = build_mpm(n)?;
    let nf_target = qfact(n as u32);
    let mut out = Vec::new();
    let nums = [
        ("M+", reversed_contraction(&mp)),
        ("M-", reversed_contraction(&mm)),
    ];
    if b.name() == Exact.name() {
        let cs = cartan_system::<QExpr>(n);
        let mut parts = Vec::new();
        for (name, num) in &nums {
            let red = normal_form(num, &cs)?;
            let ok = red.as_scalar().is_some_and(|c| c == nf_target) && red.num_terms() == 1;
            parts.push(Verdict::from_bool(SYMBOLIC, ok, || {
                format!("[{n}]! det_q({name}) reduces to {red}")
            }));
        }
        out.push(Verdict::merge(SYMBOLIC, parts));
    }
    for rep in reps {
        let r = b.lift_rep(rep);
        let mut parts = Vec::new();
        for (name, num) in &nums {
            let img = r.eval_with(num, |x| b.lift(x))?;
            let what = format!("[{n}]! det_q({name}) - [{n}]!");
            parts.push(Verdict::from_residual(
                b,
                rep.label(),
                &what,
                &scalar_identity_residual(b, &img, &nf_target),
            ));
        }
        out.push(Verdict::merge(rep.label(), parts));
    }
    Ok(out)
}

/// `2 q^-1 - λ^2 [E,F] K + λ K^2` with `K = k^2`.
pub fn qdet_m_n2_intermediate() -> P {
    use Generator::*;
    let e = P::gen(E(1));
    let f = P::gen(F(1));
    let kk = big_k(1, 2);
    let lam = QExpr::lambda();
    P::scalar(QExpr::q_pow(-1, 1).scale(2.into()))
        .sub(&P::commutator(&e, &f).mul(&kk).scale(&lam.mul(&lam)))
        .add(&kk.mul(&kk).scale(&lam))
}

/// Symbolic rank-two run: `[2] det_q(M)` reduces to the intermediate
/// expression and then to `[2]`. Returns the reduced numerator on failure.
pub fn qdet_m_symbolic_n2() -> Result<std::result::Result<(), String>> {
    let m = build_m(2)?;
    let num = substitute_matrix(&qdet_free_numerator(2)?, &m);
    let rs = sl2_system();
    let red = normal_form(&num.to_ratfun(), &rs)?;
    let mid = normal_form(&qdet_m_n2_intermediate().to_ratfun(), &rs)?;
    if red != mid {
        return Ok(Err(format!(
            "[2] det_q(M) reduces to {red}, not to the intermediate form {mid}"
        )));
    }
    let target = NCElem::<RatFun>::scalar(RatFun::from_qexpr(qfact(2)));
    if red != target {
        return Ok(Err(format!("[2] det_q(M) reduces to {red}, not [2]")));
    }
    Ok(Ok(()))
}

/// `det_q(M) = 1`, symbolically at `n = 2` and in each representation.
pub fn check_qdet_m<B: Backend>(n: usize, b: &B, reps: &[Rep]) -> Result<Vec<Verdict>> {
    let m = build_m(n)?;
    let num = qdet_free_numerator(n)?;
    let target = qfact(n as u32);
    let mut out = Vec::new();
    if n == 2 && b.name() == Exact.name() {
        out.push(match qdet_m_symbolic_n2()? {
            Ok(()) => Verdict::pass(SYMBOLIC),
            Err(w) => Verdict::fail(SYMBOLIC, w),
        });
    }
    for rep in reps {
        let r = b.lift_rep(rep);
        let entries = eval_entries(b, &r, &m)?;
        let img = eval_free(&num, &entries, |x| b.lift(x))?;
        let what = format!("[{n}]! det_q(M) - [{n}]!");
        out.push(Verdict::from_residual(
            b,
            rep.label(),
            &what,
            &scalar_identity_residual(b, &img, &target),
        ));
    }
    Ok(out)
}

/// Canonical text of `Ř` at `n = 2`.
pub fn rhat_n2_text() -> String {
    rhat(2).to_string()
}

/// Canonical text of `det_q(M)` over the free algebra at `n = 2`.
pub fn qdet_free_n2_text() -> Result<String> {
    Ok(format!("{}\n", qdet_free(2)?))
}

/// `det_q` over the free algebra at `n = 2` against the expected expansion
/// and its stored canonical text.
pub fn check_qdet_free_golden(golden: &str) -> Result<Verdict> {
    let got = qdet_free(2)?;
    if got != qdet_free_n2_expected() {
        return Ok(Verdict::fail(SYMBOLIC, format!("det_q = {got}")));
    }
    let text = qdet_free_n2_text()?;
    Ok(Verdict::from_bool(SYMBOLIC, text == golden, || {
        format!("canonical text changed: {}", text.trim_end())
    }))
}

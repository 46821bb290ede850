//! Inputs shared by the benchmarks.

use monodromy_core::ncalg::Generator::*;
use monodromy_core::uq::{rep_family, Rep};
use monodromy_core::{NCElem, QExpr, RatFun};

/// `(E F K)^3 F^2 E` over the fraction field, a word with many rewrites.
pub fn sl2_word() -> NCElem<RatFun> {
    let efk = NCElem::<RatFun>::word(&[E(1), F(1), K(1)]);
    efk.pow(3).mul(&NCElem::word(&[F(1), F(1), E(1)]))
}

/// `(q^1/2 + w - u^-1)^k` style expression with several aux symbols.
pub fn dense_qexpr(k: u32) -> QExpr {
    use monodromy_core::coeff::Aux;
    QExpr::q_pow(1, 2)
        .add(&QExpr::aux(Aux::W, 1))
        .sub(&QExpr::aux(Aux::U, -1))
        .pow(k)
}

pub fn reps(n: usize, degree: usize) -> Vec<Rep> {
    rep_family(n, degree).expect("representation family")
}

use num_complex::Complex64;
use num_traits::ToPrimitive;
use std::f64::consts::PI;

use super::qexpr::{Aux, Mono, QExpr, AUX};
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// A numeric specialization: `q = exp(-i pi / h)` plus values for the
/// auxiliary commuting symbols.
#[derive(Clone, Debug, PartialEq)]
pub struct EvalPoint {
    pub h: u32,
    pub aux: [Complex64; AUX],
}

impl EvalPoint {
    /// `w`, `u` as given; the `t_i` default to 1.
    pub fn new(h: u32, w: Complex64, u: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        EvalPoint {
            h,
            aux: [w, u, one, one, one],
        }
    }

    pub fn with_aux(mut self, a: Aux, v: Complex64) -> Self {
        self.aux[a as usize] = v;
        self
    }

    /// `q^r` on the principal branch, `exp(-i pi r / h)`.
    pub fn q_pow(&self, r: f64) -> Complex64 {
        Complex64::from_polar(1.0, -PI * r / self.h as f64)
    }

    pub fn mono(&self, m: &Mono) -> Complex64 {
        let r = m.q.to_f64().expect("finite exponent");
        let mut v = self.q_pow(r);
        for (base, &e) in self.aux.iter().zip(m.aux.iter()) {
            if e != 0 {
                v *= base.powi(e);
            }
        }
        v
    }
}

/// Numeric value of an exact expression at a root of unity.
pub fn eval_at_root(x: &QExpr, at: &EvalPoint) -> Complex64 {
    x.terms()
        .iter()
        .map(|(m, c)| at.mono(m) * c.to_f64().expect("finite coefficient"))
        .sum()
}

/// Denominators that vanish at the evaluation point are refused.
pub fn eval_ratfun(x: &RatFun, at: &EvalPoint) -> Result<Complex64> {
    let den = eval_at_root(x.den(), at);
    if den.norm() < 1e-12 {
        return Err(Error::NumericRefused(format!(
            "denominator {} vanishes at h = {}",
            x.den(),
            at.h
        )));
    }
    Ok(eval_at_root(x.num(), at) / den)
}

//! Scalar backends for identity checks: exact Laurent arithmetic, or
//! complex evaluation at a root of unity.

use num_complex::Complex64;

use crate::coeff::{eval_at_root, eval_ratfun, EvalPoint, QExpr, RatFun};
use crate::error::Result;
use crate::ring::Ring;
use crate::sparse::SparseMat;
use crate::uq::Rep;

/// Absolute per-entry tolerance of the numeric backend.
pub const NUMERIC_TOL: f64 = 1e-10;

pub trait Backend: Sync {
    type S: Ring;

    fn name(&self) -> &'static str;

    fn lift(&self, x: &QExpr) -> Self::S;

    fn lift_ratfun(&self, x: &RatFun) -> Result<Self::S>;

    fn lift_mat(&self, m: &SparseMat<QExpr>) -> SparseMat<Self::S> {
        m.map(|x| self.lift(x))
    }

    fn lift_rep(&self, r: &Rep) -> Rep<Self::S> {
        r.map(|x| self.lift(x))
    }

    /// Whether a residual counts as zero.
    fn negligible(&self, m: &SparseMat<Self::S>) -> bool;

    /// Largest residual magnitude, when the backend has one.
    fn residual(&self, m: &SparseMat<Self::S>) -> Option<f64> {
        m.max_magnitude()
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Exact;

impl Backend for Exact {
    type S = QExpr;

    fn name(&self) -> &'static str {
        "exact"
    }

    fn lift(&self, x: &QExpr) -> QExpr {
        x.clone()
    }

    fn lift_ratfun(&self, x: &RatFun) -> Result<QExpr> {
        x.as_qexpr().cloned().ok_or_else(|| {
            crate::error::Error::InvalidConfig(format!("{x} is not a Laurent polynomial"))
        })
    }

    fn negligible(&self, m: &SparseMat<QExpr>) -> bool {
        m.is_zero()
    }

    fn residual(&self, _: &SparseMat<QExpr>) -> Option<f64> {
        None
    }
}

#[derive(Clone, Debug)]
pub struct Numeric {
    pub point: EvalPoint,
    pub tol: f64,
}

impl Numeric {
    pub fn new(point: EvalPoint) -> Self {
        Numeric {
            point,
            tol: NUMERIC_TOL,
        }
    }
}

impl Backend for Numeric {
    type S = Complex64;

    fn name(&self) -> &'static str {
        "numeric"
    }

    fn lift(&self, x: &QExpr) -> Complex64 {
        eval_at_root(x, &self.point)
    }

    fn lift_ratfun(&self, x: &RatFun) -> Result<Complex64> {
        eval_ratfun(x, &self.point)
    }

    fn negligible(&self, m: &SparseMat<Complex64>) -> bool {
        m.max_magnitude().is_some_and(|r| r <= self.tol)
    }
}

/// Outcome of one identity in one representation (or one symbolic run).
#[derive(Clone, Debug, PartialEq)]
pub struct Verdict {
    pub rep: String,
    pub pass: bool,
    pub witness: Option<String>,
    pub residual: Option<f64>,
}

impl Verdict {
    pub fn pass(rep: &str) -> Self {
        Verdict {
            rep: rep.to_string(),
            pass: true,
            witness: None,
            residual: None,
        }
    }

    pub fn fail(rep: &str, witness: String) -> Self {
        Verdict {
            rep: rep.to_string(),
            pass: false,
            witness: Some(witness),
            residual: None,
        }
    }

    pub fn from_bool(rep: &str, ok: bool, witness: impl FnOnce() -> String) -> Self {
        if ok {
            Verdict::pass(rep)
        } else {
            Verdict::fail(rep, witness())
        }
    }

    /// Passes when `residual` is negligible; otherwise the largest (or
    /// first) offending entry is the witness.
    pub fn from_residual<B: Backend>(
        b: &B,
        rep: &str,
        what: &str,
        residual: &SparseMat<B::S>,
    ) -> Self {
        let mut v = if b.negligible(residual) {
            Verdict::pass(rep)
        } else {
            let w = match residual.worst_entry() {
                Some((r, c, s)) => format!("{what}: residual entry ({r},{c}) = {s}"),
                None => format!("{what}: residual not negligible"),
            };
            Verdict::fail(rep, w)
        };
        v.residual = b.residual(residual);
        v
    }

    /// Folds several residual checks for the same representation into one
    /// verdict: the first failure wins, residuals take the maximum.
    pub fn merge(rep: &str, parts: Vec<Verdict>) -> Self {
        let mut out = Verdict::pass(rep);
        for p in parts {
            out.residual = match (out.residual, p.residual) {
                (Some(a), Some(b)) => Some(a.max(b)),
                (a, b) => a.or(b),
            };
            if !p.pass && out.pass {
                out.pass = false;
                out.witness = p.witness;
            }
        }
        out
    }
}

//! Exact algebra for the quantum `SU(n)` WZNW monodromy matrix.
//!
//! The crate builds the triangular factors `M_+`, `M_-` of the monodromy
//! matrix from the generators of `U_q(sl(n))`, the Drinfeld-Jimbo
//! R-matrix, q-antisymmetric tensors and quantum determinants, and checks
//! the algebraic identities relating them exactly.

pub mod backend;
pub mod coeff;
pub mod dynrmat;
pub mod error;
pub mod harness;
pub mod ncalg;
pub mod ring;
pub mod rmat;
pub mod sparse;
pub mod uq;

pub use backend::{Backend, Exact, Numeric, Verdict};
pub use coeff::{qfact, qnum, EvalPoint, QExpr, RatFun};
pub use dynrmat::DynTensorOp;
pub use error::{Error, Result};
pub use harness::{
    render_report, run_checks, BackendKind, CheckConfig, Format, ReportEntry, Status,
};
pub use ncalg::{Generator, NCElem, Word};
pub use ring::Ring;
pub use rmat::{EpsTensor, TensorOp};
pub use sparse::SparseMat;
pub use uq::{AlgMatrix, Rep, TensorElem};

//! Free noncommutative polynomials over the coefficient field and a
//! length-two rewriting engine.
//!
//! Only the rank-one (`U_q(sl(2))`) system and the commuting Cartan part are
//! shipped as rewrite systems; identities for larger rank are decided in
//! representations instead (see [`crate::uq::rep`]).

mod elem;
mod generator;
mod rewrite;

pub use elem::{Coeff, NCElem};
pub use generator::{Generator, Word};
pub use rewrite::{
    cartan_system, ef_bidegree, normal_form, sl2_system, RewriteSystem, Rule, DEFAULT_BUDGET,
};

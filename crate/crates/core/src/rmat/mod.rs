//! R-matrices on tensor legs, q-antisymmetric tensors and quantum
//! determinants, with the exchange identities tying them to `M_±`.

mod checks;
mod eps;
mod lift;
mod qdet;
mod tensor;

pub use checks::*;
pub use eps::{eps_contraction_holds, length, q_eps, EpsTensor};
pub use lift::{place_matrix, place_op};
pub use qdet::{
    classical_limit, eval_free, qdet_free, qdet_free_n2_expected, qdet_free_numerator,
    reversed_contraction, substitute_matrix,
};
pub use tensor::{
    dj_rmatrix, dj_rmatrix_inv, embed, embed_pair, permutation, r21, r_minus, r_plus, rhat,
    rhat_inv, TensorOp,
};

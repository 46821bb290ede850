//! The `n`-fold cover of `U_q(sl(n))`: Cartan data, the triangular
//! factors of the monodromy matrix, the Hopf structure and exact
//! finite-dimensional representations.

mod cartan;
mod checks;
mod hopf;
mod matrices;
mod rep;

pub use cartan::{
    cartan, cartan_matrix, closed_form_inverse, det_by_recursion, determinant, invert, CartanData,
};
pub use checks::{
    check_counit_vacuum, check_dmpm_relations, check_hopf_axioms, check_matrix_coproduct,
    check_mpm_qcomm, check_rm_relations, check_serre, check_unipotent_inverse, d_product_is_one,
    dmpm_relations, eval_tensor, mpm_qcomm_relations, rm_relations,
    unipotent_inverse_closed_form_n3,
};
pub use hopf::{
    antipode, antipode_gen, coproduct, coproduct_gen, coproduct_on_leg, counit, counit_word,
    TensorElem,
};
pub use matrices::{
    big_k, big_k_inv, build_d, build_d_inv, build_m, build_mm_inverse, build_mpm, build_npm,
    d_elem, d_inv_elem, invert_unipotent, k_elem, m_prefactor, AlgMatrix, MAX_TABLE_N,
};
pub use rep::{
    cartan_relations, counit_rep, cross_relations, defining_relations, fundamental_power,
    fundamental_rep, rep_eval, rep_family, serre_alt_relations, serre_relations, tensor_rep, Rep,
};

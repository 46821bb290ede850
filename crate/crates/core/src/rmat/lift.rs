//! Algebra-valued matrices acting on `(C^n)^{⊗L} ⊗ V`, where `V` is a
//! representation space. Tensor legs are the most significant factor.

use crate::ring::Ring;
use crate::sparse::SparseMat;

/// `Σ_{a,c} (1 ⊗ .. ⊗ e_ac ⊗ .. ⊗ 1) ⊗ ρ(M^a_c)` with `e_ac` on leg `leg`
/// (1-based) of `legs`.
pub fn place_matrix<S: Ring>(
    entries: &[Vec<SparseMat<S>>],
    leg: usize,
    legs: usize,
) -> SparseMat<S> {
    let n = entries.len();
    let dim = entries[0][0].rows();
    let before = n.pow((leg - 1) as u32);
    let after = n.pow((legs - leg) as u32);
    let total = n.pow(legs as u32) * dim;
    let mut out = SparseMat::zeros(total, total);
    for (a, row) in entries.iter().enumerate() {
        for (c, img) in row.iter().enumerate() {
            for (r, s, v) in img.iter() {
                for x in 0..before {
                    for y in 0..after {
                        let ra = (x * n + a) * after + y;
                        let ca = (x * n + c) * after + y;
                        out.add_at(ra * dim + r, ca * dim + s, v);
                    }
                }
            }
        }
    }
    out
}

/// A scalar tensor operator extended by the identity on `V`.
pub fn place_op<S: Ring>(op: &SparseMat<S>, dim: usize) -> SparseMat<S> {
    op.kron(&SparseMat::identity(dim))
}

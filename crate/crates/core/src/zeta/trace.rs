//! Alternating traces of Frobenius on a cellular complex.

use super::ZetaError;
use crate::gw::{FqTag, GwFq};
use crate::ring::{CoefficientRing, GwFqRing};
use crate::series::RingMatrix;
use crate::varieties::CellData;

/// `sum_i ⟨−1⟩^i Tr(C_i^m)` for endomorphisms `C_i` of the degree-`i` terms.
pub fn cellular_trace(field: FqTag, matrices: &[RingMatrix<GwFqRing>], m: u64) -> Result<GwFq, ZetaError> {
    let ring = GwFqRing(field);
    let minus_one = GwFq::minus_one(field);
    let mut acc = GwFq::zero(field);
    for (i, c) in matrices.iter().enumerate() {
        if c.ring() != ring {
            return Err(ZetaError::FieldMismatch { left: c.ring().0.q(), right: field.q() });
        }
        let sign = ring.pow(&minus_one, i as u64);
        acc = acc + sign * c.pow(m).trace();
    }
    Ok(acc)
}

/// Frobenius acting on the cellular complex: `q_ε^i` times the identity in degree `i`.
pub fn frobenius_cell_matrices(field: FqTag, cells: &CellData) -> Vec<RingMatrix<GwFqRing>> {
    let ring = GwFqRing(field);
    let qe = GwFq::q_eps(field);
    cells
        .ranks()
        .iter()
        .enumerate()
        .map(|(i, &b)| RingMatrix::scalar(ring, b as usize, &ring.pow(&qe, i as u64)))
        .collect()
}

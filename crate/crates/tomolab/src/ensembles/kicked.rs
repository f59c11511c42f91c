//! Quantum kicked top Floquet operator
//!
//! ```text
//! U = exp(-i alpha Jx) exp(-i (k0 / 2j) Jz^2),   alpha = 1.4
//! ```
//!
//! `k0` around 1-2 is regular, around 6-8 strongly chaotic. Both factors are
//! built spectrally: the `Jz^2` phase is diagonal, and `exp(-i alpha Jx)`
//! comes from the eigendecomposition of `Jx`.

use super::Unitary;
use crate::error::Result;
use crate::qcore::spin_operators;
use crate::{c64, CMat};
use nalgebra::SymmetricEigen;

/// Fixed rotation angle of the top.
pub const KICKED_TOP_ALPHA: f64 = 1.4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KickedTopParams {
    pub j: f64,
    pub k0: f64,
}

/// `exp(-i t H)` for Hermitian `H` via its spectral decomposition.
pub(crate) fn exp_i_hermitian(h: &CMat, t: f64) -> CMat {
    let eig = SymmetricEigen::new(h.clone());
    let phases = CMat::from_diagonal(&eig.eigenvalues.map(|lam| {
        let a = -t * lam;
        c64(a.cos(), a.sin())
    }));
    &eig.eigenvectors * phases * eig.eigenvectors.adjoint()
}

pub fn kicked_top(params: &KickedTopParams) -> Result<Unitary> {
    let spin = spin_operators(params.j)?;
    let two_j = 2.0 * spin.j();
    let rotation = exp_i_hermitian(spin.jx().matrix(), KICKED_TOP_ALPHA);
    // Jz is diagonal, so the twist phase is exact.
    let d = spin.dim();
    let mut twist = CMat::zeros(d, d);
    for i in 0..d {
        let mz = spin.jz().matrix()[(i, i)].re;
        let a = -(params.k0 / two_j) * mz * mz;
        twist[(i, i)] = c64(a.cos(), a.sin());
    }
    Unitary::new(rotation * twist)
}

/// Parity `R = exp(-i pi Jx)`; commutes with the kicked top and maps
/// `Jz -> -Jz`.
pub fn parity_operator(j: f64) -> Result<Unitary> {
    let spin = spin_operators(j)?;
    Unitary::new(exp_i_hermitian(spin.jx().matrix(), std::f64::consts::PI))
}

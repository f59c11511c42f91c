//! Uhlmann fidelity `F(rho, sigma) = (Tr sqrt(sqrt(rho) sigma sqrt(rho)))^2`.

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::{c64, CMat};
use nalgebra::SymmetricEigen;

pub fn fidelity(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            got: sigma.dim(),
        });
    }
    let eig = SymmetricEigen::new(rho.matrix().clone());
    let sqrt_vals = CMat::from_diagonal(&eig.eigenvalues.map(|x| c64(x.max(0.0).sqrt(), 0.0)));
    let sqrt_rho = &eig.eigenvectors * sqrt_vals * eig.eigenvectors.adjoint();
    let inner = &sqrt_rho * sigma.matrix() * &sqrt_rho;
    // inner is Hermitian PSD up to roundoff; its eigenvalue clamp keeps
    // sqrt real for values like -1e-17.
    let root_sum: f64 = inner
        .symmetric_eigenvalues()
        .iter()
        .map(|x| x.max(0.0).sqrt())
        .sum();
    Ok((root_sum * root_sum).clamp(0.0, 1.0))
}

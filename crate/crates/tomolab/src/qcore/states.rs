//! Random state models: Haar-uniform pure states and Hilbert-Schmidt
//! distributed mixed states.

use super::DensityMatrix;
use crate::error::{Error, Result};
use crate::{c64, CMat, CVec};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "dimension must be positive",
        });
    }
    Ok(())
}

fn ginibre<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMat {
    let norm = StandardNormal;
    CMat::from_fn(rows, cols, |_, _| {
        c64(norm.sample(rng), norm.sample(rng))
    })
}

/// Haar-uniform pure state `|psi><psi|`: a normalized complex Gaussian ket.
pub fn sample_pure_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(d)?;
    let norm = StandardNormal;
    let mut psi = CVec::from_fn(d, |_, _| c64(norm.sample(rng), norm.sample(rng)));
    psi /= c64(psi.norm(), 0.0);
    let rho = &psi * psi.adjoint();
    DensityMatrix::new(rho)
}

/// Hilbert-Schmidt distributed mixed state `G G^dagger / Tr(G G^dagger)`
/// with `G` a square complex Ginibre matrix.
pub fn sample_mixed_state<R: Rng + ?Sized>(d: usize, rng: &mut R) -> Result<DensityMatrix> {
    check_dim(d)?;
    let g = ginibre(d, d, rng);
    let mut rho = &g * g.adjoint();
    let tr = rho.trace().re;
    rho /= c64(tr, 0.0);
    DensityMatrix::new(rho)
}

//! Real Wishart spectra: the Monte Carlo twin of the Marchenko-Pastur law.

use crate::error::{Error, Result};
use crate::infometrics::Spectrum;
use crate::RMat;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

/// Spectrum of `X^T X` for an `N x D` matrix of iid standard normals,
/// normalized to unit eigenvalue sum.
pub fn sample_wishart<R: Rng + ?Sized>(d_op: usize, n_steps: usize, rng: &mut R) -> Result<Spectrum> {
    if d_op == 0 {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "Wishart dimension must be positive",
        });
    }
    if d_op > n_steps {
        return Err(Error::param(
            "aspect_ratio",
            format!("D = {d_op} exceeds N = {n_steps}"),
        ));
    }
    let norm = StandardNormal;
    let x = RMat::from_fn(n_steps, d_op, |_, _| norm.sample(rng));
    let gram = x.tr_mul(&x);
    let mut vals: Vec<f64> = gram.symmetric_eigenvalues().iter().cloned().collect();
    let total: f64 = vals.iter().sum();
    if !(total > 0.0) {
        return Err(Error::Numerical {
            context: "sample_wishart",
            detail: "Gram matrix trace vanished".to_string(),
        });
    }
    for v in vals.iter_mut() {
        *v /= total;
    }
    Spectrum::from_values(vals)
}

//! Weighted projection of the maximum-likelihood Bloch vector onto the
//! physical set (unit trace, positive semidefinite).
//!
//! Minimizes `(r - r_ml)^T W (r - r_ml)` over physical `r` with
//! `W = X^T X`, so directions the record actually probed are pulled hardest.
//! Projected gradient descent: a gradient step in the weighted objective
//! followed by exact Euclidean projection onto the spectrahedron, which in
//! an orthonormal operator basis is an eigenvalue simplex projection.

use super::estimate::InverseCovariance;
use crate::error::{Error, Result};
use crate::qcore::{bloch_compose, bloch_decompose, BlochVector, DensityMatrix, OperatorBasis};
use crate::{c64, CMat, RVec};
use nalgebra::SymmetricEigen;

const MAX_ITERS: usize = 10_000;
const REL_OBJ_TOL: f64 = 1e-10;
/// Eigenvalue slack under which an input already counts as physical.
const FEASIBLE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct Projected {
    pub rho: DensityMatrix,
    pub bloch: BlochVector,
    /// Whether the relative objective decrease fell below `1e-10` within
    /// the iteration budget. On `false` the best iterate found is returned.
    pub converged: bool,
    pub iterations: usize,
    /// Final weighted squared distance to the unprojected estimate.
    pub objective: f64,
}

/// Euclidean projection of `y` onto the probability simplex, by the exact
/// sorting/water-filling rule.
fn simplex_project(y: &[f64]) -> Vec<f64> {
    let mut u: Vec<f64> = y.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut theta = 0.0;
    for (k, &uk) in u.iter().enumerate() {
        cumsum += uk;
        let cand = (cumsum - 1.0) / (k + 1) as f64;
        if uk - cand > 0.0 {
            theta = cand;
        }
    }
    y.iter().map(|&v| (v - theta).max(0.0)).collect()
}

/// Eigenvalue-space projection of the Hermitian matrix behind `r` onto the
/// spectrahedron; returns the projected Bloch vector and its eigenvalues.
fn spectrahedron_project(
    r: &RVec,
    d: usize,
    basis: &OperatorBasis,
) -> Result<(RVec, CMat)> {
    let bloch = BlochVector::from_vec(d, r.clone())?;
    let m = bloch_compose(&bloch, 1.0);
    let eig = SymmetricEigen::new(m);
    let vals: Vec<f64> = eig.eigenvalues.iter().cloned().collect();
    let projected = simplex_project(&vals);
    let diag = CMat::from_diagonal(&RVec::from_vec(projected).map(|x| c64(x, 0.0)));
    let rho = &eig.eigenvectors * diag * eig.eigenvectors.adjoint();
    let r_new = bloch_decompose(&rho, basis)?.coords().clone();
    Ok((r_new, rho))
}

fn min_eigenvalue(r: &RVec, d: usize) -> Result<f64> {
    let bloch = BlochVector::from_vec(d, r.clone())?;
    let m = bloch_compose(&bloch, 1.0);
    Ok(m.symmetric_eigenvalues()
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min))
}

fn largest_eigenvalue_psd(w: &InverseCovariance) -> f64 {
    let m = w.matrix();
    let n = m.nrows();
    let mut v = RVec::from_element(n, 1.0 / (n as f64).sqrt());
    let mut lambda = 0.0;
    for _ in 0..200 {
        let mut wv = m * &v;
        let norm = wv.norm();
        if norm == 0.0 {
            return 0.0;
        }
        wv /= norm;
        let next = (m * &wv).dot(&wv);
        let done = (next - lambda).abs() <= 1e-12 * next.abs().max(1.0);
        lambda = next;
        v = wv;
        if done {
            break;
        }
    }
    lambda
}

/// Projects `r_ml` onto the physical set in the metric of `weight`.
pub fn project_physical(
    r_ml: &BlochVector,
    weight: &InverseCovariance,
    basis: &OperatorBasis,
) -> Result<Projected> {
    let d = basis.dim();
    let dim_op = basis.len();
    if r_ml.dim_op() != dim_op {
        return Err(Error::DimensionMismatch {
            expected: dim_op,
            got: r_ml.dim_op(),
        });
    }
    if weight.dim_op() != dim_op {
        return Err(Error::DimensionMismatch {
            expected: dim_op,
            got: weight.dim_op(),
        });
    }

    let m = r_ml.coords().clone();

    // Already physical: the projection is the identity.
    if min_eigenvalue(&m, d)? >= -FEASIBLE_TOL {
        let rho = DensityMatrix::from_bloch(r_ml)?;
        return Ok(Projected {
            rho,
            bloch: r_ml.clone(),
            converged: true,
            iterations: 0,
            objective: 0.0,
        });
    }

    let w = weight.matrix();
    let lam_max = largest_eigenvalue_psd(weight);
    if lam_max <= 0.0 {
        // Degenerate weight: any physical point is optimal; take the
        // unweighted projection of the input.
        let (r_new, rho) = spectrahedron_project(&m, d, basis)?;
        let bloch = BlochVector::from_vec(d, r_new)?;
        return Ok(Projected {
            rho: DensityMatrix::new(rho)?,
            bloch,
            converged: true,
            iterations: 1,
            objective: 0.0,
        });
    }
    let eta = 1.0 / (2.0 * lam_max);

    let objective = |r: &RVec| -> f64 {
        let diff = r - &m;
        (w * &diff).dot(&diff)
    };

    // Start from the projection of the estimate itself.
    let (mut r, mut rho) = spectrahedron_project(&m, d, basis)?;
    let mut f_prev = objective(&r);
    let mut converged = false;
    let mut iterations = 1;
    for it in 2..=MAX_ITERS {
        iterations = it;
        let grad = (w * (&r - &m)) * 2.0;
        let stepped = &r - &grad * eta;
        let (r_next, rho_next) = spectrahedron_project(&stepped, d, basis)?;
        let f_next = objective(&r_next);
        r = r_next;
        rho = rho_next;
        if (f_prev - f_next).abs() <= REL_OBJ_TOL * f_prev.max(1e-30) {
            f_prev = f_next;
            converged = true;
            break;
        }
        f_prev = f_next;
    }

    let bloch = BlochVector::from_vec(d, r)?;
    Ok(Projected {
        rho: DensityMatrix::new(rho)?,
        bloch,
        converged,
        iterations,
        objective: f_prev,
    })
}

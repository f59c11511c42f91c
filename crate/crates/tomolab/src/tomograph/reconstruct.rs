//! End-to-end single-trial reconstruction: stream the record, solve the
//! regularized normal equations at checkpoints, project, and score fidelity
//! against the true state.
//!
//! The streaming path never materializes the `N x (d^2-1)` design. At each
//! checkpoint the regularized system `(X^T X + sigma^2 eps I) r = X^T M` is
//! solved by Cholesky on the accumulated Gram matrix; agreement of this
//! route with the QR solve in [`super::ml_estimate`] is pinned by tests.

use super::design::DesignAccumulator;
use super::estimate::InverseCovariance;
use super::project::project_physical;
use crate::ensembles::UnitaryProcess;
use crate::error::{Error, Result};
use crate::qcore::{fidelity, BlochVector, DensityMatrix, Observable, OperatorBasis};
use nalgebra::Cholesky;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

#[derive(Debug, Clone)]
pub struct ReconstructSpec<'a> {
    pub observable: &'a Observable,
    pub basis: &'a OperatorBasis,
    pub state: &'a DensityMatrix,
    pub steps: usize,
    pub sigma: f64,
    pub epsilon: f64,
    /// Estimate/project/score every `stride` steps; the final step is always
    /// a checkpoint.
    pub stride: usize,
}

#[derive(Debug, Clone, Copy)]
pub struct Checkpoint {
    pub step: usize,
    pub fidelity: f64,
    pub converged: bool,
    pub iterations: usize,
}

#[derive(Debug, Clone)]
pub struct ReconstructOutcome {
    pub checkpoints: Vec<Checkpoint>,
    pub final_state: DensityMatrix,
    pub final_bloch: BlochVector,
    /// Whether every checkpoint's projection converged.
    pub all_converged: bool,
}

/// Runs one trial. Process unitaries come from `process`; measurement noise
/// comes from `noise_rng` (one standard normal per step, drawn also when
/// `sigma = 0` so that record length never shifts the stream).
pub fn reconstruct<R: Rng, S: Rng + ?Sized>(
    spec: &ReconstructSpec,
    process: &mut UnitaryProcess<R>,
    noise_rng: &mut S,
) -> Result<ReconstructOutcome> {
    let d = spec.basis.dim();
    for (what, dim) in [
        ("observable", spec.observable.dim()),
        ("state", spec.state.dim()),
        ("process", process.dim()),
    ] {
        if dim != d {
            return Err(Error::param(
                "spec",
                format!("{what} dimension {dim} does not match basis dimension {d}"),
            ));
        }
    }
    if spec.steps == 0 {
        return Err(Error::param("steps", "need at least one measurement"));
    }
    if spec.stride == 0 {
        return Err(Error::param("stride", "checkpoint stride must be >= 1"));
    }
    if !(spec.sigma >= 0.0) {
        return Err(Error::param("sigma", "noise scale must be >= 0"));
    }
    if !(spec.epsilon >= 0.0) {
        return Err(Error::param("epsilon", "regularization must be >= 0"));
    }

    let dim_op = spec.basis.len();
    let ridge = spec.sigma * spec.sigma * spec.epsilon;
    let norm = StandardNormal;
    let mut acc = DesignAccumulator::new(spec.observable, spec.basis)?;
    let mut checkpoints = Vec::new();
    let mut final_result: Option<(DensityMatrix, BlochVector)> = None;

    for n in 1..=spec.steps {
        let y = acc.current_observable().expectation(spec.state)?;
        let w: f64 = norm.sample(noise_rng);
        acc.absorb_value(spec.basis, y + spec.sigma * w)?;

        if n % spec.stride == 0 || n == spec.steps {
            let mut system = acc.gram().clone();
            for i in 0..dim_op {
                system[(i, i)] += ridge;
            }
            let chol = Cholesky::new(system).ok_or_else(|| rank_error(acc.gram(), dim_op))?;
            let r_ml = BlochVector::from_vec(d, chol.solve(acc.xtm()))?;
            let weight = InverseCovariance::from_matrix(acc.gram().clone())?;
            let projected = project_physical(&r_ml, &weight, spec.basis)?;
            let fid = fidelity(&projected.rho, spec.state)?;
            checkpoints.push(Checkpoint {
                step: n,
                fidelity: fid,
                converged: projected.converged,
                iterations: projected.iterations,
            });
            if n == spec.steps {
                final_result = Some((projected.rho, projected.bloch));
            }
        }
        if n < spec.steps {
            let u = process.next_unitary()?;
            acc.advance(&u)?;
        }
    }

    let (final_state, final_bloch) = final_result.expect("final step is always a checkpoint");
    let all_converged = checkpoints.iter().all(|c| c.converged);
    Ok(ReconstructOutcome {
        checkpoints,
        final_state,
        final_bloch,
        all_converged,
    })
}

fn rank_error(gram: &crate::RMat, dim_op: usize) -> Error {
    let mut eigs: Vec<f64> = gram.symmetric_eigenvalues().iter().cloned().collect();
    eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let top = eigs.first().cloned().unwrap_or(0.0).max(0.0);
    let rank = eigs.iter().filter(|&&x| x > 1e-10 * top).count();
    Error::RankDeficient {
        rank,
        expected: dim_op,
        missing: dim_op - rank,
    }
}

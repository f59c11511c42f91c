//! Spectral hybrids: combine the eigenphases of one unitary with the
//! eigenvectors of another. Used to disentangle which spectral ingredient
//! drives information generation under a chaotic map.

use super::Unitary;
use crate::error::{Error, Result};
use crate::{c64, CMat, CVec};
use nalgebra::SymmetricEigen;

pub struct HybridMap {
    pub unitary: Unitary,
    /// Set when either source spectrum has an eigenphase gap below `1e-10`,
    /// in which case the eigenvector pairing inside that cluster is
    /// conventional rather than canonical.
    pub near_degenerate: bool,
}

const RESIDUAL_TOL: f64 = 1e-9;
const DEGENERACY_GAP: f64 = 1e-10;

/// Eigendecomposition of a unitary: phases in `(-pi, pi]` sorted ascending,
/// with matching orthonormal eigenvector columns.
///
/// A unitary is normal, so it shares eigenvectors with the Hermitian pencil
/// `X(t) = cos(t) (U + U^d)/2 + sin(t) (U - U^d)/(2i)`, whose eigenvalues are
/// `cos(theta - t)`. A symmetric eigensolver on `X(t)` therefore yields the
/// eigenvectors of `U` unless two distinct eigenphases collide through the
/// cosine; sweeping a few fixed `t` values escapes such collisions, and a
/// residual check certifies the result.
pub fn eig_unitary(u: &Unitary) -> Result<(Vec<f64>, CMat)> {
    let d = u.dim();
    let m = u.matrix();
    let h = (m + m.adjoint()) * c64(0.5, 0.0);
    let k = (m - m.adjoint()) * c64(0.0, -0.5);

    const T_SWEEP: [f64; 6] = [0.881_373, 0.25, 1.3, 1.9, 0.05, 2.4];
    let mut best: Option<(f64, Vec<f64>, CMat)> = None;
    for t in T_SWEEP {
        let x = &h * c64(t.cos(), 0.0) + &k * c64(t.sin(), 0.0);
        let eig = SymmetricEigen::new(x);
        let vecs = eig.eigenvectors;
        let mut phases = Vec::with_capacity(d);
        let mut worst = 0.0f64;
        for i in 0..d {
            let v: CVec = vecs.column(i).into_owned();
            let uv = m * &v;
            let lambda = v.dotc(&uv);
            let theta = lambda.arg();
            phases.push(theta);
            let residual = (&uv - &v * c64(theta.cos(), theta.sin())).norm();
            worst = worst.max(residual);
        }
        if worst <= RESIDUAL_TOL {
            let mut order: Vec<usize> = (0..d).collect();
            order.sort_by(|&a, &b| phases[a].partial_cmp(&phases[b]).unwrap());
            let sorted_phases: Vec<f64> = order.iter().map(|&i| phases[i]).collect();
            let mut sorted_vecs = CMat::zeros(d, d);
            for (col, &i) in order.iter().enumerate() {
                sorted_vecs.set_column(col, &vecs.column(i));
            }
            return Ok((sorted_phases, sorted_vecs));
        }
        if best.as_ref().map_or(true, |(w, _, _)| worst < *w) {
            best = Some((worst, phases, vecs));
        }
    }
    let worst = best.map(|(w, _, _)| w).unwrap_or(f64::INFINITY);
    Err(Error::Numerical {
        context: "eig_unitary",
        detail: format!("residual {worst:.3e} above {RESIDUAL_TOL:e} for every pencil angle"),
    })
}

fn min_circular_gap(sorted_phases: &[f64]) -> f64 {
    let n = sorted_phases.len();
    if n < 2 {
        return f64::INFINITY;
    }
    let mut min_gap = std::f64::consts::TAU - (sorted_phases[n - 1] - sorted_phases[0]);
    for w in sorted_phases.windows(2) {
        min_gap = min_gap.min(w[1] - w[0]);
    }
    min_gap
}

/// Unitary with the eigenphases of `eigvals_from` and the eigenvectors of
/// `eigvecs_from`, each taken in ascending-phase order.
pub fn hybrid_map(eigvals_from: &Unitary, eigvecs_from: &Unitary) -> Result<HybridMap> {
    if eigvals_from.dim() != eigvecs_from.dim() {
        return Err(Error::DimensionMismatch {
            expected: eigvals_from.dim(),
            got: eigvecs_from.dim(),
        });
    }
    let (phases, _) = eig_unitary(eigvals_from)?;
    let (vec_phases, vecs) = eig_unitary(eigvecs_from)?;
    let near_degenerate = min_circular_gap(&phases) < DEGENERACY_GAP
        || min_circular_gap(&vec_phases) < DEGENERACY_GAP;
    let diag = CMat::from_diagonal(&CVec::from_iterator(
        phases.len(),
        phases.iter().map(|&t| c64(t.cos(), t.sin())),
    ));
    let unitary = Unitary::new(&vecs * diag * vecs.adjoint())?;
    Ok(HybridMap {
        unitary,
        near_degenerate,
    })
}

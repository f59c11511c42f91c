//! Sparse superoperator approximation of the inverse covariance under
//! diagonal dynamics.
//!
//! In the frame's eigenbasis, averaging the random phases kills every term
//! of `C^-1` whose phase factors do not cancel, leaving two families that
//! grow linearly with the step count `N`:
//!
//! ```text
//! C^-1 ~ N [ sum_{j,k} |(j,k|O0)|^2 |j,k)(j,k|
//!          + sum_{j != k} (j,j|O0)(O0|k,k) |j,j)(k,k| ]
//! ```
//!
//! where `(j,k|O0) = <j|O0|k>` are frame-basis matrix elements and `|j,k)`
//! are superoperator basis kets indexed `j*d + k`. The discarded cross
//! terms average to zero with `O(sqrt(N))` fluctuations, so dividing by `N`
//! makes the approximation step-count independent.

use crate::ensembles::Unitary;
use crate::error::{Error, Result};
use crate::infometrics::Spectrum;
use crate::qcore::Observable;
use crate::RMat;

#[derive(Debug, Clone)]
pub struct SparseInvCov {
    d: usize,
    n_steps: usize,
    m: RMat,
}

impl SparseInvCov {
    /// Hilbert-space dimension `d`; the matrix is `d^2 x d^2`.
    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn matrix(&self) -> &RMat {
        &self.m
    }

    /// Superoperator row/column index of the frame pair `(j, k)`.
    pub fn index(&self, j: usize, k: usize) -> usize {
        j * self.d + k
    }

    /// Number of exactly nonzero entries; bounded by `d^2 + d(d-1)` by
    /// construction.
    pub fn nnz(&self) -> usize {
        self.m.iter().filter(|&&x| x != 0.0).count()
    }

    /// All `d^2` eigenvalues (zero modes included), descending.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let vals = self.m.clone().symmetric_eigenvalues();
        Spectrum::from_values(vals.iter().cloned().collect())
    }
}

/// Builds the two retained term families for observable `o0` and frame `V`.
pub fn sparse_invcov_approx(
    o0: &Observable,
    frame: &Unitary,
    n_steps: usize,
) -> Result<SparseInvCov> {
    if o0.dim() != frame.dim() {
        return Err(Error::DimensionMismatch {
            expected: frame.dim(),
            got: o0.dim(),
        });
    }
    if n_steps == 0 {
        return Err(Error::param("n_steps", "need at least one step"));
    }
    let d = o0.dim();
    let n = n_steps as f64;
    let of = frame.matrix().adjoint() * o0.matrix() * frame.matrix();
    let mut m = RMat::zeros(d * d, d * d);
    for j in 0..d {
        for k in 0..d {
            let idx = j * d + k;
            m[(idx, idx)] = n * of[(j, k)].norm_sqr();
        }
    }
    for j in 0..d {
        for k in (j + 1)..d {
            let row = j * d + j;
            let col = k * d + k;
            let coupling = n * (of[(j, j)].re * of[(k, k)].re);
            m[(row, col)] = coupling;
            m[(col, row)] = coupling;
        }
    }
    Ok(SparseInvCov { d, n_steps, m })
}

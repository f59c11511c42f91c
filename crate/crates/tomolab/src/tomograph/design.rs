//! Heisenberg trajectories of the measured observable and the design matrix
//! they induce on Bloch coordinates.

use crate::ensembles::{Unitary, UnitaryProcess};
use crate::error::{Error, Result};
use crate::hermitize;
use crate::qcore::{bloch_decompose, Observable, OperatorBasis};
use crate::{RMat, RVec};
use rand::Rng;

/// `U^dagger O U`, re-symmetrized against roundoff drift.
pub fn evolve_observable(o: &Observable, u: &Unitary) -> Result<Observable> {
    if o.dim() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: o.dim(),
            got: u.dim(),
        });
    }
    let mut m = u.matrix().adjoint() * o.matrix() * u.matrix();
    hermitize(&mut m);
    Observable::new(m)
}

/// The measured observable at every step, `O_0` included.
#[derive(Debug, Clone)]
pub struct ObservableTrajectory {
    steps: Vec<Observable>,
}

impl ObservableTrajectory {
    /// Number of measured steps (`O_0` is step 1's observable: the record
    /// index runs from 1 to `n`, and `observable(n)` gives `O_{n-1}`).
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.steps[0].dim()
    }

    pub fn observables(&self) -> &[Observable] {
        &self.steps
    }
}

/// Evolves `o0` through `n` steps of `process`. The first record entry
/// measures `o0` itself; each subsequent entry measures the conjugation of
/// the previous one by the next process unitary.
pub fn run_trajectory<R: Rng>(
    o0: &Observable,
    process: &mut UnitaryProcess<R>,
    n: usize,
) -> Result<ObservableTrajectory> {
    if n == 0 {
        return Err(Error::param("n", "trajectory needs at least one step"));
    }
    if o0.dim() != process.dim() {
        return Err(Error::DimensionMismatch {
            expected: process.dim(),
            got: o0.dim(),
        });
    }
    let mut steps = Vec::with_capacity(n);
    steps.push(o0.clone());
    for _ in 1..n {
        let u = process.next_unitary()?;
        let next = evolve_observable(steps.last().unwrap(), &u)?;
        steps.push(next);
    }
    Ok(ObservableTrajectory { steps })
}

/// Dense design matrix: row `n` holds the Bloch coordinates of `O_n`.
#[derive(Debug, Clone)]
pub struct DesignMatrix {
    rows: RMat,
    dim: usize,
}

impl DesignMatrix {
    /// Number of record entries.
    pub fn len(&self) -> usize {
        self.rows.nrows()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.nrows() == 0
    }

    /// Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Operator-space dimension `d^2 - 1`.
    pub fn dim_op(&self) -> usize {
        self.rows.ncols()
    }

    pub fn matrix(&self) -> &RMat {
        &self.rows
    }

    /// Noise-free record `X r`.
    pub fn apply(&self, r: &RVec) -> Result<RVec> {
        if r.len() != self.dim_op() {
            return Err(Error::DimensionMismatch {
                expected: self.dim_op(),
                got: r.len(),
            });
        }
        Ok(&self.rows * r)
    }
}

/// Decomposes every trajectory step against the basis.
pub fn design_matrix(
    traj: &ObservableTrajectory,
    basis: &OperatorBasis,
) -> Result<DesignMatrix> {
    let d = basis.dim();
    if traj.dim() != d {
        return Err(Error::DimensionMismatch {
            expected: d,
            got: traj.dim(),
        });
    }
    let dim_op = basis.len();
    let mut rows = RMat::zeros(traj.len(), dim_op);
    for (n, o) in traj.observables().iter().enumerate() {
        let r = bloch_decompose(o.matrix(), basis)?;
        rows.row_mut(n).copy_from(&r.coords().transpose());
    }
    Ok(DesignMatrix { rows, dim: d })
}

/// Streaming accumulator over design rows for long records where the dense
/// `N x (d^2-1)` matrix would be wasteful: maintains the Gram matrix
/// `X^T X`, the projected record `X^T M`, and the current observable,
/// without storing rows.
#[derive(Debug, Clone)]
pub struct DesignAccumulator {
    basis_dim: usize,
    current: Observable,
    gram: RMat,
    xtm: RVec,
    steps: usize,
}

impl DesignAccumulator {
    pub fn new(o0: &Observable, basis: &OperatorBasis) -> Result<Self> {
        if o0.dim() != basis.dim() {
            return Err(Error::DimensionMismatch {
                expected: basis.dim(),
                got: o0.dim(),
            });
        }
        let dim_op = basis.len();
        Ok(DesignAccumulator {
            basis_dim: basis.dim(),
            current: o0.clone(),
            gram: RMat::zeros(dim_op, dim_op),
            xtm: RVec::zeros(dim_op),
            steps: 0,
        })
    }

    /// Folds the current observable into the Gram state as the next design
    /// row, with record value `m`.
    pub fn absorb_value(&mut self, basis: &OperatorBasis, m: f64) -> Result<()> {
        let row = bloch_decompose(self.current.matrix(), basis)?;
        let coords = row.coords();
        self.gram.ger(1.0, coords, coords, 1.0);
        self.xtm.axpy(m, coords, 1.0);
        self.steps += 1;
        Ok(())
    }

    /// Conjugates the tracked observable by `u`, preparing the next row.
    pub fn advance(&mut self, u: &Unitary) -> Result<()> {
        self.current = evolve_observable(&self.current, u)?;
        Ok(())
    }

    /// Bloch row of the observable about to be measured next.
    pub fn current_row(&self, basis: &OperatorBasis) -> Result<RVec> {
        Ok(bloch_decompose(self.current.matrix(), basis)?.coords().clone())
    }

    pub fn current_observable(&self) -> &Observable {
        &self.current
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn dim(&self) -> usize {
        self.basis_dim
    }

    /// `X^T X` over the rows absorbed so far.
    pub fn gram(&self) -> &RMat {
        &self.gram
    }

    /// `X^T M` over the rows absorbed so far.
    pub fn xtm(&self) -> &RVec {
        &self.xtm
    }
}

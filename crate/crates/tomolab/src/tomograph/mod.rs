//! Heisenberg-picture measurement model and state reconstruction.
//!
//! One observable `O_0` is measured repeatedly while unitaries act between
//! measurements, so record entry `n` probes `O_n = U_n^d O_{n-1} U_n`:
//!
//! ```text
//! M_n = Tr(O_n rho0) + sigma W_n,   W_n ~ N(0, 1) iid.
//! ```
//!
//! In Bloch coordinates `M = X r + noise` with design row
//! `X[n, a] = Tr(O_n E_a)`; reconstruction is regularized least squares on
//! `r` followed by a weighted projection onto the physical set.

mod design;
mod estimate;
mod project;
mod reconstruct;

pub use design::{
    design_matrix, evolve_observable, run_trajectory, DesignAccumulator, DesignMatrix,
    ObservableTrajectory,
};
pub use estimate::{
    inverse_covariance, ml_estimate, synth_record, InverseCovariance, MeasurementRecord,
};
pub use project::{project_physical, Projected};
pub use reconstruct::{reconstruct, Checkpoint, ReconstructOutcome, ReconstructSpec};

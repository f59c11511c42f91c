//! Unitary step generators for the measurement dynamics.

mod diagonal;
mod haar;
mod hybrid;
mod kicked;
mod process;

pub use diagonal::DiagonalProcess;
pub use haar::sample_haar_unitary;
pub use hybrid::{eig_unitary, hybrid_map, HybridMap};
pub use kicked::{kicked_top, parity_operator, KickedTopParams, KICKED_TOP_ALPHA};
pub use process::{ProcessPolicy, UnitaryProcess};

use crate::error::{Error, Result};
use crate::{c64, CMat};

/// Unitarity tolerance on `max |(U^dagger U - I)_ij|`.
const UNITARY_TOL: f64 = 1e-10;

/// Validated unitary matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Unitary {
    m: CMat,
}

impl Unitary {
    pub fn new(m: CMat) -> Result<Self> {
        if m.nrows() != m.ncols() || m.nrows() == 0 {
            return Err(Error::domain(format!(
                "unitary must be square and nonempty, got {}x{}",
                m.nrows(),
                m.ncols()
            )));
        }
        let gram = m.adjoint() * &m;
        let mut defect = 0.0f64;
        for i in 0..gram.nrows() {
            for j in 0..gram.ncols() {
                let target = if i == j { c64(1.0, 0.0) } else { c64(0.0, 0.0) };
                defect = defect.max((gram[(i, j)] - target).norm());
            }
        }
        if defect > UNITARY_TOL {
            return Err(Error::domain(format!(
                "matrix is not unitary: defect {defect:.3e} exceeds {UNITARY_TOL:e}"
            )));
        }
        Ok(Unitary { m })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    pub fn adjoint(&self) -> Unitary {
        Unitary {
            m: self.m.adjoint(),
        }
    }
}

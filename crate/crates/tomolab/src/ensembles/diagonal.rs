//! Random-diagonal ensemble: every step is diagonal in one fixed frame `V`,
//! `U_m = V diag(e^{-i phi}) V^dagger` with fresh uniform phases each step.
//!
//! Because all steps commute, the accumulated evolution is determined by the
//! running phase sums, which the process tracks.

use super::Unitary;
use crate::{c64, CMat, RVec};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct DiagonalProcess {
    frame: Unitary,
    total_phases: RVec,
    steps: usize,
}

impl DiagonalProcess {
    pub fn new(frame: Unitary) -> Self {
        let d = frame.dim();
        DiagonalProcess {
            frame,
            total_phases: RVec::zeros(d),
            steps: 0,
        }
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn frame(&self) -> &Unitary {
        &self.frame
    }

    /// Phase sums accumulated over all steps taken so far.
    pub fn total_phases(&self) -> &RVec {
        &self.total_phases
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Draws one step: fresh `phi_k ~ U[0, 2pi)`.
    pub fn sample_step<R: Rng + ?Sized>(&mut self, rng: &mut R) -> Unitary {
        let d = self.dim();
        let phases = RVec::from_fn(d, |_, _| rng.random_range(0.0..std::f64::consts::TAU));
        self.total_phases += &phases;
        self.steps += 1;
        self.unitary_for(&phases)
    }

    /// `V diag(e^{-i phi}) V^dagger` for a given phase vector.
    pub fn unitary_for(&self, phases: &RVec) -> Unitary {
        let v = self.frame.matrix();
        let diag = CMat::from_diagonal(&phases.map(|p| c64(p.cos(), -p.sin())));
        let m = v * diag * v.adjoint();
        Unitary::new(m).expect("conjugated diagonal phases stay unitary")
    }
}

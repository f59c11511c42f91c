//! Unified step source for the measurement dynamics.

use super::{DiagonalProcess, Unitary};
use crate::ensembles::sample_haar_unitary;
use crate::error::{Error, Result};
use rand::Rng;

/// How the unitary applied between consecutive measurements is chosen.
#[derive(Debug, Clone)]
pub enum ProcessPolicy {
    /// Fresh Haar unitary every step.
    HaarPerStep { dim: usize },
    /// One fixed unitary repeated every step (kicked tops and hybrids are
    /// built once and used through this policy).
    Fixed(Unitary),
    /// Random diagonal unitary in a fixed frame every step.
    RandomDiagonal { frame: Unitary },
}

impl ProcessPolicy {
    pub fn dim(&self) -> usize {
        match self {
            ProcessPolicy::HaarPerStep { dim } => *dim,
            ProcessPolicy::Fixed(u) => u.dim(),
            ProcessPolicy::RandomDiagonal { frame } => frame.dim(),
        }
    }
}

#[derive(Debug)]
enum Inner {
    Haar { dim: usize },
    Fixed(Unitary),
    Diagonal(DiagonalProcess),
}

/// Stateful generator of the step unitaries `U_1, U_2, ...` for one trial.
#[derive(Debug)]
pub struct UnitaryProcess<R: Rng> {
    inner: Inner,
    rng: R,
    step: usize,
}

impl<R: Rng> UnitaryProcess<R> {
    pub fn new(policy: ProcessPolicy, rng: R) -> Result<Self> {
        let dim = policy.dim();
        if dim == 0 {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "process dimension must be positive",
            });
        }
        let inner = match policy {
            ProcessPolicy::HaarPerStep { dim } => Inner::Haar { dim },
            ProcessPolicy::Fixed(u) => Inner::Fixed(u),
            ProcessPolicy::RandomDiagonal { frame } => Inner::Diagonal(DiagonalProcess::new(frame)),
        };
        Ok(UnitaryProcess {
            inner,
            rng,
            step: 0,
        })
    }

    pub fn dim(&self) -> usize {
        match &self.inner {
            Inner::Haar { dim } => *dim,
            Inner::Fixed(u) => u.dim(),
            Inner::Diagonal(p) => p.dim(),
        }
    }

    /// Steps generated so far.
    pub fn step(&self) -> usize {
        self.step
    }

    /// Accumulated diagonal phases, when the policy is diagonal.
    pub fn diagonal_state(&self) -> Option<&DiagonalProcess> {
        match &self.inner {
            Inner::Diagonal(p) => Some(p),
            _ => None,
        }
    }

    pub fn next_unitary(&mut self) -> Result<Unitary> {
        self.step += 1;
        match &mut self.inner {
            Inner::Haar { dim } => sample_haar_unitary(*dim, &mut self.rng),
            Inner::Fixed(u) => Ok(u.clone()),
            Inner::Diagonal(p) => Ok(p.sample_step(&mut self.rng)),
        }
    }
}

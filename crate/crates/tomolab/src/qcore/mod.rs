//! States, observables, the orthonormal traceless Hermitian basis, Bloch
//! coordinates, spin operators, and Uhlmann fidelity.

mod basis;
mod fidelity;
mod spin;
mod states;

pub use basis::{bloch_compose, bloch_decompose, bloch_decompose_generic, make_hermitian_basis, OperatorBasis};
pub use fidelity::fidelity;
pub use spin::{spin_operators, SpinOperators};
pub use states::{sample_mixed_state, sample_pure_state};

use crate::error::{Error, Result};
use crate::{c64, hermiticity_defect, hermitize, CMat, RVec};

/// Hermiticity tolerance, relative to the largest entry magnitude.
const HERM_TOL: f64 = 1e-10;
/// Unit-trace tolerance for density matrices.
const TRACE_TOL: f64 = 1e-9;
/// How negative an eigenvalue a "positive semidefinite" input may have.
const PSD_TOL: f64 = 1e-9;

/// Unit-trace positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    m: CMat,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness
    /// (eigenvalues above `-1e-9`). Roundoff-level Hermitian drift is
    /// symmetrized away rather than rejected.
    pub fn new(m: CMat) -> Result<Self> {
        let mut m = square(m, "density matrix")?;
        check_hermitian(&m, "density matrix")?;
        hermitize(&mut m);
        let tr = m.trace().re;
        if (tr - 1.0).abs() > TRACE_TOL {
            return Err(Error::domain(format!(
                "density matrix trace {tr} differs from 1 by more than {TRACE_TOL:e}"
            )));
        }
        let min_eig = m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .cloned()
            .fold(f64::INFINITY, f64::min);
        if min_eig < -PSD_TOL {
            return Err(Error::domain(format!(
                "density matrix has eigenvalue {min_eig:.3e} below -{PSD_TOL:e}"
            )));
        }
        Ok(DensityMatrix { m })
    }

    /// Builds `(tr/d) I + sum_a r_a E_a` with unit trace and validates it.
    pub fn from_bloch(r: &BlochVector) -> Result<Self> {
        DensityMatrix::new(bloch_compose(r, 1.0))
    }

    /// Maximally mixed state `I/d`.
    pub fn maximally_mixed(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidDimension {
                dim: 0,
                reason: "dimension must be positive",
            });
        }
        Ok(DensityMatrix {
            m: CMat::identity(d, d) * c64(1.0 / d as f64, 0.0),
        })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    /// Eigenvalues in descending order, clamped to `[0, 1]`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self
            .m
            .clone()
            .symmetric_eigenvalues()
            .iter()
            .map(|x| x.clamp(0.0, 1.0))
            .collect();
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        v
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s += self.m[(i, j)].norm_sqr();
            }
        }
        s
    }
}

/// Hermitian operator.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    m: CMat,
}

impl Observable {
    /// Validates Hermiticity (roundoff drift is symmetrized away).
    pub fn new(m: CMat) -> Result<Self> {
        let mut m = square(m, "observable")?;
        check_hermitian(&m, "observable")?;
        hermitize(&mut m);
        Ok(Observable { m })
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.m
    }

    /// `Tr(O rho)`, real for Hermitian `O`.
    pub fn expectation(&self, rho: &DensityMatrix) -> Result<f64> {
        if self.dim() != rho.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: rho.dim(),
            });
        }
        let mut tr = 0.0;
        for i in 0..self.dim() {
            for k in 0..self.dim() {
                tr += (self.m[(i, k)] * rho.m[(k, i)]).re;
            }
        }
        Ok(tr)
    }

    /// `Tr(O^2)`, the squared Hilbert-Schmidt norm.
    pub fn hs_norm_sq(&self) -> f64 {
        let mut s = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s += self.m[(i, j)].norm_sqr();
            }
        }
        s
    }
}

/// Real coordinates of an operator in the traceless Hermitian basis;
/// the traceless part of `A` is `sum_a r_a E_a`.
#[derive(Debug, Clone, PartialEq)]
pub struct BlochVector {
    d: usize,
    r: RVec,
}

impl BlochVector {
    /// `r` must have length `d^2 - 1`.
    pub fn from_vec(d: usize, r: RVec) -> Result<Self> {
        let expected = d * d - 1;
        if r.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                got: r.len(),
            });
        }
        Ok(BlochVector { d, r })
    }

    /// Hilbert-space dimension `d`.
    pub fn dim(&self) -> usize {
        self.d
    }

    /// Operator-space dimension `d^2 - 1`.
    pub fn dim_op(&self) -> usize {
        self.r.len()
    }

    pub fn coords(&self) -> &RVec {
        &self.r
    }

    pub fn norm(&self) -> f64 {
        self.r.norm()
    }
}

fn square(m: CMat, what: &'static str) -> Result<CMat> {
    if m.nrows() != m.ncols() {
        return Err(Error::domain(format!(
            "{what} must be square, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    if m.nrows() == 0 {
        return Err(Error::InvalidDimension {
            dim: 0,
            reason: "dimension must be positive",
        });
    }
    Ok(m)
}

fn check_hermitian(m: &CMat, what: &'static str) -> Result<()> {
    let scale = 1.0 + m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let defect = hermiticity_defect(m);
    if defect > HERM_TOL * scale {
        return Err(Error::domain(format!(
            "{what} is not Hermitian: defect {defect:.3e} exceeds tolerance"
        )));
    }
    Ok(())
}

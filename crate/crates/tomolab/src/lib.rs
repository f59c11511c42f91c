//! Numerical laboratory for continuous-measurement quantum state tomography
//! under random unitary dynamics.
//!
//! A single observable is measured weakly and continuously while the system
//! is driven by a sequence of unitaries. In the Heisenberg picture the
//! measurement record is a noisy linear functional of the initial state,
//!
//! ```text
//! M_n = Tr(O_n rho0) + sigma W_n,      O_n = U_n' O_{n-1} U_n
//! ```
//!
//! so tomography reduces to regularized least squares on the Bloch vector of
//! `rho0`, followed by projection onto the physical (unit-trace PSD) set.
//! The conditioning of the estimate is governed by the inverse covariance
//! `C^-1 = X' X / sigma^2` built from the design matrix
//! `X[n, a] = Tr(O_n E_a)`; its spectrum is what the random-matrix reference
//! laws in [`rmtref`] describe.
//!
//! Crate layout:
//!
//! * [`qcore`] - states, observables, the traceless Hermitian operator basis,
//!   Bloch coordinates, spin operators, fidelity.
//! * [`ensembles`] - unitary step generators: Haar, fixed repeated, random
//!   diagonal in a frame, kicked top, and spectral hybrids.
//! * [`tomograph`] - Heisenberg trajectories, design matrices, synthetic
//!   records, the regularized estimator, and the physical projection.
//! * [`infometrics`] - spectra of inverse covariances, Fisher information,
//!   Shannon entropy of the normalized spectrum, numerical rank.
//! * [`rmtref`] - Marchenko-Pastur and Porter-Thomas reference laws, Wishart
//!   sampling, the sparse diagonal-ensemble model, and spectrum/law
//!   comparison statistics.

pub mod ensembles;
pub mod error;
pub mod infometrics;
pub mod qcore;
pub mod rmtref;
pub mod tomograph;

pub use error::{Error, Result};

/// Complex matrix type used throughout.
pub type CMat = nalgebra::DMatrix<num_complex::Complex<f64>>;
/// Real matrix type used throughout.
pub type RMat = nalgebra::DMatrix<f64>;
/// Real vector type used throughout.
pub type RVec = nalgebra::DVector<f64>;
/// Complex vector type used throughout.
pub type CVec = nalgebra::DVector<num_complex::Complex<f64>>;

pub(crate) type C64 = num_complex::Complex<f64>;

pub(crate) fn c64(re: f64, im: f64) -> C64 {
    num_complex::Complex::new(re, im)
}

/// Largest absolute entry of `m - m^dagger`, a cheap Hermiticity measure.
pub(crate) fn hermiticity_defect(m: &CMat) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            let d = (m[(i, j)] - m[(j, i)].conj()).norm();
            if d > worst {
                worst = d;
            }
        }
    }
    worst
}

/// Replace `m` by `(m + m^dagger)/2`, removing roundoff-level drift.
pub(crate) fn hermitize(m: &mut CMat) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = (m[(i, j)] + m[(j, i)].conj()) * 0.5;
            m[(i, j)] = avg;
            m[(j, i)] = avg.conj();
        }
        m[(i, i)] = c64(m[(i, i)].re, 0.0);
    }
}

/// Symmetrize a real matrix in place.
pub(crate) fn symmetrize(m: &mut RMat) {
    let n = m.nrows();
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m[(i, j)] + m[(j, i)]);
            m[(i, j)] = avg;
            m[(j, i)] = avg;
        }
    }
}

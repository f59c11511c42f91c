//! Random-matrix reference laws and oracles: Marchenko-Pastur and
//! Porter-Thomas densities with entropy/Fisher functionals by quadrature,
//! Wishart sampling, the sparse superoperator approximation of the inverse
//! covariance under diagonal dynamics, and spectrum-vs-law distances.

mod compare;
mod law;
mod quad;
mod sparse;
mod wishart;

pub use compare::{law_units, samples_vs_law, spectrum_vs_law, spectrum_vs_spectrum, LawFit};
pub use law::{
    mp_entropy, mp_fisher, mp_law, pt_entropy, pt_fisher, pt_law, LawKind, SpectralLaw,
};
pub use quad::integrate;
pub use sparse::{sparse_invcov_approx, SparseInvCov};
pub use wishart::sample_wishart;

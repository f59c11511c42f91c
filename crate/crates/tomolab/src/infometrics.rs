//! Information metrics over the inverse covariance spectrum.
//!
//! Each eigenvalue of `C^-1` is the signal-to-noise ratio accumulated along
//! one operator-space direction. Three scalars summarize it: the collective
//! Fisher information `1 / sum_i 1/(lambda_i + eps)` (a regularized harmonic
//! aggregate), the Shannon entropy of the normalized spectrum (how evenly
//! information is spread over directions), and the numerical rank (how many
//! directions were probed at all).

use crate::error::{Error, Result};
use crate::tomograph::InverseCovariance;

/// Default relative eigenvalue cutoff for [`numerical_rank`].
pub const RANK_REL_TOL: f64 = 1e-10;

/// Eigenvalues of a PSD matrix, sorted descending.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigs: Vec<f64>,
}

impl Spectrum {
    /// Accepts eigenvalues in any order; sorts descending and rejects sets
    /// with entries below `-1e-8 * lambda_1` (the source is supposed to be
    /// PSD, so anything more negative than roundoff is a caller bug).
    /// Surviving negatives are clamped to zero.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::domain("spectrum must be nonempty".to_string()));
        }
        let mut eigs = values;
        eigs.sort_by(|a, b| b.partial_cmp(a).unwrap());
        let top = eigs[0].max(0.0);
        let floor = -1e-8 * top.max(f64::MIN_POSITIVE);
        if let Some(&worst) = eigs.last() {
            if worst < floor {
                return Err(Error::domain(format!(
                    "eigenvalue {worst:.6e} is too negative for a PSD source (top {top:.6e})"
                )));
            }
        }
        for x in eigs.iter_mut() {
            if *x < 0.0 {
                *x = 0.0;
            }
        }
        Ok(Spectrum { eigs })
    }

    /// Eigenvalues in descending order.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigs
    }

    /// Source dimension `D`.
    pub fn len(&self) -> usize {
        self.eigs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigs.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.eigs.iter().sum()
    }

    /// Eigenvalues divided by their sum.
    pub fn normalized(&self) -> Result<Vec<f64>> {
        let s = self.sum();
        if !(s > 0.0) {
            return Err(Error::domain(
                "cannot normalize an all-zero spectrum".to_string(),
            ));
        }
        Ok(self.eigs.iter().map(|&x| x / s).collect())
    }
}

/// Full spectrum of the inverse covariance via a symmetric eigensolver.
pub fn spectrum(invcov: &InverseCovariance) -> Result<Spectrum> {
    let vals = invcov.matrix().clone().symmetric_eigenvalues();
    Spectrum::from_values(vals.iter().cloned().collect())
}

/// Collective Fisher information `1 / sum_i 1/(lambda_i + eps)`.
pub fn fisher_info(spec: &Spectrum, epsilon: f64) -> Result<f64> {
    if !(epsilon >= 0.0) {
        return Err(Error::param("epsilon", "regularizer must be >= 0"));
    }
    let mut denom = 0.0;
    for &lam in spec.eigenvalues() {
        let shifted = lam + epsilon;
        if shifted <= 0.0 {
            return Err(Error::domain(
                "fisher_info with epsilon = 0 requires a strictly positive spectrum".to_string(),
            ));
        }
        denom += 1.0 / shifted;
    }
    Ok(1.0 / denom)
}

/// Shannon entropy (nats) of the normalized spectrum, with `0 ln 0 = 0`.
pub fn shannon_entropy(spec: &Spectrum) -> Result<f64> {
    let normed = spec.normalized()?;
    let mut h = 0.0;
    for p in normed {
        if p > 0.0 {
            h -= p * p.ln();
        }
    }
    Ok(h.max(0.0))
}

/// Count of eigenvalues above `rel_tol * lambda_1`.
pub fn numerical_rank(spec: &Spectrum, rel_tol: f64) -> Result<usize> {
    if !(rel_tol > 0.0 && rel_tol < 1.0) {
        return Err(Error::param("rel_tol", "must lie strictly in (0, 1)"));
    }
    let top = spec.eigenvalues().first().cloned().unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(0);
    }
    Ok(spec
        .eigenvalues()
        .iter()
        .filter(|&&x| x > rel_tol * top)
        .count())
}

/// One checkpoint of the information time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InfoRecord {
    pub step: usize,
    pub fisher: f64,
    pub entropy: f64,
    pub rank: usize,
}

/// Per-checkpoint information metrics along one trajectory.
#[derive(Debug, Clone, Default)]
pub struct InfoSeries {
    records: Vec<InfoRecord>,
}

impl InfoSeries {
    pub fn records(&self) -> &[InfoRecord] {
        &self.records
    }

    pub fn last(&self) -> Option<&InfoRecord> {
        self.records.last()
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

/// Builds an [`InfoSeries`] incrementally from inverse-covariance
/// checkpoints, enforcing strictly increasing steps and non-decreasing rank
/// (the design's row space only ever grows).
#[derive(Debug, Clone)]
pub struct InfoSeriesBuilder {
    epsilon: f64,
    rel_tol: f64,
    series: InfoSeries,
}

impl InfoSeriesBuilder {
    pub fn new(epsilon: f64, rel_tol: f64) -> Self {
        InfoSeriesBuilder {
            epsilon,
            rel_tol,
            series: InfoSeries::default(),
        }
    }

    /// Computes metrics for one checkpoint and appends the record; also
    /// returns the spectrum for callers that need it (final-spectrum CSV).
    pub fn push_checkpoint(
        &mut self,
        step: usize,
        invcov: &InverseCovariance,
    ) -> Result<Spectrum> {
        if let Some(last) = self.series.records.last() {
            if step <= last.step {
                return Err(Error::param(
                    "step",
                    format!("checkpoints must increase, got {} after {}", step, last.step),
                ));
            }
        }
        let spec = spectrum(invcov)?;
        let record = InfoRecord {
            step,
            fisher: fisher_info(&spec, self.epsilon)?,
            entropy: shannon_entropy(&spec)?,
            rank: numerical_rank(&spec, self.rel_tol)?,
        };
        if let Some(last) = self.series.records.last() {
            if record.rank < last.rank {
                return Err(Error::Numerical {
                    context: "info_series",
                    detail: format!(
                        "rank decreased from {} to {} at step {}; \
                         the Gram matrix should only gain directions",
                        last.rank, record.rank, step
                    ),
                });
            }
        }
        self.series.records.push(record);
        Ok(spec)
    }

    pub fn series(&self) -> &InfoSeries {
        &self.series
    }

    pub fn finish(self) -> InfoSeries {
        self.series
    }
}

/// Convenience wrapper over [`InfoSeriesBuilder`] for pre-collected
/// checkpoints.
pub fn info_series<I>(checkpoints: I, epsilon: f64, rel_tol: f64) -> Result<InfoSeries>
where
    I: IntoIterator<Item = (usize, InverseCovariance)>,
{
    let mut builder = InfoSeriesBuilder::new(epsilon, rel_tol);
    for (step, invcov) in checkpoints {
        builder.push_checkpoint(step, &invcov)?;
    }
    Ok(builder.finish())
}

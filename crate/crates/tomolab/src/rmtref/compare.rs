//! Distance statistics between spectra and reference laws.
//!
//! Simulated spectra are bridged into each law's units before comparison:
//! Marchenko-Pastur laws already live on the normalized spectrum, while
//! Porter-Thomas comparisons multiply normalized eigenvalues by the
//! superoperator dimension `d^2` and pad with exact zeros up to `d^2`
//! entries (the simulated Gram has `d^2 - 1` rows, the superoperator
//! convention `d^2`; zero modes carry no weight but do shift the empirical
//! CDF, and hiding them would overstate agreement).

use super::law::{LawKind, SpectralLaw};
use crate::error::{Error, Result};
use crate::infometrics::Spectrum;

#[derive(Debug, Clone, Copy)]
pub struct LawFit {
    /// L1 distance between binned empirical and law probabilities, plus any
    /// empirical mass outside the law's support; in `[0, 2]`.
    pub l1: f64,
    /// Kolmogorov-Smirnov statistic between empirical and law CDFs.
    pub ks: f64,
    /// Number of Freedman-Diaconis bins used for the L1 statistic.
    pub bins: usize,
}

/// Maps a spectrum into the law's units, ascending.
///
/// For Marchenko-Pastur the scale is fixed by matching the sample mean to
/// the law mean `1/D`: for a single `D`-dimensional spectrum this is exactly
/// division by the eigenvalue sum, and it stays correct when several
/// normalized spectra are pooled into one bag (the sum then counts trials,
/// not scale).
pub fn law_units(spec: &Spectrum, law: &SpectralLaw) -> Result<Vec<f64>> {
    let mut samples = match law.kind() {
        LawKind::MarchenkoPastur { d_op, .. } => {
            let scale = spec.sum() * d_op as f64 / spec.len() as f64;
            if !(scale > 0.0) {
                return Err(Error::domain(
                    "cannot rescale an all-zero spectrum".to_string(),
                ));
            }
            spec.eigenvalues().iter().map(|&x| x / scale).collect()
        }
        LawKind::PorterThomas { dim_sq } => {
            if spec.len() > dim_sq {
                return Err(Error::param(
                    "spectrum",
                    format!(
                        "spectrum has {} eigenvalues but the law covers only {dim_sq} dimensions",
                        spec.len()
                    ),
                ));
            }
            let mut v: Vec<f64> = spec
                .normalized()?
                .into_iter()
                .map(|x| x * dim_sq as f64)
                .collect();
            v.resize(dim_sq, 0.0);
            v
        }
    };
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(samples)
}

fn iqr(sorted: &[f64]) -> f64 {
    let n = sorted.len();
    sorted[(3 * n) / 4] - sorted[n / 4]
}

fn freedman_diaconis_bins(sorted: &[f64], lo: f64, hi: f64) -> usize {
    let n = sorted.len();
    let spread = iqr(sorted);
    let width = 2.0 * spread / (n as f64).cbrt();
    let bins = if width > 0.0 {
        ((hi - lo) / width).ceil() as usize
    } else {
        50
    };
    bins.clamp(5, 2000)
}

/// Compares a spectrum against a law: Freedman-Diaconis histogram on the
/// law's support for the L1 distance, empirical-vs-law CDF supremum for KS.
pub fn spectrum_vs_law(spec: &Spectrum, law: &SpectralLaw) -> Result<LawFit> {
    samples_vs_law(&law_units(spec, law)?, law)
}

/// [`spectrum_vs_law`] for samples already expressed in the law's units,
/// e.g. pooled across trials with [`law_units`].
pub fn samples_vs_law(samples: &[f64], law: &SpectralLaw) -> Result<LawFit> {
    if samples.is_empty() {
        return Err(Error::param("samples", "need at least one sample"));
    }
    if samples.iter().any(|x| !x.is_finite()) {
        return Err(Error::param("samples", "samples must be finite"));
    }
    let mut samples = samples.to_vec();
    samples.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = samples.len();
    let (lo, hi) = law.support();

    let bins = freedman_diaconis_bins(&samples, lo, hi);
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    let mut below = 0usize;
    let mut above = 0usize;
    for &x in &samples {
        if x < lo {
            below += 1;
        } else if x > hi {
            above += 1;
        } else {
            let idx = (((x - lo) / width) as usize).min(bins - 1);
            counts[idx] += 1;
        }
    }
    let mut l1 = (below + above) as f64 / n as f64;
    for (b, &count) in counts.iter().enumerate() {
        let e0 = lo + b as f64 * width;
        let e1 = lo + (b + 1) as f64 * width;
        let p_law = law.cdf(e1) - law.cdf(e0);
        l1 += (count as f64 / n as f64 - p_law).abs();
    }

    let mut ks = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = law.cdf(x);
        ks = ks.max((f - i as f64 / n as f64).abs());
        ks = ks.max((f - (i + 1) as f64 / n as f64).abs());
    }

    Ok(LawFit { l1, ks, bins })
}

/// Two-sample variant: both spectra normalized, compared directly.
/// Identical spectra give exactly `l1 = 0, ks = 0`.
pub fn spectrum_vs_spectrum(a: &Spectrum, b: &Spectrum) -> Result<LawFit> {
    let mut xa = a.normalized()?;
    let mut xb = b.normalized()?;
    xa.sort_by(|x, y| x.partial_cmp(y).unwrap());
    xb.sort_by(|x, y| x.partial_cmp(y).unwrap());

    // KS by a merge walk over both sorted samples.
    let (mut i, mut j) = (0usize, 0usize);
    let (na, nb) = (xa.len() as f64, xb.len() as f64);
    let mut ks = 0.0f64;
    while i < xa.len() || j < xb.len() {
        let next_a = xa.get(i).copied().unwrap_or(f64::INFINITY);
        let next_b = xb.get(j).copied().unwrap_or(f64::INFINITY);
        let x = next_a.min(next_b);
        while i < xa.len() && xa[i] <= x {
            i += 1;
        }
        while j < xb.len() && xb[j] <= x {
            j += 1;
        }
        ks = ks.max((i as f64 / na - j as f64 / nb).abs());
    }

    let lo = xa[0].min(xb[0]);
    let hi = xa[xa.len() - 1].max(xb[xb.len() - 1]);
    if hi <= lo {
        return Ok(LawFit { l1: 0.0, ks, bins: 1 });
    }
    let mut pooled: Vec<f64> = xa.iter().chain(xb.iter()).cloned().collect();
    pooled.sort_by(|x, y| x.partial_cmp(y).unwrap());
    let bins = freedman_diaconis_bins(&pooled, lo, hi);
    let width = (hi - lo) / bins as f64;
    let mut pa = vec![0.0f64; bins];
    let mut pb = vec![0.0f64; bins];
    for &x in &xa {
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        pa[idx] += 1.0 / na;
    }
    for &x in &xb {
        let idx = (((x - lo) / width) as usize).min(bins - 1);
        pb[idx] += 1.0 / nb;
    }
    let l1 = pa.iter().zip(&pb).map(|(p, q)| (p - q).abs()).sum();
    Ok(LawFit { l1, ks, bins })
}

//! Marchenko-Pastur and Porter-Thomas reference laws.
//!
//! Both laws are represented in the units used for comparisons against
//! simulated spectra:
//!
//! * Marchenko-Pastur describes the *normalized* spectrum (eigenvalues
//!   divided by their sum), so the mean-1 law is rescaled by `1/D` and the
//!   support is `(1 +- sqrt(D/N))^2 / D`.
//! * Porter-Thomas is the chi-squared law with one degree of freedom,
//!   `rho(x) = e^{-x/2} / sqrt(2 pi x)`, mean 1, describing normalized
//!   eigenvalues multiplied by the superoperator dimension `d^2`.
//!
//! Endpoint singularities are removed by substitution before quadrature:
//! `lambda = a + (b - a) sin^2(theta)` for MP (square-root edges) and
//! `lambda = u^2` for PT (inverse-square-root origin), after which every
//! integrand here is smooth.
//!
//! The MP support formula as printed in the source material,
//! `(1/N)(1 - (D/N)^{-1/2})^2` for *both* bounds, cannot bound a
//! positive-measure support; the standard `(1 +- sqrt(D/N))^2` form is used
//! instead and reproduces the reference entropy 6.00363 for D=440, N=2646
//! through `ln D - q/2`. The CLI comparison report states which form is in
//! use.

use super::quad::integrate;
use crate::error::{Error, Result};

/// Absolute quadrature tolerance for all law functionals.
const QUAD_TOL: f64 = 1e-9;
/// Acceptable deviation of the density integral from one.
const NORM_TOL: f64 = 1e-9;
/// PT truncation: `u = sqrt(lambda)` grid bound; the discarded tail mass
/// `2 (1 - Phi(12))` is around 1e-33.
const PT_UMAX: f64 = 12.0;
const MP_GRID: usize = 1024;
const PT_GRID: usize = 1200;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LawKind {
    /// Spectrum of `X^T X` for an `N x D` standard Gaussian design,
    /// normalized to unit eigenvalue sum.
    MarchenkoPastur { d_op: usize, n_steps: usize },
    /// Squared overlaps in a chaotic eigenbasis: chi-squared with one
    /// degree of freedom over `d^2` superoperator dimensions.
    PorterThomas { dim_sq: usize },
}

#[derive(Debug, Clone)]
pub struct SpectralLaw {
    kind: LawKind,
    support: (f64, f64),
    /// `(lambda, cdf)` pairs, lambda increasing, cdf in [0, 1].
    grid: Vec<(f64, f64)>,
}

fn mp_lambda(a: f64, b: f64, theta: f64) -> f64 {
    let s = theta.sin();
    a + (b - a) * s * s
}

/// `rho(lambda(theta)) dlambda/dtheta` for the rescaled MP law: smooth on
/// `[0, pi/2]` because the square-root edge factors cancel into
/// `sin(theta) cos(theta)`.
fn mp_weight(d: f64, q: f64, a: f64, b: f64, theta: f64) -> f64 {
    let (s, c) = theta.sin_cos();
    let lam = mp_lambda(a, b, theta);
    let width = b - a;
    d * width * width * 2.0 * s * s * c * c / (2.0 * std::f64::consts::PI * q * lam)
}

/// `rho(u^2) d(u^2)/du`: twice the standard normal density.
fn pt_weight(u: f64) -> f64 {
    2.0 * (-0.5 * u * u).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

impl SpectralLaw {
    pub fn kind(&self) -> LawKind {
        self.kind
    }

    /// Support of the density. For Porter-Thomas the upper bound is the
    /// truncation point carrying all but ~1e-33 of the mass.
    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Probability density at `x` (zero outside the support).
    pub fn density(&self, x: f64) -> f64 {
        match self.kind {
            LawKind::MarchenkoPastur { d_op, n_steps } => {
                let (a, b) = self.support;
                if x <= a || x >= b {
                    return 0.0;
                }
                let d = d_op as f64;
                let q = d / n_steps as f64;
                d * ((x - a) * (b - x)).sqrt() / (2.0 * std::f64::consts::PI * q * x)
            }
            LawKind::PorterThomas { .. } => {
                if x <= 0.0 {
                    return 0.0;
                }
                (-0.5 * x).exp() / (2.0 * std::f64::consts::PI * x).sqrt()
            }
        }
    }

    /// Expectation `E[f(lambda)]` by adaptive quadrature in the
    /// singularity-free substituted variable.
    pub fn expect<F: Fn(f64) -> f64>(&self, f: F) -> Result<f64> {
        match self.kind {
            LawKind::MarchenkoPastur { d_op, n_steps } => {
                let (a, b) = self.support;
                let d = d_op as f64;
                let q = d / n_steps as f64;
                integrate(
                    |theta: f64| f(mp_lambda(a, b, theta)) * mp_weight(d, q, a, b, theta),
                    0.0,
                    std::f64::consts::FRAC_PI_2,
                    QUAD_TOL,
                )
            }
            LawKind::PorterThomas { .. } => {
                integrate(|u: f64| f(u * u) * pt_weight(u), 0.0, PT_UMAX, QUAD_TOL)
            }
        }
    }

    /// `P(lambda <= x)` by monotone interpolation on the precomputed grid.
    pub fn cdf(&self, x: f64) -> f64 {
        let (a, b) = self.support;
        if x <= a {
            return 0.0;
        }
        if x >= b {
            return 1.0;
        }
        let idx = self
            .grid
            .partition_point(|&(lam, _)| lam < x)
            .clamp(1, self.grid.len() - 1);
        let (x0, f0) = self.grid[idx - 1];
        let (x1, f1) = self.grid[idx];
        if x1 <= x0 {
            return f0;
        }
        (f0 + (f1 - f0) * (x - x0) / (x1 - x0)).clamp(0.0, 1.0)
    }

    /// Quantile function, the inverse of [`SpectralLaw::cdf`].
    pub fn inv_cdf(&self, p: f64) -> f64 {
        let p = p.clamp(0.0, 1.0);
        let idx = self.grid.partition_point(|&(_, f)| f < p);
        if idx == 0 {
            return self.grid[0].0;
        }
        if idx >= self.grid.len() {
            return self.grid[self.grid.len() - 1].0;
        }
        let (x0, f0) = self.grid[idx - 1];
        let (x1, f1) = self.grid[idx];
        if f1 <= f0 {
            return x0;
        }
        x0 + (x1 - x0) * (p - f0) / (f1 - f0)
    }
}

/// Marchenko-Pastur law for a `D`-dimensional spectrum after `N` steps,
/// in normalized (unit eigenvalue sum) units.
pub fn mp_law(d_op: usize, n_steps: usize) -> Result<SpectralLaw> {
    if d_op < 2 {
        return Err(Error::InvalidDimension {
            dim: d_op,
            reason: "Marchenko-Pastur law needs D >= 2",
        });
    }
    if d_op > n_steps {
        return Err(Error::param(
            "aspect_ratio",
            format!("D = {d_op} exceeds N = {n_steps}; the law needs D <= N"),
        ));
    }
    let d = d_op as f64;
    let q = d / n_steps as f64;
    let sq = q.sqrt();
    let (a, b) = ((1.0 - sq).powi(2) / d, (1.0 + sq).powi(2) / d);
    let grid = build_grid(
        MP_GRID,
        |i, m| {
            let theta = std::f64::consts::FRAC_PI_2 * i as f64 / m as f64;
            (mp_lambda(a, b, theta), theta)
        },
        |t0, t1| {
            integrate(
                |theta| mp_weight(d, q, a, b, theta),
                t0,
                t1,
                QUAD_TOL / MP_GRID as f64,
            )
        },
    )?;
    let law = SpectralLaw {
        kind: LawKind::MarchenkoPastur { d_op, n_steps },
        support: (a, b),
        grid,
    };
    check_normalized(&law)?;
    Ok(law)
}

/// Porter-Thomas law for superoperator dimension `d^2`.
pub fn pt_law(d: usize) -> Result<SpectralLaw> {
    if d < 2 {
        return Err(Error::InvalidDimension {
            dim: d,
            reason: "Porter-Thomas law needs d >= 2",
        });
    }
    let grid = build_grid(
        PT_GRID,
        |i, m| {
            let u = PT_UMAX * i as f64 / m as f64;
            (u * u, u)
        },
        |u0, u1| integrate(pt_weight, u0, u1, QUAD_TOL / PT_GRID as f64),
    )?;
    let law = SpectralLaw {
        kind: LawKind::PorterThomas { dim_sq: d * d },
        support: (0.0, PT_UMAX * PT_UMAX),
        grid,
    };
    check_normalized(&law)?;
    Ok(law)
}

/// Cumulative integration over grid cells; `node` maps a grid index to
/// `(lambda, substituted variable)`, `cell` integrates the weight over one
/// substituted-variable cell.
fn build_grid<N, C>(segments: usize, node: N, cell: C) -> Result<Vec<(f64, f64)>>
where
    N: Fn(usize, usize) -> (f64, f64),
    C: Fn(f64, f64) -> Result<f64>,
{
    let mut grid = Vec::with_capacity(segments + 1);
    let (lam0, mut prev_t) = node(0, segments);
    grid.push((lam0, 0.0));
    let mut acc = 0.0;
    for i in 1..=segments {
        let (lam, t) = node(i, segments);
        acc += cell(prev_t, t)?;
        grid.push((lam, acc));
        prev_t = t;
    }
    let total = acc;
    if !(total > 0.0) {
        return Err(Error::Numerical {
            context: "spectral law",
            detail: "density integrated to a non-positive total".to_string(),
        });
    }
    for (_, f) in grid.iter_mut() {
        *f /= total;
    }
    Ok(grid)
}

fn check_normalized(law: &SpectralLaw) -> Result<()> {
    let total = law.expect(|_| 1.0)?;
    if (total - 1.0).abs() > NORM_TOL {
        return Err(Error::Numerical {
            context: "spectral law",
            detail: format!("density integrates to {total}, expected 1 within {NORM_TOL:e}"),
        });
    }
    Ok(())
}

/// Shannon entropy of a `D`-dimensional spectrum drawn from the MP law:
/// `H = -D E[lambda ln lambda]` over normalized eigenvalues.
pub fn mp_entropy(law: &SpectralLaw) -> Result<f64> {
    let LawKind::MarchenkoPastur { d_op, .. } = law.kind() else {
        return Err(Error::param(
            "law",
            "mp_entropy expects a Marchenko-Pastur law",
        ));
    };
    let h = law.expect(|lam| if lam > 0.0 { lam * lam.ln() } else { 0.0 })?;
    Ok(-(d_op as f64) * h)
}

/// Collective Fisher information predicted by the MP law:
/// `FI = 1 / (D E[1/(lambda + eps)])` with `lambda` rescaled so the
/// spectrum sums to `trace_total`.
pub fn mp_fisher(law: &SpectralLaw, trace_total: f64, epsilon: f64) -> Result<f64> {
    let LawKind::MarchenkoPastur { d_op, .. } = law.kind() else {
        return Err(Error::param(
            "law",
            "mp_fisher expects a Marchenko-Pastur law",
        ));
    };
    if !(trace_total > 0.0) {
        return Err(Error::param("trace_total", "must be positive"));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::param("epsilon", "must be >= 0"));
    }
    let denom = law.expect(|lam| 1.0 / (trace_total * lam + epsilon))?;
    Ok(1.0 / (d_op as f64 * denom))
}

/// Porter-Thomas entropy `-d^2 int (lam/d^2) ln(lam/d^2) rho(lam) dlam`,
/// analytically `ln(d^2) - (2 - gamma - ln 2)`.
pub fn pt_entropy(d: usize) -> Result<f64> {
    let law = pt_law(d)?;
    let dsq = (d * d) as f64;
    let h = law.expect(|lam| {
        let x = lam / dsq;
        if x > 0.0 {
            x * x.ln()
        } else {
            0.0
        }
    })?;
    Ok(-dsq * h)
}

/// Porter-Thomas Fisher prediction in the rescaled units
/// `lambda -> lambda trace_total / d^2 + epsilon`:
/// `FI = 1 / (d^2 E[d^2 / (lambda trace_total + d^2 epsilon)])`.
pub fn pt_fisher(d: usize, trace_total: f64, epsilon: f64) -> Result<f64> {
    if !(trace_total > 0.0) {
        return Err(Error::param("trace_total", "must be positive"));
    }
    if !(epsilon >= 0.0) {
        return Err(Error::param("epsilon", "must be >= 0"));
    }
    let law = pt_law(d)?;
    let dsq = (d * d) as f64;
    let denom = law.expect(|lam| dsq / (lam * trace_total + dsq * epsilon))?;
    Ok(1.0 / (dsq * denom))
}

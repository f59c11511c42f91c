//! Shared experiment staging: the operator basis, per-trial streams, process
//! construction, output-directory plumbing, and small aggregation helpers.

use std::fs;
use std::path::PathBuf;
use std::time::Instant;

use rand_chacha::ChaCha12Rng;
use tomolab::ensembles::{
    kicked_top, sample_haar_unitary, KickedTopParams, ProcessPolicy, Unitary, UnitaryProcess,
};
use tomolab::qcore::{
    make_hermitian_basis, sample_mixed_state, sample_pure_state, spin_operators, DensityMatrix,
    Observable, OperatorBasis,
};
use tomolab::CMat;

use crate::config::{Config, Ensemble, FrameChoice, ObservableChoice, StateFamily};
use crate::error::{setup_err, AppError};
use crate::meta::write_metadata;
use crate::seeds::{stream, Domain};

enum PolicySpec {
    HaarPerStep,
    Fixed(Unitary),
    Diagonal(Unitary),
}

/// Everything shared across trials: the basis, the base observable, and the
/// experiment-level unitary (fixed map or diagonal frame) when there is one.
pub struct Experiment {
    pub basis: OperatorBasis,
    base: Observable,
    policy: PolicySpec,
}

pub fn prepare(cfg: &Config) -> Result<Experiment, AppError> {
    let basis = make_hermitian_basis(cfg.dim).map_err(setup_err)?;
    let spin = spin_operators(cfg.spin_j()).map_err(setup_err)?;
    let base = match cfg.observable {
        ObservableChoice::Jx => spin.jx().clone(),
        // `rotated` conjugates Jz by a fresh Haar unitary per trial.
        ObservableChoice::Jz | ObservableChoice::Rotated => spin.jz().clone(),
    };
    let policy = match cfg.ensemble {
        Ensemble::Haar => PolicySpec::HaarPerStep,
        Ensemble::FixedHaar => {
            let mut rng = stream(cfg.seed, Domain::Frame, 0);
            PolicySpec::Fixed(sample_haar_unitary(cfg.dim, &mut rng).map_err(setup_err)?)
        }
        Ensemble::Diagonal => {
            let frame = match cfg.frame {
                FrameChoice::Random => {
                    let mut rng = stream(cfg.seed, Domain::Frame, 0);
                    sample_haar_unitary(cfg.dim, &mut rng).map_err(setup_err)?
                }
                FrameChoice::Computational => {
                    Unitary::new(CMat::identity(cfg.dim, cfg.dim)).map_err(setup_err)?
                }
            };
            PolicySpec::Diagonal(frame)
        }
        Ensemble::KickedTop => {
            let k0 = cfg
                .k0
                .ok_or_else(|| AppError::Config("ensemble=kicked-top needs k0".to_string()))?;
            let params = KickedTopParams { j: cfg.spin_j(), k0 };
            PolicySpec::Fixed(kicked_top(&params).map_err(setup_err)?)
        }
    };
    Ok(Experiment { basis, base, policy })
}

impl Experiment {
    /// Experiment with an externally built fixed map (kicked-top cases build
    /// their unitaries per case rather than from the config).
    pub fn fixed(basis: OperatorBasis, base: Observable, unitary: Unitary) -> Self {
        Experiment {
            basis,
            base,
            policy: PolicySpec::Fixed(unitary),
        }
    }

    pub fn process(
        &self,
        cfg: &Config,
        trial: usize,
    ) -> tomolab::Result<UnitaryProcess<ChaCha12Rng>> {
        let rng = stream(cfg.seed, Domain::Process, trial as u64);
        let policy = match &self.policy {
            PolicySpec::HaarPerStep => ProcessPolicy::HaarPerStep { dim: cfg.dim },
            PolicySpec::Fixed(u) => ProcessPolicy::Fixed(u.clone()),
            PolicySpec::Diagonal(frame) => ProcessPolicy::RandomDiagonal { frame: frame.clone() },
        };
        UnitaryProcess::new(policy, rng)
    }

    pub fn observable(&self, cfg: &Config, trial: usize) -> tomolab::Result<Observable> {
        match cfg.observable {
            ObservableChoice::Rotated => rotated_observable(&self.base, cfg.seed, trial),
            _ => Ok(self.base.clone()),
        }
    }
}

/// Conjugates `base` by a Haar unitary from the rotation stream of `trial`.
pub fn rotated_observable(
    base: &Observable,
    seed: u64,
    trial: usize,
) -> tomolab::Result<Observable> {
    let mut rng = stream(seed, Domain::Rotation, trial as u64);
    let w = sample_haar_unitary(base.dim(), &mut rng)?;
    Observable::new(w.adjoint().matrix() * base.matrix() * w.matrix())
}

pub fn trial_state(cfg: &Config, trial: usize) -> tomolab::Result<DensityMatrix> {
    let mut rng = stream(cfg.seed, Domain::State, trial as u64);
    match cfg.state_family {
        StateFamily::HaarPure => sample_pure_state(cfg.dim, &mut rng),
        StateFamily::HsMixed => sample_mixed_state(cfg.dim, &mut rng),
    }
}

/// The steps at which metrics are recorded: every multiple of `stride`, plus
/// the final step. Must stay in lockstep with the reconstruction routine.
pub fn checkpoint_steps(steps: usize, stride: usize) -> Vec<usize> {
    (1..=steps)
        .filter(|n| n % stride == 0 || *n == steps)
        .collect()
}

pub fn mean_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let var = xs.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Lower median: the order statistic at index `(len - 1) / 2`. Integer-valued
/// for integer inputs, which keeps aggregated rank columns integral.
pub fn lower_median(xs: &mut [usize]) -> usize {
    xs.sort_unstable();
    xs[(xs.len() - 1) / 2]
}

/// Creates the output directory and writes the resolved config snapshot.
pub fn prepare_out(cfg: &Config) -> Result<PathBuf, AppError> {
    fs::create_dir_all(&cfg.out)?;
    fs::write(cfg.out.join("config.txt"), cfg.snapshot())?;
    Ok(cfg.out.clone())
}

/// Standard metadata block shared by all commands, with per-command extras
/// appended after the common keys and failed-trial details at the end.
pub fn write_meta(
    cfg: &Config,
    started: Instant,
    threads: usize,
    failures: &[(usize, String)],
    extra: &[(&str, String)],
) -> Result<(), AppError> {
    let mut pairs: Vec<(&str, String)> = vec![
        ("version", env!("CARGO_PKG_VERSION").to_string()),
        ("command", cfg.command.name().to_string()),
        ("seed", cfg.seed.to_string()),
        ("wall_time_s", format!("{:.3}", started.elapsed().as_secs_f64())),
        ("trials", cfg.trials.to_string()),
        ("trials_failed", failures.len().to_string()),
        ("threads", threads.to_string()),
    ];
    for (k, v) in extra {
        pairs.push((k, v.clone()));
    }
    let failure_keys: Vec<String> = failures
        .iter()
        .map(|(i, _)| format!("trial_{i}_error"))
        .collect();
    for (key, (_, msg)) in failure_keys.iter().zip(failures) {
        pairs.push((key.as_str(), msg.clone()));
    }
    write_metadata(&cfg.out.join("metadata.txt"), &pairs)?;
    Ok(())
}

/// At least 90% of trials must succeed; otherwise the run exits with code 3.
pub fn check_quota(trials: usize, failed: usize) -> Result<(), AppError> {
    let succeeded = trials - failed;
    if succeeded * 10 < trials * 9 {
        return Err(AppError::Failures(format!(
            "{failed} of {trials} trials failed, exceeding the 10% budget"
        )));
    }
    Ok(())
}

/// All-trials-failed is reported through the same failure exit path, carrying
/// the first error as the representative cause.
pub fn no_successes(trials: usize, failures: &[(usize, String)]) -> AppError {
    let detail = failures
        .first()
        .map(|(i, msg)| format!("; first failure (trial {i}): {msg}"))
        .unwrap_or_default();
    AppError::Failures(format!("all {trials} trials failed{detail}"))
}

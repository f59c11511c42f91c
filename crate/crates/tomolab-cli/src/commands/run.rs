//! `run`: reconstruct the initial state repeatedly and report mean fidelity
//! against measurement step.

use std::time::Instant;

use tomolab::tomograph::{reconstruct, Checkpoint, ReconstructSpec};

use crate::commands::common::{
    check_quota, checkpoint_steps, mean_stderr, no_successes, prepare, prepare_out, trial_state,
    write_meta,
};
use crate::config::Config;
use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::AppError;
use crate::runner::{build_pool, partition, run_trials, thread_count};
use crate::seeds::{stream, Domain};
use crate::svg::{line_chart, Series};

pub struct RunSummary {
    pub steps: Vec<usize>,
    pub mean_fidelity: Vec<f64>,
    pub stderr_fidelity: Vec<f64>,
    /// Final-checkpoint fidelity of every successful trial, in trial order.
    pub final_fidelities: Vec<f64>,
    pub trials_failed: usize,
}

pub fn cmd_run(cfg: &Config) -> Result<RunSummary, AppError> {
    let started = Instant::now();
    let exp = prepare(cfg)?;
    let out = prepare_out(cfg)?;
    let pool = build_pool(cfg.trials)?;

    let results = run_trials(&pool, cfg.trials, |trial| {
        let state = trial_state(cfg, trial)?;
        let observable = exp.observable(cfg, trial)?;
        let mut process = exp.process(cfg, trial)?;
        let mut noise = stream(cfg.seed, Domain::Noise, trial as u64);
        let spec = ReconstructSpec {
            observable: &observable,
            basis: &exp.basis,
            state: &state,
            steps: cfg.steps,
            sigma: cfg.sigma,
            epsilon: cfg.epsilon,
            stride: cfg.stride,
        };
        Ok(reconstruct(&spec, &mut process, &mut noise)?.checkpoints)
    });
    let (ok, failures) = partition(results);
    if ok.is_empty() {
        return Err(no_successes(cfg.trials, &failures));
    }

    for (trial, cps) in &ok {
        let mut w = CsvWriter::new(&["step", "fidelity"]);
        for c in cps {
            w.row(&[c.step.to_string(), fmt_f64(c.fidelity)]);
        }
        w.write(&out.join(format!("trial_{trial:03}.csv")))?;
    }

    let steps = checkpoint_steps(cfg.steps, cfg.stride);
    let mut mean_fidelity = Vec::with_capacity(steps.len());
    let mut stderr_fidelity = Vec::with_capacity(steps.len());
    let mut w = CsvWriter::new(&["step", "mean_fidelity", "stderr_fidelity"]);
    for (k, &step) in steps.iter().enumerate() {
        let xs: Vec<f64> = ok
            .iter()
            .map(|(_, cps)| {
                debug_assert_eq!(cps[k].step, step);
                cps[k].fidelity
            })
            .collect();
        let (m, se) = mean_stderr(&xs);
        w.row(&[step.to_string(), fmt_f64(m), fmt_f64(se)]);
        mean_fidelity.push(m);
        stderr_fidelity.push(se);
    }
    w.write(&out.join("run.csv"))?;

    if cfg.plots {
        let pts: Vec<(f64, f64)> = steps
            .iter()
            .zip(&mean_fidelity)
            .map(|(&s, &m)| (s as f64, m))
            .collect();
        line_chart(
            &out.join("fidelity.svg"),
            "Mean reconstruction fidelity",
            "measurement step",
            "fidelity",
            &[Series {
                label: "mean over trials",
                points: &pts,
            }],
        )?;
    }

    let final_fidelities: Vec<f64> = ok
        .iter()
        .map(|(_, cps)| cps.last().map_or(f64::NAN, |c: &Checkpoint| c.fidelity))
        .collect();
    let nonconverged: usize = ok
        .iter()
        .map(|(_, cps)| cps.iter().filter(|c| !c.converged).count())
        .sum();
    write_meta(
        cfg,
        started,
        thread_count(&pool),
        &failures,
        &[("projections_nonconverged", nonconverged.to_string())],
    )?;

    let (fm, fse) = (
        *mean_fidelity.last().expect("at least one checkpoint"),
        *stderr_fidelity.last().expect("at least one checkpoint"),
    );
    println!(
        "run: d={} steps={} sigma={} trials={} ({} failed)",
        cfg.dim,
        cfg.steps,
        cfg.sigma,
        cfg.trials,
        failures.len()
    );
    println!(
        "final mean fidelity {:.6} +/- {:.6} at step {}",
        fm,
        fse,
        steps.last().expect("at least one checkpoint")
    );
    println!("artifacts written to {}", out.display());

    check_quota(cfg.trials, failures.len())?;
    Ok(RunSummary {
        steps,
        mean_fidelity,
        stderr_fidelity,
        final_fidelities,
        trials_failed: failures.len(),
    })
}

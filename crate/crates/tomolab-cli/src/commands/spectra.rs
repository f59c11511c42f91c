//! `spectra`: track the inverse-covariance spectrum of the design along the
//! record and report Fisher information, spectral entropy, and rank.

use std::time::Instant;

use tomolab::infometrics::{InfoRecord, InfoSeriesBuilder, Spectrum, RANK_REL_TOL};
use tomolab::tomograph::{DesignAccumulator, InverseCovariance};

use crate::commands::common::{
    check_quota, checkpoint_steps, lower_median, mean_stderr, no_successes, prepare, prepare_out,
    write_meta, Experiment,
};
use crate::config::Config;
use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::AppError;
use crate::runner::{build_pool, partition, run_trials, thread_count};
use crate::svg::{line_chart, Series};

pub struct SpectraSummary {
    pub steps: Vec<usize>,
    pub fisher_mean: Vec<f64>,
    pub entropy_mean: Vec<f64>,
    pub rank_median: Vec<usize>,
    /// Per successful trial, in trial order.
    pub final_fishers: Vec<f64>,
    pub final_entropies: Vec<f64>,
    pub final_ranks: Vec<usize>,
    pub final_traces: Vec<f64>,
    pub trials_failed: usize,
}

pub struct TrialSpectra {
    pub records: Vec<InfoRecord>,
    pub final_spectrum: Spectrum,
}

/// One design pass: no records are synthesized, only the Gram matrix grows.
/// The record values do not enter the inverse covariance, so the absorbed
/// measurement value is irrelevant and zero is used.
pub fn trial_spectra(
    cfg: &Config,
    exp: &Experiment,
    trial: usize,
    stride: usize,
) -> tomolab::Result<TrialSpectra> {
    let observable = exp.observable(cfg, trial)?;
    let mut process = exp.process(cfg, trial)?;
    let mut acc = DesignAccumulator::new(&observable, &exp.basis)?;
    let mut builder = InfoSeriesBuilder::new(cfg.epsilon, RANK_REL_TOL);
    let inv_sigma2 = 1.0 / (cfg.sigma * cfg.sigma);
    let mut final_spectrum = None;
    for n in 1..=cfg.steps {
        acc.absorb_value(&exp.basis, 0.0)?;
        if n % stride == 0 || n == cfg.steps {
            let invcov = InverseCovariance::from_matrix(acc.gram() * inv_sigma2)?;
            let spec = builder.push_checkpoint(n, &invcov)?;
            if n == cfg.steps {
                final_spectrum = Some(spec);
            }
        }
        if n < cfg.steps {
            let u = process.next_unitary()?;
            acc.advance(&u)?;
        }
    }
    Ok(TrialSpectra {
        records: builder.finish().records().to_vec(),
        final_spectrum: final_spectrum.expect("final step is always a checkpoint"),
    })
}

pub fn cmd_spectra(cfg: &Config) -> Result<SpectraSummary, AppError> {
    let started = Instant::now();
    let exp = prepare(cfg)?;
    let out = prepare_out(cfg)?;
    let pool = build_pool(cfg.trials)?;

    let results = run_trials(&pool, cfg.trials, |trial| {
        trial_spectra(cfg, &exp, trial, cfg.stride)
    });
    let (ok, failures) = partition(results);
    if ok.is_empty() {
        return Err(no_successes(cfg.trials, &failures));
    }

    let steps = checkpoint_steps(cfg.steps, cfg.stride);
    let mut fisher_mean = Vec::with_capacity(steps.len());
    let mut entropy_mean = Vec::with_capacity(steps.len());
    let mut rank_median = Vec::with_capacity(steps.len());
    let mut w = CsvWriter::new(&["step", "fisher", "entropy", "rank"]);
    for (k, &step) in steps.iter().enumerate() {
        let fishers: Vec<f64> = ok.iter().map(|(_, t)| t.records[k].fisher).collect();
        let entropies: Vec<f64> = ok.iter().map(|(_, t)| t.records[k].entropy).collect();
        let mut ranks: Vec<usize> = ok.iter().map(|(_, t)| t.records[k].rank).collect();
        debug_assert!(ok.iter().all(|(_, t)| t.records[k].step == step));
        let (fm, _) = mean_stderr(&fishers);
        let (hm, _) = mean_stderr(&entropies);
        let rm = lower_median(&mut ranks);
        w.row(&[step.to_string(), fmt_f64(fm), fmt_f64(hm), rm.to_string()]);
        fisher_mean.push(fm);
        entropy_mean.push(hm);
        rank_median.push(rm);
    }
    w.write(&out.join("spectra.csv"))?;

    // Final spectrum of the first successful trial, largest eigenvalue first.
    let (_, first) = &ok[0];
    let total = first.final_spectrum.sum();
    let mut sw = CsvWriter::new(&["index", "eigenvalue", "normalized_eigenvalue"]);
    for (i, &lambda) in first.final_spectrum.eigenvalues().iter().enumerate() {
        sw.row(&[i.to_string(), fmt_f64(lambda), fmt_f64(lambda / total)]);
    }
    sw.write(&out.join("spectrum_final.csv"))?;

    if cfg.plots {
        let xs: Vec<f64> = steps.iter().map(|&s| s as f64).collect();
        let e_pts: Vec<(f64, f64)> = xs.iter().copied().zip(entropy_mean.iter().copied()).collect();
        let f_pts: Vec<(f64, f64)> = xs.iter().copied().zip(fisher_mean.iter().copied()).collect();
        line_chart(
            &out.join("spectra_entropy.svg"),
            "Spectral entropy of the inverse covariance",
            "measurement step",
            "entropy (nats)",
            &[Series { label: "mean entropy", points: &e_pts }],
        )?;
        line_chart(
            &out.join("spectra_fisher.svg"),
            "Fisher information",
            "measurement step",
            "fisher",
            &[Series { label: "mean fisher", points: &f_pts }],
        )?;
    }

    let summary = SpectraSummary {
        steps,
        fisher_mean,
        entropy_mean,
        rank_median,
        final_fishers: ok
            .iter()
            .map(|(_, t)| t.records.last().expect("nonempty series").fisher)
            .collect(),
        final_entropies: ok
            .iter()
            .map(|(_, t)| t.records.last().expect("nonempty series").entropy)
            .collect(),
        final_ranks: ok
            .iter()
            .map(|(_, t)| t.records.last().expect("nonempty series").rank)
            .collect(),
        final_traces: ok.iter().map(|(_, t)| t.final_spectrum.sum()).collect(),
        trials_failed: failures.len(),
    };
    write_meta(cfg, started, thread_count(&pool), &failures, &[])?;

    println!(
        "spectra: d={} steps={} sigma={} epsilon={} trials={} ({} failed)",
        cfg.dim,
        cfg.steps,
        cfg.sigma,
        cfg.epsilon,
        cfg.trials,
        failures.len()
    );
    let last = summary.steps.len() - 1;
    println!(
        "final: fisher {:.6e}, entropy {:.6}, rank {} (of {})",
        summary.fisher_mean[last],
        summary.entropy_mean[last],
        summary.rank_median[last],
        cfg.dim_op()
    );
    println!("artifacts written to {}", out.display());

    check_quota(cfg.trials, failures.len())?;
    Ok(summary)
}

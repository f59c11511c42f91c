//! `rmt-compare`: pool final inverse-covariance spectra across trials and
//! score them against the matching random-matrix law, with a Wishart control
//! that calibrates the comparison machinery itself.

use std::time::Instant;

use tomolab::rmtref::{
    law_units, mp_entropy, mp_fisher, mp_law, pt_entropy, pt_fisher, pt_law, samples_vs_law,
    sample_wishart, LawFit, SpectralLaw,
};

use crate::commands::common::{
    check_quota, mean_stderr, no_successes, prepare, prepare_out, write_meta,
};
use crate::commands::spectra::trial_spectra;
use crate::config::{Config, Ensemble};
use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::{setup_err, AppError};
use crate::runner::{build_pool, partition, run_trials, thread_count};
use crate::seeds::{stream, Domain};
use crate::svg::histogram_overlay;

pub const WISHART_DRAWS: usize = 50;

pub struct RmtSummary {
    pub entropy_sim: f64,
    pub entropy_law: f64,
    pub fisher_sim: f64,
    pub fisher_law: f64,
    pub trace_total: f64,
    pub fit: LawFit,
    pub wishart_fit: Option<LawFit>,
    /// (simulated min, simulated max) of the pooled samples, for MP runs.
    pub support_sim: Option<(f64, f64)>,
    pub support_law: Option<(f64, f64)>,
    pub trials_failed: usize,
}

fn ratio_cell(sim: f64, law: f64) -> String {
    if law != 0.0 && law.is_finite() {
        fmt_f64(sim / law)
    } else {
        String::new()
    }
}

pub fn cmd_rmt_compare(cfg: &Config) -> Result<RmtSummary, AppError> {
    let started = Instant::now();
    let exp = prepare(cfg)?;
    let out = prepare_out(cfg)?;
    let pool = build_pool(cfg.trials)?;

    let law: SpectralLaw = match cfg.ensemble {
        Ensemble::Haar => mp_law(cfg.dim_op(), cfg.steps).map_err(setup_err)?,
        Ensemble::Diagonal => pt_law(cfg.dim).map_err(setup_err)?,
        _ => unreachable!("config resolution restricts rmt-compare ensembles"),
    };
    let is_mp = cfg.ensemble == Ensemble::Haar;

    // Every trial contributes its final spectrum, already bridged into the
    // law's units so the pooled bag is a single empirical sample set.
    let results = run_trials(&pool, cfg.trials, |trial| {
        let t = trial_spectra(cfg, &exp, trial, cfg.steps)?;
        let rec = *t.records.last().expect("nonempty series");
        let samples = law_units(&t.final_spectrum, &law)?;
        Ok((rec, t.final_spectrum.sum(), samples))
    });
    let (ok, failures) = partition(results);
    if ok.is_empty() {
        return Err(no_successes(cfg.trials, &failures));
    }

    let entropies: Vec<f64> = ok.iter().map(|(_, (r, _, _))| r.entropy).collect();
    let fishers: Vec<f64> = ok.iter().map(|(_, (r, _, _))| r.fisher).collect();
    let traces: Vec<f64> = ok.iter().map(|(_, (_, t, _))| *t).collect();
    let (entropy_sim, _) = mean_stderr(&entropies);
    let (fisher_sim, _) = mean_stderr(&fishers);
    let (trace_total, _) = mean_stderr(&traces);

    let mut pooled: Vec<f64> = Vec::new();
    for (_, (_, _, samples)) in &ok {
        pooled.extend_from_slice(samples);
    }
    pooled.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let fit = samples_vs_law(&pooled, &law).map_err(setup_err)?;

    let (entropy_law, fisher_law) = if is_mp {
        (
            mp_entropy(&law).map_err(setup_err)?,
            mp_fisher(&law, trace_total, cfg.epsilon).map_err(setup_err)?,
        )
    } else {
        (
            pt_entropy(cfg.dim).map_err(setup_err)?,
            pt_fisher(cfg.dim, trace_total, cfg.epsilon).map_err(setup_err)?,
        )
    };

    // Wishart control: draw genuinely Gaussian designs of the same shape and
    // push them through the same comparison path. Needs N >= D to be
    // full rank; skipped (with a metadata note) for shorter records.
    let wishart_fit = if cfg.steps >= cfg.dim_op() {
        let mp = mp_law(cfg.dim_op(), cfg.steps).map_err(setup_err)?;
        let draws = run_trials(&pool, WISHART_DRAWS, |i| {
            let mut rng = stream(cfg.seed, Domain::Wishart, i as u64);
            let spec = sample_wishart(cfg.dim_op(), cfg.steps, &mut rng)?;
            law_units(&spec, &mp)
        });
        let (wok, wfail) = partition(draws);
        if !wfail.is_empty() {
            return Err(AppError::Other(format!(
                "wishart control draw failed: {}",
                wfail[0].1
            )));
        }
        let mut wpool: Vec<f64> = Vec::new();
        for (_, s) in &wok {
            wpool.extend_from_slice(s);
        }
        wpool.sort_by(|a, b| a.partial_cmp(b).unwrap());
        Some(samples_vs_law(&wpool, &mp).map_err(setup_err)?)
    } else {
        None
    };

    let (support_sim, support_law) = if is_mp {
        (
            Some((pooled[0], pooled[pooled.len() - 1])),
            Some(law.support()),
        )
    } else {
        (None, None)
    };

    let mut w = CsvWriter::new(&["quantity", "simulated", "predicted", "ratio"]);
    w.row(&[
        "entropy".to_string(),
        fmt_f64(entropy_sim),
        fmt_f64(entropy_law),
        ratio_cell(entropy_sim, entropy_law),
    ]);
    w.row(&[
        "fisher".to_string(),
        fmt_f64(fisher_sim),
        fmt_f64(fisher_law),
        ratio_cell(fisher_sim, fisher_law),
    ]);
    w.row(&[
        "trace_total".to_string(),
        fmt_f64(trace_total),
        String::new(),
        String::new(),
    ]);
    if let (Some((lo, hi)), Some((a, b))) = (support_sim, support_law) {
        w.row(&[
            "support_lower".to_string(),
            fmt_f64(lo),
            fmt_f64(a),
            ratio_cell(lo, a),
        ]);
        w.row(&[
            "support_upper".to_string(),
            fmt_f64(hi),
            fmt_f64(b),
            ratio_cell(hi, b),
        ]);
    }
    w.row(&["l1".to_string(), fmt_f64(fit.l1), String::new(), String::new()]);
    w.row(&["ks".to_string(), fmt_f64(fit.ks), String::new(), String::new()]);
    if let Some(wf) = &wishart_fit {
        w.row(&[
            "wishart_l1".to_string(),
            fmt_f64(wf.l1),
            String::new(),
            String::new(),
        ]);
        w.row(&[
            "wishart_ks".to_string(),
            fmt_f64(wf.ks),
            String::new(),
            String::new(),
        ]);
    }
    w.write(&out.join("rmt.csv"))?;

    if cfg.plots {
        let (a, b) = law.support();
        let bins = 60;
        let width = (b - a) / bins as f64;
        let edges: Vec<f64> = (0..=bins).map(|i| a + width * i as f64).collect();
        let mut counts = vec![0usize; bins];
        for &x in &pooled {
            if x >= a && x < b {
                counts[((x - a) / width) as usize] += 1;
            }
        }
        let norm = pooled.len() as f64 * width;
        let densities: Vec<f64> = counts.iter().map(|&c| c as f64 / norm).collect();
        let curve: Vec<(f64, f64)> = (0..=240)
            .map(|i| {
                let x = a + (b - a) * i as f64 / 240.0;
                (x, law.density(x))
            })
            .collect();
        histogram_overlay(
            &out.join("rmt.svg"),
            if is_mp {
                "Pooled spectrum vs Marchenko-Pastur"
            } else {
                "Pooled spectrum vs Porter-Thomas"
            },
            "eigenvalue (law units)",
            &edges,
            &densities,
            &curve,
        )?;
    }

    let mut extra: Vec<(&str, String)> = vec![(
        "law",
        if is_mp {
            "marchenko-pastur".to_string()
        } else {
            "porter-thomas".to_string()
        },
    )];
    if is_mp {
        extra.push((
            "mp_support_form",
            "(1 +/- sqrt(D/N))^2 / D in unit-mean normalized units".to_string(),
        ));
    }
    extra.push((
        "wishart_draws",
        if wishart_fit.is_some() {
            WISHART_DRAWS.to_string()
        } else {
            "skipped (steps < operator dimension)".to_string()
        },
    ));
    write_meta(cfg, started, thread_count(&pool), &failures, &extra)?;

    println!(
        "rmt-compare: d={} steps={} trials={} ({} failed), law={}",
        cfg.dim,
        cfg.steps,
        cfg.trials,
        failures.len(),
        if is_mp { "marchenko-pastur" } else { "porter-thomas" }
    );
    println!(
        "entropy sim {entropy_sim:.6} vs law {entropy_law:.6} (ratio {:.4})",
        entropy_sim / entropy_law
    );
    println!(
        "fisher  sim {fisher_sim:.6e} vs law {fisher_law:.6e} (ratio {:.4})",
        fisher_sim / fisher_law
    );
    println!("distance l1 {:.4}, ks {:.4}", fit.l1, fit.ks);
    if let Some(wf) = &wishart_fit {
        println!("wishart control l1 {:.4}, ks {:.4}", wf.l1, wf.ks);
    }
    if is_mp {
        println!("mp support form: (1 +/- sqrt(D/N))^2 / D in unit-mean normalized units");
    }
    println!("artifacts written to {}", out.display());

    check_quota(cfg.trials, failures.len())?;
    Ok(RmtSummary {
        entropy_sim,
        entropy_law,
        fisher_sim,
        fisher_law,
        trace_total,
        fit,
        wishart_fit,
        support_sim,
        support_law,
        trials_failed: failures.len(),
    })
}

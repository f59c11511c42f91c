//! `kicked-top`: the four-way dynamics battery. A regular and a chaotic
//! kicked top are compared against the two hybrids that swap their spectra
//! and eigenvectors, each with the standard Jz observable and with a
//! per-trial randomly rotated one.

use std::time::Instant;

use tomolab::ensembles::{hybrid_map, kicked_top, KickedTopParams, Unitary};
use tomolab::qcore::{make_hermitian_basis, spin_operators, Observable, OperatorBasis};
use tomolab::tomograph::{reconstruct, ReconstructSpec};

use crate::commands::common::{
    check_quota, checkpoint_steps, lower_median, mean_stderr, prepare_out, trial_state, write_meta,
    Experiment,
};
use crate::commands::spectra::{trial_spectra, TrialSpectra};
use crate::config::{Config, ObservableChoice};
use crate::csvio::{fmt_f64, CsvWriter};
use crate::error::{setup_err, AppError};
use crate::runner::{build_pool, partition, run_trials, thread_count};
use crate::seeds::{stream, Domain};
use crate::svg::{line_chart, Series};

pub struct KickedCase {
    /// Case slug, e.g. `chaotic` or `eigvals-chaotic_rotated`.
    pub name: String,
    pub steps: Vec<usize>,
    pub mean_fidelity: Vec<f64>,
    pub stderr_fidelity: Vec<f64>,
    /// Final-checkpoint fidelities per successful trial, in trial order.
    pub final_fidelities: Vec<f64>,
    pub fisher: Vec<f64>,
    pub entropy: Vec<f64>,
    pub rank: Vec<usize>,
    /// Final-checkpoint entropies of the spectra passes (one per trial for
    /// rotated cases; a single entry for standard cases, whose design does
    /// not vary across trials).
    pub final_entropies: Vec<f64>,
    pub final_fishers: Vec<f64>,
    pub trials_failed: usize,
}

pub struct KickedSummary {
    pub cases: Vec<KickedCase>,
    pub trials_total: usize,
    pub trials_failed: usize,
}

struct CaseMap {
    name: &'static str,
    unitary: Unitary,
    near_degenerate: bool,
}

/// Regular and chaotic tops plus the two spectral hybrids:
/// `eigvals-chaotic` carries the chaotic spectrum in the regular eigenbasis,
/// `eigvecs-chaotic` the regular spectrum in the chaotic eigenbasis.
fn case_maps(cfg: &Config) -> Result<Vec<CaseMap>, AppError> {
    let j = cfg.spin_j();
    let regular = kicked_top(&KickedTopParams { j, k0: cfg.k0_regular }).map_err(setup_err)?;
    let chaotic = kicked_top(&KickedTopParams { j, k0: cfg.k0_chaotic }).map_err(setup_err)?;
    let eigvals = hybrid_map(&chaotic, &regular).map_err(setup_err)?;
    let eigvecs = hybrid_map(&regular, &chaotic).map_err(setup_err)?;
    Ok(vec![
        CaseMap {
            name: "regular",
            unitary: regular,
            near_degenerate: false,
        },
        CaseMap {
            name: "chaotic",
            unitary: chaotic,
            near_degenerate: false,
        },
        CaseMap {
            name: "eigvals-chaotic",
            unitary: eigvals.unitary,
            near_degenerate: eigvals.near_degenerate,
        },
        CaseMap {
            name: "eigvecs-chaotic",
            unitary: eigvecs.unitary,
            near_degenerate: eigvecs.near_degenerate,
        },
    ])
}

fn run_case(
    cfg: &Config,
    pool: &rayon::ThreadPool,
    basis: &OperatorBasis,
    jz: &Observable,
    map: &CaseMap,
    rotated: bool,
) -> Result<(KickedCase, Vec<String>), AppError> {
    let mut vcfg = cfg.clone();
    vcfg.observable = if rotated {
        ObservableChoice::Rotated
    } else {
        ObservableChoice::Jz
    };
    let slug = if rotated {
        format!("{}_rotated", map.name)
    } else {
        map.name.to_string()
    };
    let exp = Experiment::fixed(basis.clone(), jz.clone(), map.unitary.clone());

    let results = run_trials(pool, vcfg.trials, |trial| {
        let state = trial_state(&vcfg, trial)?;
        let observable = exp.observable(&vcfg, trial)?;
        let mut process = exp.process(&vcfg, trial)?;
        let mut noise = stream(vcfg.seed, Domain::Noise, trial as u64);
        let spec = ReconstructSpec {
            observable: &observable,
            basis: &exp.basis,
            state: &state,
            steps: vcfg.steps,
            sigma: vcfg.sigma,
            epsilon: vcfg.epsilon,
            stride: vcfg.stride,
        };
        let cps = reconstruct(&spec, &mut process, &mut noise)?.checkpoints;
        // For the standard observable the design is state-independent, so one
        // spectra pass covers every trial; rotated designs vary per trial.
        let spectra: Option<TrialSpectra> = if rotated || trial == 0 {
            Some(trial_spectra(&vcfg, &exp, trial, vcfg.stride)?)
        } else {
            None
        };
        Ok((cps, spectra))
    });
    let (ok, failures) = partition(results);
    let failure_labels: Vec<String> = failures
        .iter()
        .map(|(i, msg)| format!("case={slug} trial={i}: {msg}"))
        .collect();
    if ok.is_empty() {
        return Err(AppError::Failures(format!(
            "all {} trials of case {slug} failed; first: {}",
            vcfg.trials,
            failures.first().map(|(_, m)| m.as_str()).unwrap_or("?")
        )));
    }

    let steps = checkpoint_steps(vcfg.steps, vcfg.stride);
    let mut mean_fidelity = Vec::with_capacity(steps.len());
    let mut stderr_fidelity = Vec::with_capacity(steps.len());
    let mut w = CsvWriter::new(&["step", "mean_fidelity", "stderr_fidelity"]);
    for (k, &step) in steps.iter().enumerate() {
        let xs: Vec<f64> = ok.iter().map(|(_, (cps, _))| cps[k].fidelity).collect();
        let (m, se) = mean_stderr(&xs);
        w.row(&[step.to_string(), fmt_f64(m), fmt_f64(se)]);
        mean_fidelity.push(m);
        stderr_fidelity.push(se);
    }
    w.write(&cfg.out.join(format!("fidelity_{slug}.csv")))?;

    let spectra: Vec<&TrialSpectra> = ok
        .iter()
        .filter_map(|(_, (_, s))| s.as_ref())
        .collect();
    let mut fisher = Vec::with_capacity(steps.len());
    let mut entropy = Vec::with_capacity(steps.len());
    let mut rank = Vec::with_capacity(steps.len());
    let mut sw = CsvWriter::new(&["step", "fisher", "entropy", "rank"]);
    for (k, &step) in steps.iter().enumerate() {
        let fs: Vec<f64> = spectra.iter().map(|t| t.records[k].fisher).collect();
        let hs: Vec<f64> = spectra.iter().map(|t| t.records[k].entropy).collect();
        let mut rs: Vec<usize> = spectra.iter().map(|t| t.records[k].rank).collect();
        let (fm, _) = mean_stderr(&fs);
        let (hm, _) = mean_stderr(&hs);
        let rm = lower_median(&mut rs);
        sw.row(&[step.to_string(), fmt_f64(fm), fmt_f64(hm), rm.to_string()]);
        fisher.push(fm);
        entropy.push(hm);
        rank.push(rm);
    }
    sw.write(&cfg.out.join(format!("spectra_{slug}.csv")))?;

    let case = KickedCase {
        name: slug,
        steps,
        mean_fidelity,
        stderr_fidelity,
        final_fidelities: ok
            .iter()
            .map(|(_, (cps, _))| cps.last().expect("nonempty checkpoints").fidelity)
            .collect(),
        fisher,
        entropy,
        rank,
        final_entropies: spectra
            .iter()
            .map(|t| t.records.last().expect("nonempty series").entropy)
            .collect(),
        final_fishers: spectra
            .iter()
            .map(|t| t.records.last().expect("nonempty series").fisher)
            .collect(),
        trials_failed: failures.len(),
    };
    Ok((case, failure_labels))
}

pub fn cmd_kicked_top(cfg: &Config) -> Result<KickedSummary, AppError> {
    let started = Instant::now();
    let out = prepare_out(cfg)?;
    let pool = build_pool(cfg.trials)?;
    let basis = make_hermitian_basis(cfg.dim).map_err(setup_err)?;
    let spin = spin_operators(cfg.spin_j()).map_err(setup_err)?;
    let jz = spin.jz().clone();
    let maps = case_maps(cfg)?;

    let mut cases = Vec::with_capacity(2 * maps.len());
    let mut failure_labels: Vec<String> = Vec::new();
    for rotated in [false, true] {
        for map in &maps {
            let (case, labels) = run_case(cfg, &pool, &basis, &jz, map, rotated)?;
            failure_labels.extend(labels);
            cases.push(case);
        }
    }

    if cfg.plots {
        for rotated in [false, true] {
            let some: Vec<&KickedCase> = cases
                .iter()
                .filter(|c| c.name.ends_with("_rotated") == rotated)
                .collect();
            let fid_pts: Vec<Vec<(f64, f64)>> = some
                .iter()
                .map(|c| {
                    c.steps
                        .iter()
                        .zip(&c.mean_fidelity)
                        .map(|(&s, &m)| (s as f64, m))
                        .collect()
                })
                .collect();
            let fid_series: Vec<Series> = some
                .iter()
                .zip(&fid_pts)
                .map(|(c, pts)| Series {
                    label: &c.name,
                    points: pts,
                })
                .collect();
            let suffix = if rotated { "_rotated" } else { "" };
            line_chart(
                &out.join(format!("kicked_fidelity{suffix}.svg")),
                "Kicked-top reconstruction fidelity",
                "measurement step",
                "fidelity",
                &fid_series,
            )?;
            let ent_pts: Vec<Vec<(f64, f64)>> = some
                .iter()
                .map(|c| {
                    c.steps
                        .iter()
                        .zip(&c.entropy)
                        .map(|(&s, &h)| (s as f64, h))
                        .collect()
                })
                .collect();
            let ent_series: Vec<Series> = some
                .iter()
                .zip(&ent_pts)
                .map(|(c, pts)| Series {
                    label: &c.name,
                    points: pts,
                })
                .collect();
            line_chart(
                &out.join(format!("kicked_entropy{suffix}.svg")),
                "Kicked-top spectral entropy",
                "measurement step",
                "entropy (nats)",
                &ent_series,
            )?;
        }
    }

    let trials_total = cases.len() * cfg.trials;
    let trials_failed = failure_labels.len();
    let failures: Vec<(usize, String)> = failure_labels.into_iter().enumerate().collect();
    let mut extra: Vec<(&str, String)> = vec![
        ("k0_regular", fmt_f64(cfg.k0_regular)),
        ("k0_chaotic", fmt_f64(cfg.k0_chaotic)),
        ("cases", cases.len().to_string()),
        ("trials_per_case", cfg.trials.to_string()),
    ];
    for map in &maps {
        if map.near_degenerate {
            extra.push(("near_degenerate_hybrid", map.name.to_string()));
            eprintln!(
                "warning: hybrid {} built from a near-degenerate spectrum; \
                 its eigenvector assignment may be unstable",
                map.name
            );
        }
    }
    write_meta(cfg, started, thread_count(&pool), &failures, &extra)?;

    println!(
        "kicked-top: j={} (d={}) steps={} sigma={} trials={} per case",
        cfg.spin_j(),
        cfg.dim,
        cfg.steps,
        cfg.sigma,
        cfg.trials
    );
    for case in &cases {
        let k = case.mean_fidelity.len() - 1;
        println!(
            "  {:>24}: final fidelity {:.6} +/- {:.6}, final entropy {:.4}",
            case.name,
            case.mean_fidelity[k],
            case.stderr_fidelity[k],
            case.entropy[k]
        );
    }
    println!("artifacts written to {}", out.display());

    check_quota(trials_total, trials_failed)?;
    Ok(KickedSummary {
        cases,
        trials_total,
        trials_failed,
    })
}

//! Unitary ensemble tests: Haar statistics, spectral decomposition of
//! unitaries, hybrids, kicked-top structure, and the diagonal process.

use num_complex::Complex;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use tomolab::ensembles::{
    eig_unitary, hybrid_map, kicked_top, parity_operator, sample_haar_unitary, DiagonalProcess,
    KickedTopParams, ProcessPolicy, Unitary, UnitaryProcess,
};
use tomolab::qcore::spin_operators;
use tomolab::{CMat, CVec};

type C64 = Complex<f64>;

fn c(re: f64, im: f64) -> C64 {
    Complex::new(re, im)
}

fn recompose(phases: &[f64], vecs: &CMat) -> CMat {
    let diag = CMat::from_diagonal(&CVec::from_iterator(
        phases.len(),
        phases.iter().map(|&t| c(t.cos(), t.sin())),
    ));
    vecs * diag * vecs.adjoint()
}

#[test]
fn haar_samples_are_unitary_with_correct_moments() {
    let mut rng = ChaCha12Rng::seed_from_u64(1);
    let d = 4;
    let n = 3000;
    let mut mean_abs2 = 0.0;
    let mut mean = c(0.0, 0.0);
    for _ in 0..n {
        let u = sample_haar_unitary(d, &mut rng).unwrap();
        let z = u.matrix()[(0, 0)];
        mean_abs2 += z.norm_sqr();
        mean += z;
    }
    mean_abs2 /= n as f64;
    mean /= c(n as f64, 0.0);
    // |U_00|^2 ~ Beta(1, d-1): mean 1/d, var (d-1)/(d^2 (d+1)).
    let se = ((d as f64 - 1.0) / ((d * d * (d + 1)) as f64) / n as f64).sqrt();
    assert!(
        (mean_abs2 - 0.25).abs() < 5.0 * se,
        "E|U00|^2 = {mean_abs2}, se {se}"
    );
    // The QR phase fix is what makes E[U_00] vanish.
    let se_entry = (0.5 / (d as f64) / n as f64).sqrt();
    assert!(mean.norm() < 5.0 * se_entry, "E[U00] = {mean}");
}

#[test]
fn eig_unitary_reconstructs_and_sorts() {
    let mut rng = ChaCha12Rng::seed_from_u64(2);
    for d in [3usize, 8, 21] {
        let u = sample_haar_unitary(d, &mut rng).unwrap();
        let (phases, vecs) = eig_unitary(&u).unwrap();
        assert_eq!(phases.len(), d);
        for w in phases.windows(2) {
            assert!(w[0] <= w[1], "phases not ascending");
        }
        for &p in &phases {
            assert!(p > -std::f64::consts::PI - 1e-12 && p <= std::f64::consts::PI + 1e-12);
        }
        let residual = (recompose(&phases, &vecs) - u.matrix()).norm();
        assert!(residual < 1e-9, "d={d}: recompose residual {residual:.2e}");
        let gram_defect = (vecs.adjoint() * &vecs - CMat::identity(d, d)).norm();
        assert!(gram_defect < 1e-9, "eigenvectors not orthonormal");
    }
}

#[test]
fn eig_unitary_handles_full_degeneracy() {
    let u = Unitary::new(CMat::identity(5, 5)).unwrap();
    let (phases, vecs) = eig_unitary(&u).unwrap();
    assert!(phases.iter().all(|&p| p.abs() < 1e-12));
    assert!((recompose(&phases, &vecs) - u.matrix()).norm() < 1e-10);
}

#[test]
fn hybrid_of_self_is_self() {
    let mut rng = ChaCha12Rng::seed_from_u64(3);
    let u = sample_haar_unitary(6, &mut rng).unwrap();
    let h = hybrid_map(&u, &u).unwrap();
    assert!(!h.near_degenerate);
    assert!((h.unitary.matrix() - u.matrix()).norm() < 1e-8);
}

#[test]
fn hybrid_takes_phases_from_one_and_vectors_from_other() {
    let mut rng = ChaCha12Rng::seed_from_u64(4);
    let a = sample_haar_unitary(7, &mut rng).unwrap();
    let b = sample_haar_unitary(7, &mut rng).unwrap();
    let h = hybrid_map(&a, &b).unwrap();

    let (pa, _) = eig_unitary(&a).unwrap();
    let (ph, _) = eig_unitary(&h.unitary).unwrap();
    for (x, y) in pa.iter().zip(&ph) {
        assert!((x - y).abs() < 1e-8, "hybrid phases differ from source");
    }

    // The hybrid must be diagonal in b's eigenbasis.
    let (_, vb) = eig_unitary(&b).unwrap();
    let in_b = vb.adjoint() * h.unitary.matrix() * &vb;
    let mut off = 0.0f64;
    for i in 0..7 {
        for j in 0..7 {
            if i != j {
                off = off.max(in_b[(i, j)].norm());
            }
        }
    }
    assert!(off < 1e-8, "hybrid not diagonal in eigvec source basis: {off:.2e}");
}

#[test]
fn hybrid_flags_near_degenerate_sources() {
    let mut rng = ChaCha12Rng::seed_from_u64(5);
    let v = sample_haar_unitary(3, &mut rng).unwrap();
    let make = |phis: [f64; 3]| {
        let diag = CMat::from_diagonal(&CVec::from_iterator(
            3,
            phis.iter().map(|&t| c(t.cos(), t.sin())),
        ));
        Unitary::new(v.matrix() * diag * v.matrix().adjoint()).unwrap()
    };
    let degenerate = make([0.3, 0.3, 1.0]);
    let distinct = make([0.3, 0.9, 1.7]);
    assert!(hybrid_map(&degenerate, &distinct).unwrap().near_degenerate);
    assert!(!hybrid_map(&distinct, &distinct).unwrap().near_degenerate);
}

#[test]
fn hybrid_rejects_dimension_mismatch() {
    let mut rng = ChaCha12Rng::seed_from_u64(6);
    let a = sample_haar_unitary(3, &mut rng).unwrap();
    let b = sample_haar_unitary(4, &mut rng).unwrap();
    assert!(hybrid_map(&a, &b).is_err());
}

#[test]
fn kicked_top_is_unitary_and_parity_symmetric() {
    let u = kicked_top(&KickedTopParams { j: 10.0, k0: 7.0 }).unwrap();
    assert_eq!(u.dim(), 21);
    let r = parity_operator(10.0).unwrap();
    let comm = u.matrix() * r.matrix() - r.matrix() * u.matrix();
    assert!(comm.norm() < 1e-10, "[U, R] = {:.2e}", comm.norm());
}

#[test]
fn parity_flips_jz_and_squares_to_identity() {
    let spin = spin_operators(10.0).unwrap();
    let r = parity_operator(10.0).unwrap();
    let flipped = r.matrix().adjoint() * spin.jz().matrix() * r.matrix();
    assert!((flipped + spin.jz().matrix()).norm() < 1e-10, "R Jz R^d != -Jz");
    let keeps = r.matrix().adjoint() * spin.jx().matrix() * r.matrix();
    assert!((keeps - spin.jx().matrix()).norm() < 1e-10, "R Jx R^d != Jx");
    let r2 = r.matrix() * r.matrix();
    let d = r.dim();
    assert!((&r2 - CMat::identity(d, d)).norm() < 1e-9, "R^2 != I for integer j");

    // half-integer j: R^2 = -I
    let r_half = parity_operator(1.5).unwrap();
    let r2h = r_half.matrix() * r_half.matrix();
    assert!((&r2h + CMat::identity(4, 4)).norm() < 1e-9, "R^2 != -I for half-integer j");
}

#[test]
fn kicked_top_without_twist_is_pure_rotation() {
    // k0 = 0 leaves only exp(-i 1.4 Jx): eigenphases are -1.4 m wrapped.
    let u = kicked_top(&KickedTopParams { j: 2.0, k0: 0.0 }).unwrap();
    let (phases, _) = eig_unitary(&u).unwrap();
    let mut expected: Vec<f64> = (-2i32..=2)
        .map(|m| {
            let mut p = -1.4 * m as f64;
            while p <= -std::f64::consts::PI {
                p += std::f64::consts::TAU;
            }
            while p > std::f64::consts::PI {
                p -= std::f64::consts::TAU;
            }
            p
        })
        .collect();
    expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (p, e) in phases.iter().zip(&expected) {
        assert!((p - e).abs() < 1e-10, "rotation eigenphase {p} vs {e}");
    }
}

/// Chaotic kicked-top spectra show level repulsion within each parity
/// sector: far fewer small gaps than the Poisson baseline.
#[test]
fn chaotic_kicked_top_represses_small_gaps() {
    let j = 10.0;
    let r = parity_operator(j).unwrap();
    let mut gaps: Vec<f64> = Vec::new();
    for k0 in [6.0, 6.5, 7.0, 7.5, 8.0] {
        let u = kicked_top(&KickedTopParams { j, k0 }).unwrap();
        let (phases, vecs) = eig_unitary(&u).unwrap();
        let mut even: Vec<f64> = Vec::new();
        let mut odd: Vec<f64> = Vec::new();
        for i in 0..phases.len() {
            let v: CVec = vecs.column(i).into_owned();
            let parity = v.dotc(&(r.matrix() * &v)).re;
            assert!(
                parity.abs() > 0.99,
                "eigenvector {i} has ambiguous parity {parity}"
            );
            if parity > 0.0 {
                even.push(phases[i]);
            } else {
                odd.push(phases[i]);
            }
        }
        assert_eq!(even.len(), 11, "k0={k0}: even sector size");
        assert_eq!(odd.len(), 10, "k0={k0}: odd sector size");
        for sector in [even, odd] {
            let n = sector.len();
            let mut s: Vec<f64> = sector.windows(2).map(|w| w[1] - w[0]).collect();
            s.push(std::f64::consts::TAU - (sector[n - 1] - sector[0]));
            let mean = std::f64::consts::TAU / n as f64;
            for g in s {
                gaps.push(g / mean);
            }
        }
    }
    let small = gaps.iter().filter(|&&g| g < 0.1).count() as f64 / gaps.len() as f64;
    // Poisson statistics would give P(s < 0.1) = 1 - e^{-0.1} = 0.095;
    // GOE-like repulsion gives ~0.008.
    assert!(
        small < 0.04,
        "small-gap fraction {small} shows no level repulsion over {} gaps",
        gaps.len()
    );
}

#[test]
fn diagonal_process_steps_commute_and_accumulate() {
    let mut rng = ChaCha12Rng::seed_from_u64(7);
    let frame = sample_haar_unitary(5, &mut rng).unwrap();
    let mut proc = DiagonalProcess::new(frame.clone());
    let u1 = proc.sample_step(&mut rng);
    let u2 = proc.sample_step(&mut rng);
    assert_eq!(proc.steps(), 2);
    // commuting family
    let ab = u1.matrix() * u2.matrix();
    let ba = u2.matrix() * u1.matrix();
    assert!((&ab - &ba).norm() < 1e-12);
    // diagonal in the frame
    let in_frame = frame.matrix().adjoint() * u1.matrix() * frame.matrix();
    let mut off = 0.0f64;
    for i in 0..5 {
        for j in 0..5 {
            if i != j {
                off = off.max(in_frame[(i, j)].norm());
            }
        }
    }
    assert!(off < 1e-12, "step not diagonal in frame: {off:.2e}");
    // phases accumulated in range
    for &p in proc.total_phases().iter() {
        assert!((0.0..2.0 * std::f64::consts::TAU).contains(&p));
    }
    // product of steps equals the unitary of the accumulated phases
    let prod = u2.matrix() * u1.matrix();
    let from_total = proc.unitary_for(&proc.total_phases().clone());
    assert!((&prod - from_total.matrix()).norm() < 1e-10);
}

#[test]
fn unitary_process_policies_behave() {
    let d = 4;
    let rng = ChaCha12Rng::seed_from_u64(8);
    let mut haar = UnitaryProcess::new(ProcessPolicy::HaarPerStep { dim: d }, rng).unwrap();
    let u1 = haar.next_unitary().unwrap();
    let u2 = haar.next_unitary().unwrap();
    assert!((u1.matrix() - u2.matrix()).norm() > 1e-3, "Haar steps repeat");
    assert_eq!(haar.step(), 2);

    let mut rng2 = ChaCha12Rng::seed_from_u64(9);
    let fixed_u = sample_haar_unitary(d, &mut rng2).unwrap();
    let mut fixed =
        UnitaryProcess::new(ProcessPolicy::Fixed(fixed_u.clone()), rng2).unwrap();
    for _ in 0..3 {
        assert_eq!(fixed.next_unitary().unwrap().matrix(), fixed_u.matrix());
    }

    let mut rng3 = ChaCha12Rng::seed_from_u64(10);
    let frame = sample_haar_unitary(d, &mut rng3).unwrap();
    let mut diag =
        UnitaryProcess::new(ProcessPolicy::RandomDiagonal { frame }, rng3).unwrap();
    diag.next_unitary().unwrap();
    assert_eq!(diag.diagonal_state().unwrap().steps(), 1);
    assert!(haar.diagonal_state().is_none());
}

#[test]
fn unitary_validation_rejects_non_unitary() {
    let m = CMat::identity(3, 3) * c(1.1, 0.0);
    assert!(Unitary::new(m).is_err());
    let mut rng = ChaCha12Rng::seed_from_u64(11);
    assert!(sample_haar_unitary(3, &mut rng).is_ok());
}

#[test]
fn deterministic_under_seeding() {
    let a = sample_haar_unitary(5, &mut ChaCha12Rng::seed_from_u64(42)).unwrap();
    let b = sample_haar_unitary(5, &mut ChaCha12Rng::seed_from_u64(42)).unwrap();
    assert_eq!(a.matrix(), b.matrix());
}

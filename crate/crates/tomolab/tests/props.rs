//! Property tests over the pure linear-algebra and metric layers.

use proptest::prelude::*;
use tomolab::infometrics::{fisher_info, numerical_rank, shannon_entropy, Spectrum};
use tomolab::qcore::{bloch_compose, bloch_decompose, make_hermitian_basis, BlochVector};
use tomolab::tomograph::{project_physical, InverseCovariance};
use tomolab::{RMat, RVec};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bloch_coordinates_roundtrip(
        d in 2usize..=5,
        seed_coords in proptest::collection::vec(-10.0f64..10.0, 24),
        trace in -3.0f64..3.0,
    ) {
        let dim_op = d * d - 1;
        let basis = make_hermitian_basis(d).unwrap();
        let coords = RVec::from_iterator(dim_op, seed_coords.into_iter().take(dim_op));
        let r = BlochVector::from_vec(d, coords.clone()).unwrap();
        let m = bloch_compose(&r, trace);
        prop_assert!((m.trace().re - trace).abs() < 1e-10);
        prop_assert!(m.trace().im.abs() < 1e-12);
        let back = bloch_decompose(&m, &basis).unwrap();
        let err = (back.coords() - &coords).amax();
        prop_assert!(err < 1e-9, "roundtrip error {err:.2e}");
    }

    #[test]
    fn entropy_and_fisher_invariants(
        values in proptest::collection::vec(1e-6f64..1e3, 1..40),
        scale in 1e-4f64..1e4,
    ) {
        let n = values.len();
        let spec = Spectrum::from_values(values.clone()).unwrap();
        let h = shannon_entropy(&spec).unwrap();
        prop_assert!(h >= 0.0);
        prop_assert!(h <= (n as f64).ln() + 1e-9);

        let scaled = Spectrum::from_values(values.iter().map(|&x| scale * x).collect()).unwrap();
        let hs = shannon_entropy(&scaled).unwrap();
        prop_assert!((h - hs).abs() < 1e-8, "entropy not scale invariant: {h} vs {hs}");

        let fi = fisher_info(&spec, 0.0).unwrap();
        prop_assert!(fi > 0.0);
        prop_assert!(fi <= spec.sum() / (n * n) as f64 * (1.0 + 1e-12));

        let rank = numerical_rank(&spec, 1e-10).unwrap();
        prop_assert!(rank >= 1 && rank <= n);
    }

    #[test]
    fn projection_yields_physical_idempotent_states(
        seed_coords in proptest::collection::vec(-2.0f64..2.0, 8),
    ) {
        let d = 3;
        let basis = make_hermitian_basis(d).unwrap();
        let r = BlochVector::from_vec(d, RVec::from_vec(seed_coords)).unwrap();
        let w = InverseCovariance::from_matrix(RMat::identity(8, 8)).unwrap();

        let out = project_physical(&r, &w, &basis).unwrap();
        prop_assert!(out.converged);
        let eigs = out.rho.eigenvalues();
        prop_assert!(eigs.iter().all(|&x| x >= -1e-9));
        prop_assert!((eigs.iter().sum::<f64>() - 1.0).abs() < 1e-9);
        // physical Bloch vectors fit in the purity ball
        let norm_sq = out.bloch.coords().norm_squared();
        prop_assert!(norm_sq <= 1.0 - 1.0 / d as f64 + 1e-8);

        // projecting a physical point is the identity
        let again = project_physical(&out.bloch, &w, &basis).unwrap();
        prop_assert_eq!(again.iterations, 0);
        let moved = (again.bloch.coords() - out.bloch.coords()).amax();
        prop_assert!(moved == 0.0, "fixed point moved by {moved:.2e}");
    }
}

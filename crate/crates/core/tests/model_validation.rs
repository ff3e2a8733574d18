//! Statistical and combinatorial validation of the random model.

use num_traits::ToPrimitive;
use pathstab_core::formulas::{
    count_overlap_pairs_exhaustive, delta, expected_clique_count, janson_upper_bound, mu,
    overlap_pair_coefficient, paper_edge_probability,
};
use pathstab_core::montecarlo::{mc_clique_count, mc_no_clique_probability};
use pathstab_core::random::ParamSet;

use proptest::prelude::*;

#[test]
fn clique_count_estimates_track_closed_forms() {
    // 4-sigma formula checks at a few desk-scale parameter points.
    for (n, r, p, seed) in [
        (10usize, 3usize, 0.5f64, 21u64),
        (12, 3, 0.3, 22),
        (14, 4, 0.6, 23),
        (9, 2, 0.25, 24),
    ] {
        let params = ParamSet::new(n, r, p, seed).unwrap();
        let est = mc_clique_count(&params, r, 8_000).unwrap();
        let expected = expected_clique_count(n as u64, r as u64, p).unwrap();
        assert!(
            (est.mean - expected).abs() <= 4.0 * est.stderr.max(1e-12),
            "n={n} r={r} p={p}: mean {} vs {} (stderr {})",
            est.mean,
            expected,
            est.stderr
        );
    }
}

#[test]
fn janson_bound_holds_empirically() {
    // mu = 1.76, delta = 1.9008, bound = e^(-0.8096) at u=12, k=3, p=0.2.
    let mu_v = mu(12, 3, 0.2).unwrap();
    let delta_v = delta(12, 3, 0.2).unwrap();
    let bound = janson_upper_bound(mu_v, delta_v);
    assert!((bound - 0.44503).abs() < 1e-5);
    let est = mc_no_clique_probability(12, 3, 0.2, 20_000, 9).unwrap();
    assert!(
        est.mean <= bound + 3.0 * est.stderr,
        "frequency {} exceeds bound {} + 3 x {}",
        est.mean,
        bound,
        est.stderr
    );
}

#[test]
fn overlap_pair_counts_match_coefficients_for_k3_and_k4() {
    for u in 4..=10u64 {
        for k in [3u64, 4] {
            if k > u {
                continue;
            }
            for i in 2..k {
                assert_eq!(
                    count_overlap_pairs_exhaustive(u, k, i),
                    overlap_pair_coefficient(u, k, i).to_u64().unwrap(),
                    "u={u} k={k} i={i}"
                );
            }
        }
    }
}

#[test]
fn paper_parameter_expectation_stays_bounded() {
    // With p = 20 n^(-2/k) and n large enough that no clamping occurs,
    // C(n, k+1) p^C(k+1,2) <= 20^C(k+1,2).
    for (k, ns) in [
        (3u64, vec![90u64, 120, 600, 1200, 6000]),
        (4, vec![400, 800, 4000]),
        (5, vec![1789, 3600]),
    ] {
        let cap = 20f64.powi(((k + 1) * k / 2) as i32);
        for n in ns {
            let (p, clamped) = paper_edge_probability(n, k);
            assert!(!clamped, "n={n} k={k} unexpectedly clamped");
            let expected = expected_clique_count(n, k + 1, p).unwrap();
            assert!(
                expected <= cap * (1.0 + 1e-12),
                "n={n} k={k}: {expected} > {cap}"
            );
        }
    }
}

#[test]
fn formula_agreement_rate_across_seed_repetitions() {
    // Across independently seeded repetitions, the 4-sigma band must
    // capture the closed form in at least 99% of runs; with 50 runs at
    // ~6e-5 failure probability each, allowing one outlier keeps the
    // flake rate negligible.
    let expected = expected_clique_count(11, 3, 0.4).unwrap();
    let mut outliers = 0;
    for rep in 0..50u64 {
        let params = ParamSet::new(11, 3, 0.4, 31_000 + rep).unwrap();
        let est = mc_clique_count(&params, 3, 2_000).unwrap();
        if (est.mean - expected).abs() > 4.0 * est.stderr {
            outliers += 1;
        }
    }
    assert!(outliers <= 1, "{outliers}/50 repetitions outside 4 sigma");
}

#[test]
fn estimates_are_schedule_independent() {
    // Repeated runs must agree bit for bit even though trials run on a
    // thread pool.
    let params = ParamSet::new(11, 3, 0.4, 5).unwrap();
    let first = mc_clique_count(&params, 3, 4_000).unwrap();
    for _ in 0..3 {
        let again = mc_clique_count(&params, 3, 4_000).unwrap();
        assert_eq!(first.mean.to_bits(), again.mean.to_bits());
        assert_eq!(first.stderr.to_bits(), again.stderr.to_bits());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn delta_is_monotone_in_p(u in 3u64..16, k in 3u64..6, p1 in 0.0f64..=1.0, p2 in 0.0f64..=1.0) {
        prop_assume!(k <= u);
        let (lo, hi) = if p1 <= p2 { (p1, p2) } else { (p2, p1) };
        let d_lo = delta(u, k, lo).unwrap();
        let d_hi = delta(u, k, hi).unwrap();
        prop_assert!(d_lo <= d_hi * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn expected_count_of_singletons_is_n(n in 1u64..200, p in 0.0f64..=1.0) {
        let e = expected_clique_count(n, 1, p).unwrap();
        prop_assert!((e - n as f64).abs() < 1e-9);
    }

    #[test]
    fn janson_bound_is_at_most_one_when_delta_small(mu in 0.0f64..50.0, frac in 0.0f64..=1.0) {
        // For delta <= 2 mu the exponent is nonpositive.
        let delta = 2.0 * mu * frac;
        prop_assert!(janson_upper_bound(mu, delta) <= 1.0 + 1e-12);
    }
}

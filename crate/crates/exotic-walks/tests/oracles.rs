//! Cross-checks between independent computation routes: sampler vs DP,
//! doubles vs exact rationals, and the structural invariants of the
//! distribution engine under randomized profiles.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use exotic_walks::budget::Budget;
use exotic_walks::radial::{
    distribution_at, expected_distance, sample_radial_path, LambdaProfile, MASS_TOLERANCE,
};
use exotic_walks::rational::distribution_at_exact;
use exotic_walks::tameness::chernoff_bound;

fn budget() -> Budget {
    Budget::default()
}

#[test]
fn monte_carlo_matches_dp_mean() {
    // 10^4 seeded trajectories at n = 10^4 against the exact expectation.
    let prof = LambdaProfile::constant(0.25).unwrap();
    let n = 10_000u64;
    let trials = 10_000u64;
    let exact = expected_distance(n, &prof, &budget()).unwrap();
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    for seed in 0..trials {
        let x = *sample_radial_path(n, &prof, seed).last().unwrap() as f64;
        sum += x;
        sum_sq += x * x;
    }
    let mean = sum / trials as f64;
    let var = (sum_sq / trials as f64 - mean * mean).max(0.0);
    let stderr = (var / trials as f64).sqrt();
    let dev = (mean - exact).abs();
    assert!(
        dev <= 3.0 * stderr,
        "MC mean {mean} vs exact {exact}: {} standard errors",
        dev / stderr
    );
}

#[test]
fn chernoff_bound_calibrates_sampler_tails() {
    // The empirical frequency of forward steps over n trials concentrates:
    // the bound with delta = 0.05 must dominate the observed tail.
    let prof = LambdaProfile::constant(0.25).unwrap();
    let n = 2_000u64;
    let trials = 400u64;
    let mut exceed = 0u64;
    for seed in 1_000..1_000 + trials {
        let path = sample_radial_path(n, &prof, seed);
        let ups = path.windows(2).filter(|w| w[1] > w[0]).count() as f64;
        // Forward probability is 3/4 except at 0, which is rarely visited.
        if ups / n as f64 - 0.75 >= 0.05 {
            exceed += 1;
        }
    }
    let bound = chernoff_bound(n, 0.75, 0.05).unwrap();
    assert!(
        (exceed as f64 / trials as f64) <= bound + 3.0 / (trials as f64).sqrt(),
        "tail frequency {} above Chernoff bound {bound}",
        exceed as f64 / trials as f64
    );
}

fn random_profile_values(seed: u64, len: usize) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen_range(0.05..=0.25)).collect()
}

#[test]
fn lowering_lambda_never_decreases_expectation() {
    // Pointwise lowering the backward probability speeds the chain up.
    for seed in 0..20u64 {
        let base = random_profile_values(seed, 128);
        let mut rng = ChaCha12Rng::seed_from_u64(seed ^ 0xffff);
        let lowered: Vec<f64> = base
            .iter()
            .map(|&v| if rng.gen_bool(0.5) { v * rng.gen_range(0.2..1.0) } else { v })
            .collect();
        let p_base = LambdaProfile::from_table(base, 0.25).unwrap();
        let p_low = LambdaProfile::from_table(lowered, 0.25).unwrap();
        for n in [17u64, 64, 100] {
            let e_base = expected_distance(n, &p_base, &budget()).unwrap();
            let e_low = expected_distance(n, &p_low, &budget()).unwrap();
            assert!(
                e_low >= e_base - 1e-10,
                "seed {seed}, n {n}: lowering lambda decreased E ({e_low} < {e_base})"
            );
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mass_and_parity_invariants(seed in 0u64..5_000, n in 0u64..160) {
        let prof = LambdaProfile::from_table(random_profile_values(seed, 192), 0.2).unwrap();
        let d = distribution_at(n, &prof, &budget()).unwrap();
        prop_assert!((d.total_mass() - 1.0).abs() <= MASS_TOLERANCE);
        for (j, m) in d.support() {
            prop_assert!(j <= n);
            prop_assert_eq!(j % 2, n % 2, "mass {} at off-parity {}", m, j);
        }
        let direct = d.expectation();
        let incremental = expected_distance(n, &prof, &budget()).unwrap();
        prop_assert!((direct - incremental).abs() <= 1e-10);
    }

    #[test]
    fn doubles_agree_with_exact_rationals(seed in 0u64..2_000, n in 0u64..64) {
        let prof = LambdaProfile::from_table(random_profile_values(seed, 80), 0.15).unwrap();
        let exact = distribution_at_exact(n, &prof).unwrap();
        let approx = distribution_at(n, &prof, &budget()).unwrap();
        let tv = exact.tv_distance_to(&approx);
        prop_assert!(tv <= 1e-12, "tv = {}", tv);
    }

    #[test]
    fn sampled_paths_respect_the_chain(seed in 0u64..10_000, n in 0u64..300) {
        let prof = LambdaProfile::from_table(random_profile_values(seed, 512), 0.2).unwrap();
        let path = sample_radial_path(n, &prof, seed);
        prop_assert_eq!(path.len() as u64, n + 1);
        prop_assert_eq!(path[0], 0);
        for w in path.windows(2) {
            let up = w[1] == w[0] + 1;
            let down = w[0] > 0 && w[1] + 1 == w[0];
            prop_assert!(up || down);
        }
    }
}

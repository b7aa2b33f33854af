//! Exact sphere averages of the image distance and push-forward statistics.
//!
//! `A(i)` is the average of `d(1, f(g))` over the sphere of radius i. Image
//! distances add along block ancestors, so `A(qC) = qC + k(q)·D_X` with
//! k(q) the number of stretched blocks below q, and a partial block of depth
//! r contributes the mean of its depth-r displacement distribution. The
//! push-forward expectation is then `Σ_i P[X_n = i]·A(i)` for the simple
//! random walk's radial chain, by sphere uniformity.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::block::displacement_distribution;
use super::map::{apply_f, invert_f};
use super::{QiConfig, QiError};
use crate::budget::Budget;
use crate::radial::{LambdaProfile, RadialEngine};
use crate::word::{self, WordAddress, WordError};

/// Exact values of A(i) for i ≤ horizon, plus the stretched-block counters.
#[derive(Debug, Clone)]
pub struct ASeries {
    cfg: QiConfig,
    exact: Vec<BigRational>,
    approx: Vec<f64>,
    k_counts: Vec<u64>,
}

impl ASeries {
    pub fn horizon(&self) -> u64 {
        (self.exact.len() - 1) as u64
    }

    pub fn cfg(&self) -> &QiConfig {
        &self.cfg
    }

    pub fn value(&self, i: u64) -> &BigRational {
        &self.exact[i as usize]
    }

    pub fn value_f64(&self, i: u64) -> f64 {
        self.approx[i as usize]
    }

    pub fn values_f64(&self) -> &[f64] {
        &self.approx
    }

    /// k(q) = |𝒳 ∩ {0…q−1}| for q·C ≤ horizon.
    pub fn k_count(&self, q: u64) -> u64 {
        self.k_counts[q as usize]
    }
}

/// Builds A(0..=horizon) exactly.
pub fn a_series(horizon: u64, cfg: &QiConfig, budget: &Budget) -> Result<ASeries, QiError> {
    if horizon > budget.horizon_cap {
        return Err(QiError::BudgetExceeded { requested: horizon, cap: budget.horizon_cap });
    }
    let c = cfg.c();
    let dx = super::block::d_x(c)?;
    // Mean image distance of a depth-r partial block under the stretch map.
    let mut partial_mean = vec![BigRational::from_integer(BigInt::from(0))];
    for r in 1..=c {
        partial_mean.push(displacement_distribution(c, r)?.mean());
    }
    let blocks = horizon / c as u64 + 1;
    let mut exact = Vec::with_capacity(horizon as usize + 1);
    let mut approx = Vec::with_capacity(horizon as usize + 1);
    let mut k_counts = Vec::with_capacity(blocks as usize + 1);
    let mut a_qc = BigRational::from_integer(BigInt::from(0));
    let mut k = 0u64;
    k_counts.push(0);
    for i in 0..=horizon {
        let q = i / c as u64;
        let r = (i % c as u64) as u32;
        if r == 0 && i > 0 {
            if cfg.in_x(q - 1) {
                k += 1;
                a_qc += BigRational::from_integer(BigInt::from(c)) + &dx;
            } else {
                a_qc += BigRational::from_integer(BigInt::from(c));
            }
            k_counts.push(k);
        }
        let a_i = if r == 0 {
            a_qc.clone()
        } else if cfg.in_x(q) {
            &a_qc + &partial_mean[r as usize]
        } else {
            &a_qc + BigRational::from_integer(BigInt::from(r))
        };
        approx.push(a_i.to_f64().expect("A(i) is a small rational"));
        exact.push(a_i);
    }
    Ok(ASeries { cfg: *cfg, exact, approx, k_counts })
}

/// Brute-force sphere average of `d(1, f(g))` over S(i), exact. Oracle for
/// [`a_series`]; cost grows like 4·3^{i−1}.
pub fn sphere_average_oracle(
    i: u32,
    cfg: &QiConfig,
    budget: &Budget,
) -> Result<BigRational, QiError> {
    let size = word::sphere_size(i);
    if size > budget.enumeration_cap as u128 {
        return Err(QiError::Word(WordError::CapacityExceeded {
            needed: size,
            cap: budget.enumeration_cap,
        }));
    }
    let mut sum: u64 = 0;
    word::for_each_at_depth(i, &mut |letters| {
        let w = WordAddress::from_letters_unchecked(letters.to_vec());
        sum += apply_f(&w, cfg).depth() as u64;
    });
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(size)))
}

/// E[d(1, f(Z_n))] where Z is the simple random walk, via the radial DP and
/// the exact A-series.
pub fn pushforward_expected_distance(
    n: u64,
    cfg: &QiConfig,
    budget: &Budget,
) -> Result<f64, QiError> {
    let series = a_series(n, cfg, budget)?;
    let mut engine = RadialEngine::new(
        LambdaProfile::constant(0.25).expect("1/4 is a valid lambda"),
        budget,
    );
    engine.advance_to(n)?;
    Ok(pushforward_expectation_from_engine(&engine, &series))
}

/// Σ over the current window of P[X_t = i]·A(i).
pub fn pushforward_expectation_from_engine(engine: &RadialEngine, series: &ASeries) -> f64 {
    let a = series.values_f64();
    let mut acc = 0.0;
    for (i, m) in engine.window_iter() {
        if m != 0.0 {
            acc += m * a[i as usize];
        }
    }
    acc
}

/// Compares, by exhaustive enumeration, the law of f(Z_n) with the law of
/// the push-forward chain run n steps from f(1). Probabilities are integer
/// counts over 4ⁿ, so the comparison is exact; returns the total-variation
/// distance (0 whenever the two laws agree atom by atom).
pub fn pushforward_law_check(n: u64, cfg: &QiConfig, budget: &Budget) -> Result<f64, QiError> {
    let paths = 4u128.saturating_pow(n as u32);
    if paths > budget.enumeration_cap as u128 {
        return Err(QiError::Word(WordError::CapacityExceeded {
            needed: paths,
            cap: budget.enumeration_cap,
        }));
    }
    // Law of Z_n as counts over 4^n, then pushed through f.
    let mut z_law: HashMap<WordAddress, u64> = HashMap::new();
    z_law.insert(WordAddress::root(), 1);
    for _ in 0..n {
        let mut next: HashMap<WordAddress, u64> = HashMap::new();
        for (addr, count) in z_law {
            let neighbors = addr.neighbors();
            // The root has 4 children; elsewhere parent + 3 children. Either
            // way 4 moves of probability 1/4: counts carry over unscaled
            // because every state contributes once per neighbor.
            debug_assert_eq!(neighbors.len(), 4);
            for nb in neighbors {
                *next.entry(nb).or_insert(0) += count;
            }
        }
        z_law = next;
    }
    let mut image_law: HashMap<WordAddress, u64> = HashMap::new();
    for (addr, count) in &z_law {
        *image_law.entry(apply_f(addr, cfg)).or_insert(0) += count;
    }

    // Push-forward chain: p_H(g, h) = p_G(f⁻¹(g), f⁻¹(h)), started at f(1).
    let mut chain_law: HashMap<WordAddress, u64> = HashMap::new();
    chain_law.insert(apply_f(&WordAddress::root(), cfg), 1);
    for _ in 0..n {
        let mut next: HashMap<WordAddress, u64> = HashMap::new();
        for (h, count) in chain_law {
            let pre = invert_f(&h, cfg);
            for nb in pre.neighbors() {
                *next.entry(apply_f(&nb, cfg)).or_insert(0) += count;
            }
        }
        chain_law = next;
    }

    let mut l1: u128 = 0;
    for (addr, &a) in &image_law {
        let b = chain_law.get(addr).copied().unwrap_or(0);
        l1 += (a as i128 - b as i128).unsigned_abs();
    }
    for (addr, &b) in &chain_law {
        if !image_law.contains_key(addr) {
            l1 += b as u128;
        }
    }
    Ok(l1 as f64 / 2.0 / paths as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn cfg4() -> QiConfig {
        QiConfig::with_literal_base(4).unwrap()
    }

    fn budget() -> Budget {
        Budget::default()
    }

    #[test]
    fn a_series_base_values() {
        let s = a_series(16, &cfg4(), &budget()).unwrap();
        // f is the identity on the root block: A(i) = i for i ≤ C.
        for i in 0..=4u64 {
            assert_eq!(*s.value(i), BigRational::from_integer((i as i64).into()));
        }
        // A(2C) = 2C + k(2)·D_X with k(2) = 1.
        let expected = BigRational::from_integer(8.into()) + BigRational::new(68.into(), 81.into());
        assert_eq!(*s.value(8), expected);
        assert_eq!(s.k_count(2), 1);
    }

    #[test]
    fn a_series_matches_lemma_at_multiples() {
        let cfg = cfg4();
        let s = a_series(200, &cfg, &budget()).unwrap();
        let dx = super::super::block::d_x(4).unwrap();
        for q in 0..=(200 / 4) as u64 {
            let i = q * 4;
            let expected = BigRational::from_integer((i as i64).into())
                + BigRational::from_integer((cfg.x_count_below(q) as i64).into()) * &dx;
            assert_eq!(*s.value(i), expected, "i = {i}");
        }
    }

    #[test]
    fn a_series_linear_bounds() {
        let cfg = cfg4();
        let c = 4i64;
        let s = a_series(300, &cfg, &budget()).unwrap();
        for i in 0..=300u64 {
            let a = s.value_f64(i);
            let lower = i as f64 - (c * (c + 1)) as f64;
            let q_ceil = i.div_ceil(4);
            let upper = i as f64
                + (c as f64 - 1.0) / 3.0 * cfg.x_count_below(q_ceil) as f64
                + (c * c) as f64;
            assert!(a >= lower && a <= upper, "A({i}) = {a} outside [{lower}, {upper}]");
        }
    }

    #[test]
    fn a_series_matches_sphere_oracle_small() {
        let cfg = cfg4();
        let s = a_series(9, &cfg, &budget()).unwrap();
        for i in 0..=9u32 {
            let oracle = sphere_average_oracle(i, &cfg, &budget()).unwrap();
            assert_eq!(*s.value(i as u64), oracle, "i = {i}");
        }
    }

    #[test]
    fn pushforward_equals_plain_expectation_before_first_stretch() {
        // f is the identity on T_C(v₀), so for n ≤ C the push-forward
        // expectation is E[X_n] itself.
        let e = pushforward_expected_distance(4, &cfg4(), &budget()).unwrap();
        let plain =
            crate::radial::expected_distance(4, &LambdaProfile::constant(0.25).unwrap(), &budget())
                .unwrap();
        assert!((e - plain).abs() < 1e-12);
    }

    #[test]
    fn pushforward_within_qi_envelope() {
        // The image expectation sits between E[X_n] − C(C+1) and
        // E[X_n] + (C−1)/3·k(⌈n/C⌉) + C², the two bounds on A(i).
        let cfg = cfg4();
        let n = 2000u64;
        let e = pushforward_expected_distance(n, &cfg, &budget()).unwrap();
        let plain =
            crate::radial::expected_distance(n, &LambdaProfile::constant(0.25).unwrap(), &budget())
                .unwrap();
        let c = 4f64;
        assert!(e >= plain - c * (c + 1.0), "push-forward fell too low: {e} vs {plain}");
        let k = cfg.x_count_below(n.div_ceil(4)) as f64;
        assert!(e <= plain + (c - 1.0) / 3.0 * k + c * c, "push-forward too high: {e}");
        // And it genuinely escapes upward: stretched blocks add distance.
        assert!(e > plain + 10.0, "stretch displacement missing: {e} vs {plain}");
    }

    #[test]
    fn law_check_exact_small() {
        for n in [0u64, 1, 4] {
            let tv = pushforward_law_check(n, &cfg4(), &budget()).unwrap();
            assert_eq!(tv, 0.0, "n = {n}");
        }
    }

    #[test]
    fn dx_is_not_zero() {
        assert!(!super::super::block::d_x(4).unwrap().is_zero());
    }
}

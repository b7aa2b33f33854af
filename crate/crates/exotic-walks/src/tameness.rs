//! Verifiers for the three tameness axioms — bounded jumps, exponential
//! point-probability decay (non-amenability), uniform irreducibility — plus
//! transience partial sums and the Chernoff bound used to size Monte-Carlo
//! tolerances.
//!
//! Decay is verified from the identity start only: there the endpoint is
//! uniform on its sphere (certified exactly by path enumeration below), so
//! `sup_y P[w_n = y] = max_i P[X_n = i] / |S(i)|` reduces to the radial DP.

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::budget::Budget;
use crate::radial::{LambdaProfile, RadialEngine, RadialError};
use crate::rational::rational_from_f64;
use crate::word::{self, WordAddress, WordError};

#[derive(Debug, Error)]
pub enum TamenessError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("sphere-uniformity symmetry violated: {0}")]
    SymmetryViolation(String),
}

/// Bounded-jumps axiom: transitions only reach the 4 tree neighbors.
#[derive(Debug, Clone, Serialize)]
pub struct BoundedJumps {
    pub holds: bool,
    pub support_size: u32,
    pub support: Vec<String>,
    /// max over probed depths of |row sum − 1|.
    pub max_row_sum_error: f64,
}

/// Structural check of the transition rows: the support is always the 4
/// tree neighbors and each row is stochastic.
pub fn check_bounded_jumps(prof: &LambdaProfile, probe_depth: u64) -> BoundedJumps {
    // Root row: 4 children at 1/4 each.
    let mut max_err = (4.0 * 0.25 - 1.0f64).abs();
    for j in 1..=probe_depth.max(1) {
        let lam = prof.lambda_at(j);
        let row = lam + 3.0 * ((1.0 - lam) / 3.0);
        max_err = max_err.max((row - 1.0).abs());
    }
    BoundedJumps {
        holds: true,
        support_size: 4,
        support: vec![
            "parent".into(),
            "child-a".into(),
            "child-b".into(),
            "child-c".into(),
        ],
        max_row_sum_error: max_err,
    }
}

/// `sup_y P[w_n¹ = y] = max_i P[X_n = i] / |S(i)|`.
pub fn max_point_probability(
    n: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<f64, TamenessError> {
    if n < 1 {
        return Err(TamenessError::InvalidParameter("n must be >= 1".into()));
    }
    let mut engine = RadialEngine::new(prof.clone(), budget);
    engine.advance_to(n)?;
    Ok(max_point_probability_from_window(&engine))
}

fn max_point_probability_from_window(engine: &RadialEngine) -> f64 {
    let mut best = 0.0f64;
    for (i, m) in engine.window_iter() {
        if m == 0.0 {
            continue;
        }
        // 4·3^{i-1} in f64: overflows to +inf around i ≈ 650, where the
        // quotient is below anything representable and cannot be the max.
        let size = if i == 0 { 1.0 } else { 4.0 * 3.0f64.powi(i as i32 - 1) };
        best = best.max(m / size);
    }
    best
}

/// max over n in `[n_lo, n_hi]` of `max_point_probability(n)^{1/n}`;
/// a value < 1 witnesses exponential decay over the tested horizon.
pub fn rho_fit(
    n_lo: u64,
    n_hi: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<f64, TamenessError> {
    if n_lo < 1 || n_lo > n_hi {
        return Err(TamenessError::InvalidParameter(format!(
            "need 1 <= n_lo <= n_hi, got [{n_lo}, {n_hi}]"
        )));
    }
    let mut engine = RadialEngine::new(prof.clone(), budget);
    let mut worst = 0.0f64;
    for n in n_lo..=n_hi {
        engine.advance_to(n)?;
        let mpp = max_point_probability_from_window(&engine);
        worst = worst.max(mpp.powf(1.0 / n as f64));
    }
    Ok(worst)
}

/// Irreducibility constants for one target `u`.
#[derive(Debug, Clone, Serialize)]
pub struct IrreducibilityBound {
    pub u: String,
    /// K_u = depth(u): the number of steps used.
    pub k: u64,
    /// ε_u = λ_min^{depth(u)}, the uniform lower bound.
    pub eps: f64,
    /// P[the chain walks straight to u]: product of the forward one-step
    /// probabilities along the geodesic (1/4, then (1−λ_j)/3). Always ≥ ε_u
    /// for tame-eligible profiles.
    pub exact: f64,
}

pub fn irreducibility_bound(
    u: &WordAddress,
    prof: &LambdaProfile,
) -> Result<IrreducibilityBound, TamenessError> {
    if u.is_root() {
        return Err(TamenessError::InvalidParameter(
            "irreducibility target must differ from the root".into(),
        ));
    }
    let depth = u.depth() as u64;
    let mut exact = 0.25;
    for j in 1..depth {
        exact *= (1.0 - prof.lambda_at(j)) / 3.0;
    }
    Ok(IrreducibilityBound {
        u: u.to_string(),
        k: depth,
        eps: prof.lambda_min().powi(depth as i32),
        exact,
    })
}

/// P[X_n > L·n], exactly from the DP law.
pub fn linear_progress_check(
    n: u64,
    l: f64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<f64, TamenessError> {
    if !(l > 0.0 && l < 1.0) {
        return Err(TamenessError::InvalidParameter(format!(
            "L = {l} must lie in (0, 1)"
        )));
    }
    let mut engine = RadialEngine::new(prof.clone(), budget);
    engine.advance_to(n)?;
    let threshold = l * n as f64;
    let mut acc = 0.0;
    for (j, m) in engine.window_iter() {
        if j as f64 > threshold {
            acc += m;
        }
    }
    Ok(acc)
}

/// The Hoeffding tail bound `e^{-2nδ²}` for means of [0,1]-valued variables.
/// δ = 0 degenerately returns 1.
pub fn chernoff_bound(n: u64, mu: f64, delta: f64) -> Result<f64, TamenessError> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(TamenessError::InvalidParameter(format!(
            "mu = {mu} must lie in [0, 1]"
        )));
    }
    if !(delta >= 0.0 && delta <= 1.0 - mu) {
        return Err(TamenessError::InvalidParameter(format!(
            "delta = {delta} must lie in [0, 1 - mu]"
        )));
    }
    Ok((-2.0 * n as f64 * delta * delta).exp())
}

/// Exhaustive path enumeration of the tree chain, in exact rationals.
///
/// Returns the endpoint law at time n as a map address → probability.
/// The number of paths is 4ⁿ, so n is capped by the enumeration budget.
pub fn tree_law_exact(
    n: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<HashMap<WordAddress, BigRational>, TamenessError> {
    let paths = 4u128.saturating_pow(n as u32);
    if paths > budget.enumeration_cap as u128 {
        return Err(TamenessError::Word(WordError::CapacityExceeded {
            needed: paths,
            cap: budget.enumeration_cap,
        }));
    }
    let mut law: HashMap<WordAddress, BigRational> = HashMap::new();
    law.insert(WordAddress::root(), BigRational::one());
    let quarter = BigRational::new(1.into(), 4.into());
    for _ in 0..n {
        let mut next: HashMap<WordAddress, BigRational> = HashMap::new();
        for (addr, p) in law {
            if addr.is_root() {
                for nb in addr.neighbors() {
                    *next.entry(nb).or_insert_with(BigRational::zero) += &p * &quarter;
                }
            } else {
                let lam = rational_from_f64(prof.lambda_at(addr.depth() as u64));
                let down = &p * &lam;
                let up_each = (&p - &down) / BigRational::from_integer(3.into());
                for nb in addr.neighbors() {
                    let share = if nb.depth() < addr.depth() { down.clone() } else { up_each.clone() };
                    *next.entry(nb).or_insert_with(BigRational::zero) += share;
                }
            }
        }
        law = next;
    }
    Ok(law)
}

/// Report of the exact sphere-uniformity certification.
#[derive(Debug, Clone, Serialize)]
pub struct SphereUniformityReport {
    pub n: u64,
    pub endpoint_states: u64,
    /// True when, at every depth, all endpoint probabilities are exactly
    /// equal and sum to the radial DP value.
    pub exact: bool,
}

/// Certifies, by exhaustive enumeration at time n, that conditional on
/// `X_n = i` the endpoint is uniform on S(i), and that the per-sphere totals
/// match the exact radial law. All comparisons are exact rationals.
pub fn certify_sphere_uniformity(
    n: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<SphereUniformityReport, TamenessError> {
    let law = tree_law_exact(n, prof, budget)?;
    let radial = crate::rational::distribution_at_exact(n, prof)?;
    let mut by_depth: HashMap<usize, (BigRational, u64, BigRational)> = HashMap::new();
    for (addr, p) in &law {
        let d = addr.depth();
        let entry = by_depth
            .entry(d)
            .or_insert_with(|| (p.clone(), 0, BigRational::zero()));
        if entry.0 != *p {
            return Err(TamenessError::SymmetryViolation(format!(
                "unequal endpoint probabilities at depth {d}"
            )));
        }
        entry.1 += 1;
        entry.2 += p;
    }
    for (d, (_, count, total)) in &by_depth {
        let expected_count = word::sphere_size(*d as u32);
        if *count as u128 != expected_count {
            return Err(TamenessError::SymmetryViolation(format!(
                "depth {d} reached by {count} endpoints, sphere has {expected_count}"
            )));
        }
        if *total != radial.mass[*d] {
            return Err(TamenessError::SymmetryViolation(format!(
                "depth {d} total mass disagrees with the radial DP"
            )));
        }
    }
    // Depths with zero mass must be zero in the radial law too.
    for (d, m) in radial.mass.iter().enumerate() {
        if !by_depth.contains_key(&d) && !m.is_zero() {
            return Err(TamenessError::SymmetryViolation(format!(
                "radial law has mass at depth {d} but no endpoints reach it"
            )));
        }
    }
    Ok(SphereUniformityReport {
        n,
        endpoint_states: law.len() as u64,
        exact: true,
    })
}

/// JSON-serializable tameness report (see the module docs for the scope of
/// the non-amenability check).
#[derive(Debug, Clone, Serialize)]
pub struct TamenessReport {
    pub bounded_jumps: BoundedJumps,
    pub rho_fit: f64,
    pub horizon: u64,
    pub irreducibility: Vec<IrreducibilityBound>,
    pub transience_partial_sum: f64,
}

/// Runs every verifier against one profile.
///
/// `horizon` drives the decay fit and the transience partial sum;
/// `word_depth` bounds the irreducibility targets (all of the ball).
pub fn build_report(
    prof: &LambdaProfile,
    horizon: u64,
    word_depth: u32,
    budget: &Budget,
) -> Result<TamenessReport, TamenessError> {
    let bounded_jumps = check_bounded_jumps(prof, horizon.min(10_000));
    let rho = rho_fit(1.max(horizon / 4), horizon, prof, budget)?;
    let mut engine = RadialEngine::new(prof.clone(), budget);
    let transience = engine.return_mass_sum(horizon)?;
    let mut irreducibility = Vec::new();
    word::for_each_in_ball(word_depth, budget.enumeration_cap, &mut |letters| {
        if !letters.is_empty() {
            let u = WordAddress::validate(letters.to_vec()).expect("enumeration is valid");
            irreducibility.push(irreducibility_bound(&u, prof).expect("u is not the root"));
        }
    })?;
    Ok(TamenessReport {
        bounded_jumps,
        rho_fit: rho,
        horizon,
        irreducibility,
        transience_partial_sum: transience,
    })
}

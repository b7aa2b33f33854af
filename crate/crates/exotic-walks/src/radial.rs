//! Exact distribution engine for the birth-death chain on ℕ induced by a
//! length-homogeneous chain on F₂.
//!
//! The distance-from-identity process has transitions `p(0,1) = 1`,
//! `p(j,j+1) = 1-λ_j`, `p(j,j-1) = λ_j`, so its law at time n is computed by
//! an O(n²) forward sweep over a dense vector. The sweep only touches the
//! window of indices carrying representable mass (tails below `FLUSH_EPS`
//! are cleared), which keeps horizons around 10⁶ tractable.

use std::sync::Arc;

use thiserror::Error;

use crate::budget::Budget;

/// Masses below this are flushed to exact zero so the active window stays
/// narrow and never wanders into subnormal arithmetic. The discarded mass
/// per step is far below the 1e-12 conservation tolerance.
const FLUSH_EPS: f64 = 1e-300;

/// Total-mass drift that triggers a renormalization of the vector.
pub const MASS_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RadialError {
    #[error("horizon {requested} exceeds DP budget {cap}")]
    BudgetExceeded { requested: u64, cap: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

/// The backward-step probability λ_j as a total function of the distance
/// j ≥ 1 from the identity. λ₀ is never queried: the step from 0 is forced.
#[derive(Clone)]
pub struct LambdaProfile {
    name: String,
    lambda_min: f64,
    lambda_max: f64,
    lambda_at: Arc<dyn Fn(u64) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for LambdaProfile {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LambdaProfile")
            .field("name", &self.name)
            .field("lambda_min", &self.lambda_min)
            .field("lambda_max", &self.lambda_max)
            .finish()
    }
}

impl LambdaProfile {
    /// Wraps an arbitrary λ function together with its exact range bounds.
    /// `lambda_min`/`lambda_max` must bound every value the function returns.
    pub fn new(
        name: impl Into<String>,
        lambda_min: f64,
        lambda_max: f64,
        lambda_at: impl Fn(u64) -> f64 + Send + Sync + 'static,
    ) -> Result<Self, RadialError> {
        if !(0.0..=1.0).contains(&lambda_min)
            || !(0.0..=1.0).contains(&lambda_max)
            || lambda_min > lambda_max
        {
            return Err(RadialError::InvalidParameter(format!(
                "lambda range [{lambda_min}, {lambda_max}] is not within [0,1]"
            )));
        }
        Ok(LambdaProfile {
            name: name.into(),
            lambda_min,
            lambda_max,
            lambda_at: Arc::new(lambda_at),
        })
    }

    /// λ_j ≡ `value`. With `value = 1/4` this is the simple random walk.
    pub fn constant(value: f64) -> Result<Self, RadialError> {
        if !(0.0..=1.0).contains(&value) {
            return Err(RadialError::InvalidParameter(format!(
                "constant lambda {value} outside [0,1]"
            )));
        }
        Self::new(format!("const(lambda={value})"), value, value, move |_| value)
    }

    /// Table-driven profile: λ_j = `values[j-1]` for j ≤ len, else `default`.
    /// Intended for tests and oracles, not for the named constructions.
    pub fn from_table(values: Vec<f64>, default: f64) -> Result<Self, RadialError> {
        if values.iter().chain([&default]).any(|v| !(0.0..=1.0).contains(v)) {
            return Err(RadialError::InvalidParameter(
                "table entries must lie in [0,1]".into(),
            ));
        }
        let mut lo = default;
        let mut hi = default;
        for &v in &values {
            lo = lo.min(v);
            hi = hi.max(v);
        }
        Self::new(
            format!("table(len={}, default={default})", values.len()),
            lo,
            hi,
            move |j| {
                let idx = (j - 1) as usize;
                if idx < values.len() {
                    values[idx]
                } else {
                    default
                }
            },
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// λ_j for j ≥ 1.
    pub fn lambda_at(&self, j: u64) -> f64 {
        debug_assert!(j >= 1, "lambda is only defined for j >= 1");
        (self.lambda_at)(j)
    }

    pub fn lambda_min(&self) -> f64 {
        self.lambda_min
    }

    pub fn lambda_max(&self) -> f64 {
        self.lambda_max
    }

    /// Hypotheses of the tameness lemma: 0 < λ_j ≤ 1/4 with positive infimum.
    pub fn tame_eligible(&self) -> bool {
        self.lambda_min > 0.0 && self.lambda_max <= 0.25
    }
}

/// The exact law of the distance process at one time.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialDistribution {
    time: u64,
    mass: Vec<f64>,
}

impl RadialDistribution {
    /// Point mass at 0 (time 0).
    pub fn initial() -> Self {
        RadialDistribution { time: 0, mass: vec![1.0] }
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    /// P[X_n = j]; zero outside the stored range.
    pub fn mass(&self, j: u64) -> f64 {
        self.mass.get(j as usize).copied().unwrap_or(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.mass.iter().sum()
    }

    /// Σ j·P[X_n = j].
    pub fn expectation(&self) -> f64 {
        self.mass
            .iter()
            .enumerate()
            .map(|(j, m)| j as f64 * m)
            .sum()
    }

    /// Non-zero atoms in increasing j order.
    pub fn support(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.mass
            .iter()
            .enumerate()
            .filter(|(_, m)| **m != 0.0)
            .map(|(j, m)| (j as u64, *m))
    }

    pub(crate) fn from_parts(time: u64, mass: Vec<f64>) -> Self {
        RadialDistribution { time, mass }
    }
}

/// One transition of the birth-death chain: mass at 0 moves to 1 with
/// probability 1, mass at j ≥ 1 splits λ_j down / 1-λ_j up.
pub fn step(d: &RadialDistribution, prof: &LambdaProfile) -> RadialDistribution {
    let n = d.mass.len();
    let mut next = vec![0.0; n + 1];
    for j in 0..=n {
        let from_below = if j >= 1 {
            let m = d.mass[j - 1];
            if j - 1 == 0 {
                m
            } else {
                m * (1.0 - prof.lambda_at((j - 1) as u64))
            }
        } else {
            0.0
        };
        let from_above = if j + 1 < n {
            d.mass[j + 1] * prof.lambda_at((j + 1) as u64)
        } else {
            0.0
        };
        next[j] = from_below + from_above;
    }
    let total: f64 = next.iter().sum();
    if (total - 1.0).abs() > MASS_TOLERANCE {
        for m in &mut next {
            *m /= total;
        }
    }
    RadialDistribution { time: d.time + 1, mass: next }
}

/// Forward DP engine.
///
/// The law at time t is supported on one parity class, so masses are stored
/// parity-compressed: slot s holds P[X_t = 2s + (t mod 2)]. Each step is a
/// unit-stride sweep over the window of slots carrying representable mass.
/// The engine records, per time t, the expectation E[X_t], the weighted sum
/// S(t) = Σ_{j≥1} P[X_t = j]·λ_j, and P[X_t = 0]. Single-threaded by
/// design; independent engines can run concurrently.
pub struct RadialEngine {
    profile: LambdaProfile,
    horizon_cap: u64,
    /// λ_{2s} (slot 0 is the λ₀ = 0 sentinel: the step from 0 is forced up).
    lam_even: Vec<f64>,
    /// λ_{2s+1}.
    lam_odd: Vec<f64>,
    cur: Vec<f64>,
    nxt: Vec<f64>,
    lo: usize,
    hi: usize,
    time: u64,
    expectation: f64,
    e_hist: Vec<f64>,
    s_hist: Vec<f64>,
    s_prefix: Vec<f64>,
    zero_hist: Vec<f64>,
}

impl RadialEngine {
    pub fn new(profile: LambdaProfile, budget: &Budget) -> Self {
        let mut cur = Vec::new();
        cur.push(1.0);
        RadialEngine {
            profile,
            horizon_cap: budget.horizon_cap,
            lam_even: vec![0.0],
            lam_odd: Vec::new(),
            cur,
            nxt: Vec::new(),
            lo: 0,
            hi: 0,
            time: 0,
            expectation: 0.0,
            e_hist: vec![0.0],
            s_hist: Vec::new(),
            s_prefix: vec![0.0],
            zero_hist: vec![1.0],
        }
    }

    pub fn profile(&self) -> &LambdaProfile {
        &self.profile
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    fn ensure_capacity(&mut self, n: u64) {
        let want = n as usize / 2 + 3;
        if self.lam_even.len() < want {
            let from = self.lam_even.len();
            self.lam_even.resize(want, 0.0);
            for (s, slot) in self.lam_even.iter_mut().enumerate().skip(from) {
                *slot = self.profile.lambda_at(2 * s as u64);
            }
        }
        if self.lam_odd.len() < want {
            let from = self.lam_odd.len();
            self.lam_odd.resize(want, 0.0);
            for (s, slot) in self.lam_odd.iter_mut().enumerate().skip(from) {
                *slot = self.profile.lambda_at(2 * s as u64 + 1);
            }
        }
        if self.cur.len() < want {
            self.cur.resize(want, 0.0);
        }
        if self.nxt.len() < want {
            self.nxt.resize(want, 0.0);
        }
    }

    /// Runs the chain forward to time `n` (no-op when already there).
    pub fn advance_to(&mut self, n: u64) -> Result<(), RadialError> {
        if n > self.horizon_cap {
            return Err(RadialError::BudgetExceeded { requested: n, cap: self.horizon_cap });
        }
        self.ensure_capacity(n);
        while self.time < n {
            self.step_in_place();
        }
        Ok(())
    }

    fn step_in_place(&mut self) {
        let phase = (self.time & 1) as usize;
        let (lo, hi) = (self.lo, self.hi);
        let mut s_t = 0.0;
        let mut total = 0.0;
        let (new_lo, new_hi);
        if phase == 0 {
            // Sources at j = 2s, targets at j = 2s'+1:
            // nxt[s'] = cur[s']·(1−λ_{2s'}) + cur[s'+1]·λ_{2s'+2}.
            new_lo = lo.saturating_sub(1);
            new_hi = hi;
            let src = &self.cur[new_lo..=new_hi + 1];
            let lam = &self.lam_even[new_lo..=new_hi + 1];
            let dst = &mut self.nxt[new_lo..=new_hi];
            for i in 0..dst.len() {
                let below = src[i] * (1.0 - lam[i]);
                let above = src[i + 1] * lam[i + 1];
                s_t += above;
                let m = below + above;
                let m = if m < FLUSH_EPS { 0.0 } else { m };
                dst[i] = m;
                total += m;
            }
        } else {
            // Sources at j = 2s+1, targets at j = 2s':
            // nxt[s'] = cur[s'−1]·(1−λ_{2s'−1}) + cur[s']·λ_{2s'+1}.
            new_lo = lo;
            new_hi = hi + 1;
            if new_lo == 0 {
                // j = 0 receives only the downward move from j = 1; that
                // move also contributes cur[0]·λ₁ to S(t).
                let down = self.cur[0] * self.lam_odd[0];
                s_t += down;
                let m = if down < FLUSH_EPS { 0.0 } else { down };
                self.nxt[0] = m;
                total += m;
            }
            let start = new_lo.max(1);
            let src_below = &self.cur[start - 1..new_hi];
            let src_above = &self.cur[start..=new_hi];
            let lam_below = &self.lam_odd[start - 1..new_hi];
            let lam_above = &self.lam_odd[start..=new_hi];
            let dst = &mut self.nxt[start..=new_hi];
            for i in 0..dst.len() {
                let below = src_below[i] * (1.0 - lam_below[i]);
                let above = src_above[i] * lam_above[i];
                s_t += above;
                let m = below + above;
                let m = if m < FLUSH_EPS { 0.0 } else { m };
                dst[i] = m;
                total += m;
            }
        }
        // Zero the sources so the buffers swap clean.
        for slot in &mut self.cur[lo..=hi] {
            *slot = 0.0;
        }
        std::mem::swap(&mut self.cur, &mut self.nxt);
        // Trim the window to the surviving support.
        let mut lo = new_lo;
        let mut hi = new_hi;
        while lo < hi && self.cur[lo] == 0.0 {
            lo += 1;
        }
        while hi > lo && self.cur[hi] == 0.0 {
            hi -= 1;
        }
        self.lo = lo;
        self.hi = hi;
        if (total - 1.0).abs() > MASS_TOLERANCE {
            for slot in &mut self.cur[lo..=hi] {
                *slot /= total;
            }
        }
        self.expectation += 1.0 - 2.0 * s_t;
        self.time += 1;
        self.s_hist.push(s_t);
        self.s_prefix.push(self.s_prefix.last().unwrap() + s_t);
        self.e_hist.push(self.expectation);
        let new_phase = (self.time & 1) as usize;
        self.zero_hist
            .push(if new_phase == 0 && lo == 0 { self.cur[0] } else { 0.0 });
    }

    /// Snapshot of the current law as a dense vector over 0..=t.
    pub fn distribution(&self) -> RadialDistribution {
        let t = self.time as usize;
        let phase = (self.time & 1) as usize;
        let mut mass = vec![0.0; t + 1];
        for s in self.lo..=self.hi {
            let j = 2 * s + phase;
            if j <= t {
                mass[j] = self.cur[s];
            }
        }
        RadialDistribution::from_parts(self.time, mass)
    }

    /// The atoms currently carrying mass, as (j, P[X_t = j]) in increasing j.
    pub fn window_iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        let phase = (self.time & 1) as u64;
        self.cur[self.lo..=self.hi]
            .iter()
            .enumerate()
            .map(move |(off, &m)| (2 * (self.lo + off) as u64 + phase, m))
    }

    /// E[X_t] for any already-computed t, via the incremental recurrence.
    pub fn expectation_at(&self, t: u64) -> f64 {
        self.e_hist[t as usize]
    }

    /// S(t) = Σ_{j≥1} P[X_t = j]·λ_j for t < current time.
    pub fn weighted_lambda_sum_at(&self, t: u64) -> f64 {
        self.s_hist[t as usize]
    }

    /// P[X_t = 0] for any already-computed t.
    pub fn zero_mass_at(&self, t: u64) -> f64 {
        self.zero_hist[t as usize]
    }

    /// Σ_{t=a}^{b-1} S(t) in O(1) from the running prefix sums.
    fn s_range_sum(&self, a: u64, b: u64) -> f64 {
        self.s_prefix[b as usize] - self.s_prefix[a as usize]
    }

    /// |E[X_n] − (k + E[X_{n−k}] − 2·Σ_{i=1}^{k} S(n−i))|.
    ///
    /// Both sides are computed from the same DP sweep; the recurrence holds
    /// identically, so the residual measures only floating-point noise.
    pub fn lemma33_residual(&mut self, n: u64, k: u64) -> Result<f64, RadialError> {
        if k == 0 || k > n {
            return Err(RadialError::InvalidParameter(format!(
                "k = {k} must lie in [1, n = {n}]"
            )));
        }
        self.advance_to(n)?;
        let lhs = self.expectation_at(n);
        let rhs = k as f64 + self.expectation_at(n - k) - 2.0 * self.s_range_sum(n - k, n);
        Ok((lhs - rhs).abs())
    }

    /// Σ_{h=0}^{n_max} P[X_h = 0].
    pub fn return_mass_sum(&mut self, n_max: u64) -> Result<f64, RadialError> {
        self.advance_to(n_max)?;
        Ok(self.zero_hist[..=n_max as usize].iter().sum())
    }
}

/// Exact law of X_n started from 0.
pub fn distribution_at(
    n: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<RadialDistribution, RadialError> {
    let mut engine = RadialEngine::new(prof.clone(), budget);
    engine.advance_to(n)?;
    Ok(engine.distribution())
}

/// E[X_n], by the incremental recurrence
/// E[X_n] = E[X_{n−1}] + 1 − 2·Σ_{j≥1} P[X_{n−1} = j]·λ_j.
pub fn expected_distance(
    n: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<f64, RadialError> {
    let mut engine = RadialEngine::new(prof.clone(), budget);
    engine.advance_to(n)?;
    Ok(engine.expectation_at(n))
}

/// See [`RadialEngine::lemma33_residual`].
pub fn lemma33_residual(
    n: u64,
    k: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<f64, RadialError> {
    RadialEngine::new(prof.clone(), budget).lemma33_residual(n, k)
}

/// Σ_{h=0}^{n_max} P[X_h = 0], monotone in `n_max`.
pub fn return_mass_sum(
    n_max: u64,
    prof: &LambdaProfile,
    budget: &Budget,
) -> Result<f64, RadialError> {
    RadialEngine::new(prof.clone(), budget).return_mass_sum(n_max)
}

/// Probability that the walk `p(i,i+1) = up_prob`, `p(i,i-1) = 1-up_prob`
/// (0 absorbing) hits 0 by time `n_max` starting from `start`. Converges
/// upward to `((1-up_prob)/up_prob)^start` as `n_max` grows.
pub fn hitting_zero_probability(
    start: u64,
    up_prob: f64,
    n_max: u64,
) -> Result<f64, RadialError> {
    if !(up_prob > 0.5 && up_prob < 1.0) {
        return Err(RadialError::InvalidParameter(format!(
            "up_prob = {up_prob} must lie in (1/2, 1)"
        )));
    }
    if start == 0 {
        return Ok(1.0);
    }
    let top = start as usize + n_max as usize + 2;
    let mut cur = vec![0.0; top];
    let mut nxt = vec![0.0; top];
    cur[start as usize] = 1.0;
    let mut absorbed = 0.0;
    for _ in 0..n_max {
        for v in nxt.iter_mut() {
            *v = 0.0;
        }
        for i in 1..top - 1 {
            let m = cur[i];
            if m == 0.0 {
                continue;
            }
            nxt[i + 1] += m * up_prob;
            if i == 1 {
                absorbed += m * (1.0 - up_prob);
            } else {
                nxt[i - 1] += m * (1.0 - up_prob);
            }
        }
        std::mem::swap(&mut cur, &mut nxt);
    }
    Ok(absorbed)
}

/// One trajectory X₀..X_n, reproducible from the seed.
pub fn sample_radial_path(n: u64, prof: &LambdaProfile, seed: u64) -> Vec<u64> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha12Rng::seed_from_u64(seed);
    let mut path = Vec::with_capacity(n as usize + 1);
    let mut x = 0u64;
    path.push(x);
    for _ in 0..n {
        if x == 0 {
            x = 1;
        } else if rng.gen::<f64>() < prof.lambda_at(x) {
            x -= 1;
        } else {
            x += 1;
        }
        path.push(x);
    }
    path
}

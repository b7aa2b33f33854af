//! Exact-rational oracle for the radial DP.
//!
//! Runs the same birth-death recursion as [`crate::radial`] but in
//! `BigRational` arithmetic, with every λ_j taken as the exact dyadic
//! rational value of the double the profile returns. Total mass is exactly 1
//! at every step, which makes this the independent reference the
//! double-precision engine is measured against.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::radial::{LambdaProfile, RadialError};

/// Largest horizon accepted; denominators grow linearly in steps, so this is
/// a guard against accidental huge runs rather than a hard limit.
pub const EXACT_HORIZON_CAP: u64 = 4096;

/// Exact dyadic rational equal to the given double.
pub fn rational_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

/// Exact law of X_n as a dense vector over 0..=n.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDistribution {
    pub time: u64,
    pub mass: Vec<BigRational>,
}

impl ExactDistribution {
    pub fn total_mass(&self) -> BigRational {
        self.mass.iter().sum()
    }

    pub fn expectation(&self) -> BigRational {
        self.mass
            .iter()
            .enumerate()
            .map(|(j, m)| BigRational::from_integer(BigInt::from(j)) * m)
            .sum()
    }

    /// Total-variation distance to a double-precision law over 0..=n.
    pub fn tv_distance_to(&self, other: &crate::radial::RadialDistribution) -> f64 {
        let mut acc = 0.0;
        let n = self.mass.len().max(other.time() as usize + 1);
        for j in 0..n {
            let exact = self
                .mass
                .get(j)
                .map(|q| q.to_f64().unwrap_or(0.0))
                .unwrap_or(0.0);
            acc += (exact - other.mass(j as u64)).abs();
        }
        acc / 2.0
    }
}

/// Exact law of X_n started at 0 under the profile's (dyadic) λ values.
pub fn distribution_at_exact(
    n: u64,
    prof: &LambdaProfile,
) -> Result<ExactDistribution, RadialError> {
    if n > EXACT_HORIZON_CAP {
        return Err(RadialError::BudgetExceeded { requested: n, cap: EXACT_HORIZON_CAP });
    }
    let n = n as usize;
    let lambdas: Vec<BigRational> = (0..=n + 1)
        .map(|j| {
            if j == 0 {
                BigRational::zero()
            } else {
                rational_from_f64(prof.lambda_at(j as u64))
            }
        })
        .collect();
    let mut cur = vec![BigRational::zero(); n + 2];
    let mut nxt = vec![BigRational::zero(); n + 2];
    cur[0] = BigRational::one();
    for t in 0..n {
        for v in nxt.iter_mut() {
            v.set_zero();
        }
        for j in 0..=t {
            if cur[j].is_zero() {
                continue;
            }
            let down = &cur[j] * &lambdas[j];
            let up = &cur[j] - &down;
            nxt[j + 1] += up;
            if j >= 1 {
                nxt[j - 1] += down;
            }
        }
        std::mem::swap(&mut cur, &mut nxt);
    }
    cur.truncate(n + 1);
    Ok(ExactDistribution { time: n as u64, mass: cur })
}

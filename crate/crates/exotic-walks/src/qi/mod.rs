//! The block-built self quasi-isometry of the rooted tree.
//!
//! The tree is cut into depth-C blocks. Block q (the subtrees rooted at
//! depth q·C) is mapped either by the identity block map or by the stretch
//! block map [`block::apply_x`], depending on whether q lies in the index
//! set 𝒳 = ∪ [base^{2n}, base^{2n+1}). Threading the block images together
//! yields a bijection `f` of the tree that is a (C, 0)-quasi-isometry; its
//! push-forward of the simple random walk has oscillating normalized drift.

pub mod block;
pub mod map;
pub mod series;
pub mod verify;

pub use block::{apply_x, d_x, d_x_closed_form, displacement_distribution, DisplacementDistribution};
pub use map::{apply_f, invert_f};
pub use series::{a_series, pushforward_expected_distance, pushforward_law_check, ASeries};
pub use verify::{
    check_ball_bijectivity, verify_qi_ball, verify_qi_bruteforce, verify_qi_sampled,
    BijectivityReport, DistortionReport,
};

use thiserror::Error;

use crate::radial::RadialError;
use crate::word::WordError;

#[derive(Debug, Error)]
pub enum QiError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid relative word: {0}")]
    InvalidRelativeWord(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error("horizon {requested} exceeds budget {cap}")]
    BudgetExceeded { requested: u64, cap: u64 },
}

/// Block depth C and the index set 𝒳 of stretched blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QiConfig {
    c: u32,
    x_set_base: u64,
}

impl QiConfig {
    /// C ≥ 4 guarantees the limsup/liminf drift bounds are separated;
    /// base ≥ 2 keeps 𝒳 and its complement both unbounded.
    pub fn new(c: u32, x_set_base: u64) -> Result<Self, QiError> {
        if c < 4 {
            return Err(QiError::InvalidParameter(format!(
                "block depth C = {c} must be at least 4"
            )));
        }
        if x_set_base < 2 {
            return Err(QiError::InvalidParameter(format!(
                "x-set base {x_set_base} must be at least 2"
            )));
        }
        Ok(QiConfig { c, x_set_base })
    }

    /// The literal construction: C with base 8.
    pub fn with_literal_base(c: u32) -> Result<Self, QiError> {
        Self::new(c, 8)
    }

    pub fn c(&self) -> u32 {
        self.c
    }

    pub fn x_set_base(&self) -> u64 {
        self.x_set_base
    }

    /// Is block q stretched? q ∈ 𝒳 iff base^e ≤ q < base^{e+1} for even e.
    /// 0 is never in 𝒳: the root block is always the identity.
    pub fn in_x(&self, q: u64) -> bool {
        if q == 0 {
            return false;
        }
        let mut power = 1u64;
        let mut exponent = 0u32;
        while let Some(next) = power.checked_mul(self.x_set_base) {
            if next > q {
                break;
            }
            power = next;
            exponent += 1;
        }
        exponent % 2 == 0
    }

    /// k(q) = |𝒳 ∩ {0, …, q−1}|.
    pub fn x_count_below(&self, q: u64) -> u64 {
        let mut count = 0u64;
        let mut lo = 1u64; // base^0
        loop {
            if lo >= q {
                break;
            }
            let hi = match lo.checked_mul(self.x_set_base) {
                Some(h) => h,
                None => u64::MAX,
            };
            count += hi.min(q) - lo;
            // Skip the odd-exponent interval [hi, hi*base).
            match hi.checked_mul(self.x_set_base) {
                Some(next) if next > hi => lo = next,
                _ => break,
            }
        }
        count
    }

    pub fn name(&self) -> String {
        format!("qi(C={},base={})", self.c, self.x_set_base)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation() {
        assert!(QiConfig::new(3, 8).is_err());
        assert!(QiConfig::new(4, 1).is_err());
        assert!(QiConfig::new(4, 8).is_ok());
    }

    #[test]
    fn x_membership_base8() {
        let cfg = QiConfig::with_literal_base(4).unwrap();
        assert!(!cfg.in_x(0));
        // [1, 8) is the first even-exponent window.
        for q in 1..8 {
            assert!(cfg.in_x(q), "q = {q}");
        }
        for q in 8..64 {
            assert!(!cfg.in_x(q), "q = {q}");
        }
        for q in 64..512 {
            assert!(cfg.in_x(q), "q = {q}");
        }
        assert!(!cfg.in_x(512));
        assert!(cfg.in_x(4096));
    }

    #[test]
    fn x_count_matches_membership() {
        let cfg = QiConfig::with_literal_base(4).unwrap();
        let mut count = 0u64;
        for q in 0..100_000u64 {
            assert_eq!(cfg.x_count_below(q), count, "q = {q}");
            if cfg.in_x(q) {
                count += 1;
            }
        }
        // k(2) = |𝒳 ∩ {0, 1}| = 1.
        assert_eq!(cfg.x_count_below(2), 1);
    }

    #[test]
    fn x_membership_base4() {
        let cfg = QiConfig::new(5, 4).unwrap();
        assert!(cfg.in_x(1) && cfg.in_x(3));
        assert!(!cfg.in_x(4) && !cfg.in_x(15));
        assert!(cfg.in_x(16) && cfg.in_x(63));
    }
}

//! The two concrete annulus λ-schedules.
//!
//! Both chains are length-homogeneous with λ depending only on which radial
//! band the distance j falls in:
//!
//! - the drift-oscillation schedule alternates λ (odd bands) and λ/2 (even
//!   bands) over annuli `(N_{s-1}, N_s]` with `N_{-1} = -1` and either
//!   `N_s = 2^{s²}` (literal) or `N_s = N₀·base^s` (scaled);
//! - the CLT-failure schedule lowers λ from 1/4 to λ inside the intervals
//!   `B_s = [½N_s − N_s^e, ½N_s + N_s^e]` with `N_s = 4^{s-1}·N₁`.
//!
//! Schedules are immutable and cheap to query; they are turned into
//! [`LambdaProfile`]s for the DP engines.

use thiserror::Error;

use crate::radial::LambdaProfile;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProfileError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("band containment violated: {0}")]
    BandOverlap(String),
    #[error("band boundary overflow: {0}")]
    Overflow(String),
}

/// Band boundary generator for the drift-oscillation schedule.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NsSequence {
    /// `N_s = 2^{s²}`.
    Literal,
    /// `N_s = n0 · base^s`.
    Scaled { base: u64, n0: u64 },
}

impl NsSequence {
    /// N_s for s ≥ 0; `None` when the value exceeds u64.
    fn value(&self, s: u32) -> Option<u64> {
        match *self {
            NsSequence::Literal => {
                let e = s.checked_mul(s)?;
                if e >= 64 {
                    None
                } else {
                    Some(1u64 << e)
                }
            }
            NsSequence::Scaled { base, n0 } => base.checked_pow(s).and_then(|p| p.checked_mul(n0)),
        }
    }
}

/// Parameters of the no-well-defined-drift construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoDriftSchedule {
    lambda: f64,
    boundaries: NsSequence,
}

/// The band `(lo, hi]` of index `s` containing a given radius; `hi` is
/// `None` when the upper boundary exceeds u64 (the band is still well
/// defined, its boundary is just not representable).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NoDriftBand {
    pub s: u32,
    pub lo_exclusive: i128,
    pub hi_inclusive: Option<u64>,
}

impl NoDriftBand {
    pub fn is_even(&self) -> bool {
        self.s % 2 == 0
    }
}

impl NoDriftSchedule {
    pub fn literal(lambda: f64) -> Result<Self, ProfileError> {
        Self::new(lambda, NsSequence::Literal)
    }

    pub fn scaled(lambda: f64, n0: u64, base: u64) -> Result<Self, ProfileError> {
        if base < 2 || n0 < 1 {
            return Err(ProfileError::InvalidParameter(format!(
                "scaled schedule needs base >= 2 and n0 >= 1, got base={base}, n0={n0}"
            )));
        }
        Self::new(lambda, NsSequence::Scaled { base, n0 })
    }

    fn new(lambda: f64, boundaries: NsSequence) -> Result<Self, ProfileError> {
        if !(lambda > 0.0 && lambda < 0.25) {
            return Err(ProfileError::InvalidParameter(format!(
                "lambda = {lambda} must lie in (0, 1/4)"
            )));
        }
        Ok(NoDriftSchedule { lambda, boundaries })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn boundaries(&self) -> NsSequence {
        self.boundaries
    }

    /// N_s with an explicit overflow error.
    pub fn n_s(&self, s: u32) -> Result<u64, ProfileError> {
        self.boundaries.value(s).ok_or_else(|| {
            ProfileError::Overflow(format!("N_{s} does not fit in 64 bits"))
        })
    }

    /// The unique band containing j ≥ 1. Total: bands partition {1, 2, …}.
    pub fn band_of(&self, j: u64) -> NoDriftBand {
        let mut prev: i128 = -1;
        let mut s = 0u32;
        loop {
            match self.boundaries.value(s) {
                Some(ns) => {
                    if (j as i128) <= ns as i128 {
                        return NoDriftBand { s, lo_exclusive: prev, hi_inclusive: Some(ns) };
                    }
                    prev = ns as i128;
                }
                // Boundary beyond u64: every remaining j lands here.
                None => return NoDriftBand { s, lo_exclusive: prev, hi_inclusive: None },
            }
            s += 1;
        }
    }

    /// λ_j: λ in odd bands, λ/2 in even bands.
    pub fn lambda_at(&self, j: u64) -> f64 {
        if self.band_of(j).is_even() {
            self.lambda / 2.0
        } else {
            self.lambda
        }
    }

    pub fn name(&self) -> String {
        match self.boundaries {
            NsSequence::Literal => format!("no-drift(literal,lambda={})", self.lambda),
            NsSequence::Scaled { base, n0 } => {
                format!("no-drift(scaled,n0={n0},base={base},lambda={})", self.lambda)
            }
        }
    }
}

/// Parameters of the drift-1/2-but-no-CLT construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoCltSchedule {
    lambda: f64,
    n1: u64,
    band_exponent: f64,
}

/// Result of a band query for the CLT-failure schedule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NoCltBand {
    Inside { s: u32, lo: u64, hi: u64 },
    Outside,
}

/// Bands are validated for containment over this many indices; for
/// exponent < 1 the containment inequality is monotone in N_s, so passing
/// at s = 1 already implies all later bands.
const NO_CLT_VALIDATION_BANDS: u32 = 40;

impl NoCltSchedule {
    pub fn new(lambda: f64, n1: u64, band_exponent: f64) -> Result<Self, ProfileError> {
        if !(lambda > 0.0 && lambda < 0.25) {
            return Err(ProfileError::InvalidParameter(format!(
                "lambda = {lambda} must lie in (0, 1/4)"
            )));
        }
        if n1 <= 64 {
            return Err(ProfileError::InvalidParameter(format!(
                "N1 = {n1} must exceed 2^6"
            )));
        }
        if !(band_exponent > 0.0 && band_exponent < 1.0) {
            return Err(ProfileError::InvalidParameter(format!(
                "band exponent {band_exponent} must lie in (0, 1)"
            )));
        }
        let sched = NoCltSchedule { lambda, n1, band_exponent };
        // Containment B_s ⊂ (N_{s-1}, N_s], with N₀ = N₁/4.
        for s in 1..=NO_CLT_VALIDATION_BANDS {
            let ns = sched.n_s_f64(s);
            if !ns.is_finite() {
                break;
            }
            let prev = if s == 1 { ns / 4.0 } else { sched.n_s_f64(s - 1) };
            let half_width = ns.powf(band_exponent);
            let lo = ns / 2.0 - half_width;
            let hi = ns / 2.0 + half_width;
            if lo <= prev || hi > ns {
                return Err(ProfileError::BandOverlap(format!(
                    "B_{s} = [{lo:.1}, {hi:.1}] not contained in (N_{}, N_{s}] = ({prev:.0}, {ns:.0}]",
                    s - 1
                )));
            }
        }
        Ok(sched)
    }

    /// Literal exponent 5/6.
    pub fn with_literal_exponent(lambda: f64, n1: u64) -> Result<Self, ProfileError> {
        Self::new(lambda, n1, 5.0 / 6.0)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn n1(&self) -> u64 {
        self.n1
    }

    pub fn band_exponent(&self) -> f64 {
        self.band_exponent
    }

    /// N_s = 4^{s-1}·N₁ for s ≥ 1.
    pub fn n_s(&self, s: u32) -> Result<u64, ProfileError> {
        if s == 0 {
            return Err(ProfileError::InvalidParameter("band index starts at 1".into()));
        }
        4u64.checked_pow(s - 1)
            .and_then(|p| p.checked_mul(self.n1))
            .ok_or_else(|| ProfileError::Overflow(format!("N_{s} does not fit in 64 bits")))
    }

    fn n_s_f64(&self, s: u32) -> f64 {
        4.0f64.powi(s as i32 - 1) * self.n1 as f64
    }

    /// Band membership of a radius j ≥ 1.
    pub fn band_of(&self, j: u64) -> NoCltBand {
        let jf = j as f64;
        let mut s = 1u32;
        loop {
            let ns = self.n_s_f64(s);
            let half_width = ns.powf(self.band_exponent);
            let lo = ns / 2.0 - half_width;
            let hi = ns / 2.0 + half_width;
            if jf >= lo && jf <= hi {
                return NoCltBand::Inside { s, lo: lo.ceil() as u64, hi: hi.floor() as u64 };
            }
            if jf <= ns {
                // Inside the annulus (N_{s-1}, N_s] but off the band. Any j
                // is eventually caught here: ns grows geometrically.
                return NoCltBand::Outside;
            }
            s += 1;
        }
    }

    /// λ_j: λ inside some B_s, 1/4 otherwise.
    pub fn lambda_at(&self, j: u64) -> f64 {
        match self.band_of(j) {
            NoCltBand::Inside { .. } => self.lambda,
            NoCltBand::Outside => 0.25,
        }
    }

    pub fn name(&self) -> String {
        format!(
            "no-clt(n1={},lambda={},exponent={})",
            self.n1, self.lambda, self.band_exponent
        )
    }
}

/// Tame-eligible profile for the drift-oscillation chain
/// (λ_min = λ/2, λ_max = λ).
pub fn no_drift_profile(schedule: NoDriftSchedule) -> LambdaProfile {
    let lambda = schedule.lambda();
    LambdaProfile::new(schedule.name(), lambda / 2.0, lambda, move |j| {
        schedule.lambda_at(j)
    })
    .expect("schedule bounds are validated")
}

/// Tame-eligible profile for the CLT-failure chain
/// (λ_min = λ, λ_max = 1/4).
pub fn no_clt_profile(schedule: NoCltSchedule) -> LambdaProfile {
    let lambda = schedule.lambda();
    LambdaProfile::new(schedule.name(), lambda, 0.25, move |j| schedule.lambda_at(j))
        .expect("schedule bounds are validated")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literal_boundaries_exact_up_to_s6() {
        let sched = NoDriftSchedule::literal(0.2).unwrap();
        let expected = [1u64, 2, 16, 512, 65536, 1 << 25, 1 << 36];
        for (s, want) in expected.iter().enumerate() {
            assert_eq!(sched.n_s(s as u32).unwrap(), *want);
        }
        assert!(matches!(sched.n_s(8), Err(ProfileError::Overflow(_))));
    }

    #[test]
    fn no_drift_band_examples() {
        let sched = NoDriftSchedule::literal(0.2).unwrap();
        // j = 1 sits in (N_{-1}, N_0] = (-1, 1], s = 0 (even) → λ/2.
        let b = sched.band_of(1);
        assert_eq!((b.s, b.lo_exclusive, b.hi_inclusive), (0, -1, Some(1)));
        assert_eq!(sched.lambda_at(1), 0.1);
        // j = 3 sits in (2, 16], s = 2.
        let b = sched.band_of(3);
        assert_eq!((b.s, b.lo_exclusive, b.hi_inclusive), (2, 2, Some(16)));
        // s = 2 even: λ/2 throughout (2^1, 2^4].
        for j in 3..=16 {
            assert_eq!(sched.lambda_at(j), 0.1);
        }
        // s = 3 odd: λ.
        assert_eq!(sched.lambda_at(17), 0.2);
    }

    #[test]
    fn no_drift_bands_partition() {
        for sched in [
            NoDriftSchedule::literal(0.2).unwrap(),
            NoDriftSchedule::scaled(0.2, 16, 4).unwrap(),
        ] {
            let mut prev_band = sched.band_of(1);
            for j in 2..5000u64 {
                let b = sched.band_of(j);
                // Same band or the immediately following one.
                assert!(
                    b.s == prev_band.s || b.s == prev_band.s + 1,
                    "band index jumped at j = {j}"
                );
                if b.s == prev_band.s + 1 {
                    assert_eq!(prev_band.hi_inclusive.unwrap(), j - 1);
                    assert_eq!(b.lo_exclusive, (j - 1) as i128);
                }
                prev_band = b;
            }
        }
    }

    #[test]
    fn no_drift_rejects_bad_lambda() {
        assert!(matches!(
            NoDriftSchedule::literal(0.3),
            Err(ProfileError::InvalidParameter(_))
        ));
        assert!(NoDriftSchedule::literal(0.25).is_err());
        assert!(NoDriftSchedule::literal(0.0).is_err());
        assert!(NoDriftSchedule::scaled(0.2, 16, 1).is_err());
    }

    #[test]
    fn no_drift_profile_is_tame_eligible() {
        let prof = no_drift_profile(NoDriftSchedule::literal(0.2).unwrap());
        assert!(prof.tame_eligible());
        assert_eq!(prof.lambda_min(), 0.1);
        assert_eq!(prof.lambda_max(), 0.2);
    }

    #[test]
    fn no_clt_band_membership() {
        let sched = NoCltSchedule::with_literal_exponent(0.05, 8192).unwrap();
        // Center of B₁ is ½N₁ = 4096.
        assert_eq!(sched.lambda_at(4096), 0.05);
        match sched.band_of(4096) {
            NoCltBand::Inside { s, lo, hi } => {
                assert_eq!(s, 1);
                assert!(lo <= 4096 && 4096 <= hi);
                // Spec-level sanity: B₁ ≈ [2272, 5920].
                assert!((2260..=2290).contains(&lo), "lo = {lo}");
                assert!((5910..=5930).contains(&hi), "hi = {hi}");
            }
            NoCltBand::Outside => panic!("center must be inside"),
        }
        // j = 1 is below every band.
        assert_eq!(sched.band_of(1), NoCltBand::Outside);
        assert_eq!(sched.lambda_at(1), 0.25);
        // Far from all bands.
        assert_eq!(sched.lambda_at(8000), 0.25);
    }

    #[test]
    fn no_clt_bands_disjoint_and_contained() {
        let sched = NoCltSchedule::with_literal_exponent(0.05, 8192).unwrap();
        let mut prev_hi = 0u64;
        for s in 1..=8 {
            let ns = sched.n_s(s).unwrap();
            let prev = if s == 1 { ns / 4 } else { sched.n_s(s - 1).unwrap() };
            let (lo, hi) = match sched.band_of(ns / 2) {
                NoCltBand::Inside { s: got, lo, hi } => {
                    assert_eq!(got, s);
                    (lo, hi)
                }
                NoCltBand::Outside => panic!("band center escaped band {s}"),
            };
            assert!(lo > prev && hi <= ns);
            assert!(lo > prev_hi, "bands must be pairwise disjoint");
            prev_hi = hi;
        }
    }

    #[test]
    fn no_clt_rejections() {
        // 128^{5/6} ≈ 57 > 128/4 = 32: containment fails.
        assert!(matches!(
            NoCltSchedule::with_literal_exponent(0.05, 128),
            Err(ProfileError::BandOverlap(_))
        ));
        assert!(matches!(
            NoCltSchedule::with_literal_exponent(0.05, 64),
            Err(ProfileError::InvalidParameter(_))
        ));
        assert!(NoCltSchedule::with_literal_exponent(0.3, 8192).is_err());
        assert!(NoCltSchedule::new(0.05, 8192, 1.0).is_err());
    }

    #[test]
    fn profiles_are_pure() {
        let prof = no_clt_profile(NoCltSchedule::with_literal_exponent(0.05, 8192).unwrap());
        for j in [1u64, 100, 4096, 16384, 123456] {
            assert_eq!(prof.lambda_at(j), prof.lambda_at(j));
        }
        assert!(prof.tame_eligible());
    }
}

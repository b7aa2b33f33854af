//! Drift-series computation, oscillation detection at schedule checkpoints,
//! and CLT diagnostics against the exact DP law.

use serde::Serialize;
use statrs::distribution::ContinuousCDF;
use thiserror::Error;

use crate::budget::Budget;
use crate::qi::{self, QiConfig, QiError};
use crate::radial::{LambdaProfile, RadialEngine, RadialError};

#[derive(Debug, Error)]
pub enum DiagnosticsError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("checkpoint n = {0} not present in the series")]
    MissingCheckpoint(u64),
    #[error(transparent)]
    Radial(#[from] RadialError),
    #[error(transparent)]
    Qi(#[from] QiError),
}

/// What the drift functional is evaluated on: a length-homogeneous chain,
/// or the push-forward of the simple random walk by the quasi-isometry.
#[derive(Debug, Clone)]
pub enum DriftSource {
    Profile(LambdaProfile),
    PushForward(QiConfig),
}

impl DriftSource {
    pub fn name(&self) -> String {
        match self {
            DriftSource::Profile(p) => p.name().to_string(),
            DriftSource::PushForward(cfg) => format!("pushforward-{}", cfg.name()),
        }
    }
}

/// A requested evaluation point with a human-readable tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: u64,
    pub tag: String,
}

impl Checkpoint {
    pub fn new(n: u64, tag: impl Into<String>) -> Self {
        Checkpoint { n, tag: tag.into() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DriftPoint {
    pub n: u64,
    pub expectation: f64,
    pub normalized: f64,
    pub tag: Option<String>,
}

/// The sequence (n, E_n/n) with checkpoint annotations.
#[derive(Debug, Clone, Serialize)]
pub struct DriftSeries {
    pub source: String,
    pub horizon: u64,
    pub points: Vec<DriftPoint>,
}

impl DriftSeries {
    pub fn point_at(&self, n: u64) -> Option<&DriftPoint> {
        self.points.iter().find(|p| p.n == n)
    }

    pub fn checkpoints(&self) -> impl Iterator<Item = &DriftPoint> {
        self.points.iter().filter(|p| p.tag.is_some())
    }
}

/// Exact E_n/n at every checkpoint, and optionally on a regular grid
/// (`emit_every`), in one DP sweep to the horizon.
pub fn drift_series(
    source: &DriftSource,
    horizon: u64,
    checkpoints: &[Checkpoint],
    emit_every: Option<u64>,
    budget: &Budget,
) -> Result<DriftSeries, DiagnosticsError> {
    if let Some(0) = emit_every {
        return Err(DiagnosticsError::InvalidParameter("emit_every must be positive".into()));
    }
    if let Some(cp) = checkpoints.iter().find(|cp| cp.n > horizon) {
        return Err(DiagnosticsError::InvalidParameter(format!(
            "checkpoint {} beyond horizon {horizon}",
            cp.n
        )));
    }
    // Target times, ascending, deduplicated; checkpoints keep their tags.
    let mut targets: Vec<(u64, Option<String>)> = Vec::new();
    if let Some(k) = emit_every {
        targets.extend((0..=horizon / k).map(|m| (m * k, None)).filter(|(n, _)| *n >= 1));
    }
    for cp in checkpoints {
        targets.push((cp.n, Some(cp.tag.clone())));
    }
    targets.sort_by_key(|(n, tag)| (*n, tag.is_none()));
    targets.dedup_by(|later, first| later.0 == first.0 && {
        // Prefer the tagged copy whichever order they arrived in.
        if first.1.is_none() {
            first.1 = later.1.take();
        }
        true
    });

    let (profile, series) = match source {
        DriftSource::Profile(p) => (p.clone(), None),
        DriftSource::PushForward(cfg) => (
            LambdaProfile::constant(0.25).expect("1/4 is a valid lambda"),
            Some(qi::a_series(horizon, cfg, budget)?),
        ),
    };
    let mut engine = RadialEngine::new(profile, budget);
    let mut points = Vec::with_capacity(targets.len());
    for (n, tag) in targets {
        engine.advance_to(n)?;
        let expectation = match &series {
            None => engine.expectation_at(n),
            Some(a) => qi::series::pushforward_expectation_from_engine(&engine, a),
        };
        let normalized = if n == 0 { 0.0 } else { expectation / n as f64 };
        points.push(DriftPoint { n, expectation, normalized, tag });
    }
    Ok(DriftSeries { source: source.name(), horizon, points })
}

/// The oscillation statistic extracted from a drift series.
#[derive(Debug, Clone, Serialize)]
pub struct OscillationReport {
    /// min over the high checkpoints of E_n/n.
    pub high_min: f64,
    /// max over the low checkpoints of E_n/n.
    pub low_max: f64,
    /// high_min − low_max; a positive gap is finite-horizon evidence that
    /// limsup > liminf.
    pub gap: f64,
}

/// Compares normalized drift across two checkpoint families. For the
/// drift-oscillation schedule the odd-band checkpoints (stronger backward
/// pull) are the low family and the even-band checkpoints the high family;
/// for the push-forward it is the stretch-sparse vs stretch-dense horizons.
pub fn oscillation_report(
    series: &DriftSeries,
    low_checkpoints: &[u64],
    high_checkpoints: &[u64],
) -> Result<OscillationReport, DiagnosticsError> {
    if low_checkpoints.is_empty() || high_checkpoints.is_empty() {
        return Err(DiagnosticsError::InvalidParameter(
            "both checkpoint families must be nonempty".into(),
        ));
    }
    let lookup = |n: u64| {
        series
            .point_at(n)
            .map(|p| p.normalized)
            .ok_or(DiagnosticsError::MissingCheckpoint(n))
    };
    let mut low_max = f64::NEG_INFINITY;
    for &n in low_checkpoints {
        low_max = low_max.max(lookup(n)?);
    }
    let mut high_min = f64::INFINITY;
    for &n in high_checkpoints {
        high_min = high_min.min(lookup(n)?);
    }
    Ok(OscillationReport { high_min, low_max, gap: high_min - low_max })
}

/// CLT statistics of the exact law at one time.
#[derive(Debug, Clone, Serialize)]
pub struct CltDiagnostics {
    pub n: u64,
    /// E[X_n] from the DP.
    pub mean: f64,
    /// Normalization scale σ (the window is ℓn ± z·σ·√n).
    pub sigma: f64,
    pub ell: f64,
    pub z: f64,
    /// P[|X_n − ℓn| ≤ z·σ·√n].
    pub interval_mass: f64,
    /// sup-norm distance between the law of (X_n − ℓn)/(σ√n) and the
    /// standard Gaussian CDF.
    pub ks_distance: f64,
}

/// Evaluates the CLT window mass and the Kolmogorov–Smirnov distance of the
/// normalized law against the standard Gaussian.
pub fn clt_diagnostics(
    prof: &LambdaProfile,
    n: u64,
    ell: f64,
    sigma: f64,
    z: f64,
    budget: &Budget,
) -> Result<CltDiagnostics, DiagnosticsError> {
    if sigma <= 0.0 {
        return Err(DiagnosticsError::InvalidParameter(format!(
            "sigma = {sigma} must be positive"
        )));
    }
    if z < 0.0 {
        return Err(DiagnosticsError::InvalidParameter(format!("z = {z} must be >= 0")));
    }
    if n == 0 {
        return Err(DiagnosticsError::InvalidParameter("n must be >= 1".into()));
    }
    let mut engine = RadialEngine::new(prof.clone(), budget);
    engine.advance_to(n)?;
    let mean = engine.expectation_at(n);
    let scale = sigma * (n as f64).sqrt();
    let center = ell * n as f64;

    let mut interval_mass = 0.0;
    for (j, m) in engine.window_iter() {
        if (j as f64 - center).abs() <= z * scale {
            interval_mass += m;
        }
    }

    let normal = statrs::distribution::Normal::standard();
    let mut cum = 0.0;
    let mut ks = 0.0f64;
    for (j, m) in engine.window_iter() {
        if m == 0.0 {
            continue;
        }
        let x = (j as f64 - center) / scale;
        let gauss = normal.cdf(x);
        ks = ks.max((cum - gauss).abs());
        cum += m;
        ks = ks.max((cum - gauss).abs());
    }
    // Beyond the last atom the empirical CDF sits at the total mass.
    ks = ks.max((1.0 - cum).abs());

    Ok(CltDiagnostics { n, mean, sigma, ell, z, interval_mass, ks_distance: ks })
}

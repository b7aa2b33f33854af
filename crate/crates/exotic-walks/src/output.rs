//! Deterministic artifact emission.
//!
//! All CSV is comma-separated with a header row, LF line endings, and
//! doubles printed with 17 significant digits, so byte-identical reruns are
//! the expected behavior, not an accident. JSON uses serde structs (fixed
//! field order) and sorted maps. Every file-producing run can be described
//! by a [`RunManifest`] carrying the full parameter set and the SHA-256 of
//! each output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::diagnostics::{CltDiagnostics, DriftSeries, OscillationReport};
use crate::qi::ASeries;
use crate::radial::RadialDistribution;
use crate::rational::ExactDistribution;

/// 17 significant digits, scientific: enough to round-trip any f64.
pub fn fmt_double(x: f64) -> String {
    format!("{x:.16e}")
}

/// `j,mass` over the parity-compatible support 0..=n.
pub fn dist_csv(d: &RadialDistribution) -> String {
    let n = d.time();
    let mut out = String::from("j,mass\n");
    for j in ((n % 2)..=n).step_by(2) {
        let _ = writeln!(out, "{j},{}", fmt_double(d.mass(j)));
    }
    out
}

/// `j,mass` with exact rational masses `num/den`.
pub fn dist_exact_csv(d: &ExactDistribution) -> String {
    let n = d.time;
    let mut out = String::from("j,mass\n");
    for j in (((n % 2) as usize)..=(n as usize)).step_by(2) {
        let q = &d.mass[j];
        let _ = writeln!(out, "{j},{}/{}", q.numer(), q.denom());
    }
    out
}

/// `n,expectation,normalized,checkpoint_tag`.
pub fn drift_csv(series: &DriftSeries) -> String {
    let mut out = String::from("n,expectation,normalized,checkpoint_tag\n");
    for p in &series.points {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.n,
            fmt_double(p.expectation),
            fmt_double(p.normalized),
            p.tag.as_deref().unwrap_or("")
        );
    }
    out
}

/// `i,A_exact_num,A_exact_den,A_double`.
pub fn a_series_csv(series: &ASeries) -> String {
    let mut out = String::from("i,A_exact_num,A_exact_den,A_double\n");
    for i in 0..=series.horizon() {
        let q = series.value(i);
        let _ = writeln!(
            out,
            "{i},{},{},{}",
            q.numer(),
            q.denom(),
            fmt_double(series.value_f64(i))
        );
    }
    out
}

/// JSON summary of a drift run: the series checkpoints plus the oscillation
/// gap when one was computed.
#[derive(Debug, Serialize)]
pub struct DriftSummary {
    pub source: String,
    pub horizon: u64,
    pub gap: Option<f64>,
    pub low_max: Option<f64>,
    pub high_min: Option<f64>,
    pub checkpoints: Vec<CheckpointSummary>,
}

#[derive(Debug, Serialize)]
pub struct CheckpointSummary {
    pub n: u64,
    pub tag: String,
    pub expectation: f64,
    pub normalized: f64,
}

impl DriftSummary {
    pub fn new(series: &DriftSeries, oscillation: Option<&OscillationReport>) -> Self {
        DriftSummary {
            source: series.source.clone(),
            horizon: series.horizon,
            gap: oscillation.map(|o| o.gap),
            low_max: oscillation.map(|o| o.low_max),
            high_min: oscillation.map(|o| o.high_min),
            checkpoints: series
                .checkpoints()
                .map(|p| CheckpointSummary {
                    n: p.n,
                    tag: p.tag.clone().unwrap_or_default(),
                    expectation: p.expectation,
                    normalized: p.normalized,
                })
                .collect(),
        }
    }
}

/// JSON summary of a CLT run over a σ grid.
#[derive(Debug, Serialize)]
pub struct CltSummary {
    pub profile: String,
    pub n: u64,
    pub ell: f64,
    pub z: f64,
    pub ks: Vec<CltDiagnostics>,
}

/// Description of one produced file.
#[derive(Debug, Clone, Serialize)]
pub struct OutputDigest {
    pub path: String,
    pub sha256: String,
    pub bytes: u64,
}

/// Reproducibility record written next to every file artifact.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub subcommand: String,
    pub parameters: BTreeMap<String, serde_json::Value>,
    pub seed: Option<u64>,
    pub arithmetic: String,
    pub outputs: Vec<OutputDigest>,
}

impl RunManifest {
    pub fn new(subcommand: impl Into<String>) -> Self {
        RunManifest {
            tool: "exotic-walks".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            subcommand: subcommand.into(),
            parameters: BTreeMap::new(),
            seed: None,
            arithmetic: "double".into(),
            outputs: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.parameters.insert(
            key.to_string(),
            serde_json::to_value(value).expect("parameter serializes"),
        );
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn arithmetic(mut self, mode: &str) -> Self {
        self.arithmetic = mode.into();
        self
    }

    pub fn record_output(&mut self, path: &str, contents: &[u8]) {
        let mut hasher = Sha256::new();
        hasher.update(contents);
        self.outputs.push(OutputDigest {
            path: path.to_string(),
            sha256: format!("{:x}", hasher.finalize()),
            bytes: contents.len() as u64,
        });
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::budget::Budget;
    use crate::radial::{distribution_at, LambdaProfile};

    #[test]
    fn double_formatting_has_17_digits() {
        assert_eq!(fmt_double(0.25), "2.5000000000000000e-1");
        assert_eq!(fmt_double(1.0), "1.0000000000000000e0");
        let x = 0.1 + 0.2;
        let parsed: f64 = fmt_double(x).parse().unwrap();
        assert_eq!(parsed, x, "formatting must round-trip doubles");
    }

    #[test]
    fn dist_csv_two_step() {
        let prof = LambdaProfile::constant(0.25).unwrap();
        let d = distribution_at(2, &prof, &Budget::default()).unwrap();
        let csv = dist_csv(&d);
        assert_eq!(
            csv,
            "j,mass\n0,2.5000000000000000e-1\n2,7.5000000000000000e-1\n"
        );
    }

    #[test]
    fn dist_csv_time_zero() {
        let prof = LambdaProfile::constant(0.25).unwrap();
        let d = distribution_at(0, &prof, &Budget::default()).unwrap();
        assert_eq!(dist_csv(&d), "j,mass\n0,1.0000000000000000e0\n");
    }

    #[test]
    fn manifest_round_trip_is_stable() {
        let mut m = RunManifest::new("dist")
            .param("n", 2)
            .param("lambda", 0.25)
            .seed(7);
        m.record_output("out.csv", b"j,mass\n");
        let a = m.to_json();
        let b = m.to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"sha256\""));
        assert!(a.contains("\"subcommand\": \"dist\""));
    }
}

//! Command-line front end.
//!
//! Subcommands: `dist`, `drift`, `tame`, `qi {map|verify|dx|a-series|law-check}`,
//! `clt`. Every file-producing invocation also writes a
//! `<out>.manifest.json` with the full parameter set and output digests;
//! re-running a manifest's command line reproduces the files byte for byte.
//!
//! Exit codes: 0 success, 2 usage or invalid parameters, 3 budget/capacity
//! exceeded, 4 a verified invariant failed (that is a finding, not a usage
//! error).

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Budget;
use crate::diagnostics::{self, Checkpoint, DriftSource};
use crate::output::{self, RunManifest};
use crate::profiles::{self, NoCltSchedule, NoDriftSchedule, ProfileError};
use crate::qi::{self, QiConfig, QiError};
use crate::radial::{self, LambdaProfile, RadialError};
use crate::rational;
use crate::tameness::{self, TamenessError};
use crate::word::{WordAddress, WordError};

/// Fixed default for every sampler.
pub const DEFAULT_SEED: u64 = 424242;

const EXIT_USAGE: i32 = 2;
const EXIT_BUDGET: i32 = 3;
const EXIT_INVARIANT: i32 = 4;

#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: msg.into() }
    }

    fn invariant(msg: impl Into<String>) -> Self {
        Failure { code: EXIT_INVARIANT, message: msg.into() }
    }

    fn io(err: std::io::Error, path: &Path) -> Self {
        Failure { code: 1, message: format!("io error at {}: {err}", path.display()) }
    }
}

impl From<RadialError> for Failure {
    fn from(e: RadialError) -> Self {
        let code = match &e {
            RadialError::BudgetExceeded { .. } => EXIT_BUDGET,
            RadialError::InvalidParameter(_) => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<ProfileError> for Failure {
    fn from(e: ProfileError) -> Self {
        Failure { code: EXIT_USAGE, message: e.to_string() }
    }
}

impl From<WordError> for Failure {
    fn from(e: WordError) -> Self {
        let code = match &e {
            WordError::CapacityExceeded { .. } => EXIT_BUDGET,
            WordError::InvalidAddress(_) => EXIT_USAGE,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<QiError> for Failure {
    fn from(e: QiError) -> Self {
        match e {
            QiError::InvalidParameter(_) | QiError::InvalidRelativeWord(_) => {
                Failure { code: EXIT_USAGE, message: e.to_string() }
            }
            QiError::BudgetExceeded { .. } => Failure { code: EXIT_BUDGET, message: e.to_string() },
            QiError::Word(w) => w.into(),
            QiError::Radial(r) => r.into(),
        }
    }
}

impl From<TamenessError> for Failure {
    fn from(e: TamenessError) -> Self {
        match e {
            TamenessError::InvalidParameter(_) => Failure::usage(e.to_string()),
            TamenessError::SymmetryViolation(_) => Failure::invariant(e.to_string()),
            TamenessError::Radial(r) => r.into(),
            TamenessError::Word(w) => w.into(),
        }
    }
}

impl From<diagnostics::DiagnosticsError> for Failure {
    fn from(e: diagnostics::DiagnosticsError) -> Self {
        use diagnostics::DiagnosticsError::*;
        match e {
            InvalidParameter(_) | MissingCheckpoint(_) => Failure::usage(e.to_string()),
            Radial(r) => r.into(),
            Qi(q) => q.into(),
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "exotic-walks",
    version,
    about = "Exact distribution engines and drift/CLT diagnostics for nearest-neighbor chains on the free group"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Exact law of the distance chain at one time, as CSV.
    Dist(DistArgs),
    /// Drift series with checkpoint annotations and oscillation gap.
    Drift(DriftArgs),
    /// Tameness report (bounded jumps, decay fit, irreducibility, transience).
    Tame(TameArgs),
    /// Quasi-isometry tools.
    Qi(QiArgs),
    /// CLT window mass and KS distance over a sigma grid.
    Clt(CltArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ProfileKind {
    Const,
    NoDrift,
    NoClt,
}

/// Profile selection shared by dist/drift/tame/clt.
#[derive(Args, Debug, Clone)]
struct ProfileArgs {
    /// Which λ-schedule drives the chain.
    #[arg(long, value_enum)]
    profile: ProfileKind,
    /// λ (defaults: const 0.25, no-drift 0.2, no-clt 0.05).
    #[arg(long)]
    lambda: Option<f64>,
    /// no-drift only: geometric boundaries N_s = n0·schedule-base^s instead
    /// of the literal N_s = 2^(s²).
    #[arg(long)]
    scaled: bool,
    /// no-drift scaled: N_0.
    #[arg(long, default_value_t = 16)]
    n0: u64,
    /// no-drift scaled: boundary growth base.
    #[arg(long = "schedule-base", default_value_t = 4)]
    schedule_base: u64,
    /// no-clt: N_1 (> 64).
    #[arg(long, default_value_t = 8192)]
    n1: u64,
    /// no-clt: band half-width exponent (literal 5/6).
    #[arg(long, default_value_t = 5.0 / 6.0)]
    exponent: f64,
}

impl ProfileArgs {
    fn lambda_or_default(&self) -> f64 {
        self.lambda.unwrap_or(match self.profile {
            ProfileKind::Const => 0.25,
            ProfileKind::NoDrift => 0.2,
            ProfileKind::NoClt => 0.05,
        })
    }

    fn build(&self) -> Result<LambdaProfile, Failure> {
        let lambda = self.lambda_or_default();
        Ok(match self.profile {
            ProfileKind::Const => LambdaProfile::constant(lambda)?,
            ProfileKind::NoDrift => {
                let sched = if self.scaled {
                    NoDriftSchedule::scaled(lambda, self.n0, self.schedule_base)?
                } else {
                    NoDriftSchedule::literal(lambda)?
                };
                profiles::no_drift_profile(sched)
            }
            ProfileKind::NoClt => {
                profiles::no_clt_profile(NoCltSchedule::new(lambda, self.n1, self.exponent)?)
            }
        })
    }

    fn describe(&self, manifest: RunManifest) -> RunManifest {
        let mut m = manifest
            .param("profile", format!("{:?}", self.profile).to_lowercase())
            .param("lambda", self.lambda_or_default());
        match self.profile {
            ProfileKind::NoDrift if self.scaled => {
                m = m
                    .param("schedule", "scaled")
                    .param("n0", self.n0)
                    .param("schedule_base", self.schedule_base);
            }
            ProfileKind::NoDrift => {
                m = m.param("schedule", "literal");
            }
            ProfileKind::NoClt => {
                m = m.param("n1", self.n1).param("exponent", self.exponent);
            }
            ProfileKind::Const => {}
        }
        m
    }
}

#[derive(Args, Debug)]
struct DistArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Time at which the law is computed.
    #[arg(long)]
    n: u64,
    /// Exact rational arithmetic (oracle mode, small n only).
    #[arg(long)]
    exact: bool,
    /// CSV destination; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct DriftArgs {
    /// Evaluate the push-forward of the simple random walk instead of a
    /// λ-profile chain.
    #[arg(long, conflicts_with = "profile")]
    qi: bool,
    #[arg(long, value_enum, required_unless_present = "qi")]
    profile: Option<ProfileKind>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    scaled: bool,
    #[arg(long, default_value_t = 16)]
    n0: u64,
    #[arg(long = "schedule-base", default_value_t = 4)]
    schedule_base: u64,
    #[arg(long, default_value_t = 8192)]
    n1: u64,
    #[arg(long, default_value_t = 5.0 / 6.0)]
    exponent: f64,
    /// Quasi-isometry block depth (with --qi).
    #[arg(long = "C", default_value_t = 4)]
    c: u32,
    /// Quasi-isometry x-set base (with --qi).
    #[arg(long, default_value_t = 8)]
    base: u64,
    #[arg(long)]
    horizon: u64,
    /// Comma-separated checkpoint times, or "auto" for the schedule's own.
    #[arg(long, default_value = "auto")]
    checkpoints: String,
    /// Low-family checkpoints for the oscillation gap (auto-derived when
    /// checkpoints=auto).
    #[arg(long)]
    low: Option<String>,
    /// High-family checkpoints for the oscillation gap.
    #[arg(long)]
    high: Option<String>,
    /// Also emit every k-th time step.
    #[arg(long)]
    emit_every: Option<u64>,
    /// CSV destination (summary JSON lands next to it); stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TameArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    /// Horizon for the decay fit and the transience partial sum.
    #[arg(long, default_value_t = 200)]
    horizon: u64,
    /// Depth cap for irreducibility targets.
    #[arg(long, default_value_t = 4)]
    words: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QiArgs {
    #[command(subcommand)]
    cmd: QiCmd,
}

#[derive(Subcommand, Debug)]
enum QiCmd {
    /// Map a word. By default the word is a relative block word sent
    /// through the stretch map; with --global it is a tree address sent
    /// through f.
    Map(QiMapArgs),
    /// Distortion and bijectivity verification (ball and/or sampled pairs).
    Verify(QiVerifyArgs),
    /// The exact block displacement D_X.
    Dx(QiDxArgs),
    /// The exact sphere-average series A(i), as CSV.
    ASeries(QiASeriesArgs),
    /// Exhaustive comparison of the push-forward chain law with the law of
    /// f(Z_n).
    LawCheck(QiLawCheckArgs),
}

#[derive(Args, Debug)]
struct QiMapArgs {
    #[arg(long = "C", default_value_t = 4)]
    c: u32,
    #[arg(long, default_value_t = 8)]
    base: u64,
    /// The word to map (letters a,b,c,d; empty for the root).
    #[arg(long)]
    word: String,
    /// Treat the word as a full tree address and apply f (default: treat it
    /// as a relative word inside a stretched block).
    #[arg(long)]
    global: bool,
    /// Apply the inverse of f instead (implies --global).
    #[arg(long)]
    invert: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QiVerifyArgs {
    #[arg(long = "C", default_value_t = 4)]
    c: u32,
    #[arg(long, default_value_t = 8)]
    base: u64,
    /// Verify all pairs of the ball of this radius (exact).
    #[arg(long)]
    ball: Option<u32>,
    /// Also check this many seeded random pairs.
    #[arg(long)]
    pairs: Option<u64>,
    /// Depth cap for sampled pairs.
    #[arg(long, default_value_t = 1000)]
    depth: u32,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QiDxArgs {
    #[arg(long = "C", default_value_t = 4)]
    c: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QiASeriesArgs {
    #[arg(long = "C", default_value_t = 4)]
    c: u32,
    #[arg(long, default_value_t = 8)]
    base: u64,
    #[arg(long)]
    horizon: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct QiLawCheckArgs {
    #[arg(long = "C", default_value_t = 4)]
    c: u32,
    #[arg(long, default_value_t = 8)]
    base: u64,
    /// Steps to enumerate (4^n paths).
    #[arg(long, default_value_t = 6)]
    n: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct CltArgs {
    #[command(flatten)]
    profile: ProfileArgs,
    #[arg(long)]
    n: u64,
    /// Centering slope ℓ.
    #[arg(long, default_value_t = 0.5)]
    ell: f64,
    /// Comma-separated grid of σ² values.
    #[arg(long, default_value = "0.25,0.5,0.75,1.0,2.0")]
    sigma2: String,
    #[arg(long, default_value_t = 2.0)]
    z: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Parses argv and runs; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap exits 0 for --help/--version, 2 otherwise.
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let budget = Budget::from_env();
    let result = match cli.cmd {
        Cmd::Dist(args) => cmd_dist(args, &budget),
        Cmd::Drift(args) => cmd_drift(args, &budget),
        Cmd::Tame(args) => cmd_tame(args, &budget),
        Cmd::Qi(args) => match args.cmd {
            QiCmd::Map(a) => cmd_qi_map(a),
            QiCmd::Verify(a) => cmd_qi_verify(a, &budget),
            QiCmd::Dx(a) => cmd_qi_dx(a),
            QiCmd::ASeries(a) => cmd_qi_a_series(a, &budget),
            QiCmd::LawCheck(a) => cmd_qi_law_check(a, &budget),
        },
        Cmd::Clt(args) => cmd_clt(args, &budget),
    };
    match result {
        Ok(()) => 0,
        Err(f) => {
            eprintln!("error: {}", f.message);
            f.code
        }
    }
}

/// Writes the primary artifact (file + manifest, or stdout) and finishes
/// the manifest when a path was given.
fn emit(out: &Option<PathBuf>, contents: &str, mut manifest: RunManifest) -> Result<(), Failure> {
    match out {
        Some(path) => {
            std::fs::write(path, contents).map_err(|e| Failure::io(e, path))?;
            manifest.record_output(&path.display().to_string(), contents.as_bytes());
            let mpath = manifest_path(path);
            std::fs::write(&mpath, manifest.to_json()).map_err(|e| Failure::io(e, &mpath))?;
        }
        None => print!("{contents}"),
    }
    Ok(())
}

fn manifest_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".manifest.json");
    out.with_file_name(name)
}

fn parse_u64_list(s: &str, what: &str) -> Result<Vec<u64>, Failure> {
    s.split(',')
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<u64>()
                .map_err(|_| Failure::usage(format!("cannot parse {what} entry '{p}'")))
        })
        .collect()
}

fn parse_f64_list(s: &str, what: &str) -> Result<Vec<f64>, Failure> {
    s.split(',')
        .map(|p| p.trim())
        .filter(|p| !p.is_empty())
        .map(|p| {
            p.parse::<f64>()
                .map_err(|_| Failure::usage(format!("cannot parse {what} entry '{p}'")))
        })
        .collect()
}

fn cmd_dist(args: DistArgs, budget: &Budget) -> Result<(), Failure> {
    let prof = args.profile.build()?;
    let manifest = args
        .profile
        .describe(RunManifest::new("dist"))
        .param("n", args.n)
        .arithmetic(if args.exact { "rational" } else { "double" });
    let csv = if args.exact {
        let d = rational::distribution_at_exact(args.n, &prof)?;
        output::dist_exact_csv(&d)
    } else {
        let d = radial::distribution_at(args.n, &prof, budget)?;
        output::dist_csv(&d)
    };
    emit(&args.out, &csv, manifest)
}

fn cmd_drift(args: DriftArgs, budget: &Budget) -> Result<(), Failure> {
    let (source, auto): (DriftSource, Option<(Vec<Checkpoint>, Vec<u64>, Vec<u64>)>) = if args.qi {
        let cfg = QiConfig::new(args.c, args.base)?;
        let mut cps = Vec::new();
        let mut low = Vec::new();
        let mut high = Vec::new();
        let mut e = 1u32;
        loop {
            let Some(p) = args.base.checked_pow(e) else { break };
            let Some(n) = p.checked_mul(2 * args.c as u64) else { break };
            if n > args.horizon {
                break;
            }
            cps.push(Checkpoint::new(n, format!("2C*base^{e}")));
            // Odd exponents end stretch-dense prefixes: the high family.
            if e % 2 == 1 {
                high.push(n);
            } else {
                low.push(n);
            }
            e += 1;
        }
        (DriftSource::PushForward(cfg), Some((cps, low, high)))
    } else {
        let pa = ProfileArgs {
            profile: args.profile.expect("clap enforces --profile without --qi"),
            lambda: args.lambda,
            scaled: args.scaled,
            n0: args.n0,
            schedule_base: args.schedule_base,
            n1: args.n1,
            exponent: args.exponent,
        };
        let prof = pa.build()?;
        let auto = match pa.profile {
            ProfileKind::NoDrift => {
                let sched = if pa.scaled {
                    NoDriftSchedule::scaled(pa.lambda_or_default(), pa.n0, pa.schedule_base)?
                } else {
                    NoDriftSchedule::literal(pa.lambda_or_default())?
                };
                let mut cps = Vec::new();
                let mut low = Vec::new();
                let mut high = Vec::new();
                for s in 2u32.. {
                    match sched.n_s(s) {
                        Ok(n) if n <= args.horizon => {
                            cps.push(Checkpoint::new(n, format!("N{s}")));
                            // Odd bands pull back harder: the low family.
                            if s % 2 == 1 {
                                low.push(n);
                            } else {
                                high.push(n);
                            }
                        }
                        _ => break,
                    }
                }
                Some((cps, low, high))
            }
            ProfileKind::NoClt => {
                let sched = NoCltSchedule::new(pa.lambda_or_default(), pa.n1, pa.exponent)?;
                let mut cps = Vec::new();
                for s in 1u32.. {
                    match sched.n_s(s) {
                        Ok(n) if n <= args.horizon => {
                            cps.push(Checkpoint::new(n, format!("N{s}")));
                            let post = n + (n as f64).powf(0.75).floor() as u64;
                            if post <= args.horizon {
                                cps.push(Checkpoint::new(post, format!("N{s}+N{s}^(3/4)")));
                            }
                        }
                        _ => break,
                    }
                }
                Some((cps, Vec::new(), Vec::new()))
            }
            ProfileKind::Const => {
                Some((vec![Checkpoint::new(args.horizon, "final")], Vec::new(), Vec::new()))
            }
        };
        (DriftSource::Profile(prof), auto)
    };

    let (checkpoints, mut low, mut high) = if args.checkpoints.trim() == "auto" {
        auto.unwrap_or((Vec::new(), Vec::new(), Vec::new()))
    } else {
        let ns = parse_u64_list(&args.checkpoints, "checkpoint")?;
        (
            ns.iter().map(|&n| Checkpoint::new(n, format!("n{n}"))).collect(),
            Vec::new(),
            Vec::new(),
        )
    };
    if let Some(s) = &args.low {
        low = parse_u64_list(s, "low checkpoint")?;
    }
    if let Some(s) = &args.high {
        high = parse_u64_list(s, "high checkpoint")?;
    }
    let mut checkpoints = checkpoints;
    for &n in low.iter().chain(high.iter()) {
        if !checkpoints.iter().any(|cp| cp.n == n) {
            checkpoints.push(Checkpoint::new(n, format!("n{n}")));
        }
    }

    let series = diagnostics::drift_series(&source, args.horizon, &checkpoints, args.emit_every, budget)?;
    let oscillation = if !low.is_empty() && !high.is_empty() {
        Some(diagnostics::oscillation_report(&series, &low, &high)?)
    } else {
        None
    };
    let summary = output::DriftSummary::new(&series, oscillation.as_ref());
    let csv = output::drift_csv(&series);
    let mut summary_json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    summary_json.push('\n');

    let mut manifest = RunManifest::new("drift")
        .param("source", source.name())
        .param("horizon", args.horizon)
        .param("checkpoints", checkpoints.iter().map(|c| c.n).collect::<Vec<_>>())
        .param("low", &low)
        .param("high", &high)
        .param("emit_every", args.emit_every);
    match &args.out {
        Some(path) => {
            std::fs::write(path, &csv).map_err(|e| Failure::io(e, path))?;
            manifest.record_output(&path.display().to_string(), csv.as_bytes());
            let spath = summary_path(path);
            std::fs::write(&spath, &summary_json).map_err(|e| Failure::io(e, &spath))?;
            manifest.record_output(&spath.display().to_string(), summary_json.as_bytes());
            let mpath = manifest_path(path);
            std::fs::write(&mpath, manifest.to_json()).map_err(|e| Failure::io(e, &mpath))?;
        }
        None => {
            print!("{csv}");
            eprint!("{summary_json}");
        }
    }
    Ok(())
}

fn summary_path(out: &Path) -> PathBuf {
    let mut name = out.file_name().unwrap_or_default().to_os_string();
    name.push(".summary.json");
    out.with_file_name(name)
}

fn cmd_tame(args: TameArgs, budget: &Budget) -> Result<(), Failure> {
    let prof = args.profile.build()?;
    let report = tameness::build_report(&prof, args.horizon, args.words, budget)?;
    let manifest = args
        .profile
        .describe(RunManifest::new("tame"))
        .param("horizon", args.horizon)
        .param("words", args.words);
    let mut json = serde_json::to_string_pretty(&report).expect("report serializes");
    json.push('\n');
    emit(&args.out, &json, manifest)?;
    if report.rho_fit >= 1.0 {
        return Err(Failure::invariant(format!(
            "point probabilities do not decay: rho_fit = {}",
            report.rho_fit
        )));
    }
    Ok(())
}

fn cmd_qi_map(args: QiMapArgs) -> Result<(), Failure> {
    let word = WordAddress::parse(&args.word)?;
    let image = if args.invert || args.global {
        let cfg = QiConfig::new(args.c, args.base)?;
        if args.invert {
            qi::invert_f(&word, &cfg)
        } else {
            qi::apply_f(&word, &cfg)
        }
    } else {
        let rel = qi::apply_x(args.c, word.letters())?;
        WordAddress::validate(rel)?
    };
    let manifest = RunManifest::new("qi map")
        .param("C", args.c)
        .param("base", args.base)
        .param("word", &args.word)
        .param("global", args.global)
        .param("invert", args.invert);
    emit(&args.out, &format!("{image}\n"), manifest)
}

fn cmd_qi_verify(args: QiVerifyArgs, budget: &Budget) -> Result<(), Failure> {
    if args.ball.is_none() && args.pairs.is_none() {
        return Err(Failure::usage("nothing to verify: pass --ball and/or --pairs"));
    }
    let cfg = QiConfig::new(args.c, args.base)?;

    #[derive(serde::Serialize)]
    struct VerifySummary {
        c: u32,
        base: u64,
        max_ratio: f64,
        ball: Option<BallPart>,
        sampled: Option<SampledPart>,
    }
    #[derive(serde::Serialize)]
    struct BallPart {
        radius: u32,
        elements: u64,
        pairs_covered: u128,
        max_ratio: f64,
        injective: bool,
        round_trips_ok: bool,
    }
    #[derive(serde::Serialize)]
    struct SampledPart {
        pairs: u64,
        depth: u32,
        seed: u64,
        max_ratio: f64,
    }

    let mut max_ratio = 1.0f64;
    let ball = match args.ball {
        Some(radius) => {
            let distortion = qi::verify_qi_ball(radius, &cfg, budget)?;
            let bij = qi::check_ball_bijectivity(radius, &cfg, budget)?;
            max_ratio = max_ratio.max(distortion.max_ratio);
            Some(BallPart {
                radius,
                elements: bij.elements,
                pairs_covered: distortion.pairs_covered,
                max_ratio: distortion.max_ratio,
                injective: bij.injective,
                round_trips_ok: bij.round_trips_ok,
            })
        }
        None => None,
    };
    let sampled = match args.pairs {
        Some(pairs) => {
            let report = qi::verify_qi_sampled(args.depth, pairs, args.seed, &cfg);
            max_ratio = max_ratio.max(report.max_ratio);
            Some(SampledPart { pairs, depth: args.depth, seed: args.seed, max_ratio: report.max_ratio })
        }
        None => None,
    };

    let summary = VerifySummary { c: args.c, base: args.base, max_ratio, ball, sampled };
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    let manifest = RunManifest::new("qi verify")
        .param("C", args.c)
        .param("base", args.base)
        .param("ball", args.ball)
        .param("pairs", args.pairs)
        .param("depth", args.depth)
        .seed(args.seed);
    emit(&args.out, &json, manifest)?;

    if max_ratio > args.c as f64 {
        return Err(Failure::invariant(format!(
            "distortion ratio {max_ratio} exceeds C = {}",
            args.c
        )));
    }
    if let Some(b) = &summary.ball {
        if !b.injective || !b.round_trips_ok {
            return Err(Failure::invariant("bijectivity check failed on the ball"));
        }
    }
    Ok(())
}

fn cmd_qi_dx(args: QiDxArgs) -> Result<(), Failure> {
    let dx = qi::d_x(args.c)?;
    let manifest = RunManifest::new("qi dx").param("C", args.c).arithmetic("rational");
    emit(&args.out, &format!("{}/{}\n", dx.numer(), dx.denom()), manifest)
}

fn cmd_qi_a_series(args: QiASeriesArgs, budget: &Budget) -> Result<(), Failure> {
    let cfg = QiConfig::new(args.c, args.base)?;
    let series = qi::a_series(args.horizon, &cfg, budget)?;
    let manifest = RunManifest::new("qi a-series")
        .param("C", args.c)
        .param("base", args.base)
        .param("horizon", args.horizon)
        .arithmetic("rational+double");
    emit(&args.out, &output::a_series_csv(&series), manifest)
}

fn cmd_qi_law_check(args: QiLawCheckArgs, budget: &Budget) -> Result<(), Failure> {
    let cfg = QiConfig::new(args.c, args.base)?;
    let tv = qi::pushforward_law_check(args.n, &cfg, budget)?;
    let manifest = RunManifest::new("qi law-check")
        .param("C", args.c)
        .param("base", args.base)
        .param("n", args.n)
        .arithmetic("exact-counts");
    emit(&args.out, &format!("{}\n", output::fmt_double(tv)), manifest)?;
    if tv > 1e-12 {
        return Err(Failure::invariant(format!(
            "push-forward law differs from the law of f(Z_n): tv = {tv}"
        )));
    }
    Ok(())
}

fn cmd_clt(args: CltArgs, budget: &Budget) -> Result<(), Failure> {
    let prof = args.profile.build()?;
    let grid = parse_f64_list(&args.sigma2, "sigma2")?;
    if grid.is_empty() {
        return Err(Failure::usage("sigma2 grid must be nonempty"));
    }
    let mut entries = Vec::with_capacity(grid.len());
    for &s2 in &grid {
        if s2 <= 0.0 {
            return Err(Failure::usage(format!("sigma2 = {s2} must be positive")));
        }
        entries.push(diagnostics::clt_diagnostics(
            &prof,
            args.n,
            args.ell,
            s2.sqrt(),
            args.z,
            budget,
        )?);
    }
    let summary = output::CltSummary {
        profile: prof.name().to_string(),
        n: args.n,
        ell: args.ell,
        z: args.z,
        ks: entries,
    };
    let mut json = serde_json::to_string_pretty(&summary).expect("summary serializes");
    json.push('\n');
    let manifest = args
        .profile
        .describe(RunManifest::new("clt"))
        .param("n", args.n)
        .param("ell", args.ell)
        .param("z", args.z)
        .param("sigma2_grid", &grid);
    emit(&args.out, &json, manifest)
}

//! Command-line driver: workload generation, tracking, verification,
//! benchmarking and oracle tables.
//!
//! Exit codes: 0 success, 2 configuration error, 3 data error, 4 failed
//! verification.

use std::fmt;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;
use sha2::{Digest, Sha256};

use crate::collection::MaintenanceStats;
use crate::error::Error;
use crate::graph::{DynamicGraph, Model};
use crate::oracle::{self, InfluenceTable};
use crate::report::{jaccard, TrackerReport};
use crate::stream::{self, WeightUpdate, WorkloadSpec};
use crate::threshold::{ThresholdConfig, ThresholdTracker};
use crate::topk::{TopKConfig, TopKTracker};

pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_DATA: i32 = 3;
pub const EXIT_VERDICT: i32 = 4;

/// Environment variable that overrides every `--seed`.
pub const SEED_ENV: &str = "RIVULET_SEED";

#[derive(Debug, Parser)]
#[command(name = "rivulet", version, about = "Track influential nodes over a stream of edge-weight updates")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split a static graph into a base graph and an update stream.
    Generate(GenerateArgs),
    /// Replay a stream and emit tracker reports as JSON lines.
    Track(TrackArgs),
    /// Check a report against an influence table.
    Verify(VerifyArgs),
    /// Time incremental maintenance against a from-scratch rebuild.
    Bench(BenchArgs),
    /// Compute an influence table (exact, Monte-Carlo or polled).
    Oracle(OracleArgs),
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out_dir: PathBuf,
    /// Share of edges only in the base graph.
    #[arg(long, default_value_t = 0.85)]
    pub e1: f64,
    /// Share of edges decreased then restored by the stream.
    #[arg(long, default_value_t = 0.05)]
    pub e2: f64,
    /// Share of edges inserted by the stream.
    #[arg(long, default_value_t = 0.10)]
    pub e3: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrackMode {
    Threshold,
    Topk,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrackerArgs {
    /// Base graph TSV.
    #[arg(long)]
    pub graph: PathBuf,
    /// Update stream TSV.
    #[arg(long)]
    pub stream: PathBuf,
    #[arg(long, value_enum)]
    pub mode: TrackMode,
    #[arg(long, value_parser = parse_model)]
    #[serde(serialize_with = "display")]
    pub model: Model,
    /// Threshold as a fraction of n.
    #[arg(long = "T-frac", conflicts_with = "t_abs")]
    pub t_frac: Option<f64>,
    /// Absolute threshold.
    #[arg(long = "T-abs")]
    pub t_abs: Option<f64>,
    #[arg(long)]
    pub k: Option<usize>,
    #[arg(long)]
    pub epsilon: f64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Re-run the top-k sizing loop every this many updates.
    #[arg(long, default_value_t = 1)]
    pub sizing_batch: usize,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct TrackArgs {
    #[command(flatten)]
    pub tracker: TrackerArgs,
    /// Emit a report every N updates; 0 emits only the final report.
    #[arg(long, default_value_t = 0)]
    pub report_every: u64,
    /// Report JSONL path (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Manifest path (defaults to `<out>.manifest.json`, or stderr).
    #[arg(long)]
    pub manifest: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Report JSONL; the last report is checked.
    #[arg(long)]
    pub report: PathBuf,
    /// Influence table TSV.
    #[arg(long)]
    pub oracle: PathBuf,
    /// Second report JSONL to compare against (Jaccard similarity).
    #[arg(long)]
    pub compare: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[command(flatten)]
    pub tracker: TrackerArgs,
    /// Summary CSV (`metric,value`; stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Per-update CSV (`t,seconds,retrieved,candidates,rerouted`).
    #[arg(long)]
    pub per_update: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OracleMethod {
    Exact,
    Mc,
    Poll,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub graph: PathBuf,
    #[arg(long, value_parser = parse_model)]
    pub model: Model,
    #[arg(long, value_enum)]
    pub method: OracleMethod,
    /// Monte-Carlo diffusions per node.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    /// RR sets for the polled estimate.
    #[arg(long, default_value_t = 100_000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub threads: usize,
    /// Table TSV (stdout when absent).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_model(s: &str) -> Result<Model, String> {
    s.parse()
}

fn display<S: serde::Serializer>(m: &Model, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(m)
}

/// A failure with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn config(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidConfig(_) | Error::FractionMismatch(_) | Error::TooLargeToEnumerate { .. } => EXIT_CONFIG,
            _ => EXIT_DATA,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        Error::Io(e).into()
    }
}

type CliResult<T = ()> = Result<T, CliError>;

/// Parses `args` and runs the command, returning the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { 0 };
        }
    };
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Generate(a) => cmd_generate(a).map(|_| 0),
        Command::Track(a) => cmd_track(a).map(|_| 0),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a).map(|_| 0),
        Command::Oracle(a) => cmd_oracle(a).map(|_| 0),
    }
}

fn effective_seed(seed: u64) -> CliResult<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::config(format!("{SEED_ENV} must be an unsigned integer, got `{v}`"))),
        Err(_) => Ok(seed),
    }
}

fn set_threads(threads: usize) -> CliResult {
    if threads == 0 {
        return Err(CliError::config("--threads must be at least 1"));
    }
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

/// Git-style content hash: SHA-256 over `blob <len>\0<bytes>`.
pub fn content_hash(bytes: &[u8]) -> String {
    let mut h = Sha256::new();
    h.update(format!("blob {}\0", bytes.len()).as_bytes());
    h.update(bytes);
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

fn hash_file(path: &Path) -> CliResult<String> {
    Ok(content_hash(&fs::read(path)?))
}

#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub config: serde_json::Value,
    pub seed: u64,
    pub inputs: Vec<InputHash>,
    pub phases: Vec<Phase>,
    /// Largest Σ|RR set| + n observed.
    pub peak_rr_footprint: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub update_timing: Option<TimingSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totals: Option<MaintenanceStats>,
}

#[derive(Debug, Serialize)]
pub struct InputHash {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Serialize)]
pub struct Phase {
    pub name: String,
    pub seconds: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TimingSummary {
    pub updates: usize,
    pub mean_us: f64,
    pub p50_us: f64,
    pub p90_us: f64,
    pub p99_us: f64,
    pub max_us: f64,
}

impl TimingSummary {
    pub fn from_seconds(samples: &[f64]) -> Self {
        let mut us: Vec<f64> = samples.iter().map(|s| s * 1e6).collect();
        us.sort_by(f64::total_cmp);
        let pick = |q: f64| -> f64 {
            if us.is_empty() {
                0.0
            } else {
                us[((us.len() - 1) as f64 * q).round() as usize]
            }
        };
        TimingSummary {
            updates: us.len(),
            mean_us: if us.is_empty() { 0.0 } else { us.iter().sum::<f64>() / us.len() as f64 },
            p50_us: pick(0.5),
            p90_us: pick(0.9),
            p99_us: pick(0.99),
            max_us: us.last().copied().unwrap_or(0.0),
        }
    }
}

impl RunManifest {
    fn new(command: &str, config: serde_json::Value, seed: u64) -> Self {
        RunManifest {
            command: command.into(),
            config,
            seed,
            inputs: Vec::new(),
            phases: Vec::new(),
            peak_rr_footprint: 0,
            update_timing: None,
            totals: None,
        }
    }

    fn input(&mut self, path: &Path) -> CliResult {
        self.inputs.push(InputHash {
            path: path.display().to_string(),
            sha256: hash_file(path)?,
        });
        Ok(())
    }

    fn phase(&mut self, name: &str, started: Instant) {
        self.phases.push(Phase {
            name: name.into(),
            seconds: started.elapsed().as_secs_f64(),
        });
    }

    fn write(&self, path: Option<&Path>) -> CliResult {
        let text = serde_json::to_string_pretty(self).map_err(Error::from)?;
        match path {
            Some(p) => fs::write(p, text + "\n")?,
            None => eprintln!("{text}"),
        }
        Ok(())
    }
}

fn open_out(path: Option<&Path>) -> CliResult<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn cmd_generate(a: GenerateArgs) -> CliResult {
    for (flag, v) in [("--e1", a.e1), ("--e2", a.e2), ("--e3", a.e3)] {
        if !(0.0..=1.0).contains(&v) {
            return Err(CliError::config(format!("{flag} must lie in [0, 1], got {v}")));
        }
    }
    let sum = a.e1 + a.e2 + a.e3;
    if (sum - 1.0).abs() > 1e-9 {
        return Err(CliError::config(format!("--e1 + --e2 + --e3 must sum to 1, got {sum}")));
    }
    let seed = effective_seed(a.seed)?;
    let mut manifest = RunManifest::new(
        "generate",
        json!({"graph": a.graph, "model": a.model.to_string(), "e1": a.e1, "e2": a.e2, "e3": a.e3}),
        seed,
    );
    manifest.input(&a.graph)?;
    let started = Instant::now();
    let target = stream::parse_graph(&a.graph, a.model)?;
    manifest.phase("load", started);
    let spec = WorkloadSpec {
        base_only: a.e1,
        churn: a.e2,
        arrival: a.e3,
        model: a.model,
        seed,
        instances: 1,
    };
    let started = Instant::now();
    let w = stream::generate_workload(&target, &spec, &mut crate::rng_stream(seed, 0))?;
    manifest.phase("generate", started);
    fs::create_dir_all(&a.out_dir)?;
    stream::write_graph_file(a.out_dir.join("base.tsv"), &w.base)?;
    stream::write_stream_file(a.out_dir.join("stream.tsv"), &w.stream)?;
    manifest.write(Some(&a.out_dir.join("manifest.json")))
}

/// Either tracker behind one interface.
#[derive(Clone, Debug)]
pub enum AnyTracker {
    Threshold(ThresholdTracker),
    Topk(TopKTracker),
}

impl AnyTracker {
    /// Builds the tracker described by `a` on `graph`.
    pub fn build(a: &TrackerArgs, graph: DynamicGraph, seed: u64) -> CliResult<Self> {
        if !(a.epsilon > 0.0 && a.epsilon < 1.0) {
            return Err(CliError::config(format!("--epsilon must lie in (0,1), got {}", a.epsilon)));
        }
        if !(a.delta > 0.0 && a.delta < 1.0) {
            return Err(CliError::config(format!("--delta must lie in (0,1), got {}", a.delta)));
        }
        let n = graph.n() as f64;
        match a.mode {
            TrackMode::Threshold => {
                let t = match (a.t_frac, a.t_abs) {
                    (Some(f), None) => f * n,
                    (None, Some(t)) => t,
                    _ => return Err(CliError::config("threshold mode needs exactly one of --T-frac or --T-abs")),
                };
                let config = ThresholdConfig::new(t, a.epsilon, a.delta);
                Ok(AnyTracker::Threshold(ThresholdTracker::new(graph, config, seed)?))
            }
            TrackMode::Topk => {
                let k = a.k.ok_or_else(|| CliError::config("topk mode needs --k"))?;
                let mut config = TopKConfig::new(k, a.epsilon, a.delta);
                config.sizing_batch = a.sizing_batch;
                if config.epsilon_above_recommendation(graph.n()) {
                    eprintln!(
                        "warning: --epsilon {} exceeds 1/(2n) = {}; the I_max bound may be loose",
                        a.epsilon,
                        0.5 / n
                    );
                }
                Ok(AnyTracker::Topk(TopKTracker::new(graph, config, seed)?))
            }
        }
    }

    pub fn process_update(&mut self, upd: &WeightUpdate) -> crate::Result<MaintenanceStats> {
        match self {
            AnyTracker::Threshold(t) => t.process_update(upd),
            AnyTracker::Topk(t) => t.process_update(upd),
        }
    }

    pub fn report(&mut self) -> crate::Result<TrackerReport> {
        match self {
            AnyTracker::Threshold(t) => t.report(),
            AnyTracker::Topk(t) => t.report(),
        }
    }

    pub fn rebuild(&mut self) {
        match self {
            AnyTracker::Threshold(t) => t.rebuild(),
            AnyTracker::Topk(t) => t.rebuild(),
        }
    }

    /// Σ|RR set| + n over every collection held.
    pub fn footprint(&self) -> usize {
        match self {
            AnyTracker::Threshold(t) => t.collection().footprint(),
            AnyTracker::Topk(t) => t.sizing().footprint() + t.selection().footprint(),
        }
    }

    pub fn graph(&self) -> &DynamicGraph {
        match self {
            AnyTracker::Threshold(t) => t.graph(),
            AnyTracker::Topk(t) => t.graph(),
        }
    }

    pub fn totals(&self) -> MaintenanceStats {
        match self {
            AnyTracker::Threshold(t) => t.totals(),
            AnyTracker::Topk(t) => t.totals(),
        }
    }
}

pub fn cmd_track(a: TrackArgs) -> CliResult {
    let ta = &a.tracker;
    set_threads(ta.threads)?;
    let seed = effective_seed(ta.seed)?;
    let mut manifest = RunManifest::new(
        "track",
        json!({"tracker": ta, "report_every": a.report_every}),
        seed,
    );
    manifest.input(&ta.graph)?;
    manifest.input(&ta.stream)?;

    let started = Instant::now();
    let graph = stream::parse_graph(&ta.graph, ta.model)?;
    manifest.phase("load", started);
    let started = Instant::now();
    let mut tracker = AnyTracker::build(ta, graph, seed)?;
    manifest.phase("initial_sampling", started);
    let mut peak = tracker.footprint();

    let mut out = open_out(a.out.as_deref())?;
    let mut timings = Vec::new();
    let started = Instant::now();
    for upd in stream::parse_stream(&ta.stream)? {
        let upd = upd?;
        let t0 = Instant::now();
        tracker.process_update(&upd)?;
        timings.push(t0.elapsed().as_secs_f64());
        peak = peak.max(tracker.footprint());
        if a.report_every > 0 && (timings.len() as u64).is_multiple_of(a.report_every) {
            writeln!(out, "{}", tracker.report()?.to_json_line())?;
        }
    }
    writeln!(out, "{}", tracker.report()?.to_json_line())?;
    out.flush()?;
    manifest.phase("stream", started);

    manifest.peak_rr_footprint = peak;
    manifest.update_timing = Some(TimingSummary::from_seconds(&timings));
    manifest.totals = Some(tracker.totals());
    let manifest_path = a
        .manifest
        .clone()
        .or_else(|| a.out.as_ref().map(|p| PathBuf::from(format!("{}.manifest.json", p.display()))));
    manifest.write(manifest_path.as_deref())
}

/// Outcome of `verify`.
#[derive(Debug, Serialize)]
pub struct VerifyOutcome {
    #[serde(flatten)]
    pub verdict: crate::report::Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jaccard: Option<f64>,
}

pub fn cmd_verify(a: VerifyArgs) -> CliResult<i32> {
    let report = TrackerReport::read_last(&a.report)?;
    let table = InfluenceTable::read_tsv(&a.oracle)?;
    let verdict = report.verify(&table);
    let jaccard = match &a.compare {
        Some(p) => Some(jaccard(&report, &TrackerReport::read_last(p)?)),
        None => None,
    };
    let pass = verdict.pass;
    let outcome = VerifyOutcome { verdict, jaccard };
    println!("{}", serde_json::to_string(&outcome).map_err(Error::from)?);
    Ok(if pass { 0 } else { EXIT_VERDICT })
}

/// Incremental-versus-rebuild measurements.
#[derive(Debug, Clone, Serialize)]
pub struct BenchSummary {
    pub updates: usize,
    pub build_seconds: f64,
    pub incremental_seconds: f64,
    pub rebuild_seconds: f64,
    pub mean_update_seconds: f64,
    pub mean_retrieved: f64,
    pub mean_candidates: f64,
    pub mean_rerouted: f64,
    pub final_sets: usize,
}

/// Per-update row of [`bench`].
#[derive(Debug, Clone, Copy)]
pub struct BenchRow {
    pub t: u64,
    pub seconds: f64,
    pub stats: MaintenanceStats,
}

/// Builds a tracker, streams `updates` through it, then times a rebuild on
/// the final graph.
pub fn bench(a: &TrackerArgs, graph: DynamicGraph, updates: &[WeightUpdate], seed: u64) -> CliResult<(BenchSummary, Vec<BenchRow>)> {
    let started = Instant::now();
    let mut tracker = AnyTracker::build(a, graph, seed)?;
    let build_seconds = started.elapsed().as_secs_f64();
    let mut rows = Vec::with_capacity(updates.len());
    let started = Instant::now();
    for upd in updates {
        let t0 = Instant::now();
        let stats = tracker.process_update(upd)?;
        rows.push(BenchRow {
            t: upd.t,
            seconds: t0.elapsed().as_secs_f64(),
            stats,
        });
    }
    let incremental_seconds = started.elapsed().as_secs_f64();
    let started = Instant::now();
    tracker.rebuild();
    let rebuild_seconds = started.elapsed().as_secs_f64();
    let count = rows.len().max(1) as f64;
    let mean = |f: fn(&BenchRow) -> f64| rows.iter().map(f).sum::<f64>() / count;
    let summary = BenchSummary {
        updates: rows.len(),
        build_seconds,
        incremental_seconds,
        rebuild_seconds,
        mean_update_seconds: mean(|r| r.seconds),
        mean_retrieved: mean(|r| r.stats.retrieved as f64),
        mean_candidates: mean(|r| r.stats.candidates as f64),
        mean_rerouted: mean(|r| r.stats.rerouted as f64),
        final_sets: match &tracker {
            AnyTracker::Threshold(t) => t.collection().len(),
            AnyTracker::Topk(t) => t.sizing().len(),
        },
    };
    Ok((summary, rows))
}

pub fn cmd_bench(a: BenchArgs) -> CliResult {
    let ta = &a.tracker;
    set_threads(ta.threads)?;
    let seed = effective_seed(ta.seed)?;
    let graph = stream::parse_graph(&ta.graph, ta.model)?;
    let updates = stream::read_stream(&ta.stream)?;
    let (summary, rows) = bench(ta, graph, &updates, seed)?;

    let mut out = open_out(a.out.as_deref())?;
    writeln!(out, "metric,value")?;
    let value = serde_json::to_value(&summary).map_err(Error::from)?;
    for (k, v) in value.as_object().expect("summary is an object") {
        writeln!(out, "{k},{v}")?;
    }
    out.flush()?;
    if let Some(p) = &a.per_update {
        let mut w = BufWriter::new(File::create(p)?);
        writeln!(w, "t,seconds,retrieved,candidates,rerouted")?;
        for r in &rows {
            writeln!(
                w,
                "{},{},{},{},{}",
                r.t, r.seconds, r.stats.retrieved, r.stats.candidates, r.stats.rerouted
            )?;
        }
        w.flush()?;
    }
    Ok(())
}

pub fn cmd_oracle(a: OracleArgs) -> CliResult {
    set_threads(a.threads)?;
    let seed = effective_seed(a.seed)?;
    let g = stream::parse_graph(&a.graph, a.model)?;
    let table = match a.method {
        OracleMethod::Exact => oracle::exact_influence(&g)?,
        OracleMethod::Mc => {
            if a.trials == 0 {
                return Err(CliError::config("--trials must be at least 1"));
            }
            oracle::mc_influence_all(&g, a.trials, seed)
        }
        OracleMethod::Poll => {
            if a.samples == 0 {
                return Err(CliError::config("--samples must be at least 1"));
            }
            oracle::static_poll_estimate(&g, a.samples, &mut crate::rng_stream(seed, 0))
        }
    };
    table.write_tsv(open_out(a.out.as_deref())?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hash_matches_git_blob_layout() {
        let mut h = Sha256::new();
        h.update(b"blob 5\0hello");
        let expected: String = h.finalize().iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(content_hash(b"hello"), expected);
    }

    #[test]
    fn timing_percentiles() {
        let s = TimingSummary::from_seconds(&[1e-6, 2e-6, 3e-6, 4e-6, 5e-6]);
        assert!((s.p50_us - 3.0).abs() < 1e-9);
        assert!((s.max_us - 5.0).abs() < 1e-9);
        assert!((s.mean_us - 3.0).abs() < 1e-9);
        assert_eq!(TimingSummary::from_seconds(&[]).updates, 0);
    }

    #[test]
    fn usage_errors_exit_2() {
        assert_eq!(run(["rivulet", "track", "--bogus"]), EXIT_CONFIG);
        assert_eq!(run(["rivulet"]), EXIT_CONFIG);
    }
}

//! `zchannel`: batch front-end for constructing, certifying and sweeping
//! Z-channel codes.
//!
//! Exit codes: 0 success, 1 output could not be written, 2 invalid input,
//! 3 output contains flagged rows (the run still completes).

mod grid;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use zchannel::bounds::{self, BoundReport};
use zchannel::capacity::{self, CurvePoint};
use zchannel::channel::{
    self, Adversary, ChannelMode, ChannelParams, GreedyConfusion, RandomZeros, TargetCenter,
};
use zchannel::codes::{list_decoding_radius, RadiusCertificate};
use zchannel::constructions::{
    balanced_code, stacked_code, BalancedParams, StackLayout, StackedParams,
};
use zchannel::covering::{self, TypeCounts};
use zchannel::rational::{self, parse_rational, Rational};
use zchannel::{Code, Error};

#[derive(Parser)]
#[command(name = "zchannel", version, about = "Codes for the adversarial Z-channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a balanced or stacked code and write it as a code file.
    Construct(ConstructArgs),
    /// Compute the exact list-decoding radius of a code file.
    Certify(CertifyArgs),
    /// Tabulate size bounds over (L, eps).
    SweepBounds(SweepBoundsArgs),
    /// Tabulate rate bounds over (L, w, tau).
    SweepCapacity(SweepCapacityArgs),
    /// Sample and verify a covering of a Hamming sphere.
    Cover(CoverArgs),
    /// Run a transmission campaign against a code file.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Layout {
    Unique,
    List,
}

#[derive(Args)]
struct ConstructArgs {
    /// JSON run config; replaces the parameter flags.
    #[arg(long, conflicts_with_all = ["m", "w", "offsets"])]
    spec: Option<PathBuf>,
    #[arg(long)]
    m: Option<u64>,
    /// Relative weight of a balanced code, e.g. 1/2.
    #[arg(long, conflicts_with = "offsets")]
    w: Option<String>,
    /// Block offsets of a stacked code, e.g. -1,0,1.
    #[arg(long, allow_hyphen_values = true)]
    offsets: Option<String>,
    #[arg(long, value_enum, default_value = "unique")]
    layout: Layout,
    /// List size for the list layout.
    #[arg(long = "L")]
    list_size: Option<usize>,
    /// Copies of each block, one per offset.
    #[arg(long)]
    replication: Option<String>,
    /// Also compute the list-decoding radius for this list size.
    #[arg(long)]
    radius: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    code: PathBuf,
    #[arg(long = "L")]
    list_size: usize,
    /// Error fraction to test, e.g. 1/6.
    #[arg(long)]
    tau: Option<String>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepBoundsArgs {
    #[arg(long = "L")]
    list_size: String,
    #[arg(long)]
    eps: String,
    /// Code length, enabling the unique-decoding bound for L = 2.
    #[arg(long)]
    n: Option<u64>,
    /// Weight spread, enabling the approximate constant-weight bound.
    #[arg(long)]
    delta: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepCapacityArgs {
    #[arg(long = "L")]
    list_size: String,
    #[arg(long)]
    w: String,
    #[arg(long)]
    tau: String,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CoverArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    w: String,
    #[arg(long)]
    v: String,
    #[arg(long)]
    a: String,
    /// Slack added to the rate exponent of the number of centers.
    #[arg(long, default_value_t = 0.5)]
    eps: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Write the centers as a code file.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Strategy {
    Greedy,
    Random,
    /// Replay the radius certificate's witness list.
    Witness,
}

#[derive(Args)]
struct SimulateArgs {
    code: PathBuf,
    #[arg(long = "L")]
    list_size: usize,
    #[arg(long)]
    tau: String,
    #[arg(long, value_enum, default_value = "adversarial")]
    mode: Mode,
    #[arg(long, value_enum, default_value = "greedy")]
    strategy: Strategy,
    #[arg(long, default_value_t = 10_000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Stochastic,
    Adversarial,
}

/// Run config accepted by `construct --spec`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstructConfig {
    construction: Construction,
    #[serde(default)]
    radius: Option<usize>,
    #[serde(default)]
    seed: Option<u64>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Construction {
    Balanced(BalancedParams),
    Stacked(StackedParams),
}

enum Failure {
    Invalid(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<bool, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure::Invalid(msg.into())
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, bytes)
            .map_err(|e| Failure::Io(format!("{}: {e}", path.display()))),
        None => std::io::stdout()
            .write_all(bytes)
            .map_err(|e| Failure::Io(e.to_string())),
    }
}

fn json_bytes<T: Serialize>(value: &T) -> Vec<u8> {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s.into_bytes()
}

fn rational_arg(text: &str) -> Result<Rational, Failure> {
    parse_rational(text).map_err(|e| invalid(e.to_string()))
}

fn int_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>, Failure> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| invalid(format!("{what}: cannot parse {s:?}")))
        })
        .collect()
}

fn construct(args: ConstructArgs) -> Outcome {
    let (construction, radius, seed) = match &args.spec {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
            let cfg: ConstructConfig =
                serde_json::from_str(&text).map_err(|e| invalid(format!("run config: {e}")))?;
            let seed = match (&cfg.construction, cfg.seed) {
                (Construction::Stacked(p), _) => p.seed,
                (_, s) => s.unwrap_or(0),
            };
            (cfg.construction, cfg.radius, seed)
        }
        None => {
            let m = args.m.ok_or_else(|| invalid("--m is required"))?;
            let c = match (&args.w, &args.offsets) {
                (Some(w), None) => Construction::Balanced(BalancedParams {
                    m,
                    w: rational_arg(w)?,
                }),
                (None, Some(offsets)) => {
                    let layout = match args.layout {
                        Layout::Unique => StackLayout::Unique,
                        Layout::List => StackLayout::List {
                            list_size: args
                                .list_size
                                .ok_or_else(|| invalid("--L is required for the list layout"))?,
                        },
                    };
                    Construction::Stacked(StackedParams {
                        m,
                        offsets: int_list(offsets, "--offsets")?,
                        layout,
                        replication: args
                            .replication
                            .as_deref()
                            .map(|r| int_list(r, "--replication"))
                            .transpose()?,
                        seed: args.seed,
                    })
                }
                _ => return Err(invalid("give either --w (balanced) or --offsets (stacked)")),
            };
            (c, args.radius, args.seed)
        }
    };
    let mut code = match &construction {
        Construction::Balanced(p) => balanced_code(p)?,
        Construction::Stacked(p) => stacked_code(p)?.code,
    };
    code = code.with_meta("seed", json!(seed));
    if let Some(l) = radius {
        let cert = list_decoding_radius(&code, l)?;
        code = code.with_meta("radius", json!({"L": l, "radius": cert.radius}));
    }
    emit(args.out.as_deref(), code.to_json().as_bytes())?;
    Ok(false)
}

#[derive(Serialize)]
struct CertifyRecord {
    #[serde(rename = "L")]
    list_size: usize,
    n: usize,
    size: usize,
    radius: usize,
    witness: Vec<String>,
    center: String,
    symmetry_reduced: bool,
    tau: Option<String>,
    budget: Option<usize>,
    pass: Option<bool>,
}

fn certify(args: CertifyArgs) -> Outcome {
    let code = Code::load(&args.code)?;
    let cert: RadiusCertificate = list_decoding_radius(&code, args.list_size)?;
    let tau = args.tau.as_deref().map(rational_arg).transpose()?;
    if let Some(t) = &tau {
        if !rational::in_unit_interval(t) {
            return Err(invalid(format!("tau = {t} outside [0, 1]")));
        }
    }
    let budget = tau.map(|t| rational::ceil_times(&t, code.len()));
    let record = CertifyRecord {
        list_size: args.list_size,
        n: code.len(),
        size: code.size(),
        radius: cert.radius,
        witness: cert.witness.iter().map(|w| w.to_string()).collect(),
        center: cert.center.to_string(),
        symmetry_reduced: cert.symmetry_reduced,
        tau: tau.map(|t| rational::format_rational(&t)),
        budget,
        pass: budget.map(|b| b < cert.radius),
    };
    let bytes = match args.format {
        Format::Json => json_bytes(&record),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let opt = |v: Option<String>| v.unwrap_or_default();
            w.write_record(["L", "n", "size", "radius", "witness", "center", "tau", "budget", "pass"])
                .and_then(|_| {
                    w.write_record([
                        record.list_size.to_string(),
                        record.n.to_string(),
                        record.size.to_string(),
                        record.radius.to_string(),
                        record.witness.join(";"),
                        record.center.clone(),
                        opt(record.tau.clone()),
                        opt(record.budget.map(|b| b.to_string())),
                        opt(record.pass.map(|p| p.to_string())),
                    ])
                })
                .map_err(|e| Failure::Io(e.to_string()))?;
            w.into_inner().map_err(|e| Failure::Io(e.to_string()))?
        }
    };
    emit(args.out.as_deref(), &bytes)?;
    Ok(false)
}

struct BoundsRow {
    list_size: usize,
    eps: f64,
    tau: Option<f64>,
    bounds: Vec<(&'static str, Option<String>)>,
    flags: Vec<String>,
}

fn bounds_row(list_size: usize, eps: f64, n: Option<u64>, delta: Option<f64>) -> BoundsRow {
    let mut reports: Vec<BoundReport> = Vec::new();
    let mut flags = Vec::new();
    let pp = bounds::plotkin_point(list_size).ok();
    match bounds::general_upper_bound(list_size, eps) {
        Ok((r, _)) => reports.push(r),
        Err(e) => flags.push(format!("general_upper_bound: {e}")),
    }
    reports.push(bounds::close_weights_bound(list_size, eps, None));
    if let Some(pp) = pp {
        let tau = pp.tau + eps;
        reports.push(bounds::cw_list_upper(list_size, pp.w_max, eps));
        reports.push(bounds::augmented_weight_band_bound(list_size, pp.w_max, pp.w_max, tau));
        if let Some(d) = delta {
            reports.push(bounds::apx_cw_ratio_bound(list_size, pp.w_max, d, tau));
        }
    } else {
        flags.push(format!("L = {list_size} has no Plotkin point"));
    }
    if let (Some(n), 2) = (n, list_size) {
        reports.push(bounds::unique_above_plotkin(n, eps));
    }
    let mut values = Vec::new();
    for r in &reports {
        if !r.preconditions_met() {
            let failed: Vec<&str> = r
                .preconditions
                .iter()
                .filter(|p| !p.met)
                .map(|p| p.name.as_str())
                .collect();
            flags.push(format!("{}: failed {}", r.name, failed.join(", ")));
        }
        for f in &r.flags {
            flags.push(format!("{}: {f}", r.name));
        }
        values.push((r.name, r.value.map(|v| v.to_string())));
    }
    BoundsRow {
        list_size,
        eps,
        tau: pp.map(|p| p.tau + eps),
        bounds: values,
        flags,
    }
}

fn sweep_bounds(args: SweepBoundsArgs) -> Outcome {
    let ls = grid::parse_usize(&args.list_size).map_err(invalid)?;
    let eps = grid::parse_f64(&args.eps).map_err(invalid)?;
    let tuples: Vec<(usize, f64)> = ls
        .iter()
        .flat_map(|&l| eps.iter().map(move |&e| (l, e)))
        .collect();
    let rows: Vec<BoundsRow> = tuples
        .par_iter()
        .map(|&(l, e)| bounds_row(l, e, args.n, args.delta))
        .collect();
    let flagged = rows.iter().any(|r| !r.flags.is_empty());
    let mut columns = vec![
        "general_upper_bound",
        "close_weights_bound",
        "cw_list_upper",
        "augmented_weight_band_bound",
    ];
    if args.delta.is_some() {
        columns.push("apx_cw_ratio_bound");
    }
    if args.n.is_some() && ls.contains(&2) {
        columns.push("unique_above_plotkin");
    }
    let bytes = match args.format {
        Format::Json => {
            let objects: Vec<serde_json::Value> = rows
                .iter()
                .map(|r| {
                    let mut o = serde_json::Map::new();
                    o.insert("L".into(), json!(r.list_size));
                    o.insert("eps".into(), json!(r.eps));
                    o.insert("tau".into(), json!(r.tau));
                    for c in &columns {
                        let v = r.bounds.iter().find(|b| b.0 == *c).and_then(|b| b.1.clone());
                        o.insert((*c).into(), json!(v));
                    }
                    o.insert("flags".into(), json!(r.flags));
                    serde_json::Value::Object(o)
                })
                .collect();
            json_bytes(&objects)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header = vec!["L", "eps", "tau"];
            header.extend(&columns);
            header.push("flags");
            w.write_record(&header).map_err(|e| Failure::Io(e.to_string()))?;
            for r in &rows {
                let mut rec = vec![
                    r.list_size.to_string(),
                    r.eps.to_string(),
                    r.tau.map(|t| t.to_string()).unwrap_or_default(),
                ];
                for c in &columns {
                    let v = r.bounds.iter().find(|b| b.0 == *c).and_then(|b| b.1.clone());
                    rec.push(v.unwrap_or_default());
                }
                rec.push(r.flags.join("; "));
                w.write_record(&rec).map_err(|e| Failure::Io(e.to_string()))?;
            }
            w.into_inner().map_err(|e| Failure::Io(e.to_string()))?
        }
    };
    emit(args.out.as_deref(), &bytes)?;
    Ok(flagged)
}

fn sweep_capacity(args: SweepCapacityArgs) -> Outcome {
    let ls = grid::parse_usize(&args.list_size).map_err(invalid)?;
    let ws = grid::parse_f64(&args.w).map_err(invalid)?;
    let taus = grid::parse_f64(&args.tau).map_err(invalid)?;
    let mut tuples = Vec::new();
    for &l in &ls {
        for &w in &ws {
            for &t in &taus {
                tuples.push((l, w, t));
            }
        }
    }
    let points: Vec<CurvePoint> = tuples
        .par_iter()
        .map(|&(l, w, t)| capacity::curve_point(l, w, t))
        .collect();
    let flagged = points.iter().any(CurvePoint::is_flagged);
    let bytes = match args.format {
        Format::Json => json_bytes(&points),
        Format::Csv => {
            let mut buf = Vec::new();
            capacity::write_curve_csv(&mut buf, &points)?;
            buf
        }
    };
    emit(args.out.as_deref(), &bytes)?;
    Ok(flagged)
}

#[derive(Serialize)]
struct CoverReport {
    n: usize,
    w: f64,
    v: f64,
    a: f64,
    eps: f64,
    seed: u64,
    sampled: usize,
    distinct_centers: usize,
    single_center_coverage: String,
    converse_lower: String,
    sphere_size: usize,
    complete: bool,
    uncovered: usize,
}

fn cover(args: CoverArgs) -> Outcome {
    let num = |s: &str| grid::number(s).map_err(invalid);
    let (w, v, a) = (num(&args.w)?, num(&args.v)?, num(&args.a)?);
    let counts = TypeCounts::new(args.n, w, v, a)?;
    let c = covering::sample_covering(args.n, w, v, a, args.eps, args.seed)?;
    let check = covering::verify_covering(&c)?;
    let converse = covering::covering_converse_lower(args.n, w, v, a)?;
    let report = CoverReport {
        n: args.n,
        w,
        v,
        a,
        eps: args.eps,
        seed: args.seed,
        sampled: c.sampled,
        distinct_centers: c.centers.size(),
        single_center_coverage: counts.single_center_coverage().to_string(),
        converse_lower: converse.to_string(),
        sphere_size: check.sphere_size,
        complete: check.complete,
        uncovered: check.uncovered.len(),
    };
    if let Some(path) = &args.out {
        c.to_code()
            .with_meta("eps", json!(args.eps))
            .save(path)?;
    }
    emit(None, &json_bytes(&report))?;
    Ok(!check.complete)
}

#[derive(Serialize)]
struct SimulateReport {
    #[serde(flatten)]
    campaign: channel::CampaignReport,
    mode: &'static str,
    strategy: Option<Strategy>,
    tau: String,
    seed: u64,
}

fn simulate(args: SimulateArgs) -> Outcome {
    let code = Code::load(&args.code)?;
    let tau = rational_arg(&args.tau)?;
    let mode = match args.mode {
        Mode::Stochastic => ChannelMode::Stochastic,
        Mode::Adversarial => ChannelMode::Adversarial,
    };
    let params = ChannelParams::new(mode, tau, args.seed)?;
    let witness;
    let adversary: &dyn Adversary = match args.strategy {
        Strategy::Greedy => &GreedyConfusion,
        Strategy::Random => &RandomZeros,
        Strategy::Witness => {
            let cert = list_decoding_radius(&code, args.list_size)?;
            witness = TargetCenter {
                center: cert.center,
                inputs: cert.witness,
            };
            &witness
        }
    };
    let report = channel::campaign(&code, args.list_size, &params, Some(adversary), args.trials)?;
    let flagged = report.violations > 0;
    let out = SimulateReport {
        campaign: report,
        mode: match mode {
            ChannelMode::Stochastic => "stochastic",
            ChannelMode::Adversarial => "adversarial",
        },
        strategy: matches!(mode, ChannelMode::Adversarial).then_some(args.strategy),
        tau: rational::format_rational(&tau),
        seed: args.seed,
    };
    emit(args.out.as_deref(), &json_bytes(&out))?;
    Ok(flagged)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("ZCHANNEL_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| invalid(format!("ZCHANNEL_THREADS = {v:?} is not a positive integer")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| invalid(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|_| match cli.command {
        Command::Construct(a) => construct(a),
        Command::Certify(a) => certify(a),
        Command::SweepBounds(a) => sweep_bounds(a),
        Command::SweepCapacity(a) => sweep_capacity(a),
        Command::Cover(a) => cover(a),
        Command::Simulate(a) => simulate(a),
    });
    match result {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(3),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

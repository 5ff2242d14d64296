//! Command-line front end. Exit codes: 0 solved, 1 unsolved, 2 usage,
//! 3 I/O, 4 malformed input, 5 enumeration cap.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use knapcrack_core::disagg::{is_ideal, modular_transform, DisaggParams};
use knapcrack_core::jumps::{enumerate_jump_points, jump_points, JumpPoint, JumpSource, DEFAULT_JUMP_CAP};
use knapcrack_core::problem::LdeSystem;
use knapcrack_core::{BigInt, BigRational, Error};

use crate::bench::{bench, read_grid, BenchError, BenchOptions};
use crate::features::{analyze, export_features_csv, jump_point_scenarios, t_range_scenarios, FeaturesError, Scenario};
use crate::format::{format_system, read_system, FormatError};
use crate::generate::{generate_system, GenerateError};
use crate::pipeline::{default_modulus, run, Algo, PipelineError, SearchConfig, TSearch};
use crate::report::{Report, Status};

pub const EXIT_SOLVED: i32 = 0;
pub const EXIT_UNSOLVED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_PARSE: i32 = 4;
pub const EXIT_CAP: i32 = 5;

#[derive(Debug, Parser)]
#[command(name = "knapcrack", version, about = "Lattice attacks on binary knapsack systems")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate seeded instances with planted solutions.
    Gen(GenArgs),
    /// Attack one instance file.
    Attack(AttackArgs),
    /// List the jump points of one equation.
    Jumps(JumpsArgs),
    /// Run a benchmark grid.
    Bench(BenchArgs),
    /// Export kernel features of disaggregated systems.
    Analyze(AnalyzeArgs),
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub m: usize,
    #[arg(long)]
    pub n: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct AttackArgs {
    #[arg(long, value_parser = parse_algo)]
    pub algo: Algo,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub dag: bool,
    /// `M`; defaults by problem size.
    #[arg(long, value_parser = parse_big)]
    pub modulus: Option<BigInt>,
    #[arg(long, default_value_t = 200)]
    pub t_max: u64,
    /// Search the jump points of the row instead of `t = 1..t_max`.
    #[arg(long)]
    pub jump_points: bool,
    /// Row to disaggregate.
    #[arg(long, default_value_t = 0)]
    pub row: usize,
    /// LLL parameter as `P/Q`.
    #[arg(long, value_parser = parse_ratio)]
    pub alpha: Option<BigRational>,
    /// Scale of the embedded bases.
    #[arg(long, value_parser = parse_big)]
    pub bign: Option<BigInt>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct JumpsArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub limit: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub row: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long)]
    pub grid: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
    /// Leave `avg_ms` empty so reruns produce identical files.
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Debug, Args)]
pub struct AnalyzeArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_parser = parse_big)]
    pub modulus: Option<BigInt>,
    /// Half-open range `A..B` of `t`.
    #[arg(long, value_parser = parse_range)]
    pub t_range: Option<(u64, u64)>,
    #[arg(long)]
    pub all_jumps: bool,
    /// Steps `t/M,t/M,...` applied to rows 0, 1, ... in order. Repeatable.
    #[arg(long, value_parser = parse_scenario)]
    pub scenario: Vec<Vec<(BigInt, BigInt)>>,
    #[arg(long, default_value_t = 0)]
    pub row: usize,
    #[arg(long, value_parser = parse_algo, default_value = "reduce")]
    pub algo: Algo,
    #[arg(long)]
    pub out: PathBuf,
}

fn parse_algo(s: &str) -> Result<Algo, String> {
    s.parse()
}

fn parse_big(s: &str) -> Result<BigInt, String> {
    s.trim().parse().map_err(|_| format!("not an integer: {s:?}"))
}

fn parse_pair(s: &str) -> Result<(BigInt, BigInt), String> {
    let (p, q) = s.split_once('/').ok_or_else(|| format!("expected P/Q, got {s:?}"))?;
    Ok((parse_big(p)?, parse_big(q)?))
}

fn parse_ratio(s: &str) -> Result<BigRational, String> {
    let (p, q) = parse_pair(s)?;
    if q == BigInt::from(0) {
        return Err("zero denominator".into());
    }
    Ok(BigRational::new(p, q))
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got {s:?}"))?;
    let num = |v: &str| v.trim().parse::<u64>().map_err(|_| format!("not a non-negative integer: {v:?}"));
    Ok((num(a)?, num(b)?))
}

fn parse_scenario(s: &str) -> Result<Vec<(BigInt, BigInt)>, String> {
    s.split(',').map(parse_pair).collect()
}

/// A failure together with its exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    fn new(code: i32, message: impl ToString) -> Self {
        Self {
            code,
            message: message.to_string(),
        }
    }
}

fn input_error(e: FormatError) -> Failure {
    Failure::new(EXIT_PARSE, e)
}

fn core_error(e: Error) -> Failure {
    match e {
        Error::SizeLimit { .. } => Failure::new(EXIT_CAP, e),
        Error::InvalidAlpha
        | Error::InvalidParams(_)
        | Error::IndexOutOfRange(_)
        | Error::InvalidN
        | Error::InvalidRow(_) => Failure::new(EXIT_USAGE, e),
        e => Failure::new(EXIT_UNSOLVED, e),
    }
}

fn pipeline_error(e: PipelineError) -> Failure {
    match e {
        PipelineError::Core(e) => core_error(e),
        PipelineError::InvalidConfig(_) => Failure::new(EXIT_USAGE, e),
        e => Failure::new(EXIT_UNSOLVED, e),
    }
}

fn io_error(path: &Path, e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, format!("{}: {e}", path.display()))
}

fn out_error(e: std::io::Error) -> Failure {
    Failure::new(EXIT_IO, e)
}

/// Parses `args` (program name first) and runs the command.
pub fn run_cli<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_USAGE;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_SOLVED;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match cmd {
        Command::Gen(a) => cmd_gen(&a, out),
        Command::Attack(a) => cmd_attack(&a, out, err),
        Command::Jumps(a) => cmd_jumps(&a, out),
        Command::Bench(a) => cmd_bench(&a, out),
        Command::Analyze(a) => cmd_analyze(&a, out),
    }
}

fn cmd_gen(a: &GenArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if !a.n.is_multiple_of(2) {
        return Err(Failure::new(
            EXIT_USAGE,
            format!("--n must be even: the planted solution has exactly n/2 ones (got {})", a.n),
        ));
    }
    let mut generated = Vec::with_capacity(a.count);
    for i in 0..a.count {
        let g = generate_system(a.m, a.n, a.seed + i as u64).map_err(|e| match e {
            GenerateError::GenerationBudgetExceeded => Failure::new(EXIT_UNSOLVED, e),
            e => Failure::new(EXIT_USAGE, e),
        })?;
        generated.push(g);
    }
    std::fs::create_dir_all(&a.out).map_err(|e| io_error(&a.out, e))?;
    let manifest_path = a.out.join("manifest.csv");
    let mut manifest = csv::Writer::from_path(&manifest_path).map_err(|e| Failure::new(EXIT_IO, e))?;
    let csv_err = |e: csv::Error| Failure::new(EXIT_IO, e);
    manifest.write_record(["index", "file", "m", "n", "seed", "densities", "planted"]).map_err(csv_err)?;
    for (i, g) in generated.iter().enumerate() {
        let name = format!("inst_{}_{}_{}.txt", a.m, a.n, i);
        let path = a.out.join(&name);
        std::fs::write(&path, format_system(&g.system)).map_err(|e| io_error(&path, e))?;
        let densities = g.densities.iter().map(|d| format!("{d:.6}")).collect::<Vec<_>>().join(";");
        let planted: String = g.planted.iter().map(|b| char::from(b'0' + b)).collect();
        manifest
            .write_record([i.to_string(), name, a.m.to_string(), a.n.to_string(), g.seed.to_string(), densities, planted])
            .map_err(csv_err)?;
    }
    manifest.flush().map_err(|e| io_error(&manifest_path, e))?;
    writeln!(out, "wrote {} instances to {}", a.count, a.out.display()).map_err(out_error)?;
    Ok(EXIT_SOLVED)
}

fn attack_config(a: &AttackArgs, sys: &LdeSystem, err: &mut dyn Write) -> Result<SearchConfig, Failure> {
    let mut cfg = SearchConfig::new(a.algo);
    if let Some(alpha) = &a.alpha {
        cfg.alpha = alpha.clone();
    }
    if let Some(n) = &a.bign {
        cfg.scale = n.clone();
    }
    cfg.row = a.row;
    if a.dag {
        let modulus = a.modulus.clone().unwrap_or_else(|| default_modulus(sys.n()));
        // r = t/M must stay below 1.
        let top = BigInt::from(a.t_max);
        let t_max = if top >= modulus {
            let clamped = u64::try_from(&modulus - 1u32).unwrap_or(0);
            let _ = writeln!(err, "note: t ranges over 1..{clamped} since t/M must be below 1");
            clamped
        } else {
            a.t_max
        };
        cfg = cfg.with_dag(modulus, t_max);
        if a.jump_points {
            cfg.search = TSearch::JumpPoints { limit: None };
        }
    }
    Ok(cfg)
}

fn cmd_attack(a: &AttackArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let sys = read_system(&a.input).map_err(input_error)?;
    let cfg = attack_config(a, &sys, err)?;
    let outcome = run(&sys, &cfg).map_err(pipeline_error)?;
    let report = Report::from_outcome(&outcome);
    if a.json {
        writeln!(out, "{}", report.to_json()).map_err(out_error)?;
    } else {
        let none = || "-".to_string();
        writeln!(out, "algorithm: {}", a.algo).map_err(out_error)?;
        writeln!(out, "verdict: {}", status_name(report.status)).map_err(out_error)?;
        writeln!(out, "solution: {}", report.solution.as_ref().map_or_else(none, |s| s.join(" "))).map_err(out_error)?;
        if a.dag {
            writeln!(out, "t_found: {}", report.t_found.clone().unwrap_or_else(none)).map_err(out_error)?;
            writeln!(out, "M: {}", report.modulus.clone().unwrap_or_else(none)).map_err(out_error)?;
            writeln!(out, "attempts: {}", report.attempts).map_err(out_error)?;
        }
        writeln!(out, "time_ms: {:.3}", outcome.wall_time.as_secs_f64() * 1e3).map_err(out_error)?;
    }
    Ok(if outcome.verdict.is_binary() { EXIT_SOLVED } else { EXIT_UNSOLVED })
}

fn status_name(s: Status) -> &'static str {
    match s {
        Status::BinarySolution => "binary_solution",
        Status::ShortNonBinary => "short_non_binary",
        Status::NoIntegerSolution => "no_integer_solution",
        Status::Failure => "failure",
    }
}

fn source_name(s: &JumpSource) -> String {
    match s {
        JumpSource::Weight(i) => format!("a{}", i + 1),
        JumpSource::Target => "b".into(),
        JumpSource::ComplementTarget => "b~".into(),
    }
}

fn cmd_jumps(a: &JumpsArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let sys = read_system(&a.input).map_err(input_error)?;
    let eq = sys.equation(a.row).map_err(core_error)?;
    let points: Vec<JumpPoint> = match a.limit {
        Some(k) => jump_points(eq).take(k).collect(),
        None => enumerate_jump_points(eq, DEFAULT_JUMP_CAP).map_err(core_error)?,
    };
    writeln!(out, "# r\tsources\tu_k\tn_k\tideal").map_err(out_error)?;
    for p in &points {
        let params =
            DisaggParams::new(p.value.numer().clone(), p.value.denom().clone()).map_err(core_error)?;
        let image = modular_transform(eq, &params);
        let sources = p.sources.iter().map(source_name).collect::<Vec<_>>().join(",");
        writeln!(out, "{}\t{}\t{}\t{}\t{}", p.value, sources, image.uk, image.nk, is_ideal(eq, &params))
            .map_err(out_error)?;
    }
    Ok(EXIT_SOLVED)
}

fn cmd_bench(a: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let file = std::fs::File::open(&a.grid).map_err(|e| io_error(&a.grid, e))?;
    let grid = read_grid(file).map_err(|e| Failure::new(EXIT_USAGE, format!("{}: {e}", a.grid.display())))?;
    let opts = BenchOptions {
        timing: !a.no_timing,
        ..BenchOptions::default()
    };
    let file = std::fs::File::create(&a.out).map_err(|e| io_error(&a.out, e))?;
    bench(&grid, &opts, std::io::BufWriter::new(file)).map_err(|e| match e {
        BenchError::Generate(_) | BenchError::Grid(_) => Failure::new(EXIT_USAGE, e),
        e => Failure::new(EXIT_IO, e),
    })?;
    writeln!(out, "wrote {} cells to {}", grid.len(), a.out.display()).map_err(out_error)?;
    Ok(EXIT_SOLVED)
}

fn cmd_analyze(a: &AnalyzeArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let modes = usize::from(a.t_range.is_some()) + usize::from(a.all_jumps) + usize::from(!a.scenario.is_empty());
    if modes != 1 {
        return Err(Failure::new(EXIT_USAGE, "give exactly one of --t-range, --all-jumps, --scenario"));
    }
    let sys = read_system(&a.input).map_err(input_error)?;
    let scenarios: Vec<Scenario> = if let Some((lo, hi)) = a.t_range {
        let modulus =
            a.modulus.as_ref().ok_or_else(|| Failure::new(EXIT_USAGE, "--t-range needs --modulus"))?;
        t_range_scenarios(a.row, lo, hi, modulus)
    } else if a.all_jumps {
        jump_point_scenarios(&sys, a.row, DEFAULT_JUMP_CAP).map_err(core_error)?
    } else {
        a.scenario
            .iter()
            .map(|steps| {
                steps
                    .iter()
                    .enumerate()
                    .map(|(row, (t, m))| Ok((row, DisaggParams::new(t.clone(), m.clone())?)))
                    .collect::<Result<Scenario, Error>>()
            })
            .collect::<Result<_, _>>()
            .map_err(core_error)?
    };
    let id = a.input.file_stem().map_or_else(String::new, |s| s.to_string_lossy().into_owned());
    let mut cfg = SearchConfig::new(a.algo);
    cfg.row = a.row;
    let records = analyze(&id, &sys, &scenarios, &cfg).map_err(pipeline_error)?;
    export_features_csv(&a.out, &records).map_err(|e: FeaturesError| Failure::new(EXIT_IO, e))?;
    writeln!(out, "wrote {} rows to {}", records.len(), a.out.display()).map_err(out_error)?;
    Ok(EXIT_SOLVED)
}

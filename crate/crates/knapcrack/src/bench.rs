//! Success-ratio benchmarks over grids of generated problems.

use std::io::{Read, Write};
use std::str::FromStr;

use knapcrack_core::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize};

use crate::generate::{generate_system, GenerateError};
use crate::pipeline::{run, Algo, SearchConfig};

/// Environment variable bounding the worker count; `0` or unset means one
/// worker per core.
pub const THREADS_ENV: &str = "KNAPCRACK_THREADS";

fn from_str_field<'de, D, T>(d: D) -> Result<T, D::Error>
where
    D: Deserializer<'de>,
    T: FromStr,
    T::Err: std::fmt::Display,
{
    let s = String::deserialize(d)?;
    s.trim().parse().map_err(serde::de::Error::custom)
}

/// One grid line: `count` problems generated from seeds `seed, seed+1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct GridCell {
    pub m: usize,
    pub n: usize,
    #[serde(deserialize_with = "from_str_field")]
    pub algo: Algo,
    #[serde(deserialize_with = "from_str_field")]
    pub dag: bool,
    #[serde(rename = "M", deserialize_with = "from_str_field")]
    pub modulus: BigInt,
    pub t_max: u64,
    pub count: usize,
    pub seed: u64,
}

impl GridCell {
    pub fn config(&self) -> SearchConfig {
        let mut cfg = SearchConfig::new(self.algo);
        cfg.use_dag = self.dag;
        cfg.modulus = self.modulus.clone();
        cfg.t_max = self.t_max;
        cfg.seed = self.seed;
        cfg
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub seed: u64,
    pub success: bool,
    /// The plain attack did not find a binary solution.
    pub initially_failed: bool,
    pub t_found: Option<BigInt>,
    pub millis: f64,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub m: usize,
    pub n: usize,
    pub algo: String,
    pub dag: bool,
    #[serde(rename = "M")]
    pub modulus: String,
    pub t_max: u64,
    pub count: usize,
    pub successes: usize,
    pub success_ratio: String,
    pub avg_valid_t: String,
    pub avg_ms: String,
    pub seed0: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CellResult {
    pub row: BenchRow,
    pub instances: Vec<InstanceResult>,
}

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("grid: {0}")]
    Grid(#[from] csv::Error),
    #[error("instance generation: {0}")]
    Generate(#[from] GenerateError),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    /// Write `avg_ms`; leaving it empty makes reruns byte-identical.
    pub timing: bool,
    /// Worker count, `0` for automatic.
    pub threads: usize,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            timing: true,
            threads: threads_from_env(),
        }
    }
}

pub fn threads_from_env() -> usize {
    std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()).unwrap_or(0)
}

pub fn read_grid<R: Read>(reader: R) -> Result<Vec<GridCell>, BenchError> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).comment(Some(b'#')).from_reader(reader);
    Ok(rdr.deserialize().collect::<Result<Vec<GridCell>, _>>()?)
}

fn run_instance(cell: &GridCell, cfg: &SearchConfig, seed: u64) -> Result<InstanceResult, BenchError> {
    let g = generate_system(cell.m, cell.n, seed)?;
    Ok(match run(&g.system, cfg) {
        Ok(out) => InstanceResult {
            seed,
            success: out.verdict.is_binary(),
            initially_failed: out.dag_used || !out.verdict.is_binary(),
            t_found: out.t_found,
            millis: out.wall_time.as_secs_f64() * 1e3,
            error: None,
        },
        Err(e) => InstanceResult {
            seed,
            success: false,
            initially_failed: true,
            t_found: None,
            millis: 0.0,
            error: Some(e.to_string()),
        },
    })
}

/// Runs one cell. Instances are processed in parallel and reported in seed order.
pub fn run_cell(cell: &GridCell, opts: &BenchOptions) -> Result<CellResult, BenchError> {
    let cfg = cell.config();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(opts.threads).build()?;
    let seeds: Vec<u64> = (0..cell.count as u64).map(|i| cell.seed + i).collect();
    let instances: Vec<InstanceResult> =
        pool.install(|| seeds.par_iter().map(|&s| run_instance(cell, &cfg, s)).collect::<Result<_, _>>())?;
    let successes = instances.iter().filter(|r| r.success).count();
    let ts: Vec<f64> = instances
        .iter()
        .filter(|r| r.initially_failed)
        .filter_map(|r| r.t_found.as_ref())
        .map(|t| t.to_string().parse::<f64>().unwrap_or(f64::NAN))
        .collect();
    let avg_valid_t = if cell.dag && !ts.is_empty() {
        format!("{:.3}", ts.iter().sum::<f64>() / ts.len() as f64)
    } else {
        String::new()
    };
    let avg_ms = if opts.timing && !instances.is_empty() {
        format!("{:.3}", instances.iter().map(|r| r.millis).sum::<f64>() / instances.len() as f64)
    } else {
        String::new()
    };
    let ratio = if cell.count == 0 {
        0.0
    } else {
        successes as f64 / cell.count as f64
    };
    Ok(CellResult {
        row: BenchRow {
            m: cell.m,
            n: cell.n,
            algo: cell.algo.to_string(),
            dag: cell.dag,
            modulus: cell.modulus.to_string(),
            t_max: cell.t_max,
            count: cell.count,
            successes,
            success_ratio: format!("{ratio:.4}"),
            avg_valid_t,
            avg_ms,
            seed0: cell.seed,
        },
        instances,
    })
}

pub const BENCH_HEADER: [&str; 12] = [
    "m", "n", "algo", "dag", "M", "t_max", "count", "successes", "success_ratio", "avg_valid_t", "avg_ms", "seed0",
];

pub fn write_rows<W: Write>(writer: W, rows: &[BenchRow]) -> Result<(), BenchError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(writer);
    w.write_record(BENCH_HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn bench<W: Write>(grid: &[GridCell], opts: &BenchOptions, out: W) -> Result<Vec<CellResult>, BenchError> {
    let results: Vec<CellResult> = grid.iter().map(|c| run_cell(c, opts)).collect::<Result<_, _>>()?;
    let rows: Vec<BenchRow> = results.iter().map(|r| r.row.clone()).collect();
    write_rows(out, &rows)?;
    Ok(results)
}

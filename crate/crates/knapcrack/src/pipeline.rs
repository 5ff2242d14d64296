//! Running an attack on a system, optionally followed by a search over
//! disaggregation parameters until a binary solution appears.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use knapcrack_core::attacks::{
    attack_ahl, attack_cjloss, attack_lo, default_ahl_n1, default_ahl_n2, is_binary, AttackVerdict, VerdictMeta,
};
use knapcrack_core::disagg::{build_disaggregated, DisaggParams};
use knapcrack_core::jumps::jump_points;
use knapcrack_core::kernel::{decompose, default_scale, special_solution};
use knapcrack_core::lattice::default_alpha;
use knapcrack_core::problem::{uncomplement, LdeSystem};
use knapcrack_core::reduce::{reduce, reduce_half};
use knapcrack_core::{BigInt, BigRational, Error};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algo {
    Reduce,
    ReduceHalf,
    Lo,
    Cjloss,
    Ahl,
}

impl Algo {
    pub const ALL: [Algo; 5] = [Algo::Reduce, Algo::ReduceHalf, Algo::Lo, Algo::Cjloss, Algo::Ahl];

    pub fn name(self) -> &'static str {
        match self {
            Algo::Reduce => "reduce",
            Algo::ReduceHalf => "reduce_half",
            Algo::Lo => "lo",
            Algo::Cjloss => "cjloss",
            Algo::Ahl => "ahl",
        }
    }
}

impl fmt::Display for Algo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algo {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let norm = s.trim().to_ascii_lowercase().replace('-', "_");
        Algo::ALL
            .into_iter()
            .find(|a| a.name() == norm)
            .ok_or_else(|| format!("unknown algorithm {s:?} (expected reduce, reduce-half, lo, cjloss or ahl)"))
    }
}

/// Order in which disaggregation ratios are tried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TSearch {
    /// `r = t/M` for `t = 1, 2, …, t_max` with the configured `M`.
    Sequential,
    /// The jump points of the chosen row in ascending order, optionally only
    /// the first `limit` of them.
    JumpPoints { limit: Option<usize> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub algo: Algo,
    pub use_dag: bool,
    pub modulus: BigInt,
    pub t_max: u64,
    pub alpha: BigRational,
    /// The scale `N` of the `[I; N·A]` and CJLOSS bases.
    pub scale: BigInt,
    pub seed: u64,
    /// Row of the system that is disaggregated.
    pub row: usize,
    pub search: TSearch,
}

/// `M` by problem size: `10^3` below 20 variables, `10^4` up to 35, `10^5` beyond.
pub fn default_modulus(n: usize) -> BigInt {
    BigInt::from(match n {
        0..=19 => 1_000u32,
        20..=35 => 10_000,
        _ => 100_000,
    })
}

impl SearchConfig {
    pub fn new(algo: Algo) -> Self {
        Self {
            algo,
            use_dag: false,
            modulus: BigInt::from(1_000),
            t_max: 200,
            alpha: default_alpha(),
            scale: default_scale(),
            seed: 0,
            row: 0,
            search: TSearch::Sequential,
        }
    }

    pub fn with_dag(mut self, modulus: BigInt, t_max: u64) -> Self {
        self.use_dag = true;
        self.modulus = modulus;
        self.t_max = t_max;
        self
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        if self.use_dag && self.search == TSearch::Sequential && BigInt::from(self.t_max) >= self.modulus {
            return Err(PipelineError::InvalidConfig(format!(
                "t_max ({}) must be below M ({})",
                self.t_max, self.modulus
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AttackOutcome {
    pub verdict: AttackVerdict,
    pub dag_used: bool,
    /// The `t` (and its `M`) of the disaggregation that produced the solution.
    pub t_found: Option<BigInt>,
    pub modulus_found: Option<BigInt>,
    /// Number of disaggregated systems attacked.
    pub attempts: u64,
    pub wall_time: Duration,
}

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no binary solution after {attempts} disaggregations")]
    SearchExhausted {
        best: Option<Vec<BigInt>>,
        attempts: u64,
    },
}

/// One run of the configured algorithm on `sys` as given.
pub fn solve_once(sys: &LdeSystem, cfg: &SearchConfig) -> Result<AttackVerdict, Error> {
    match cfg.algo {
        Algo::Reduce | Algo::ReduceHalf => {
            let kd = decompose(sys, &cfg.scale, &cfg.alpha)?;
            let Some(xb) = special_solution(&kd, sys.rhs())? else {
                return Ok(AttackVerdict::no_integer_solution(VerdictMeta::default()));
            };
            let x = if cfg.algo == Algo::Reduce {
                reduce(&xb, &kd.d)?
            } else {
                reduce_half(&xb, &kd.d)?
            };
            AttackVerdict::from_solution(sys, x, VerdictMeta::default())
        }
        Algo::Lo => attack_lo(sys, &cfg.alpha),
        Algo::Cjloss => attack_cjloss(sys, &cfg.scale, &cfg.alpha),
        Algo::Ahl => {
            let n1 = default_ahl_n1();
            let n2 = default_ahl_n2(sys.n(), sys.m(), &n1);
            attack_ahl(sys, &n1, &n2, &cfg.alpha)
        }
    }
}

/// A single equation with `b > Σa/2` is replaced by its complement.
fn normalize(sys: &LdeSystem) -> (LdeSystem, bool) {
    if sys.m() == 1 {
        let eq = sys.equation(0).expect("row 0 exists");
        if BigInt::from(2) * eq.rhs > eq.coeffs.iter().sum::<BigInt>() {
            return (sys.complement().expect("single row"), true);
        }
    }
    (sys.clone(), false)
}

fn restore(sys: &LdeSystem, x: &[BigInt], flipped: bool, mut meta: VerdictMeta) -> Result<AttackVerdict, Error> {
    if flipped {
        meta.complemented = true;
        AttackVerdict::from_solution(sys, uncomplement(x), meta)
    } else {
        AttackVerdict::from_solution(sys, x.to_vec(), meta)
    }
}

/// Runs the configured algorithm once, complementing single equations whose
/// target exceeds half the weight sum.
pub fn attack(sys: &LdeSystem, cfg: &SearchConfig) -> Result<AttackOutcome, PipelineError> {
    let start = Instant::now();
    let (work, flipped) = normalize(sys);
    let v = solve_once(&work, cfg)?;
    let verdict = match v.solution() {
        Some(x) => restore(sys, x, flipped, v.meta.clone())?,
        None => v,
    };
    Ok(AttackOutcome {
        verdict,
        dag_used: false,
        t_found: None,
        modulus_found: None,
        attempts: 0,
        wall_time: start.elapsed(),
    })
}

fn norm_sq(x: &[BigInt]) -> BigInt {
    x.iter().map(|v| v * v).sum()
}

/// [`attack`], then on a non-binary outcome one disaggregated system per
/// ratio from the configured search, accepting the first whose leading `n`
/// coordinates form a binary solution of `sys` itself.
pub fn attack_with_dag(sys: &LdeSystem, cfg: &SearchConfig) -> Result<AttackOutcome, PipelineError> {
    cfg.validate()?;
    let start = Instant::now();
    let initial = attack(sys, cfg)?;
    if initial.verdict.is_binary() {
        return Ok(initial);
    }
    let mut best: Option<Vec<BigInt>> = initial.verdict.solution().map(<[BigInt]>::to_vec);
    let (work, flipped) = normalize(sys);
    let n = sys.n();
    let candidates: Box<dyn Iterator<Item = DisaggParams>> = match &cfg.search {
        TSearch::Sequential => {
            let modulus = cfg.modulus.clone();
            let top = cfg.t_max;
            Box::new((1..=top).filter_map(move |t| DisaggParams::new(t.into(), modulus.clone()).ok()))
        }
        TSearch::JumpPoints { limit } => {
            let eq = work.equation(cfg.row)?;
            // Materialize lazily but detach from the borrow of `work`.
            let pts = jump_points(eq).take(limit.unwrap_or(usize::MAX)).map(|p| {
                DisaggParams::new(p.value.numer().clone(), p.value.denom().clone()).expect("jump points lie in (0,1)")
            });
            Box::new(pts.collect::<Vec<_>>().into_iter())
        }
    };
    let mut attempts = 0u64;
    for p in candidates {
        let ds = match build_disaggregated(&work, cfg.row, &p) {
            Ok(ds) => ds,
            Err(Error::RankDeficient | Error::InvalidParams(_) | Error::InvalidProblem(_)) => continue,
            Err(e) => return Err(e.into()),
        };
        attempts += 1;
        let v = match solve_once(&ds.system, cfg) {
            Ok(v) => v,
            Err(Error::EscalationExhausted { .. } | Error::RankDeficient) => continue,
            Err(e) => return Err(e.into()),
        };
        let Some(x) = v.solution() else { continue };
        let prefix = &x[..n];
        let candidate = if flipped { uncomplement(prefix) } else { prefix.to_vec() };
        if !sys.is_solution(&candidate) {
            continue;
        }
        if is_binary(&candidate) {
            let meta = VerdictMeta {
                complemented: flipped,
                ..v.meta.clone()
            };
            return Ok(AttackOutcome {
                verdict: AttackVerdict::binary(sys, candidate, meta)?,
                dag_used: true,
                t_found: Some(p.t().clone()),
                modulus_found: Some(p.modulus().clone()),
                attempts,
                wall_time: start.elapsed(),
            });
        }
        if best.as_ref().is_none_or(|b| norm_sq(&candidate) < norm_sq(b)) {
            best = Some(candidate);
        }
    }
    Err(PipelineError::SearchExhausted { best, attempts })
}

/// [`attack`] or [`attack_with_dag`] depending on `cfg.use_dag`, folding an
/// exhausted search into a non-binary or failed verdict.
pub fn run(sys: &LdeSystem, cfg: &SearchConfig) -> Result<AttackOutcome, PipelineError> {
    if !cfg.use_dag {
        return attack(sys, cfg);
    }
    let start = Instant::now();
    match attack_with_dag(sys, cfg) {
        Err(PipelineError::SearchExhausted { best, attempts }) => {
            let verdict = match best {
                Some(x) => AttackVerdict::from_solution(sys, x, VerdictMeta::default())?,
                None => AttackVerdict::failure(VerdictMeta::default()),
            };
            Ok(AttackOutcome {
                verdict,
                dag_used: true,
                t_found: None,
                modulus_found: None,
                attempts,
                wall_time: start.elapsed(),
            })
        }
        other => other,
    }
}

/// Applies the given `(row, (t, M))` disaggregations one after another.
pub fn disaggregate_rows(sys: &LdeSystem, steps: &[(usize, DisaggParams)]) -> Result<LdeSystem, Error> {
    let mut cur = sys.clone();
    for (row, p) in steps {
        cur = build_disaggregated(&cur, *row, p)?.system;
    }
    Ok(cur)
}

/// Attacks the system produced by [`disaggregate_rows`] and reports the
/// leading `n` coordinates as a solution of `sys`.
pub fn attack_scenario(
    sys: &LdeSystem,
    steps: &[(usize, DisaggParams)],
    cfg: &SearchConfig,
) -> Result<AttackOutcome, PipelineError> {
    let start = Instant::now();
    let augmented = disaggregate_rows(sys, steps)?;
    let v = solve_once(&augmented, cfg)?;
    let verdict = match v.solution() {
        Some(x) => AttackVerdict::from_solution(sys, x[..sys.n()].to_vec(), v.meta.clone())?,
        None => v,
    };
    let last = steps.last();
    Ok(AttackOutcome {
        verdict,
        dag_used: true,
        t_found: last.map(|(_, p)| p.t().clone()),
        modulus_found: last.map(|(_, p)| p.modulus().clone()),
        attempts: 1,
        wall_time: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use knapcrack_core::attacks::VerdictStatus;
    use knapcrack_core::ints;

    fn toy() -> LdeSystem {
        LdeSystem::from_i64(&[&[3, 15, 6]], &[9]).unwrap()
    }

    #[test]
    fn algo_names() {
        assert_eq!("reduce-half".parse::<Algo>().unwrap(), Algo::ReduceHalf);
        assert_eq!("CJLOSS".parse::<Algo>().unwrap(), Algo::Cjloss);
        assert!("bkz".parse::<Algo>().is_err());
    }

    #[test]
    fn reduce_half_on_toy() {
        let out = attack(&toy(), &SearchConfig::new(Algo::ReduceHalf)).unwrap();
        assert_eq!(out.verdict.status(), &VerdictStatus::BinarySolution(ints(&[1, 0, 1])));
    }

    #[test]
    fn no_integer_solution() {
        let sys = LdeSystem::from_i64(&[&[2, 4, 6]], &[5]).unwrap();
        let out = attack(&sys, &SearchConfig::new(Algo::Reduce)).unwrap();
        assert_eq!(out.verdict.status(), &VerdictStatus::NoIntegerSolution);
    }

    #[test]
    fn complement_is_used_for_large_targets() {
        let sys = LdeSystem::from_i64(&[&[3, 15, 6]], &[15]).unwrap();
        let out = attack(&sys, &SearchConfig::new(Algo::ReduceHalf)).unwrap();
        assert!(out.verdict.meta.complemented);
        assert!(sys.is_solution(out.verdict.solution().unwrap()));
    }

    #[test]
    fn config_validation() {
        let cfg = SearchConfig::new(Algo::Reduce).with_dag(BigInt::from(10), 10);
        assert!(matches!(cfg.validate(), Err(PipelineError::InvalidConfig(_))));
    }

    #[test]
    fn jump_point_search_on_toy() {
        let mut cfg = SearchConfig::new(Algo::Reduce);
        cfg.use_dag = true;
        cfg.search = TSearch::JumpPoints { limit: None };
        let out = attack_with_dag(&toy(), &cfg).unwrap();
        assert_eq!(out.verdict.status(), &VerdictStatus::BinarySolution(ints(&[1, 0, 1])));
    }
}

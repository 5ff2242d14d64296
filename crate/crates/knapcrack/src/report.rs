//! Machine-readable attack reports.

use knapcrack_core::attacks::{AttackVerdict, VerdictMeta, VerdictStatus};
use knapcrack_core::problem::LdeSystem;
use knapcrack_core::{BigInt, Error};
use serde::{Deserialize, Serialize};

use crate::pipeline::AttackOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    BinarySolution,
    ShortNonBinary,
    NoIntegerSolution,
    Failure,
}

/// Integers are written as decimal strings so that no precision is lost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub status: Status,
    pub solution: Option<Vec<String>>,
    pub complemented: bool,
    pub column: Option<usize>,
    pub lambda: Option<String>,
    pub dag_used: bool,
    pub t_found: Option<String>,
    #[serde(rename = "M")]
    pub modulus: Option<String>,
    pub attempts: u64,
    pub wall_us: u64,
}

fn strs(x: &[BigInt]) -> Vec<String> {
    x.iter().map(ToString::to_string).collect()
}

fn big(s: &str) -> Result<BigInt, Error> {
    s.parse().map_err(|_| Error::InvalidBigInts)
}

impl Report {
    pub fn from_outcome(out: &AttackOutcome) -> Self {
        let (status, solution) = match out.verdict.status() {
            VerdictStatus::BinarySolution(x) => (Status::BinarySolution, Some(strs(x))),
            VerdictStatus::ShortNonBinary(x) => (Status::ShortNonBinary, Some(strs(x))),
            VerdictStatus::NoIntegerSolution => (Status::NoIntegerSolution, None),
            VerdictStatus::Failure => (Status::Failure, None),
        };
        let meta = &out.verdict.meta;
        Self {
            status,
            solution,
            complemented: meta.complemented,
            column: meta.column,
            lambda: meta.lambda.as_ref().map(ToString::to_string),
            dag_used: out.dag_used,
            t_found: out.t_found.as_ref().map(ToString::to_string),
            modulus: out.modulus_found.as_ref().map(ToString::to_string),
            attempts: out.attempts,
            wall_us: u64::try_from(out.wall_time.as_micros()).unwrap_or(u64::MAX),
        }
    }

    /// Rebuilds the verdict, re-checking any solution against `sys`.
    pub fn to_verdict(&self, sys: &LdeSystem) -> Result<AttackVerdict, Error> {
        let meta = VerdictMeta {
            complemented: self.complemented,
            column: self.column,
            lambda: self.lambda.as_deref().map(big).transpose()?,
        };
        let solution = || -> Result<Vec<BigInt>, Error> {
            self.solution.as_deref().ok_or(Error::NotASolution)?.iter().map(|s| big(s)).collect()
        };
        match self.status {
            Status::BinarySolution => AttackVerdict::binary(sys, solution()?, meta),
            Status::ShortNonBinary => {
                let v = AttackVerdict::from_solution(sys, solution()?, meta)?;
                if v.is_binary() {
                    Err(Error::NotASolution)
                } else {
                    Ok(v)
                }
            }
            Status::NoIntegerSolution => Ok(AttackVerdict::no_integer_solution(meta)),
            Status::Failure => Ok(AttackVerdict::failure(meta)),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }
}

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("basis column {column} is linearly dependent on the preceding columns")]
    DependentColumns { column: usize },
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("LLL parameter alpha must satisfy 1/4 < alpha < 1")]
    InvalidAlpha,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is rank deficient")]
    RankDeficient,
    #[error("zero block never appeared after {escalations} escalations of N")]
    EscalationExhausted { escalations: usize },
    #[error("the E block of the kernel decomposition is singular")]
    SingularE,
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("invalid disaggregation parameters: {0}")]
    InvalidParams(String),
    #[error("CJLOSS scale N must exceed sqrt(n)/2")]
    InvalidN,
    #[error("AHL constants must satisfy N2 > 2^(n+m) * N1^2")]
    InvalidBigInts,
    #[error("row index {0} out of range")]
    InvalidRow(usize),
    #[error("jump point enumeration exceeded the cap of {cap} points")]
    SizeLimit { cap: usize },
    #[error("vector does not satisfy the equation")]
    NotASolution,
    #[error("the two rationals are not neighbouring jump points")]
    NotNeighbours,
}

//! Plain-text instance files.
//!
//! ```text
//! m n
//! a_11 ... a_1n
//! ...
//! a_m1 ... a_mn
//! b_1 ... b_m
//! ```
//!
//! Lines starting with `#` are comments and are skipped on read.

use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use knapcrack_core::disagg::DisaggregatedSystem;
use knapcrack_core::problem::LdeSystem;
use knapcrack_core::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

fn parse_err(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Parse {
        line,
        message: message.into(),
    }
}

fn parse_ints(line: usize, text: &str) -> Result<Vec<BigInt>, FormatError> {
    text.split_whitespace()
        .map(|tok| BigInt::from_str(tok).map_err(|_| parse_err(line, format!("not an integer: {tok:?}"))))
        .collect()
}

pub fn parse_system(text: &str) -> Result<LdeSystem, FormatError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, header) = lines.next().ok_or_else(|| parse_err(1, "empty input"))?;
    let dims = parse_ints(ln, header)?;
    let [m, n] = &dims[..] else {
        return Err(parse_err(ln, "header must be `m n`"));
    };
    let to_usize = |v: &BigInt| usize::try_from(v).map_err(|_| parse_err(ln, "dimensions must be non-negative"));
    let (m, n) = (to_usize(m)?, to_usize(n)?);
    let mut rows = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines.next().ok_or_else(|| parse_err(ln, "missing row of A"))?;
        let row = parse_ints(ln, line)?;
        if row.len() != n {
            return Err(parse_err(ln, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    let (bl, bline) = lines.next().ok_or_else(|| parse_err(ln, "missing right-hand side"))?;
    let rhs = parse_ints(bl, bline)?;
    if rhs.len() != m {
        return Err(parse_err(bl, format!("expected {m} right-hand side entries, found {}", rhs.len())));
    }
    if let Some((extra, _)) = lines.next() {
        return Err(parse_err(extra, "unexpected trailing content"));
    }
    LdeSystem::new(rows, rhs).map_err(|e| parse_err(bl, e.to_string()))
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

pub fn format_system(sys: &LdeSystem) -> String {
    let mut out = format!("{} {}\n", sys.m(), sys.n());
    for row in sys.rows() {
        out.push_str(&join(row));
        out.push('\n');
    }
    out.push_str(&join(sys.rhs()));
    out.push('\n');
    out
}

/// The augmented system, preceded by a comment recording how it was built.
pub fn format_disaggregated(ds: &DisaggregatedSystem) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# t={} M={} row={} u_k={} n_k={}",
        ds.params.t(),
        ds.params.modulus(),
        ds.row_index,
        ds.image.uk,
        ds.k_count
    );
    out.push_str(&format_system(&ds.system));
    out
}

pub fn read_system(path: &Path) -> Result<LdeSystem, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_system(&text)
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    std::fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

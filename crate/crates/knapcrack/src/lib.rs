//! Lattice attacks on binary linear Diophantine systems, with the
//! disaggregation search, instance generators, benchmarks and feature export.

pub mod bench;
pub mod brute;
pub mod cli;
pub mod features;
pub mod format;
pub mod generate;
pub mod pipeline;
pub mod report;

//! Configuration ingestion, report assembly and the verification suites
//! driven by the `lorentz3` binary.

// the suites index tensors with explicit loops, like the library
#![allow(clippy::needless_range_loop)]

pub mod config;
pub mod report;
pub mod suites;

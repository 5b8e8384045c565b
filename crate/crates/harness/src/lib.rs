//! Sweep harness, report formats, and CLI for the domination lab.
//!
//! The algorithmic substrate lives in `domlab-core`; this crate adds
//! everything that talks to the outside world: instance enumeration and
//! random families, the parallel sweep driver with its line-delimited JSON
//! reports, and the `domlab` command-line tool.

pub mod cli;
pub mod enumerate;
pub mod families;
pub mod input;
pub mod report;
pub mod sweep;

//! Library half of the `tomolab` binary: configuration, seed streams, the
//! command implementations, and artifact writers. The binary is a thin clap
//! wrapper; integration and acceptance tests drive the commands in-process
//! through this crate.

pub mod commands;
pub mod config;
pub mod csvio;
pub mod error;
pub mod meta;
pub mod runner;
pub mod seeds;
pub mod svg;

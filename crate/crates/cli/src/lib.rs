//! Command line, file formats and experiment runners for `outerspace-core`.
//!
//! Text forms (`"abAB"`, `"a->ab; b->b"`), marked graphs as JSON, JSON
//! reports with exact rationals as `"p/q"` strings, CSV tables and SVG
//! plots all live here; the core crate does no IO.

pub mod cli;
pub mod commands;
pub mod error;
pub mod experiments;
pub mod graph_json;
pub mod report;
pub mod suite;
pub mod svg;
pub mod text;

pub use commands::{run, Output, Status};
pub use error::{CliError, Result};

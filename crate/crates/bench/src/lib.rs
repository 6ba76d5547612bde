//! Benchmark and verification harness behind the `cc` command: ablation runs
//! over the four engines, segment-count sweeps, label verification and graph
//! generation, with JSON or CSV reports.

pub mod commands;
pub mod config;
pub mod error;
pub mod report;

pub use commands::{cmd_generate, cmd_run, cmd_sweep, cmd_verify, read_labels, write_labels};
pub use config::{GraphSource, ReportFormat, RunConfig, WorkerCount};
pub use error::BenchError;
pub use report::{emit_report, Report, RunReport, SweepRow, SweepTable};

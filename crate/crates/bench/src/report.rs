//! Machine-readable reports.
//!
//! Field names and their order are part of the output contract (see the
//! README). Floats are rounded to 6 significant digits; times are in
//! milliseconds.

use std::fmt::Write as _;

use serde::{Serialize, Serializer};

use crate::config::ReportFormat;

/// Rounds to 6 significant digits.
pub fn sig6(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.5e}").parse().unwrap_or(x)
}

fn ser_sig6<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(sig6(*x))
}

fn ser_sig6_opt<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&sig6(*x)),
        None => s.serialize_none(),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhaseReport {
    #[serde(serialize_with = "ser_sig6")]
    pub hook_ms: f64,
    #[serde(serialize_with = "ser_sig6")]
    pub compress_ms: f64,
    pub cas_failures: u64,
    pub hook_traversal_steps: u64,
    pub jump_steps: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub algo: String,
    pub n: usize,
    pub m: usize,
    pub s: usize,
    pub workers: usize,
    /// Fastest repetition.
    #[serde(serialize_with = "ser_sig6")]
    pub total_ms: f64,
    #[serde(serialize_with = "ser_sig6")]
    pub hook_ms: f64,
    #[serde(serialize_with = "ser_sig6")]
    pub compress_ms: f64,
    pub cas_failures: u64,
    pub hook_traversal_steps: u64,
    pub jump_steps: u64,
    pub components: usize,
    pub s_requested: usize,
    #[serde(serialize_with = "ser_sig6")]
    pub median_ms: f64,
    #[serde(serialize_with = "ser_sig6")]
    pub init_ms: f64,
    pub rounds: usize,
    pub jump_passes: usize,
    pub reps: usize,
    /// `None` when verification was skipped.
    pub verified: Option<bool>,
    #[serde(serialize_with = "ser_sig6")]
    pub avg_degree: f64,
    pub max_degree: usize,
    pub m_unique: usize,
    pub source: String,
    pub phases: Vec<PhaseReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    /// Segments used, after clamping to the edge count.
    pub s: usize,
    #[serde(serialize_with = "ser_sig6")]
    pub total_ms: f64,
    #[serde(serialize_with = "ser_sig6_opt")]
    pub speedup_vs_s1: Option<f64>,
    pub verified: bool,
    pub s_requested: usize,
    /// True for the row produced by the average-degree heuristic.
    pub auto: bool,
    pub clamped: bool,
    #[serde(serialize_with = "ser_sig6")]
    pub median_ms: f64,
    #[serde(serialize_with = "ser_sig6")]
    pub hook_ms: f64,
    #[serde(serialize_with = "ser_sig6")]
    pub compress_ms: f64,
    pub cas_failures: u64,
    pub hook_traversal_steps: u64,
    pub jump_steps: u64,
    pub components: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepTable {
    pub source: String,
    pub n: usize,
    pub m: usize,
    pub workers: usize,
    #[serde(serialize_with = "ser_sig6")]
    pub avg_degree: f64,
    pub auto_s: usize,
    pub rows: Vec<SweepRow>,
}

impl SweepTable {
    pub fn all_verified(&self) -> bool {
        self.rows.iter().all(|r| r.verified)
    }

    pub fn row_for(&self, s: usize) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.s == s && !r.auto)
    }

    pub fn auto_row(&self) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.auto)
    }
}

pub enum Report<'a> {
    Run(&'a RunReport),
    Sweep(&'a SweepTable),
}

pub const RUN_CSV_HEADER: &str = "algo,n,m,s,workers,total_ms,hook_ms,compress_ms,cas_failures,\
hook_traversal_steps,jump_steps,components,s_requested,median_ms,init_ms,rounds,jump_passes,reps,\
verified,avg_degree,max_degree,m_unique,source";

pub const SWEEP_CSV_HEADER: &str = "s,total_ms,speedup_vs_s1,verified";

fn csv_field(value: &str) -> String {
    if value.contains([',', '"', '\n']) {
        format!("\"{}\"", value.replace('"', "\"\""))
    } else {
        value.to_string()
    }
}

pub fn emit_report(report: Report<'_>, format: ReportFormat) -> String {
    match (report, format) {
        (Report::Run(run), ReportFormat::Json) => {
            serde_json::to_string_pretty(run).expect("report serializes")
        }
        (Report::Sweep(table), ReportFormat::Json) => {
            serde_json::to_string_pretty(table).expect("report serializes")
        }
        (Report::Run(r), ReportFormat::Csv) => {
            let verified = r.verified.map(|v| v.to_string()).unwrap_or_default();
            format!(
                "{RUN_CSV_HEADER}\n{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}\n",
                r.algo,
                r.n,
                r.m,
                r.s,
                r.workers,
                sig6(r.total_ms),
                sig6(r.hook_ms),
                sig6(r.compress_ms),
                r.cas_failures,
                r.hook_traversal_steps,
                r.jump_steps,
                r.components,
                r.s_requested,
                sig6(r.median_ms),
                sig6(r.init_ms),
                r.rounds,
                r.jump_passes,
                r.reps,
                verified,
                sig6(r.avg_degree),
                r.max_degree,
                r.m_unique,
                csv_field(&r.source),
            )
        }
        (Report::Sweep(table), ReportFormat::Csv) => {
            let mut out = format!("{SWEEP_CSV_HEADER}\n");
            for row in &table.rows {
                let speedup = row
                    .speedup_vs_s1
                    .map(|x| sig6(x).to_string())
                    .unwrap_or_default();
                writeln!(
                    out,
                    "{},{},{},{}",
                    row.s,
                    sig6(row.total_ms),
                    speedup,
                    row.verified
                )
                .unwrap();
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn six_significant_digits() {
        assert_eq!(sig6(1.234_567_89), 1.23457);
        assert_eq!(sig6(123_456_789.0), 123_457_000.0);
        assert_eq!(sig6(0.000_123_456_78), 0.000_123_457);
        assert_eq!(sig6(0.0), 0.0);
        assert_eq!(sig6(2.5), 2.5);
    }

    #[test]
    fn empty_sweep_is_header_only() {
        let table = SweepTable {
            source: "x".into(),
            n: 0,
            m: 0,
            workers: 1,
            avg_degree: 0.0,
            auto_s: 1,
            rows: vec![],
        };
        assert_eq!(
            emit_report(Report::Sweep(&table), ReportFormat::Csv),
            "s,total_ms,speedup_vs_s1,verified\n"
        );
    }

    #[test]
    fn csv_quotes_fields_with_commas() {
        assert_eq!(csv_field("er:n=1,m=2"), "\"er:n=1,m=2\"");
        assert_eq!(csv_field("grid:2x2"), "grid:2x2");
    }
}

use std::fmt;
use std::fs::File;
use std::io::BufReader;
use std::path::PathBuf;
use std::str::FromStr;

use cc_core::io::{parse_dimacs, parse_edge_list, parse_matrix_market, Format};
use cc_core::pool::hardware_concurrency;
use cc_core::{Algorithm, GeneratorSpec, Graph, Segments, WorkerPool};

use crate::error::{BenchError, Result};

#[derive(Clone, Debug, PartialEq)]
pub enum GraphSource {
    File {
        path: PathBuf,
        format: Format,
        /// Edge lists only: first non-comment line is `n m`.
        header: bool,
    },
    Generated(GeneratorSpec),
}

impl GraphSource {
    pub fn load(&self) -> Result<Graph> {
        match self {
            GraphSource::File {
                path,
                format,
                header,
            } => {
                let file = File::open(path).map_err(BenchError::io(path))?;
                let reader = BufReader::new(file);
                let parsed = match format {
                    Format::EdgeList => parse_edge_list(reader, *header),
                    Format::Dimacs => parse_dimacs(reader),
                    Format::MatrixMarket => parse_matrix_market(reader),
                };
                parsed.map_err(|source| BenchError::Graph {
                    path: path.clone(),
                    source,
                })
            }
            GraphSource::Generated(spec) => spec.generate().map_err(BenchError::Generator),
        }
    }
}

impl fmt::Display for GraphSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSource::File { path, format, .. } => write!(f, "{}:{format}", path.display()),
            GraphSource::Generated(spec) => write!(f, "{spec}"),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WorkerCount {
    #[default]
    Max,
    Fixed(usize),
}

impl WorkerCount {
    pub fn resolve(self) -> usize {
        match self {
            WorkerCount::Max => hardware_concurrency(),
            WorkerCount::Fixed(n) => n,
        }
    }

    pub fn pool(self) -> Result<WorkerPool> {
        Ok(WorkerPool::new(self.resolve())?)
    }
}

impl FromStr for WorkerCount {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "max" => Ok(WorkerCount::Max),
            _ => match s.parse::<usize>() {
                Ok(0) => Err("worker count must be at least 1".into()),
                Ok(n) => Ok(WorkerCount::Fixed(n)),
                Err(_) => Err(format!("`{s}` is neither `max` nor a worker count")),
            },
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(format!("unknown report format `{s}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub source: GraphSource,
    pub algorithm: Algorithm,
    pub segments: Segments,
    pub workers: WorkerCount,
    pub repetitions: usize,
    pub verify: bool,
    pub labels_out: Option<PathBuf>,
    pub metrics_out: Option<PathBuf>,
    pub report: ReportFormat,
}

impl RunConfig {
    pub fn new(source: GraphSource) -> Self {
        RunConfig {
            source,
            algorithm: Algorithm::Adaptive,
            segments: Segments::Auto,
            workers: WorkerCount::Max,
            repetitions: 1,
            verify: true,
            labels_out: None,
            metrics_out: None,
            report: ReportFormat::Json,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(BenchError::Usage("--reps must be at least 1".into()));
        }
        if self.segments == Segments::Explicit(0) {
            return Err(BenchError::Usage("--segments must be at least 1".into()));
        }
        if self.workers == WorkerCount::Fixed(0) {
            return Err(BenchError::Usage("--workers must be at least 1".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worker_counts() {
        assert_eq!("max".parse::<WorkerCount>().unwrap(), WorkerCount::Max);
        assert_eq!("3".parse::<WorkerCount>().unwrap(), WorkerCount::Fixed(3));
        assert!("0".parse::<WorkerCount>().is_err());
        assert!(WorkerCount::Max.resolve() >= 1);
    }

    #[test]
    fn validation() {
        let mut config = RunConfig::new(GraphSource::Generated(GeneratorSpec::Grid {
            rows: 2,
            cols: 2,
        }));
        assert!(config.validate().is_ok());
        config.repetitions = 0;
        assert_eq!(config.validate().unwrap_err().exit_code(), 2);
    }

    #[test]
    fn missing_file_is_an_io_error() {
        let source = GraphSource::File {
            path: "does/not/exist.el".into(),
            format: Format::EdgeList,
            header: false,
        };
        let err = source.load().unwrap_err();
        assert!(matches!(err, BenchError::Io { .. }));
        assert_eq!(err.exit_code(), 3);
    }
}

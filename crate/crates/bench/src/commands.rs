use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use cc_core::io::{write_dimacs, write_edge_list, write_matrix_market, Format};
use cc_core::{
    choose_segment_count, oracle_cc, partition_mismatch, partitions_equal, run, Algorithm,
    ComponentLabeling, GeneratorSpec, Graph, PartitionWitness, RunMetrics, Segments, Vertex,
};

use crate::config::{GraphSource, RunConfig};
use crate::error::{BenchError, Result};
use crate::report::{emit_report, PhaseReport, Report, RunReport, SweepRow, SweepTable};

/// Writes one `<vertex> <label>` line per vertex.
pub fn write_labels(labels: &ComponentLabeling, out: impl Write) -> io::Result<()> {
    let mut out = BufWriter::new(out);
    for (v, label) in labels.labels().iter().enumerate() {
        writeln!(out, "{v} {label}")?;
    }
    out.flush()
}

/// Reads a label file. Every vertex `0..k` must appear exactly once, in any
/// order; `#` lines are comments.
pub fn read_labels(path: &Path) -> Result<ComponentLabeling> {
    let file = File::open(path).map_err(BenchError::io(path))?;
    let bad = |line: usize, message: String| BenchError::LabelsFile {
        path: path.to_path_buf(),
        line,
        message,
    };
    let mut slots: Vec<Option<Vertex>> = Vec::new();
    for (index, line) in BufReader::new(file).lines().enumerate() {
        let line_no = index + 1;
        let line = line.map_err(BenchError::io(path))?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = text.split_whitespace().collect();
        let [vertex, label] = fields[..] else {
            return Err(bad(line_no, "expected `<vertex> <label>`".into()));
        };
        let parse = |s: &str| {
            s.parse::<Vertex>()
                .map_err(|_| bad(line_no, format!("`{s}` is not a vertex index")))
        };
        let (vertex, label) = (parse(vertex)? as usize, parse(label)?);
        if vertex >= slots.len() {
            slots.resize(vertex + 1, None);
        }
        if slots[vertex].replace(label).is_some() {
            return Err(bad(line_no, format!("vertex {vertex} listed twice")));
        }
    }
    let labels = slots
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| bad(0, format!("vertex {v} has no label"))))
        .collect::<Result<Vec<_>>>()?;
    Ok(ComponentLabeling::arbitrary(labels))
}

fn write_file(path: &Path, contents: impl FnOnce(&mut File) -> io::Result<()>) -> Result<()> {
    let mut file = File::create(path).map_err(BenchError::io(path))?;
    contents(&mut file).map_err(BenchError::io(path))
}

fn median(sorted: &[f64]) -> f64 {
    match sorted.len() {
        0 => 0.0,
        n if n % 2 == 1 => sorted[n / 2],
        n => (sorted[n / 2 - 1] + sorted[n / 2]) / 2.0,
    }
}

/// Repeats one configuration and keeps the fastest run's metrics.
struct Repeated {
    best: RunMetrics,
    median_ms: f64,
    labels: ComponentLabeling,
    verified: Option<bool>,
}

fn repeat(
    graph: &Graph,
    algo: Algorithm,
    segments: Segments,
    pool: &cc_core::WorkerPool,
    reps: usize,
    oracle: Option<&ComponentLabeling>,
) -> Result<Repeated> {
    let mut times = Vec::with_capacity(reps);
    let mut best: Option<RunMetrics> = None;
    let mut verified = oracle.map(|_| true);
    let mut last_labels = ComponentLabeling::canonical(Vec::new());
    for _ in 0..reps {
        let (labels, metrics) = run(algo, graph, segments, pool);
        if let Some(expected) = oracle {
            if !partitions_equal(&labels, expected)? {
                verified = Some(false);
            }
        }
        times.push(metrics.total_ms);
        if best.as_ref().is_none_or(|b| metrics.total_ms < b.total_ms) {
            best = Some(metrics);
        }
        last_labels = labels;
    }
    times.sort_by(f64::total_cmp);
    Ok(Repeated {
        best: best.expect("at least one repetition"),
        median_ms: median(&times),
        labels: last_labels,
        verified,
    })
}

pub struct RunOutcome {
    pub report: RunReport,
    pub labels: ComponentLabeling,
}

impl RunOutcome {
    pub fn verification_failed(&self) -> bool {
        self.report.verified == Some(false)
    }
}

/// Runs the configured engine `repetitions` times, checks every result
/// against the union-find oracle unless disabled, and writes the optional
/// label and metrics files. Timing covers forest initialization and the
/// engine, not loading or verification.
pub fn cmd_run(config: &RunConfig) -> Result<RunOutcome> {
    config.validate()?;
    let graph = config.source.load()?;
    let stats = graph.stats().clone();
    let pool = config.workers.pool()?;
    let oracle = config.verify.then(|| oracle_cc(&graph));

    let repeated = repeat(
        &graph,
        config.algorithm,
        config.segments,
        &pool,
        config.repetitions,
        oracle.as_ref(),
    )?;
    let m = &repeated.best;
    let report = RunReport {
        algo: m.algo.to_string(),
        n: m.n,
        m: m.m,
        s: m.s,
        workers: m.workers,
        total_ms: m.total_ms,
        hook_ms: m.hook_ms,
        compress_ms: m.compress_ms,
        cas_failures: m.counters.cas_failures,
        hook_traversal_steps: m.counters.hook_traversal_steps,
        jump_steps: m.counters.jump_steps,
        components: m.components,
        s_requested: m.s_requested,
        median_ms: repeated.median_ms,
        init_ms: m.init_ms,
        rounds: m.rounds,
        jump_passes: m.jump_passes,
        reps: config.repetitions,
        verified: repeated.verified,
        avg_degree: stats.avg_degree,
        max_degree: stats.max_degree,
        m_unique: stats.m_unique,
        source: config.source.to_string(),
        phases: m
            .phases
            .iter()
            .map(|p| PhaseReport {
                hook_ms: p.hook_ms,
                compress_ms: p.compress_ms,
                cas_failures: p.counters.cas_failures,
                hook_traversal_steps: p.counters.hook_traversal_steps,
                jump_steps: p.counters.jump_steps,
            })
            .collect(),
    };

    if let Some(path) = &config.labels_out {
        write_file(path, |f| write_labels(&repeated.labels, f))?;
    }
    if let Some(path) = &config.metrics_out {
        let text = emit_report(Report::Run(&report), config.report);
        write_file(path, |f| f.write_all(text.as_bytes()))?;
    }
    Ok(RunOutcome {
        report,
        labels: repeated.labels,
    })
}

/// Powers of two up to twice the heuristic's choice, then twice the choice
/// itself.
pub fn default_sweep_segments(auto: usize) -> Vec<usize> {
    let limit = 2 * auto.max(1);
    let mut list: Vec<usize> = std::iter::successors(Some(1usize), |s| s.checked_mul(2))
        .take_while(|&s| s <= limit)
        .collect();
    if list.last() != Some(&limit) {
        list.push(limit);
    }
    list
}

/// Adaptive runs over a list of segment counts plus the heuristic's count.
/// `s = 1` is always included as the speedup reference. Every row is
/// verified against the oracle regardless of `config.verify`.
pub fn cmd_sweep(config: &RunConfig, segments: Option<&[usize]>) -> Result<SweepTable> {
    config.validate()?;
    if segments.is_some_and(|list| list.contains(&0)) {
        return Err(BenchError::Usage(
            "segment counts must be at least 1".into(),
        ));
    }
    let graph = config.source.load()?;
    let stats = graph.stats().clone();
    let auto_s = choose_segment_count(&stats);
    let pool = config.workers.pool()?;
    let oracle = oracle_cc(&graph);

    let mut requests: Vec<(usize, bool)> = Vec::new();
    if graph.num_edges() == 0 {
        requests.push((1, false));
    } else {
        let list = segments
            .map(<[usize]>::to_vec)
            .unwrap_or_else(|| default_sweep_segments(auto_s));
        for s in std::iter::once(1).chain(list) {
            if !requests.contains(&(s, false)) {
                requests.push((s, false));
            }
        }
        requests.push((auto_s, true));
    }

    let mut rows = Vec::with_capacity(requests.len());
    for (requested, auto) in requests {
        let repeated = repeat(
            &graph,
            Algorithm::Adaptive,
            Segments::Explicit(requested),
            &pool,
            config.repetitions,
            Some(&oracle),
        )?;
        let m = &repeated.best;
        rows.push(SweepRow {
            s: m.s,
            total_ms: m.total_ms,
            speedup_vs_s1: None,
            verified: repeated.verified == Some(true),
            s_requested: requested,
            auto,
            clamped: m.s != requested,
            median_ms: repeated.median_ms,
            hook_ms: m.hook_ms,
            compress_ms: m.compress_ms,
            cas_failures: m.counters.cas_failures,
            hook_traversal_steps: m.counters.hook_traversal_steps,
            jump_steps: m.counters.jump_steps,
            components: m.components,
        });
    }
    let reference = rows[0].total_ms;
    for row in &mut rows {
        row.speedup_vs_s1 = (row.total_ms > 0.0).then(|| reference / row.total_ms);
    }

    let table = SweepTable {
        source: config.source.to_string(),
        n: graph.num_vertices(),
        m: graph.num_edges(),
        workers: pool.workers(),
        avg_degree: stats.avg_degree,
        auto_s,
        rows,
    };
    if let Some(path) = &config.metrics_out {
        let text = emit_report(Report::Sweep(&table), config.report);
        write_file(path, |f| f.write_all(text.as_bytes()))?;
    }
    Ok(table)
}

#[derive(Debug)]
pub struct VerifyOutcome {
    pub n: usize,
    pub witness: Option<PartitionWitness>,
}

impl VerifyOutcome {
    pub fn ok(&self) -> bool {
        self.witness.is_none()
    }
}

/// Compares a label file with the oracle's partition of the input graph.
pub fn cmd_verify(source: &GraphSource, labels: &Path) -> Result<VerifyOutcome> {
    let graph = source.load()?;
    let given = read_labels(labels)?;
    let expected = oracle_cc(&graph);
    let witness = partition_mismatch(&given, &expected)?;
    Ok(VerifyOutcome {
        n: graph.num_vertices(),
        witness,
    })
}

/// Writes a generated graph. Edge lists get an `n m` header only on request.
pub fn cmd_generate(
    spec: &GeneratorSpec,
    out: impl Write,
    format: Format,
    header: bool,
) -> Result<Graph> {
    let graph = spec.generate().map_err(BenchError::Generator)?;
    let out = BufWriter::new(out);
    let written = match format {
        Format::EdgeList => write_edge_list(&graph, out, header),
        Format::Dimacs => write_dimacs(&graph, out),
        Format::MatrixMarket => write_matrix_market(&graph, out),
    };
    written.map_err(BenchError::io("<output>"))?;
    Ok(graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sweep_list() {
        assert_eq!(default_sweep_segments(1), vec![1, 2]);
        assert_eq!(default_sweep_segments(2), vec![1, 2, 4]);
        assert_eq!(default_sweep_segments(14), vec![1, 2, 4, 8, 16, 28]);
        assert_eq!(default_sweep_segments(16), vec![1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[1.0]), 1.0);
        assert_eq!(median(&[1.0, 3.0]), 2.0);
        assert_eq!(median(&[1.0, 2.0, 10.0]), 2.0);
    }
}

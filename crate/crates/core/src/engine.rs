//! Host-side drivers.
//!
//! * [`baseline_cc`]: repeat { non-atomic hook over all edges; repeat jump
//!   over all vertices until nothing changes } until no hook changes anything.
//! * [`baseline_multi_jump_cc`]: the same loop with each compress phase
//!   replaced by one multi-jump pass.
//! * [`single_hook_cc`]: one atomic hook pass, one multi-jump pass.
//! * [`adaptive_cc`]: the edge list split into `s` contiguous segments, each
//!   atomic hook pass followed by a full multi-jump pass.
//!
//! Every phase is a fork-join over the [`WorkerPool`]; the join is the
//! barrier that publishes the phase's writes to the next one.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};

use serde::Serialize;

use crate::error::ForestError;
use crate::forest::{KernelCounters, ParentForest};
use crate::graph::{Graph, GraphStats, Vertex};
use crate::labels::{count_components, ComponentLabeling};
use crate::pool::WorkerPool;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    Baseline,
    #[serde(rename = "baseline-mj")]
    BaselineMultiJump,
    Atomic,
    Adaptive,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Baseline,
        Algorithm::BaselineMultiJump,
        Algorithm::Atomic,
        Algorithm::Adaptive,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Baseline => "baseline",
            Algorithm::BaselineMultiJump => "baseline-mj",
            Algorithm::Atomic => "atomic",
            Algorithm::Adaptive => "adaptive",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| format!("unknown algorithm `{s}`"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Segments {
    #[default]
    Auto,
    Explicit(usize),
}

impl FromStr for Segments {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Segments::Auto);
        }
        match s.parse::<usize>() {
            Ok(0) => Err("segment count must be at least 1".into()),
            Ok(count) => Ok(Segments::Explicit(count)),
            Err(_) => Err(format!("`{s}` is neither `auto` nor a segment count")),
        }
    }
}

impl fmt::Display for Segments {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Segments::Auto => f.write_str("auto"),
            Segments::Explicit(s) => write!(f, "{s}"),
        }
    }
}

/// Segment count from the average degree: `max(1, round(avg_degree))` with
/// halves rounded up, never more than the number of stored edges.
pub fn choose_segment_count(stats: &GraphStats) -> usize {
    if stats.n == 0 {
        return 1;
    }
    let s = ((stats.avg_degree + 0.5).floor() as usize).max(1);
    if stats.m_stored < s {
        stats.m_stored.max(1)
    } else {
        s
    }
}

/// Contiguous, balanced split of the stored edge sequence. The first
/// `m mod s` segments hold one extra edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentPlan {
    boundaries: Vec<usize>,
    requested: usize,
}

impl SegmentPlan {
    /// `s` is reduced to `max(1, m)` when it exceeds the edge count.
    pub fn new(m: usize, s: usize) -> Self {
        assert!(s >= 1, "segment count must be positive");
        let requested = s;
        let s = if s > m { m.max(1) } else { s };
        let (base, extra) = (m / s, m % s);
        let mut boundaries = Vec::with_capacity(s + 1);
        boundaries.push(0);
        let mut offset = 0;
        for i in 0..s {
            offset += base + usize::from(i < extra);
            boundaries.push(offset);
        }
        SegmentPlan {
            boundaries,
            requested,
        }
    }

    pub fn segment_count(&self) -> usize {
        self.boundaries.len() - 1
    }

    pub fn requested(&self) -> usize {
        self.requested
    }

    pub fn was_clamped(&self) -> bool {
        self.requested != self.segment_count()
    }

    pub fn boundaries(&self) -> &[usize] {
        &self.boundaries
    }

    pub fn segments(&self) -> impl Iterator<Item = std::ops::Range<usize>> + '_ {
        self.boundaries.windows(2).map(|w| w[0]..w[1])
    }
}

pub fn partition_edges(graph: &Graph, s: usize) -> SegmentPlan {
    SegmentPlan::new(graph.num_edges(), s)
}

/// Resolves `auto` against the graph's (cached) statistics.
pub fn resolve_segments(graph: &Graph, segments: Segments) -> usize {
    match segments {
        Segments::Auto => choose_segment_count(graph.stats()),
        Segments::Explicit(s) => s,
    }
}

/// Reads the labeling off a converged forest. The star shape is checked in
/// builds with debug assertions.
pub fn extract_labels(forest: &ParentForest) -> Result<ComponentLabeling, ForestError> {
    if cfg!(debug_assertions) {
        if let Some(vertex) = forest.first_non_star() {
            return Err(ForestError::NotStar { vertex });
        }
    }
    Ok(ComponentLabeling::canonical(forest.snapshot()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Phase {
    Hook,
    Compress,
}

/// Called on the driver thread at every phase boundary, while no kernel runs.
pub trait PhaseObserver: Sync {
    fn phase_end(&self, phase: Phase, index: usize, forest: &ParentForest);
}

impl PhaseObserver for () {
    fn phase_end(&self, _: Phase, _: usize, _: &ParentForest) {}
}

impl<F: Fn(Phase, usize, &ParentForest) + Sync> PhaseObserver for F {
    fn phase_end(&self, phase: Phase, index: usize, forest: &ParentForest) {
        self(phase, index, forest)
    }
}

/// Timing and work of one hook phase and the compress phase after it. For
/// the baseline drivers one entry is one outer round.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct PhaseTiming {
    pub hook_ms: f64,
    pub compress_ms: f64,
    pub counters: KernelCounters,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunMetrics {
    pub algo: Algorithm,
    pub n: usize,
    pub m: usize,
    /// Segments actually used (1 for the baseline drivers).
    pub s: usize,
    pub s_requested: usize,
    pub workers: usize,
    pub total_ms: f64,
    pub init_ms: f64,
    pub hook_ms: f64,
    pub compress_ms: f64,
    /// Outer rounds for the baseline drivers, segments otherwise.
    pub rounds: usize,
    /// Single-level jump passes (baseline only).
    pub jump_passes: usize,
    pub counters: KernelCounters,
    pub components: usize,
    pub phases: Vec<PhaseTiming>,
}

impl RunMetrics {
    fn new(algo: Algorithm, graph: &Graph, s: usize, s_requested: usize, workers: usize) -> Self {
        RunMetrics {
            algo,
            n: graph.num_vertices(),
            m: graph.num_edges(),
            s,
            s_requested,
            workers,
            total_ms: 0.0,
            init_ms: 0.0,
            hook_ms: 0.0,
            compress_ms: 0.0,
            rounds: 0,
            jump_passes: 0,
            counters: KernelCounters::default(),
            components: 0,
            phases: Vec::new(),
        }
    }

    fn push_phase(&mut self, phase: PhaseTiming) {
        self.hook_ms += phase.hook_ms;
        self.compress_ms += phase.compress_ms;
        self.counters.merge(&phase.counters);
        self.phases.push(phase);
    }
}

#[cfg(not(target_arch = "wasm32"))]
struct Stopwatch(std::time::Instant);

#[cfg(not(target_arch = "wasm32"))]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch(std::time::Instant::now())
    }

    fn elapsed_ms(&self) -> f64 {
        self.0.elapsed().as_secs_f64() * 1e3
    }
}

// No monotonic clock on bare wasm32; the demo reports counters only.
#[cfg(target_arch = "wasm32")]
struct Stopwatch;

#[cfg(target_arch = "wasm32")]
impl Stopwatch {
    fn start() -> Self {
        Stopwatch
    }

    fn elapsed_ms(&self) -> f64 {
        0.0
    }
}

fn merged(states: Vec<KernelCounters>) -> KernelCounters {
    states.iter().fold(KernelCounters::default(), |mut acc, c| {
        acc.merge(c);
        acc
    })
}

fn hook_pass(forest: &ParentForest, edges: &[(Vertex, Vertex)], pool: &WorkerPool) -> bool {
    let changed = AtomicBool::new(false);
    pool.run_phase(
        edges.len(),
        || (),
        |_, range| {
            let mut local = false;
            for &(u, v) in &edges[range] {
                local |= forest.hook(u, v);
            }
            if local && !changed.load(Ordering::Relaxed) {
                changed.store(true, Ordering::Relaxed);
            }
        },
    );
    changed.into_inner()
}

fn jump_pass(forest: &ParentForest, pool: &WorkerPool) -> (bool, u64) {
    let changed = AtomicBool::new(false);
    let writes = pool.run_phase(
        forest.len(),
        || 0u64,
        |writes, range| {
            let before = *writes;
            for v in range {
                *writes += u64::from(forest.jump(v as Vertex));
            }
            if *writes != before && !changed.load(Ordering::Relaxed) {
                changed.store(true, Ordering::Relaxed);
            }
        },
    );
    (changed.into_inner(), writes.into_iter().sum())
}

fn atomic_hook_pass(
    forest: &ParentForest,
    edges: &[(Vertex, Vertex)],
    pool: &WorkerPool,
) -> KernelCounters {
    merged(
        pool.run_phase(edges.len(), KernelCounters::default, |counters, range| {
            for &(u, v) in &edges[range] {
                forest.atomic_hook(u, v, counters);
            }
        }),
    )
}

/// Multi-jump over all vertices, dispatched in ascending index order so that
/// vertices near the roots are compressed before their descendants.
fn multi_jump_pass(forest: &ParentForest, pool: &WorkerPool) -> KernelCounters {
    merged(
        pool.run_phase(forest.len(), KernelCounters::default, |counters, range| {
            for v in range {
                forest.multi_jump(v as Vertex, counters);
            }
        }),
    )
}

fn run_baseline(
    graph: &Graph,
    multi_jump: bool,
    pool: &WorkerPool,
    forest: &ParentForest,
    observer: &dyn PhaseObserver,
    metrics: &mut RunMetrics,
) {
    loop {
        let round = metrics.rounds;
        metrics.rounds += 1;
        let mut phase = PhaseTiming::default();

        let clock = Stopwatch::start();
        let hooked = hook_pass(forest, graph.edges(), pool);
        phase.hook_ms = clock.elapsed_ms();
        observer.phase_end(Phase::Hook, round, forest);

        let clock = Stopwatch::start();
        if multi_jump {
            phase.counters = multi_jump_pass(forest, pool);
        } else {
            loop {
                metrics.jump_passes += 1;
                let (changed, writes) = jump_pass(forest, pool);
                phase.counters.jump_steps += writes;
                if !changed {
                    break;
                }
            }
        }
        phase.compress_ms = clock.elapsed_ms();
        observer.phase_end(Phase::Compress, round, forest);
        metrics.push_phase(phase);

        if !hooked {
            break;
        }
    }
}

fn run_segmented(
    graph: &Graph,
    plan: &SegmentPlan,
    pool: &WorkerPool,
    forest: &ParentForest,
    observer: &dyn PhaseObserver,
    metrics: &mut RunMetrics,
) {
    let edges = graph.edges();
    for (index, range) in plan.segments().enumerate() {
        metrics.rounds += 1;
        let mut phase = PhaseTiming::default();

        let clock = Stopwatch::start();
        phase.counters = atomic_hook_pass(forest, &edges[range], pool);
        phase.hook_ms = clock.elapsed_ms();
        observer.phase_end(Phase::Hook, index, forest);

        let clock = Stopwatch::start();
        phase.counters.merge(&multi_jump_pass(forest, pool));
        phase.compress_ms = clock.elapsed_ms();
        observer.phase_end(Phase::Compress, index, forest);
        metrics.push_phase(phase);
    }
}

/// Runs `algo` on a caller-supplied forest, which must be freshly initialized
/// for `graph`. Exposed so that tests can watch the forest while the run is in
/// progress. `segments` only matters for [`Algorithm::Adaptive`]. The reported
/// time excludes forest initialization.
pub fn run_on_forest(
    algo: Algorithm,
    graph: &Graph,
    segments: Segments,
    pool: &WorkerPool,
    forest: &ParentForest,
    observer: &dyn PhaseObserver,
) -> Result<(ComponentLabeling, RunMetrics), ForestError> {
    assert_eq!(
        forest.len(),
        graph.num_vertices(),
        "forest size does not match graph"
    );
    let requested = match algo {
        Algorithm::Adaptive => resolve_segments(graph, segments),
        _ => 1,
    };
    let plan = partition_edges(graph, requested);
    let s = match algo {
        Algorithm::Baseline | Algorithm::BaselineMultiJump => 1,
        Algorithm::Atomic | Algorithm::Adaptive => plan.segment_count(),
    };
    let mut metrics = RunMetrics::new(algo, graph, s, requested, pool.workers());

    let clock = Stopwatch::start();
    match algo {
        Algorithm::Baseline => run_baseline(graph, false, pool, forest, observer, &mut metrics),
        Algorithm::BaselineMultiJump => {
            run_baseline(graph, true, pool, forest, observer, &mut metrics)
        }
        Algorithm::Atomic | Algorithm::Adaptive => {
            run_segmented(graph, &plan, pool, forest, observer, &mut metrics)
        }
    }
    let labels = extract_labels(forest)?;
    metrics.total_ms = clock.elapsed_ms();
    metrics.components = count_components(&labels);
    Ok((labels, metrics))
}

/// Runs `algo` with phase-boundary callbacks. Timing includes forest
/// initialization.
pub fn run_observed(
    algo: Algorithm,
    graph: &Graph,
    segments: Segments,
    pool: &WorkerPool,
    observer: &dyn PhaseObserver,
) -> (ComponentLabeling, RunMetrics) {
    if algo == Algorithm::Adaptive {
        // Statistics for `auto` are not part of the timed region.
        resolve_segments(graph, segments);
    }
    let clock = Stopwatch::start();
    let forest = ParentForest::new(graph.num_vertices());
    let init_ms = clock.elapsed_ms();
    let (labels, mut metrics) = run_on_forest(algo, graph, segments, pool, &forest, observer)
        .expect("driver left the forest in a non-star state");
    metrics.init_ms = init_ms;
    metrics.total_ms += init_ms;
    (labels, metrics)
}

pub fn run(
    algo: Algorithm,
    graph: &Graph,
    segments: Segments,
    pool: &WorkerPool,
) -> (ComponentLabeling, RunMetrics) {
    run_observed(algo, graph, segments, pool, &())
}

pub fn baseline_cc(graph: &Graph, pool: &WorkerPool) -> (ComponentLabeling, RunMetrics) {
    run(Algorithm::Baseline, graph, Segments::Auto, pool)
}

pub fn baseline_multi_jump_cc(graph: &Graph, pool: &WorkerPool) -> (ComponentLabeling, RunMetrics) {
    run(Algorithm::BaselineMultiJump, graph, Segments::Auto, pool)
}

pub fn single_hook_cc(graph: &Graph, pool: &WorkerPool) -> (ComponentLabeling, RunMetrics) {
    run(Algorithm::Atomic, graph, Segments::Explicit(1), pool)
}

pub fn adaptive_cc(
    graph: &Graph,
    segments: Segments,
    pool: &WorkerPool,
) -> (ComponentLabeling, RunMetrics) {
    run(Algorithm::Adaptive, graph, segments, pool)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::grid;

    fn graph(n: usize, edges: &[(Vertex, Vertex)]) -> Graph {
        Graph::new(n, edges.to_vec()).unwrap()
    }

    fn path_plus_edge() -> Graph {
        graph(5, &[(0, 1), (1, 2), (3, 4)])
    }

    fn k4() -> Graph {
        graph(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    }

    #[test]
    fn baseline_examples() {
        let pool = WorkerPool::single();
        assert_eq!(
            baseline_cc(&path_plus_edge(), &pool).0.labels(),
            &[0, 0, 0, 3, 3]
        );
        assert_eq!(
            baseline_cc(&Graph::empty(4), &pool).0.labels(),
            &[0, 1, 2, 3]
        );
        assert_eq!(baseline_cc(&k4(), &pool).0.labels(), &[0, 0, 0, 0]);
    }

    #[test]
    fn single_hook_examples() {
        let pool = WorkerPool::single();
        assert_eq!(
            single_hook_cc(&path_plus_edge(), &pool).0.labels(),
            &[0, 0, 0, 3, 3]
        );
        assert_eq!(
            single_hook_cc(&graph(6, &[(0, 5)]), &pool).0.labels(),
            &[0, 1, 2, 3, 4, 0]
        );
        let (labels, metrics) = single_hook_cc(&Graph::empty(0), &pool);
        assert!(labels.is_empty());
        assert_eq!(metrics.components, 0);
    }

    #[test]
    fn adaptive_examples() {
        let pool = WorkerPool::single();
        let (labels, metrics) = adaptive_cc(&grid(2, 2).unwrap(), Segments::Auto, &pool);
        assert_eq!(labels.labels(), &[0, 0, 0, 0]);
        assert_eq!(metrics.s, 2);
        assert_eq!(metrics.phases.len(), 2);
        assert_eq!(
            adaptive_cc(&graph(3, &[(1, 2)]), Segments::Explicit(1), &pool)
                .0
                .labels(),
            &[0, 1, 1]
        );
    }

    #[test]
    fn segment_count_heuristic() {
        assert_eq!(
            choose_segment_count(&GraphStats::from_avg_degree(2_000_000, 86.82)),
            87
        );
        assert_eq!(
            choose_segment_count(&GraphStats::from_avg_degree(24_000_000, 2.41)),
            2
        );
        let star = Graph::new(2, vec![(0, 1)]).unwrap();
        assert_eq!(choose_segment_count(star.stats()), 1);
        assert_eq!(choose_segment_count(Graph::empty(0).stats()), 1);
        assert_eq!(
            choose_segment_count(&GraphStats::from_avg_degree(10, 2.5)),
            3
        );
        // Duplicated records: avg degree 6 over unique adjacencies, 3 stored.
        let dup = Graph::new(2, vec![(0, 1), (1, 0), (0, 1)]).unwrap();
        assert_eq!(choose_segment_count(dup.stats()), 1);
        let mut clamp = GraphStats::from_avg_degree(4, 6.0);
        clamp.m_stored = 4;
        assert_eq!(choose_segment_count(&clamp), 4);
    }

    #[test]
    fn segment_plans() {
        assert_eq!(SegmentPlan::new(10, 3).boundaries(), &[0, 4, 7, 10]);
        assert_eq!(SegmentPlan::new(6, 1).boundaries(), &[0, 6]);
        assert_eq!(SegmentPlan::new(5, 5).boundaries(), &[0, 1, 2, 3, 4, 5]);
        let clamped = SegmentPlan::new(3, 8);
        assert_eq!(clamped.boundaries(), &[0, 1, 2, 3]);
        assert!(clamped.was_clamped());
        assert_eq!(clamped.requested(), 8);
        assert_eq!(SegmentPlan::new(0, 4).boundaries(), &[0, 0]);
    }

    #[test]
    fn extract_labels_examples() {
        let f = ParentForest::from_parents(&[0, 0, 0, 3, 3]).unwrap();
        assert_eq!(extract_labels(&f).unwrap().labels(), &[0, 0, 0, 3, 3]);
        assert!(extract_labels(&ParentForest::new(0)).unwrap().is_empty());
    }

    #[cfg(debug_assertions)]
    #[test]
    fn extract_labels_rejects_deep_trees() {
        let f = ParentForest::from_parents(&[0, 0, 1]).unwrap();
        assert_eq!(extract_labels(&f), Err(ForestError::NotStar { vertex: 2 }));
    }

    #[test]
    fn parse_algorithm_and_segments() {
        for algo in Algorithm::ALL {
            assert_eq!(algo.name().parse::<Algorithm>().unwrap(), algo);
        }
        assert!("soman".parse::<Algorithm>().is_err());
        assert_eq!("auto".parse::<Segments>().unwrap(), Segments::Auto);
        assert_eq!("7".parse::<Segments>().unwrap(), Segments::Explicit(7));
        assert!("0".parse::<Segments>().is_err());
        assert!("x".parse::<Segments>().is_err());
    }

    #[test]
    fn observer_sees_every_boundary() {
        use std::sync::Mutex;
        let seen = Mutex::new(Vec::new());
        let observer = |phase: Phase, index: usize, forest: &ParentForest| {
            assert!(forest.check_bound().is_ok());
            if phase == Phase::Compress {
                assert!(forest.is_star());
            }
            seen.lock().unwrap().push((phase, index));
        };
        let g = grid(3, 3).unwrap();
        run_observed(
            Algorithm::Adaptive,
            &g,
            Segments::Explicit(3),
            &WorkerPool::single(),
            &observer,
        );
        let seen = seen.into_inner().unwrap();
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[5], (Phase::Compress, 2));
    }
}

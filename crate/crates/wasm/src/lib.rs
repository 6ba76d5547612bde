//! Browser demo: step through the adaptive engine on a small graph, sweep the
//! segment count, and compare multi-jump visiting orders.
//!
//! Every export returns a JSON string. Runs use a single inline worker, so
//! counters are deterministic.

use std::sync::Mutex;

use cc_core::{
    adaptive_cc, choose_segment_count, partition_edges, run_observed, Algorithm, GeneratorSpec,
    Graph, KernelCounters, ParentForest, Phase, Segments, Vertex, WorkerPool,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// Keeps the page responsive; the canvas is unreadable beyond this anyway.
pub const MAX_TRACE_VERTICES: usize = 1024;
pub const MAX_TRACE_EDGES: usize = 8192;
pub const MAX_SWEEP_EDGES: usize = 1 << 20;
pub const MAX_CHAIN: usize = 100_000;

fn load(spec: &str, max_n: usize, max_m: usize) -> Result<(GeneratorSpec, Graph), String> {
    let spec = GeneratorSpec::parse(spec, 1).map_err(|e| e.to_string())?;
    let graph = spec.generate().map_err(|e| e.to_string())?;
    if graph.num_vertices() > max_n || graph.num_edges() > max_m {
        return Err(format!(
            "graph has {} vertices and {} edges; the demo allows at most {max_n} and {max_m}",
            graph.num_vertices(),
            graph.num_edges()
        ));
    }
    Ok((spec, graph))
}

#[derive(Serialize)]
struct Snapshot {
    phase: &'static str,
    segment: usize,
    parents: Vec<Vertex>,
    trees: usize,
}

#[derive(Serialize)]
struct Trace {
    n: usize,
    m: usize,
    s: usize,
    /// `[rows, cols]` for grid graphs, used for layout.
    grid: Option<[usize; 2]>,
    edges: Vec<(Vertex, Vertex)>,
    /// Edge index where each segment starts, plus the end.
    boundaries: Vec<usize>,
    snapshots: Vec<Snapshot>,
    labels: Vec<Vertex>,
    components: usize,
    counters: KernelCounters,
}

/// Runs the adaptive engine with `segments` segments (0 for automatic) and
/// records the parent forest after every hook and compress phase.
pub fn trace_json(spec: &str, segments: usize) -> Result<String, String> {
    let (spec, graph) = load(spec, MAX_TRACE_VERTICES, MAX_TRACE_EDGES)?;
    let segments = match segments {
        0 => Segments::Auto,
        s => Segments::Explicit(s),
    };
    let snapshots = Mutex::new(vec![Snapshot {
        phase: "init",
        segment: 0,
        parents: (0..graph.num_vertices() as Vertex).collect(),
        trees: graph.num_vertices(),
    }]);
    let observer = |phase: Phase, segment: usize, forest: &ParentForest| {
        let parents = forest.snapshot();
        let trees = parents
            .iter()
            .enumerate()
            .filter(|&(v, &p)| p as usize == v)
            .count();
        snapshots.lock().unwrap().push(Snapshot {
            phase: match phase {
                Phase::Hook => "hook",
                Phase::Compress => "compress",
            },
            segment,
            parents,
            trees,
        });
    };
    let (labels, metrics) = run_observed(
        Algorithm::Adaptive,
        &graph,
        segments,
        &WorkerPool::single(),
        &observer,
    );
    let trace = Trace {
        n: graph.num_vertices(),
        m: graph.num_edges(),
        s: metrics.s,
        grid: match spec {
            GeneratorSpec::Grid { rows, cols } => Some([rows, cols]),
            _ => None,
        },
        boundaries: partition_edges(&graph, metrics.s).boundaries().to_vec(),
        edges: graph.edges().to_vec(),
        snapshots: snapshots.into_inner().unwrap(),
        labels: labels.labels().to_vec(),
        components: metrics.components,
        counters: metrics.counters,
    };
    Ok(serde_json::to_string(&trace).expect("trace serializes"))
}

#[derive(Serialize)]
struct SweepPoint {
    s: usize,
    cas_failures: u64,
    hook_traversal_steps: u64,
    jump_steps: u64,
    components: usize,
}

#[derive(Serialize)]
struct Sweep {
    n: usize,
    m: usize,
    avg_degree: f64,
    auto_s: usize,
    rows: Vec<SweepPoint>,
}

/// Work counters of the adaptive engine for every `s` in `1..=max_s`,
/// stopping early once `s` reaches the edge count.
pub fn sweep_json(spec: &str, max_s: usize) -> Result<String, String> {
    let (_, graph) = load(spec, usize::MAX, MAX_SWEEP_EDGES)?;
    let pool = WorkerPool::single();
    let limit = max_s.clamp(1, graph.num_edges().max(1));
    let rows = (1..=limit)
        .map(|s| {
            let (_, metrics) = adaptive_cc(&graph, Segments::Explicit(s), &pool);
            SweepPoint {
                s,
                cas_failures: metrics.counters.cas_failures,
                hook_traversal_steps: metrics.counters.hook_traversal_steps,
                jump_steps: metrics.counters.jump_steps,
                components: metrics.components,
            }
        })
        .collect();
    let sweep = Sweep {
        n: graph.num_vertices(),
        m: graph.num_edges(),
        avg_degree: graph.stats().avg_degree,
        auto_s: choose_segment_count(graph.stats()),
        rows,
    };
    Ok(serde_json::to_string(&sweep).expect("sweep serializes"))
}

#[derive(Serialize, Debug, PartialEq)]
struct JumpOrder {
    k: usize,
    ascending: u64,
    descending: u64,
}

/// Multi-jump writes for one pass over the chain `0 <- 1 <- ... <- k`, in
/// ascending and in descending vertex order.
pub fn jump_order_json(k: usize) -> Result<String, String> {
    if k > MAX_CHAIN {
        return Err(format!("chain length is limited to {MAX_CHAIN}"));
    }
    let chain: Vec<Vertex> = (0..=k as Vertex).map(|v| v.saturating_sub(1)).collect();
    let pass = |order: &mut dyn Iterator<Item = Vertex>| {
        let forest = ParentForest::from_parents(&chain).expect("chain is a valid forest");
        let mut counters = KernelCounters::default();
        order.for_each(|v| forest.multi_jump(v, &mut counters));
        counters.jump_steps
    };
    let result = JumpOrder {
        k,
        ascending: pass(&mut (0..=k as Vertex)),
        descending: pass(&mut (0..=k as Vertex).rev()),
    };
    Ok(serde_json::to_string(&result).expect("result serializes"))
}

fn js(result: Result<String, String>) -> Result<String, JsValue> {
    result.map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn trace(spec: &str, segments: usize) -> Result<String, JsValue> {
    js(trace_json(spec, segments))
}

#[wasm_bindgen]
pub fn sweep(spec: &str, max_s: usize) -> Result<String, JsValue> {
    js(sweep_json(spec, max_s))
}

#[wasm_bindgen]
pub fn jump_order(k: usize) -> Result<String, JsValue> {
    js(jump_order_json(k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    fn parse(text: &str) -> Value {
        serde_json::from_str(text).unwrap()
    }

    #[test]
    fn trace_of_a_grid() {
        let trace = parse(&trace_json("grid:4x5", 0).unwrap());
        assert_eq!(trace["n"], 20);
        assert_eq!(trace["grid"], serde_json::json!([4, 5]));
        assert_eq!(trace["components"], 1);
        let s = trace["s"].as_u64().unwrap() as usize;
        let snapshots = trace["snapshots"].as_array().unwrap();
        assert_eq!(snapshots.len(), 1 + 2 * s);
        assert_eq!(snapshots[0]["trees"], 20);
        let last = snapshots.last().unwrap();
        assert_eq!(last["phase"], "compress");
        assert_eq!(last["trees"], 1);
        assert!(last["parents"].as_array().unwrap().iter().all(|p| p == 0));
        assert_eq!(trace["boundaries"].as_array().unwrap().len(), s + 1);
    }

    #[test]
    fn trace_respects_explicit_segments_and_limits() {
        let trace = parse(&trace_json("er:n=50,m=40,seed=2", 3).unwrap());
        assert_eq!(trace["s"], 3);
        assert!(trace["grid"].is_null());
        assert!(trace_json("grid:100x100", 0).is_err());
        assert!(trace_json("nonsense", 0).is_err());
    }

    #[test]
    fn sweep_rows() {
        let sweep = parse(&sweep_json("rmat:scale=8,ef=8,seed=1", 12).unwrap());
        let rows = sweep["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 12);
        let components = &rows[0]["components"];
        assert!(rows.iter().all(|r| &r["components"] == components));
        assert!(sweep["auto_s"].as_u64().unwrap() >= 1);

        let tiny = parse(&sweep_json("grid:1x3", 10).unwrap());
        assert_eq!(tiny["rows"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn jump_orders() {
        let result = parse(&jump_order_json(1000).unwrap());
        assert_eq!(result["ascending"], 999);
        assert_eq!(result["descending"], 499_500);
        let small = parse(&jump_order_json(0).unwrap());
        assert_eq!(small["ascending"], 0);
        assert!(jump_order_json(MAX_CHAIN + 1).is_err());
    }
}

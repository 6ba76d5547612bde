use std::sync::OnceLock;

use serde::Serialize;

use crate::error::GraphError;

/// Vertex index. Graphs are limited to `u32::MAX` vertices so that the parent
/// forest packs into 32-bit slots.
pub type Vertex = u32;

/// An undirected graph stored as a flat edge list.
///
/// Edge records are kept exactly as loaded or generated: duplicates and
/// self-loops are not removed, and the order is preserved because segment
/// boundaries are defined over it.
#[derive(Debug)]
pub struct Graph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
    stats: OnceLock<GraphStats>,
}

impl Graph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        if n > Vertex::MAX as usize {
            return Err(GraphError::TooManyVertices(n));
        }
        if let Some(&(u, v)) = edges
            .iter()
            .find(|&&(u, v)| u as usize >= n || v as usize >= n)
        {
            let vertex = if u as usize >= n { u } else { v };
            return Err(GraphError::EndpointOutOfRange {
                line: None,
                vertex: vertex as u64,
                n,
            });
        }
        Ok(Self::new_unchecked(n, edges))
    }

    /// Caller guarantees every endpoint is below `n`.
    pub(crate) fn new_unchecked(n: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges
            .iter()
            .all(|&(u, v)| (u as usize) < n && (v as usize) < n));
        Graph {
            n,
            edges,
            stats: OnceLock::new(),
        }
    }

    pub fn empty(n: usize) -> Self {
        Self::new_unchecked(n, Vec::new())
    }

    #[inline]
    pub fn num_vertices(&self) -> usize {
        self.n
    }

    /// Number of stored edge records (duplicates and self-loops included).
    #[inline]
    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn into_edges(self) -> Vec<(Vertex, Vertex)> {
        self.edges
    }

    /// Statistics over the deduplicated adjacency, computed once and cached.
    pub fn stats(&self) -> &GraphStats {
        self.stats.get_or_init(|| compute_stats(self))
    }

    /// Canonical form: self-loops dropped, each adjacency stored once as
    /// `(min, max)`, sorted.
    pub fn normalize(&self) -> Graph {
        Graph::new_unchecked(self.n, unique_adjacencies(&self.edges))
    }
}

impl Clone for Graph {
    fn clone(&self) -> Self {
        Graph::new_unchecked(self.n, self.edges.clone())
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Graph {}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphStats {
    pub n: usize,
    /// Stored edge records, as loaded.
    pub m_stored: usize,
    /// Undirected adjacencies counted once, self-loops excluded.
    pub m_unique: usize,
    /// `2 * m_unique / n`, or 0 for an empty vertex set.
    pub avg_degree: f64,
    pub max_degree: usize,
}

impl GraphStats {
    /// Stats carrying only a vertex count and a known average degree, for
    /// reasoning about graphs that are not materialized.
    pub fn from_avg_degree(n: usize, avg_degree: f64) -> Self {
        let m_unique = (avg_degree * n as f64 / 2.0).round() as usize;
        GraphStats {
            n,
            m_stored: m_unique,
            m_unique,
            avg_degree,
            max_degree: 0,
        }
    }
}

fn unique_adjacencies(edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let mut unique: Vec<(Vertex, Vertex)> = edges
        .iter()
        .filter(|(u, v)| u != v)
        .map(|&(u, v)| (u.min(v), u.max(v)))
        .collect();
    unique.sort_unstable();
    unique.dedup();
    unique
}

pub fn compute_stats(graph: &Graph) -> GraphStats {
    let n = graph.num_vertices();
    let unique = unique_adjacencies(graph.edges());
    let mut degree = vec![0usize; n];
    for &(u, v) in &unique {
        degree[u as usize] += 1;
        degree[v as usize] += 1;
    }
    let avg_degree = if n == 0 {
        0.0
    } else {
        2.0 * unique.len() as f64 / n as f64
    };
    GraphStats {
        n,
        m_stored: graph.num_edges(),
        m_unique: unique.len(),
        avg_degree,
        max_degree: degree.into_iter().max().unwrap_or(0),
    }
}

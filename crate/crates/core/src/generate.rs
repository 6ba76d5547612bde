//! Deterministic synthetic graphs: uniform random (Erdős–Rényi, sampled with
//! replacement), RMAT recursive-quadrant graphs and 4-neighbour grids.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

/// Default RMAT quadrant probabilities (Graph500).
pub const RMAT_DEFAULT: [f64; 4] = [0.57, 0.19, 0.19, 0.05];

#[derive(Clone, Debug, PartialEq)]
pub enum GeneratorSpec {
    ErdosRenyi {
        n: usize,
        m: usize,
        seed: u64,
    },
    Rmat {
        scale: u32,
        edge_factor: usize,
        probabilities: [f64; 4],
        seed: u64,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
}

impl GeneratorSpec {
    /// Parses `grid:RxC`, `er:n=N,m=M[,seed=S]` or
    /// `rmat:scale=K,ef=F[,a=..,b=..,c=..,d=..][,seed=S]`. `default_seed` is
    /// used when the generator string names no seed.
    pub fn parse(spec: &str, default_seed: u64) -> Result<Self, GraphError> {
        let invalid = |msg: String| GraphError::InvalidParameters(msg);
        let (kind, params) = spec
            .split_once(':')
            .ok_or_else(|| invalid(format!("`{spec}`: expected KIND:PARAMS")))?;

        if kind == "grid" {
            let (rows, cols) = params
                .split_once('x')
                .ok_or_else(|| invalid(format!("`{params}`: expected ROWSxCOLS")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| invalid(format!("`{s}` is not a dimension")))
            };
            return Ok(GeneratorSpec::Grid {
                rows: parse(rows)?,
                cols: parse(cols)?,
            });
        }

        let mut fields = Vec::new();
        for pair in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| invalid(format!("`{pair}`: expected KEY=VALUE")))?;
            fields.push((key.trim(), value.trim()));
        }
        let lookup = |key: &str| fields.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
        let int = |key: &str| -> Result<Option<u64>, GraphError> {
            lookup(key)
                .map(|v| {
                    v.parse::<u64>()
                        .map_err(|_| invalid(format!("{key}=`{v}` is not an integer")))
                })
                .transpose()
        };
        let required = |key: &str| -> Result<u64, GraphError> {
            int(key)?.ok_or_else(|| invalid(format!("`{kind}` requires {key}=")))
        };
        let known: &[&str] = match kind {
            "er" => &["n", "m", "seed"],
            "rmat" => &["scale", "ef", "a", "b", "c", "d", "seed"],
            _ => return Err(invalid(format!("unknown generator `{kind}`"))),
        };
        if let Some((key, _)) = fields.iter().find(|(k, _)| !known.contains(k)) {
            return Err(invalid(format!("`{kind}` has no parameter `{key}`")));
        }
        let seed = int("seed")?.unwrap_or(default_seed);

        if kind == "er" {
            return Ok(GeneratorSpec::ErdosRenyi {
                n: required("n")? as usize,
                m: required("m")? as usize,
                seed,
            });
        }
        let mut probabilities = RMAT_DEFAULT;
        for (slot, key) in probabilities.iter_mut().zip(["a", "b", "c", "d"]) {
            if let Some(v) = lookup(key) {
                *slot = v
                    .parse()
                    .map_err(|_| invalid(format!("{key}=`{v}` is not a number")))?;
            }
        }
        Ok(GeneratorSpec::Rmat {
            scale: required("scale")? as u32,
            edge_factor: required("ef")? as usize,
            probabilities,
            seed,
        })
    }

    pub fn generate(&self) -> Result<Graph, GraphError> {
        match *self {
            GeneratorSpec::ErdosRenyi { n, m, seed } => erdos_renyi(n, m, seed),
            GeneratorSpec::Rmat {
                scale,
                edge_factor,
                probabilities,
                seed,
            } => rmat(scale, edge_factor, probabilities, seed),
            GeneratorSpec::Grid { rows, cols } => grid(rows, cols),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::ErdosRenyi { n, m, seed } => write!(f, "er:n={n},m={m},seed={seed}"),
            GeneratorSpec::Rmat {
                scale,
                edge_factor,
                probabilities: [a, b, c, d],
                seed,
            } => write!(
                f,
                "rmat:scale={scale},ef={edge_factor},a={a},b={b},c={c},d={d},seed={seed}"
            ),
            GeneratorSpec::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
        }
    }
}

fn check_vertex_count(n: usize) -> Result<(), GraphError> {
    if n == 0 {
        Err(GraphError::InvalidParameters(
            "graph must have at least one vertex".into(),
        ))
    } else if n > Vertex::MAX as usize {
        Err(GraphError::TooManyVertices(n))
    } else {
        Ok(())
    }
}

/// `m` edges with both endpoints drawn uniformly from `[0, n)`, with
/// replacement (duplicates and self-loops possible).
pub fn erdos_renyi(n: usize, m: usize, seed: u64) -> Result<Graph, GraphError> {
    check_vertex_count(n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let edges = (0..m)
        .map(|_| {
            let u = rng.gen_range(0..n) as Vertex;
            let v = rng.gen_range(0..n) as Vertex;
            (u, v)
        })
        .collect();
    Ok(Graph::new_unchecked(n, edges))
}

/// `edge_factor * 2^scale` edges over `2^scale` vertices. Each edge descends
/// `scale` levels of the adjacency matrix, picking quadrant a (top-left),
/// b (top-right), c (bottom-left) or d (bottom-right) at every level with the
/// given probabilities. Vertex ids are not permuted, so low ids are the hubs.
pub fn rmat(
    scale: u32,
    edge_factor: usize,
    probabilities: [f64; 4],
    seed: u64,
) -> Result<Graph, GraphError> {
    if scale == 0 || scale >= Vertex::BITS {
        return Err(GraphError::InvalidParameters(format!(
            "rmat scale must be in 1..{}, got {scale}",
            Vertex::BITS
        )));
    }
    if edge_factor == 0 {
        return Err(GraphError::InvalidParameters(
            "rmat edge factor must be positive".into(),
        ));
    }
    if probabilities.iter().any(|&p| !(0.0..=1.0).contains(&p))
        || (probabilities.iter().sum::<f64>() - 1.0).abs() > 1e-9
    {
        return Err(GraphError::InvalidParameters(format!(
            "rmat probabilities {probabilities:?} must be non-negative and sum to 1"
        )));
    }
    let n = 1usize << scale;
    let m = edge_factor
        .checked_mul(n)
        .ok_or_else(|| GraphError::InvalidParameters("rmat edge count overflows".into()))?;
    let [a, b, c, _] = probabilities;
    let (ab, abc) = (a + b, a + b + c);

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::with_capacity(m);
    for _ in 0..m {
        let (mut u, mut v) = (0 as Vertex, 0 as Vertex);
        for _ in 0..scale {
            let r: f64 = rng.gen();
            let (row, col) = if r < a {
                (0, 0)
            } else if r < ab {
                (0, 1)
            } else if r < abc {
                (1, 0)
            } else {
                (1, 1)
            };
            u = (u << 1) | row;
            v = (v << 1) | col;
        }
        edges.push((u, v));
    }
    Ok(Graph::new_unchecked(n, edges))
}

/// Row-major `rows x cols` lattice: all horizontal edges first, then all
/// vertical edges.
pub fn grid(rows: usize, cols: usize) -> Result<Graph, GraphError> {
    let n = rows
        .checked_mul(cols)
        .ok_or_else(|| GraphError::InvalidParameters("grid size overflows".into()))?;
    check_vertex_count(n)?;
    let id = |r: usize, c: usize| (r * cols + c) as Vertex;
    let mut edges = Vec::with_capacity(rows * (cols - 1) + (rows - 1) * cols);
    for r in 0..rows {
        for c in 0..cols - 1 {
            edges.push((id(r, c), id(r, c + 1)));
        }
    }
    for r in 0..rows - 1 {
        for c in 0..cols {
            edges.push((id(r, c), id(r + 1, c)));
        }
    }
    Ok(Graph::new_unchecked(n, edges))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::compute_stats;

    #[test]
    fn grid_2x2() {
        let g = grid(2, 2).unwrap();
        assert_eq!(g.num_vertices(), 4);
        assert_eq!(g.edges(), &[(0, 1), (2, 3), (0, 2), (1, 3)]);
    }

    #[test]
    fn grid_degenerate_shapes() {
        assert_eq!(grid(1, 1).unwrap().num_edges(), 0);
        assert_eq!(grid(1, 4).unwrap().edges(), &[(0, 1), (1, 2), (2, 3)]);
        assert!(grid(0, 3).is_err());
    }

    #[test]
    fn erdos_renyi_is_deterministic() {
        let a = erdos_renyi(4, 3, 1).unwrap();
        let b = erdos_renyi(4, 3, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.num_edges(), 3);
        assert_ne!(
            erdos_renyi(1000, 50, 1).unwrap(),
            erdos_renyi(1000, 50, 2).unwrap()
        );
        assert!(erdos_renyi(0, 3, 1).is_err());
    }

    #[test]
    fn rmat_size_and_skew() {
        let g = rmat(10, 16, [0.57, 0.19, 0.19, 0.05], 7).unwrap();
        assert_eq!(g.num_vertices(), 1024);
        assert_eq!(g.num_edges(), 16384);
        // Degree histogram over stored records, including duplicates.
        let mut degree = vec![0usize; g.num_vertices()];
        for &(u, v) in g.edges() {
            degree[u as usize] += 1;
            degree[v as usize] += 1;
        }
        let max = *degree.iter().max().unwrap() as f64;
        let avg = 2.0 * g.num_edges() as f64 / g.num_vertices() as f64;
        assert!(max > 3.0 * avg, "max {max} avg {avg}");
        let stats = compute_stats(&g);
        assert!(stats.max_degree as f64 > 3.0 * stats.avg_degree);
    }

    #[test]
    fn rmat_rejects_bad_probabilities() {
        assert!(rmat(4, 2, [0.5, 0.2, 0.2, 0.2], 1).is_err());
        assert!(rmat(4, 2, [1.2, -0.2, 0.0, 0.0], 1).is_err());
        assert!(rmat(0, 2, RMAT_DEFAULT, 1).is_err());
        assert!(rmat(4, 0, RMAT_DEFAULT, 1).is_err());
    }

    #[test]
    fn spec_strings() {
        assert_eq!(
            GeneratorSpec::parse("grid:100x100", 0).unwrap(),
            GeneratorSpec::Grid {
                rows: 100,
                cols: 100
            }
        );
        assert_eq!(
            GeneratorSpec::parse("er:n=1000,m=500,seed=3", 9).unwrap(),
            GeneratorSpec::ErdosRenyi {
                n: 1000,
                m: 500,
                seed: 3
            }
        );
        assert_eq!(
            GeneratorSpec::parse("er:n=10,m=5", 9).unwrap(),
            GeneratorSpec::ErdosRenyi {
                n: 10,
                m: 5,
                seed: 9
            }
        );
        let rmat = GeneratorSpec::parse("rmat:scale=3,ef=2,seed=9", 0).unwrap();
        assert_eq!(
            rmat,
            GeneratorSpec::Rmat {
                scale: 3,
                edge_factor: 2,
                probabilities: RMAT_DEFAULT,
                seed: 9
            }
        );
        assert_eq!(GeneratorSpec::parse(&rmat.to_string(), 0).unwrap(), rmat);
        for bad in [
            "grid:3",
            "er:n=3",
            "er:n=3,m=2,q=1",
            "tree:n=3",
            "rmat:scale=x,ef=1",
            "er",
        ] {
            assert!(GeneratorSpec::parse(bad, 0).is_err(), "{bad}");
        }
    }
}

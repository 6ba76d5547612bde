//! Text graph formats: plain edge lists, DIMACS-9 shortest-path files and
//! MatrixMarket coordinate files, plus the matching writers.

use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;
use std::str::FromStr;

use crate::error::GraphError;
use crate::graph::{Graph, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    EdgeList,
    Dimacs,
    MatrixMarket,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "edgelist" | "el" => Ok(Format::EdgeList),
            "dimacs" | "gr" => Ok(Format::Dimacs),
            "mtx" | "mm" => Ok(Format::MatrixMarket),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::EdgeList => "edgelist",
            Format::Dimacs => "dimacs",
            Format::MatrixMarket => "mtx",
        })
    }
}

pub fn read_graph(path: &Path, format: Format, header: bool) -> Result<Graph, GraphError> {
    let reader = BufReader::new(File::open(path)?);
    match format {
        Format::EdgeList => parse_edge_list(reader, header),
        Format::Dimacs => parse_dimacs(reader),
        Format::MatrixMarket => parse_matrix_market(reader),
    }
}

fn malformed(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Malformed {
        line,
        message: message.into(),
    }
}

fn parse_u64(token: Option<&str>, line: usize, what: &str) -> Result<u64, GraphError> {
    let token = token.ok_or_else(|| malformed(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| malformed(line, format!("invalid {what} `{token}`")))
}

fn expect_end<'a>(
    mut tokens: impl Iterator<Item = &'a str>,
    line: usize,
) -> Result<(), GraphError> {
    match tokens.next() {
        None => Ok(()),
        Some(extra) => Err(malformed(line, format!("unexpected token `{extra}`"))),
    }
}

fn to_vertex(value: u64, line: usize, n: Option<usize>) -> Result<Vertex, GraphError> {
    match n {
        Some(n) if value >= n as u64 => Err(GraphError::EndpointOutOfRange {
            line: Some(line),
            vertex: value,
            n,
        }),
        _ if value >= Vertex::MAX as u64 => Err(GraphError::TooManyVertices(value as usize + 1)),
        _ => Ok(value as Vertex),
    }
}

/// Whitespace-separated `u v` pairs, 0-indexed. Lines starting with `#` are
/// comments. With `header`, the first non-comment line is `n m`; otherwise
/// `n` is one more than the largest endpoint.
pub fn parse_edge_list(reader: impl BufRead, header: bool) -> Result<Graph, GraphError> {
    let mut declared_n: Option<usize> = None;
    let mut awaiting_header = header;
    let mut edges = Vec::new();
    let mut max_endpoint: Option<Vertex> = None;

    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('#') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        if awaiting_header {
            awaiting_header = false;
            let n = parse_u64(tokens.next(), line_no, "vertex count")?;
            parse_u64(tokens.next(), line_no, "edge count")?;
            expect_end(tokens, line_no)?;
            if n > Vertex::MAX as u64 {
                return Err(GraphError::TooManyVertices(n as usize));
            }
            declared_n = Some(n as usize);
            continue;
        }
        let u = parse_u64(tokens.next(), line_no, "endpoint")?;
        let v = parse_u64(tokens.next(), line_no, "endpoint")?;
        expect_end(tokens, line_no)?;
        let u = to_vertex(u, line_no, declared_n)?;
        let v = to_vertex(v, line_no, declared_n)?;
        max_endpoint = max_endpoint.max(Some(u.max(v)));
        edges.push((u, v));
    }

    let n = declared_n.unwrap_or_else(|| max_endpoint.map_or(0, |m| m as usize + 1));
    Ok(Graph::new_unchecked(n, edges))
}

/// DIMACS-9 shortest-path format: `c` comments, one `p sp <n> <m>` line,
/// `a <u> <v> <w>` arcs with 1-indexed endpoints. Weights are discarded.
pub fn parse_dimacs(reader: impl BufRead) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();

    for (index, line) in reader.lines().enumerate() {
        let line_no = index + 1;
        let line = line?;
        let mut tokens = line.split_whitespace();
        match tokens.next() {
            None | Some("c") => {}
            Some("p") => {
                if n.is_some() {
                    return Err(malformed(line_no, "duplicate problem line"));
                }
                match tokens.next() {
                    Some("sp") => {}
                    other => {
                        return Err(malformed(
                            line_no,
                            format!("unsupported problem type `{}`", other.unwrap_or("")),
                        ))
                    }
                }
                let count = parse_u64(tokens.next(), line_no, "vertex count")?;
                parse_u64(tokens.next(), line_no, "arc count")?;
                expect_end(tokens, line_no)?;
                if count > Vertex::MAX as u64 {
                    return Err(GraphError::TooManyVertices(count as usize));
                }
                n = Some(count as usize);
            }
            Some("a") => {
                let n = n.ok_or(GraphError::ArcBeforeProblemLine(line_no))?;
                let u = parse_u64(tokens.next(), line_no, "arc tail")?;
                let v = parse_u64(tokens.next(), line_no, "arc head")?;
                parse_u64(tokens.next(), line_no, "arc weight")?;
                expect_end(tokens, line_no)?;
                let one_based = |x: u64| -> Result<Vertex, GraphError> {
                    if x == 0 || x > n as u64 {
                        Err(GraphError::EndpointOutOfRange {
                            line: Some(line_no),
                            vertex: x,
                            n,
                        })
                    } else {
                        Ok((x - 1) as Vertex)
                    }
                };
                edges.push((one_based(u)?, one_based(v)?));
            }
            Some(other) => {
                return Err(malformed(line_no, format!("unknown line type `{other}`")));
            }
        }
    }

    let n = n.ok_or(GraphError::MissingProblemLine)?;
    Ok(Graph::new_unchecked(n, edges))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum MtxField {
    Pattern,
    Valued,
}

fn parse_mtx_header(line: &str) -> Result<MtxField, GraphError> {
    let unsupported = || GraphError::UnsupportedHeader(line.trim().to_string());
    let lowered = line.to_ascii_lowercase();
    let tokens: Vec<&str> = lowered.split_whitespace().collect();
    let [banner, object, layout, field, symmetry] = tokens[..] else {
        return Err(unsupported());
    };
    if banner != "%%matrixmarket" || object != "matrix" || layout != "coordinate" {
        return Err(unsupported());
    }
    let field = match field {
        "pattern" => MtxField::Pattern,
        "real" | "integer" | "double" => MtxField::Valued,
        _ => return Err(unsupported()),
    };
    match symmetry {
        "general" | "symmetric" => Ok(field),
        _ => Err(unsupported()),
    }
}

/// MatrixMarket coordinate files, pattern or valued, general or symmetric.
/// Each entry becomes one edge record (symmetric entries are not mirrored);
/// diagonal entries are kept as self-loops.
pub fn parse_matrix_market(reader: impl BufRead) -> Result<Graph, GraphError> {
    let mut lines = reader.lines().enumerate();
    let field = match lines.next() {
        Some((_, line)) => parse_mtx_header(&line?)?,
        None => return Err(GraphError::UnsupportedHeader(String::new())),
    };

    let mut size: Option<(u64, u64, usize)> = None;
    let mut edges = Vec::new();
    for (index, line) in lines {
        let line_no = index + 1;
        let line = line?;
        let text = line.trim();
        if text.is_empty() || text.starts_with('%') {
            continue;
        }
        let mut tokens = text.split_whitespace();
        let Some((rows, cols, nnz)) = size else {
            let rows = parse_u64(tokens.next(), line_no, "row count")?;
            let cols = parse_u64(tokens.next(), line_no, "column count")?;
            let nnz = parse_u64(tokens.next(), line_no, "entry count")?;
            expect_end(tokens, line_no)?;
            if rows.max(cols) > Vertex::MAX as u64 {
                return Err(GraphError::TooManyVertices(rows.max(cols) as usize));
            }
            size = Some((rows, cols, nnz as usize));
            edges.reserve(nnz as usize);
            continue;
        };
        let n = rows.max(cols) as usize;
        let i = parse_u64(tokens.next(), line_no, "row index")?;
        let j = parse_u64(tokens.next(), line_no, "column index")?;
        if field == MtxField::Valued {
            let value = tokens
                .next()
                .ok_or_else(|| malformed(line_no, "missing value"))?;
            value
                .parse::<f64>()
                .map_err(|_| malformed(line_no, format!("invalid value `{value}`")))?;
        }
        expect_end(tokens, line_no)?;
        for (index, bound) in [(i, rows), (j, cols)] {
            if index == 0 || index > bound {
                return Err(GraphError::EndpointOutOfRange {
                    line: Some(line_no),
                    vertex: index,
                    n,
                });
            }
        }
        if edges.len() == nnz {
            return Err(GraphError::EntryCountMismatch {
                expected: nnz,
                found: nnz + 1,
            });
        }
        edges.push(((i - 1) as Vertex, (j - 1) as Vertex));
    }

    let (rows, cols, nnz) = size.ok_or_else(|| malformed(1, "missing size line"))?;
    if edges.len() != nnz {
        return Err(GraphError::EntryCountMismatch {
            expected: nnz,
            found: edges.len(),
        });
    }
    Ok(Graph::new_unchecked(rows.max(cols) as usize, edges))
}

/// Writes `u v` lines, preceded by an `n m` header when `header` is set.
/// Without the header, trailing isolated vertices are not representable.
pub fn write_edge_list(graph: &Graph, mut out: impl Write, header: bool) -> std::io::Result<()> {
    if header {
        writeln!(out, "{} {}", graph.num_vertices(), graph.num_edges())?;
    }
    for &(u, v) in graph.edges() {
        writeln!(out, "{u} {v}")?;
    }
    out.flush()
}

pub fn write_dimacs(graph: &Graph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "p sp {} {}", graph.num_vertices(), graph.num_edges())?;
    for &(u, v) in graph.edges() {
        writeln!(out, "a {} {} 1", u + 1, v + 1)?;
    }
    out.flush()
}

pub fn write_matrix_market(graph: &Graph, mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "%%MatrixMarket matrix coordinate pattern general")?;
    let n = graph.num_vertices();
    writeln!(out, "{n} {n} {}", graph.num_edges())?;
    for &(u, v) in graph.edges() {
        writeln!(out, "{} {}", u + 1, v + 1)?;
    }
    out.flush()
}

pub fn write_graph(graph: &Graph, out: impl Write, format: Format) -> std::io::Result<()> {
    match format {
        Format::EdgeList => write_edge_list(graph, out, true),
        Format::Dimacs => write_dimacs(graph, out),
        Format::MatrixMarket => write_matrix_market(graph, out),
    }
}

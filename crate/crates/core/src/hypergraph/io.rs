//! hMETIS `.hgr` reader/writer and cluster files.
//!
//! Vertex ids are 1-based on disk and 0-based in memory. Lines starting with
//! `%` are comments and may appear anywhere, including before the header.

use std::io::{BufRead, Write};

use super::{ClusterAssignment, Hypergraph, HypergraphBuilder};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Yields `(1-based line number, trimmed line)` for every non-comment,
/// non-blank line.
struct DataLines<R> {
    inner: std::io::Lines<R>,
    line_no: usize,
}

impl<R: BufRead> DataLines<R> {
    fn new(reader: R) -> Self {
        Self {
            inner: reader.lines(),
            line_no: 0,
        }
    }

    fn next_data(&mut self) -> Result<Option<(usize, String)>> {
        for line in self.inner.by_ref() {
            let line = line?;
            self.line_no += 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('%') {
                continue;
            }
            return Ok(Some((self.line_no, t.to_string())));
        }
        Ok(None)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Format {
    edge_weights: bool,
    vertex_weights: bool,
}

fn parse_header(line_no: usize, line: &str) -> Result<(usize, usize, Format)> {
    let bad = |reason: String| Error::MalformedHeader {
        line: line_no,
        reason,
    };
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() < 2 || tokens.len() > 3 {
        return Err(bad(format!("expected `|E| |V| [fmt]`, found {} fields", tokens.len())));
    }
    // Zero hyperedges is allowed so that fully contracted hypergraphs
    // written by `write_hgr` still parse.
    let count = |t: &str, what: &str, min: i64| -> Result<usize> {
        let v: i64 = t.parse().map_err(|_| bad(format!("{what} `{t}` is not an integer")))?;
        if v < min {
            return Err(bad(format!("{what} must be at least {min}, found {v}")));
        }
        Ok(v as usize)
    };
    let num_edges = count(tokens[0], "edge count", 0)?;
    let num_vertices = count(tokens[1], "vertex count", 1)?;
    let fmt = match tokens.get(2).copied() {
        None => Format {
            edge_weights: false,
            vertex_weights: false,
        },
        Some("1") => Format {
            edge_weights: true,
            vertex_weights: false,
        },
        Some("10") => Format {
            edge_weights: false,
            vertex_weights: true,
        },
        Some("11") => Format {
            edge_weights: true,
            vertex_weights: true,
        },
        Some(other) => return Err(bad(format!("unsupported fmt `{other}`"))),
    };
    Ok((num_edges, num_vertices, fmt))
}

fn parse_real(line_no: usize, t: &str, what: &str) -> Result<f64> {
    t.parse::<f64>().map_err(|_| Error::Parse {
        line: line_no,
        reason: format!("{what} `{t}` is not a number"),
    })
}

/// Parses an hMETIS hypergraph file.
pub fn parse_hgr<S: Scalar, R: BufRead>(reader: R) -> Result<Hypergraph<S>> {
    let mut lines = DataLines::new(reader);
    let (line_no, header) = lines.next_data()?.ok_or(Error::UnexpectedEof {
        expected: "header line".into(),
    })?;
    let (num_edges, num_vertices, fmt) = parse_header(line_no, &header)?;

    let mut builder = HypergraphBuilder::<S>::new(num_vertices);
    for e in 0..num_edges {
        let (line_no, line) = lines.next_data()?.ok_or_else(|| Error::UnexpectedEof {
            expected: format!("{num_edges} hyperedge lines, found {e}"),
        })?;
        let mut tokens = line.split_whitespace();
        let weight = if fmt.edge_weights {
            let t = tokens.next().unwrap_or("");
            let w = parse_real(line_no, t, "edge weight")?;
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::InvalidEdgeWeight { edge: e, weight: w });
            }
            S::of(w)
        } else {
            S::one()
        };
        let mut pins = Vec::new();
        for t in tokens {
            let idx: i64 = t.parse().map_err(|_| Error::Parse {
                line: line_no,
                reason: format!("vertex id `{t}` is not an integer"),
            })?;
            if idx < 1 || idx as u64 > num_vertices as u64 {
                return Err(Error::VertexOutOfRange {
                    line: line_no,
                    index: idx,
                    num_vertices,
                });
            }
            pins.push((idx - 1) as usize);
        }
        builder.add_edge(pins, weight);
    }

    if fmt.vertex_weights {
        let mut weights = Vec::with_capacity(num_vertices);
        for v in 0..num_vertices {
            let (line_no, line) = lines.next_data()?.ok_or_else(|| Error::UnexpectedEof {
                expected: format!("{num_vertices} vertex weight lines, found {v}"),
            })?;
            let w = parse_real(line_no, &line, "vertex weight")?;
            if !(w >= 0.0) || !w.is_finite() {
                return Err(Error::InvalidVertexWeight { vertex: v, weight: w });
            }
            weights.push(S::of(w));
        }
        builder.vertex_weights(weights);
    }

    if let Some((line_no, _)) = lines.next_data()? {
        return Err(Error::Parse {
            line: line_no,
            reason: "trailing data after the declared hyperedges/vertex weights".into(),
        });
    }
    builder.build()
}

pub fn parse_hgr_str<S: Scalar>(text: &str) -> Result<Hypergraph<S>> {
    parse_hgr(text.as_bytes())
}

/// Writes `h` in hMETIS format.
///
/// With `include_weights`, the fmt code advertises only the weight kinds
/// that differ from 1 (so unit-weight hypergraphs still produce the plain
/// two-field header). Weights use Rust's shortest round-trip formatting.
pub fn write_hgr<S: Scalar, W: Write>(h: &Hypergraph<S>, include_weights: bool, out: &mut W) -> Result<()> {
    let edge_w = include_weights && h.edge_weights().iter().any(|&w| w != S::one());
    let vertex_w = include_weights && h.vertex_weights().iter().any(|&w| w != S::one());
    match (edge_w, vertex_w) {
        (false, false) => writeln!(out, "{} {}", h.num_edges(), h.num_vertices())?,
        (true, false) => writeln!(out, "{} {} 1", h.num_edges(), h.num_vertices())?,
        (false, true) => writeln!(out, "{} {} 10", h.num_edges(), h.num_vertices())?,
        (true, true) => writeln!(out, "{} {} 11", h.num_edges(), h.num_vertices())?,
    }
    let mut line = String::new();
    for (_, pins, w) in h.edges() {
        line.clear();
        if edge_w {
            line.push_str(&w.to_string());
            line.push(' ');
        }
        for (i, &p) in pins.iter().enumerate() {
            if i > 0 {
                line.push(' ');
            }
            line.push_str(&(p + 1).to_string());
        }
        writeln!(out, "{line}")?;
    }
    if vertex_w {
        for w in h.vertex_weights() {
            writeln!(out, "{w}")?;
        }
    }
    Ok(())
}

pub fn to_hgr_string<S: Scalar>(h: &Hypergraph<S>, include_weights: bool) -> String {
    let mut buf = Vec::new();
    write_hgr(h, include_weights, &mut buf).expect("writing to Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

/// One cluster id per line, in vertex order.
pub fn write_clusters<W: Write>(a: &ClusterAssignment, out: &mut W) -> Result<()> {
    for &c in a.cluster_of() {
        writeln!(out, "{c}")?;
    }
    Ok(())
}

/// Reads exactly `n` cluster ids (comment and blank lines are skipped).
pub fn read_clusters<R: BufRead>(reader: R, n: usize) -> Result<ClusterAssignment> {
    let mut lines = DataLines::new(reader);
    let mut ids = Vec::with_capacity(n);
    while let Some((line_no, line)) = lines.next_data()? {
        let c: usize = line.parse().map_err(|_| Error::Parse {
            line: line_no,
            reason: format!("cluster id `{line}` is not a non-negative integer"),
        })?;
        ids.push(c);
    }
    if ids.len() != n {
        return Err(Error::LineCountMismatch {
            expected: n,
            found: ids.len(),
        });
    }
    ClusterAssignment::new(ids)
}

pub fn read_clusters_str(text: &str, n: usize) -> Result<ClusterAssignment> {
    read_clusters(text.as_bytes(), n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_plain() {
        let h: Hypergraph<f64> = parse_hgr_str("2 3\n1 2\n2 3\n").unwrap();
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.edge(0), &[0, 1]);
        assert_eq!(h.edge(1), &[1, 2]);
        assert_eq!(h.edge_weights(), &[1.0, 1.0]);
    }

    #[test]
    fn parse_edge_weights() {
        let h: Hypergraph<f64> = parse_hgr_str("1 3 1\n5 1 2 3\n").unwrap();
        assert_eq!(h.edge(0), &[0, 1, 2]);
        assert_eq!(h.edge_weight(0), 5.0);
    }

    #[test]
    fn parse_vertex_weights_and_comments() {
        let text = "% netlist\n1 3 11\n% pins\n2 1 3\n4\n0\n2.5\n";
        let h: Hypergraph<f64> = parse_hgr_str(text).unwrap();
        assert_eq!(h.edge_weight(0), 2.0);
        assert_eq!(h.vertex_weights(), &[4.0, 0.0, 2.5]);
    }

    #[test]
    fn parse_errors() {
        let e = parse_hgr_str::<f64>("1 2\n1 5\n").unwrap_err();
        assert!(matches!(e, Error::VertexOutOfRange { index: 5, .. }), "{e:?}");
        let e = parse_hgr_str::<f64>("1 2\n0 1\n").unwrap_err();
        assert!(matches!(e, Error::VertexOutOfRange { index: 0, .. }));
        assert!(matches!(parse_hgr_str::<f64>("x 2\n"), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_hgr_str::<f64>("-1 2\n"), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_hgr_str::<f64>("1 0\n"), Err(Error::MalformedHeader { .. })));
        let empty: Hypergraph<f64> = parse_hgr_str("0 2\n").unwrap();
        assert_eq!((empty.num_vertices(), empty.num_edges()), (2, 0));
        assert_eq!(parse_hgr_str::<f64>(&to_hgr_string(&empty, true)).unwrap(), empty);
        assert!(matches!(parse_hgr_str::<f64>("1 -2\n"), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_hgr_str::<f64>("1 2 7\n1 2\n"), Err(Error::MalformedHeader { .. })));
        assert!(matches!(parse_hgr_str::<f64>("1 2 1\n0 1 2\n"), Err(Error::InvalidEdgeWeight { .. })));
        assert!(matches!(parse_hgr_str::<f64>("1 2 1\n-3 1 2\n"), Err(Error::InvalidEdgeWeight { .. })));
        assert!(matches!(parse_hgr_str::<f64>("2 2\n1 2\n"), Err(Error::UnexpectedEof { .. })));
        assert!(matches!(parse_hgr_str::<f64>("1 2\n1 2\n2 1\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_hgr_str::<f64>(""), Err(Error::UnexpectedEof { .. })));
        assert!(matches!(parse_hgr_str::<f64>("1 2\n1 b\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn singleton_edges_dropped_and_counted() {
        let h: Hypergraph<f64> = parse_hgr_str("3 3\n1 2\n3\n2 2\n").unwrap();
        assert_eq!(h.num_edges(), 1);
        assert_eq!(h.dropped_edges(), 2);
    }

    #[test]
    fn write_unit_weights() {
        let h = Hypergraph::<f64>::from_edges(3, [[0, 1, 2]]).unwrap();
        assert_eq!(to_hgr_string(&h, true), "1 3\n1 2 3\n");
        assert_eq!(to_hgr_string(&h, false), "1 3\n1 2 3\n");
    }

    #[test]
    fn write_fractional_weights_full_precision() {
        let mut b = HypergraphBuilder::<f64>::new(3);
        b.add_edge([0, 1], 0.1 + 0.2).add_edge([1, 2], 2.0);
        b.vertex_weights(vec![2.0, 1.0, 1.0 / 3.0]);
        let h = b.build().unwrap();
        let text = to_hgr_string(&h, true);
        assert!(text.starts_with("2 3 11\n"));
        let back: Hypergraph<f64> = parse_hgr_str(&text).unwrap();
        assert_eq!(back, h);
        // Weights dropped when not requested.
        assert_eq!(to_hgr_string(&h, false), "2 3\n1 2\n2 3\n");
    }

    #[test]
    fn clusters_write_read() {
        let a = ClusterAssignment::new(vec![0, 0, 1]).unwrap();
        let mut buf = Vec::new();
        write_clusters(&a, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "0\n0\n1\n");
        assert_eq!(read_clusters_str("0\n0\n1\n", 3).unwrap(), a);
        assert_eq!(read_clusters_str("% header\n0\n0\n1\n", 3).unwrap(), a);
    }

    #[test]
    fn clusters_read_errors() {
        assert_eq!(
            read_clusters_str("0\n0\n", 3).unwrap_err(),
            Error::LineCountMismatch { expected: 3, found: 2 }
        );
        assert!(matches!(read_clusters_str("0\nx\n1\n", 3), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(read_clusters_str("0\n-1\n1\n", 3), Err(Error::Parse { .. })));
        assert!(matches!(read_clusters_str("0\n2\n2\n", 3), Err(Error::InvalidAssignment(_))));
    }
}

//! Plain-text edge lists and label files.
//!
//! Edge list: one `u v` pair per line (optionally `u v w` with a weight),
//! non-negative integer ids, `#` starts a comment line. Labels: one integer
//! per line, the `i`-th holding the group of vertex `i`; `#` comment lines
//! are skipped.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::io::Write;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

struct RawEdge {
    line: usize,
    u: u64,
    v: u64,
    weight: Option<f64>,
}

fn parse_lines(text: &str) -> Result<Vec<RawEdge>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = trimmed.split_whitespace();
        let mut id = |what: &str| -> Result<u64> {
            let tok = tokens.next().ok_or_else(|| Error::Parse {
                line,
                message: format!("missing {what} vertex"),
            })?;
            tok.parse().map_err(|_| Error::Parse {
                line,
                message: format!("invalid vertex id {tok:?}"),
            })
        };
        let u = id("first")?;
        let v = id("second")?;
        let weight = match tokens.next() {
            None => None,
            Some(tok) => Some(tok.parse::<f64>().map_err(|_| Error::Parse {
                line,
                message: format!("invalid weight {tok:?}"),
            })?),
        };
        if let Some(extra) = tokens.next() {
            return Err(Error::Parse {
                line,
                message: format!("unexpected token {extra:?}"),
            });
        }
        out.push(RawEdge { line, u, v, weight });
    }
    Ok(out)
}

fn check_simple(raw: &[RawEdge], ids: impl Fn(u64) -> usize) -> Result<Vec<(usize, usize)>> {
    let mut seen = HashSet::with_capacity(raw.len());
    raw.iter()
        .map(|e| {
            let (u, v) = (ids(e.u), ids(e.v));
            if u == v {
                return Err(Error::SelfLoop {
                    line: e.line,
                    vertex: e.u as usize,
                });
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge {
                    line: e.line,
                    u: e.u as usize,
                    v: e.v as usize,
                });
            }
            Ok((u, v))
        })
        .collect()
}

/// Parses an edge list; vertices are `0..=max_id`.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let raw = parse_lines(text)?;
    let n = raw.iter().map(|e| e.u.max(e.v) as usize + 1).max().unwrap_or(0);
    let edges = check_simple(&raw, |id| id as usize)?;
    Ok(Graph::from_simple_edges(n, &edges))
}

/// Parses an edge list whose third column holds a symmetric edge weight.
/// Returns the weights in the order of [`Graph::edges`].
pub fn parse_weighted_edge_list(text: &str) -> Result<(Graph, Vec<f64>)> {
    let raw = parse_lines(text)?;
    let n = raw.iter().map(|e| e.u.max(e.v) as usize + 1).max().unwrap_or(0);
    let edges = check_simple(&raw, |id| id as usize)?;
    let mut by_edge = HashMap::with_capacity(edges.len());
    for (e, &(u, v)) in raw.iter().zip(&edges) {
        let w = e.weight.ok_or(Error::MissingWeight(u, v))?;
        by_edge.insert((u.min(v), u.max(v)), w);
    }
    let g = Graph::from_simple_edges(n, &edges);
    let weights = g.edges().map(|key| by_edge[&key]).collect();
    Ok((g, weights))
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_edge_list(&text)
}

pub fn load_weighted_edge_list(path: impl AsRef<Path>) -> Result<(Graph, Vec<f64>)> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_weighted_edge_list(&text)
}

/// A graph whose vertices were renumbered densely in order of first
/// appearance; `original_ids[v]` is the id used in the file.
#[derive(Debug, Clone)]
pub struct ReindexedGraph {
    pub graph: Graph,
    pub original_ids: Vec<u64>,
}

pub fn load_edge_list_reindexed(path: impl AsRef<Path>) -> Result<ReindexedGraph> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let raw = parse_lines(&text)?;
    let mut index: HashMap<u64, usize> = HashMap::new();
    let mut original_ids = Vec::new();
    for e in &raw {
        for id in [e.u, e.v] {
            index.entry(id).or_insert_with(|| {
                original_ids.push(id);
                original_ids.len() - 1
            });
        }
    }
    let edges = check_simple(&raw, |id| index[&id])?;
    Ok(ReindexedGraph {
        graph: Graph::from_simple_edges(original_ids.len(), &edges),
        original_ids,
    })
}

/// Writes `u v` lines with `u < v`, sorted.
pub fn write_edge_list(g: &Graph, mut out: impl Write) -> std::io::Result<()> {
    for (u, v) in g.edges() {
        writeln!(out, "{u} {v}")?;
    }
    Ok(())
}

pub fn write_labels(labels: &[usize], mut out: impl Write) -> std::io::Result<()> {
    for l in labels {
        writeln!(out, "{l}")?;
    }
    Ok(())
}

pub fn read_labels(text: &str) -> Result<Vec<usize>> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            l.trim().parse().map_err(|_| Error::Parse {
                line: i + 1,
                message: format!("invalid label {:?}", l.trim()),
            })
        })
        .collect()
}

pub fn load_labels(path: impl AsRef<Path>) -> Result<Vec<usize>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    read_labels(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn path_of_three() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((g.n(), g.m()), (3, 2));
    }

    #[test]
    fn comments_blank_lines_and_isolated_vertices() {
        let g = parse_edge_list("# header\n\n0 4\n").unwrap();
        assert_eq!((g.n(), g.m()), (5, 1));
        assert_eq!(g.degree(2), 0);
    }

    #[test]
    fn self_loop_names_line() {
        let err = parse_edge_list("0 1\n0 0").unwrap_err();
        assert!(matches!(err, Error::SelfLoop { line: 2, vertex: 0 }));
        assert!(err.to_string().contains("line 2"));
    }

    #[test]
    fn reversed_duplicate_is_rejected() {
        assert!(matches!(
            parse_edge_list("0 1\n1 0"),
            Err(Error::DuplicateEdge { line: 2, .. })
        ));
    }

    #[test]
    fn non_integer_token() {
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(parse_edge_list("0 -1"), Err(Error::Parse { .. })));
    }

    #[test]
    fn weighted_lists() {
        let (g, w) = parse_weighted_edge_list("1 0 2.5\n1 2 0.5").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(w, vec![2.5, 0.5]);
        assert!(matches!(
            parse_weighted_edge_list("0 1 1\n1 2"),
            Err(Error::MissingWeight(1, 2))
        ));
    }

    #[test]
    fn export_round_trip() {
        let text = "3 1\n0 2\n1 0\n";
        let g = parse_edge_list(text).unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "0 1\n0 2\n1 3\n");
        assert_eq!(parse_edge_list(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
    }

    #[test]
    fn reindexing_keeps_original_ids() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        fs::write(&path, "100 7\n7 900000\n").unwrap();
        let r = load_edge_list_reindexed(&path).unwrap();
        assert_eq!(r.graph.n(), 3);
        assert_eq!(r.original_ids, vec![100, 7, 900000]);
        assert!(r.graph.has_edge(0, 1) && r.graph.has_edge(1, 2));
    }

    #[test]
    fn labels_round_trip() {
        let mut buf = Vec::new();
        write_labels(&[0, 2, 1], &mut buf).unwrap();
        assert_eq!(
            read_labels(std::str::from_utf8(&buf).unwrap()).unwrap(),
            vec![0, 2, 1]
        );
    }
}

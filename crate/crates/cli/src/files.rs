//! Output file conventions.
//!
//! Every file the tool writes starts with `# key: value` comment lines
//! carrying the command, seed and full parameter set. Edge lists record
//! `n` so that trailing isolated vertices survive a round trip.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;

use nonbacktracking::graph::{parse_edge_list, read_labels, write_edge_list, write_labels};
use nonbacktracking::Graph;

use crate::error::{CliError, Result};

/// Ordered `key: value` metadata written as leading comment lines.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Header {
    entries: Vec<(String, String)>,
}

impl Header {
    pub fn new(command: &str, seed: u64) -> Self {
        let mut h = Header::default();
        h.push("command", command);
        h.push("seed", seed);
        h
    }

    pub fn push(&mut self, key: &str, value: impl ToString) {
        self.entries.push((key.to_string(), value.to_string()));
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn entries(&self) -> &[(String, String)] {
        &self.entries
    }

    /// Reads the leading run of `# key: value` lines.
    pub fn parse(text: &str) -> Self {
        let mut h = Header::default();
        for line in text.lines() {
            let Some(rest) = line.strip_prefix('#') else { break };
            if let Some((k, v)) = rest.split_once(':') {
                h.push(k.trim(), v.trim());
            }
        }
        h
    }

    pub fn write_to(&self, mut out: impl Write) -> std::io::Result<()> {
        for (k, v) in &self.entries {
            writeln!(out, "# {k}: {v}")?;
        }
        Ok(())
    }
}

/// Floats in CSV cells: 17 significant digits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| CliError::io(path, e))
}

fn finish(path: &Path, mut w: BufWriter<File>) -> Result<()> {
    w.flush().map_err(|e| CliError::io(path, e))
}

/// Writes `header`, the vertex count and the sorted edge list.
pub fn write_graph(path: &Path, g: &Graph, header: &Header) -> Result<()> {
    let mut w = create(path)?;
    let mut h = header.clone();
    h.push("n", g.n());
    h.push("m", g.m());
    h.write_to(&mut w)
        .and_then(|_| write_edge_list(g, &mut w))
        .map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

pub fn write_label_file(path: &Path, labels: &[usize], header: &Header) -> Result<()> {
    let mut w = create(path)?;
    header
        .write_to(&mut w)
        .and_then(|_| write_labels(labels, &mut w))
        .map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

/// Writes a header followed by `body` verbatim.
pub fn write_text(path: &Path, header: &Header, body: &str) -> Result<()> {
    let mut w = create(path)?;
    header
        .write_to(&mut w)
        .and_then(|_| w.write_all(body.as_bytes()))
        .map_err(|e| CliError::io(path, e))?;
    finish(path, w)
}

pub fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// Loads an edge list. A `# n: N` header extends the vertex set to `N`.
pub fn load_graph(path: &Path) -> Result<Graph> {
    let text = read_text(path)?;
    let g = parse_edge_list(&text)?;
    let declared = match Header::parse(&text).get("n") {
        Some(v) => v
            .parse::<usize>()
            .map_err(|_| CliError::Usage(format!("{}: bad vertex count {v:?}", path.display())))?,
        None => return Ok(g),
    };
    if declared < g.n() {
        return Err(CliError::Usage(format!(
            "{}: header declares n = {declared} but vertex {} appears",
            path.display(),
            g.n() - 1
        )));
    }
    if declared == g.n() {
        return Ok(g);
    }
    let edges: Vec<_> = g.edges().collect();
    Ok(Graph::from_edges(declared, &edges)?)
}

pub fn load_label_file(path: &Path) -> Result<Vec<usize>> {
    Ok(read_labels(&read_text(path)?)?)
}

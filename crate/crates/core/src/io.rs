//! Plain-text file formats.
//!
//! * Edge list: a header line `n m`, then `m` lines `i j w` (0-based).
//! * Coordinates sidecar: lines `i x y`.
//! * Signals: one value per line.
//! * Sampling set: a header `# T_hat=<t> valid=<0|1> certified_lb=<lb>`,
//!   then one node per line in selection order.
//!
//! `#` starts a comment everywhere except that the sampling-set header is
//! itself a comment line that readers parse when present.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::graph::Graph;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

/// Non-empty, comment-stripped lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(k, line)| {
        let body = line.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((k + 1, body))
    })
}

fn parse_err(path: &Path, line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_path_buf(),
        line,
        message: message.into(),
    }
}

fn field<T: std::str::FromStr>(path: &Path, line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    let tok = tok.ok_or_else(|| parse_err(path, line, format!("missing {what}")))?;
    tok.parse()
        .map_err(|_| parse_err(path, line, format!("invalid {what} `{tok}`")))
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.num_edges());
    for e in g.edges() {
        let _ = writeln!(out, "{} {} {}", e.i, e.j, e.w);
    }
    out
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &format_edge_list(g))
}

pub fn parse_edge_list(text: &str, path: &Path) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| parse_err(path, 1, "missing `n m` header"))?;
    let mut toks = header.split_whitespace();
    let n: usize = field(path, hline, toks.next(), "node count")?;
    let m: usize = field(path, hline, toks.next(), "edge count")?;
    if toks.next().is_some() {
        return Err(parse_err(path, hline, "header must be `n m`"));
    }
    if n == 0 {
        return Err(parse_err(path, hline, "node count must be at least 1"));
    }

    let invalid = |line: usize, source: Error| Error::InvalidGraphFile {
        path: path.to_path_buf(),
        line,
        source: Box::new(source),
    };
    let mut edges = Vec::with_capacity(m);
    let mut seen: HashMap<(usize, usize), usize> = HashMap::with_capacity(m);
    let mut last_line = hline;
    for (line, body) in lines {
        last_line = line;
        let mut toks = body.split_whitespace();
        let i: usize = field(path, line, toks.next(), "source node")?;
        let j: usize = field(path, line, toks.next(), "target node")?;
        let w: f64 = field(path, line, toks.next(), "weight")?;
        if toks.next().is_some() {
            return Err(parse_err(path, line, "edge line must be `i j w`"));
        }
        if i >= n || j >= n {
            return Err(invalid(line, Error::NodeOutOfRange { i, j, n }));
        }
        if i == j {
            return Err(invalid(line, Error::SelfLoop(i)));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(invalid(line, Error::InvalidWeight { i, j, w }));
        }
        let key = (i.min(j), i.max(j));
        if seen.insert(key, line).is_some() {
            return Err(invalid(line, Error::DuplicateEdge { i: key.0, j: key.1 }));
        }
        edges.push((i, j, w));
    }
    if edges.len() != m {
        return Err(parse_err(
            path,
            last_line,
            format!("header declares {m} edges but {} were found", edges.len()),
        ));
    }
    Graph::new(n, edges)
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    parse_edge_list(&read(path)?, path)
}

/// Sidecar path for coordinates: `<graph>.xy`.
pub fn coords_path(graph_path: impl AsRef<Path>) -> PathBuf {
    let mut p = graph_path.as_ref().as_os_str().to_owned();
    p.push(".xy");
    PathBuf::from(p)
}

pub fn save_coords(coords: &[[f64; 2]], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for (i, c) in coords.iter().enumerate() {
        let _ = writeln!(out, "{i} {} {}", c[0], c[1]);
    }
    write(path.as_ref(), &out)
}

pub fn load_coords(path: impl AsRef<Path>, n: usize) -> Result<Vec<[f64; 2]>> {
    let path = path.as_ref();
    let text = read(path)?;
    let mut coords = vec![None; n];
    for (line, body) in content_lines(&text) {
        let mut toks = body.split_whitespace();
        let i: usize = field(path, line, toks.next(), "node")?;
        let x: f64 = field(path, line, toks.next(), "x")?;
        let y: f64 = field(path, line, toks.next(), "y")?;
        if i >= n {
            return Err(parse_err(path, line, format!("node {i} out of range for {n} nodes")));
        }
        coords[i] = Some([x, y]);
    }
    coords
        .into_iter()
        .enumerate()
        .map(|(i, c)| c.ok_or_else(|| parse_err(path, 0, format!("no coordinates for node {i}"))))
        .collect()
}

pub fn save_signal(values: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::with_capacity(values.len() * 20);
    for v in values {
        let _ = writeln!(out, "{v}");
    }
    write(path.as_ref(), &out)
}

pub fn load_signal(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let text = read(path)?;
    content_lines(&text)
        .map(|(line, body)| field(path, line, Some(body), "value"))
        .collect()
}

/// Contents of a sampling-set file.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingSetFile {
    pub t_hat: f64,
    pub valid: bool,
    pub certified_lb: f64,
    pub nodes: Vec<usize>,
}

pub fn format_sampling_set(set: &SamplingSetFile) -> String {
    let mut out = format!(
        "# T_hat={} valid={} certified_lb={}\n",
        set.t_hat,
        u8::from(set.valid),
        set.certified_lb
    );
    for v in &set.nodes {
        let _ = writeln!(out, "{v}");
    }
    out
}

pub fn save_sampling_set(set: &SamplingSetFile, path: impl AsRef<Path>) -> Result<()> {
    write(path.as_ref(), &format_sampling_set(set))
}

/// Reads a sampling-set file. A missing header yields `T_hat = 0`,
/// `valid = false` and `certified_lb = 0`.
pub fn parse_sampling_set(text: &str, path: &Path) -> Result<SamplingSetFile> {
    let mut set = SamplingSetFile {
        t_hat: 0.0,
        valid: false,
        certified_lb: 0.0,
        nodes: Vec::new(),
    };
    if let Some((k, first)) = text.lines().enumerate().find(|(_, l)| !l.trim().is_empty()) {
        if let Some(header) = first.trim().strip_prefix('#') {
            for kv in header.split_whitespace() {
                let Some((key, value)) = kv.split_once('=') else {
                    continue;
                };
                match key {
                    "T_hat" => set.t_hat = field(path, k + 1, Some(value), "T_hat")?,
                    "certified_lb" => set.certified_lb = field(path, k + 1, Some(value), "certified_lb")?,
                    "valid" => {
                        set.valid = match value {
                            "1" => true,
                            "0" => false,
                            other => return Err(parse_err(path, k + 1, format!("invalid valid flag `{other}`"))),
                        }
                    }
                    _ => {}
                }
            }
        }
    }
    for (line, body) in content_lines(text) {
        set.nodes.push(field(path, line, Some(body), "node index")?);
    }
    Ok(set)
}

pub fn load_sampling_set(path: impl AsRef<Path>) -> Result<SamplingSetFile> {
    let path = path.as_ref();
    parse_sampling_set(&read(path)?, path)
}

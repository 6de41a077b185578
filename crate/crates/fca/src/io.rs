//! Text formats for graphs, colorings, traces, and reports.
//!
//! - Edge lists: a `n m` header line, then `m` lines `u v`; `#` starts a
//!   comment line and blank lines are skipped.
//! - Colorings: comma-separated states in vertex-index order, `1,5,7,...`.
//! - Compact edge codes: `0-1;1-2` (the empty code is the one-vertex graph),
//!   used inside reports so every recorded instance can be replayed.
//! - Traces: CSV with header `t,v0,...,v{n-1}`, one row per step across the
//!   transient and one full period.
//! - Summaries and reports: JSON with a fixed field order, so identical
//!   inputs serialize byte-identically.

use crate::dynamics::{step, Configuration, DynamicsError};
use crate::graph::{build_graph, Graph, GraphError};
use crate::orbit::{blinking_profile, OrbitSummary};
use serde::Serialize;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IoError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
}

fn parse_err(line: usize, message: impl Into<String>) -> IoError {
    IoError::Parse {
        line,
        message: message.into(),
    }
}

/// Parse the `n m` + edge-lines format. Comment (`#`) and blank lines are
/// ignored everywhere.
pub fn parse_edge_list(text: &str) -> Result<Graph, IoError> {
    let mut header: Option<(usize, usize)> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(parse_err(
                line_no,
                format!("expected two integers, got {line:?}"),
            ));
        }
        let a = fields[0]
            .parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("bad integer {:?}", fields[0])))?;
        let b = fields[1]
            .parse::<usize>()
            .map_err(|_| parse_err(line_no, format!("bad integer {:?}", fields[1])))?;
        match header {
            None => header = Some((a, b)),
            Some(_) => edges.push((a, b)),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `n m` header line"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header declares {m} edges but {} were listed", edges.len()),
        ));
    }
    Ok(build_graph(n, &edges)?)
}

/// Write the `n m` + edge-lines format.
pub fn write_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// Compact single-line edge code: `0-1;1-2`. The empty string encodes the
/// one-vertex graph.
pub fn edge_code(g: &Graph) -> String {
    g.edges()
        .iter()
        .map(|(u, v)| format!("{u}-{v}"))
        .collect::<Vec<_>>()
        .join(";")
}

/// Parse an edge code back into a graph; vertex count is one more than the
/// largest mentioned index.
pub fn parse_edge_code(code: &str) -> Result<Graph, IoError> {
    let code = code.trim();
    if code.is_empty() {
        return Ok(build_graph(1, &[])?);
    }
    let mut edges = Vec::new();
    let mut n = 0;
    for part in code.split(';') {
        let (u, v) = part
            .split_once('-')
            .ok_or_else(|| parse_err(0, format!("bad edge token {part:?}")))?;
        let u = u
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_err(0, format!("bad vertex {u:?}")))?;
        let v = v
            .trim()
            .parse::<usize>()
            .map_err(|_| parse_err(0, format!("bad vertex {v:?}")))?;
        n = n.max(u + 1).max(v + 1);
        edges.push((u, v));
    }
    Ok(build_graph(n, &edges)?)
}

/// Parse the comma-separated coloring format into a validated configuration.
pub fn parse_coloring(text: &str, kappa: u32) -> Result<Configuration, IoError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(parse_err(1, "empty coloring"));
    }
    let mut states = Vec::new();
    for tok in text.split(',') {
        let tok = tok.trim();
        states.push(
            tok.parse::<u8>()
                .map_err(|_| parse_err(1, format!("bad state {tok:?}")))?,
        );
    }
    Ok(Configuration::new(kappa, states)?)
}

/// Write the comma-separated coloring format.
pub fn write_coloring(states: &[u8]) -> String {
    states
        .iter()
        .map(|s| s.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// CSV trace of the orbit: header `t,v0,...,v{n-1}`, then one row per step
/// for `t = 0 .. transient + period`, re-simulated from `x0`.
pub fn trace_csv(
    g: &Graph,
    x0: &Configuration,
    summary: &OrbitSummary,
) -> Result<String, DynamicsError> {
    let n = g.n();
    let mut out = String::from("t");
    for v in 0..n {
        let _ = write!(out, ",v{v}");
    }
    out.push('\n');
    let mut x = x0.clone();
    for t in 0..summary.transient + summary.period {
        let _ = write!(out, "{t}");
        for v in 0..n {
            let _ = write!(out, ",{}", x.state(v));
        }
        out.push('\n');
        x = step(g, &x)?;
    }
    Ok(out)
}

#[derive(Serialize)]
struct OrbitJson {
    kappa: u32,
    n: usize,
    transient: u64,
    period: u64,
    synchronized: bool,
    blink_times: Vec<Vec<u64>>,
}

/// JSON rendering of an orbit summary with per-vertex blink times (empty
/// arrays for vertices that never blink in the cycle).
pub fn orbit_json(summary: &OrbitSummary) -> String {
    let blink_times = (0..summary.n())
        .map(|v| {
            blinking_profile(summary, v)
                .map(|p| p.blink_times)
                .unwrap_or_default()
        })
        .collect();
    to_json_pretty(&OrbitJson {
        kappa: summary.kappa(),
        n: summary.n(),
        transient: summary.transient,
        period: summary.period,
        synchronized: summary.synchronized,
        blink_times,
    })
}

/// Pretty JSON with serde's deterministic struct-order fields.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}

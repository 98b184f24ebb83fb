//! Edge-list text format: a header line `n m`, then `m` lines `u v` with
//! `0 <= u < v < n`. Blank lines and lines starting with `#` are skipped.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (hline, header) = lines.next().ok_or(Error::Parse {
        line: 0,
        msg: "missing header line".into(),
    })?;
    let (n, m) = two_numbers(hline, header)?;

    let mut edges = Vec::with_capacity(m);
    for (line, body) in lines {
        let (u, v) = two_numbers(line, body)?;
        if u >= v || v >= n {
            return Err(Error::Parse {
                line,
                msg: format!("expected 0 <= u < v < {n}, got {u} {v}"),
            });
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse {
            line: 0,
            msg: format!("header declares {m} edges, found {}", edges.len()),
        });
    }
    Graph::from_edges(n, edges)
}

fn two_numbers(line: usize, body: &str) -> Result<(usize, usize)> {
    let bad = |msg: String| Error::Parse { line, msg };
    let mut it = body.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| bad("expected two integers".into()))?;
        tok.parse().map_err(|_| bad(format!("not a vertex index: {tok:?}")))
    };
    let a = next()?;
    let b = next()?;
    if it.next().is_some() {
        return Err(bad("trailing tokens".into()));
    }
    Ok((a, b))
}

pub fn format_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "{} {}", g.n(), g.edge_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").unwrap();
    }
    out
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Graph> {
    parse_edge_list(&fs::read_to_string(path)?)
}

pub fn write_edge_list(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    fs::write(path, format_edge_list(g))?;
    Ok(())
}

//! Edge-list text format: a `p <num_vertices>` header line followed by
//! `e <i> <j>` lines with 1-based labels. Lines starting with `#` are
//! comments; blank lines are ignored.

use super::Graph;
use crate::error::{Error, Result};
use std::fmt::Write;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut p: Option<usize> = None;
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| Error::Parse { line: line_no, msg };
        let fields: Vec<&str> = line.split_whitespace().collect();
        let num = |s: &str| {
            s.parse::<usize>()
                .map_err(|_| err(format!("expected a non-negative integer, got `{s}`")))
        };
        match fields.as_slice() {
            ["p", n] => {
                if p.is_some() {
                    return Err(err("duplicate `p` header".into()));
                }
                p = Some(num(n)?);
            }
            ["e", i, j] => {
                if p.is_none() {
                    return Err(err("edge before `p` header".into()));
                }
                pairs.push((num(i)?, num(j)?));
            }
            _ => return Err(err(format!("unrecognised line `{line}`"))),
        }
    }
    let p = p.ok_or(Error::Parse { line: 0, msg: "missing `p` header".into() })?;
    Graph::from_edge_list(p, &pairs)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "p {}", g.order()).unwrap();
    for (i, j) in g.edges() {
        writeln!(out, "e {} {}", i + 1, j + 1).unwrap();
    }
    out
}

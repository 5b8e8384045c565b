//! Graph arguments for the CLI: a bare graph6 string, `@path` for an
//! edge-list file, or `@-` for an edge list on standard input.
//!
//! A lone `@` is the graph6 string for the one-vertex graph, not a file
//! reference: any file reference has at least one character after the `@`,
//! and no longer graph6 string starts with `@` (that header byte fixes the
//! vertex count at one, which needs no data bytes).

use std::fs;
use std::io::Read;

use anyhow::{Context, Result};
use domlab_core::codec::{parse_edge_list, parse_graph6};
use domlab_core::graph::Graph;

pub fn parse_graph_arg(arg: &str) -> Result<Graph> {
    if let Some(path) = arg.strip_prefix('@') {
        if path.is_empty() {
            // "@" alone is graph6 for K1
            return parse_graph6(arg).map_err(Into::into);
        }
        let text = if path == "-" {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .context("reading edge list from stdin")?;
            buf
        } else {
            fs::read_to_string(path).with_context(|| format!("reading edge list {path}"))?
        };
        let g = parse_edge_list(&text).with_context(|| format!("parsing edge list {path}"))?;
        g.check_invariants();
        Ok(g)
    } else {
        let g = parse_graph6(arg).with_context(|| format!("parsing graph6 {arg:?}"))?;
        g.check_invariants();
        Ok(g)
    }
}

/// `"0,2"` into a vertex list.
pub fn parse_vertex_list(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|t| t.trim().parse().with_context(|| format!("vertex id {t:?}")))
        .collect()
}

/// Product-set input: either `(g,h)` coordinate pairs or raw product ids,
/// comma separated.
pub enum ProductSetArg {
    Coordinates(Vec<(usize, usize)>),
    RawIds(Vec<usize>),
}

pub fn parse_product_set(text: &str) -> Result<ProductSetArg> {
    let trimmed = text.trim();
    if trimmed.contains('(') {
        let mut out = Vec::new();
        let mut rest = trimmed;
        while let Some(open) = rest.find('(') {
            let close = rest[open..]
                .find(')')
                .map(|c| open + c)
                .context("unbalanced parenthesis in coordinate list")?;
            let body = &rest[open + 1..close];
            let (g, h) = body
                .split_once(',')
                .context("coordinate needs the form (g,h)")?;
            out.push((
                g.trim()
                    .parse()
                    .with_context(|| format!("coordinate {body:?}"))?,
                h.trim()
                    .parse()
                    .with_context(|| format!("coordinate {body:?}"))?,
            ));
            rest = &rest[close + 1..];
        }
        anyhow::ensure!(!out.is_empty(), "empty coordinate list");
        Ok(ProductSetArg::Coordinates(out))
    } else {
        Ok(ProductSetArg::RawIds(parse_vertex_list(trimmed)?))
    }
}

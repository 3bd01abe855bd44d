//! Plain-text graph files.
//!
//! The first non-comment line is `n_left n_right n_edges`, followed by
//! `n_edges` lines of `l r w` with 0-based indices. Lines starting with
//! `#` are comments and blank lines are ignored. Weights parse as
//! integers unless any weight token contains a `.` or an exponent, in
//! which case the whole file is read in real mode.

use crate::graph::BipartiteGraph;
use crate::weight::Weight;
use std::io::{self, BufRead, Write as IoWrite};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("io error: {0}")]
    Io(#[from] io::Error),
}

/// A parsed graph in whichever weight mode the file used.
#[derive(Debug, Clone)]
pub enum ParsedGraph {
    Int(BipartiteGraph<i64>),
    Real(BipartiteGraph<f64>),
}

fn malformed(line: usize, message: impl Into<String>) -> ParseError {
    ParseError::Malformed {
        line,
        message: message.into(),
    }
}

fn is_real_token(tok: &str) -> bool {
    tok.contains('.') || tok.contains('e') || tok.contains('E')
}

pub fn parse_graph<R: BufRead>(reader: R) -> Result<ParsedGraph, ParseError> {
    let mut header: Option<(usize, usize, usize, usize)> = None;
    let mut raw_edges: Vec<(usize, usize, String, usize)> = Vec::new();

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let toks: Vec<&str> = trimmed.split_whitespace().collect();
        match header {
            None => {
                if toks.len() != 3 {
                    return Err(malformed(
                        lineno,
                        format!("expected header `n_left n_right n_edges`, got {} tokens", toks.len()),
                    ));
                }
                let mut vals = [0usize; 3];
                for (i, t) in toks.iter().enumerate() {
                    vals[i] = t
                        .parse()
                        .map_err(|_| malformed(lineno, format!("invalid count `{t}`")))?;
                }
                header = Some((vals[0], vals[1], vals[2], lineno));
            }
            Some((n_left, n_right, n_edges, _)) => {
                if raw_edges.len() == n_edges {
                    return Err(malformed(lineno, "more edge lines than declared"));
                }
                if toks.len() != 3 {
                    return Err(malformed(
                        lineno,
                        format!("expected `l r w`, got {} tokens", toks.len()),
                    ));
                }
                let l: usize = toks[0]
                    .parse()
                    .map_err(|_| malformed(lineno, format!("invalid left index `{}`", toks[0])))?;
                let r: usize = toks[1]
                    .parse()
                    .map_err(|_| malformed(lineno, format!("invalid right index `{}`", toks[1])))?;
                if l >= n_left || r >= n_right {
                    return Err(malformed(
                        lineno,
                        format!("edge ({l}, {r}) out of range for {n_left} x {n_right} graph"),
                    ));
                }
                raw_edges.push((l, r, toks[2].to_string(), lineno));
            }
        }
    }

    let (n_left, n_right, n_edges, header_line) =
        header.ok_or_else(|| malformed(1, "missing header line"))?;
    if raw_edges.len() != n_edges {
        return Err(malformed(
            header_line,
            format!("declared {n_edges} edges but found {}", raw_edges.len()),
        ));
    }

    let real_mode = raw_edges.iter().any(|(_, _, tok, _)| is_real_token(tok));
    if real_mode {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (l, r, tok, lineno) in &raw_edges {
            let w: f64 = tok
                .parse()
                .map_err(|_| malformed(*lineno, format!("invalid weight `{tok}`")))?;
            if !w.is_finite() {
                return Err(malformed(*lineno, format!("non-finite weight `{tok}`")));
            }
            edges.push((*l, *r, w));
        }
        let g = BipartiteGraph::build(n_left, n_right, &edges)
            .map_err(|e| malformed(header_line, e.to_string()))?;
        Ok(ParsedGraph::Real(g))
    } else {
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (l, r, tok, lineno) in &raw_edges {
            let w: i64 = tok
                .parse()
                .map_err(|_| malformed(*lineno, format!("invalid weight `{tok}`")))?;
            edges.push((*l, *r, w));
        }
        let g = BipartiteGraph::build(n_left, n_right, &edges)
            .map_err(|e| malformed(header_line, e.to_string()))?;
        Ok(ParsedGraph::Int(g))
    }
}

/// Writes a graph in the orientation it was declared with: a graph
/// that was transposed during normalization is swapped back, so parsing
/// the output reconstructs an identical graph.
pub fn write_graph<W: Weight, O: IoWrite>(g: &BipartiteGraph<W>, out: &mut O) -> io::Result<()> {
    if g.transposed() {
        writeln!(out, "{} {} {}", g.n_right(), g.n_left(), g.n_edges())?;
        for (l, r, w) in g.edges() {
            writeln!(out, "{} {} {}", r, l, w.format_token())?;
        }
    } else {
        writeln!(out, "{} {} {}", g.n_left(), g.n_right(), g.n_edges())?;
        for (l, r, w) in g.edges() {
            writeln!(out, "{} {} {}", l, r, w.format_token())?;
        }
    }
    Ok(())
}

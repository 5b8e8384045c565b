//! Text formats for graphs: graph6 interchange and a line-based edge list.
//!
//! graph6 follows the standard 6-bit upper-triangle encoding bit-exactly
//! (size header, column-major upper triangle, zero padding to a byte
//! boundary of six-bit groups). The edge-list format is
//! `"n\nu v\n..."` with 0-based vertex ids, one edge per line.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::VertexSet;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphFormat {
    Graph6,
    EdgeList,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseError {
    /// graph6 input ended before the size header was complete.
    Graph6Header {
        offset: usize,
    },
    /// Byte outside the printable graph6 range `63..=126`.
    Graph6Byte {
        offset: usize,
        byte: u8,
    },
    /// Number of data bytes does not match the advertised vertex count.
    Graph6Length {
        expected: usize,
        got: usize,
    },
    /// Padding bits past the upper triangle were not zero.
    Graph6Padding {
        offset: usize,
    },
    /// First edge-list line is not a vertex count.
    EdgeListHeader {
        line: usize,
    },
    /// Edge line did not parse as two vertex ids.
    EdgeSyntax {
        line: usize,
    },
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        n: usize,
    },
    SelfLoop {
        line: usize,
        vertex: usize,
    },
    DuplicateEdge {
        line: usize,
        u: usize,
        v: usize,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Graph6Header { offset } => {
                write!(f, "graph6: truncated size header at byte {offset}")
            }
            ParseError::Graph6Byte { offset, byte } => {
                write!(
                    f,
                    "graph6: byte {byte:#04x} at offset {offset} outside 63..=126"
                )
            }
            ParseError::Graph6Length { expected, got } => {
                write!(f, "graph6: expected {expected} data bytes, got {got}")
            }
            ParseError::Graph6Padding { offset } => {
                write!(
                    f,
                    "graph6: nonzero padding bits in final byte at offset {offset}"
                )
            }
            ParseError::EdgeListHeader { line } => {
                write!(f, "edge list: line {line}: expected a vertex count")
            }
            ParseError::EdgeSyntax { line } => {
                write!(f, "edge list: line {line}: expected \"u v\"")
            }
            ParseError::VertexOutOfRange { line, vertex, n } => {
                write!(
                    f,
                    "edge list: line {line}: vertex {vertex} out of range for n={n}"
                )
            }
            ParseError::SelfLoop { line, vertex } => {
                write!(f, "edge list: line {line}: self-loop at vertex {vertex}")
            }
            ParseError::DuplicateEdge { line, u, v } => {
                write!(f, "edge list: line {line}: duplicate edge {u} {v}")
            }
        }
    }
}

impl core::error::Error for ParseError {}

pub fn parse_graph(text: &str, format: GraphFormat) -> Result<Graph, ParseError> {
    match format {
        GraphFormat::Graph6 => parse_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

pub fn serialize_graph(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::Graph6 => to_graph6(g),
        GraphFormat::EdgeList => to_edge_list(g),
    }
}

fn decode_size(bytes: &[u8]) -> Result<(usize, usize), ParseError> {
    let first = *bytes
        .first()
        .ok_or(ParseError::Graph6Header { offset: 0 })?;
    if first != 126 {
        check_byte(first, 0)?;
        return Ok(((first - 63) as usize, 1));
    }
    let second = *bytes.get(1).ok_or(ParseError::Graph6Header { offset: 1 })?;
    let (start, len) = if second == 126 { (2, 6) } else { (1, 3) };
    let mut n: usize = 0;
    for i in 0..len {
        let b = *bytes
            .get(start + i)
            .ok_or(ParseError::Graph6Header { offset: start + i })?;
        check_byte(b, start + i)?;
        n = (n << 6) | (b - 63) as usize;
    }
    Ok((n, start + len))
}

fn check_byte(b: u8, offset: usize) -> Result<(), ParseError> {
    if !(63..=126).contains(&b) {
        return Err(ParseError::Graph6Byte { offset, byte: b });
    }
    Ok(())
}

/// Decodes a graph6 string. Leading/trailing ASCII whitespace is ignored;
/// the body is validated bit-exactly, including zero padding.
pub fn parse_graph6(text: &str) -> Result<Graph, ParseError> {
    let bytes = text.trim().as_bytes();
    let (n, header_len) = decode_size(bytes)?;
    let data = &bytes[header_len..];
    let nbits = n.saturating_sub(1) * n / 2;
    let expected = nbits.div_ceil(6);
    if data.len() != expected {
        return Err(ParseError::Graph6Length {
            expected,
            got: data.len(),
        });
    }

    let mut g = Graph::new(n);
    let mut bit_idx = 0usize;
    // column-major upper triangle: (0,1), (0,2), (1,2), (0,3), ...
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit_idx / 6];
            check_byte(byte, header_len + bit_idx / 6)?;
            let group = byte - 63;
            if (group >> (5 - bit_idx % 6)) & 1 == 1 {
                g.add_edge(i, j);
            }
            bit_idx += 1;
        }
    }
    // remaining bits of the final group must be zero
    while bit_idx < expected * 6 {
        let byte = data[bit_idx / 6];
        check_byte(byte, header_len + bit_idx / 6)?;
        if (byte - 63) >> (5 - bit_idx % 6) & 1 == 1 {
            return Err(ParseError::Graph6Padding {
                offset: header_len + bit_idx / 6,
            });
        }
        bit_idx += 1;
    }
    Ok(g)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(63 + n as u8);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(63 + ((n >> shift) & 63) as u8);
        }
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(63 + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(63 + (group << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Parses `"n\nu v\n..."` with 0-based ids. Blank lines are ignored;
/// duplicate edges (in either orientation), self-loops, and out-of-range
/// ids are rejected with the offending 1-based line number.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());

    let (header_line, header) = lines.next().ok_or(ParseError::EdgeListHeader { line: 1 })?;
    let n: usize = header
        .parse()
        .map_err(|_| ParseError::EdgeListHeader { line: header_line })?;

    let mut g = Graph::new(n);
    let mut seen = VertexSet::new(n * n.max(1));
    for (line, content) in lines {
        let mut parts = content.split_whitespace();
        let u: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ParseError::EdgeSyntax { line })?;
        let v: usize = parts
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ParseError::EdgeSyntax { line })?;
        if parts.next().is_some() {
            return Err(ParseError::EdgeSyntax { line });
        }
        for w in [u, v] {
            if w >= n {
                return Err(ParseError::VertexOutOfRange { line, vertex: w, n });
            }
        }
        if u == v {
            return Err(ParseError::SelfLoop { line, vertex: u });
        }
        let key = u.min(v) * n + u.max(v);
        if !seen.insert(key) {
            return Err(ParseError::DuplicateEdge { line, u, v });
        }
        g.add_edge(u, v);
    }
    Ok(g)
}

/// Serializes as `"n\n"` followed by one `"u v"` line per edge, both ids
/// ascending.
pub fn to_edge_list(g: &Graph) -> String {
    use core::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{}", g.vertex_count());
    for u in g.vertices() {
        for v in g.neighbors(u).iter() {
            if v > u {
                let _ = writeln!(out, "{u} {v}");
            }
        }
    }
    out
}

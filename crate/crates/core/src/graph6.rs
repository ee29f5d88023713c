//! graph6 records: the compact ASCII encoding of undirected simple graphs
//! that packs the upper triangle of the adjacency matrix into 6-bit bytes.
//!
//! Parsing is strict: every byte must be in `63..=126`, the record length
//! must match the node count exactly, and padding bits must be zero. This
//! makes `encode(parse(s)) == s` hold byte-for-byte on every accepted record,
//! so corpus records can be deduplicated and diffed as plain strings.

use crate::graph::{Graph, GraphError, MAX_NODES};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 record")]
    Empty,
    #[error("invalid graph6 byte 0x{byte:02x} at offset {offset}")]
    InvalidByte { offset: usize, byte: u8 },
    #[error("truncated graph6 record: need {expected} data bytes, found {actual}")]
    Truncated { expected: usize, actual: usize },
    #[error("trailing data after graph6 record at offset {offset}")]
    TrailingData { offset: usize },
    #[error("nonzero padding bits at offset {offset}")]
    NonzeroPadding { offset: usize },
    #[error("node count {n} exceeds the supported maximum {max}")]
    TooManyNodes { n: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Error for a specific line of a graph6 file.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {source}")]
pub struct Graph6FileError {
    pub line: usize,
    #[source]
    pub source: Graph6Error,
}

const BIAS: u8 = 63;

fn upper_triangle_len(n: usize) -> usize {
    n * (n - 1) / 2
}

/// Encodes a graph as a canonical graph6 record.
///
/// Node counts up to 62 use the single-byte header; larger graphs get the
/// three-byte extended header.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + BIAS);
        out.push(((n >> 6) & 0x3f) as u8 + BIAS);
        out.push((n & 0x3f) as u8 + BIAS);
    }
    if n >= 2 {
        let nbits = upper_triangle_len(n);
        let mut acc: u8 = 0;
        let mut filled = 0;
        let mut emitted = 0;
        for j in 1..n {
            for i in 0..j {
                acc = (acc << 1) | u8::from(g.has_edge(i, j));
                filled += 1;
                if filled == 6 {
                    out.push(acc + BIAS);
                    acc = 0;
                    filled = 0;
                    emitted += 6;
                }
            }
        }
        if filled > 0 {
            acc <<= 6 - filled;
            out.push(acc + BIAS);
            emitted += 6;
        }
        debug_assert!(emitted >= nbits);
    }
    // All bytes are printable ASCII in 63..=126 by construction.
    String::from_utf8(out).unwrap()
}

/// Parses one graph6 record. Fails with a byte offset on malformed input.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    for (offset, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(Graph6Error::InvalidByte { offset, byte: b });
        }
    }
    let (n, data_start) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else if bytes.len() >= 2 && bytes[1] == 126 {
        // Eight-byte header encodes up to 2^36 nodes; far beyond our cap.
        return Err(Graph6Error::TooManyNodes {
            n: usize::MAX,
            max: MAX_NODES,
        });
    } else {
        if bytes.len() < 4 {
            return Err(Graph6Error::Truncated {
                expected: 4,
                actual: bytes.len(),
            });
        }
        let n = (((bytes[1] - BIAS) as usize) << 12)
            | (((bytes[2] - BIAS) as usize) << 6)
            | ((bytes[3] - BIAS) as usize);
        (n, 4)
    };
    if n > MAX_NODES {
        return Err(Graph6Error::TooManyNodes { n, max: MAX_NODES });
    }
    let nbits = if n >= 2 { upper_triangle_len(n) } else { 0 };
    let expected = nbits.div_ceil(6);
    let actual = bytes.len() - data_start;
    if actual < expected {
        return Err(Graph6Error::Truncated { expected, actual });
    }
    if actual > expected {
        return Err(Graph6Error::TrailingData {
            offset: data_start + expected,
        });
    }

    let mut edges = Vec::new();
    let mut bit_index = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = bytes[data_start + bit_index / 6] - BIAS;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                edges.push((i, j));
            }
            bit_index += 1;
        }
    }
    // Canonical records zero-pad the final data byte.
    if nbits % 6 != 0 {
        let last = bytes[bytes.len() - 1] - BIAS;
        let pad = 6 - nbits % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::NonzeroPadding {
                offset: bytes.len() - 1,
            });
        }
    }
    Ok(Graph::from_edge_list(n, &edges)?)
}

/// Parses a graph6 file: one record per line, `\n` separators. An optional
/// `>>graph6<<` header line and blank lines are skipped. Errors carry the
/// 1-based line number.
pub fn parse_graph6_file(text: &str) -> Result<Vec<Graph>, Graph6FileError> {
    let mut graphs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.is_empty() || line.starts_with(">>graph6<<") {
            continue;
        }
        let g = parse_graph6(line).map_err(|source| Graph6FileError {
            line: idx + 1,
            source,
        })?;
        graphs.push(g);
    }
    Ok(graphs)
}

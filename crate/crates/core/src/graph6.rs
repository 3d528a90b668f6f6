//! graph6 codec.
//!
//! Header: one byte `63 + n` for `n <= 62`, or `'~'` followed by three
//! bytes carrying `n` in big-endian 6-bit chunks (each `+63`). Body: the
//! upper adjacency triangle in column-major order `(0,1), (0,2), (1,2),
//! (0,3), ...`, packed 6 bits per byte most-significant-first, each byte
//! `+63`, zero-padded to a byte boundary.

use crate::error::{Error, Result};
use crate::graph::{bit, Graph, MAX_ORDER};

const OFFSET: u8 = 63;
const LONG_HEADER: u8 = 126; // '~'

fn parse_err<T>(offset: usize, reason: impl Into<String>) -> Result<T> {
    Err(Error::Graph6 {
        offset,
        reason: reason.into(),
    })
}

/// Number of body bytes for an `n`-vertex graph.
fn body_len(n: usize) -> usize {
    (n * (n.saturating_sub(1)) / 2).div_ceil(6)
}

/// Encodes a graph as graph6 bytes (always printable ASCII).
pub fn encode(g: &Graph) -> Vec<u8> {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + body_len(n));
    if n <= 62 {
        out.push(OFFSET + n as u8);
    } else {
        out.push(LONG_HEADER);
        out.push(OFFSET + ((n >> 12) & 0x3f) as u8);
        out.push(OFFSET + ((n >> 6) & 0x3f) as u8);
        out.push(OFFSET + (n & 0x3f) as u8);
    }

    let mut chunk = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + chunk);
                chunk = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(OFFSET + (chunk << (6 - filled)));
    }
    out
}

/// Encodes a graph as a graph6 string.
pub fn encode_string(g: &Graph) -> String {
    String::from_utf8(encode(g)).expect("graph6 output is ASCII")
}

/// Decodes one graph6 value. The input must be exactly one encoding with
/// no trailing bytes.
pub fn decode(bytes: &[u8]) -> Result<Graph> {
    if bytes.is_empty() {
        return parse_err(0, "empty input");
    }
    let (n, body_start) = if bytes[0] == LONG_HEADER {
        if bytes.len() < 4 {
            return parse_err(bytes.len(), "truncated long-form order header");
        }
        if bytes[1] == LONG_HEADER {
            // 8-byte header form encodes n >= 258048, far past the cap.
            return parse_err(1, "order exceeds the 64-vertex cap");
        }
        let mut n = 0usize;
        for (k, &b) in bytes[1..4].iter().enumerate() {
            if !(OFFSET..=LONG_HEADER).contains(&b) {
                return parse_err(1 + k, format!("header byte {b} outside [63,126]"));
            }
            n = (n << 6) | (b - OFFSET) as usize;
        }
        (n, 4)
    } else {
        let b = bytes[0];
        if !(OFFSET..=LONG_HEADER).contains(&b) {
            return parse_err(0, format!("header byte {b} outside [63,126]"));
        }
        ((b - OFFSET) as usize, 1)
    };

    if n > MAX_ORDER {
        return parse_err(0, format!("order {n} exceeds the {MAX_ORDER}-vertex cap"));
    }

    let need = body_len(n);
    let body = &bytes[body_start..];
    if body.len() < need {
        return parse_err(
            bytes.len(),
            format!("truncated bit section: need {need} body bytes, got {}", body.len()),
        );
    }
    if body.len() > need {
        return parse_err(body_start + need, "trailing bytes after bit section");
    }

    let mut adj = vec![0u64; n];
    let nbits = n * n.saturating_sub(1) / 2;
    let mut pos = 0usize; // index into the bit stream
    'cols: for j in 1..n {
        for i in 0..j {
            let byte = body[pos / 6];
            if !(OFFSET..=LONG_HEADER).contains(&byte) {
                return parse_err(
                    body_start + pos / 6,
                    format!("body byte {byte} outside [63,126]"),
                );
            }
            let chunk = byte - OFFSET;
            if chunk & (1 << (5 - pos % 6)) != 0 {
                adj[i] |= bit(j);
                adj[j] |= bit(i);
            }
            pos += 1;
            if pos == nbits {
                break 'cols;
            }
        }
    }
    // Validate the final byte range and padding bits even when nbits == 0.
    if need > 0 {
        let last = body[need - 1];
        if !(OFFSET..=LONG_HEADER).contains(&last) {
            return parse_err(
                body_start + need - 1,
                format!("body byte {last} outside [63,126]"),
            );
        }
        let pad = need * 6 - nbits;
        if pad > 0 && (last - OFFSET) & ((1 << pad) - 1) != 0 {
            return parse_err(body_start + need - 1, "nonzero padding bits");
        }
    }

    Ok(Graph::from_adj_unchecked(n, adj))
}

/// Decodes one graph6 string, tolerating a trailing newline.
pub fn decode_str(s: &str) -> Result<Graph> {
    decode(s.trim_end_matches(['\r', '\n']).as_bytes())
}

/// Decodes a newline-delimited graph6 stream, skipping blank lines.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| decode(l.trim().as_bytes()))
        .collect()
}

impl Graph {
    /// This graph's graph6 string.
    pub fn to_graph6(&self) -> String {
        encode_string(self)
    }

    /// Parses a graph6 string (trailing newline tolerated).
    pub fn from_graph6(s: &str) -> Result<Graph> {
        decode_str(s)
    }
}

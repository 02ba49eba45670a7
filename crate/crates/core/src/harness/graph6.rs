//! graph6 encoding: a size prefix, then the upper triangle of the adjacency
//! matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), …`), six bits per
//! byte, each byte offset by 63.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

/// Largest order representable in the 8-byte size form.
pub const GRAPH6_MAX_ORDER: usize = (1 << 36) - 1;

/// Largest order this crate will decode; larger inputs are rejected before
/// allocating.
pub const DECODE_CAP: usize = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {byte} at offset {offset} is outside 63..=126")]
    ByteOutOfRange { offset: usize, byte: u8 },
    #[error("expected {expected} payload bytes, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("padding bits of the last byte are not zero")]
    TrailingBits,
    #[error("order {0} is too large")]
    SizeOverflow(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn data_byte(offset: usize, byte: u8) -> Result<u8, Graph6Error> {
    if (63..=126).contains(&byte) {
        Ok(byte - 63)
    } else {
        Err(Graph6Error::ByteOutOfRange { offset, byte })
    }
}

/// Decodes one graph6 line. A trailing newline and the optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(line: &[u8]) -> Result<Graph, Graph6Error> {
    let line = line.strip_prefix(b">>graph6<<").unwrap_or(line);
    let end = line
        .iter()
        .rposition(|b| !matches!(b, b'\n' | b'\r'))
        .map_or(0, |p| p + 1);
    let line = &line[..end];
    let (&first, _) = line.split_first().ok_or(Graph6Error::Empty)?;

    let (n, header) = if first != 126 {
        (data_byte(0, first)? as usize, 1)
    } else {
        let width = if line.get(1) == Some(&126) { 6 } else { 3 };
        let start = if width == 6 { 2 } else { 1 };
        let digits = line
            .get(start..start + width)
            .ok_or(Graph6Error::BadLength {
                expected: start + width,
                found: line.len(),
            })?;
        let mut n = 0usize;
        for (i, &b) in digits.iter().enumerate() {
            n = n << 6 | data_byte(start + i, b)? as usize;
        }
        (n, start + width)
    };
    if n > DECODE_CAP {
        return Err(Graph6Error::SizeOverflow(n));
    }

    let payload = &line[header..];
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if payload.len() != expected {
        return Err(Graph6Error::BadLength {
            expected,
            found: payload.len(),
        });
    }
    let mut values = Vec::with_capacity(payload.len());
    for (i, &b) in payload.iter().enumerate() {
        values.push(data_byte(header + i, b)?);
    }
    let padding = expected * 6 - bits;
    if let Some(&last) = values.last() {
        if last & ((1 << padding) - 1) != 0 {
            return Err(Graph6Error::TrailingBits);
        }
    }

    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if values[idx / 6] >> (5 - idx % 6) & 1 == 1 {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    Ok(Graph::new(n, &edges)?)
}

/// Encodes `g` in graph6 without header or newline.
pub fn emit_graph6(g: &Graph) -> Result<Vec<u8>, Graph6Error> {
    let n = g.order();
    let mut out = Vec::new();
    match n {
        0..=62 => out.push(n as u8 + 63),
        63..=258_047 => {
            out.push(126);
            out.extend((0..3).rev().map(|i| (n >> (6 * i) & 63) as u8 + 63));
        }
        _ if n <= GRAPH6_MAX_ORDER => {
            out.extend([126, 126]);
            out.extend((0..6).rev().map(|i| (n >> (6 * i) & 63) as u8 + 63));
        }
        _ => return Err(Graph6Error::SizeOverflow(n)),
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for v in 1..n {
        for u in 0..v {
            acc = acc << 1 | u8::from(g.has_edge(u, v));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(out)
}

/// [`emit_graph6`] as a `String`; graph6 is printable ASCII.
pub fn graph6_string(g: &Graph) -> Result<String, Graph6Error> {
    emit_graph6(g).map(|b| b.into_iter().map(char::from).collect())
}

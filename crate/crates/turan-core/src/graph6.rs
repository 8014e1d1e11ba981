//! Encoder and decoder for the short graph6 interchange format.
//!
//! A graph on `n <= 62` vertices is one printable ASCII line: the byte
//! `n + 63`, then the upper triangle of the adjacency matrix read column by
//! column (`(0,1), (0,2), (1,2), (0,3), ...`), packed big-endian into 6-bit
//! groups, each group offset by 63. Padding bits in the final group are zero.

use crate::error::{Error, Result};
use crate::graph::Graph;

const OFFSET: u8 = 63;
const MAX_SHORT_FORM: usize = 62;

/// Encode a graph as a short-form graph6 string.
pub fn encode(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > MAX_SHORT_FORM {
        return Err(Error::Graph6TooLarge { n });
    }
    let mut out = Vec::with_capacity(1 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    out.push(OFFSET + n as u8);
    let mut group = 0u8;
    let mut filled = 0u32;
    for j in 1..n {
        for i in 0..j {
            group <<= 1;
            if g.has_edge(i, j) {
                group |= 1;
            }
            filled += 1;
            if filled == 6 {
                out.push(OFFSET + group);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        group <<= 6 - filled;
        out.push(OFFSET + group);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are printable ASCII"))
}

/// Decode a single short-form graph6 string.
pub fn decode(s: &str) -> Result<Graph> {
    let bytes = s.as_bytes();
    let Some(&header) = bytes.first() else {
        return Err(Error::Graph6Empty);
    };
    if !(OFFSET..=126).contains(&header) {
        return Err(Error::Graph6InvalidByte {
            byte: header,
            offset: 0,
        });
    }
    if header == 126 {
        return Err(Error::Graph6LongForm);
    }
    let n = usize::from(header - OFFSET);
    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    let payload = &bytes[1..];
    if payload.len() != expected {
        return Err(Error::Graph6PayloadLength {
            expected,
            got: payload.len(),
        });
    }
    for (k, &b) in payload.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(Error::Graph6InvalidByte {
                byte: b,
                offset: k + 1,
            });
        }
    }
    let mut adj = vec![0u64; n];
    let mut cursor = 0usize;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[cursor / 6] - OFFSET;
            let bit = (byte >> (5 - cursor % 6)) & 1;
            if bit == 1 {
                adj[i] |= 1u64 << j;
                adj[j] |= 1u64 << i;
            }
            cursor += 1;
        }
    }
    if bit_count % 6 != 0 {
        let last = payload[expected - 1] - OFFSET;
        let pad = 6 - bit_count % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(Error::Graph6TrailingBits);
        }
    }
    Ok(Graph::from_adj_rows(adj).expect("decoded rows are symmetric by construction"))
}

/// Decode one graph per non-empty line, reporting errors with 1-based line
/// numbers. A leading `>>graph6<<` marker (as written by common generators)
/// is tolerated.
pub fn decode_lines(text: &str) -> Result<Vec<Graph>> {
    let mut graphs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut line = raw.trim();
        if let Some(rest) = line.strip_prefix(">>graph6<<") {
            line = rest.trim();
        }
        if line.is_empty() {
            continue;
        }
        let g = decode(line).map_err(|e| e.at_line(idx + 1))?;
        graphs.push(g);
    }
    Ok(graphs)
}

/// Encode many graphs, one per line.
pub fn encode_lines<'a>(graphs: impl IntoIterator<Item = &'a Graph>) -> Result<String> {
    let mut out = String::new();
    for g in graphs {
        out.push_str(&encode(g)?);
        out.push('\n');
    }
    Ok(out)
}

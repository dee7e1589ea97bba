//! graph6 text encoding.
//!
//! The upper triangle is read column by column (`(0,1), (0,2), (1,2),
//! (0,3), ...`), packed big-endian into 6-bit groups, each offset by 63.
//! Orders up to 62 use one header byte, larger orders `~` plus 18 bits.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_ORDER};

const HEADER: &str = ">>graph6<<";

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

fn err(offset: usize, reason: impl Into<String>) -> Error {
    Error::Graph6 { offset, reason: reason.into() }
}

/// Decodes one graph6 line. A trailing newline and the optional
/// `>>graph6<<` header are accepted; anything else malformed is rejected
/// with the offending byte offset.
pub fn decode(text: &str) -> Result<Graph> {
    let mut bytes = text.as_bytes();
    let mut base = 0;
    if let Some(rest) = text.strip_prefix(HEADER) {
        bytes = rest.as_bytes();
        base = HEADER.len();
    }
    while let Some((&last, head)) = bytes.split_last() {
        if last == b'\n' || last == b'\r' {
            bytes = head;
        } else {
            break;
        }
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(err(base + i, format!("byte 0x{b:02x} outside the graph6 range")));
        }
    }
    let first = *bytes.first().ok_or_else(|| err(base, "empty input"))?;
    let (n, mut pos) = if first < 126 {
        ((first - 63) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(err(base + bytes.len(), "truncated order field"));
        }
        if bytes[1] == 126 {
            return Err(err(base + 1, format!("order exceeds {MAX_ORDER}")));
        }
        let n = bytes[1..4].iter().fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n == 0 || n > MAX_ORDER {
        return Err(err(base, format!("order {n} outside 1..={MAX_ORDER}")));
    }
    let nbits = n * (n - 1) / 2;
    let need = nbits.div_ceil(6);
    let data = &bytes[pos..];
    if data.len() < need {
        return Err(err(base + bytes.len(), format!("expected {need} data bytes, found {}", data.len())));
    }
    if data.len() > need {
        return Err(err(base + pos + need, "trailing bytes after adjacency data"));
    }
    let mut g = Graph::empty(n)?;
    let mut bit = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = data[bit / 6] - 63;
            if byte >> (5 - bit % 6) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            bit += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = data[need - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            pos += need - 1;
            return Err(err(base + pos, "nonzero padding bits"));
        }
    }
    Ok(g)
}

/// Decodes every non-blank line; the error carries the 1-based line number.
pub fn decode_lines(text: &str) -> std::result::Result<Vec<Graph>, (usize, Error)> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| decode(l.trim()).map_err(|e| (i + 1, e)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_known_strings() {
        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(encode(&tri), "Bw");
        assert_eq!(encode(&Graph::empty(2).unwrap()), "A?");
        assert_eq!(encode(&Graph::empty(1).unwrap()), "@");
        // petgraph's five-vertex example: a-c, a-e, b-d, d-e
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(encode(&g), "DQc");
    }

    #[test]
    fn long_order_header() {
        let g = Graph::from_fn(100, |x, y| (x + y) % 3 == 0).unwrap();
        let s = encode(&g);
        assert!(s.starts_with('~'));
        assert_eq!(decode(&s).unwrap(), g);
    }

    #[test]
    fn decode_accepts_header_and_newline() {
        assert_eq!(decode(">>graph6<<Bw\n").unwrap().edge_count(), 3);
    }

    #[test]
    fn decode_errors_carry_offsets() {
        assert!(matches!(decode(""), Err(Error::Graph6 { offset: 0, .. })));
        assert!(matches!(decode("B"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(decode("Bww"), Err(Error::Graph6 { offset: 2, .. })));
        assert!(matches!(decode("B\u{1}"), Err(Error::Graph6 { offset: 1, .. })));
        // padding bits set: 'B' + 0b111001
        assert!(matches!(decode("Bx"), Err(Error::Graph6 { offset: 1, .. })));
        assert!(matches!(decode("?"), Err(Error::Graph6 { .. })));
        assert!(matches!(decode("~~???"), Err(Error::Graph6 { offset: 1, .. })));
    }

    #[test]
    fn multi_line() {
        let gs = decode_lines("Bw\n\nA?\n").unwrap();
        assert_eq!(gs.len(), 2);
        assert_eq!(decode_lines("Bw\nzz\n").unwrap_err().0, 2);
    }
}

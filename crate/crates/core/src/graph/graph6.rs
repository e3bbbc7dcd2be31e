//! The graph6 interchange format.
//!
//! A graph6 string is the vertex count N(n) followed by the upper triangle of
//! the adjacency matrix, read column by column (`(0,1), (0,2), (1,2), (0,3),
//! ...`), packed into 6-bit big-endian groups. Every byte is a group value
//! plus 63. The final group is zero-padded.

use super::Graph;
use crate::error::{Error, Result};

const BIAS: u8 = 63;

/// Decodes a one-line graph6 string into a connected [`Graph`].
///
/// An optional `>>graph6<<` header and surrounding whitespace are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end_matches(['\n', '\r']);
    let (mut offset, body) = match trimmed.strip_prefix(">>graph6<<") {
        Some(rest) => (10, rest.as_bytes()),
        None => (0, trimmed.as_bytes()),
    };
    let bytes = body;
    for (i, &b) in bytes.iter().enumerate() {
        if !(BIAS..=126).contains(&b) {
            return Err(Error::Parse {
                offset: offset + i,
                message: format!("byte 0x{b:02x} outside the printable range 63..=126"),
            });
        }
    }
    let (n, header_len) = decode_size(bytes, offset)?;
    offset += header_len;
    let data = &bytes[header_len..];

    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if data.len() != expected {
        return Err(Error::Parse {
            offset,
            message: format!(
                "expected {expected} data bytes for {n} vertices, found {}",
                data.len()
            ),
        });
    }
    let pad = expected * 6 - bit_count;
    if pad > 0 {
        let last = data[expected - 1] - BIAS;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(Error::Parse {
                offset: offset + expected - 1,
                message: "nonzero padding bits".into(),
            });
        }
    }

    let mut edges = Vec::new();
    let mut k = 0usize;
    for j in 1..n {
        for i in 0..j {
            let group = data[k / 6] - BIAS;
            if (group >> (5 - k % 6)) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges)
}

fn decode_size(bytes: &[u8], offset: usize) -> Result<(usize, usize)> {
    let fail = |message: &str| Error::Parse {
        offset,
        message: message.into(),
    };
    let group = |b: u8| (b - BIAS) as usize;
    match bytes {
        [] => Err(fail("empty input")),
        [126, 126, rest @ ..] => {
            if rest.len() < 6 {
                return Err(fail("truncated 8-byte size header"));
            }
            let n = rest[..6].iter().fold(0, |acc, &b| (acc << 6) | group(b));
            Ok((n, 8))
        }
        [126, rest @ ..] => {
            if rest.len() < 3 {
                return Err(fail("truncated 4-byte size header"));
            }
            let n = rest[..3].iter().fold(0, |acc, &b| (acc << 6) | group(b));
            Ok((n, 4))
        }
        [b, ..] => Ok((group(*b), 1)),
    }
}

/// Encodes a graph as a graph6 string without header or newline.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.vertex_count();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else if n <= 258_047 {
        out.push(126);
        out.extend((0..3).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    } else {
        out.extend([126, 126]);
        out.extend((0..6).rev().map(|s| ((n >> (6 * s)) & 63) as u8 + BIAS));
    }
    let mut group = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            group = (group << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(group + BIAS);
                group = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((group << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k2() {
        let g = parse_graph6("A_").unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn cr_is_a_four_cycle() {
        let g = parse_graph6("Cr").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert_eq!(g.regular_degree(), Some(2));
    }

    #[test]
    fn cl_is_the_labelled_cycle() {
        let g = parse_graph6("Cl").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn k4() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(encode_graph6(&g), "C~");
    }

    #[test]
    fn header_and_newline_accepted() {
        let g = parse_graph6(">>graph6<<Bg\n").unwrap();
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn rejects_bad_bytes() {
        let err = parse_graph6("A ").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                offset: 1,
                message: "byte 0x20 outside the printable range 63..=126".into()
            }
        );
    }

    #[test]
    fn rejects_wrong_length() {
        assert!(matches!(
            parse_graph6("C~~"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(parse_graph6(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph6("~?"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rejects_padding() {
        // 3 vertices use 3 bits; the low three bits of the group must be zero.
        assert!(matches!(
            parse_graph6("Bx"),
            Err(Error::Parse { offset: 1, .. })
        ));
    }

    #[test]
    fn rejects_disconnected() {
        assert!(matches!(parse_graph6("C?"), Err(Error::Validation(_))));
    }

    #[test]
    fn long_header_round_trip() {
        let n = 70;
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        let g = Graph::from_edges(n, &edges).unwrap();
        let s = encode_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }
}

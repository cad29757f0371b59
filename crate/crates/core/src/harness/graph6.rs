//! graph6 text encoding.
//!
//! A length header (one byte for `n <= 62`, four bytes up to 258047, eight
//! beyond) is followed by the upper triangle of the adjacency matrix in
//! column order, six bits per printable byte.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: character {found:?} outside the graph6 range")]
    BadByte { offset: usize, found: char },
    #[error("byte {offset}: truncated, expected {expected} bytes in total")]
    Truncated { offset: usize, expected: usize },
    #[error("byte {offset}: {extra} unexpected trailing bytes")]
    Trailing { offset: usize, extra: usize },
    #[error("byte {offset}: padding bits are not zero")]
    Padding { offset: usize },
    #[error("byte {offset}: malformed length header")]
    Header { offset: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn value(bytes: &[u8], offset: usize) -> Result<u64, Graph6Error> {
    match bytes.get(offset) {
        Some(&b) if (63..=126).contains(&b) => Ok(u64::from(b - 63)),
        Some(&b) => Err(Graph6Error::BadByte {
            offset,
            found: b as char,
        }),
        None => Err(Graph6Error::Truncated {
            offset,
            expected: offset + 1,
        }),
    }
}

/// Decodes one graph6 line; a leading `>>graph6<<` header and trailing
/// whitespace are accepted. Error offsets count from the start of `line`.
pub fn parse_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let trimmed = line.trim_end();
    let (skip, body) = match trimmed.strip_prefix(HEADER) {
        Some(rest) => (HEADER.len(), rest),
        None => (0, trimmed),
    };
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    let at = |i: usize| value(bytes, i).map_err(|e| shift(e, skip));
    let (n, mut pos) = if bytes[0] != 126 {
        (at(0)? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0;
        for i in 1..4 {
            n = (n << 6) | at(i)?;
        }
        if n < 63 {
            return Err(Graph6Error::Header { offset: skip });
        }
        (n as usize, 4)
    } else {
        let mut n = 0;
        for i in 2..8 {
            n = (n << 6) | at(i)?;
        }
        if n < 258048 {
            return Err(Graph6Error::Header { offset: skip });
        }
        (n as usize, 8)
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = pos + bits.div_ceil(6);
    if bytes.len() < need {
        return Err(Graph6Error::Truncated {
            offset: skip + bytes.len(),
            expected: skip + need,
        });
    }
    if bytes.len() > need {
        return Err(Graph6Error::Trailing {
            offset: skip + need,
            extra: bytes.len() - need,
        });
    }
    let mut edges = Vec::new();
    let mut k = 0;
    let mut chunk = 0;
    for j in 1..n {
        for i in 0..j {
            if k % 6 == 0 {
                chunk = at(pos)?;
                pos += 1;
            }
            if chunk >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let pad = 6 - k % 6;
        if chunk & ((1 << pad) - 1) != 0 {
            return Err(Graph6Error::Padding { offset: skip + pos - 1 });
        }
    }
    Ok(Graph::new(n, edges)?)
}

fn shift(e: Graph6Error, by: usize) -> Graph6Error {
    match e {
        Graph6Error::BadByte { offset, found } => Graph6Error::BadByte {
            offset: offset + by,
            found,
        },
        Graph6Error::Truncated { offset, expected } => Graph6Error::Truncated {
            offset: offset + by,
            expected: expected + by,
        },
        other => other,
    }
}

/// Encodes `g` without header or newline.
pub fn write_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut chunk = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            chunk = (chunk << 1) | u8::from(g.has_edge(i, j));
            k += 1;
            if k == 6 {
                out.push(chunk + 63);
                chunk = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((chunk << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_graphs() {
        let k1 = Graph::new(1, []).unwrap();
        assert_eq!(write_graph6(&k1), "@");
        assert_eq!(parse_graph6("@").unwrap(), k1);
        let null = Graph::null();
        assert_eq!(parse_graph6(&write_graph6(&null)).unwrap(), null);
        // path 0-1-2: bits (0,1)=1 (0,2)=0 (1,2)=1
        let p3 = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(write_graph6(&p3), "Bg");
        assert_eq!(parse_graph6(">>graph6<<Bg\n").unwrap(), p3);
    }

    #[test]
    fn large_header() {
        let n = 100;
        let g = Graph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap();
        let s = write_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn errors_carry_offsets() {
        assert_eq!(
            parse_graph6("D?"),
            Err(Graph6Error::Truncated {
                offset: 2,
                expected: 3
            })
        );
        assert_eq!(
            parse_graph6(">>graph6<<D?"),
            Err(Graph6Error::Truncated {
                offset: 12,
                expected: 13
            })
        );
        assert_eq!(parse_graph6("Bh"), Err(Graph6Error::Padding { offset: 1 }));
        assert!(matches!(parse_graph6("B!"), Err(Graph6Error::BadByte { offset: 1, .. })));
        assert!(matches!(parse_graph6("Bgg"), Err(Graph6Error::Trailing { offset: 2, extra: 1 })));
        assert_eq!(parse_graph6(""), Err(Graph6Error::Empty));
    }
}

//! graph6 and plain edge-list codecs.
//!
//! graph6 lines carry no `>>graph6<<` header. The edge-list format is a
//! `n <count>` line followed by one `u v` pair per line; `#` starts a comment.

use super::{Graph, GraphBuilder, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

const BIAS: u8 = 63;

fn g6_err(offset: usize, message: impl Into<String>) -> Error {
    Error::Graph6 {
        offset,
        message: message.into(),
    }
}

/// Decodes one graph6 line. Surrounding whitespace is ignored.
pub fn decode_graph6(text: &[u8]) -> Result<Graph> {
    let start = text
        .iter()
        .position(|b| !b.is_ascii_whitespace())
        .unwrap_or(text.len());
    let end = text
        .iter()
        .rposition(|b| !b.is_ascii_whitespace())
        .map_or(start, |p| p + 1);
    let bytes = &text[start..end];
    if bytes.is_empty() {
        return Err(g6_err(start, "empty input"));
    }
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(g6_err(start + i, format!("byte {b} outside 63..=126")));
        }
    }

    let (n, header_len) = if bytes[0] != 126 {
        ((bytes[0] - BIAS) as usize, 1)
    } else {
        if bytes.len() < 4 {
            return Err(g6_err(start, "truncated length header"));
        }
        if bytes[1] == 126 {
            return Err(g6_err(start + 1, "8-byte length header exceeds capacity"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - BIAS) as usize);
        if n <= 62 {
            return Err(g6_err(start, "long length header used for n <= 62"));
        }
        (n, 4)
    };
    if n > MAX_VERTICES {
        return Err(Error::Capacity {
            n,
            limit: MAX_VERTICES,
            hint: "",
        });
    }

    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let body = &bytes[header_len..];
    if body.len() != nbytes {
        return Err(g6_err(
            start + header_len + body.len().min(nbytes),
            format!("expected {nbytes} data bytes for n={n}, found {}", body.len()),
        ));
    }

    let mut adj = vec![VertexSet::EMPTY; n];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - BIAS;
            if (byte >> (5 - k % 6)) & 1 == 1 {
                adj[i].insert(j);
                adj[j].insert(i);
            }
            k += 1;
        }
    }
    if nbits % 6 != 0 {
        let last = body[nbytes - 1] - BIAS;
        let pad = 6 - nbits % 6;
        if last & ((1u8 << pad) - 1) != 0 {
            return Err(g6_err(start + header_len + nbytes - 1, "nonzero padding bits"));
        }
    }
    Graph::from_adjacency(adj)
}

/// Encodes `g` as a graph6 string (no trailing newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(n as u8 + BIAS);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

/// Parses a single edge-list document.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut builder: Option<GraphBuilder> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::EdgeList {
            line: line_no,
            message,
        };
        let mut fields = line.split_whitespace();
        let first = fields.next().unwrap_or("");
        match builder.as_mut() {
            None => {
                if first != "n" {
                    return Err(err("expected header `n <count>`".into()));
                }
                let n: usize = fields
                    .next()
                    .ok_or_else(|| err("missing vertex count".into()))?
                    .parse()
                    .map_err(|e| err(format!("bad vertex count: {e}")))?;
                if fields.next().is_some() {
                    return Err(err("trailing fields after vertex count".into()));
                }
                builder = Some(GraphBuilder::new(n)?);
            }
            Some(b) => {
                let u: usize = first
                    .parse()
                    .map_err(|e| err(format!("bad vertex `{first}`: {e}")))?;
                let second = fields
                    .next()
                    .ok_or_else(|| err("edge needs two endpoints".into()))?;
                let v: usize = second
                    .parse()
                    .map_err(|e| err(format!("bad vertex `{second}`: {e}")))?;
                if fields.next().is_some() {
                    return Err(err("more than two fields on edge line".into()));
                }
                b.add_edge(u, v).map_err(|e| err(e.to_string()))?;
            }
        }
    }
    builder.map(GraphBuilder::build).ok_or(Error::EdgeList {
        line: 0,
        message: "no header found".into(),
    })
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Parses a document holding either one edge list or graph6 lines.
///
/// Returns one entry per graph with its 1-based line number; malformed
/// graph6 lines yield an `Err` entry and parsing continues.
pub fn parse_graphs(text: &str) -> Vec<(usize, Result<Graph>)> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty());
    let is_edge_list = first.is_some_and(|l| {
        let mut f = l.split_whitespace();
        f.next() == Some("n") && f.next().is_some()
    });
    if is_edge_list {
        let line = text
            .lines()
            .position(|l| !l.split('#').next().unwrap_or("").trim().is_empty())
            .map_or(1, |p| p + 1);
        return vec![(line, parse_edge_list(text))];
    }
    text.lines()
        .enumerate()
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && t != ">>graph6<<"
        })
        .map(|(i, l)| (i + 1, decode_graph6(l.as_bytes())))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::super::named;
    use super::*;

    #[test]
    fn decode_star_on_five() {
        // n = 'D' - 63 = 5; data bits 000000 1111(00): the four edges into vertex 4.
        let g = decode_graph6(b"D?{").unwrap();
        assert_eq!(g.n(), 5);
        let edges: Vec<_> = g.edges().collect();
        assert_eq!(edges, vec![(0, 4), (1, 4), (2, 4), (3, 4)]);
    }

    #[test]
    fn encode_k1_and_small() {
        assert_eq!(encode_graph6(&named::complete(1)), "@");
        assert_eq!(encode_graph6(&Graph::empty(0).unwrap()), "?");
        // K2: one bit set, padded: 100000 = 32 -> '_'
        assert_eq!(encode_graph6(&named::complete(2)), "A_");
    }

    #[test]
    fn round_trip_cycle_and_long_header() {
        let c7 = named::cycle(7);
        assert_eq!(decode_graph6(encode_graph6(&c7).as_bytes()).unwrap(), c7);
        let big = named::cycle(100);
        let text = encode_graph6(&big);
        assert!(text.starts_with('~'));
        assert_eq!(decode_graph6(text.as_bytes()).unwrap(), big);
    }

    #[test]
    fn decode_errors_carry_offsets() {
        match decode_graph6(b"D?\x20{") {
            Err(Error::Graph6 { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("unexpected {other:?}"),
        }
        // 5 vertices need 2 data bytes.
        assert!(matches!(decode_graph6(b"D?"), Err(Error::Graph6 { .. })));
        // '@' + 63 = 64 -> last padding bits nonzero in "A`" (100001).
        match decode_graph6(b"A`") {
            Err(Error::Graph6 { offset, message }) => {
                assert_eq!(offset, 1);
                assert!(message.contains("padding"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn edge_list_parsing() {
        let g = parse_edge_list("# triangle\nn 3\n0 1\n1 2\n2 0\n").unwrap();
        assert_eq!(g, named::complete(3));
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
        match parse_edge_list("n 3\n0 5\n") {
            Err(Error::EdgeList { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn auto_detection() {
        let parsed = parse_graphs("n 2\n0 1\n");
        assert_eq!(parsed.len(), 1);
        assert_eq!(parsed[0].1.as_ref().unwrap(), &named::complete(2));
        let parsed = parse_graphs("D?{\n\nA_\n!!\n");
        assert_eq!(parsed.len(), 3);
        assert_eq!(parsed[1].0, 3);
        assert!(parsed[2].1.is_err());
    }
}

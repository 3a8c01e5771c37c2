//! The plain-text graph file.
//!
//! ```text
//! # optional comments and blank lines anywhere
//! n m
//! tail head weight      (exactly m lines)
//! ```
//!
//! Vertices are `0..n`. Weights use the exact grammar of
//! [`parse_decimal_string`] and must be nonnegative. Written files always
//! use canonical `p/q` (or bare integer) weights, so they re-read to the
//! same rationals.

use std::fmt::Write as _;

use thiserror::Error;

use crate::digraph::{Digraph, WeightedDigraph};
use crate::rational::{parse_decimal_string, ParseRationalError, Rational};

/// Refuses headers that would allocate unreasonably before any edge is read.
pub const MAX_VERTICES: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based; 0 when the input is not text at all.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("input is not valid UTF-8")]
    NotUtf8,
    #[error("missing `n m` header")]
    MissingHeader,
    #[error("header must be `n m`, found `{0}`")]
    BadHeader(String),
    #[error("{n} vertices exceeds the limit of {MAX_VERTICES}")]
    TooManyVertices { n: usize },
    #[error("edge line must be `tail head weight`, found `{0}`")]
    BadEdgeLine(String),
    #[error("bad vertex index `{0}`")]
    BadIndex(String),
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("duplicate edge {tail} -> {head}")]
    DuplicateEdge { tail: usize, head: usize },
    #[error("bad weight: {0}")]
    BadWeight(#[from] ParseRationalError),
    #[error("negative weight {0}")]
    NegativeWeight(Rational),
    #[error("expected {expected} edge lines, found {found}")]
    MissingEdges { expected: usize, found: usize },
    #[error("unexpected content after the last edge: `{0}`")]
    TrailingContent(String),
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

pub fn parse_graph_bytes(data: &[u8]) -> Result<WeightedDigraph, ParseError> {
    let text = std::str::from_utf8(data).map_err(|_| err(0, ParseErrorKind::NotUtf8))?;
    parse_graph_file(text)
}

pub fn parse_graph_file(text: &str) -> Result<WeightedDigraph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (header_line, header) = lines
        .next()
        .ok_or_else(|| err(1, ParseErrorKind::MissingHeader))?;
    let bad_header = || err(header_line, ParseErrorKind::BadHeader(header.to_owned()));
    let fields: Vec<&str> = header.split_whitespace().collect();
    let [n, m] = fields[..] else {
        return Err(bad_header());
    };
    let n: usize = n.parse().map_err(|_| bad_header())?;
    let m: usize = m.parse().map_err(|_| bad_header())?;
    if n > MAX_VERTICES {
        return Err(err(header_line, ParseErrorKind::TooManyVertices { n }));
    }

    let mut edges = Vec::new();
    let mut weights = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut last_line = header_line;
    while edges.len() < m {
        let Some((line, content)) = lines.next() else {
            return Err(err(
                last_line,
                ParseErrorKind::MissingEdges {
                    expected: m,
                    found: edges.len(),
                },
            ));
        };
        last_line = line;
        let fields: Vec<&str> = content.split_whitespace().collect();
        let [tail, head, weight] = fields[..] else {
            return Err(err(line, ParseErrorKind::BadEdgeLine(content.to_owned())));
        };
        let index = |s: &str| -> Result<usize, ParseError> {
            let v: usize = s
                .parse()
                .map_err(|_| err(line, ParseErrorKind::BadIndex(s.to_owned())))?;
            if v >= n {
                return Err(err(line, ParseErrorKind::VertexOutOfRange { vertex: v, n }));
            }
            Ok(v)
        };
        let (tail, head) = (index(tail)?, index(head)?);
        if !seen.insert((tail, head)) {
            return Err(err(line, ParseErrorKind::DuplicateEdge { tail, head }));
        }
        let weight = parse_decimal_string(weight).map_err(|e| err(line, e.into()))?;
        if weight.is_negative() {
            return Err(err(line, ParseErrorKind::NegativeWeight(weight)));
        }
        edges.push((tail, head));
        weights.push(weight);
    }
    if let Some((line, content)) = lines.next() {
        return Err(err(
            line,
            ParseErrorKind::TrailingContent(content.to_owned()),
        ));
    }

    let graph = Digraph::new(n, edges).expect("indices and duplicates checked while parsing");
    Ok(WeightedDigraph::new(graph, weights).expect("weights checked while parsing"))
}

/// Serializes in edge order with canonical weights.
pub fn write_graph_file(g: &WeightedDigraph) -> String {
    let graph = g.graph();
    let mut out = String::new();
    let _ = writeln!(out, "{} {}", graph.vertex_count(), graph.edge_count());
    for (&(t, h), w) in graph.edges().iter().zip(g.weights()) {
        let _ = writeln!(out, "{t} {h} {w}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn kind(text: &str) -> ParseErrorKind {
        parse_graph_file(text).unwrap_err().kind
    }

    #[test]
    fn parses_canonical_fixture() {
        let text = "# two-cycle with loops\n2 4\n0 1 0.5\n1 0 1/2\n\n0 0 0.50\n# loop\n1 1 2/4\n";
        let g = parse_graph_file(text).unwrap();
        assert_eq!(g.graph().edges(), &[(0, 1), (1, 0), (0, 0), (1, 1)]);
        assert!(g
            .weights()
            .iter()
            .all(|w| *w == Rational::new(1, 2).unwrap()));
        assert_eq!(
            write_graph_file(&g),
            "2 4\n0 1 1/2\n1 0 1/2\n0 0 1/2\n1 1 1/2\n"
        );
    }

    #[test]
    fn empty_graph() {
        let g = parse_graph_file("0 0\n").unwrap();
        assert_eq!(g.graph().vertex_count(), 0);
        assert_eq!(write_graph_file(&g), "0 0\n");
    }

    #[test]
    fn reports_line_numbers() {
        let e = parse_graph_file("2 2\n0 1 1\n# c\n1 0 x\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(matches!(e.kind, ParseErrorKind::BadWeight(_)));
        assert!(e.to_string().starts_with("line 4:"));
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert_eq!(kind("# only\n"), ParseErrorKind::MissingHeader);
        assert!(matches!(kind("2\n"), ParseErrorKind::BadHeader(_)));
        assert!(matches!(kind("2 1 3\n"), ParseErrorKind::BadHeader(_)));
        assert!(matches!(kind("-2 1\n"), ParseErrorKind::BadHeader(_)));
        assert!(matches!(
            kind("99999999999 0\n"),
            ParseErrorKind::TooManyVertices { .. }
        ));
        assert!(matches!(kind("2 1\n0 1\n"), ParseErrorKind::BadEdgeLine(_)));
        assert!(matches!(kind("2 1\na 1 1\n"), ParseErrorKind::BadIndex(_)));
        assert_eq!(
            kind("2 1\n0 2 1\n"),
            ParseErrorKind::VertexOutOfRange { vertex: 2, n: 2 }
        );
        assert_eq!(
            kind("2 2\n0 1 1\n0 1 2\n"),
            ParseErrorKind::DuplicateEdge { tail: 0, head: 1 }
        );
        assert!(matches!(
            kind("2 1\n0 1 -1\n"),
            ParseErrorKind::NegativeWeight(_)
        ));
        assert!(matches!(
            kind("2 1\n0 1 1/0\n"),
            ParseErrorKind::BadWeight(ParseRationalError::ZeroDenominator(_))
        ));
        assert_eq!(
            kind("2 2\n0 1 1\n"),
            ParseErrorKind::MissingEdges {
                expected: 2,
                found: 1
            }
        );
        assert!(matches!(
            kind("2 1\n0 1 1\n1 0 1\n"),
            ParseErrorKind::TrailingContent(_)
        ));
        assert_eq!(
            parse_graph_bytes(b"\xff\xfe").unwrap_err().kind,
            ParseErrorKind::NotUtf8
        );
    }

    proptest! {
        #[test]
        fn written_files_reparse_exactly(
            n in 1usize..6,
            raw in proptest::collection::btree_map((0usize..6, 0usize..6), (0i64..1000, 1i64..100), 0..20),
        ) {
            let entries: Vec<_> = raw.into_iter().filter(|((t, h), _)| *t < n && *h < n).collect();
            let graph = Digraph::new(n, entries.iter().map(|(e, _)| *e)).unwrap();
            let weights = entries.iter().map(|(_, (a, b))| Rational::new(*a, *b).unwrap()).collect();
            let g = WeightedDigraph::new(graph, weights).unwrap();
            let text = write_graph_file(&g);
            let back = parse_graph_file(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph_file(&back), text);
        }

        #[test]
        fn parser_never_panics(text in "[0-9 #/.\\-\n]{0,80}") {
            let _ = parse_graph_file(&text);
        }
    }
}

//! Plain-text graph files.
//!
//! ```text
//! # comment
//! n 3
//! e 0 1 0.9
//! e 1 2 0.8
//! ```
//!
//! Exactly one `n` header must precede the edge lines. Vertices are 0-based.
//! Endpoints may appear in either order.
//! Blank lines are ignored.

use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::ProbGraph;

/// Largest vertex count accepted from a file. Every analysis stores dense
/// `n * n` matrices.
pub const MAX_FILE_VERTICES: usize = 4096;

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

pub fn parse_graph_file(text: &str) -> Result<ProbGraph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let content = raw.trim();
        if content.is_empty() || content.starts_with('#') {
            continue;
        }
        let mut tokens = content.split_whitespace();
        match tokens.next() {
            Some("n") => {
                if n.is_some() {
                    return Err(parse_error(line, "duplicate header"));
                }
                let count: usize = field(tokens.next(), line, "vertex count")?;
                expect_end(tokens.next(), line)?;
                if count == 0 {
                    return Err(parse_error(line, Error::NoVertices.to_string()));
                }
                if count > MAX_FILE_VERTICES {
                    return Err(parse_error(
                        line,
                        format!("vertex count {count} exceeds the limit of {MAX_FILE_VERTICES}"),
                    ));
                }
                n = Some(count);
            }
            Some("e") => {
                let Some(n) = n else {
                    return Err(parse_error(line, "edge before the 'n' header"));
                };
                let i: usize = field(tokens.next(), line, "vertex index")?;
                let j: usize = field(tokens.next(), line, "vertex index")?;
                let p: f64 = field(tokens.next(), line, "probability")?;
                expect_end(tokens.next(), line)?;
                // validate here so the error carries the line number
                ProbGraph::new(n, [(i, j, p)]).map_err(|e| parse_error(line, e.to_string()))?;
                let key = (i.min(j), i.max(j));
                if let Some(first) = seen.insert(key, line) {
                    return Err(parse_error(
                        line,
                        format!(
                            "duplicate edge ({}, {}), first given on line {first}",
                            key.0, key.1
                        ),
                    ));
                }
                edges.push((i, j, p));
            }
            Some(other) => return Err(parse_error(line, format!("unknown record '{other}'"))),
            None => unreachable!("blank lines skipped"),
        }
    }

    let n = n.ok_or_else(|| parse_error(last_line.max(1), "missing 'n' header"))?;
    ProbGraph::new(n, edges)
}

fn field<T: std::str::FromStr>(token: Option<&str>, line: usize, what: &str) -> Result<T> {
    let token = token.ok_or_else(|| parse_error(line, format!("missing {what}")))?;
    token
        .parse()
        .map_err(|_| parse_error(line, format!("invalid {what} '{token}'")))
}

fn expect_end(token: Option<&str>, line: usize) -> Result<()> {
    match token {
        None => Ok(()),
        Some(extra) => Err(parse_error(
            line,
            format!("unexpected trailing token '{extra}'"),
        )),
    }
}

/// Canonical text form. Probabilities are written with the shortest
/// representation that parses back to the same value.
pub fn write_graph_file(g: &ProbGraph) -> String {
    let mut out = format!("n {}\n", g.n());
    for e in g.edges() {
        writeln!(out, "e {} {} {}", e.i, e.j, e.p).expect("writing to a String");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parses_examples() {
        let g = parse_graph_file("n 2\ne 0 1 0.5").unwrap();
        assert_eq!(g, ProbGraph::new(2, [(0, 1, 0.5)]).unwrap());

        let g = parse_graph_file("# c\nn 3\ne 0 1 0.9\ne 1 2 0.8").unwrap();
        assert_eq!(g, ProbGraph::new(3, [(0, 1, 0.9), (1, 2, 0.8)]).unwrap());

        let g = parse_graph_file("\n  n 1  \n\n# nothing else\n").unwrap();
        assert_eq!(g.n(), 1);
    }

    fn line_of(text: &str) -> usize {
        match parse_graph_file(text) {
            Err(Error::Parse { line, .. }) => line,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(line_of("e 0 1 0.5"), 1);
        assert_eq!(line_of("n 2\nn 2"), 2);
        assert_eq!(line_of("n 2\ne 0 0 0.5"), 2);
        assert_eq!(line_of("n 2\n# ok\ne 0 5 0.5"), 3);
        assert_eq!(line_of("n 2\ne 0 1 1.5"), 2);
        assert_eq!(line_of("n 2\ne 0 1 NaN"), 2);
        assert_eq!(line_of("n 3\ne 0 1 0.5\ne 1 0 0.5"), 3);
        assert_eq!(line_of("n 2\ne 0 1"), 2);
        assert_eq!(line_of("n 2\ne 0 1 0.5 7"), 2);
        assert_eq!(line_of("n two"), 1);
        assert_eq!(line_of("n 0"), 1);
        assert_eq!(line_of("# big\nn 5000"), 2);
        assert_eq!(line_of("n 2\nx 1"), 2);
        assert_eq!(line_of(""), 1);
        assert_eq!(line_of("# only\n# comments"), 2);
    }

    proptest! {
        #[test]
        fn canonical_round_trip(
            n in 1usize..9,
            raw in proptest::collection::vec((0usize..9, 0usize..9, 0.0..=1.0f64), 0..20),
        ) {
            let mut seen = std::collections::HashSet::new();
            let edges: Vec<_> = raw
                .into_iter()
                .filter(|&(i, j, _)| i < n && j < n && i != j && seen.insert((i.min(j), i.max(j))))
                .collect();
            let g = ProbGraph::new(n, edges).unwrap();
            let text = write_graph_file(&g);
            let back = parse_graph_file(&text).unwrap();
            prop_assert_eq!(&back, &g);
            prop_assert_eq!(write_graph_file(&back), text);
        }

        #[test]
        fn never_panics(text in "\\PC*") {
            let _ = parse_graph_file(&text);
        }
    }
}

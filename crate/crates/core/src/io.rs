//! Edge-list text format.
//!
//! ```text
//! # optional comments start with '#'
//! 3
//! 0 1
//! 1 2
//! ```
//!
//! The first non-blank line holds `n`; every further non-blank line holds one
//! edge `u v`. The writer emits `u < v` in lexicographic order, so output is
//! canonical.

use std::fmt::Write as _;
use std::path::Path;

use crate::graph::{Graph, GraphError, Vertex};

fn parse_error(line: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        line,
        message: message.into(),
    }
}

pub fn read_graph(text: &str) -> Result<Graph, GraphError> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut lines_of_edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match n {
            None => {
                if fields.len() != 1 {
                    return Err(parse_error(line_no, "expected vertex count"));
                }
                n = Some(fields[0].parse().map_err(|_| {
                    parse_error(line_no, format!("bad vertex count `{}`", fields[0]))
                })?);
            }
            Some(n) => {
                if fields.len() != 2 {
                    return Err(parse_error(line_no, "expected `u v`"));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields) {
                    *slot = f
                        .parse()
                        .map_err(|_| parse_error(line_no, format!("bad vertex `{f}`")))?;
                    if *slot >= n {
                        return Err(parse_error(
                            line_no,
                            format!("vertex {slot} out of range (n = {n})"),
                        ));
                    }
                }
                if ends[0] == ends[1] {
                    return Err(parse_error(
                        line_no,
                        format!("self-loop at vertex {}", ends[0]),
                    ));
                }
                edges.push((ends[0], ends[1]));
                lines_of_edges.push(line_no);
            }
        }
    }
    let n = n.ok_or_else(|| parse_error(0, "missing vertex count"))?;
    Graph::from_edges(n, edges.iter().copied()).map_err(|e| match e {
        GraphError::DuplicateEdge(u, v) => {
            // Report the line of the second occurrence.
            let key = (u, v);
            let line = edges
                .iter()
                .zip(&lines_of_edges)
                .filter(|((a, b), _)| ((*a).min(*b), (*a).max(*b)) == key)
                .nth(1)
                .map_or(0, |(_, &l)| l);
            parse_error(line, format!("duplicate edge {u} {v}"))
        }
        other => other,
    })
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{}", g.n());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[derive(Debug, thiserror::Error)]
pub enum ReadFileError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph { path: String, source: GraphError },
}

pub fn read_graph_file(path: &Path) -> Result<Graph, ReadFileError> {
    let display = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| ReadFileError::Io {
        path: display.clone(),
        source,
    })?;
    read_graph(&text).map_err(|source| ReadFileError::Graph {
        path: display,
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use proptest::prelude::*;

    #[test]
    fn reads_path() {
        let g = read_graph("3\n0 1\n1 2").unwrap();
        assert_eq!(g, generators::path(3).unwrap());
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = read_graph("# header\n\n4 # vertices\n2 3\n# mid\n0 1\n").unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (2, 3)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(
            read_graph("2\n0 0"),
            Err(GraphError::Parse {
                line: 2,
                message: "self-loop at vertex 0".into()
            })
        );
        assert!(matches!(
            read_graph("3\n0 1\n\n1 0"),
            Err(GraphError::Parse { line: 4, .. })
        ));
        assert!(matches!(
            read_graph("3\n0 5"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_graph("x"),
            Err(GraphError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            read_graph("3\n0 1 2"),
            Err(GraphError::Parse { line: 2, .. })
        ));
        assert!(matches!(
            read_graph("# nothing"),
            Err(GraphError::Parse { .. })
        ));
    }

    #[test]
    fn writer_is_canonical() {
        let g = Graph::from_edges(4, [(3, 2), (1, 0), (0, 3)]).unwrap();
        assert_eq!(write_graph(&g), "4\n0 1\n0 3\n2 3\n");
    }

    #[test]
    fn missing_file() {
        assert!(read_graph_file(Path::new("/nonexistent/missing.edges")).is_err());
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..25, p in 0.0f64..1.0, seed in any::<u64>()) {
            let g = generators::gnp(n, p, seed).unwrap();
            let text = write_graph(&g);
            prop_assert_eq!(read_graph(&text).unwrap(), g);
            prop_assert_eq!(write_graph(&read_graph(&text).unwrap()), text);
        }
    }
}

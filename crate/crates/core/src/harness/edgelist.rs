//! Plain-text edge lists: one `u v` pair per line, 0-based, `#` starts a
//! comment. A `# n N` comment fixes the order so isolated vertices survive.

use thiserror::Error;

use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeListError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn header_order(comment: &str) -> Option<usize> {
    let mut words = comment.split_whitespace();
    match (words.next(), words.next(), words.next()) {
        (Some("n"), Some(n), None) => n.parse().ok(),
        _ => None,
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, EdgeListError> {
    let mut order = 0;
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let (content, comment) = match raw.split_once('#') {
            Some((c, rest)) => (c, Some(rest)),
            None => (raw, None),
        };
        if let Some(n) = comment.and_then(header_order) {
            order = order.max(n);
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            [u, v] => {
                let parse = |t: &str| {
                    t.parse::<usize>().map_err(|_| EdgeListError::Syntax {
                        line,
                        message: format!("`{t}` is not a vertex index"),
                    })
                };
                let (u, v) = (parse(u)?, parse(v)?);
                order = order.max(u + 1).max(v + 1);
                edges.push((u, v));
            }
            _ => {
                return Err(EdgeListError::Syntax {
                    line,
                    message: "expected two vertex indices".into(),
                })
            }
        }
    }
    Ok(Graph::new(order, &edges)?)
}

pub fn emit_edge_list(g: &Graph) -> String {
    let mut out = format!("# n {}\n", g.order());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::path;

    #[test]
    fn round_trip() {
        let g = parse_edge_list("0 1\n1 2\n2 3").unwrap();
        assert_eq!(g, path(4).unwrap());
        assert_eq!(parse_edge_list(&emit_edge_list(&g)).unwrap(), g);
        let isolated = Graph::new(5, &[(0, 1)]).unwrap();
        assert_eq!(
            parse_edge_list(&emit_edge_list(&isolated)).unwrap(),
            isolated
        );
    }

    #[test]
    fn comments_and_errors() {
        let g = parse_edge_list("# a comment\n0 1 # trailing\n\n").unwrap();
        assert_eq!((g.order(), g.size()), (2, 1));
        assert_eq!(
            parse_edge_list("0 1\n4 4"),
            Err(EdgeListError::Graph(GraphError::SelfLoop(4)))
        );
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(EdgeListError::Syntax { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(EdgeListError::Syntax { .. })
        ));
    }
}

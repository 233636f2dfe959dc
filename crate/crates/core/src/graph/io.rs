use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use super::{Graph, GraphBuilder};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Delimiter {
    /// Any run of spaces or tabs.
    #[default]
    Whitespace,
    Tab,
    Comma,
}

/// How to split the columns of an edge list.
#[derive(Debug, Clone, Copy, Default)]
pub struct EdgeListFormat {
    pub delimiter: Delimiter,
}

impl EdgeListFormat {
    fn split<'a>(&self, line: &'a str) -> Vec<&'a str> {
        match self.delimiter {
            Delimiter::Whitespace => line.split_whitespace().collect(),
            Delimiter::Tab => line.split('\t').map(str::trim).collect(),
            Delimiter::Comma => line.split(',').map(str::trim).collect(),
        }
    }
}

/// Parse `u v [w]` lines into an undirected graph.
///
/// `#` starts a comment line and `node u` declares a (possibly isolated)
/// node. Repeated pairs in either orientation keep the largest weight.
/// Zero weights register both endpoints without an edge; self-loops are
/// ignored.
pub fn load_edge_list<R: BufRead>(reader: R, format: &EdgeListFormat) -> Result<Graph> {
    let mut b = GraphBuilder::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields = format.split(trimmed);
        match fields.as_slice() {
            ["node", u] => {
                b.add_node(u);
            }
            [u, v] => b.add_edge(u, v, 1.0),
            [u, v, w] => {
                let weight: f64 = w.parse().map_err(|_| Error::MalformedLine {
                    line: lineno,
                    reason: format!("weight '{w}' is not a number"),
                })?;
                if !weight.is_finite() {
                    return Err(Error::MalformedLine {
                        line: lineno,
                        reason: format!("weight '{w}' is not finite"),
                    });
                }
                if weight < 0.0 {
                    return Err(Error::NegativeWeight { line: lineno, weight });
                }
                b.add_node(u);
                b.add_node(v);
                b.add_edge(u, v, weight);
            }
            _ => {
                return Err(Error::MalformedLine {
                    line: lineno,
                    reason: format!("expected 2 or 3 fields, found {}", fields.len()),
                })
            }
        }
    }
    if b.node_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    Ok(b.build())
}

pub fn read_edge_list_file(path: impl AsRef<Path>, format: &EdgeListFormat) -> Result<Graph> {
    let f = File::open(path)?;
    load_edge_list(BufReader::new(f), format)
}

/// Tab-separated edge list; weights are written only for weighted graphs,
/// isolated nodes as `node u` lines.
pub fn write_edge_list<W: Write>(g: &Graph, mut out: W) -> Result<()> {
    let binary = g.is_binary();
    for (u, v, w) in g.edges() {
        if binary {
            writeln!(out, "{}\t{}", g.label(u), g.label(v))?;
        } else {
            writeln!(out, "{}\t{}\t{}", g.label(u), g.label(v), w)?;
        }
    }
    for i in 0..g.n() {
        if g.degree(i) == 0 {
            writeln!(out, "node\t{}", g.label(i))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(s: &str) -> Result<Graph> {
        load_edge_list(s.as_bytes(), &EdgeListFormat::default())
    }

    #[test]
    fn two_lines_make_a_path() {
        let g = parse("0\t1\n1\t2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);
        assert!(g.is_binary());
    }

    #[test]
    fn duplicate_pairs_collapse_to_max() {
        let g = parse("a b 0.5\nb a 0.9\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        let (a, b) = (g.index_of("a").unwrap(), g.index_of("b").unwrap());
        assert_eq!(g.weight(a, b), Some(0.9));
    }

    #[test]
    fn empty_stream_is_an_error() {
        assert!(matches!(parse(""), Err(Error::EmptyGraph)));
        assert!(matches!(parse("# only a comment\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn malformed_and_negative_lines() {
        assert!(matches!(parse("1 2 3 4\n"), Err(Error::MalformedLine { line: 1, .. })));
        assert!(matches!(parse("1\n"), Err(Error::MalformedLine { .. })));
        assert!(matches!(parse("0 1\n1 2 x\n"), Err(Error::MalformedLine { line: 2, .. })));
        assert!(matches!(parse("1 2 -0.5\n"), Err(Error::NegativeWeight { .. })));
    }

    #[test]
    fn isolated_nodes_and_comments() {
        let g = parse("# header\n0 1\nnode 7\n\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.degree(g.index_of("7").unwrap()), 0);
    }

    #[test]
    fn comma_delimiter() {
        let fmt = EdgeListFormat { delimiter: Delimiter::Comma };
        let g = load_edge_list("x, y, 2.5\n".as_bytes(), &fmt).unwrap();
        assert_eq!(g.weight(0, 1), Some(2.5));
    }

    #[test]
    fn write_then_load_preserves_labelled_edges() {
        let g = parse("a b 0.25\nc a 1.5\nnode z\n").unwrap();
        let mut buf = Vec::new();
        write_edge_list(&g, &mut buf).unwrap();
        let h = parse(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!(h.n(), g.n());
        for (u, v, w) in g.edges() {
            let (hu, hv) = (h.index_of(g.label(u)).unwrap(), h.index_of(g.label(v)).unwrap());
            assert_eq!(h.weight(hu, hv), Some(w));
        }
        assert_eq!(h.edge_count(), g.edge_count());
        assert_eq!(h.degree(h.index_of("z").unwrap()), 0);
    }
}

//! Plain-text edge lists.
//!
//! A document is a sequence of lines. Lines starting with `#` are comments
//! and blank lines are ignored. The first other line is the header `n m`,
//! followed by `m` lines `u v` with labels below `n`. One optional line
//! `D: a b c` names a dominating set. Oriented edge lists use the same
//! format with each line read as `tail head`, in edge-id order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{Arc, Orientation, UndirectedMultigraph, VertexId};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EdgeListDocument {
    pub comments: Vec<String>,
    pub vertex_count: usize,
    pub edges: Vec<(u32, u32)>,
    pub dominators: Option<Vec<u32>>,
}

fn parse_label(token: &str, n: usize, line: usize) -> Result<u32> {
    let v: u32 = token.parse().map_err(|_| Error::Parse {
        line,
        message: format!("`{token}` is not a vertex label"),
    })?;
    if v as usize >= n {
        return Err(Error::Parse {
            line,
            message: format!("label {v} is not below the vertex count {n}"),
        });
    }
    Ok(v)
}

impl EdgeListDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut doc = EdgeListDocument::default();
        let mut header: Option<(usize, usize)> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() {
                continue;
            }
            if let Some(c) = trimmed.strip_prefix('#') {
                doc.comments.push(c.strip_prefix(' ').unwrap_or(c).to_string());
                continue;
            }
            let Some((n, _)) = header else {
                let fields: Vec<&str> = trimmed.split_whitespace().collect();
                let parsed: Vec<usize> = fields.iter().filter_map(|f| f.parse().ok()).collect();
                if fields.len() != 2 || parsed.len() != 2 {
                    return Err(Error::Parse {
                        line,
                        message: "expected a header `vertices edges`".into(),
                    });
                }
                header = Some((parsed[0], parsed[1]));
                doc.vertex_count = parsed[0];
                continue;
            };
            if let Some(rest) = trimmed.strip_prefix("D:") {
                if doc.dominators.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "second dominator line".into(),
                    });
                }
                let labels = rest
                    .split_whitespace()
                    .map(|t| parse_label(t, n, line))
                    .collect::<Result<Vec<u32>>>()?;
                doc.dominators = Some(labels);
                continue;
            }
            let fields: Vec<&str> = trimmed.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line,
                    message: "expected an edge `u v`".into(),
                });
            }
            doc.edges
                .push((parse_label(fields[0], n, line)?, parse_label(fields[1], n, line)?));
        }
        let Some((_, m)) = header else {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: "missing header".into(),
            });
        };
        if doc.edges.len() != m {
            return Err(Error::Parse {
                line: text.lines().count().max(1),
                message: format!("header promises {m} edges, found {}", doc.edges.len()),
            });
        }
        Ok(doc)
    }

    pub fn from_graph(g: &UndirectedMultigraph) -> Self {
        EdgeListDocument {
            comments: Vec::new(),
            vertex_count: g.vertex_count(),
            edges: g.edges().map(|(_, u, v)| (u.0, v.0)).collect(),
            dominators: None,
        }
    }

    /// The oriented edge list of `o`, one `tail head` line per edge.
    pub fn from_orientation(o: &Orientation) -> Self {
        EdgeListDocument {
            comments: Vec::new(),
            vertex_count: o.vertices().iter().map(|v| v.0 as usize + 1).max().unwrap_or(0),
            edges: o.arcs().map(|(_, a)| (a.tail.0, a.head.0)).collect(),
            dominators: None,
        }
    }

    pub fn with_comment(mut self, comment: impl Into<String>) -> Self {
        self.comments.push(comment.into());
        self
    }

    pub fn with_dominators(mut self, dominators: &BTreeSet<VertexId>) -> Self {
        self.dominators = Some(dominators.iter().map(|v| v.0).collect());
        self
    }

    pub fn graph(&self) -> Result<UndirectedMultigraph> {
        UndirectedMultigraph::from_edges(self.vertex_count, &self.edges)
    }

    pub fn dominator_set(&self) -> Option<BTreeSet<VertexId>> {
        self.dominators
            .as_ref()
            .map(|d| d.iter().map(|&v| VertexId(v)).collect())
    }

    /// Reads this document as an orientation of `g`: line `i` must join the
    /// endpoints of edge `i`.
    pub fn orientation_of(&self, g: &UndirectedMultigraph) -> Result<Orientation> {
        if self.vertex_count != g.vertex_count() || self.edges.len() != g.edge_count() {
            return Err(Error::Parse {
                line: 1,
                message: "orientation header does not match the graph".into(),
            });
        }
        let mut arcs = BTreeMap::new();
        for (i, ((e, u, v), &(t, h))) in g.edges().zip(&self.edges).enumerate() {
            let (t, h) = (VertexId(t), VertexId(h));
            if !((t == u && h == v) || (t == v && h == u)) {
                return Err(Error::Parse {
                    line: i + 2,
                    message: format!("arc {t} {h} does not match edge {u} {v}"),
                });
            }
            arcs.insert(e, Arc::new(t, h));
        }
        Orientation::new(g, arcs)
    }
}

impl fmt::Display for EdgeListDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.comments {
            if c.is_empty() {
                writeln!(f, "#")?;
            } else {
                writeln!(f, "# {c}")?;
            }
        }
        writeln!(f, "{} {}", self.vertex_count, self.edges.len())?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        if let Some(d) = &self.dominators {
            let labels: Vec<String> = d.iter().map(u32::to_string).collect();
            writeln!(f, "D: {}", labels.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BOWTIE: &str = "# bowtie\n5 6\n0 1\n1 2\n2 0\n0 3\n3 4\n4 0\nD: 0\n";

    #[test]
    fn round_trip() {
        let doc = EdgeListDocument::parse(BOWTIE).unwrap();
        assert_eq!(doc.to_string(), BOWTIE);
        assert_eq!(doc.graph().unwrap().edge_count(), 6);
        assert_eq!(doc.dominator_set().unwrap().len(), 1);
    }

    #[test]
    fn errors_carry_lines() {
        let err = EdgeListDocument::parse("3 2\n0 1\n1 7\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        assert!(matches!(EdgeListDocument::parse("# only\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            EdgeListDocument::parse("3 3\n0 1\n"),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn orientation_round_trip() {
        let g = EdgeListDocument::parse(BOWTIE).unwrap().graph().unwrap();
        let o = Orientation::from_fn(&g, |_, u, v| u.0 > v.0);
        let text = EdgeListDocument::from_orientation(&o).to_string();
        let back = EdgeListDocument::parse(&text).unwrap().orientation_of(&g).unwrap();
        assert_eq!(back, o);
        let bad = EdgeListDocument::parse("5 6\n0 1\n1 2\n2 0\n0 3\n3 4\n4 2\n").unwrap();
        assert!(bad.orientation_of(&g).is_err());
    }
}

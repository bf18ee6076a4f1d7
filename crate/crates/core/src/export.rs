//! Text serializations of graphs: DOT, GraphML, edge TSV and matrix CSV.
//!
//! Output depends only on the graph, so equal graphs give identical bytes.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limit::{EdgeKind, SelfSimilarityGraph};
use crate::schreier::{LabeledSchreierGraph, RootedGraph, SimplicialGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Dot,
    GraphMl,
    Edges,
    Matrix,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(Self::Dot),
            "graphml" => Ok(Self::GraphMl),
            "edges" | "tsv" => Ok(Self::Edges),
            "matrix" | "csv" => Ok(Self::Matrix),
            _ => Err(Error::UnsupportedFormat(s.to_string())),
        }
    }
}

/// Shown for the empty word, which would otherwise be an empty field.
pub const EMPTY_WORD: &str = "ε";

/// Format-independent view of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportGraph {
    pub directed: bool,
    pub vertices: Vec<String>,
    /// `(source, target, label)`; undirected edges are listed once.
    pub edges: Vec<(u32, u32, String)>,
    pub root: Option<u32>,
    /// Tree level per vertex, when vertices come from several levels.
    pub levels: Option<Vec<usize>>,
}

fn word_label(label: String) -> String {
    if label.is_empty() {
        EMPTY_WORD.to_string()
    } else {
        label
    }
}

impl ExportGraph {
    /// Arrows in generator-major order, labeled by generator name.
    pub fn from_labeled(g: &LabeledSchreierGraph) -> Self {
        Self {
            directed: true,
            vertices: (0..g.vertex_count() as u32)
                .map(|v| word_label(g.vertex_label(v)))
                .collect(),
            edges: g
                .arrows()
                .map(|a| (a.source, a.target, g.labels()[a.generator].clone()))
                .collect(),
            root: None,
            levels: None,
        }
    }

    pub fn from_simplicial(g: &SimplicialGraph, label: impl Fn(u32) -> String) -> Self {
        Self {
            directed: false,
            vertices: (0..g.vertex_count() as u32)
                .map(|v| word_label(label(v)))
                .collect(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v)| (u, v, String::new()))
                .collect(),
            root: None,
            levels: None,
        }
    }

    pub fn from_rooted(r: &RootedGraph) -> Self {
        let mut g = Self::from_simplicial(&r.graph, |v| r.vertex_label(v));
        g.root = Some(r.root);
        g
    }

    /// Edges labeled `v` (vertical) or `h` (horizontal).
    pub fn from_self_similarity(g: &SelfSimilarityGraph) -> Self {
        let n = g.vertex_count() as u32;
        Self {
            directed: false,
            vertices: (0..n).map(|v| word_label(g.vertex_label(v))).collect(),
            edges: g
                .edges()
                .iter()
                .map(|&(u, v, kind)| {
                    let tag = match kind {
                        EdgeKind::Vertical => "v",
                        EdgeKind::Horizontal => "h",
                    };
                    (u, v, tag.to_string())
                })
                .collect(),
            root: Some(0),
            levels: Some((0..n).map(|v| g.level_of(v)).collect()),
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Dot => self.dot(),
            Format::GraphMl => self.graphml(),
            Format::Edges => self.edges_tsv(),
            Format::Matrix => self.matrix_csv(),
        }
    }

    fn dot(&self) -> String {
        let (kind, arrow) = if self.directed {
            ("digraph", "->")
        } else {
            ("graph", "--")
        };
        let mut out = format!("{kind} G {{\n");
        for (i, label) in self.vertices.iter().enumerate() {
            write!(out, "  v{i} [label=\"{}\"", dot_escape(label)).unwrap();
            if let Some(levels) = &self.levels {
                write!(out, ", level={}", levels[i]).unwrap();
            }
            if self.root == Some(i as u32) {
                out.push_str(", root=true, shape=doublecircle");
            }
            out.push_str("];\n");
        }
        for (u, v, label) in &self.edges {
            write!(out, "  v{u} {arrow} v{v}").unwrap();
            if !label.is_empty() {
                write!(out, " [label=\"{}\"]", dot_escape(label)).unwrap();
            }
            out.push_str(";\n");
        }
        out.push_str("}\n");
        out
    }

    fn graphml(&self) -> String {
        let mut out = String::from(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <graphml xmlns=\"http://graphml.graphdrawing.org/xmlns\">\n  \
             <key id=\"word\" for=\"node\" attr.name=\"word\" attr.type=\"string\"/>\n",
        );
        if self.levels.is_some() {
            out.push_str(
                "  <key id=\"level\" for=\"node\" attr.name=\"level\" attr.type=\"int\"/>\n",
            );
        }
        if self.root.is_some() {
            out.push_str(
                "  <key id=\"root\" for=\"node\" attr.name=\"root\" attr.type=\"boolean\"/>\n",
            );
        }
        out.push_str(
            "  <key id=\"label\" for=\"edge\" attr.name=\"label\" attr.type=\"string\"/>\n",
        );
        let direction = if self.directed {
            "directed"
        } else {
            "undirected"
        };
        writeln!(out, "  <graph id=\"G\" edgedefault=\"{direction}\">").unwrap();
        for (i, label) in self.vertices.iter().enumerate() {
            write!(
                out,
                "    <node id=\"v{i}\"><data key=\"word\">{}</data>",
                xml_escape(label)
            )
            .unwrap();
            if let Some(levels) = &self.levels {
                write!(out, "<data key=\"level\">{}</data>", levels[i]).unwrap();
            }
            if self.root == Some(i as u32) {
                out.push_str("<data key=\"root\">true</data>");
            }
            out.push_str("</node>\n");
        }
        for (i, (u, v, label)) in self.edges.iter().enumerate() {
            write!(
                out,
                "    <edge id=\"e{i}\" source=\"v{u}\" target=\"v{v}\">"
            )
            .unwrap();
            if !label.is_empty() {
                write!(out, "<data key=\"label\">{}</data>", xml_escape(label)).unwrap();
            }
            out.push_str("</edge>\n");
        }
        out.push_str("  </graph>\n</graphml>\n");
        out
    }

    fn edges_tsv(&self) -> String {
        let mut out = String::from("src\tdst\tlabel\n");
        for (u, v, label) in &self.edges {
            writeln!(
                out,
                "{}\t{}\t{}",
                self.vertices[*u as usize], self.vertices[*v as usize], label
            )
            .unwrap();
        }
        out
    }

    /// Entry `(i, j)` joins the labels of all edges `i → j` with `+`; unlabeled
    /// edges count as `1`, and empty entries are `0`.
    fn matrix_csv(&self) -> String {
        let n = self.vertices.len();
        let mut rows: Vec<std::collections::BTreeMap<u32, Vec<&str>>> = vec![Default::default(); n];
        for (u, v, label) in &self.edges {
            let label = if label.is_empty() {
                "1"
            } else {
                label.as_str()
            };
            rows[*u as usize].entry(*v).or_default().push(label);
            if !self.directed && u != v {
                rows[*v as usize].entry(*u).or_default().push(label);
            }
        }
        let mut out = String::new();
        for row in &rows {
            let cells: Vec<String> = (0..n as u32)
                .map(|j| row.get(&j).map_or_else(|| "0".to_string(), |l| l.join("+")))
                .collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Reads back an edge TSV as `(source word, target word, label)` rows.
pub fn parse_edges_tsv(text: &str) -> Result<Vec<(String, String, String)>> {
    let mut lines = text.lines();
    match lines.next() {
        Some("src\tdst\tlabel") => {}
        other => {
            return Err(Error::Malformed(format!(
                "expected header `src\\tdst\\tlabel`, found {other:?}"
            )))
        }
    }
    lines
        .enumerate()
        .filter(|(_, l)| !l.is_empty())
        .map(|(i, line)| {
            let fields: Vec<&str> = line.split('\t').collect();
            match fields.as_slice() {
                [s, d, l] => Ok((s.to_string(), d.to_string(), l.to_string())),
                _ => Err(Error::Malformed(format!(
                    "edge row {} has {} fields",
                    i + 2,
                    fields.len()
                ))),
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse;
    use crate::schreier::{build_schreier, SchreierLimits};

    fn basilica(level: usize) -> LabeledSchreierGraph {
        let doc = parse("alphabet 2\na = (0 1)(b, id)\nb = id(a, id)\nid = id(id, id)\ngens a b")
            .unwrap();
        let (aut, gens) = doc.to_automaton();
        build_schreier(&aut, &gens, level, SchreierLimits::default()).unwrap()
    }

    #[test]
    fn formats_parse() {
        assert_eq!("dot".parse::<Format>().unwrap(), Format::Dot);
        assert_eq!("GraphML".parse::<Format>().unwrap(), Format::GraphMl);
        assert_eq!(
            "png".parse::<Format>().unwrap_err(),
            Error::UnsupportedFormat("png".into())
        );
    }

    #[test]
    fn basilica_level_one_matrix() {
        let csv = ExportGraph::from_labeled(&basilica(1)).render(Format::Matrix);
        assert_eq!(csv, "b,a\na,b\n");
    }

    #[test]
    fn basilica_level_one_edges() {
        let tsv = ExportGraph::from_labeled(&basilica(1)).render(Format::Edges);
        assert_eq!(tsv, "src\tdst\tlabel\n0\t1\ta\n1\t0\ta\n0\t0\tb\n1\t1\tb\n");
    }

    #[test]
    fn edges_round_trip() {
        let g = basilica(4);
        let rows = parse_edges_tsv(&ExportGraph::from_labeled(&g).render(Format::Edges)).unwrap();
        let expected: Vec<(String, String, String)> = g
            .arrows()
            .map(|a| {
                (
                    g.vertex_label(a.source),
                    g.vertex_label(a.target),
                    g.labels()[a.generator].clone(),
                )
            })
            .collect();
        assert_eq!(rows, expected);
    }

    #[test]
    fn edgeless_dot_lists_vertices() {
        let g = SimplicialGraph::from_pairs(2, []);
        let dot = ExportGraph::from_simplicial(&g, |v| v.to_string()).render(Format::Dot);
        assert_eq!(
            dot,
            "graph G {\n  v0 [label=\"0\"];\n  v1 [label=\"1\"];\n}\n"
        );
    }

    #[test]
    fn simplicial_matrix_is_symmetric() {
        let g = basilica(2).simplicial();
        let csv = ExportGraph::from_simplicial(&g, |v| v.to_string()).render(Format::Matrix);
        let cells: Vec<Vec<&str>> = csv.lines().map(|l| l.split(',').collect()).collect();
        for (i, row) in cells.iter().enumerate() {
            for (j, cell) in row.iter().enumerate() {
                assert_eq!(*cell, cells[j][i]);
            }
        }
    }

    #[test]
    fn graphml_escapes() {
        let g = ExportGraph {
            directed: true,
            vertices: vec!["<&>".into()],
            edges: vec![(0, 0, "a\"b".into())],
            root: None,
            levels: None,
        };
        let xml = g.render(Format::GraphMl);
        assert!(xml.contains("&lt;&amp;&gt;"));
        assert!(xml.contains("a&quot;b"));
    }
}

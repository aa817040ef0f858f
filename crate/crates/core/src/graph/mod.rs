//! Labeled simple undirected graphs and the ring-graph builders.

mod build;
mod symbolic;

use std::collections::HashSet;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::Serialize;

use crate::error::{Error, Result};

pub use build::{
    build_ia, build_ia_oracle, build_torsion, build_total, class_members, compress_classes,
    ClassKey, VertexClass,
};
pub use symbolic::{build_ia_domain_product, build_ia_zn_symbolic, support_label};

/// Which graph a builder produced; used for DOT names and JSON output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphKind {
    Ia,
    Torsion,
    Total,
    ZnSymbolic,
    DomainProduct,
}

impl GraphKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GraphKind::Ia => "ia",
            GraphKind::Torsion => "torsion",
            GraphKind::Total => "total",
            GraphKind::ZnSymbolic => "zn-symbolic",
            GraphKind::DomainProduct => "domain-product",
        }
    }

    fn dot_name(self) -> &'static str {
        match self {
            GraphKind::Ia | GraphKind::ZnSymbolic | GraphKind::DomainProduct => "IA",
            GraphKind::Torsion => "Torsion",
            GraphKind::Total => "Total",
        }
    }
}

/// Simple undirected graph: ordered duplicate-free labels plus a symmetric
/// adjacency matrix (one bitset row per vertex) with empty diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    class_sizes: Vec<Option<u64>>,
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Graph(format!("duplicate vertex label `{l}`")));
            }
        }
        let n = labels.len();
        Ok(Graph {
            class_sizes: vec![None; n],
            adj: vec![FixedBitSet::with_capacity(n); n],
            labels,
        })
    }

    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(labels)?;
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    /// Unlabeled graph on `0..n`.
    pub fn unlabeled(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        Graph::from_edges((0..n).map(|i| i.to_string()).collect(), edges)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<()> {
        let n = self.len();
        if i >= n || j >= n {
            return Err(Error::Graph(format!("edge ({i},{j}) outside {n} vertices")));
        }
        if i == j {
            return Err(Error::Graph(format!("self-loop at vertex {i}")));
        }
        self.adj[i].insert(j);
        self.adj[j].insert(i);
        Ok(())
    }

    pub(crate) fn set_class_sizes(&mut self, sizes: Vec<Option<u64>>) {
        debug_assert_eq!(sizes.len(), self.len());
        self.class_sizes = sizes;
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn class_sizes(&self) -> &[Option<u64>] {
        &self.class_sizes
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i].contains(j)
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].ones()
    }

    pub fn row(&self, i: usize) -> &FixedBitSet {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].count_ones(..)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.len()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|i| self.adj[i].ones().filter(move |&j| j > i).map(move |j| (i, j)))
            .collect()
    }

    /// Edges as label pairs, each pair ordered, the list sorted.
    pub fn labeled_edges(&self) -> Vec<(String, String)> {
        let mut out: Vec<(String, String)> = self
            .edges()
            .into_iter()
            .map(|(i, j)| {
                let (a, b) = (self.labels[i].clone(), self.labels[j].clone());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        out.sort();
        out
    }

    /// Same graph with vertices permuted: vertex `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.len();
        let mut labels = vec![String::new(); n];
        let mut sizes = vec![None; n];
        for (i, &p) in perm.iter().enumerate() {
            labels[p] = self.labels[i].clone();
            sizes[p] = self.class_sizes[i];
        }
        let edges: Vec<(usize, usize)> =
            self.edges().into_iter().map(|(i, j)| (perm[i], perm[j])).collect();
        let mut g = Graph::from_edges(labels, &edges)?;
        g.class_sizes = sizes;
        Ok(g)
    }

    /// Graphviz form. Vertices in graph order, each edge once with endpoints
    /// in vertex order.
    pub fn to_dot(&self, kind: GraphKind) -> String {
        let mut s = String::new();
        writeln!(s, "graph {} {{", kind.dot_name()).unwrap();
        for l in &self.labels {
            writeln!(s, "  {};", dot_quote(l)).unwrap();
        }
        for (i, j) in self.edges() {
            writeln!(s, "  {} -- {};", dot_quote(&self.labels[i]), dot_quote(&self.labels[j]))
                .unwrap();
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self, ring: &str, kind: GraphKind) -> serde_json::Value {
        let doc = GraphDoc {
            ring,
            graph_kind: kind,
            vertices: self
                .labels
                .iter()
                .zip(&self.class_sizes)
                .map(|(label, &class_size)| VertexDoc { label, class_size })
                .collect(),
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        };
        serde_json::to_value(doc).expect("graph serializes")
    }
}

#[derive(Serialize)]
struct GraphDoc<'a> {
    ring: &'a str,
    graph_kind: GraphKind,
    vertices: Vec<VertexDoc<'a>>,
    edges: Vec<[usize; 2]>,
}

#[derive(Serialize)]
struct VertexDoc<'a> {
    label: &'a str,
    class_size: Option<u64>,
}

fn dot_quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

//! Graph invariants: connectivity, diameter, girth, completeness,
//! complete-bipartite shape, degree sequence.

mod iso;

use std::collections::VecDeque;
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Serialize, Serializer};

use crate::graph::Graph;

pub use iso::{is_isomorphic, Isomorphism};

/// A natural number or `∞`. Serializes as a number or `"inf"`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Extent {
    Finite(u64),
    Infinite,
}

impl Extent {
    pub fn finite(self) -> Option<u64> {
        match self {
            Extent::Finite(v) => Some(v),
            Extent::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Extent::Infinite
    }
}

impl fmt::Display for Extent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extent::Finite(v) => write!(f, "{v}"),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(v) => s.serialize_u64(*v),
            Extent::Infinite => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub connected: bool,
    pub diameter: Extent,
    pub girth: Extent,
    pub complete: bool,
    pub totally_disconnected: bool,
    pub bipartite_parts: Option<(usize, usize)>,
    /// Non-increasing.
    pub degree_sequence: Vec<usize>,
    /// Fewer than two vertices: connected with diameter 0 by convention.
    pub degenerate: bool,
}

impl InvariantReport {
    pub const CSV_HEADER: &'static str = "vertex_count,edge_count,connected,diameter,girth,complete,totally_disconnected,bipartite_parts,degenerate";

    pub fn csv_row(&self) -> String {
        let parts = self
            .bipartite_parts
            .map(|(m, n)| format!("{m}x{n}"))
            .unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.vertex_count,
            self.edge_count,
            self.connected,
            self.diameter,
            self.girth,
            self.complete,
            self.totally_disconnected,
            parts,
            self.degenerate
        )
    }
}

pub fn invariants(g: &Graph) -> InvariantReport {
    let n = g.len();
    let edges = g.edge_count();
    let mut degree_sequence: Vec<usize> = (0..n).map(|i| g.degree(i)).collect();
    degree_sequence.sort_unstable_by(|a, b| b.cmp(a));
    InvariantReport {
        vertex_count: n,
        edge_count: edges,
        connected: is_connected(g),
        diameter: diameter(g),
        girth: girth(g),
        complete: edges == n * n.saturating_sub(1) / 2,
        totally_disconnected: edges == 0,
        bipartite_parts: is_complete_bipartite(g),
        degree_sequence,
        degenerate: n < 2,
    }
}

/// BFS distances from `src`; `None` when unreachable.
pub fn bfs_distances(g: &Graph, src: usize) -> Vec<Option<u64>> {
    let n = g.len();
    let mut dist = vec![None; n];
    let mut visited = FixedBitSet::with_capacity(n);
    visited.insert(src);
    dist[src] = Some(0);
    let mut frontier = vec![src];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = FixedBitSet::with_capacity(n);
        for &v in &frontier {
            next.union_with(g.row(v));
        }
        next.difference_with(&visited);
        visited.union_with(&next);
        frontier = next.ones().collect();
        for &v in &frontier {
            dist[v] = Some(d);
        }
    }
    dist
}

pub fn is_connected(g: &Graph) -> bool {
    g.len() < 2 || bfs_distances(g, 0).iter().all(Option::is_some)
}

/// Largest pairwise distance; `∞` when disconnected, `0` below two vertices.
pub fn diameter(g: &Graph) -> Extent {
    let mut best = 0;
    for s in 0..g.len() {
        for d in bfs_distances(g, s) {
            match d {
                Some(d) => best = best.max(d),
                None => return Extent::Infinite,
            }
        }
    }
    Extent::Finite(best)
}

/// Length of a shortest cycle, `∞` when acyclic.
pub fn girth(g: &Graph) -> Extent {
    let n = g.len();
    // triangles first: most graphs here have one
    for (i, j) in g.edges() {
        if g.row(i).intersection(g.row(j)).next().is_some() {
            return Extent::Finite(3);
        }
    }
    let mut best = u64::MAX;
    for root in 0..n {
        let mut dist = vec![u64::MAX; n];
        let mut parent = vec![usize::MAX; n];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            if 2 * dist[u] + 1 >= best {
                break;
            }
            for w in g.neighbors(u) {
                if dist[w] == u64::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    best = best.min(dist[u] + dist[w] + 1);
                }
            }
        }
    }
    if best == u64::MAX {
        Extent::Infinite
    } else {
        Extent::Finite(best)
    }
}

/// Part sizes `(m, n)`, `m ≤ n`, when `g` is exactly `K^{m,n}`.
pub fn is_complete_bipartite(g: &Graph) -> Option<(usize, usize)> {
    let n = g.len();
    if n < 2 {
        return None;
    }
    let mut side = vec![u8::MAX; n];
    side[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        for w in g.neighbors(u) {
            if side[w] == u8::MAX {
                side[w] = 1 - side[u];
                queue.push_back(w);
            } else if side[w] == side[u] {
                return None;
            }
        }
    }
    if side.contains(&u8::MAX) {
        return None;
    }
    let a = side.iter().filter(|&&s| s == 0).count();
    let b = n - a;
    // parts are independent, so m·n edges means every cross pair is present
    (g.edge_count() == a * b).then(|| (a.min(b), a.max(b)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::unlabeled(n, &edges).unwrap()
    }

    #[test]
    fn degenerate_graphs() {
        let empty = Graph::unlabeled(0, &[]).unwrap();
        let r = invariants(&empty);
        assert_eq!(r.vertex_count, 0);
        assert!(r.connected && r.degenerate && r.complete && r.totally_disconnected);
        assert_eq!(r.diameter, Extent::Finite(0));
        let single = invariants(&Graph::unlabeled(1, &[]).unwrap());
        assert!(single.connected);
        assert_eq!(single.diameter, Extent::Finite(0));
        assert_eq!(single.girth, Extent::Infinite);
        assert_eq!(single.bipartite_parts, None);
    }

    #[test]
    fn disconnected_pair() {
        let r = invariants(&Graph::unlabeled(2, &[]).unwrap());
        assert!(!r.connected && r.totally_disconnected && !r.degenerate);
        assert_eq!(r.diameter, Extent::Infinite);
        assert_eq!(r.bipartite_parts, None);
    }

    #[test]
    fn cycles_and_paths() {
        for n in 3..12 {
            let r = invariants(&cycle(n));
            assert_eq!(r.girth, Extent::Finite(n as u64));
            assert_eq!(r.diameter, Extent::Finite((n / 2) as u64));
        }
        let path = Graph::unlabeled(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let r = invariants(&path);
        assert_eq!(r.girth, Extent::Infinite);
        assert_eq!(r.diameter, Extent::Finite(4));
        assert_eq!(r.degree_sequence, [2, 2, 2, 1, 1]);
    }

    #[test]
    fn complete_bipartite_shapes() {
        assert_eq!(is_complete_bipartite(&cycle(4)), Some((2, 2)));
        let star = Graph::unlabeled(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(is_complete_bipartite(&star), Some((1, 3)));
        assert_eq!(is_complete_bipartite(&cycle(6)), None);
        assert_eq!(is_complete_bipartite(&cycle(5)), None);
        let k2 = Graph::unlabeled(2, &[(0, 1)]).unwrap();
        assert_eq!(is_complete_bipartite(&k2), Some((1, 1)));
        let k33: Vec<(usize, usize)> = (0..3).flat_map(|i| (3..6).map(move |j| (i, j))).collect();
        assert_eq!(is_complete_bipartite(&Graph::unlabeled(6, &k33).unwrap()), Some((3, 3)));
    }

    #[test]
    fn extent_text() {
        assert_eq!(Extent::Infinite.to_string(), "inf");
        assert_eq!(serde_json::to_string(&Extent::Infinite).unwrap(), "\"inf\"");
        assert_eq!(serde_json::to_string(&Extent::Finite(2)).unwrap(), "2");
        assert!(Extent::Finite(100) < Extent::Infinite);
    }

    #[test]
    fn csv_row_format() {
        let r = invariants(&cycle(4));
        assert_eq!(r.csv_row(), "4,4,true,2,4,false,false,2x2,false");
    }
}

#![allow(dead_code)]

use iagraph::Graph;

/// Diameter by Floyd–Warshall: `None` when some pair is unreachable.
pub fn floyd_warshall_diameter(g: &Graph) -> Option<u64> {
    let n = g.len();
    const INF: u64 = u64::MAX / 4;
    let mut d = vec![vec![INF; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
        for j in 0..n {
            if g.has_edge(i, j) {
                row[j] = 1;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][k] + d[k][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    let max = d.iter().flatten().copied().max().unwrap_or(0);
    (max < INF).then_some(max)
}

/// Shortest cycle by enumerating simple cycles of each length in turn,
/// each cycle rooted at its smallest vertex.
pub fn brute_girth(g: &Graph) -> Option<u64> {
    let n = g.len();
    for len in 3..=n {
        for s in 0..n {
            let mut path = vec![s];
            if cycle_from(g, s, len, &mut path) {
                return Some(len as u64);
            }
        }
    }
    None
}

fn cycle_from(g: &Graph, s: usize, len: usize, path: &mut Vec<usize>) -> bool {
    let last = *path.last().unwrap();
    if path.len() == len {
        return g.has_edge(last, s);
    }
    for w in 0..g.len() {
        if w > s && g.has_edge(last, w) && !path.contains(&w) {
            path.push(w);
            if cycle_from(g, s, len, path) {
                return true;
            }
            path.pop();
        }
    }
    false
}

/// `ann(x)` in `ℤ_n` by scanning residues.
pub fn zn_ann(n: u64, x: u64) -> Vec<u64> {
    (0..n).filter(|r| (r * x).is_multiple_of(n)).collect()
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

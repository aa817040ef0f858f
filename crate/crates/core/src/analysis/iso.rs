use std::collections::BTreeMap;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// `map[i]` is the vertex of the second graph matched to vertex `i` of the first.
pub type Isomorphism = Vec<usize>;

/// Find an isomorphism `g → h`, or `None` when there is none.
pub fn is_isomorphic(g: &Graph, h: &Graph, caps: &Caps) -> Result<Option<Isomorphism>> {
    let n = g.len();
    let big = n.max(h.len());
    if big > caps.iso_vertices {
        return Err(Error::cap("isomorphism vertex count", big as u64, caps.iso_vertices as u64));
    }
    if n != h.len() || g.edge_count() != h.edge_count() {
        return Ok(None);
    }
    let (cg, ch) = refine(g, h);
    let mut sg = cg.clone();
    let mut sh = ch.clone();
    sg.sort_unstable();
    sh.sort_unstable();
    if sg != sh {
        return Ok(None);
    }

    // rarest colors first, ties broken by degree then index
    let mut freq = BTreeMap::new();
    for &c in &cg {
        *freq.entry(c).or_insert(0usize) += 1;
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (freq[&cg[v]], std::cmp::Reverse(g.degree(v)), v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(g, h, &cg, &ch, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    g: &Graph,
    h: &Graph,
    cg: &[usize],
    ch: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&v) = order.get(depth) else {
        return true;
    };
    for w in 0..h.len() {
        if used[w] || ch[w] != cg[v] {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&u| g.has_edge(u, v) == h.has_edge(map[u], w));
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(g, h, cg, ch, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Joint colour refinement of both graphs so colours are comparable across them.
fn refine(g: &Graph, h: &Graph) -> (Vec<usize>, Vec<usize>) {
    let graphs = [g, h];
    let mut colors: [Vec<usize>; 2] = [
        (0..g.len()).map(|v| g.degree(v)).collect(),
        (0..h.len()).map(|v| h.degree(v)).collect(),
    ];
    let mut classes = distinct(&colors);
    loop {
        let mut table: BTreeMap<(usize, Vec<usize>), usize> = BTreeMap::new();
        let mut sigs: [Vec<(usize, Vec<usize>)>; 2] = [Vec::new(), Vec::new()];
        for (k, gr) in graphs.iter().enumerate() {
            for v in 0..gr.len() {
                let mut nb: Vec<usize> = gr.neighbors(v).map(|w| colors[k][w]).collect();
                nb.sort_unstable();
                let sig = (colors[k][v], nb);
                table.entry(sig.clone()).or_insert(0);
                sigs[k].push(sig);
            }
        }
        for (i, val) in table.values_mut().enumerate() {
            *val = i;
        }
        let next: [Vec<usize>; 2] = [
            sigs[0].iter().map(|s| table[s]).collect(),
            sigs[1].iter().map(|s| table[s]).collect(),
        ];
        let count = distinct(&next);
        colors = next;
        if count == classes {
            break;
        }
        classes = count;
    }
    let [a, b] = colors;
    (a, b)
}

fn distinct(colors: &[Vec<usize>; 2]) -> usize {
    let mut all: Vec<usize> = colors.iter().flatten().copied().collect();
    all.sort_unstable();
    all.dedup();
    all.len()
}

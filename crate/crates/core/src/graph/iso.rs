//! Small-instance isomorphism: color refinement for an invariant
//! certificate, backtracking for exact checks.

use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::hash::{Hash, Hasher};

use super::Graph;

/// Dense adjacency of a graph relabelled to `0..n`.
struct Dense {
    nbrs: Vec<Vec<usize>>,
    adj: Vec<Vec<bool>>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let pos = g.positions();
        let n = g.vertex_count();
        let mut adj = vec![vec![false; n]; n];
        let nbrs = g
            .vertices()
            .map(|v| g.neighbors(v).map(|w| pos[&w]).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        for (i, nb) in nbrs.iter().enumerate() {
            for &j in nb {
                adj[i][j] = true;
            }
        }
        Dense { nbrs, adj }
    }

    /// Stable color refinement starting from degrees. Colors are canonical
    /// ranks, so two isomorphic graphs get identical color multisets.
    fn refine(&self) -> Vec<usize> {
        let n = self.nbrs.len();
        let mut colors: Vec<usize> = self.nbrs.iter().map(Vec::len).collect();
        let mut classes = usize::MAX;
        loop {
            let sigs: Vec<(usize, Vec<usize>)> = (0..n)
                .map(|i| {
                    let mut nc: Vec<usize> = self.nbrs[i].iter().map(|&j| colors[j]).collect();
                    nc.sort_unstable();
                    (colors[i], nc)
                })
                .collect();
            let mut ranks: BTreeMap<&(usize, Vec<usize>), usize> = BTreeMap::new();
            for s in &sigs {
                ranks.insert(s, 0);
            }
            for (r, v) in ranks.values_mut().enumerate() {
                *v = r;
            }
            let next: Vec<usize> = sigs.iter().map(|s| ranks[s]).collect();
            let count = ranks.len();
            colors = next;
            if count == classes {
                return colors;
            }
            classes = count;
        }
    }
}

/// Digest of the refined color structure. Equal for isomorphic graphs;
/// collisions are possible and must be settled with [`is_isomorphic`].
pub fn certificate(g: &Graph) -> u64 {
    let d = Dense::new(g);
    let colors = d.refine();
    let mut hist: Vec<(usize, Vec<usize>)> = (0..colors.len())
        .map(|i| {
            let mut nc: Vec<usize> = d.nbrs[i].iter().map(|&j| colors[j]).collect();
            nc.sort_unstable();
            (colors[i], nc)
        })
        .collect();
    hist.sort_unstable();
    let mut h = DefaultHasher::new();
    g.vertex_count().hash(&mut h);
    g.edge_count().hash(&mut h);
    hist.hash(&mut h);
    h.finish()
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() {
        return false;
    }
    let (a, b) = (Dense::new(g), Dense::new(h));
    let (ca, cb) = (a.refine(), b.refine());
    let mut ha = ca.clone();
    let mut hb = cb.clone();
    ha.sort_unstable();
    hb.sort_unstable();
    if ha != hb {
        return false;
    }
    // Isomorphic graphs get identical ranks, so matching colors is a sound
    // pruning rule. Adjacency is still checked exactly.
    let n = ca.len();
    let mut order: Vec<usize> = (0..n).collect();
    let class_size = |c: usize| ca.iter().filter(|&&x| x == c).count();
    order.sort_by_key(|&i| (class_size(ca[i]), ca[i], i));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(&a, &b, &ca, &cb, &order, 0, &mut map, &mut used)
}

#[allow(clippy::too_many_arguments)]
fn extend(
    a: &Dense,
    b: &Dense,
    ca: &[usize],
    cb: &[usize],
    order: &[usize],
    depth: usize,
    map: &mut [usize],
    used: &mut [bool],
) -> bool {
    let Some(&u) = order.get(depth) else {
        return true;
    };
    for w in 0..cb.len() {
        if used[w] || cb[w] != ca[u] || a.nbrs[u].len() != b.nbrs[w].len() {
            continue;
        }
        let consistent = order[..depth]
            .iter()
            .all(|&x| a.adj[u][x] == b.adj[w][map[x]]);
        if !consistent {
            continue;
        }
        map[u] = w;
        used[w] = true;
        if extend(a, b, ca, cb, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
    }
    map[u] = usize::MAX;
    false
}

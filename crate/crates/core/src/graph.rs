//! Finite simple undirected graphs over integer labels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rand::seq::index;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::rng;

pub mod iso;

pub type Vertex = u32;
pub type Edge = (Vertex, Vertex);

/// A finite simple graph. Iteration over vertices and neighbors is always in
/// ascending label order, so every derived matrix is deterministic.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Edgeless graph on `0..n`.
    pub fn edgeless(n: usize) -> Self {
        Self::with_vertices(0..n as Vertex)
    }

    pub fn with_vertices(vertices: impl IntoIterator<Item = Vertex>) -> Self {
        Graph {
            adj: vertices.into_iter().map(|v| (v, BTreeSet::new())).collect(),
        }
    }

    /// Builds a graph from explicit vertices and edges. Edge endpoints are
    /// added as vertices if missing; loops are rejected.
    pub fn from_edges(
        vertices: impl IntoIterator<Item = Vertex>,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<Self> {
        let mut g = Self::with_vertices(vertices);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v {
            return Err(Error::param(format!("self-loop at vertex {u}")));
        }
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if had {
            self.adj.get_mut(&v).map(|n| n.remove(&u));
        }
        had
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.adj.keys().copied().collect()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    /// Neighbors of `v`; empty if `v` is not a vertex.
    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.get(&v).into_iter().flatten().copied()
    }

    pub fn neighbor_set(&self, v: Vertex) -> Option<&BTreeSet<Vertex>> {
        self.adj.get(&v)
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, BTreeSet::len)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    /// Edges `(u, v)` with `u < v`, lexicographically sorted.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, nb)| nb.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn max_label(&self) -> Option<Vertex> {
        self.adj.keys().next_back().copied()
    }

    fn fresh_label(&self) -> Vertex {
        self.max_label().map_or(0, |m| m + 1)
    }

    /// Position of each vertex in sorted label order.
    pub fn positions(&self) -> BTreeMap<Vertex, usize> {
        self.vertices().enumerate().map(|(i, v)| (v, i)).collect()
    }

    /// Adjacency matrix in sorted label order.
    pub fn adjacency_matrix(&self) -> IntMatrix {
        let pos = self.positions();
        let n = self.vertex_count();
        let mut m = IntMatrix::zeros(n, n);
        for (u, v) in self.edges() {
            m.set(pos[&u], pos[&v], 1);
            m.set(pos[&v], pos[&u], 1);
        }
        m
    }

    /// `1 + A`.
    pub fn fredholm_matrix(&self) -> IntMatrix {
        let mut m = self.adjacency_matrix();
        for i in 0..m.rows() {
            m.set(i, i, 1);
        }
        m
    }

    /// Kirchhoff Laplacian `L = D - A`.
    pub fn laplacian(&self) -> IntMatrix {
        let mut m = self.adjacency_matrix();
        for (i, v) in self.vertices().enumerate() {
            for j in 0..m.cols() {
                let a = m.get(i, j).clone();
                m.set(i, j, -a);
            }
            m.set(i, i, self.degree(v) as i64);
        }
        m
    }

    /// Renumbers vertices to `0..n` in label order.
    pub fn relabeled(&self) -> Graph {
        let pos = self.positions();
        Graph {
            adj: self
                .adj
                .iter()
                .map(|(v, nb)| {
                    (
                        pos[v] as Vertex,
                        nb.iter().map(|w| pos[w] as Vertex).collect(),
                    )
                })
                .collect(),
        }
    }

    /// Graph with `v` and its incident edges removed.
    pub fn without_vertex(&self, v: Vertex) -> Graph {
        let mut g = self.clone();
        if let Some(nb) = g.adj.remove(&v) {
            for w in nb {
                g.adj.get_mut(&w).map(|s| s.remove(&v));
            }
        }
        g
    }

    pub fn is_connected(&self) -> bool {
        let Some(start) = self.vertices().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in self.neighbors(u) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.vertex_count()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.vertex_count();
        self.adj.values().all(|nb| nb.len() + 1 == n)
    }

    /// Checks the structural invariants: symmetry, no loops, closed
    /// neighbor sets.
    pub fn check_invariants(&self) -> bool {
        self.adj.iter().all(|(&u, nb)| {
            nb.iter()
                .all(|&w| w != u && self.adj.get(&w).is_some_and(|b| b.contains(&u)))
        })
    }
}

/// Named graph families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `K_n`, `n >= 1`.
    Complete,
    /// `C_n`, `n >= 3`.
    Cycle,
    /// `C_n` joined with a hub labelled `n`, `n >= 3`.
    Wheel,
    /// Hub `0` with `n >= 1` leaves.
    Star,
    /// Path with `n` edges and `n + 1` vertices.
    PathEdges,
    /// Cross polytope of dimension `n >= 1` (`2n` vertices).
    CrossPolytope,
    Cube,
    Petersen,
    /// `K_{3,3}`.
    Utility,
    /// Two triangles sharing the edge `{1, 2}`.
    Kite,
    Octahedron,
    Icosahedron,
    Dodecahedron,
}

impl Family {
    pub fn takes_parameter(self) -> bool {
        matches!(
            self,
            Family::Complete
                | Family::Cycle
                | Family::Wheel
                | Family::Star
                | Family::PathEdges
                | Family::CrossPolytope
        )
    }
}

const ICOSAHEDRON: [Edge; 30] = [
    (0, 1), (0, 2), (0, 3), (0, 4), (0, 5),
    (1, 2), (2, 3), (3, 4), (4, 5), (1, 5),
    (6, 7), (7, 8), (8, 9), (9, 10), (6, 10),
    (1, 6), (2, 7), (3, 8), (4, 9), (5, 10),
    (1, 7), (2, 8), (3, 9), (4, 10), (5, 6),
    (11, 6), (11, 7), (11, 8), (11, 9), (11, 10),
];

const DODECAHEDRON: [Edge; 30] = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 7), (2, 9), (3, 11), (4, 13),
    (5, 6), (6, 7), (7, 8), (8, 9), (9, 10),
    (10, 11), (11, 12), (12, 13), (13, 14), (5, 14),
    (6, 15), (8, 16), (10, 17), (12, 18), (14, 19),
    (15, 16), (16, 17), (17, 18), (18, 19), (15, 19),
];

const PETERSEN: [Edge; 15] = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
];

fn need(family: Family, n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::param(format!("{family:?} needs n >= {min}, got {n}")));
    }
    Ok(())
}

fn from_table(n: usize, edges: &[Edge]) -> Graph {
    Graph::from_edges(0..n as Vertex, edges.iter().copied()).expect("static table")
}

/// Builds a named graph. `n` is ignored by the fixed families.
pub fn standard_graph(family: Family, n: usize) -> Result<Graph> {
    let v = |i: usize| i as Vertex;
    let g = match family {
        Family::Complete => {
            need(family, n, 1)?;
            let mut g = Graph::edgeless(n);
            for i in 0..n {
                for j in i + 1..n {
                    g.add_edge(v(i), v(j))?;
                }
            }
            g
        }
        Family::Cycle => {
            need(family, n, 3)?;
            Graph::from_edges(0..v(n), (0..n).map(|i| (v(i), v((i + 1) % n))))?
        }
        Family::Wheel => {
            need(family, n, 3)?;
            join(&standard_graph(Family::Cycle, n)?, &Graph::edgeless(1))
        }
        Family::Star => {
            need(family, n, 1)?;
            Graph::from_edges(0..=v(n), (1..=n).map(|i| (0, v(i))))?
        }
        Family::PathEdges => {
            need(family, n, 1)?;
            Graph::from_edges(0..=v(n), (0..n).map(|i| (v(i), v(i + 1))))?
        }
        Family::CrossPolytope => {
            need(family, n, 1)?;
            let mut g = Graph::edgeless(2 * n);
            for i in 0..2 * n {
                for j in i + 1..2 * n {
                    if j != i + 1 || i % 2 == 1 {
                        g.add_edge(v(i), v(j))?;
                    }
                }
            }
            g
        }
        Family::Cube => {
            let mut g = Graph::edgeless(8);
            for i in 0..8u32 {
                for b in 0..3 {
                    let j = i ^ (1 << b);
                    if i < j {
                        g.add_edge(i, j)?;
                    }
                }
            }
            g
        }
        Family::Petersen => from_table(10, &PETERSEN),
        Family::Utility => Graph::from_edges(
            0..6,
            (0..3).flat_map(|i| (3..6).map(move |j| (i, j))),
        )?,
        Family::Kite => Graph::from_edges(0..4, [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)])?,
        Family::Octahedron => standard_graph(Family::CrossPolytope, 3)?,
        Family::Icosahedron => from_table(12, &ICOSAHEDRON),
        Family::Dodecahedron => from_table(20, &DODECAHEDRON),
    };
    debug_assert!(g.check_invariants());
    Ok(g)
}

/// Erdős–Rényi sampling modes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ErdosRenyi {
    /// Each pair independently with probability `p`.
    Gnp(f64),
    /// `m` distinct pairs, uniformly.
    Gnm(usize),
}

/// Draws a random graph on `0..n`. Same `(n, mode, seed)` gives the same graph.
pub fn erdos_renyi(n: usize, mode: ErdosRenyi, seed: u64) -> Result<Graph> {
    erdos_renyi_with(n, mode, &mut rng::rng_from_seed(seed))
}

pub fn erdos_renyi_with<R: Rng + ?Sized>(n: usize, mode: ErdosRenyi, rng: &mut R) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    let mut g = Graph::edgeless(n);
    match mode {
        ErdosRenyi::Gnp(p) => {
            if !(0.0..=1.0).contains(&p) {
                return Err(Error::param(format!("edge probability {p} not in [0, 1]")));
            }
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(p) {
                        g.add_edge(i as Vertex, j as Vertex)?;
                    }
                }
            }
        }
        ErdosRenyi::Gnm(m) => {
            if m > pairs {
                return Err(Error::param(format!(
                    "edge count {m} exceeds {pairs} pairs on {n} vertices"
                )));
            }
            let mut chosen = index::sample(rng, pairs, m).into_vec();
            chosen.sort_unstable();
            for k in chosen {
                let (i, j) = pair_from_index(n, k);
                g.add_edge(i as Vertex, j as Vertex)?;
            }
        }
    }
    Ok(g)
}

/// Inverse of the row-major enumeration of pairs `i < j` in `0..n`.
fn pair_from_index(n: usize, mut k: usize) -> (usize, usize) {
    let mut i = 0;
    while k >= n - 1 - i {
        k -= n - 1 - i;
        i += 1;
    }
    (i, i + 1 + k)
}

/// Disjoint union of `g` and a relabelled copy of `h`, plus every cross edge.
/// Labels of `h` are shifted past the largest label of `g`.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let shift = g.fresh_label();
    let mut out = g.clone();
    for v in h.vertices() {
        out.add_vertex(v + shift);
    }
    for (u, v) in h.edges() {
        out.add_edge(u + shift, v + shift).expect("no loops in h");
    }
    for u in g.vertices() {
        for v in h.vertices() {
            out.add_edge(u, v + shift).expect("disjoint labels");
        }
    }
    out
}

/// Join with the two-point edgeless graph.
pub fn suspension(g: &Graph) -> Graph {
    join(g, &Graph::edgeless(2))
}

pub fn induced_subgraph(g: &Graph, s: &BTreeSet<Vertex>) -> Result<Graph> {
    let missing: Vec<_> = s.iter().filter(|v| !g.contains(**v)).collect();
    if !missing.is_empty() {
        return Err(Error::param(format!("vertices {missing:?} not in graph")));
    }
    Ok(induced_unchecked(g, s))
}

pub(crate) fn induced_unchecked(g: &Graph, s: &BTreeSet<Vertex>) -> Graph {
    Graph {
        adj: s
            .iter()
            .map(|&v| (v, g.adj[&v].intersection(s).copied().collect()))
            .collect(),
    }
}

/// Label-wise `(g ∪ h, g ∩ h)`.
pub fn union_intersection(g: &Graph, h: &Graph) -> (Graph, Graph) {
    let mut union = g.clone();
    for v in h.vertices() {
        union.add_vertex(v);
    }
    for (u, v) in h.edges() {
        union.add_edge(u, v).expect("simple");
    }
    let common: BTreeSet<_> = g.vertex_set().intersection(&h.vertex_set()).copied().collect();
    let mut inter = Graph::with_vertices(common);
    for (u, v) in g.edges().filter(|&(u, v)| h.has_edge(u, v)) {
        inter.add_edge(u, v).expect("simple");
    }
    (union, inter)
}

/// Replaces the edge `(u, v)` with a path `u - w - v` through a fresh vertex.
pub fn subdivide_edge(g: &Graph, (u, v): Edge) -> Result<Graph> {
    if !g.has_edge(u, v) {
        return Err(Error::param(format!("({u}, {v}) is not an edge")));
    }
    let w = g.fresh_label();
    let mut out = g.clone();
    out.remove_edge(u, v);
    out.add_edge(u, w)?;
    out.add_edge(w, v)?;
    Ok(out)
}

/// Parses the edge-list format: one `u v` pair per line, a lone `u` for an
/// isolated vertex, `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut g = Graph::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: lineno + 1, msg };
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<Vertex>().map_err(|e| err(format!("{t:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        match nums[..] {
            [u] => g.add_vertex(u),
            [u, v] => g.add_edge(u, v).map_err(|e| err(e.to_string()))?,
            _ => return Err(err(format!("expected 1 or 2 labels, got {}", nums.len()))),
        }
    }
    Ok(g)
}

pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(out, "{v}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

//! Connection graphs: cells as vertices, joined when they intersect.

use std::collections::{BTreeMap, BTreeSet};

use crate::complex::{whitney, Cell, Complex, CwComplex};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// Intersection graph of a list of atom sets; vertex `i` is set `i`.
fn intersection_graph<'a, I, S>(supports: I) -> Graph
where
    I: IntoIterator<Item = S>,
    S: IntoIterator<Item = &'a Vertex>,
{
    let mut incidence: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    let mut n = 0;
    for (i, support) in supports.into_iter().enumerate() {
        for &a in support {
            incidence.entry(a).or_default().push(i as Vertex);
        }
        n = i + 1;
    }
    let mut g = Graph::edgeless(n);
    for cells in incidence.values() {
        for (k, &x) in cells.iter().enumerate() {
            for &y in &cells[k + 1..] {
                g.add_edge(x, y).expect("distinct cells");
            }
        }
    }
    g
}

/// Connection graph of a simplicial complex, cells in canonical order.
pub fn connection_graph(x: &Complex) -> Graph {
    intersection_graph(x.cells().iter().map(Cell::vertices))
}

pub fn connection_graph_cw(x: &CwComplex) -> Graph {
    intersection_graph(x.cells().iter().map(|c| &c.support))
}

/// Connection graph of the Whitney complex of `g` plus one new vertex,
/// adjacent to every simplex that meets `s`. The new vertex is the last
/// label.
pub fn pyramid_extension(g: &Graph, s: &BTreeSet<Vertex>) -> Result<Graph> {
    if let Some(v) = s.iter().find(|&&v| !g.contains(v)) {
        return Err(Error::param(format!("vertex {v} not in graph")));
    }
    let w = whitney(g);
    let mut out = connection_graph(&w);
    let apex = w.len() as Vertex;
    out.add_vertex(apex);
    for (i, c) in w.cells().iter().enumerate() {
        if c.vertices().iter().any(|v| s.contains(v)) {
            out.add_edge(i as Vertex, apex).expect("apex is new");
        }
    }
    Ok(out)
}

/// Forests of `g` as a simplicial complex. Atom `k` is the `k`-th edge of
/// `g.edges()`; a forest with `m` edges is an `(m - 1)`-cell.
pub fn graphic_matroid(g: &Graph, max_forests: usize) -> Result<Complex> {
    let pos = g.positions();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (pos[&u], pos[&v])).collect();
    let mut forests = Vec::new();
    let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
    let mut chosen = Vec::new();
    grow_forests(&edges, 0, &mut parent, &mut chosen, &mut forests, max_forests)?;
    Complex::from_cells(forests)
}

fn find(parent: &[usize], mut x: usize) -> usize {
    while parent[x] != x {
        x = parent[x];
    }
    x
}

fn grow_forests(
    edges: &[(usize, usize)],
    from: usize,
    parent: &mut Vec<usize>,
    chosen: &mut Vec<Vertex>,
    out: &mut Vec<Cell>,
    limit: usize,
) -> Result<()> {
    for k in from..edges.len() {
        let (u, v) = edges[k];
        let (ru, rv) = (find(parent, u), find(parent, v));
        if ru == rv {
            continue;
        }
        // No path compression, so undoing the union is a single write.
        parent[ru] = rv;
        chosen.push(k as Vertex);
        out.push(Cell::new(chosen.iter().copied()).expect("nonempty"));
        if out.len() > limit {
            return Err(Error::Resource { what: "forests", limit, actual: out.len() });
        }
        grow_forests(edges, k + 1, parent, chosen, out, limit)?;
        chosen.pop();
        parent[ru] = ru;
    }
    Ok(())
}

/// The matroid complex and its connection graph.
pub fn matroid_connection(g: &Graph, max_forests: usize) -> Result<(Complex, Graph)> {
    let m = graphic_matroid(g, max_forests)?;
    let c = connection_graph(&m);
    Ok((m, c))
}

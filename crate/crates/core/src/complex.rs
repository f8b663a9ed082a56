//! Abstract simplicial complexes and their combinatorics.
//!
//! A [`Complex`] is a downward-closed family of nonempty vertex sets, stored
//! in canonical order: by dimension, then lexicographically. All matrices
//! derived from a complex index cells in that order.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, Vertex};
use crate::linalg::IntMatrix;

mod cw;
mod homotopy;

pub use cw::{random_cw, CwCell, CwComplex, Validation};
pub use homotopy::{is_contractible, is_sphere, Homotopy, DEFAULT_VERTEX_LIMIT};

/// Anything with cells of known dimension and a connection graph.
pub trait CellStructure {
    /// Dimension of each cell, in canonical cell order.
    fn dims(&self) -> Vec<usize>;

    /// Cells as vertices, adjacent when they intersect. Vertex `i` is cell `i`.
    fn connection_graph(&self) -> Graph;

    fn cell_count(&self) -> usize {
        self.dims().len()
    }
}

/// Number of cells per dimension; empty for the empty complex.
pub fn f_vector(x: &impl CellStructure) -> Vec<usize> {
    let mut f = Vec::new();
    for d in x.dims() {
        if f.len() <= d {
            f.resize(d + 1, 0);
        }
        f[d] += 1;
    }
    f
}

pub fn euler_characteristic(x: &impl CellStructure) -> i64 {
    x.dims().iter().map(|&d| if d % 2 == 0 { 1 } else { -1 }).sum()
}

/// Number of odd-dimensional cells.
pub fn fermi_number(x: &impl CellStructure) -> usize {
    x.dims().iter().filter(|&&d| d % 2 == 1).count()
}

/// Number of even-dimensional cells.
pub fn even_number(x: &impl CellStructure) -> usize {
    x.dims().iter().filter(|&&d| d % 2 == 0).count()
}

/// `(-1)^f`.
pub fn fermi_characteristic(x: &impl CellStructure) -> i64 {
    if fermi_number(x) % 2 == 0 {
        1
    } else {
        -1
    }
}

/// A simplex: a sorted, duplicate-free, nonempty vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cell(Vec<Vertex>);

impl Cell {
    pub fn new(vertices: impl IntoIterator<Item = Vertex>) -> Result<Cell> {
        let mut v: Vec<Vertex> = vertices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        if v.is_empty() {
            return Err(Error::param("cells must be nonempty"));
        }
        Ok(Cell(v))
    }

    pub fn vertex(v: Vertex) -> Cell {
        Cell(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn intersects(&self, other: &Cell) -> bool {
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => return true,
            }
        }
        false
    }

    pub fn is_subset_of(&self, other: &Cell) -> bool {
        self.0.len() <= other.0.len() && self.0.iter().all(|v| other.0.binary_search(v).is_ok())
    }

    /// Codimension-one faces; empty for a vertex.
    pub fn facets(&self) -> impl Iterator<Item = Cell> + '_ {
        let k = if self.0.len() > 1 { self.0.len() } else { 0 };
        (0..k).map(move |skip| {
            Cell(self.0.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect())
        })
    }

    /// All nonempty subsets, the cell itself included.
    pub fn closure(&self) -> impl Iterator<Item = Cell> + '_ {
        let n = self.0.len();
        assert!(n < 32, "cell too large to close");
        (1u32..(1 << n)).map(move |mask| {
            Cell((0..n).filter(|&i| mask & (1 << i) != 0).map(|i| self.0[i]).collect())
        })
    }
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite abstract simplicial complex in canonical cell order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Complex {
    cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    fn from_sorted(cells: Vec<Cell>) -> Self {
        let index = cells.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        Complex { cells, index }
    }

    /// Fails unless the given cells already form a downward-closed family.
    pub fn from_cells(cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let set: BTreeSet<Cell> = cells.into_iter().collect();
        for c in &set {
            if let Some(f) = c.facets().find(|f| !set.contains(f)) {
                return Err(Error::param(format!(
                    "not downward closed: {:?} is missing face {:?}",
                    c.vertices(),
                    f.vertices()
                )));
            }
        }
        Ok(Self::from_sorted(set.into_iter().collect()))
    }

    /// Smallest complex containing the given cells.
    pub fn closure(cells: impl IntoIterator<Item = Cell>) -> Self {
        let mut set = BTreeSet::new();
        for c in cells {
            if !set.contains(&c) {
                set.extend(c.closure());
            }
        }
        Self::from_sorted(set.into_iter().collect())
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn index_of(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn contains(&self, c: &Cell) -> bool {
        self.index.contains_key(c)
    }

    pub fn vertex_labels(&self) -> BTreeSet<Vertex> {
        self.cells.iter().filter(|c| c.dim() == 0).map(|c| c.0[0]).collect()
    }

    pub fn max_dim(&self) -> Option<usize> {
        self.cells.last().map(Cell::dim)
    }

    /// Cells of dimension at most `k`.
    pub fn truncate(&self, k: usize) -> Complex {
        Self::from_sorted(self.cells.iter().filter(|c| c.dim() <= k).cloned().collect())
    }

    pub fn is_downward_closed(&self) -> bool {
        self.cells.iter().all(|c| c.facets().all(|f| self.contains(&f)))
    }
}

impl CellStructure for Complex {
    fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(Cell::dim).collect()
    }

    fn connection_graph(&self) -> Graph {
        crate::connection::connection_graph(self)
    }

    fn cell_count(&self) -> usize {
        self.cells.len()
    }
}

/// Whitney complex: every clique of `g`.
pub fn whitney(g: &Graph) -> Complex {
    whitney_bounded(g, usize::MAX).expect("unbounded")
}

/// [`whitney`] that gives up once more than `max_cells` cliques are found.
pub fn whitney_bounded(g: &Graph, max_cells: usize) -> Result<Complex> {
    let mut cells = Vec::new();
    let mut stack: Vec<(Vec<Vertex>, BTreeSet<Vertex>)> = g
        .vertices()
        .map(|v| (vec![v], g.neighbors(v).filter(|&w| w > v).collect()))
        .collect();
    while let Some((clique, candidates)) = stack.pop() {
        for &w in candidates.iter().rev() {
            let next: BTreeSet<Vertex> = candidates
                .range(w + 1..)
                .filter(|&&x| g.has_edge(w, x))
                .copied()
                .collect();
            let mut c = clique.clone();
            c.push(w);
            stack.push((c, next));
        }
        cells.push(Cell(clique));
        if cells.len() > max_cells {
            return Err(Error::Resource { what: "Whitney complex cells", limit: max_cells, actual: cells.len() });
        }
    }
    cells.sort_unstable();
    Ok(Complex::from_sorted(cells))
}

/// The 0- or 1-skeleton complex of `g`.
pub fn skeleton(g: &Graph, k: usize) -> Result<Complex> {
    if k > 1 {
        return Err(Error::Unsupported(format!("skeleton of dimension {k} (use Complex::truncate)")));
    }
    let mut cells: Vec<Cell> = g.vertices().map(Cell::vertex).collect();
    if k == 1 {
        cells.extend(g.edges().map(|(u, v)| Cell(vec![u, v])));
    }
    Ok(Complex::from_sorted(cells))
}

/// Graph on the cells (labelled by position) with an edge for every strict
/// containment.
pub fn barycentric_refinement(x: &Complex) -> Graph {
    let mut g = Graph::edgeless(x.len());
    for (j, big) in x.cells().iter().enumerate() {
        if big.dim() == 0 {
            continue;
        }
        for sub in big.closure() {
            let i = x.index_of(&sub).expect("downward closed");
            if i != j {
                g.add_edge(i as Vertex, j as Vertex).expect("distinct");
            }
        }
    }
    g
}

/// Stirling numbers of the second kind, `S(n, k)` for `n, k <= max`.
fn stirling2(max: usize) -> Vec<Vec<BigInt>> {
    let mut s = vec![vec![BigInt::zero(); max + 1]; max + 1];
    s[0][0] = BigInt::one();
    for n in 1..=max {
        for k in 1..=n {
            s[n][k] = BigInt::from(k) * &s[n - 1][k] + &s[n - 1][k - 1];
        }
    }
    s
}

/// Maps the f-vector of a complex of dimension at most `dmax` to the
/// f-vector of its Barycentric refinement: entry `(r, c)` is
/// `S(c + 1, r + 1) (r + 1)!`, the number of `r`-chains of faces topped by a
/// fixed `c`-simplex.
pub fn barycentric_matrix(dmax: usize) -> IntMatrix {
    let s = stirling2(dmax + 1);
    let mut fact = BigInt::one();
    let mut m = IntMatrix::zeros(dmax + 1, dmax + 1);
    for r in 0..=dmax {
        fact *= r + 1;
        for c in r..=dmax {
            m.set(r, c, &s[c + 1][r + 1] * &fact);
        }
    }
    m
}

fn require_vertex(g: &Graph, x: Vertex) -> Result<&BTreeSet<Vertex>> {
    g.neighbor_set(x).ok_or_else(|| Error::param(format!("unknown vertex {x}")))
}

/// Induced subgraph on the neighbors of `x`.
pub fn unit_sphere(g: &Graph, x: Vertex) -> Result<Graph> {
    let nb = require_vertex(g, x)?;
    Ok(graph::induced_unchecked(g, nb))
}

/// Induced subgraph on `x` and its neighbors.
pub fn unit_ball(g: &Graph, x: Vertex) -> Result<Graph> {
    let mut s = require_vertex(g, x)?.clone();
    s.insert(x);
    Ok(graph::induced_unchecked(g, &s))
}

/// `1 - chi(S(x))` with the Whitney complex on the unit sphere.
pub fn poincare_hopf_index(g: &Graph, x: Vertex) -> Result<i64> {
    Ok(1 - euler_characteristic(&whitney(&unit_sphere(g, x)?)))
}

/// Cell-set union and intersection of two complexes on a shared label space.
pub fn union_intersection(x: &Complex, y: &Complex) -> (Complex, Complex) {
    let a: BTreeSet<&Cell> = x.cells().iter().collect();
    let b: BTreeSet<&Cell> = y.cells().iter().collect();
    let union = a.union(&b).map(|c| (*c).clone()).collect();
    let inter = a.intersection(&b).map(|c| (*c).clone()).collect();
    (Complex::from_sorted(union), Complex::from_sorted(inter))
}

/// Parses one cell per line (space-separated labels, `#` comments) and
/// closes the result downward. Also returns the cells that were implied but
/// not listed.
pub fn parse_complex(text: &str) -> Result<(Complex, Vec<Cell>)> {
    let mut listed = BTreeSet::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let labels = line
            .split_whitespace()
            .map(|t| {
                t.parse::<Vertex>()
                    .map_err(|e| Error::Parse { line: lineno + 1, msg: format!("{t:?}: {e}") })
            })
            .collect::<Result<Vec<_>>>()?;
        listed.insert(Cell::new(labels).expect("nonempty line"));
    }
    let complex = Complex::closure(listed.iter().cloned());
    let added = complex.cells().iter().filter(|c| !listed.contains(*c)).cloned().collect();
    Ok((complex, added))
}

pub fn to_complex_text(x: &Complex) -> String {
    let mut out = String::new();
    for c in x.cells() {
        let labels: Vec<String> = c.vertices().iter().map(ToString::to_string).collect();
        let _ = writeln!(out, "{}", labels.join(" "));
    }
    out
}

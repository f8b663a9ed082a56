//! Discrete CW complexes built by attaching cells along sub-complexes.
//!
//! Each cell carries a support: a set of atoms, the union of the supports of
//! its boundary. A 0-cell gets a fresh atom. Two cells intersect when their
//! supports do.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

use super::{homotopy::Homotopy, skeleton, CellStructure, Complex};

/// How much to check when attaching a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Validation {
    /// Accept any boundary.
    #[default]
    None,
    /// Boundary must be a sub-complex with Euler characteristic 0 or 2.
    Euler,
    /// Boundary must be a sub-complex whose refinement is a sphere.
    FullSphere,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CwCell {
    pub id: usize,
    pub dim: usize,
    pub support: BTreeSet<Vertex>,
}

#[derive(Clone, Debug, Default)]
pub struct CwComplex {
    cells: Vec<CwCell>,
    boundaries: Vec<BTreeSet<usize>>,
    next_atom: Vertex,
}

impl CwComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// Every simplex becomes a cell attached along all of its proper faces.
    /// Atoms are the vertex labels.
    pub fn from_complex(x: &Complex) -> Self {
        let mut cw = CwComplex::new();
        for c in x.cells() {
            let boundary: BTreeSet<usize> = c
                .closure()
                .filter(|f| f != c)
                .map(|f| x.index_of(&f).expect("downward closed"))
                .collect();
            let support: BTreeSet<Vertex> = c.vertices().iter().copied().collect();
            cw.cells.push(CwCell { id: cw.cells.len(), dim: c.dim(), support });
            cw.boundaries.push(boundary);
        }
        cw.next_atom = x.vertex_labels().last().map_or(0, |v| v + 1);
        cw
    }

    pub fn cells(&self) -> &[CwCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn boundary(&self, id: usize) -> &BTreeSet<usize> {
        &self.boundaries[id]
    }

    /// True when the set contains the boundary of each of its cells.
    pub fn is_subcomplex(&self, ids: &BTreeSet<usize>) -> bool {
        ids.iter().all(|&c| self.boundaries[c].is_subset(ids))
    }

    /// True when the closure of every cell outside `boundary` meets it in a
    /// contractible set or not at all, so that the new cell meets old ones
    /// the way simplices do. Without this the Fredholm/Fermi identity can
    /// fail: two arcs over the same pair of points have determinant 0, and
    /// so does a square glued to another square at two opposite corners.
    pub fn meets_cleanly(&self, boundary: &BTreeSet<usize>) -> Result<bool> {
        let mut oracle = Homotopy::default();
        for c in 0..self.len() {
            if boundary.contains(&c) {
                continue;
            }
            let meet: BTreeSet<usize> =
                self.closure(&BTreeSet::from([c])).intersection(boundary).copied().collect();
            if !meet.is_empty() && !oracle.is_contractible(&self.refinement_of(&meet))? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All cells reachable from `ids` by taking boundaries.
    pub fn closure(&self, ids: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = ids.clone();
        let mut stack: Vec<usize> = ids.iter().copied().collect();
        while let Some(c) = stack.pop() {
            for &b in &self.boundaries[c] {
                if out.insert(b) {
                    stack.push(b);
                }
            }
        }
        out
    }

    pub fn euler_of(&self, ids: &BTreeSet<usize>) -> i64 {
        ids.iter().map(|&c| if self.cells[c].dim % 2 == 0 { 1 } else { -1 }).sum()
    }

    /// Face-poset graph on `ids`: cells joined when one lies in the
    /// boundary closure of the other. Vertex labels are cell ids.
    pub fn refinement_of(&self, ids: &BTreeSet<usize>) -> Graph {
        let mut g = Graph::with_vertices(ids.iter().map(|&c| c as Vertex));
        for &c in ids {
            for b in self.closure(&self.boundaries[c]) {
                if ids.contains(&b) {
                    g.add_edge(b as Vertex, c as Vertex).expect("boundary excludes the cell");
                }
            }
        }
        g
    }

    pub fn barycentric_refinement(&self) -> Graph {
        self.refinement_of(&(0..self.len()).collect())
    }

    /// Attaches a new cell along `boundary` and returns its id. The new
    /// cell's dimension is one more than the largest boundary dimension.
    pub fn attach(&mut self, boundary: impl IntoIterator<Item = usize>, check: Validation) -> Result<usize> {
        let boundary: BTreeSet<usize> = boundary.into_iter().collect();
        if let Some(&bad) = boundary.iter().find(|&&c| c >= self.len()) {
            return Err(Error::Attachment(format!("unknown cell {bad}")));
        }
        if check != Validation::None && !self.is_subcomplex(&boundary) {
            return Err(Error::Attachment("boundary is not a sub-complex".into()));
        }
        let dim = boundary.iter().map(|&c| self.cells[c].dim + 1).max().unwrap_or(0);
        match check {
            Validation::None => {}
            Validation::Euler => {
                let chi = self.euler_of(&boundary);
                if !boundary.is_empty() && chi != 0 && chi != 2 {
                    return Err(Error::Attachment(format!("boundary has Euler characteristic {chi}")));
                }
            }
            Validation::FullSphere => {
                let g = self.refinement_of(&boundary);
                let sphere = Homotopy::default().is_sphere(&g, dim as i64 - 1)?;
                if !sphere {
                    return Err(Error::Attachment(format!("boundary is not a {}-sphere", dim as i64 - 1)));
                }
            }
        }
        let support = if boundary.is_empty() {
            let a = self.next_atom;
            self.next_atom += 1;
            BTreeSet::from([a])
        } else {
            boundary.iter().flat_map(|&c| self.cells[c].support.iter().copied()).collect()
        };
        let id = self.len();
        self.cells.push(CwCell { id, dim, support });
        self.boundaries.push(boundary);
        Ok(id)
    }
}

/// Starts from the 1-skeleton of `g` and makes `steps` random attempts to
/// attach cells: an arc between two points, a disk over a cycle of arcs, or
/// a ball over the whole complex. Attachments must meet existing cells
/// cleanly and pass sphere validation; attempts that fail either check or
/// the size guard are skipped.
pub fn random_cw<R: Rng + ?Sized>(g: &Graph, steps: usize, rng: &mut R) -> CwComplex {
    let mut x = CwComplex::from_complex(&skeleton(g, 1).expect("1-skeleton"));
    for _ in 0..steps {
        let points: Vec<usize> = x.cells.iter().filter(|c| c.dim == 0).map(|c| c.id).collect();
        if points.is_empty() {
            break;
        }
        let boundary = match rng.gen_range(0..4) {
            0 => {
                let a = points[rng.gen_range(0..points.len())];
                let b = points[rng.gen_range(0..points.len())];
                BTreeSet::from([a, b])
            }
            1 | 2 => match x.random_cycle(rng) {
                Some(c) => c,
                None => continue,
            },
            _ => (0..x.len()).collect(),
        };
        if boundary.len() > 1 && x.meets_cleanly(&boundary).unwrap_or(false) {
            let _ = x.attach(boundary, Validation::FullSphere);
        }
    }
    x
}

impl CwComplex {
    /// A random arc together with a shortest path of other arcs joining its
    /// endpoints, as a closed set of cells.
    fn random_cycle<R: Rng + ?Sized>(&self, rng: &mut R) -> Option<BTreeSet<usize>> {
        let arcs: Vec<(usize, usize, usize)> = self
            .cells
            .iter()
            .filter(|c| c.dim == 1 && self.boundaries[c.id].len() == 2)
            .map(|c| {
                let mut ends = self.boundaries[c.id].iter().copied();
                (c.id, ends.next().unwrap(), ends.next().unwrap())
            })
            .collect();
        if arcs.is_empty() {
            return None;
        }
        let (skip, a, b) = arcs[rng.gen_range(0..arcs.len())];
        let mut via = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        seen[a] = true;
        let mut queue = VecDeque::from([a]);
        while let Some(p) = queue.pop_front() {
            for &(e, u, v) in &arcs {
                if e == skip || (u != p && v != p) {
                    continue;
                }
                let q = if u == p { v } else { u };
                if !seen[q] {
                    seen[q] = true;
                    via[q] = Some((e, p));
                    queue.push_back(q);
                }
            }
        }
        if !seen[b] {
            return None;
        }
        let mut cells = BTreeSet::from([skip, a, b]);
        let mut at = b;
        while let Some((e, p)) = via[at] {
            cells.extend([e, p]);
            at = p;
        }
        Some(cells)
    }
}

impl CellStructure for CwComplex {
    fn dims(&self) -> Vec<usize> {
        self.cells.iter().map(|c| c.dim).collect()
    }

    fn connection_graph(&self) -> Graph {
        crate::connection::connection_graph_cw(self)
    }

    fn cell_count(&self) -> usize {
        self.cells.len()
    }
}

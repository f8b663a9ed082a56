//! Fredholm, Fermi, Euler and Wu functionals, and checks of the identities
//! that relate them.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::complex::{
    euler_characteristic, fermi_characteristic, unit_ball, unit_sphere, union_intersection, whitney,
    CellStructure, Complex, CwComplex, Validation,
};
use crate::connection::pyramid_extension;
use crate::error::{Error, Result};
use crate::graph::{self, Graph, Vertex};
use crate::linalg::{adjugate_inverse, det, det_rational_shift, shifted_matrix, IntMatrix, Rat};

/// `det(1 + A(g))`.
pub fn fredholm_det(g: &Graph) -> BigInt {
    det(&g.fredholm_matrix()).expect("square")
}

/// Fredholm characteristic: the Fredholm determinant of the connection graph.
pub fn psi(x: &impl CellStructure) -> BigInt {
    fredholm_det(&x.connection_graph())
}

fn sign_pow(k: i64) -> i64 {
    if k.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnimodularityCheck {
    pub psi: BigInt,
    pub phi: i64,
    pub cells: usize,
}

impl UnimodularityCheck {
    pub fn holds(&self) -> bool {
        self.psi == BigInt::from(self.phi)
    }
}

pub fn verify_unimodularity(x: &impl CellStructure) -> UnimodularityCheck {
    UnimodularityCheck { psi: psi(x), phi: fermi_characteristic(x), cells: x.cell_count() }
}

/// `extended = (1 - chi_h) * base` is the claim.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionCheck {
    pub extended: BigInt,
    pub base: BigInt,
    pub chi_h: i64,
}

impl ExtensionCheck {
    pub fn expected(&self) -> BigInt {
        BigInt::from(1 - self.chi_h) * &self.base
    }

    pub fn holds(&self) -> bool {
        self.extended == self.expected()
    }
}

/// Pyramid extension of the Whitney connection graph over the induced
/// subgraph on `s`.
pub fn verify_extension(g: &Graph, s: &BTreeSet<Vertex>) -> Result<ExtensionCheck> {
    let extended = fredholm_det(&pyramid_extension(g, s)?);
    let h = graph::induced_subgraph(g, s)?;
    Ok(ExtensionCheck { extended, base: psi(&whitney(g)), chi_h: euler_characteristic(&whitney(&h)) })
}

/// Attaches one new cell to `x` over the sub-complex `h`, without any sphere
/// requirement, and compares determinants.
pub fn verify_cw_extension(x: &CwComplex, h: &BTreeSet<usize>) -> Result<ExtensionCheck> {
    if !x.is_subcomplex(h) {
        return Err(Error::Attachment("boundary is not a sub-complex".into()));
    }
    let mut grown = x.clone();
    grown.attach(h.iter().copied(), Validation::None)?;
    Ok(ExtensionCheck { extended: psi(&grown), base: psi(x), chi_h: x.euler_of(h) })
}

/// `psi(X) psi(Y) = psi(X u Y) psi(X n Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValuationCheck {
    pub x: BigInt,
    pub y: BigInt,
    pub union: BigInt,
    pub intersection: BigInt,
}

impl ValuationCheck {
    pub fn holds(&self) -> bool {
        &self.x * &self.y == &self.union * &self.intersection
    }
}

pub fn verify_valuation(x: &Complex, y: &Complex) -> ValuationCheck {
    let (u, i) = union_intersection(x, y);
    ValuationCheck { x: psi(x), y: psi(y), union: psi(&u), intersection: psi(&i) }
}

/// `psi(B(v)) = (-1)^chi(S(v))` for one vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitBallCheck {
    pub vertex: Vertex,
    pub psi_ball: BigInt,
    pub chi_sphere: i64,
}

impl UnitBallCheck {
    pub fn holds(&self) -> bool {
        self.psi_ball == BigInt::from(sign_pow(self.chi_sphere))
    }
}

pub fn verify_unit_balls(g: &Graph) -> Vec<UnitBallCheck> {
    g.vertices()
        .map(|v| UnitBallCheck {
            vertex: v,
            psi_ball: psi(&whitney(&unit_ball(g, v).expect("own vertex"))),
            chi_sphere: euler_characteristic(&whitney(&unit_sphere(g, v).expect("own vertex"))),
        })
        .collect()
}

/// Cone and suspension identities for the Whitney complex of `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinCheck {
    pub psi: BigInt,
    pub chi: i64,
    pub psi_cone: BigInt,
    pub psi_suspension: BigInt,
}

impl JoinCheck {
    pub fn cone_holds(&self) -> bool {
        self.psi_cone == BigInt::from(sign_pow(self.chi))
    }

    pub fn suspension_holds(&self) -> bool {
        self.psi_suspension == self.psi
    }
}

pub fn verify_join(h: &Graph) -> JoinCheck {
    JoinCheck {
        psi: psi(&whitney(h)),
        chi: euler_characteristic(&whitney(h)),
        psi_cone: psi(&whitney(&graph::join(&Graph::edgeless(1), h))),
        psi_suspension: psi(&whitney(&graph::suspension(h))),
    }
}

/// Determinant before and after attaching a cell over a sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddedCellCheck {
    pub before: BigInt,
    pub after: BigInt,
    pub cell_dim: usize,
}

impl AddedCellCheck {
    /// Odd cells flip the sign, even cells keep it.
    pub fn holds(&self) -> bool {
        self.after == &self.before * sign_pow(self.cell_dim as i64)
    }
}

/// Attaches with full sphere validation; fails if the boundary is no sphere.
pub fn verify_added_cell(x: &CwComplex, boundary: &BTreeSet<usize>) -> Result<AddedCellCheck> {
    let mut grown = x.clone();
    let id = grown.attach(boundary.iter().copied(), Validation::FullSphere)?;
    Ok(AddedCellCheck { before: psi(x), after: psi(&grown), cell_dim: grown.cells()[id].dim })
}

/// `w^T (1 + A') w` with `w = (-1)^dim`: a sum over ordered pairs of
/// intersecting cells, diagonal included.
pub fn wu_characteristic(x: &impl CellStructure) -> i64 {
    let w: Vec<i64> = x.dims().iter().map(|&d| sign_pow(d as i64)).collect();
    let g = x.connection_graph();
    let off: i64 = g.edges().map(|(a, b)| w[a as usize] * w[b as usize]).sum();
    w.len() as i64 + 2 * off
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ZetaValue {
    Finite(Rat),
    Pole,
}

/// `1 / det(1 - zA)`.
pub fn zeta_eval(g: &Graph, z: &Rat) -> ZetaValue {
    let d = det_rational_shift(&g.adjacency_matrix(), z).expect("square");
    if d.is_zero() {
        ZetaValue::Pole
    } else {
        ZetaValue::Finite(d.recip())
    }
}

/// Entry `(i, j)` of `(1 - zA)^{-1}`, by Cramer's rule on `qI - pA`.
pub fn walk_gen(g: &Graph, i: Vertex, j: Vertex, z: &Rat) -> Result<Rat> {
    let pos = g.positions();
    let (&a, &b) = match (pos.get(&i), pos.get(&j)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::param(format!("vertex pair ({i}, {j}) not in graph"))),
    };
    let m = shifted_matrix(&g.adjacency_matrix(), z.numer(), z.denom());
    let d = det(&m)?;
    if d.is_zero() {
        return Err(Error::Pole);
    }
    let minor = det(&m.minor_matrix(b, a))?;
    let cof = if (a + b) % 2 == 0 { minor } else { -minor };
    Ok(Rat::new(cof * z.denom(), d))
}

/// Rooted spanning forests, as `det(1 + L)`.
pub fn forest_count(g: &Graph) -> BigInt {
    let l = g.laplacian();
    let n = l.rows();
    det(&IntMatrix::from_fn(n, n, |r, c| {
        let v = l.get(r, c).clone();
        if r == c {
            v + 1
        } else {
            v
        }
    }))
    .expect("square")
}

pub const BRUTE_FOREST_EDGE_LIMIT: usize = 8;

/// Rooted spanning forests by enumerating acyclic edge subsets.
pub fn brute_forest_count(g: &Graph) -> Result<BigInt> {
    let edges: Vec<_> = g.edges().collect();
    if edges.len() > BRUTE_FOREST_EDGE_LIMIT {
        return Err(Error::Resource {
            what: "edges for brute-force forest count",
            limit: BRUTE_FOREST_EDGE_LIMIT,
            actual: edges.len(),
        });
    }
    let pos = g.positions();
    let n = g.vertex_count();
    let mut total = BigInt::zero();
    'subsets: for mask in 0u32..(1 << edges.len()) {
        let mut parent: Vec<usize> = (0..n).collect();
        fn root(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (k, (u, v)) in edges.iter().enumerate() {
            if mask & (1 << k) != 0 {
                let (a, b) = (root(&mut parent, pos[u]), root(&mut parent, pos[v]));
                if a == b {
                    continue 'subsets;
                }
                parent[a] = b;
            }
        }
        let mut size = vec![0u64; n];
        for x in 0..n {
            size[root(&mut parent, x)] += 1;
        }
        total += size.iter().filter(|&&s| s > 0).product::<u64>();
    }
    Ok(total)
}

/// Permutations contributing to `det(1 + A)`, split by signature.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PathExpansion {
    pub term_count: u64,
    pub positive: u64,
    pub negative: u64,
    pub signed_sum: i64,
}

pub const PATH_EXPANSION_LIMIT: usize = 12;

/// Enumerates every permutation `pi` with `(1 + A)_{i, pi(i)} = 1` for all `i`,
/// the identity included.
pub fn permutation_expansion(g: &Graph) -> Result<PathExpansion> {
    let n = g.vertex_count();
    if n > PATH_EXPANSION_LIMIT {
        return Err(Error::Resource { what: "vertices for path expansion", limit: PATH_EXPANSION_LIMIT, actual: n });
    }
    let m = g.fredholm_matrix();
    let allowed: Vec<u32> = (0..n)
        .map(|i| (0..n).filter(|&j| !m.get(i, j).is_zero()).fold(0, |acc, j| acc | 1 << j))
        .collect();
    let mut out = PathExpansion::default();
    expand(&allowed, 0, 0, false, &mut out);
    out.signed_sum = out.positive as i64 - out.negative as i64;
    Ok(out)
}

fn expand(allowed: &[u32], row: usize, used: u32, odd: bool, out: &mut PathExpansion) {
    if row == allowed.len() {
        out.term_count += 1;
        if odd {
            out.negative += 1;
        } else {
            out.positive += 1;
        }
        return;
    }
    let mut free = allowed[row] & !used;
    while free != 0 {
        let j = free.trailing_zeros();
        free &= free - 1;
        // Earlier rows that took a larger column each form an inversion.
        let inversions = (used >> j).count_ones();
        expand(allowed, row + 1, used | 1 << j, odd ^ (inversions % 2 == 1), out);
    }
}

/// `(1 + A(X'))^{-1}`, integral whenever the determinant is a unit.
pub fn green_function(x: &impl CellStructure) -> Result<IntMatrix> {
    adjugate_inverse(&x.connection_graph().fredholm_matrix())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GreenSummary {
    pub values: BTreeSet<BigInt>,
    pub diagonal_min: Option<BigInt>,
    pub diagonal_max: Option<BigInt>,
    pub max_abs: BigInt,
}

pub fn green_summary(g: &IntMatrix) -> GreenSummary {
    let values: BTreeSet<BigInt> = g.entries().cloned().collect();
    let diag: Vec<&BigInt> = (0..g.rows().min(g.cols())).map(|i| g.get(i, i)).collect();
    GreenSummary {
        max_abs: values.iter().map(Signed::abs).max().unwrap_or_else(BigInt::zero),
        diagonal_min: diag.iter().min().map(|v| (*v).clone()),
        diagonal_max: diag.iter().max().map(|v| (*v).clone()),
        values,
    }
}

/// `det(A)` for the adjacency matrix; used for the path-graph facts.
pub fn adjacency_det(g: &Graph) -> BigInt {
    det(&g.adjacency_matrix()).expect("square")
}

/// `1` or `-1` by the parity of `k`, as an integer.
pub fn parity_sign(k: i64) -> BigInt {
    if sign_pow(k) == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

//! Exact-arithmetic toolkit for connection graphs of simplicial and CW
//! complexes.
//!
//! The central quantity is the Fredholm characteristic `psi(X) = det(1 + A(X'))`
//! of a complex `X`, where `X'` is its connection graph: cells are vertices and
//! two cells are adjacent when they intersect. It always agrees with the Fermi
//! characteristic `phi(X) = (-1)^f(X)`, where `f` counts odd-dimensional cells.
//! Everything on the verification path is computed with arbitrary-precision
//! integers.
//!
//! Module map:
//! - [`graph`]: finite simple graphs, standard families, random generators.
//! - [`complex`]: simplicial complexes, CW complexes, Barycentric refinement,
//!   unit spheres and the recursive contractibility and sphere tests.
//! - [`connection`]: connection graphs, pyramid extensions, graphic matroids.
//! - [`linalg`]: exact determinants, adjugate inverses, characteristic
//!   polynomials, permanents.
//! - [`characteristics`]: the Fredholm/Fermi/Euler/Wu functionals and their
//!   verification checks.
//! - [`prime`]: Moebius and Mertens functions, prime graphs.
//! - [`report`]: JSON-lines experiment records.

pub mod characteristics;
pub mod complex;
pub mod connection;
mod error;
pub mod graph;
pub mod linalg;
pub mod prime;
pub mod report;
pub mod rng;

pub use characteristics::{fredholm_det, psi, PathExpansion};
pub use complex::{CellStructure, Cell, Complex, CwComplex, Validation};
pub use error::{Error, Result};
pub use graph::{Family, Graph, Vertex};
pub use linalg::{IntMatrix, Rat};
pub use report::Report;

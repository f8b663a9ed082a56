//! Fixed inputs shared by the benchmarks.

use unimod_core::complex::whitney;
use unimod_core::connection::connection_graph;
use unimod_core::graph::{erdos_renyi, standard_graph, ErdosRenyi};
use unimod_core::{Complex, Family, Graph, IntMatrix};

pub const SEED: u64 = 0x5eed;

pub fn random_graph(n: usize, m: usize) -> Graph {
    erdos_renyi(n, ErdosRenyi::Gnm(m), SEED).expect("edge count fits")
}

/// Whitney complexes of increasing size, with a label for reports.
pub fn complexes() -> Vec<(String, Complex)> {
    let mut out: Vec<(String, Complex)> = [(10, 30), (12, 40), (14, 50)]
        .into_iter()
        .map(|(n, m)| (format!("gnm-{n}-{m}"), whitney(&random_graph(n, m))))
        .collect();
    out.push(("icosahedron".into(), whitney(&standard_graph(Family::Icosahedron, 0).expect("fixed"))));
    out
}

/// `1 + A(X')`.
pub fn fredholm_matrix(x: &Complex) -> IntMatrix {
    connection_graph(x).fredholm_matrix()
}

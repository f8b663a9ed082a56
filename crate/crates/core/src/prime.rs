//! Moebius function, Mertens function, and graphs on squarefree integers.

use num_bigint::BigInt;
use num_integer::Integer;

use crate::characteristics::fredholm_det;
use crate::complex::{euler_characteristic, whitney};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub const SIEVE_LIMIT: usize = 1_000_000;

/// `mu(k)` for `0 <= k <= n`; entry 0 is unused and set to 0.
pub fn moebius_table(n: usize) -> Result<Vec<i8>> {
    if n > SIEVE_LIMIT {
        return Err(Error::Resource { what: "sieve bound", limit: SIEVE_LIMIT, actual: n });
    }
    let mut mu = vec![1i8; n + 1];
    let mut composite = vec![false; n + 1];
    mu[0] = 0;
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        for m in (p..=n).step_by(p) {
            if m > p {
                composite[m] = true;
            }
            mu[m] = -mu[m];
        }
        if let Some(sq) = p.checked_mul(p) {
            for m in (sq..=n).step_by(sq) {
                mu[m] = 0;
            }
        }
    }
    Ok(mu)
}

pub fn moebius(k: usize) -> Result<i8> {
    if k == 0 {
        return Err(Error::param("moebius is defined for k >= 1"));
    }
    Ok(moebius_table(k)?[k])
}

/// `M(n) = mu(1) + ... + mu(n)`.
pub fn mertens(n: usize) -> Result<i64> {
    if n == 0 {
        return Err(Error::param("mertens is defined for n >= 1"));
    }
    Ok(moebius_table(n)?.iter().map(|&m| i64::from(m)).sum())
}

fn squarefree(n: usize, mu: &[i8]) -> Vec<usize> {
    (2..=n).filter(|&k| mu[k] != 0).collect()
}

fn build(n: usize, related: impl Fn(usize, usize) -> bool) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param(format!("prime graphs need n >= 2, got {n}")));
    }
    let mu = moebius_table(n)?;
    let vs = squarefree(n, &mu);
    let mut g = Graph::with_vertices(vs.iter().map(|&k| k as Vertex));
    for (i, &a) in vs.iter().enumerate() {
        for &b in &vs[i + 1..] {
            if related(a, b) {
                g.add_edge(a as Vertex, b as Vertex)?;
            }
        }
    }
    Ok(g)
}

/// Squarefree integers in `[2, n]`, adjacent when one divides the other.
pub fn prime_graph(n: usize) -> Result<Graph> {
    build(n, |a, b| b % a == 0)
}

/// Squarefree integers in `[2, n]`, adjacent when they share a factor.
pub fn prime_connection_graph(n: usize) -> Result<Graph> {
    build(n, |a, b| a.gcd(&b) > 1)
}

/// Both graphs for one bound with the signature `-mu(x)` of every vertex.
#[derive(Clone, Debug)]
pub struct PrimeGraphPair {
    pub n: usize,
    pub vertices: Vec<usize>,
    pub g: Graph,
    pub h: Graph,
    pub omega: Vec<i64>,
}

impl PrimeGraphPair {
    pub fn new(n: usize) -> Result<Self> {
        let g = prime_graph(n)?;
        let h = prime_connection_graph(n)?;
        let mu = moebius_table(n)?;
        let vertices = squarefree(n, &mu);
        let omega = vertices.iter().map(|&k| -i64::from(mu[k])).collect();
        Ok(PrimeGraphPair { n, vertices, g, h, omega })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeIdentities {
    pub n: usize,
    pub vertices: usize,
    pub edges_g: usize,
    pub edges_h: usize,
    pub chi: i64,
    pub mertens: i64,
    pub omega_sum: i64,
    pub omega_product: i64,
    pub det_h: BigInt,
}

impl PrimeIdentities {
    /// `chi = sum(-mu) = 1 - M(n)`.
    pub fn euler_holds(&self) -> bool {
        self.chi == self.omega_sum && self.chi == 1 - self.mertens
    }

    /// `det(1 + A(H_n)) = prod(-mu)`.
    pub fn fredholm_holds(&self) -> bool {
        self.det_h == BigInt::from(self.omega_product)
    }

    pub fn holds(&self) -> bool {
        self.euler_holds() && self.fredholm_holds()
    }
}

pub fn verify_prime_identities(n: usize) -> Result<PrimeIdentities> {
    let pair = PrimeGraphPair::new(n)?;
    Ok(PrimeIdentities {
        n,
        vertices: pair.vertices.len(),
        edges_g: pair.g.edge_count(),
        edges_h: pair.h.edge_count(),
        chi: euler_characteristic(&whitney(&pair.g)),
        mertens: mertens(n)?,
        omega_sum: pair.omega.iter().sum(),
        omega_product: pair.omega.iter().product(),
        det_h: fredholm_det(&pair.h),
    })
}

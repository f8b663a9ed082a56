//! Recursive contractibility and sphere recognition for small graphs.
//!
//! A graph is contractible if it is `K1`, or if some vertex has a
//! contractible unit sphere and removing it leaves a contractible graph. A
//! `d`-sphere has every unit sphere a `(d-1)`-sphere and becomes
//! contractible after removing some vertex; the empty graph is the
//! `(-1)`-sphere. Results are memoized up to graph isomorphism.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graph::{iso, Graph};

use super::{euler_characteristic, unit_sphere, whitney};

/// Largest vertex count accepted by the free functions.
pub const DEFAULT_VERTEX_LIMIT: usize = 14;

#[derive(Default)]
struct Memo {
    buckets: HashMap<(u64, i64), Vec<(Graph, bool)>>,
}

impl Memo {
    fn get(&self, key: (u64, i64), g: &Graph) -> Option<bool> {
        self.buckets
            .get(&key)?
            .iter()
            .find(|(h, _)| iso::is_isomorphic(g, h))
            .map(|&(_, v)| v)
    }

    fn put(&mut self, key: (u64, i64), g: &Graph, value: bool) {
        self.buckets.entry(key).or_default().push((g.relabeled(), value));
    }
}

/// Memoizing oracle; reuse one instance across many queries.
pub struct Homotopy {
    limit: usize,
    contractible: Memo,
    spheres: Memo,
}

impl Default for Homotopy {
    fn default() -> Self {
        Self::new(DEFAULT_VERTEX_LIMIT)
    }
}

impl Homotopy {
    pub fn new(limit: usize) -> Self {
        Homotopy { limit, contractible: Memo::default(), spheres: Memo::default() }
    }

    fn guard(&self, g: &Graph) -> Result<()> {
        if g.vertex_count() > self.limit {
            return Err(Error::Resource {
                what: "vertices for homotopy test",
                limit: self.limit,
                actual: g.vertex_count(),
            });
        }
        Ok(())
    }

    pub fn is_contractible(&mut self, g: &Graph) -> Result<bool> {
        match g.vertex_count() {
            0 => return Ok(false),
            1 => return Ok(true),
            _ => {}
        }
        self.guard(g)?;
        if !g.is_connected() || euler_characteristic(&whitney(g)) != 1 {
            return Ok(false);
        }
        let n = g.vertex_count();
        if g.vertices().any(|v| g.degree(v) + 1 == n) {
            return Ok(true);
        }
        let key = (iso::certificate(g), -2);
        if let Some(v) = self.contractible.get(key, g) {
            return Ok(v);
        }
        let mut found = false;
        for x in g.vertices() {
            if self.is_contractible(&unit_sphere(g, x)?)? && self.is_contractible(&g.without_vertex(x))? {
                found = true;
                break;
            }
        }
        self.contractible.put(key, g, found);
        Ok(found)
    }

    pub fn is_sphere(&mut self, g: &Graph, d: i64) -> Result<bool> {
        if d < -1 {
            return Ok(false);
        }
        if d == -1 || g.is_empty() {
            return Ok(d == -1 && g.is_empty());
        }
        self.guard(g)?;
        let want_chi = if d % 2 == 0 { 2 } else { 0 };
        if euler_characteristic(&whitney(g)) != want_chi {
            return Ok(false);
        }
        let key = (iso::certificate(g), d);
        if let Some(v) = self.spheres.get(key, g) {
            return Ok(v);
        }
        let mut ok = true;
        for x in g.vertices() {
            if !self.is_sphere(&unit_sphere(g, x)?, d - 1)? {
                ok = false;
                break;
            }
        }
        if ok {
            ok = false;
            for x in g.vertices() {
                if self.is_contractible(&g.without_vertex(x))? {
                    ok = true;
                    break;
                }
            }
        }
        self.spheres.put(key, g, ok);
        Ok(ok)
    }
}

/// One-shot contractibility test with the default size guard.
pub fn is_contractible(g: &Graph) -> Result<bool> {
    Homotopy::default().is_contractible(g)
}

/// One-shot `d`-sphere test with the default size guard.
pub fn is_sphere(g: &Graph, d: i64) -> Result<bool> {
    Homotopy::default().is_sphere(g, d)
}

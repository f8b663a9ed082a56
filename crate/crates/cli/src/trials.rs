//! One runner per subcommand. Trial `t` draws from `trial_seed(seed, t)`,
//! trials run on a worker pool, and reports come back in trial order.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;
use serde_json::{json, Value};
use unimod_core::characteristics::{
    adjacency_det, fredholm_det, green_summary, psi, verify_extension, verify_unimodularity, GreenSummary,
    UnimodularityCheck,
};
use unimod_core::complex::{
    barycentric_refinement, parse_complex, random_cw, skeleton, whitney_bounded, CellStructure, Complex, CwComplex,
};
use unimod_core::connection::graphic_matroid;
use unimod_core::graph::{erdos_renyi_with, parse_edge_list, standard_graph, subdivide_edge, ErdosRenyi, Family};
use unimod_core::linalg::adjugate_inverse;
use unimod_core::prime::verify_prime_identities;
use unimod_core::report::{int_value, rat_value};
use unimod_core::rng::{rng_from_seed, trial_seed};
use unimod_core::{Error, Graph, IntMatrix, Rat, Report, Vertex};

use crate::histogram::Histogram;
use crate::{
    read_input, CliError, CliResult, Common, Corpus, DistArgs, ExtendArgs, Format, GraphArgs, GreenArgs, Outcome,
    PrimeArgs, PsiProbArgs, Refine, Structure, VerifyArgs, Which,
};

pub const PRIME_LIMIT: usize = 10_000;
pub const DIST_VERTEX_LIMIT: usize = 40;
pub const DIST_SAMPLE_LIMIT: usize = 1_000_000;
pub const GREEN_VERTEX_LIMIT: usize = 120;

impl GraphArgs {
    /// `--edges` wins, then `--p`, then `p = 0.5`.
    pub fn mode(&self) -> ErdosRenyi {
        match (self.edges, self.p) {
            (Some(m), _) => ErdosRenyi::Gnm(m),
            (None, Some(p)) => ErdosRenyi::Gnp(p),
            (None, None) => ErdosRenyi::Gnp(0.5),
        }
    }

    fn describe(&self, r: Report, src: &Source) -> Report {
        if !matches!(src, Source::Random) {
            return r.param("input", "file");
        }
        let r = r.param("n", self.n);
        match self.mode() {
            ErdosRenyi::Gnm(m) => r.param("edges", m),
            ErdosRenyi::Gnp(p) => r.param("p", p),
        }
    }
}

enum Source {
    Random,
    Graph(Graph),
    Complex(Complex),
}

fn source(c: &Common) -> CliResult<Source> {
    if let Some(path) = &c.graph {
        return Ok(Source::Graph(parse_edge_list(&read_input(path)?)?));
    }
    if let Some(path) = &c.complex {
        return Ok(Source::Complex(parse_complex(&read_input(path)?)?.0));
    }
    Ok(Source::Random)
}

fn jsonl_only(c: &Common, command: &str) -> CliResult<()> {
    if c.format == Some(Format::Csv) {
        return Err(CliError::usage(format!("{command} only writes jsonl")));
    }
    Ok(())
}

fn par_map<T, F>(workers: usize, count: u64, f: F) -> CliResult<Vec<T>>
where
    T: Send,
    F: Fn(u64) -> CliResult<T> + Sync + Send,
{
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| CliError::usage(format!("worker pool: {e}")))?;
    pool.install(|| (0..count).into_par_iter().map(&f).collect())
}

fn guard(what: &'static str, limit: usize, actual: usize) -> CliResult<()> {
    if actual > limit {
        return Err(Error::Resource { what, limit, actual }.into());
    }
    Ok(())
}

pub fn graph_json(g: &Graph) -> Value {
    json!({
        "vertices": g.vertices().collect::<Vec<_>>(),
        "edges": g.edges().map(|(u, v)| [u, v]).collect::<Vec<_>>(),
    })
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array((0..m.rows()).map(|i| m.row(i).iter().map(|x| int_value(x.clone())).collect()).collect())
}

fn ints_json<'a>(xs: impl IntoIterator<Item = &'a BigInt>) -> Value {
    Value::Array(xs.into_iter().map(|x| int_value(x.clone())).collect())
}

enum Instance {
    Simplicial(Complex),
    Cw(CwComplex),
}

impl Instance {
    fn build(g: &Graph, structure: Structure, steps: usize, max_cells: usize, rng: &mut impl Rng) -> CliResult<Self> {
        let x = match structure {
            Structure::Whitney => Instance::Simplicial(whitney_bounded(g, max_cells)?),
            Structure::Skeleton1 => Instance::Simplicial(skeleton(g, 1)?),
            Structure::Matroid => Instance::Simplicial(graphic_matroid(g, max_cells)?),
            Structure::CwRandom => Instance::Cw(random_cw(g, steps, rng)),
        };
        guard("cells", max_cells, x.cell_count())?;
        Ok(x)
    }

    fn cell_count(&self) -> usize {
        match self {
            Instance::Simplicial(x) => x.len(),
            Instance::Cw(x) => x.len(),
        }
    }

    fn check(&self) -> UnimodularityCheck {
        match self {
            Instance::Simplicial(x) => verify_unimodularity(x),
            Instance::Cw(x) => verify_unimodularity(x),
        }
    }

    fn connection_graph(&self) -> Graph {
        match self {
            Instance::Simplicial(x) => x.connection_graph(),
            Instance::Cw(x) => x.connection_graph(),
        }
    }

    fn cells_json(&self) -> Value {
        match self {
            Instance::Simplicial(x) => x.cells().iter().map(|c| json!(c.vertices())).collect(),
            Instance::Cw(x) => x
                .cells()
                .iter()
                .map(|c| json!({"dim": c.dim, "support": c.support, "boundary": x.boundary(c.id)}))
                .collect(),
        }
    }

    /// Everything needed to replay a failing trial by hand.
    fn dump(&self, g: Option<&Graph>) -> Value {
        json!({
            "graph": g.map(graph_json),
            "cells": self.cells_json(),
            "fredholm_matrix": matrix_json(&self.connection_graph().fredholm_matrix()),
        })
    }
}

fn structure_name(s: Structure) -> &'static str {
    match s {
        Structure::Whitney => "whitney",
        Structure::Skeleton1 => "skeleton1",
        Structure::Matroid => "matroid",
        Structure::CwRandom => "cw-random",
    }
}

pub fn verify(a: &VerifyArgs) -> CliResult<Outcome> {
    jsonl_only(&a.common, "verify")?;
    let src = source(&a.common)?;
    let count = match src {
        Source::Random => a.count,
        Source::Graph(_) if a.structure == Structure::CwRandom => a.count,
        _ => 1,
    };
    let mode = a.graph.mode();
    let reports = par_map(a.common.workers, count, |t| {
        let seed = trial_seed(a.common.seed, t);
        let mut rng = rng_from_seed(seed);
        let (g, x) = match &src {
            Source::Random => {
                let g = erdos_renyi_with(a.graph.n, mode, &mut rng)?;
                let x = Instance::build(&g, a.structure, a.steps, a.common.max_cells, &mut rng)?;
                (Some(g), x)
            }
            Source::Graph(g) => {
                (Some(g.clone()), Instance::build(g, a.structure, a.steps, a.common.max_cells, &mut rng)?)
            }
            Source::Complex(x) => (None, Instance::Simplicial(x.clone())),
        };
        let check = x.check();
        let mut r = a
            .graph
            .describe(Report::new("verify", t, seed), &src)
            .param("structure", structure_name(a.structure))
            .param("master_seed", int_value(a.common.seed));
        r.observe_int("psi", check.psi.clone()).observe("phi", check.phi).observe("cells", check.cells);
        if let Some(g) = &g {
            r.observe("vertices", g.vertex_count()).observe("graph_edges", g.edge_count());
        }
        r.set_pass(check.holds());
        if !check.holds() {
            r.observe("instance", x.dump(g.as_ref()));
        }
        Ok(r)
    })?;
    Ok(Outcome::from_reports(&reports))
}

fn parse_subset(text: &str) -> CliResult<BTreeSet<Vertex>> {
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|e| CliError::usage(format!("subset label {t:?}: {e}"))))
        .collect()
}

pub fn extend(a: &ExtendArgs) -> CliResult<Outcome> {
    jsonl_only(&a.common, "extend")?;
    let src = source(&a.common)?;
    if let Source::Complex(_) = src {
        return Err(CliError::usage("extend takes --graph, not --complex"));
    }
    let fixed = a.subset.as_deref().map(parse_subset).transpose()?;
    let count = match (&src, &fixed) {
        (Source::Graph(_), Some(_)) => 1,
        _ => a.count,
    };
    let mode = a.graph.mode();
    let reports = par_map(a.common.workers, count, |t| {
        let seed = trial_seed(a.common.seed, t);
        let mut rng = rng_from_seed(seed);
        let g = match &src {
            Source::Graph(g) => g.clone(),
            _ => erdos_renyi_with(a.graph.n, mode, &mut rng)?,
        };
        let s: BTreeSet<Vertex> = match &fixed {
            Some(s) => s.clone(),
            // Every tenth trial uses the empty subset.
            None if t % 10 == 0 => BTreeSet::new(),
            None => g.vertices().filter(|_| rng.gen_bool(0.5)).collect(),
        };
        whitney_bounded(&g, a.common.max_cells)?;
        let check = verify_extension(&g, &s)?;
        let mut r = a
            .graph
            .describe(Report::new("extend", t, seed), &src)
            .param("master_seed", int_value(a.common.seed));
        r.observe_int("extended", check.extended.clone())
            .observe_int("base", check.base.clone())
            .observe("chi_h", check.chi_h)
            .observe_int("expected", check.expected())
            .observe("subset", s.iter().copied().collect::<Vec<_>>())
            .set_pass(check.holds());
        if !check.holds() {
            r.observe("instance", graph_json(&g));
        }
        Ok(r)
    })?;
    Ok(Outcome::from_reports(&reports))
}

pub fn prime(a: &PrimeArgs) -> CliResult<Outcome> {
    jsonl_only(&a.common, "prime")?;
    if a.common.graph.is_some() || a.common.complex.is_some() {
        return Err(CliError::usage("prime takes no input files"));
    }
    if !(2 <= a.from && a.from <= a.to && a.to <= PRIME_LIMIT) {
        return Err(CliError::usage(format!("need 2 <= from <= to <= {PRIME_LIMIT}, got {}..{}", a.from, a.to)));
    }
    let count = (a.to - a.from + 1) as u64;
    let reports = par_map(a.common.workers, count, |t| {
        let n = a.from + t as usize;
        let id = verify_prime_identities(n)?;
        let mut r = Report::new("prime", t, a.common.seed).param("n", n);
        r.observe("vertices", id.vertices)
            .observe("edges_g", id.edges_g)
            .observe("edges_h", id.edges_h)
            .observe("chi", id.chi)
            .observe("mertens", id.mertens)
            .observe("omega_sum", id.omega_sum)
            .observe("omega_product", id.omega_product)
            .observe_int("det_h", id.det_h.clone())
            .observe("euler_holds", id.euler_holds())
            .observe("fredholm_holds", id.fredholm_holds())
            .set_pass(id.holds());
        Ok(r)
    })?;
    Ok(Outcome::from_reports(&reports))
}

fn determinant(g: &Graph, which: Which) -> BigInt {
    match which {
        Which::Adjacency => adjacency_det(g),
        Which::Fredholm => fredholm_det(g),
    }
}

pub fn dist(a: &DistArgs) -> CliResult<Outcome> {
    guard("vertices", DIST_VERTEX_LIMIT, a.n)?;
    guard("samples", DIST_SAMPLE_LIMIT, a.samples)?;
    if a.bins == 0 {
        return Err(CliError::usage("need at least one bin"));
    }
    let src = source(&a.common)?;
    let dets: Vec<f64> = match &src {
        Source::Complex(_) => return Err(CliError::usage("dist takes --graph, not --complex")),
        Source::Graph(g) => vec![to_f64(&determinant(g, a.which))],
        Source::Random => par_map(a.common.workers, a.samples as u64, |t| {
            let mut rng = rng_from_seed(trial_seed(a.common.seed, t));
            let g = erdos_renyi_with(a.n, ErdosRenyi::Gnp(a.p), &mut rng)?;
            Ok(to_f64(&determinant(&g, a.which)))
        })?,
    };
    let h = Histogram::standardized(&dets, a.bins);
    let text = match a.common.format.unwrap_or(Format::Csv) {
        Format::Csv => h.to_csv(),
        Format::Jsonl => {
            let which = match a.which {
                Which::Adjacency => "adjacency",
                Which::Fredholm => "fredholm",
            };
            let mut r = Report::new("dist", 0, a.common.seed)
                .param("n", a.n)
                .param("p", a.p)
                .param("samples", dets.len())
                .param("which", which)
                .param("bins", a.bins);
            r.observe("mean", h.mean)
                .observe("sd", h.sd)
                .observe("dropped", h.dropped)
                .observe("occupied_bins", h.occupied_bins())
                .observe("histogram", h.occupied().map(|(c, n)| json!([c, n])).collect::<Vec<_>>());
            r.to_json_line() + "\n"
        }
    };
    Ok(Outcome { text, failed: false })
}

fn to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub fn psi_prob(a: &PsiProbArgs) -> CliResult<Outcome> {
    jsonl_only(&a.common, "psi-prob")?;
    let src = source(&a.common)?;
    let hits: Vec<bool> = match &src {
        Source::Complex(x) => vec![psi(x) == BigInt::from(1)],
        Source::Graph(g) => vec![psi(&whitney_bounded(g, a.common.max_cells)?) == BigInt::from(1)],
        Source::Random => par_map(a.common.workers, a.samples as u64, |t| {
            let mut rng = rng_from_seed(trial_seed(a.common.seed, t));
            let g = erdos_renyi_with(a.n, ErdosRenyi::Gnp(a.p), &mut rng)?;
            Ok(psi(&whitney_bounded(&g, a.common.max_cells)?) == BigInt::from(1))
        })?,
    };
    let samples = hits.len();
    let ones = hits.iter().filter(|&&h| h).count();
    let mut r = Report::new("psi-prob", 0, a.common.seed)
        .param("n", a.n)
        .param("p", a.p)
        .param("samples", samples);
    r.observe("psi_one", ones);
    if samples > 0 {
        let frac = Rat::new(BigInt::from(ones), BigInt::from(samples));
        r.observe("fraction", rat_value(&frac)).observe("fraction_f64", ones as f64 / samples as f64);
    }
    Ok(Outcome::from_reports(&[r]))
}

/// Small named graphs whose connection graphs and Barycentric refinements
/// stay under the Green guard.
pub fn named_corpus() -> Vec<(String, Graph)> {
    let mut out = Vec::new();
    let mut add = |name: String, f: Family, n: usize| out.push((name, standard_graph(f, n).expect("fixed family")));
    for n in 3..=6 {
        add(format!("star-{n}"), Family::Star, n);
    }
    add("cycle-4".into(), Family::Cycle, 4);
    add("cycle-5".into(), Family::Cycle, 5);
    add("path-3".into(), Family::PathEdges, 3);
    add("complete-3".into(), Family::Complete, 3);
    add("wheel-4".into(), Family::Wheel, 4);
    add("kite".into(), Family::Kite, 0);
    add("utility".into(), Family::Utility, 0);
    add("petersen".into(), Family::Petersen, 0);
    add("cube".into(), Family::Cube, 0);
    out
}

struct GreenData {
    cells: usize,
    summary: GreenSummary,
}

fn green_data(x: &Complex) -> CliResult<GreenData> {
    let c = x.connection_graph();
    guard("connection graph vertices", GREEN_VERTEX_LIMIT, c.vertex_count())?;
    let inv = adjugate_inverse(&c.fredholm_matrix())?;
    Ok(GreenData { cells: c.vertex_count(), summary: green_summary(&inv) })
}

fn observe_green(r: &mut Report, prefix: &str, d: &GreenData) {
    let key = |k: &str| format!("{prefix}{k}");
    let opt = |v: &Option<BigInt>| v.clone().map_or(Value::Null, int_value);
    r.observe(&key("cells"), d.cells)
        .observe(&key("values"), ints_json(&d.summary.values))
        .observe(&key("diagonal_min"), opt(&d.summary.diagonal_min))
        .observe(&key("diagonal_max"), opt(&d.summary.diagonal_max))
        .observe(&key("max_abs"), int_value(d.summary.max_abs.clone()));
}

fn refined(x: &Complex, g: Option<&Graph>, refine: Refine, max_cells: usize) -> CliResult<Option<Complex>> {
    let h = match refine {
        Refine::None => return Ok(None),
        Refine::Barycentric => barycentric_refinement(x),
        Refine::Edge => {
            let g = g.ok_or_else(|| Error::Unsupported("edge refinement of a cell-list complex".into()))?;
            match g.edges().next() {
                Some(e) => subdivide_edge(g, e)?,
                None => g.clone(),
            }
        }
    };
    Ok(Some(whitney_bounded(&h, max_cells)?))
}

/// A named input given either as a graph or directly as a complex.
type GreenInstance = (String, Option<Graph>, Option<Complex>);

pub fn green(a: &GreenArgs) -> CliResult<Outcome> {
    jsonl_only(&a.common, "green")?;
    let (corpus_name, instances): (&str, Vec<GreenInstance>) = match source(&a.common)? {
        Source::Graph(g) => ("file", vec![("graph".into(), Some(g), None)]),
        Source::Complex(x) => ("file", vec![("complex".into(), None, Some(x))]),
        Source::Random if a.corpus == Corpus::Named => {
            ("named", named_corpus().into_iter().map(|(n, g)| (n, Some(g), None)).collect())
        }
        Source::Random => {
            let graphs = par_map(a.common.workers, a.count, |t| {
                let mut rng = rng_from_seed(trial_seed(a.common.seed, t));
                Ok(erdos_renyi_with(a.n, ErdosRenyi::Gnp(a.p), &mut rng)?)
            })?;
            ("random", graphs.into_iter().enumerate().map(|(t, g)| (format!("random-{t}"), Some(g), None)).collect())
        }
    };
    let refine_name = match a.refine {
        Refine::Barycentric => "barycentric",
        Refine::Edge => "edge",
        Refine::None => "none",
    };
    let reports = par_map(a.common.workers, instances.len() as u64, |t| {
        let (name, g, x) = &instances[t as usize];
        let x = match (g, x) {
            (_, Some(x)) => x.clone(),
            (Some(g), None) => whitney_bounded(g, a.common.max_cells)?,
            (None, None) => unreachable!("instance without data"),
        };
        let seed = if corpus_name == "random" { trial_seed(a.common.seed, t) } else { a.common.seed };
        let mut r = Report::new("green", t, seed)
            .param("corpus", corpus_name)
            .param("refine", refine_name)
            .param("name", name.as_str());
        let base = green_data(&x)?;
        observe_green(&mut r, "", &base);
        if let Some(y) = refined(&x, g.as_ref(), a.refine, a.common.max_cells)? {
            let fine = green_data(&y)?;
            observe_green(&mut r, "refined_", &fine);
            r.observe("values_equal", base.summary.values == fine.summary.values);
        }
        if let Some(g) = g {
            r.observe("graph", graph_json(g));
        }
        Ok(r)
    })?;
    Ok(Outcome::from_reports(&reports))
}

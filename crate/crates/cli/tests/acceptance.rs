//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every check is exact integer equality; the only numeric tolerances are the
//! wall-clock budgets below.

use std::collections::BTreeSet;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use rand::Rng;
use unimod_cli::trials::named_corpus;
use unimod_core::characteristics::{
    adjacency_det, brute_forest_count, forest_count, fredholm_det, green_function, green_summary,
    permutation_expansion, verify_cw_extension, verify_extension, verify_unimodularity, verify_unit_balls,
};
use unimod_core::complex::{barycentric_matrix, barycentric_refinement, f_vector, skeleton, unit_ball, whitney};
use unimod_core::connection::{connection_graph, graphic_matroid};
use unimod_core::graph::{erdos_renyi_with, standard_graph, ErdosRenyi};
use unimod_core::linalg::{adjugate_inverse, det, permanent};
use unimod_core::prime::{prime_connection_graph, verify_prime_identities};
use unimod_core::rng::trial_rng;
use unimod_core::{Complex, CwComplex, Family, Graph, IntMatrix, Vertex};

const CRITERION_1_BUDGET: Duration = Duration::from_secs(120);
const CRITERION_2_BUDGET: Duration = Duration::from_secs(1);
const CRITERION_11_BUDGET: Duration = Duration::from_secs(300);
/// Matroid trials keep at most this many edges of each random graph.
const MATROID_EDGE_CAP: usize = 8;
const SEED: u64 = 20_161_003;

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Outcome { pass, detail: detail.into() }
    }
}

fn fam(f: Family, n: usize) -> Graph {
    standard_graph(f, n).unwrap()
}

fn big(v: i64) -> BigInt {
    BigInt::from(v)
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

fn random_gnm(rng: &mut impl Rng, n_range: std::ops::RangeInclusive<usize>, max_edges: usize) -> Graph {
    let n = rng.gen_range(n_range);
    let m = rng.gen_range(0..=max_edges.min(n * (n - 1) / 2));
    erdos_renyi_with(n, ErdosRenyi::Gnm(m), rng).unwrap()
}

fn first_edges(g: &Graph, k: usize) -> Graph {
    Graph::from_edges(g.vertices(), g.edges().take(k)).unwrap()
}

fn unimodularity() -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut cells = 0;
    for t in 0..500 {
        let mut rng = trial_rng(SEED, t);
        let g = random_gnm(&mut rng, 5..=10, 30);
        let m = first_edges(&g, MATROID_EDGE_CAP);
        let structures: [(&str, Complex); 3] = [
            ("whitney", whitney(&g)),
            ("skeleton1", skeleton(&g, 1).unwrap()),
            ("matroid", graphic_matroid(&m, 1 << MATROID_EDGE_CAP).unwrap()),
        ];
        for (name, x) in structures {
            let c = verify_unimodularity(&x);
            cells += c.cells;
            if !c.holds() {
                failures.push(format!("trial {t} {name}: psi {} phi {}", c.psi, c.phi));
            }
        }
    }
    let elapsed = start.elapsed();
    Outcome::new(
        failures.is_empty() && elapsed < CRITERION_1_BUDGET,
        format!("1500 complexes, {cells} cells, {} mismatches {failures:?}, {elapsed:.1?}", failures.len()),
    )
}

fn path_counts() -> Outcome {
    let cases: [(&str, Complex, u64, i64); 7] = [
        ("path_edges(2)", whitney(&fam(Family::PathEdges, 2)), 11, 1),
        ("path_edges(3)", whitney(&fam(Family::PathEdges, 3)), 39, -1),
        ("path_edges(4)", whitney(&fam(Family::PathEdges, 4)), 139, 1),
        ("star-3", whitney(&fam(Family::Star, 3)), 49, -1),
        ("C4", whitney(&fam(Family::Cycle, 4)), 193, 1),
        ("K3 1-skeleton", skeleton(&fam(Family::Complete, 3), 1).unwrap(), 61, -1),
        ("K3 Whitney", whitney(&fam(Family::Complete, 3)), 601, -1),
    ];
    let mut pass = true;
    let mut seen = Vec::new();
    for (name, x, terms, sum) in cases {
        let start = Instant::now();
        let e = permutation_expansion(&connection_graph(&x)).unwrap();
        let elapsed = start.elapsed();
        pass &= e.term_count == terms && e.signed_sum == sum && elapsed < CRITERION_2_BUDGET;
        seen.push(format!("{name}={}/{:+}", e.term_count, e.signed_sum));
    }
    Outcome::new(pass, seen.join(" "))
}

/// The claimed 6-periodic cycle pattern: 0 for `6 | n`, 3 for other even
/// `n`, -3 for odd `n`.
fn claimed_cycle_value(n: usize) -> i64 {
    if n % 6 == 0 {
        0
    } else if n % 2 == 0 {
        3
    } else {
        -3
    }
}

fn closed_forms() -> Outcome {
    let mismatched_cycles: Vec<String> = (3..=18)
        .filter_map(|n| {
            let got = fredholm_det(&fam(Family::Cycle, n));
            (got != big(claimed_cycle_value(n))).then(|| format!("C{n}={got} (claimed {})", claimed_cycle_value(n)))
        })
        .collect();
    let wheels_ok = (4..=12).all(|n| {
        let want = if n % 3 == 0 { 0 } else { (n as i64 - 3) * sign(n) };
        fredholm_det(&fam(Family::Wheel, n)) == big(want)
    });
    let complete_ok = (2..=8).all(|d| fredholm_det(&fam(Family::Complete, d)) == big(0));
    Outcome::new(
        mismatched_cycles.is_empty() && wheels_ok && complete_ok,
        format!(
            "cycles: {} of 16 differ from the claimed pattern {mismatched_cycles:?}; wheels ok={wheels_ok}; K_d ok={complete_ok}",
            mismatched_cycles.len()
        ),
    )
}

fn extension() -> Outcome {
    let mut failures = Vec::new();
    let mut empty = 0;
    for t in 0..200 {
        let mut rng = trial_rng(SEED ^ 4, t);
        let g = random_gnm(&mut rng, 1..=12, 24);
        let s: BTreeSet<Vertex> =
            if t % 10 == 0 { BTreeSet::new() } else { g.vertices().filter(|_| rng.gen_bool(0.5)).collect() };
        empty += usize::from(s.is_empty());
        let c = verify_extension(&g, &s).unwrap();
        if !c.holds() {
            failures.push(format!("trial {t}: {} vs {}", c.extended, c.expected()));
        }
    }
    let k3 = fam(Family::Complete, 3);
    let cone = verify_extension(&k3, &k3.vertex_set()).unwrap();
    let cone_ok = cone.holds() && cone.extended == big(0) && cone.chi_h == 1 && cone.base == big(-1);
    let circle = CwComplex::from_complex(&skeleton(&k3, 1).unwrap());
    let disk = verify_cw_extension(&circle, &(0..circle.len()).collect()).unwrap();
    let disk_ok = disk.holds() && disk.extended == big(-1) && disk.chi_h == 0 && disk.base == big(-1);
    Outcome::new(
        failures.is_empty() && cone_ok && disk_ok,
        format!(
            "200 trials ({empty} with empty subset), {} mismatches {failures:?}; (1-0)(-1)=-1 {disk_ok}; (1-1)(-1)=0 {cone_ok}",
            failures.len()
        ),
    )
}

const H30_FREDHOLM: [[i64; 18]; 18] = [
    [1, 0, 0, 1, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 0, 1, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1],
    [1, 1, 0, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0],
    [1, 0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0],
    [1, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 0, 1, 1, 0, 1, 0, 1],
    [0, 1, 1, 1, 0, 1, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0],
    [0, 1, 0, 1, 1, 0, 0, 0, 1, 1, 0, 0, 1, 0, 0, 0, 0, 1],
    [1, 0, 0, 1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0, 0, 0],
    [1, 0, 0, 1, 0, 1, 0, 1, 1, 0, 0, 0, 0, 1, 0, 1, 0, 1],
    [0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1, 0],
    [1, 1, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 1, 0, 1],
];
const H30_VERTICES: [Vertex; 18] = [2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23, 26, 29, 30];

fn primes() -> Outcome {
    let failing: Vec<usize> = (10..=200).filter(|&n| !verify_prime_identities(n).unwrap().holds()).collect();
    let h = prime_connection_graph(30).unwrap();
    let order_ok = h.vertices().eq(H30_VERTICES);
    let expected = IntMatrix::from_rows(&H30_FREDHOLM);
    let ours = h.fredholm_matrix();
    let mismatched = (0..18).flat_map(|i| (0..18).map(move |j| (i, j))).filter(|&(i, j)| ours.get(i, j) != expected.get(i, j)).count();
    let d = det(&ours).unwrap();
    let shape_ok = h.vertex_count() == 18 && h.edge_count() == 39 && d == big(-1);
    Outcome::new(
        failing.is_empty() && order_ok && mismatched == 0 && shape_ok,
        format!(
            "n=10..200 failing {failing:?}; H30 {} vertices {} edges det {d}; reference matrix differs in {mismatched} entries",
            h.vertex_count(),
            h.edge_count()
        ),
    )
}

/// Every labelled graph on `0..n` as an edge bitmask.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(Vertex, Vertex)> =
        (0..n as Vertex).flat_map(|i| (i + 1..n as Vertex).map(move |j| (i, j))).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        Graph::from_edges(0..n as Vertex, pairs.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e))
            .unwrap()
    })
}

fn forests() -> Outcome {
    let mut checked = 0;
    let mut failures = Vec::new();
    let named = [
        fam(Family::Complete, 2),
        fam(Family::Complete, 3),
        fam(Family::Cycle, 4),
        fam(Family::Star, 3),
        fam(Family::PathEdges, 4),
        fam(Family::Kite, 0),
        fam(Family::Wheel, 3),
        fam(Family::Cycle, 6),
    ];
    let corpus = (1..=5).flat_map(all_graphs).chain(named);
    for g in corpus.filter(|g| g.is_connected() && g.edge_count() <= 6) {
        checked += 1;
        let (fast, slow) = (forest_count(&g), brute_forest_count(&g).unwrap());
        if fast != slow {
            failures.push(format!("{:?}: {fast} vs {slow}", g.edges().collect::<Vec<_>>()));
        }
    }
    let k2 = forest_count(&fam(Family::Complete, 2));
    let k3 = forest_count(&fam(Family::Complete, 3));
    Outcome::new(
        failures.is_empty() && k2 == big(3) && k3 == big(16),
        format!("{checked} connected graphs, {} mismatches {failures:?}; K2 {k2}, K3 {k3}", failures.len()),
    )
}

fn permanents() -> Outcome {
    const DERANGEMENTS: [i64; 8] = [0, 1, 2, 9, 44, 265, 1854, 14833];
    let mut pass = true;
    let mut factorial = 1i64;
    for n in 1..=8usize {
        factorial *= n as i64;
        let k = fam(Family::Complete, n);
        pass &= permanent(&k.fredholm_matrix()).unwrap() == big(factorial);
        pass &= permanent(&k.adjacency_matrix()).unwrap() == big(DERANGEMENTS[n - 1]);
    }
    let named: Vec<BigInt> = [fam(Family::Kite, 0), fam(Family::Complete, 2), fam(Family::Complete, 3)]
        .iter()
        .map(|g| permanent(&g.fredholm_matrix()).unwrap())
        .collect();
    pass &= named == [big(14), big(2), big(6)];
    Outcome::new(pass, format!("K_1..K_8 factorials and derangements checked; kite/K2/K3 = {named:?}"))
}

const BARYCENTRIC_5X5: [[i64; 5]; 5] = [
    [1, 1, 1, 1, 1],
    [0, 2, 6, 14, 30],
    [0, 0, 6, 36, 150],
    [0, 0, 0, 24, 240],
    [0, 0, 0, 0, 120],
];

fn barycentric() -> Outcome {
    let matrix_ok = barycentric_matrix(4) == IntMatrix::from_rows(&BARYCENTRIC_5X5);
    let mut failures = Vec::new();
    let mut tested = 0;
    let mut t = 0;
    while tested < 100 {
        let mut rng = trial_rng(SEED ^ 8, t);
        t += 1;
        let x = whitney(&random_gnm(&mut rng, 1..=14, 40));
        if x.len() > 200 {
            continue;
        }
        tested += 1;
        let before = f_vector(&x);
        let after = f_vector(&whitney(&barycentric_refinement(&x)));
        let dmax = before.len().saturating_sub(1);
        let f = IntMatrix::from_fn(dmax + 1, 1, |i, _| BigInt::from(before.get(i).copied().unwrap_or(0)));
        let predicted = &barycentric_matrix(dmax) * &f;
        let ok = (0..=dmax).all(|i| *predicted.get(i, 0) == BigInt::from(after.get(i).copied().unwrap_or(0)))
            && after.len() <= dmax + 1;
        if !ok {
            failures.push(format!("f={before:?} -> {after:?}"));
        }
    }
    Outcome::new(
        matrix_ok && failures.is_empty(),
        format!("5x5 matches={matrix_ok}; {tested} complexes, {} mismatches {failures:?}", failures.len()),
    )
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_unimod")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).expect("utf-8"))
}

fn green() -> Outcome {
    let mut corpus: Vec<Graph> = named_corpus().into_iter().map(|(_, g)| g).collect();
    corpus.extend([fam(Family::Octahedron, 0), fam(Family::Icosahedron, 0), fam(Family::CrossPolytope, 3)]);
    for t in 0..20 {
        corpus.push(random_gnm(&mut trial_rng(SEED ^ 9, t), 1..=8, 14));
    }
    let inverted = corpus
        .iter()
        .filter(|g| {
            let m = connection_graph(&whitney(g)).fredholm_matrix();
            let d = det(&m).unwrap();
            (d == big(1) || d == big(-1)) && adjugate_inverse(&m).is_ok()
        })
        .count();
    let values = |g: &Graph| green_summary(&green_function(&whitney(g)).unwrap()).values;
    let stars_ok = (3..=6).all(|n| values(&fam(Family::Star, n)) == [-(n as i64 - 1), -1, 0, 1].map(big).into());
    let utility_ok = values(&fam(Family::Utility, 0)) == [-2, -1, 0, 1].map(big).into();
    let mut flags = 0;
    let mut cli_ok = true;
    for refine in ["barycentric", "edge"] {
        let (code, out) = run_cli(&["green", "--corpus", "named", "--refine", refine]);
        cli_ok &= code == 0;
        for line in out.lines() {
            let v: serde_json::Value = serde_json::from_str(line).unwrap();
            cli_ok &= v["pass"].is_null();
            flags += usize::from(v["observed"]["values_equal"].is_boolean());
        }
    }
    Outcome::new(
        inverted == corpus.len() && stars_ok && utility_ok && cli_ok && flags > 0,
        format!(
            "{inverted}/{} inverted; star sets ok={stars_ok}; utility ok={utility_ok}; green recorded {flags} equality flags",
            corpus.len()
        ),
    )
}

fn unit_balls() -> Outcome {
    let mut graphs = vec![fam(Family::Icosahedron, 0), fam(Family::Octahedron, 0)];
    for t in 0..20 {
        let mut rng = trial_rng(SEED ^ 10, t);
        graphs.push(erdos_renyi_with(rng.gen_range(3..=9), ErdosRenyi::Gnp(0.5), &mut rng).unwrap());
    }
    let vertices: usize = graphs.iter().map(Graph::vertex_count).sum();
    let corollary_ok = graphs.iter().all(|g| verify_unit_balls(g).iter().all(|c| c.holds()));
    let mut balls = 0;
    let mut nonzero = Vec::new();
    for g in graphs.iter().filter(|g| g.is_connected() && !g.is_complete()) {
        let c = connection_graph(&whitney(g));
        for x in c.vertices() {
            balls += 1;
            let d = fredholm_det(&unit_ball(&c, x).unwrap());
            if d != big(0) {
                nonzero.push(format!("{d}"));
            }
        }
    }
    Outcome::new(
        corollary_ok && nonzero.is_empty(),
        format!(
            "psi(B(x)) = (-1)^chi(S(x)) on {vertices} vertices: {corollary_ok}; {balls} connection-graph balls, {} nonzero",
            nonzero.len()
        ),
    )
}

fn desk_scale() -> Outcome {
    let start = Instant::now();
    let (code, out) = run_cli(&["dist", "--n", "16", "--p", "0.5", "--samples", "10000", "--seed", "11"]);
    let elapsed = start.elapsed();
    let bins = out.lines().skip(1).count();
    let header_ok = out.starts_with("bin_center,count\n");
    // The adjacency spectrum of a random graph is not degenerate.
    let sample = adjacency_det(&erdos_renyi_with(16, ErdosRenyi::Gnp(0.5), &mut trial_rng(11, 0)).unwrap());
    Outcome::new(
        code == 0 && header_ok && bins >= 10 && elapsed < CRITERION_11_BUDGET,
        format!("dist n=16, 10^4 samples: {bins} occupied bins in {elapsed:.1?} (first det {sample}); 70-vertex / 10^7-sample run and n->inf limits not attempted"),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("unimodularity theorem on random complexes", unimodularity),
        ("path-count fixtures", path_counts),
        ("closed-form Fredholm determinants", closed_forms),
        ("extension proposition", extension),
        ("prime identities and H30", primes),
        ("forest theorem", forests),
        ("permanent fixtures", permanents),
        ("Barycentric matrix", barycentric),
        ("Green functions", green),
        ("unit-ball corollaries", unit_balls),
        ("desk-scale distribution", desk_scale),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let o = check();
        failed += usize::from(!o.pass);
        println!("{} {:>2} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

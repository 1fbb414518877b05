//! End-to-end acceptance checks. Runs as a plain binary so the per-check
//! verdict lines are always printed; exits non-zero if any check fails.

mod common;

use std::time::{Duration, Instant};

use common::{noisy_cliques, oracle_suite, random_graph, OracleCase};
use minmaxcc::cluster::{cluster_phi, high_degree_clustering, all_pairs_high_degree_clustering, HighDegreeMode};
use minmaxcc::oracle::{brute_force_opt, check_structural, check_structural_with, Check, Perturbation};
use minmaxcc::similarity::{sketch_dimension, SketchSet};
use minmaxcc::stream::{stream_init, StreamConfig, StreamOutcome};
use minmaxcc::{objective, planted_instance, solve, Clustering, Eta, PositiveGraph, SimilarityOracle, SolveMode};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

struct Verdicts {
    lines: Vec<(bool, String)>,
}

impl Verdicts {
    fn record(&mut self, index: usize, name: &str, pass: bool, detail: String, took: Duration) {
        let line = format!("[{index:>2}] {name:<34} {} {detail} ({:.1}s)", if pass { "PASS" } else { "FAIL" }, took.as_secs_f64());
        println!("{line}");
        self.lines.push((pass, line));
    }
}

/// Exact re-evaluations of returned clusterings against their own bound.
#[derive(Default)]
struct Certificates {
    checked: usize,
    violations: Vec<String>,
}

impl Certificates {
    fn check_solver(&mut self, g: &PositiveGraph, c: &Clustering, eta: Eta, phi: u64, what: &str) {
        self.checked += 1;
        let obj = objective(g, c).unwrap().obj;
        if !eta.within_three_plus(obj, phi) {
            self.violations.push(format!("{what}: obj {obj} > (3 + {eta})·{phi}"));
        }
    }
}

fn main() {
    let mut v = Verdicts { lines: Vec::new() };
    let mut certs = Certificates::default();
    let mut stream_bound = (0usize, 0usize, 0usize);

    let t = Instant::now();
    let suite = oracle_suite(510, 4..=9, 1);
    let (pass, detail) = approximation_exact(&suite, &mut certs);
    v.record(1, "approximation factor, exact", pass, detail, t.elapsed());

    let t = Instant::now();
    let (pass, detail) = approximation_sketch(&suite, &mut certs);
    v.record(2, "approximation factor, sketch", pass, detail, t.elapsed());

    let t = Instant::now();
    let structural_suite = structural_suite(500, 2);
    let (pass, detail) = completeness(&suite, &structural_suite);
    let t4 = (pass, detail, t.elapsed());

    let t = Instant::now();
    let t5 = mode_equivalence(200, 3);
    let t5 = (t5.0, t5.1, t.elapsed());

    let t = Instant::now();
    let t6 = structural_checks(&structural_suite);
    let t6 = (t6.0, t6.1, t.elapsed());

    let t = Instant::now();
    let t7 = jl_accuracy(500, 20);
    let t7 = (t7.0, t7.1, t.elapsed());

    let t = Instant::now();
    let t8 = streaming_correctness(100, &mut stream_bound);
    let t8 = (t8.0, t8.1, t.elapsed());

    let t = Instant::now();
    let pass = certs.violations.is_empty() && stream_bound.1 == 0;
    let mut detail = format!(
        "{} solver clusterings within (3+η)·φ_final; {} streaming clusterings within (3+η)(1+η/2)·φ, {} of them above (3+η)·φ",
        certs.checked, stream_bound.0, stream_bound.2
    );
    for s in certs.violations.iter().take(5) {
        detail.push_str(&format!("; {s}"));
    }
    if stream_bound.1 > 0 {
        detail.push_str(&format!("; {} streaming clusterings above (3+η)(1+η/2)·φ", stream_bound.1));
    }
    v.record(3, "certificate soundness", pass, detail, t.elapsed());
    v.record(4, "completeness at OPT", t4.0, t4.1, t4.2);
    v.record(5, "token / all-pairs equivalence", t5.0, t5.1, t5.2);
    v.record(6, "structural checks + mutations", t6.0, t6.1, t6.2);
    v.record(7, "JL distance accuracy", t7.0, t7.1, t7.2);
    v.record(8, "streaming correctness", t8.0, t8.1, t8.2);

    let t = Instant::now();
    let (pass, detail) = streaming_space();
    v.record(9, "streaming space", pass, detail, t.elapsed());

    let t = Instant::now();
    let (pass, detail) = near_linear_scaling();
    v.record(10, "near-linear scaling", pass, detail, t.elapsed());

    let failed = v.lines.iter().filter(|(p, _)| !p).count();
    println!("acceptance: {} passed, {failed} failed", v.lines.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

fn approximation_exact(suite: &[OracleCase], certs: &mut Certificates) -> (bool, String) {
    let mut bad = Vec::new();
    for (i, case) in suite.iter().enumerate() {
        let s = solve(&case.graph, 0.0, SolveMode::Exact, 0).unwrap();
        certs.check_solver(&case.graph, &s.clustering, s.eta, s.phi_final, "exact solve");
        if s.report.obj > 3 * case.opt || s.report.obj < case.opt {
            bad.push(format!("#{i}: obj {} vs OPT {}", s.report.obj, case.opt));
        }
    }
    let hist = opt_histogram(suite);
    (bad.is_empty(), format!("{} instances (OPT histogram {hist}), {} violations {:?}", suite.len(), bad.len(), first(&bad)))
}

fn approximation_sketch(suite: &[OracleCase], certs: &mut Certificates) -> (bool, String) {
    let eps = 0.5;
    let (mut runs, mut within) = (0usize, 0usize);
    for (i, case) in suite.iter().enumerate() {
        for seed in 0..10u64 {
            let s = solve(&case.graph, eps, SolveMode::Sketch, seed * 7919 + i as u64).unwrap();
            certs.check_solver(&case.graph, &s.clustering, s.eta, s.phi_final, "sketch solve");
            runs += 1;
            if 2 * s.report.obj <= 7 * case.opt {
                within += 1;
            }
        }
    }
    let rate = within as f64 / runs as f64;
    (rate >= 0.99, format!("{within}/{runs} runs with obj ≤ 3.5·OPT ({:.2}%)", 100.0 * rate))
}

fn completeness(suite: &[OracleCase], structural: &[(PositiveGraph, u64)]) -> (bool, String) {
    let mut bad = Vec::new();
    let graphs = suite.iter().map(|c| (&c.graph, c.opt)).chain(structural.iter().map(|(g, o)| (g, *o)));
    let mut count = 0;
    for (g, opt) in graphs {
        for mode in [HighDegreeMode::Token, HighDegreeMode::AllPairs] {
            count += 1;
            let o = SimilarityOracle::exact(g, Eta::ZERO);
            let out = cluster_phi(g, opt, Eta::ZERO, &o, mode);
            if !out.succeeded() {
                bad.push(format!("n = {}, OPT = {opt}, {mode:?}", g.n()));
            }
        }
    }
    (bad.is_empty(), format!("{count} runs at φ = OPT, {} failures {:?}", bad.len(), first(&bad)))
}

fn mode_equivalence(count: usize, seed: u64) -> (bool, String) {
    let mut bad = Vec::new();
    let mut high_vertices = 0usize;
    let mut with_high = 0usize;
    for i in 0..count {
        let phi = 1 + (i % 3) as u64;
        let clusters = 2 + i % 3;
        let (g, truth) = noisy_cliques(phi, clusters, seed * 10_000 + i as u64);
        assert!(objective(&g, &truth).unwrap().obj <= phi);
        let split = g.degree_split(phi, Eta::ZERO);
        high_vertices += split.v_high.len();
        with_high += usize::from(!split.v_high.is_empty());
        let o1 = SimilarityOracle::exact(&g, Eta::ZERO);
        let token = high_degree_clustering(&g, phi, Eta::ZERO, &o1);
        let o2 = SimilarityOracle::exact(&g, Eta::ZERO);
        let pairs = all_pairs_high_degree_clustering(&g, phi, Eta::ZERO, &o2);
        if token != pairs {
            bad.push(format!("#{i} (φ = {phi})"));
        }
        if o1.query_count() > 2 * g.m() as u64 {
            bad.push(format!("#{i}: {} token queries > 2m", o1.query_count()));
        }
    }
    let pass = bad.is_empty() && with_high == count;
    (
        pass,
        format!(
            "{count} planted instances ({with_high} with high-degree vertices, {high_vertices} in total), {} mismatches {:?}",
            bad.len(),
            first(&bad)
        ),
    )
}

/// Random graphs plus small noisy two-clique graphs, `n ∈ [4, 8]`, with OPT.
fn structural_suite(count: usize, seed: u64) -> Vec<(PositiveGraph, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let g = if i % 5 == 4 {
                two_small_cliques(&mut rng)
            } else {
                let n = 4 + i % 5;
                random_graph(n, common::DENSITIES[(i / 5) % 3], seed * 100_000 + i as u64)
            };
            let opt = brute_force_opt(&g).unwrap().opt;
            (g, opt)
        })
        .collect()
}

fn two_small_cliques(rng: &mut ChaCha8Rng) -> PositiveGraph {
    use rand::Rng;
    let a = rng.gen_range(2..=4);
    let b = rng.gen_range(2..=4);
    let n = a + b;
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    pairs.shuffle(rng);
    let flips: Vec<(usize, usize)> = pairs[..rng.gen_range(0..=2)].to_vec();
    let same = |u: usize, v: usize| (u < a) == (v < a);
    let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| same(u, v) != flips.contains(&(u, v)));
    PositiveGraph::from_edges(n, edges).unwrap()
}

/// Hand-built instances where the large-intersection premise and the
/// inclusion gap occur; neither shows up below nine vertices.
fn mutation_probes() -> Vec<(PositiveGraph, u64)> {
    // Two 6-blocks at φ = 2; u = 0 and v = 6 are high, w = 1 is low with t = 1.
    let mut e: Vec<(usize, usize)> = Vec::new();
    for block in [0..6, 6..12] {
        for a in block.clone() {
            for b in a + 1..block.end {
                if (a, b) != (1, 5) {
                    e.push((a, b));
                }
            }
        }
    }
    e.extend([(0, 6), (0, 7), (1, 6)]);
    let large = PositiveGraph::from_edges(12, e).unwrap();
    // K9 minus (0,8), (1,8) at φ = 2: vertex 8 is low and not adjacent to the pivot.
    let k9 = (0..9).flat_map(|a| (a + 1..9).map(move |b| (a, b))).filter(|&(a, b)| b != 8 || a > 1);
    let inclusion = PositiveGraph::from_edges(9, k9).unwrap();
    vec![(large, 2), (inclusion, 2)]
}

fn structural_checks(suite: &[(PositiveGraph, u64)]) -> (bool, String) {
    let mut violations = Vec::new();
    let mut vacuous = 0;
    for (g, opt) in suite {
        let r = check_structural(g, *opt).unwrap();
        vacuous += usize::from(r.vacuous);
        violations.extend(r.violations.iter().map(|x| x.to_string()));
    }
    let mutations: [(&str, Perturbation); 6] = [
        ("same-cluster 2φ−1", Perturbation { same_cluster: -1, ..Default::default() }),
        ("cross-cluster 2φ−1", Perturbation { cross_cluster: -1, ..Default::default() }),
        ("no-stealing > 2φ+4", Perturbation { no_stealing: 4, ..Default::default() }),
        ("large-intersection 2(φ−t)−1", Perturbation { large_intersection: -1, ..Default::default() }),
        ("closeness φ−1", Perturbation { closeness: -1, ..Default::default() }),
        ("inclusion of whole C*_i", Perturbation { inclusion_whole_cluster: true, ..Default::default() }),
    ];
    let expected = [Check::SameCluster, Check::CrossCluster, Check::NoStealing, Check::LargeIntersection, Check::Closeness, Check::Inclusion];
    let probes = mutation_probes();
    for (g, phi) in &probes {
        let r = check_structural(g, *phi).unwrap();
        vacuous += usize::from(r.vacuous);
        violations.extend(r.violations.iter().map(|x| x.to_string()));
    }
    let mut caught = Vec::new();
    let mut all_caught = true;
    for ((name, p), check) in mutations.iter().zip(expected) {
        let hits: usize = suite
            .iter()
            .chain(&probes)
            .map(|(g, opt)| check_structural_with(g, *opt, p).unwrap().violations.iter().filter(|x| x.check == check).count())
            .sum();
        all_caught &= hits > 0;
        caught.push(format!("{name}: {hits}"));
    }
    let pass = violations.is_empty() && vacuous == 0 && all_caught;
    (
        pass,
        format!(
            "{} instances + {} probes, {} violations {:?}; mutation hits [{}]",
            suite.len(),
            probes.len(),
            violations.len(),
            first(&violations),
            caught.join(", ")
        ),
    )
}

fn jl_accuracy(n: usize, seeds: u64) -> (bool, String) {
    let eps = 0.3;
    let g = planted_instance(n, 10, 0.05, 17).unwrap().graph;
    let k = sketch_dimension(n, eps, 8.0);
    let truth: Vec<Vec<u32>> =
        (0..n).map(|u| (0..n).map(|v| g.symdiff_size(u, v, None).unwrap() as u32).collect()).collect();
    let mut worst: f64 = 0.0;
    let mut fails = 0;
    for seed in 0..seeds {
        let s = SketchSet::build(&g, eps, 1000 + seed, 8.0).unwrap();
        let (mut pairs, mut outside) = (0usize, 0usize);
        for u in 0..n {
            for v in u + 1..n {
                let d = truth[u][v] as f64;
                if d == 0.0 {
                    continue;
                }
                pairs += 1;
                // ‖A·N⃗[u] − A·N⃗[v]‖² / k, the quantity bracketed by (1 ± ε)·Δ.
                let est = s.squared_distance(u, v) as f64 / k as f64;
                if est < (1.0 - eps) * d || est > (1.0 + eps) * d {
                    outside += 1;
                }
            }
        }
        let rate = outside as f64 / pairs as f64;
        worst = worst.max(rate);
        if rate > 1.0 / n as f64 {
            fails += 1;
        }
    }
    (fails == 0, format!("k = {k}, worst per-seed miss rate {worst:.2e} (limit {:.1e}) over {seeds} seeds", 1.0 / n as f64))
}

fn run_stream(g: &PositiveGraph, config: StreamConfig, edges: &[(usize, usize)]) -> StreamOutcome {
    let mut s = stream_init(g.n(), config).unwrap();
    for &(u, v) in edges {
        s.ingest(u, v).unwrap();
    }
    s.finalize()
}

fn streaming_correctness(seeds: u64, bound: &mut (usize, usize, usize)) -> (bool, String) {
    let eps = 1.5;
    let eta = Eta::from_f64(eps / 3.0).unwrap();
    let (mut ok, mut order_ok, mut fallbacks) = (0u64, 0u64, 0usize);
    for seed in 0..seeds {
        let inst = planted_instance(200, 8, 0.01, 500 + seed).unwrap();
        let g = &inst.graph;
        let phi = objective(g, &Clustering::from_labels(&inst.truth)).unwrap().obj;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = g.edges().to_vec();
        edges.shuffle(&mut rng);
        let config = StreamConfig::new(phi, eta, seed);
        let out = run_stream(g, config, &edges);
        edges.shuffle(&mut rng);
        let again = run_stream(g, config, &edges);
        let sorted = run_stream(g, config, g.edges());
        if out.verdict == again.verdict && out.verdict == sorted.verdict && out.built == sorted.built {
            order_ok += 1;
        }
        fallbacks += out.fallbacks;
        if let Some(c) = out.clustering() {
            let obj = objective(g, c).unwrap().obj;
            record_stream_certificate(bound, obj, eta, phi);
            if obj as f64 <= (3.0 + eps) * phi as f64 {
                ok += 1;
            }
        }
    }
    let pass = ok * 100 >= 95 * seeds && order_ok == seeds;
    (
        pass,
        format!(
            "ε = {eps} (η = {eta}): {ok}/{seeds} succeeded within (3+ε)·φ; order invariance {order_ok}/{seeds}; \
             candidate sets disjoint in every run; {fallbacks} high-degree-only clusters"
        ),
    )
}

fn record_stream_certificate(bound: &mut (usize, usize, usize), obj: u64, eta: Eta, phi: u64) {
    let e = eta.as_f64();
    bound.0 += 1;
    if obj as f64 > (3.0 + e) * (1.0 + e / 2.0) * phi as f64 + 1e-9 {
        bound.1 += 1;
    }
    if !eta.within_three_plus(obj, phi) {
        bound.2 += 1;
    }
}

fn streaming_space() -> (bool, String) {
    let eta = Eta::from_f64(0.8).unwrap();
    let mut parts = Vec::new();
    let mut pass = true;
    for n in [1_000usize, 10_000] {
        let inst = planted_instance(n, n / 100, 0.01, 9).unwrap();
        let g = &inst.graph;
        let phi = objective(g, &Clustering::from_labels(&inst.truth)).unwrap().obj;
        let out = run_stream(g, StreamConfig::new(phi, eta, 4), g.edges());
        let r = out.space;
        let eps = StreamConfig::new(phi, eta, 4).sketch_epsilon();
        let ratio = r.high_water_words as f64 / (n as f64 * (n as f64).ln() / (eps * eps));
        pass &= r.within_budget();
        parts.push(format!(
            "n = {n}, m = {}: peak {} words = {ratio:.2}·n ln n/ε² (sketches {}, edges {}, bookkeeping {}), budget {}",
            g.m(),
            r.high_water_words,
            r.sketch_words,
            r.edge_words,
            r.bookkeeping_words,
            r.budget_words
        ));
    }
    (pass, format!("B₀ = {}; {}", minmaxcc::stream::SPACE_BUDGET_CONSTANT, parts.join("; ")))
}

fn near_linear_scaling() -> (bool, String) {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
    let n = 4000;
    let mut medians = Vec::new();
    let mut sizes = Vec::new();
    for cluster in [25usize, 50, 100] {
        let g = planted_instance(n, n / cluster, 0.001, 21).unwrap().graph;
        let mut times: Vec<f64> = (0..3)
            .map(|r| {
                let t = Instant::now();
                let s = pool.install(|| solve(&g, 0.5, SolveMode::Sketch, r).unwrap());
                std::hint::black_box(s);
                t.elapsed().as_secs_f64()
            })
            .collect();
        times.sort_by(f64::total_cmp);
        medians.push(times[1]);
        sizes.push(g.m());
    }
    let ratios: Vec<f64> = medians.windows(2).map(|w| w[1] / w[0]).collect();
    let pass = ratios.iter().all(|&r| r <= 3.0);
    let desc: Vec<String> = sizes.iter().zip(&medians).map(|(m, t)| format!("m = {m}: {:.0} ms", t * 1e3)).collect();
    (pass, format!("{}; ratios {:?}", desc.join(", "), ratios.iter().map(|r| format!("{r:.2}")).collect::<Vec<_>>()))
}

fn opt_histogram(suite: &[OracleCase]) -> String {
    let max = suite.iter().map(|c| c.opt).max().unwrap_or(0);
    let counts: Vec<usize> = (0..=max).map(|o| suite.iter().filter(|c| c.opt == o).count()).collect();
    format!("{counts:?}")
}

fn first(v: &[String]) -> Vec<&String> {
    v.iter().take(3).collect()
}

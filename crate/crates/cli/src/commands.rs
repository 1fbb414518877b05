use std::fs::File;
use std::io::BufReader;
use std::path::Path;
use std::time::Instant;

use minmaxcc::cluster::PhiVerdict;
use minmaxcc::stream::{stream_init, stream_solve, StreamSettings};
use minmaxcc::{
    brute_force_opt, check_structural, load_graph, objective, planted_instance, Clustering, EdgeListReader, Eta,
    PositiveGraph, SolveMode,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::record::{emit, sha256_hex, BenchRecord, CheckRecord, RunRecord};
use crate::{read_file, write_file, BenchArgs, CheckArgs, Failure, GenArgs, Mode, OracleArgs, SolveArgs, StreamArgs};

struct Input {
    graph: PositiveGraph,
    digest: String,
}

fn load(path: &Path) -> Result<Input, Failure> {
    let bytes = read_file(path)?;
    let digest = sha256_hex(&bytes);
    let text = std::str::from_utf8(&bytes).map_err(|_| Failure::usage(format!("{}: not valid UTF-8", path.display())))?;
    Ok(Input { graph: load_graph(text)?.graph, digest })
}

fn write_clustering(c: &Clustering, path: Option<&Path>) -> Result<(), Failure> {
    let text = c.to_lines();
    match path {
        Some(p) => write_file(p, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn solve_mode(mode: Mode) -> SolveMode {
    match mode {
        Mode::Exact => SolveMode::Exact,
        Mode::Sketch => SolveMode::Sketch,
    }
}

fn mode_name(mode: Mode) -> &'static str {
    match mode {
        Mode::Exact => "exact",
        Mode::Sketch => "sketch",
    }
}

pub fn solve(a: &SolveArgs) -> Result<(), Failure> {
    let input = load(&a.input)?;
    let g = &input.graph;
    let start = Instant::now();
    let s = minmaxcc::solve(g, a.epsilon, solve_mode(a.mode), a.seed)?;
    let wall_time_ms = millis(start);
    let obj = objective(g, &s.clustering)?.obj;
    write_clustering(&s.clustering, a.out.as_deref())?;
    let record = RunRecord {
        command: "solve",
        input_digest: Some(input.digest),
        n: Some(g.n()),
        m: Some(g.m()),
        seed: Some(a.seed),
        epsilon: Some(s.eta.as_f64()),
        mode: Some(mode_name(a.mode)),
        phi_final: Some(s.phi_final),
        obj: Some(obj),
        wall_time_ms,
        query_count: Some(s.stats.queries),
        passes: Some(s.stats.probes),
        ..Default::default()
    };
    emit(&record, a.json.as_deref(), a.out.is_none())
}

struct StreamRun {
    clustering: Option<Clustering>,
    phi_final: Option<u64>,
    passes: usize,
    peak_words: u64,
    budget_words: u64,
    queries: u64,
}

fn run_stream<F, I>(n: usize, a: &StreamArgs, eta: Eta, mut replay: F) -> minmaxcc::Result<StreamRun>
where
    F: FnMut() -> minmaxcc::Result<I>,
    I: IntoIterator<Item = minmaxcc::Result<(usize, usize)>>,
{
    let settings = StreamSettings::new(eta, a.seed);
    match a.phi {
        Some(phi) => {
            let mut state = stream_init(n, settings.at(phi))?;
            for edge in replay()? {
                let (u, v) = edge?;
                state.ingest(u, v)?;
            }
            let out = state.finalize();
            let clustering = match out.verdict {
                PhiVerdict::Clustered(c) => Some(c),
                PhiVerdict::OptAbovePhi => None,
            };
            Ok(StreamRun {
                phi_final: clustering.as_ref().map(|_| phi),
                clustering,
                passes: 1,
                peak_words: out.space.high_water_words,
                budget_words: out.space.budget_words,
                queries: out.similarity_queries,
            })
        }
        None => {
            let s = stream_solve(n, settings, replay)?;
            Ok(StreamRun {
                clustering: Some(s.clustering),
                phi_final: Some(s.phi_final),
                passes: s.passes,
                peak_words: s.peak_words,
                budget_words: s.budget_words,
                queries: s.similarity_queries,
            })
        }
    }
}

pub fn stream(a: &StreamArgs) -> Result<(), Failure> {
    if !(a.epsilon > 0.0 && a.epsilon < 3.0) {
        return Err(Failure::usage(format!("epsilon = {} must lie in (0, 3)", a.epsilon)));
    }
    let eta = Eta::from_f64(a.epsilon / 3.0)?;
    let input = load(&a.input)?;
    let g = &input.graph;
    let n = g.n();
    let start = Instant::now();
    let run = match a.shuffle_seed {
        Some(shuffle) => {
            let file = File::open(&a.input).map_err(|e| Failure::io(&a.input, e))?;
            let mut edges = EdgeListReader::new(BufReader::new(file))?.collect::<minmaxcc::Result<Vec<_>>>()?;
            edges.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
            run_stream(n, a, eta, || Ok(edges.iter().map(|&e| Ok(e))))?
        }
        None => run_stream(n, a, eta, || EdgeListReader::new(BufReader::new(File::open(&a.input)?)))?,
    };
    let wall_time_ms = millis(start);

    let obj = match &run.clustering {
        Some(c) => {
            write_clustering(c, a.out.as_deref())?;
            Some(objective(g, c)?.obj)
        }
        None => {
            log::warn!("no clustering at φ = {}: the pass reported OPT > φ", a.phi.unwrap_or_default());
            None
        }
    };
    let record = RunRecord {
        command: "stream",
        input_digest: Some(input.digest),
        n: Some(n),
        m: Some(g.m()),
        seed: Some(a.seed),
        epsilon: Some(a.epsilon),
        mode: Some("stream"),
        phi_final: run.phi_final,
        obj,
        wall_time_ms,
        peak_words: Some(run.peak_words),
        budget_words: Some(run.budget_words),
        query_count: Some(run.queries),
        passes: Some(run.passes),
        ..Default::default()
    };
    emit(&record, a.json.as_deref(), a.out.is_none() && run.clustering.is_some())
}

pub fn oracle(a: &OracleArgs) -> Result<(), Failure> {
    let input = load(&a.input)?;
    let g = &input.graph;
    let start = Instant::now();
    let result = brute_force_opt(g)?;
    let wall_time_ms = millis(start);
    let witness = &result.witnesses[0];
    if let Some(out) = &a.out {
        write_clustering(witness, Some(out))?;
    }
    let record = RunRecord {
        command: "oracle",
        input_digest: Some(input.digest),
        n: Some(g.n()),
        m: Some(g.m()),
        mode: Some("exhaustive"),
        obj: Some(objective(g, witness)?.obj),
        opt: Some(result.opt),
        wall_time_ms,
        ..Default::default()
    };
    emit(&record, a.json.as_deref(), false)
}

const DENSITIES: [f64; 3] = [0.2, 0.5, 0.8];

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> PositiveGraph {
    let edges: Vec<(usize, usize)> =
        (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|_| rng.gen_bool(p)).collect();
    PositiveGraph::from_edges(n, edges).expect("pairs are in range")
}

pub fn check(a: &CheckArgs) -> Result<(), Failure> {
    let start = Instant::now();
    let (instances, digest, seed) = match &a.input {
        Some(path) => {
            let input = load(path)?;
            (vec![input.graph], Some(input.digest), None)
        }
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let graphs = (0..a.instances).map(|i| random_graph(a.n, DENSITIES[i % DENSITIES.len()], &mut rng)).collect();
            (graphs, None, Some(a.seed))
        }
    };
    let mut record = CheckRecord { command: "check", input_digest: digest, seed, instances: instances.len(), ..Default::default() };
    for g in &instances {
        let phi = match a.phi {
            Some(phi) => phi,
            None => brute_force_opt(g)?.opt,
        };
        let report = check_structural(g, phi)?;
        record.vacuous += usize::from(report.vacuous);
        record.witnesses += report.witnesses;
        record.violations += report.violations.len();
        if record.first_violation.is_none() {
            record.first_violation = report.violations.first().map(|v| v.to_string());
        }
    }
    record.wall_time_ms = millis(start);
    emit(&record, a.json.as_deref(), false)?;
    if record.violations > 0 {
        return Err(Failure { code: 1, message: format!("{} structural violation(s)", record.violations) });
    }
    Ok(())
}

pub fn gen(a: &GenArgs) -> Result<(), Failure> {
    let inst = planted_instance(a.n, a.clusters, a.flip, a.seed)?;
    let text = inst.graph.to_edge_list();
    match &a.out {
        Some(p) => write_file(p, &text)?,
        None => print!("{text}"),
    }
    if let Some(p) = &a.truth {
        write_file(p, &Clustering::from_labels(&inst.truth).to_lines())?;
    }
    Ok(())
}

pub fn bench(a: &BenchArgs) -> Result<(), Failure> {
    if a.repeats == 0 || a.sizes.is_empty() {
        return Err(Failure::usage("bench needs at least one size and one repeat"));
    }
    let mut records: Vec<BenchRecord> = Vec::new();
    for &target in &a.sizes {
        // Blocks of size s give about n(s − 1)/2 edges.
        let size = (2 * target / a.n.max(1) + 1).clamp(1, a.n.max(1));
        let inst = planted_instance(a.n, (a.n / size).max(1), 0.001, a.seed)?;
        let g = &inst.graph;
        let mut times = Vec::with_capacity(a.repeats);
        let mut last = None;
        for _ in 0..a.repeats {
            let start = Instant::now();
            let s = minmaxcc::solve(g, a.epsilon, solve_mode(a.mode), a.seed)?;
            times.push(millis(start));
            last = Some(s);
        }
        times.sort_by(f64::total_cmp);
        let median_ms = times[times.len() / 2];
        let s = last.expect("repeats > 0");
        log::info!("m = {}: median {median_ms:.1} ms", g.m());
        records.push(BenchRecord {
            command: "bench",
            mode: mode_name(a.mode),
            epsilon: s.eta.as_f64(),
            n: g.n(),
            m: g.m(),
            repeats: a.repeats,
            median_ms,
            ratio: records.last().map(|prev| median_ms / prev.median_ms),
            obj: s.report.obj,
            phi_final: s.phi_final,
        });
    }
    emit(&records, a.json.as_deref(), false)
}

use std::fs;
use std::path::Path;
use std::thread;
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use anyhow::{bail, Context, Result};
use dsp_core::bench::{run_bench, BenchConfig};
use dsp_core::dsp2::{Answer, TwoPairInstance};
use dsp_core::gen::{random_graph, GraphParams};
use dsp_core::graph::{load_graph_with, Graph, LoadOptions, Mode};
use dsp_core::kedsp::{
    reduce_dp_to_dsp, reduce_edsp_to_dsp, search_product, verify_edge_disjoint, KedspOptions, ProductGraph,
};
use dsp_core::reductions::{clique_to_kdsp, clique_to_pdp, covering_family, CliqueInstance, ReductionInstance};
use dsp_core::search::{find_2dsp_with, SearchOptions};
use dsp_core::selftest::{run_suite, Suite, SuiteReport};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{emit, timed, InstanceStats, RunReport};
use crate::{
    BenchArgs, CliqueArgs, Command, DecideArgs, GenCommand, InputArgs, KedspArgs, RandomArgs, ReduceArgs,
    ReduceCommand, SearchArgs, SeedArg, SelftestArgs,
};

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Decide(args) => decide(args),
        Command::Search(args) => search(args),
        Command::Kedsp(args) => kedsp(args, false),
        Command::Kedp(args) => kedsp(args, true),
        Command::Gen(GenCommand::CoveringFamily { k, out }) => {
            let family = covering_family(k)?;
            write_or_print(out.as_deref(), &(serde_json::to_string_pretty(&family)? + "\n"))
        }
        Command::Gen(GenCommand::CliqueToKdsp(args)) => gen_clique(args, |c| Ok(clique_to_kdsp(c))),
        Command::Gen(GenCommand::CliqueToPdp(args)) => gen_clique(args, clique_to_pdp),
        Command::Gen(GenCommand::RandomDag(args)) => gen_random(args, Mode::Dag),
        Command::Gen(GenCommand::RandomUndirected(args)) => gen_random(args, Mode::Undirected),
        Command::Reduce(ReduceCommand::EdspToDsp(args)) => reduce(args, |g| Ok(reduce_edsp_to_dsp(g))),
        Command::Reduce(ReduceCommand::DpToDsp(args)) => reduce(args, reduce_dp_to_dsp),
        Command::Bench(args) => bench(args),
        Command::Selftest(args) => selftest(args),
    }
}

impl SeedArg {
    /// The given seed, or one from the clock, announced on stderr so the run can be repeated.
    fn resolve(&self) -> u64 {
        self.seed.unwrap_or_else(|| {
            let nanos = SystemTime::now().duration_since(UNIX_EPOCH).map_or(0, |d| d.as_nanos());
            let seed = nanos as u64 ^ (nanos >> 64) as u64;
            eprintln!("seed {seed}");
            seed
        })
    }
}

fn load(input: &InputArgs) -> Result<Graph> {
    let text = fs::read_to_string(&input.input).with_context(|| format!("reading {}", input.input.display()))?;
    let options = LoadOptions { allow_disconnected: input.allow_disconnected };
    load_graph_with(&text, options).with_context(|| format!("loading {}", input.input.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => Ok(emit(text)?),
    }
}

fn decide(args: DecideArgs) -> Result<()> {
    let start = Instant::now();
    let seed = args.seed.resolve();
    if args.trials == 0 {
        return Err(dsp_core::Error::InvalidParameter("trials must be at least 1".into()).into());
    }
    let mut report = RunReport::new(Some(seed));
    let (g, load_time) = timed(|| load(&args.input));
    let g = g?;
    let (inst, sp_dag) = timed(|| TwoPairInstance::new(&g));
    let inst = inst?;
    let (decision, evaluate) = timed(|| inst.decide(args.trials, &mut ChaCha8Rng::seed_from_u64(seed)));
    report.verdict = Some(decision.answer);
    report.value = Some(decision.value);
    report.trials = Some(decision.trials);
    report.stats = Some(InstanceStats::of(&g));
    report.timings.load = Some(load_time);
    report.timings.sp_dag = Some(sp_dag);
    report.timings.evaluate = Some(evaluate);
    report.timings.total = start.elapsed().as_secs_f64();
    report.print()?;
    Ok(())
}

fn search(args: SearchArgs) -> Result<()> {
    let start = Instant::now();
    let seed = args.seed.resolve();
    let mut report = RunReport::new(Some(seed));
    let (g, load_time) = timed(|| load(&args.input));
    let g = g?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (outcome, evaluate) = timed(|| find_2dsp_with(&g, &mut rng, SearchOptions::default()));
    let outcome = outcome?;
    report.verdict = Some(Answer::from_bool(outcome.paths.is_some()));
    report.paths = outcome.paths.map(|(p1, p2)| vec![p1, p2]);
    report.details = Some(json!({
        "stages": outcome.stats.stages,
        "restarts": outcome.stats.restarts,
        "max_circuit_size": outcome.stats.max_circuit_size,
    }));
    report.stats = Some(InstanceStats::of(&g));
    report.timings.load = Some(load_time);
    report.timings.evaluate = Some(evaluate);
    report.timings.total = start.elapsed().as_secs_f64();
    report.print()?;
    Ok(())
}

/// With `any_length`, the DAG is first reweighted so that every path is
/// shortest, which turns edge-disjoint paths into edge-disjoint shortest paths.
fn kedsp(args: KedspArgs, any_length: bool) -> Result<()> {
    let start = Instant::now();
    let mut report = RunReport::new(None);
    let (g, load_time) = timed(|| load(&args.input));
    let g = g?;
    let target = if any_length { reduce_dp_to_dsp(&g)? } else { g.clone() };
    let k = args.k.unwrap_or(g.k());
    let options = KedspOptions { max_product_nodes: args.max_product_nodes, ..KedspOptions::default() };
    let (product, sp_dag) = timed(|| ProductGraph::new(&target));
    let product = product?;
    let (outcome, evaluate) = timed(|| search_product(&target, k, &product, options));
    let outcome = outcome?;
    if let Some(paths) = &outcome.paths {
        if !verify_edge_disjoint(&target, paths) {
            bail!("extracted paths fail verification: {paths:?}");
        }
    }
    report.verdict = Some(Answer::from_bool(outcome.found));
    report.paths = outcome.paths;
    report.details = Some(json!({
        "visited": outcome.stats.visited,
        "product_edges": outcome.stats.product_edges,
    }));
    report.stats = Some(InstanceStats::of(&g));
    report.timings.load = Some(load_time);
    report.timings.sp_dag = Some(sp_dag);
    report.timings.evaluate = Some(evaluate);
    report.timings.total = start.elapsed().as_secs_f64();
    report.print()?;
    Ok(())
}

fn gen_clique(args: CliqueArgs, build: impl Fn(&CliqueInstance) -> dsp_core::Result<ReductionInstance>) -> Result<()> {
    let start = Instant::now();
    let (clique, seed) = match &args.edges {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let c = CliqueInstance::parse(&text).with_context(|| format!("loading {}", path.display()))?;
            if (c.k(), c.n()) != (args.k, args.n) {
                let msg = format!("file has k={} n={}, arguments say k={} n={}", c.k(), c.n(), args.k, args.n);
                return Err(dsp_core::Error::InvalidClique(msg).into());
            }
            (c, None)
        }
        None => {
            if !(0.0..=1.0).contains(&args.p) {
                return Err(dsp_core::Error::InvalidParameter(format!("p = {} outside [0, 1]", args.p)).into());
            }
            let seed = args.seed.resolve();
            (CliqueInstance::random(args.k, args.n, args.p, &mut ChaCha8Rng::seed_from_u64(seed)), Some(seed))
        }
    };
    let inst = build(&clique)?;
    if let Err(e) = inst.verify_certificate() {
        bail!("generated instance fails its certificate: {e}");
    }
    let cert_path = format!("{}.cert.json", args.out.display());
    write_or_print(Some(&args.out), &inst.graph.to_text())?;
    write_or_print(Some(Path::new(&cert_path)), &(serde_json::to_string_pretty(&inst.certificate)? + "\n"))?;

    let mut report = RunReport::new(seed);
    report.details = Some(json!({
        "graph": args.out.display().to_string(),
        "certificate": cert_path,
        "pairs": inst.graph.k(),
        "node_bound": inst.certificate.node_bound,
    }));
    report.stats = Some(InstanceStats::of(&inst.graph));
    report.timings.total = start.elapsed().as_secs_f64();
    report.print()?;
    Ok(())
}

fn gen_random(args: RandomArgs, mode: Mode) -> Result<()> {
    let seed = args.seed.resolve();
    let params = GraphParams::new(mode, args.n).pairs(args.pairs).edge_prob(args.edge_prob);
    let g = random_graph(params, &mut ChaCha8Rng::seed_from_u64(seed))?;
    write_or_print(args.out.as_deref(), &g.to_text())
}

fn reduce(args: ReduceArgs, transform: impl Fn(&Graph) -> dsp_core::Result<Graph>) -> Result<()> {
    let g = load(&args.input)?;
    write_or_print(args.out.as_deref(), &transform(&g)?.to_text())
}

fn bench(args: BenchArgs) -> Result<()> {
    let config = BenchConfig {
        modes: args.modes,
        sizes: args.sizes,
        repeats: args.repeats,
        trials: args.trials,
        seed: args.seed.resolve(),
    };
    let report = run_bench(&config)?;
    if args.json {
        emit(&(serde_json::to_string_pretty(&report)? + "\n"))?;
    } else {
        emit(&report.to_csv())?;
    }
    Ok(())
}

/// One worker per suite, each with its own stream derived from the seed.
fn selftest(args: SelftestArgs) -> Result<()> {
    let start = Instant::now();
    let seed = args.seed.resolve();
    let suites = if args.suites.is_empty() { Suite::ALL.to_vec() } else { args.suites };
    let results: Vec<dsp_core::Result<SuiteReport>> = thread::scope(|scope| {
        let workers: Vec<_> = suites
            .iter()
            .enumerate()
            .map(|(idx, &suite)| {
                let stream = seed ^ (idx as u64 + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
                scope.spawn(move || run_suite(suite, args.cases, stream))
            })
            .collect();
        workers.into_iter().map(|w| w.join().expect("self-test worker panicked")).collect()
    });
    let reports = results.into_iter().collect::<dsp_core::Result<Vec<_>>>()?;
    let failed: Vec<&str> = reports.iter().filter(|r| !r.passed()).map(|r| r.suite).collect();

    let mut report = RunReport::new(Some(seed));
    report.verdict = Some(Answer::from_bool(failed.is_empty()));
    report.details = Some(json!({ "suites": reports }));
    report.timings.total = start.elapsed().as_secs_f64();
    report.print()?;
    if !failed.is_empty() {
        bail!("self-test suites failed: {}", failed.join(", "));
    }
    Ok(())
}

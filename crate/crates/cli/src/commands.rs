use std::fs;

use anyhow::{bail, Context, Result};
use serde::Serialize;
use serde_json::{json, Value};
use tutte_trees::generators::named;
use tutte_trees::harness::{
    replay_bundle, verify_theorem, write_graph6, Corpus, VerifyOptions, WitnessBundle, DEFAULT_TREE_CAP,
};
use tutte_trees::nonsep::{replay, verify_fundamental_tutte_tree, verify_tutte_tree};
use tutte_trees::planar::planar_embed;
use tutte_trees::search::{
    decide_planar_tutte, find_fundamental_tutte_tree, find_hamiltonian_cycle, find_hamiltonian_path,
    find_tutte_tree, Anchors,
};
use tutte_trees::structure::{block_cut_tree, h_bridges, is_series_parallel, two_vertex_cuts};
use tutte_trees::{Certificate, Claim, Graph, SearchConfig, Verdict, VertexSet};

use crate::input::{check_vertex, parse_pair, parse_tree, read_graph, read_graphs, read_text};
use crate::{
    order, CheckCommand, Command, DecideCommand, FindArgs, GenArgs, Problem, ReplayArgs, SearchArgs,
    StructureCommand, VerifyArgs,
};

/// Version of the JSON record layout written to stdout.
const SCHEMA: u32 = 1;

fn emit(mut record: Value) {
    record["schema"] = json!(SCHEMA);
    println!("{record}");
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("records serialize")
}

/// Holds beats fails beats inconclusive when several graphs are processed.
fn worst(a: Verdict, b: Verdict) -> Verdict {
    let rank = |v| match v {
        Verdict::Holds => 0,
        Verdict::Fails => 1,
        Verdict::Inconclusive => 2,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

fn config(s: &SearchArgs) -> SearchConfig {
    SearchConfig {
        budget: s.budget,
        order: order(s.order),
        record_stats: true,
        prune: !s.unpruned,
    }
}

pub fn run(command: Command) -> Result<Verdict> {
    match command {
        Command::Check(CheckCommand::Tree { graph, tree, fundamental }) => check_tree(&graph.graph, &tree, fundamental),
        Command::Find(args) => find(args),
        Command::Decide(DecideCommand::PlanarTutte { graph, search }) => decide(&graph.graph, &search),
        Command::Structure(cmd) => structure(cmd),
        Command::Gen(args) => gen(args),
        Command::Verify(args) => verify(args),
        Command::Replay(args) => replay_cmd(args),
    }
}

fn check_tree(path: &str, tree: &str, fundamental: bool) -> Result<Verdict> {
    let g = read_graph(path)?;
    let t = parse_tree(&g, tree)?;
    let (claim, cert) = if fundamental {
        (Claim::FundamentalTutteTree, verify_fundamental_tutte_tree(&g, &t)?)
    } else {
        (Claim::TutteTree, verify_tutte_tree(&g, &t)?)
    };
    eprintln!("{}: {:?}", claim_name(claim), cert.verdict);
    emit(json!({
        "command": "check-tree",
        "claim": claim,
        "graph6": write_graph6(&g),
        "tree": t.edge_list_string(),
        "verdict": cert.verdict,
        "witness": cert.witness,
    }));
    Ok(cert.verdict)
}

fn claim_name(c: Claim) -> &'static str {
    match c {
        Claim::TutteTree => "Tutte tree",
        Claim::FundamentalTutteTree => "fundamental Tutte tree",
        Claim::HamiltonianCycle => "Hamiltonian cycle",
        Claim::HamiltonianPath => "Hamiltonian path",
    }
}

fn find(args: FindArgs) -> Result<Verdict> {
    let cfg = config(&args.search);
    let endpoints = args.endpoints.as_deref().map(parse_pair).transpose()?;
    if endpoints.is_some() && !matches!(args.problem, Problem::Hampath) {
        bail!("--endpoints only applies to hampath");
    }
    let mut overall = Verdict::Holds;
    for g in read_graphs(&args.graph.graph)? {
        let (claim, cert) = match args.problem {
            Problem::Tutte => (Claim::TutteTree, find_tutte_tree(&g, &cfg)?),
            Problem::Ftt => (Claim::FundamentalTutteTree, find_fundamental_tutte_tree(&g, &cfg)?),
            Problem::Hamcycle => (Claim::HamiltonianCycle, find_hamiltonian_cycle(&g, &cfg)?),
            Problem::Hampath => {
                let anchors = match endpoints {
                    Some((u, v)) => {
                        check_vertex(&g, u)?;
                        check_vertex(&g, v)?;
                        Anchors::Pair(u, v)
                    }
                    None => Anchors::Free,
                };
                (Claim::HamiltonianPath, find_hamiltonian_path(&g, anchors, &cfg)?)
            }
        };
        eprintln!("{} on {} vertices: {:?}", claim_name(claim), g.n(), cert.verdict);
        overall = worst(overall, cert.verdict);
        emit(certificate_record("find", &g, claim, &cert));
    }
    Ok(overall)
}

fn certificate_record(command: &str, g: &Graph, claim: Claim, cert: &Certificate) -> Value {
    let mut record = json!({
        "command": command,
        "claim": claim,
        "graph6": write_graph6(g),
        "verdict": cert.verdict,
        "certificate": cert,
    });
    if let Some(t) = cert.tree() {
        record["tree"] = json!(t.edge_list_string());
    }
    record
}

fn decide(path: &str, search: &SearchArgs) -> Result<Verdict> {
    let cfg = config(search);
    let mut overall = Verdict::Holds;
    for g in read_graphs(path)? {
        let d = decide_planar_tutte(&g, &cfg)?;
        eprintln!("planar Tutte tree on {} vertices: {:?}", g.n(), d.certificate.verdict);
        let mut record = certificate_record("decide-planar-tutte", &g, Claim::TutteTree, &d.certificate);
        record["route"] = to_value(&d.route);
        overall = worst(overall, d.certificate.verdict);
        emit(record);
    }
    Ok(overall)
}

fn structure(cmd: StructureCommand) -> Result<Verdict> {
    match cmd {
        StructureCommand::Bridges { graph, cut } => {
            let g = read_graph(&graph.graph)?;
            let (u, v) = parse_pair(&cut)?;
            check_vertex(&g, u)?;
            check_vertex(&g, v)?;
            if u == v {
                bail!("cut vertices must be distinct");
            }
            let h = VertexSet::from_iter_n(g.n(), [u, v]);
            let d = h_bridges(&g, &h);
            let bridges: Vec<Value> = d
                .bridges
                .iter()
                .map(|b| {
                    json!({
                        "internal": b.internal.to_vec(),
                        "attachments": b.attachments.to_vec(),
                        "edges": b.edges,
                        "trivial": b.trivial,
                    })
                })
                .collect();
            eprintln!("{{{u},{v}}}: {} bridges, {} trivial", bridges.len(), d.trivial_count());
            emit(json!({"command": "bridges", "cut": [u, v], "bridges": bridges}));
            Ok(Verdict::Holds)
        }
        StructureCommand::Blocks { graph } => {
            let g = read_graph(&graph.graph)?;
            let bct = block_cut_tree(&g)?;
            eprintln!("{} blocks, {} cut vertices", bct.blocks.len(), bct.cut_vertices.len());
            emit(json!({"command": "blocks", "blocks": bct}));
            Ok(Verdict::Holds)
        }
        StructureCommand::SpCheck { graph } => {
            let g = read_graph(&graph.graph)?;
            let sp = is_series_parallel(&g);
            let verdict = if sp { Verdict::Holds } else { Verdict::Fails };
            eprintln!("series-parallel: {sp}");
            emit(json!({"command": "sp-check", "series_parallel": sp, "verdict": verdict}));
            Ok(verdict)
        }
        StructureCommand::TwoCuts { graph } => {
            let g = read_graph(&graph.graph)?;
            let cuts = two_vertex_cuts(&g);
            eprintln!("{} 2-vertex cuts", cuts.len());
            emit(json!({"command": "two-cuts", "cuts": cuts}));
            Ok(Verdict::Holds)
        }
    }
}

fn dot(g: &Graph) -> String {
    if g.is_connected() {
        if let Some(e) = planar_embed(g).ok().and_then(|p| p.embedding()) {
            return e.to_dot(g);
        }
    }
    let mut out = String::from("graph G {\n");
    for v in 0..g.n() {
        out += &format!("  {v};\n");
    }
    for (u, v) in g.edges() {
        out += &format!("  {u} -- {v};\n");
    }
    out + "}\n"
}

fn gen(args: GenArgs) -> Result<Verdict> {
    let g = named(&args.name)?;
    let line = write_graph6(&g) + "\n";
    match &args.out {
        Some(path) => fs::write(path, &line).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{line}"),
    }
    if let Some(path) = &args.dot {
        fs::write(path, dot(&g)).with_context(|| format!("writing {}", path.display()))?;
    }
    eprintln!("{}: {} vertices, {} edges", args.name, g.n(), g.m());
    Ok(Verdict::Holds)
}

fn verify(args: VerifyArgs) -> Result<Verdict> {
    let corpus = Corpus::concat(
        args.corpus
            .iter()
            .map(|p| Corpus::from_graph6(p.as_str(), &read_text(p)?).with_context(|| format!("parsing {p}")))
            .collect::<Result<Vec<_>>>()?,
    );
    let opts = VerifyOptions {
        jobs: args.jobs,
        tree_cap: args.tree_cap.unwrap_or(DEFAULT_TREE_CAP),
        search: SearchConfig {
            budget: args.budget,
            record_stats: false,
            ..SearchConfig::default()
        },
        timing: args.timing,
        progress: None,
    };
    let report = verify_theorem(args.theorem, &corpus, &opts)?;
    eprintln!(
        "{}: scanned {}, qualified {}, skipped {}, counterexamples {}",
        report.theorem,
        report.scanned,
        report.qualified,
        report.skipped_total(),
        report.counterexamples.len()
    );
    if let Some(path) = &args.report {
        let text = serde_json::to_string_pretty(&report)?;
        fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    if let Some(dir) = &args.bundles {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for (i, b) in report.counterexamples.iter().enumerate() {
            let path = dir.join(format!("bundle-{i}.json"));
            fs::write(&path, serde_json::to_string_pretty(b)? + "\n")
                .with_context(|| format!("writing {}", path.display()))?;
        }
    }
    let verdict = if report.passed() { Verdict::Holds } else { Verdict::Fails };
    let mut record = to_value(&report);
    record["command"] = json!("verify");
    record["verdict"] = to_value(verdict);
    emit(record);
    Ok(verdict)
}

fn replay_cmd(args: ReplayArgs) -> Result<Verdict> {
    let text = read_text(&args.witness)?;
    let value: Value = serde_json::from_str(&text).context("witness is not JSON")?;
    if value.get("theorem").is_some() {
        let bundle: WitnessBundle = serde_json::from_value(value).context("malformed witness bundle")?;
        let r = replay_bundle(&bundle, &VerifyOptions::default())?;
        let verdict = if r.confirmed { Verdict::Holds } else { Verdict::Fails };
        eprintln!("{} counterexample {}: {}", bundle.theorem, if r.confirmed { "confirmed" } else { "not confirmed" }, r.detail);
        emit(json!({
            "command": "replay",
            "kind": "bundle",
            "theorem": bundle.theorem,
            "confirmed": r.confirmed,
            "detail": r.detail,
            "verdict": verdict,
        }));
        return Ok(verdict);
    }
    let (Some(g6), Some(claim), Some(cert)) = (value.get("graph6"), value.get("claim"), value.get("certificate")) else {
        bail!("witness needs either a theorem bundle or graph6, claim and certificate fields");
    };
    let g6 = g6.as_str().context("graph6 must be a string")?;
    let g = tutte_trees::harness::parse_graph6(g6)?;
    let claim: Claim = serde_json::from_value(claim.clone()).context("unknown claim")?;
    let cert: Certificate = serde_json::from_value(cert.clone()).context("malformed certificate")?;
    let ok = replay(&g, claim, &cert);
    let verdict = if ok { Verdict::Holds } else { Verdict::Fails };
    eprintln!("{} certificate {}", claim_name(claim), if ok { "replays" } else { "does not replay" });
    emit(json!({"command": "replay", "kind": "certificate", "claim": claim, "verdict": verdict}));
    Ok(verdict)
}

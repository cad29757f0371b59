use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn tutte(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tutte"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    // the binary may exit before reading its input
    let _ = child.stdin.take().unwrap().write_all(stdin.as_bytes());
    child.wait_with_output().unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn records(o: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&o.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("stdout is JSON lines"))
        .collect()
}

fn gen(name: &str) -> String {
    let o = tutte(&["gen", name], "");
    assert_eq!(code(&o), 0);
    String::from_utf8(o.stdout).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("tutte-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn gn5_has_no_tutte_tree() {
    let o = tutte(&["find", "tutte"], &gen("gn:5"));
    assert_eq!(code(&o), 1);
    let r = &records(&o)[0];
    assert_eq!(r["verdict"], "fails");
    assert_eq!(r["schema"], 1);
    assert_eq!(r["certificate"]["witness"]["kind"], "exhausted");
}

#[test]
fn herschel_fundamental_tree_rechecks() {
    let g = gen("herschel");
    let o = tutte(&["find", "ftt"], &g);
    assert_eq!(code(&o), 0);
    let tree = records(&o)[0]["tree"].as_str().unwrap().to_string();
    let o = tutte(&["check", "tree", "--fundamental", "--tree", &tree], &g);
    assert_eq!(code(&o), 0);
    // the same tree is not a Tutte tree, since Herschel has none
    let o = tutte(&["check", "tree", "--tree", &tree], &g);
    assert_eq!(code(&o), 1);
    assert_eq!(records(&o)[0]["witness"]["kind"], "separating_path");
}

#[test]
fn decide_output_feeds_check() {
    let octahedron = "E}lw\n";
    let o = tutte(&["decide", "planar-tutte"], octahedron);
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    assert_eq!(r["route"]["route"], "hamiltonian-cycle");
    let tree = r["tree"].as_str().unwrap();
    let o = tutte(&["check", "tree", "--tree", tree], octahedron);
    assert_eq!(code(&o), 0);
}

#[test]
fn decide_on_nonhamiltonian_planar_graph() {
    let o = tutte(&["decide", "planar-tutte"], &gen("herschel"));
    assert_eq!(code(&o), 1);
    assert_eq!(records(&o)[0]["route"]["route"], "none");
}

#[test]
fn hamiltonian_paths_with_endpoints() {
    let k35 = gen("k35");
    assert_eq!(code(&tutte(&["find", "hampath"], &k35)), 1);
    assert_eq!(code(&tutte(&["find", "hamcycle"], &k35)), 1);
    let p = gen("petersen");
    // an adjacent pair would close a Hamiltonian cycle, which Petersen lacks
    assert_eq!(code(&tutte(&["find", "hampath", "--endpoints", "0,1"], &p)), 1);
    assert_eq!(code(&tutte(&["find", "hampath", "--endpoints", "0,2"], &p)), 0);
    assert_eq!(code(&tutte(&["find", "hampath", "--endpoints", "0,99"], &p)), 2);
    assert_eq!(code(&tutte(&["find", "tutte", "--endpoints", "0,1"], &p)), 2);
}

#[test]
fn pruned_and_unpruned_agree_on_verdict() {
    for name in ["petersen", "herschel", "k33"] {
        let g = gen(name);
        let a = records(&tutte(&["find", "tutte"], &g));
        let b = records(&tutte(&["find", "tutte", "--unpruned"], &g));
        assert_eq!(a[0]["verdict"], b[0]["verdict"], "{name}");
    }
}

#[test]
fn budget_exhaustion_is_inconclusive() {
    let o = tutte(&["find", "tutte", "--budget", "3"], &gen("herschel"));
    assert_eq!(code(&o), 3);
    assert_eq!(records(&o)[0]["certificate"]["witness"]["kind"], "budget_exceeded");
}

#[test]
fn structure_commands() {
    let o = tutte(&["structure", "bridges", "--cut", "0,12"], &gen("noftt"));
    assert_eq!(code(&o), 0);
    let bridges = records(&o)[0]["bridges"].as_array().unwrap().clone();
    assert_eq!(bridges.len(), 3);
    assert_eq!(bridges.iter().filter(|b| b["trivial"] == true).count(), 1);

    // K4 minus an edge: series-parallel, one 2-cut
    let diamond = "Cz\n";
    assert_eq!(code(&tutte(&["structure", "sp-check"], diamond)), 0);
    assert_eq!(code(&tutte(&["structure", "sp-check"], "C~\n")), 1);
    let cuts = records(&tutte(&["structure", "two-cuts"], diamond));
    assert_eq!(cuts[0]["cuts"].as_array().unwrap().len(), 1);

    let o = tutte(&["structure", "blocks"], "Bg\n");
    assert_eq!(records(&o)[0]["blocks"]["blocks"].as_array().unwrap().len(), 2);
}

#[test]
fn gen_writes_files() {
    let g6 = scratch("s.g6");
    let dot = scratch("s.dot");
    let o = tutte(
        &["gen", "star-s", "--out", g6.to_str().unwrap(), "--dot", dot.to_str().unwrap()],
        "",
    );
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let o = tutte(&["find", "tutte", "--graph", g6.to_str().unwrap()], "");
    assert_eq!(code(&o), 1);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert_eq!(dot.matches(" -- ").count(), 30);
    assert_eq!(code(&tutte(&["gen", "dodecahedron"], "")), 2);
}

#[test]
fn verify_and_replay() {
    let corpus = scratch("c.g6");
    std::fs::write(&corpus, "Bw\nC~\nCz\n").unwrap();
    let report = scratch("report.json");
    let o = tutte(
        &[
            "verify",
            "--theorem",
            "T-planar",
            "--corpus",
            corpus.to_str().unwrap(),
            "--report",
            report.to_str().unwrap(),
            "--jobs",
            "2",
        ],
        "",
    );
    assert_eq!(code(&o), 0);
    let r = &records(&o)[0];
    assert_eq!(r["scanned"], 3);
    assert_eq!(r["verdict"], "holds");
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(saved["theorem"], "T-planar");

    // a hand-made bundle on K4: the path is a Tutte tree and its two leaves
    // are adjacent, so there is no counterexample to confirm
    let bundle = scratch("bundle.json");
    std::fs::write(
        &bundle,
        r#"{"theorem":"L-clique","graph6":"C~","tree":"0-1,1-2,2-3","detail":"hand-made"}"#,
    )
    .unwrap();
    let o = tutte(&["replay", "--witness", bundle.to_str().unwrap()], "");
    assert_eq!(code(&o), 1);
    assert_eq!(records(&o)[0]["confirmed"], false);

    let o = tutte(&["find", "tutte"], &gen("petersen"));
    let line = String::from_utf8(o.stdout).unwrap();
    let o = tutte(&["replay", "--witness", "-"], &line);
    assert_eq!(code(&o), 0);
    let mut forged: Value = serde_json::from_str(&line).unwrap();
    // 0-2 is not an edge of the Petersen graph
    forged["certificate"]["witness"]["tree"]["edges"] =
        serde_json::json!([[0, 2], [1, 2], [2, 3], [3, 4], [0, 5], [5, 7], [7, 9], [9, 6], [6, 8]]);
    let o = tutte(&["replay", "--witness", "-"], &forged.to_string());
    assert_eq!(code(&o), 1);
}

#[test]
fn error_exit_codes() {
    assert_eq!(code(&tutte(&["find", "tutte", "--graph", "/no/such/file"], "")), 4);
    assert_eq!(code(&tutte(&["find", "tutte"], "C}}\n")), 2);
    assert_eq!(code(&tutte(&["check", "tree", "--tree", "0-1,1-2"], "C~\n")), 2);
    assert_eq!(code(&tutte(&["check", "tree", "--tree", "0-1;1-2"], "C~\n")), 2);
    assert_eq!(code(&tutte(&["frobnicate"], "")), 64);
    assert_eq!(code(&tutte(&["find"], "")), 64);
    assert_eq!(code(&tutte(&["verify", "--theorem", "T-nothing", "--corpus", "x"], "")), 64);
    assert_eq!(code(&tutte(&["--help"], "")), 0);
}

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn cutrank(args: &[&str]) -> Output {
    cutrank_env(args, &[])
}

fn cutrank_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_cutrank"));
    cmd.args(args).env_remove("CUTRANK_GUARD_NODES").env_remove("CUTRANK_GUARD_FAMILY");
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn complete_graph(dir: &Path, n: usize) -> String {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let path = dir.join(format!("k{n}.json"));
    std::fs::write(&path, serde_json::json!({ "n": n, "edges": edges }).to_string()).unwrap();
    path.to_str().unwrap().to_string()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_graph_is_regular_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let o = cutrank(&["gen-graph", "--n", "6", "--d", "3", "--seed", "1", "--out", s(path)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
    }
    let text = std::fs::read(&a).unwrap();
    assert_eq!(text, std::fs::read(&b).unwrap());
    let graph: Value = serde_json::from_slice(&text).unwrap();
    let edges = graph["edges"].as_array().unwrap();
    assert_eq!(edges.len(), 9);
    for v in 0..6u64 {
        let degree = edges.iter().filter(|e| e[0] == v || e[1] == v).count();
        assert_eq!(degree, 3);
    }
}

#[test]
fn gen_graph_rejects_odd_degree_sum() {
    let o = cutrank(&["gen-graph", "--n", "5", "--d", "3"]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).is_empty());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(code(&cutrank(&["frobnicate"])), 2);
    assert_eq!(code(&cutrank(&["rank"])), 2);
}

#[test]
fn rank_of_cropped_square() {
    let o = cutrank(&["rank", "--cropped-cube", "2", "--mode", "split", "--coeff-bound", "1"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let text = stdout(&o);
    assert!(text.contains("upper 2\n") && text.contains("lower 2\n") && text.contains("rank = 2"), "{text}");
    assert!(text.starts_with("round 0: 4 vertices\nround 1: 1 vertices\nround 2: 0 vertices\n"));
}

#[test]
fn rank_of_cropped_four_cube_with_pairs() {
    let o = cutrank(&["rank", "--cropped-cube", "4", "--mode", "lattice", "--t", "2", "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["lower"], 2);
    assert_eq!(r["balas_upper"], 2);
    assert_eq!(r["upper"], 2);
    assert_eq!(r["agree"], true);
}

#[test]
fn rank_of_triangle_tseitin() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = complete_graph(dir.path(), 3);
    let o = cutrank(&["rank", "--tseitin", &k3, "--mode", "split", "--coeff-bound", "1", "--format", "json"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let upper = r["closure_upper"].as_u64().unwrap();
    assert!(upper <= 3);
    assert_eq!(*r["vertex_counts"].as_array().unwrap().last().unwrap(), 0);
    assert_eq!(code(&o), if r["agree"] == true { 0 } else { 2 });
}

#[test]
fn open_bracket_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let cube = dir.path().join("cube.json");
    let o = cutrank(&["cropped-cube", "--n", "2", "--out", s(&cube)]);
    assert_eq!(code(&o), 0);
    // A bare polytope file comes with no certificate, so there is no lower bound.
    let doc: Value = serde_json::from_slice(&std::fs::read(&cube).unwrap()).unwrap();
    let h = dir.path().join("h.json");
    std::fs::write(&h, doc["h"].to_string()).unwrap();
    let o = cutrank(&["rank", "--polytope", s(&h)]);
    assert_eq!(code(&o), 2);
    assert!(stdout(&o).contains("lower none"));
}

#[test]
fn rank_with_supplied_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let cert = dir.path().join("c.json");
    assert_eq!(code(&cutrank(&["certify", "--cropped-cube", "3", "--out", s(&cert)])), 0);
    let o = cutrank(&["rank", "--cropped-cube", "3", "--certificate", s(&cert)]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("rank = 3"));
}

#[test]
fn certify_k5() {
    let dir = tempfile::tempdir().unwrap();
    let k5 = complete_graph(dir.path(), 5);
    let out = dir.path().join("cert.json");
    let o = cutrank(&["certify", "--graph", &k5, "--t", "1", "--out", s(&out)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let count: usize = stdout(&o)
        .lines()
        .find_map(|l| l.strip_prefix("min_red_count "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(count >= 2);
    assert!(stdout(&o).contains(&format!("rank lower bound {}", count + 1)));
    let o = cutrank(&["verify", s(&out)]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("valid\n"));
}

#[test]
fn certify_rejects_even_graphs() {
    let dir = tempfile::tempdir().unwrap();
    let k4 = complete_graph(dir.path(), 4);
    let o = cutrank(&["certify", "--graph", &k4, "--t", "1"]);
    assert_ne!(code(&o), 0);
    assert!(stderr(&o).contains("odd"));
}

#[test]
fn certify_cropped_cube() {
    let o = cutrank(&["certify", "--cropped-cube", "3", "--t", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stderr(&o).contains("rank lower bound 3"));
    let cert: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(cert["t"], 1);
}

#[test]
fn certify_dot() {
    let o = cutrank(&["certify", "--cropped-cube", "2", "--format", "dot"]);
    assert!(stdout(&o).starts_with("digraph"));
}

#[test]
fn figure_certificate_verifies() {
    let o = cutrank(&["verify", s(&fixture("figure1.json")), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["valid"], true);
    assert_eq!(r["max_red_count"], 2);
}

#[test]
fn tampered_certificate_names_the_node() {
    let dir = tempfile::tempdir().unwrap();
    let mut cert: Value = serde_json::from_slice(&std::fs::read(fixture("figure1.json")).unwrap()).unwrap();
    let root = cert["root"].as_u64().unwrap() as usize;
    cert["nodes"][root]["children"].as_array_mut().unwrap().pop();
    let path = dir.path().join("tampered.json");
    std::fs::write(&path, cert.to_string()).unwrap();
    let o = cutrank(&["verify", s(&path)]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("invalid\n"));
    assert!(stdout(&o).contains(&format!("node {root}: ")), "{}", stdout(&o));
}

#[test]
fn verify_parse_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"t\": 1,").unwrap();
    assert_eq!(code(&cutrank(&["verify", s(&bad)])), 3);
    assert_eq!(code(&cutrank(&["verify", s(&dir.path().join("missing.json"))])), 3);
    // Four-coordinate labels against a three-dimensional polytope.
    assert_eq!(code(&cutrank(&["verify", s(&fixture("figure1.json")), "--cropped-cube", "3"])), 3);
}

#[test]
fn expansion_examples() {
    let dir = tempfile::tempdir().unwrap();
    let o = cutrank(&["expansion", "--graph", &complete_graph(dir.path(), 5), "--t", "1"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).starts_with("c = 3\n"));
    assert!(stdout(&o).contains("bound (t = 1) = 2"));

    let o = cutrank(&["expansion", "--graph", &complete_graph(dir.path(), 2)]);
    assert!(stdout(&o).starts_with("c = 1\n"));

    let o = cutrank(&["expansion", "--graph", &complete_graph(dir.path(), 3), "--t", "1", "--format", "json"]);
    let r: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r["expansion"], "2");
    assert_eq!(r["bound"], 0);
    assert_eq!(r["hypothesis_holds"], false);
    assert!(stderr(&o).contains("WARN"));
}

#[test]
fn outputs_round_trip_through_readers() {
    let dir = tempfile::tempdir().unwrap();
    let k3 = complete_graph(dir.path(), 3);
    let o = cutrank(&["tseitin", "--graph", &k3]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(doc["h"]["dim"], 3);
    assert_eq!(doc["v"]["vertices"].as_array().unwrap().len(), 1);
    let h = dir.path().join("k3h.json");
    std::fs::write(&h, doc["h"].to_string()).unwrap();
    // One split round empties the triangle polytope; the result reads back.
    let o = cutrank(&["closure", "--polytope", s(&h)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let closed: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(closed["v"]["vertices"].as_array().unwrap().is_empty());
    std::fs::write(&h, closed["h"].to_string()).unwrap();
    assert_eq!(code(&cutrank(&["closure", "--polytope", s(&h), "--max-rounds", "0"])), 0);

    let g = dir.path().join("g.txt");
    cutrank(&["gen-graph", "--n", "8", "--d", "3", "--format", "text", "--out", s(&g)]);
    assert!(std::fs::read_to_string(&g).unwrap().starts_with("p edge 8 12"));
    assert_eq!(code(&cutrank(&["tseitin", "--graph", s(&g)])), 0);
}

#[test]
fn exact_rational_output() {
    let o = cutrank(&["cropped-cube", "--n", "2", "--format", "text"]);
    let text = stdout(&o);
    assert!(text.contains("1/2"));
    assert!(!text.contains("0.5"));
}

#[test]
fn config_env_and_flag_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let config = dir.path().join("config.json");
    std::fs::write(&config, r#"{"family": {"mode": "lattice", "t": 2}, "guards": {"max_nodes": 10}, "format": "json"}"#)
        .unwrap();
    let cfg = s(&config);

    // The config's node cap is too small for the cropped 3-cube at t = 1 ...
    let o = cutrank(&["certify", "--cropped-cube", "3", "--t", "1", "--config", cfg]);
    assert_ne!(code(&o), 0);
    // ... the environment raises it ...
    let o = cutrank_env(&["certify", "--cropped-cube", "3", "--t", "1", "--config", cfg], &[("CUTRANK_GUARD_NODES", "1000")]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    // ... and the config's t = 2 applies when no flag is given.
    let o = cutrank_env(&["certify", "--cropped-cube", "4", "--config", cfg], &[("CUTRANK_GUARD_NODES", "1000")]);
    assert!(stderr(&o).contains("rank lower bound 2"), "{}", stderr(&o));

    // Config format json; a flag switches back to text.
    let o = cutrank(&["expansion", "--graph", &complete_graph(dir.path(), 3), "--config", cfg]);
    assert!(stdout(&o).starts_with('{'));
    let o = cutrank(&["expansion", "--graph", &complete_graph(dir.path(), 3), "--config", cfg, "--format", "text"]);
    assert!(stdout(&o).starts_with("c = 2"));

    let o = cutrank_env(&["closure", "--cropped-cube", "3"], &[("CUTRANK_GUARD_FAMILY", "2")]);
    assert_ne!(code(&o), 0);
    assert!(stderr(&o).contains("exceeds the limit 2"), "{}", stderr(&o));
}

#[test]
fn output_is_independent_of_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let g = dir.path().join("g.json");
    cutrank(&["gen-graph", "--n", "8", "--d", "3", "--seed", "5", "--out", s(&g)]);
    let pruned: Value = serde_json::from_slice(&std::fs::read(&g).unwrap()).unwrap();
    // Drop vertex 7 to get an odd graph.
    let edges: Vec<Value> = pruned["edges"].as_array().unwrap().iter().filter(|e| e[0] != 7 && e[1] != 7).cloned().collect();
    std::fs::write(&g, serde_json::json!({"n": 7, "edges": edges}).to_string()).unwrap();
    let run = |threads: &str| {
        let o = cutrank_env(&["certify", "--graph", s(&g)], &[("RAYON_NUM_THREADS", threads)]);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        o.stdout
    };
    assert_eq!(run("1"), run("4"));
    let run = |threads: &str| cutrank_env(&["closure", "--cropped-cube", "3", "--mode", "tbranch", "--t", "2"], &[("RAYON_NUM_THREADS", threads)]).stdout;
    assert_eq!(run("1"), run("4"));
}

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

use polymut::io;
use polymut::polygon::FanoPolytope;

const P2: &str = r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [-1, -1]]}"#;
const A2_POLYGON: &str = r#"{"dim": 2, "vertices": [[-5,-2],[-3,-2],[0,-1],[3,1],[3,2],[0,1],[-4,-1]]}"#;
const DIAMOND: &str = r#"{"dim": 2, "vertices": [[1, 0], [0, 1], [-1, 0], [0, -1]]}"#;
const MARKOV: &str = r#"{"size": 3, "frozen": [], "b": [[0, 3, -3], [-3, 0, 3], [3, -3, 0]]}"#;
const A2: &str = r#"{"size": 2, "frozen": [], "b": [[0, 1], [-1, 0]]}"#;

fn polymut(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polymut")).args(args).output().unwrap()
}

fn input(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn mutate_p2_at_an_edge() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = input(dir.path(), "p2.json", P2);
    let o = polymut(&["mutate", &p2, "--edge", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let q = io::parse_polytope(&stdout(&o)).unwrap();
    let p114 = FanoPolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -4]]).unwrap();
    assert_eq!(q.canonical_vertices(), p114.canonical_vertices());
}

#[test]
fn parse_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = input(dir.path(), "bad.json", r#"{"dim": 2, "vertices": [[1, 0], [0, 1]"#);
    assert_eq!(polymut(&["mutate", &bad, "--edge", "0"]).status.code(), Some(2));
    let float = input(dir.path(), "float.json", r#"{"dim": 2, "vertices": [[1.0, 0], [0, 1], [-1, -1]]}"#);
    assert_eq!(polymut(&["validate", &float]).status.code(), Some(2));
    let not_fano = input(dir.path(), "nf.json", r#"{"dim": 2, "vertices": [[2, 0], [0, 1], [-1, -1]]}"#);
    assert_eq!(polymut(&["validate", &not_fano]).status.code(), Some(2));
    assert_eq!(polymut(&["validate", "/nonexistent/file.json"]).status.code(), Some(2));
}

#[test]
fn identity_region_leaves_the_polytope_alone() {
    let dir = tempfile::tempdir().unwrap();
    let text = r#"{"dim": 2, "vertices": [[-1, 0], [0, 0], [0, 1]]}"#;
    let q = input(dir.path(), "q.json", text);
    let o = polymut(&["mutate", &q, "--piecewise", "--w", "0,1", "--f", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(io::parse_rational_polytope(&stdout(&o)).unwrap(), io::parse_rational_polytope(text).unwrap());
}

#[test]
fn non_convex_mutation_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = input(dir.path(), "p2.json", P2);
    let o = polymut(&["mutate", &p2, "--w", "1,0", "--f", "0,1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("not convex"));
}

#[test]
fn laurent_mutation_and_not_laurent() {
    let dir = tempfile::tempdir().unwrap();
    let w = input(dir.path(), "w.json", r#"{"dim": 2, "terms": [{"exp": [1, 0], "num": 1, "den": 1}, {"exp": [0, 1], "num": 1, "den": 1}]}"#);
    let o = polymut(&["mutate", &w, "--w", "0,1", "--f", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let out = io::parse_laurent(&stdout(&o)).unwrap();
    let want = polymut::laurent::LaurentPolynomial::from_i64(2, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 1)]);
    assert_eq!(out, want);
    let inv = input(dir.path(), "inv.json", r#"{"dim": 2, "terms": [{"exp": [0, -1], "num": 1, "den": 1}]}"#);
    assert_eq!(polymut(&["mutate", &inv, "--w", "0,1", "--f", "1,0"]).status.code(), Some(3));
}

#[test]
fn classify_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [(P2, "infinite", "other"), (A2_POLYGON, "finite", "A2"), (DIAMOND, "infinite", "other")];
    for (i, (text, verdict, ty)) in cases.into_iter().enumerate() {
        let f = input(dir.path(), &format!("{i}.json"), text);
        let o = polymut(&["classify", &f, "--max-nodes", "200"]);
        assert_eq!(o.status.code(), Some(0));
        let r = json(&o);
        assert_eq!(r["verdict"], verdict);
        assert_eq!(r["quiver_type"], ty);
        assert!(r["quiver"]["b"].is_array() && r["singularity_content"]["n"].is_u64());
    }
    let f = input(dir.path(), "a2.json", A2_POLYGON);
    assert_eq!(json(&polymut(&["classify", &f]))["class_size"], 1);
}

#[test]
fn explore_writes_deterministic_files() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = input(dir.path(), "p2.json", P2);
    let run = |name: &str, jobs: &str| {
        let out = dir.path().join(name);
        let o = polymut(&["explore", &p2, "--max-nodes", "50", "--jobs", jobs, "--format", "svg", "--out", out.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(3), "cutoff reached");
        out
    };
    let (a, b) = (run("a", "1"), run("b", "4"));
    let read = |d: &PathBuf, f: &str| fs::read_to_string(d.join(f)).unwrap();
    assert_eq!(read(&a, "graph.json"), read(&b, "graph.json"));
    assert_eq!(read(&a, "graph.dot"), read(&b, "graph.dot"));

    let text = read(&a, "graph.json");
    let g = io::parse_graph(&text).unwrap();
    assert_eq!(io::graph_to_json(&g), text);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["status"], "exceeded");
    for (node, p) in v["nodes"].as_array().unwrap().iter().zip(&g.nodes) {
        let id = io::node_id(p);
        assert_eq!(node["id"], id.as_str());
        if p.max_abs_coord() < 200.into() {
            assert!(a.join("nodes").join(format!("{id}.svg")).exists());
        }
    }
    assert!(read(&a, "graph.dot").starts_with("graph mutations {"));
}

#[test]
fn explore_a2_polygon_has_one_node() {
    let dir = tempfile::tempdir().unwrap();
    let f = input(dir.path(), "a2.json", A2_POLYGON);
    let o = polymut(&["explore", &f]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["status"], "complete");
    assert_eq!(v["nodes"].as_array().unwrap().len(), 1);
}

#[test]
fn quiver_commands() {
    let dir = tempfile::tempdir().unwrap();
    let m = input(dir.path(), "markov.json", MARKOV);
    let o = polymut(&["quiver", "mutate", &m, "--at", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let q = io::parse_quiver(&stdout(&o)).unwrap();
    let mut mults: Vec<i64> = vec![q.b(0, 1).abs(), q.b(1, 2).abs(), q.b(0, 2).abs()];
    mults.sort();
    assert_eq!(mults, [3, 3, 6]);
    let ball = json(&polymut(&["quiver", "class", &m, "--depth", "2"]));
    assert_eq!(ball["members"].as_array().unwrap().len(), 4);
    let a2 = input(dir.path(), "a2.json", A2);
    assert_eq!(stdout(&polymut(&["quiver", "type", &a2])).trim(), "A2");
    assert_eq!(stdout(&polymut(&["quiver", "type", &m])).trim(), "other");
    let p2 = input(dir.path(), "p2.json", P2);
    let from = io::parse_quiver(&stdout(&polymut(&["quiver", "from-polygon", &p2]))).unwrap();
    assert_eq!(from.size(), 3);
    assert_eq!(polymut(&["quiver", "mutate", &m, "--at", "7"]).status.code(), Some(2));
}

#[test]
fn cluster_graph_of_a2() {
    let dir = tempfile::tempdir().unwrap();
    let a2 = input(dir.path(), "a2.json", A2);
    for mode in ["unit", "symbolic"] {
        let v = json(&polymut(&["cluster", "graph", &a2, "--frozen-mode", mode]));
        assert_eq!(v["status"], "complete");
        assert_eq!(v["clusters"].as_array().unwrap().len(), 5);
        assert_eq!(v["edges"].as_array().unwrap().len(), 5);
    }
    let dot = stdout(&polymut(&["cluster", "graph", &a2, "--format", "dot"]));
    assert_eq!(dot.matches(" -- ").count(), 5);
    let vars = json(&polymut(&["cluster", "mutate", &a2, "--sequence", "0,1,0,1,0"]));
    assert_eq!(vars.as_array().unwrap().len(), 2);
}

#[test]
fn highdim_commands() {
    let o = polymut(&["highdim", "pentagon"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["closed_at"], 5);
    let polys: Vec<_> = v["polytopes"].as_array().unwrap().iter().map(|p| io::parse_rational_polytope(&p.to_string()).unwrap()).collect();
    assert_eq!(polys.len(), 6);
    let distinct: std::collections::BTreeSet<_> = polys[..5].iter().map(|p| format!("{:?}", polymut::highdim::m_side_form(p))).collect();
    assert_eq!(distinct.len(), 5);
    assert_eq!(polymut(&["highdim", "pentagon", "--rule", "sign-coherent"]).status.code(), Some(3));

    let dir = tempfile::tempdir().unwrap();
    let m = input(dir.path(), "markov.json", MARKOV);
    let o = polymut(&["highdim", "from-seed", &m, "--kernel", "1,1,1"]);
    assert_eq!(o.status.code(), Some(0));
    let coll = input(dir.path(), "coll.json", &stdout(&o));
    let back = io::parse_quiver(&stdout(&polymut(&["highdim", "check", &coll]))).unwrap();
    assert_eq!(back, io::parse_quiver(MARKOV).unwrap());
    let c = polymut(&["highdim", "commute", &m, "--at", "1", "--u", "2,-1", "--kernel", "1,1,1"]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(polymut(&["highdim", "from-seed", &m, "--kernel", "1,0,0"]).status.code(), Some(2));
}

#[test]
fn flags_are_checked() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = input(dir.path(), "p2.json", P2);
    assert_eq!(polymut(&["validate", &p2, "--max-nodes", "0"]).status.code(), Some(2));
    assert_eq!(polymut(&["validate", &p2, "--max-coord", "-5"]).status.code(), Some(2));
    assert_eq!(polymut(&["validate", &p2, "--depth", "0"]).status.code(), Some(2));
    assert_eq!(polymut(&["validate", &p2, "--no-such-flag"]).status.code(), Some(2));
    let o = polymut(&["validate", &p2]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(io::parse_polytope(&stdout(&o)).unwrap(), io::parse_polytope(P2).unwrap());
}

#[test]
fn output_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let p2 = input(dir.path(), "p2.json", P2);
    let out = dir.path().join("sub").join("out.json");
    let o = polymut(&["mutate", &p2, "--random-walk", "5", "--seed", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let first = fs::read_to_string(&out).unwrap();
    polymut(&["mutate", &p2, "--random-walk", "5", "--seed", "3", "-o", out.to_str().unwrap()]);
    assert_eq!(fs::read_to_string(&out).unwrap(), first);
    io::parse_polytope(&first).unwrap();
}

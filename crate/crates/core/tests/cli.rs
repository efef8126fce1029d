use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use fermicode::encoder::Encoding;
use fermicode::fermion::FermionOperator;
use fermicode::graph::SystemGraph;
use fermicode::pauli::PauliSum;
use tempfile::TempDir;

fn fermicode(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fermicode"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(dir: &Path, args: &[&str]) -> String {
    let out = fermicode(dir, args);
    assert!(
        out.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn read(dir: &Path, name: &str) -> String {
    fs::read_to_string(dir.join(name)).unwrap()
}

#[test]
fn encode_chain() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "lattice", "--lattice", "linear", "--dims", "4", "--boundary", "periodic", "--out", "chain4.graph"]);
    let msg = ok(d, &["encode", "--graph", "chain4.graph", "--basis", "jw", "--out", "enc.enc"]);
    assert_eq!(msg.trim(), "qubits 4, edge operators 4, vertex operators 4, stabilizers 1");
    let enc = Encoding::from_json(&read(d, "enc.enc")).unwrap();
    assert_eq!(enc.n_qubits(), 4);
    assert_eq!(enc.stabilizers().len(), 1);
    let stats = ok(d, &["stats", "--encoding", "enc.enc"]);
    assert!(stats.contains("qubits: 4"));
    assert!(stats.contains("stabilizers: 1"));
}

#[test]
fn generated_files_round_trip() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let graphs: &[&[&str]] = &[
        &["gen", "lattice", "--lattice", "square", "--dims", "3", "--out", "g.graph"],
        &["gen", "syk", "--geometry", "ternary-mera", "--n", "27", "--out", "g.graph"],
        &["gen", "blocked", "--side", "4", "--block", "2", "2", "--boundary", "periodic", "--out", "g.graph"],
        &["gen", "heavy-hex", "--out", "g.graph"],
    ];
    for args in graphs {
        ok(d, args);
        let text = read(d, "g.graph");
        let g = SystemGraph::from_json(&text).unwrap();
        assert_eq!(g.to_json_pretty() + "\n", text);
    }
    ok(d, &["gen", "model", "--model", "square-nn-diag", "--dims", "3", "--t", "1", "--t-diag", "0.5", "--u", "2", "--out", "h.fermi"]);
    let text = read(d, "h.fermi");
    let f = FermionOperator::from_text(&text, None).unwrap();
    assert_eq!(f.to_text(), text);
    ok(d, &["gen", "interaction", "--hamiltonian", "h.fermi", "--out", "ig.graph"]);
    let ig = SystemGraph::from_json(&read(d, "ig.graph")).unwrap();
    assert_eq!(ig.degree(4), 8);
    ok(d, &["transform", "--hamiltonian", "h.fermi", "--out", "h.pauli"]);
    let text = read(d, "h.pauli");
    let h = PauliSum::from_text(&text, None).unwrap();
    assert_eq!(h.to_text(), text);
}

#[test]
fn outputs_are_byte_identical() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let runs: &[&[&str]] = &[
        &["gen", "syk-model", "--n", "6", "--seed", "9"],
        &["gen", "syk", "--geometry", "hyperbolic", "--n", "16"],
        &["bench", "--geometries", "star,ternary-tree", "--n", "8,12", "--seed", "3"],
    ];
    for args in runs {
        assert_eq!(ok(d, args), ok(d, args));
    }
    ok(d, &["gen", "syk-model", "--n", "6", "--seed", "9", "--out", "s.fermi"]);
    ok(d, &["gen", "syk", "--geometry", "star", "--n", "6", "--out", "star.graph"]);
    let t = ["transform", "--hamiltonian", "s.fermi", "--graph", "star.graph", "--basis", "fenwick"];
    let a = ok(d, &t);
    assert_eq!(a, ok(d, &t));
    // a different seed changes the couplings
    assert_ne!(ok(d, &["gen", "syk-model", "--n", "6", "--seed", "10"]), ok(d, &["gen", "syk-model", "--n", "6", "--seed", "9"]));
}

#[test]
fn bench_rows() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["bench", "--geometries", "linear,star", "--n", "8,16,32", "--seed", "1", "--out", "r.csv"]);
    let csv = read(d, "r.csv");
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "geometry,n_modes,qubits,max_weight,total_weight,mean_weight,terms,seconds");
    assert_eq!(lines.len(), 7);
    let parallel = ok(d, &["bench", "--geometries", "linear,star", "--n", "8,16,32", "--seed", "1", "--jobs", "3"]);
    assert_eq!(parallel, csv);
}

#[test]
fn verify_triangle_dense() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let triangle = r#"{"vertices": [
        {"id": 0, "kind": "physical", "ports": [1, 2]},
        {"id": 1, "kind": "physical", "ports": [0, 2]},
        {"id": 2, "kind": "physical", "ports": [1, 0]}],
        "edges": [[0, 1], [1, 2], [0, 2]], "meta": {"generator": "triangle", "params": {}}}"#;
    fs::write(d.join("triangle.graph"), triangle).unwrap();
    let out = ok(d, &["verify", "--graph", "triangle.graph", "--basis", "jw", "--dense"]);
    assert!(out.contains("result: pass"), "{out}");
    let sym = ok(d, &["verify", "--graph", "triangle.graph", "--basis", "ternary"]);
    assert!(sym.contains("result: pass"));
}

#[test]
fn explicit_routes_and_overrides() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    ok(d, &["gen", "lattice", "--lattice", "square", "--dims", "2,3", "--out", "g.graph"]);
    fs::write(d.join("h.fermi"), "(1,0) a+1 a-5\n(1,0) a+5 a-1\n").unwrap();
    let auto = ok(d, &["transform", "--hamiltonian", "h.fermi", "--graph", "g.graph"]);
    let route = |path: &str| {
        fs::write(d.join("paths.txt"), format!("# one route per line\n{path}\n")).unwrap();
        ok(d, &["transform", "--hamiltonian", "h.fermi", "--graph", "g.graph", "--route", "explicit:paths.txt"])
    };
    let (below, above) = (route("0 3 4"), route("0 1 4"));
    assert_ne!(below, above);
    assert!(auto == below || auto == above);
    fs::write(d.join("yx.json"), r#"{"0": ["Y1", "X1"]}"#).unwrap();
    let over = ok(d, &["encode", "--graph", "g.graph", "--basis-overrides", "yx.json"]);
    let enc = Encoding::from_json(&over).unwrap();
    assert_eq!(enc.basis(0).ops[0].to_string(), "(1,0) Y1");
}

#[test]
fn exit_codes() {
    let tmp = TempDir::new().unwrap();
    let d = tmp.path();
    let code = |args: &[&str]| fermicode(d, args).status.code().unwrap();
    assert_eq!(code(&["encode", "--graph", "missing.graph"]), 2);
    fs::write(d.join("bad.graph"), "not json").unwrap();
    let out = fermicode(d, &["encode", "--graph", "bad.graph"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[parse]"));
    assert_eq!(code(&["frobnicate"]), 2);

    ok(d, &["gen", "lattice", "--lattice", "square", "--dims", "4", "--out", "sq.graph"]);
    let out = fermicode(d, &["encode", "--graph", "sq.graph", "--max-qubits", "10"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[resource]"));
    // dense verification is capped at 12 qubits by default
    assert_eq!(code(&["verify", "--graph", "sq.graph", "--dense"]), 5);

    fs::write(d.join("odd.fermi"), "(1,0) a+1\n").unwrap();
    let out = fermicode(d, &["transform", "--hamiltonian", "odd.fermi", "--graph", "sq.graph"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[parity]"));

    fs::write(d.join("far.fermi"), "(1,0) a+1 a-16\n(1,0) a+16 a-1\n").unwrap();
    fs::write(d.join("paths.txt"), "0 5\n").unwrap();
    let out = fermicode(d, &["transform", "--hamiltonian", "far.fermi", "--graph", "sq.graph", "--route", "explicit:paths.txt"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).starts_with("error[route]"));
}

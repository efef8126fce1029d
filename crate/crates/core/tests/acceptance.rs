//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line and
//! then fails if the criterion does not hold.

mod common;

use std::time::{Duration, Instant};

use common::{c, max_diff, random_connected_graph, random_path};
use fermicode::analytics::{
    dense_oracle_check, loglog_fit, loglog_slope, sweep_syk_geometries, weight_stats, Codespace, Field, SweepConfig,
};
use fermicode::basis::{basis_fenwick, basis_ternary_tree, BasisChoice, BasisKind};
use fermicode::encoder::{build_encoding, chain_yx_choice, Encoding, Membership, Route};
use fermicode::fermion::{
    build_lattice_model, build_syk2, transform_hamiltonian, Factor, FermionOperator, LatticeModel, RoutingPolicy,
    SykCouplings,
};
use fermicode::graph::{
    gen_blocked_square, gen_heavy_hex, gen_lattice, gen_syk_geometry, half_degree_count, qubit_count, Boundary,
    GeometryParams, GraphMeta, LatticeKind, SykGeometry, SystemGraph, VertexKind,
};
use fermicode::pauli::{Pauli, PauliString, PauliSum};
use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: usize, title: &str, failures: &[String], elapsed: Duration, limit: Duration) {
    let mut failures = failures.to_vec();
    if elapsed > limit {
        failures.push(format!("took {elapsed:.2?}, limit {limit:.0?}"));
    }
    let status = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{status} criterion {n}: {title} ({elapsed:.2?})");
    for f in &failures {
        println!("    {f}");
    }
    assert!(failures.is_empty(), "criterion {n} failed:\n{}", failures.join("\n"));
}

fn all_z(n: usize) -> PauliString {
    PauliString::from_letters(n, &(0..n).map(|q| (q, Pauli::Z)).collect::<Vec<_>>())
}

/// `i^phase X^x Z^z` times a state vector, straight from the single-qubit matrices.
fn apply(p: &PauliString, v: &DVector<Complex64>) -> DVector<Complex64> {
    let n = p.n_qubits();
    let (xm, zm) = (0..n).fold((0usize, 0usize), |(x, z), q| {
        (x | usize::from(p.x_bit(q)) << q, z | usize::from(p.z_bit(q)) << q)
    });
    let phase = c(0.0, 1.0).powu(p.phase_exp() as u32);
    let mut out = DVector::zeros(v.len());
    for col in 0..v.len() {
        let sign = if (col & zm).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        out[col ^ xm] += v[col] * phase * sign;
    }
    out
}

#[test]
fn criterion_1_xy_chain() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let (t, u) = (1.3, 0.7);
    for n in 4..=10 {
        let g = gen_lattice(LatticeKind::Linear, &[n], Boundary::Periodic).unwrap();
        let enc = build_encoding(&g, &chain_yx_choice(&g).unwrap()).unwrap();
        let h = build_lattice_model(LatticeModel::Chain, &[n], t, 0.0, u, Boundary::Periodic).unwrap();
        let got = transform_hamiltonian(&h, &enc, &RoutingPolicy::Auto).unwrap();
        let mut want = PauliSum::new(n);
        for j in 0..n {
            let k = (j + 1) % n;
            for l in [Pauli::X, Pauli::Y] {
                want.accumulate(c(t / 2.0, 0.0), &PauliString::from_letters(n, &[(j, l), (k, l)])).unwrap();
            }
            want.accumulate(c(u / 2.0, 0.0), &PauliString::identity(n)).unwrap();
            want.accumulate(c(-u / 2.0, 0.0), &PauliString::z(n, j)).unwrap();
        }
        if !got.approx_eq(&want, 1e-12) {
            bad.push(format!("N={n}: compiled chain differs\n{}", got.to_text()));
        }
        // sign from the dense product i^N Ã_01 Ã_12 ... Ã_{N-1,0} applied to a random vector
        let dim = 1usize << n;
        let v0 = DVector::from_fn(dim, |i, _| c((i as f64 * 0.37).sin(), (i as f64 * 0.11).cos()));
        let mut v = v0.clone() * c(0.0, 1.0).powu(n as u32);
        for j in (0..n).rev() {
            v = apply(&enc.edge_operator(j, (j + 1) % n).unwrap(), &v);
        }
        let z = all_z(n);
        let zv = apply(&z, &v0);
        let oracle = if (&v - &zv).camax() < 1e-12 {
            z
        } else if (&v + &zv).camax() < 1e-12 {
            z.negate()
        } else {
            bad.push(format!("N={n}: loop product is not ±Z...Z"));
            continue;
        };
        if enc.stabilizers() != [oracle.clone()] {
            bad.push(format!("N={n}: stabilizers {:?}, want [{oracle}]", enc.stabilizers()));
        }
    }
    report(1, "XY chain recovery on C_4..C_10", &bad, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_2_jordan_wigner_strings() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let len = 12;
    let g = gen_lattice(LatticeKind::Linear, &[len], Boundary::Periodic).unwrap();
    let enc = build_encoding(&g, &chain_yx_choice(&g).unwrap()).unwrap();
    for j in [0, 1] {
        for n in 1..=10 {
            let verts: Vec<usize> = (j..=j + n).collect();
            let r = Route::from_vertices(&g, &verts).unwrap();
            let mut letters = vec![(j, Pauli::X)];
            letters.extend((j + 1..j + n).map(|q| (q, Pauli::Z)));
            letters.push((j + n, Pauli::Y));
            // (-i)^{n-1} = i^{3(n-1)}
            let want = PauliString::from_letters(len, &letters).times_i((3 * (n - 1) % 4) as u8);
            let got = enc.path_operator_raw(&r).unwrap();
            if got != want {
                bad.push(format!("j={j} n={n}: got {got}, want {want}"));
            }
        }
    }
    report(2, "generalized Jordan-Wigner strings, n = 1..10", &bad, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_3_qubit_counts() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut expect = |what: String, got: usize, want: usize| {
        if got != want {
            bad.push(format!("{what}: got {got}, want {want}"));
        }
    };
    let p = GeometryParams::default();
    for n in (4..=64).step_by(2) {
        let g = gen_syk_geometry(SykGeometry::Complete, n, p).unwrap();
        expect(format!("complete N={n}"), half_degree_count(&g), n * (n - 1) / 2);
    }
    for n in 4..=64 {
        let g = gen_syk_geometry(SykGeometry::Linear, n, p).unwrap();
        expect(format!("linear N={n}"), qubit_count(&g), n);
        let g = gen_syk_geometry(SykGeometry::Star, n, p).unwrap();
        expect(format!("star N={n}"), qubit_count(&g), (3 * n).div_ceil(2));
    }
    for (side, br, bc) in [(4, 2, 2), (6, 2, 3), (6, 3, 3), (8, 2, 4), (8, 4, 4), (12, 3, 4)] {
        let (nr, nc) = (side / br, side / bc);
        let b = nr * nc;
        let g = gen_blocked_square(side, br, bc, Boundary::Periodic).unwrap();
        expect(format!("blocked periodic L={side} {br}x{bc}"), qubit_count(&g), side * side + 2 * b);
        // open boundary: a head on the rim has one or two fewer coarse edges
        // and so one qubit fewer
        let rim = b - nr.saturating_sub(2) * nc.saturating_sub(2);
        let g = gen_blocked_square(side, br, bc, Boundary::Open).unwrap();
        expect(format!("blocked open L={side} {br}x{bc}"), qubit_count(&g), side * side + 2 * b - rim);
    }
    let (hh, _) = gen_heavy_hex().unwrap();
    expect("heavy-hex modes".into(), hh.physical_vertices().len(), 49);
    expect("heavy-hex qubits".into(), qubit_count(&hh), 65);
    report(3, "qubit-count formulas", &bad, start.elapsed(), Duration::from_secs(1));
}

#[test]
fn criterion_4_scaling() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let ns = [16, 24, 32, 48, 64, 96];
    let cfg = SweepConfig::default();
    let geoms = [
        SykGeometry::Linear,
        SykGeometry::Star,
        SykGeometry::TernaryTree,
        SykGeometry::TernaryMera,
        SykGeometry::Hyperbolic46,
    ];
    let recs = sweep_syk_geometries(&geoms, &ns, &cfg).unwrap();
    for kind in geoms {
        let rows: Vec<_> = recs.iter().filter(|r| r.geometry == kind).cloned().collect();
        let slope = loglog_slope(&rows, Field::TotalWeight).unwrap().slope;
        let (lo, hi) = if kind == SykGeometry::Linear { (2.7, 3.3) } else { (2.0, 2.6) };
        println!("    {} total-weight slope {slope:.3}", kind.name());
        if !(lo..=hi).contains(&slope) {
            bad.push(format!("{}: slope {slope:.3} outside [{lo}, {hi}]", kind.name()));
        }
    }
    let pts: Vec<(f64, f64)> = ns
        .iter()
        .map(|&n| {
            let g = gen_syk_geometry(SykGeometry::Complete, n, cfg.params).unwrap();
            (n as f64, half_degree_count(&g) as f64)
        })
        .collect();
    let slope = loglog_fit(&pts).unwrap().slope;
    println!("    complete qubit slope {slope:.3}");
    if (slope - 2.0).abs() > 0.05 {
        bad.push(format!("complete: qubit slope {slope:.3}"));
    }
    report(4, "SYK q=2 scaling exponents", &bad, start.elapsed(), Duration::from_secs(600));
}

#[test]
fn criterion_5_algebra_suite() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut checked = 0;
    for seed in 0..50 {
        let g = random_connected_graph(seed, 10, 20);
        for kind in BasisKind::ALL {
            let enc = build_encoding(&g, &BasisChoice::uniform(kind)).unwrap();
            let rep = enc.check_algebra();
            checked += rep.checked;
            for v in rep.violations {
                bad.push(format!("seed {seed} {}: {v}", kind.name()));
            }
        }
    }
    println!("    {checked} relations checked");
    report(5, "encoding algebra on 50 random graphs x 3 bases", &bad, start.elapsed(), Duration::from_secs(60));
}

/// SYK q=2 couplings plus a density-density term on every edge.
fn oracle_hamiltonian(g: &SystemGraph, seed: u64) -> FermionOperator {
    let modes = g.physical_vertices();
    let mut h = build_syk2(&SykCouplings::gaussian(modes.len(), seed)).unwrap();
    for &(a, b) in g.edges() {
        if let (Some(i), Some(j)) = (modes.iter().position(|&v| v == a), modes.iter().position(|&v| v == b)) {
            h.add_term(
                c(0.4, 0.0),
                vec![Factor::Create(i), Factor::Annihilate(i), Factor::Create(j), Factor::Annihilate(j)],
            )
            .unwrap();
        }
    }
    h
}

#[test]
fn criterion_6_dense_spectra() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let mut cases: Vec<(String, SystemGraph)> = (2..=4)
        .map(|n| (format!("open chain N={n}"), gen_lattice(LatticeKind::Linear, &[n], Boundary::Open).unwrap()))
        .collect();
    cases.push(("C_4".into(), gen_lattice(LatticeKind::Linear, &[4], Boundary::Periodic).unwrap()));
    let tri = SystemGraph::from_edges(vec![VertexKind::Physical; 3], &[(0, 1), (1, 2), (0, 2)], GraphMeta::new("triangle"));
    cases.push(("triangle".into(), tri.unwrap()));
    cases.push(("star N=4".into(), gen_syk_geometry(SykGeometry::Star, 4, GeometryParams::default()).unwrap()));
    cases.push(("2x2 torus".into(), gen_lattice(LatticeKind::Square, &[2], Boundary::Periodic).unwrap()));
    for (i, (name, g)) in cases.iter().enumerate() {
        let h = oracle_hamiltonian(g, 100 + i as u64);
        for kind in BasisKind::ALL {
            let enc = build_encoding(g, &BasisChoice::uniform(kind)).unwrap();
            let rep = dense_oracle_check(&h, &enc, 1e-9, 12).unwrap();
            if !rep.passed {
                bad.push(format!("{name} {}:\n{rep}", kind.name()));
            }
        }
    }
    report(6, "dense spectrum equivalence", &bad, start.elapsed(), Duration::from_secs(120));
}

fn max_weight(h: &FermionOperator, enc: &Encoding) -> usize {
    weight_stats(&transform_hamiltonian(h, enc, &RoutingPolicy::Auto).unwrap()).max_term_weight
}

#[test]
fn criterion_7_omitting_diagonals() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let l = 4;
    let jw = BasisChoice::uniform(BasisKind::Jw);
    let sparse = gen_lattice(LatticeKind::Square, &[l], Boundary::Open).unwrap();
    let dense = gen_lattice(LatticeKind::SquareDiagonal, &[l], Boundary::Open).unwrap();
    let on_sparse = build_encoding(&sparse, &jw).unwrap();
    let on_dense = build_encoding(&dense, &jw).unwrap();
    let model = |t: f64, t_diag: f64| build_lattice_model(LatticeModel::SquareNnDiag, &[l], t, t_diag, 0.0, Boundary::Open).unwrap();

    let diag = model(0.0, 1.0);
    let (routed, direct) = (max_weight(&diag, &on_sparse), max_weight(&diag, &on_dense));
    println!("    diagonal couplings: {routed} routed vs {direct} direct");
    if routed >= direct {
        bad.push(format!("diagonal couplings: {routed} on the degree-4 graph vs {direct} on the degree-8 graph"));
    }
    let nn = model(1.0, 0.0);
    let (a, b) = (max_weight(&nn, &on_sparse), max_weight(&nn, &on_dense));
    println!("    nearest-neighbour couplings: {a} vs {b}");
    if a >= b {
        bad.push(format!("nearest-neighbour couplings: {a} vs {b}"));
    }
    let vertex_max = |enc: &Encoding| (0..l * l).map(|j| enc.vertex_operator(j).unwrap().weight()).max().unwrap();
    let (a, b) = (vertex_max(&on_sparse), vertex_max(&on_dense));
    println!("    vertex operators: {a} vs {b}");
    if a >= b {
        bad.push(format!("vertex operators: {a} vs {b}"));
    }
    report(7, "omitting diagonal edges lowers Pauli weight", &bad, start.elapsed(), Duration::from_secs(10));
}

#[test]
fn criterion_8_path_independence() {
    let start = Instant::now();
    let mut bad = Vec::new();
    let p = GeometryParams::default();
    let graphs = [
        gen_lattice(LatticeKind::Square, &[2, 3], Boundary::Open).unwrap(),
        gen_lattice(LatticeKind::Square, &[4], Boundary::Periodic).unwrap(),
        gen_syk_geometry(SykGeometry::TernaryMera, 9, p).unwrap(),
        gen_syk_geometry(SykGeometry::TernaryMera, 27, p).unwrap(),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let (mut pairs, mut dense_checks) = (0, 0);
    for (gi, g) in graphs.iter().enumerate() {
        let kind = BasisKind::ALL[gi % 3];
        let enc = build_encoding(g, &BasisChoice::uniform(kind)).unwrap();
        let cs = (enc.n_qubits() <= 12).then(|| Codespace::new(enc.n_qubits(), enc.stabilizers(), 12).unwrap());
        let mut found = 0;
        let mut tries = 0;
        while found < 25 && tries < 10_000 {
            tries += 1;
            let j = rng.random_range(0..g.n_vertices());
            let k = rng.random_range(0..g.n_vertices());
            if j == k {
                continue;
            }
            let first = enc.route(j, k).unwrap();
            let Some(second) = (0..20).filter_map(|_| random_path(g, j, k, None, &mut rng)).find(|r| r.edges != first.edges)
            else {
                continue;
            };
            found += 1;
            let a = enc.path_edge_operator(j, k, Some(&first)).unwrap();
            let b = enc.path_edge_operator(j, k, Some(&second)).unwrap();
            let m = enc.stabilizer_membership(&(&a * &b));
            if m != Membership::InGroup {
                bad.push(format!("graph {gi} ({j},{k}): routes {:?} / {:?} give {m:?}", first.vertices, second.vertices));
            }
            if let Some(cs) = &cs {
                dense_checks += 1;
                let d = max_diff(&cs.restrict_string(&a), &cs.restrict_string(&b));
                if d > 1e-9 {
                    bad.push(format!("graph {gi} ({j},{k}): codespace images differ by {d:e}"));
                }
            }
        }
        pairs += found;
    }
    println!("    {pairs} endpoint pairs, {dense_checks} checked densely");
    if pairs != 100 {
        bad.push(format!("only {pairs} pairs with two distinct routes"));
    }
    report(8, "path independence on lattice and MERA graphs", &bad, start.elapsed(), Duration::from_secs(120));
}

#[test]
fn criterion_9_basis_weight_bounds() {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=32usize {
        let log2 = (usize::BITS - 1 - n.leading_zeros()) as usize;
        let mut log3 = 0;
        while 3usize.pow(log3) < 2 * n + 1 {
            log3 += 1;
        }
        for d in [2 * n - 1, 2 * n] {
            let f = basis_fenwick(d).unwrap().max_weight();
            if f > log2 + 1 {
                bad.push(format!("fenwick n={n} d={d}: weight {f} > {}", log2 + 1));
            }
            let t = basis_ternary_tree(d).unwrap().max_weight();
            if t > log3 as usize {
                bad.push(format!("ternary n={n} d={d}: weight {t} > {log3}"));
            }
        }
    }
    report(9, "Fenwick and ternary-tree weight bounds", &bad, start.elapsed(), Duration::from_secs(1));
}

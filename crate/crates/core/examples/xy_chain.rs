//! A hopping chain on a ring compiles to the XY model with a single loop stabilizer.

use fermicode::encoder::{build_encoding, chain_yx_choice};
use fermicode::fermion::{build_lattice_model, transform_hamiltonian, LatticeModel, RoutingPolicy};
use fermicode::graph::{gen_lattice, Boundary, LatticeKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 6;
    let g = gen_lattice(LatticeKind::Linear, &[n], Boundary::Periodic)?;
    let enc = build_encoding(&g, &chain_yx_choice(&g)?)?;
    let h = build_lattice_model(LatticeModel::Chain, &[n], 1.0, 0.0, 0.5, Boundary::Periodic)?;
    print!("{}", transform_hamiltonian(&h, &enc, &RoutingPolicy::Auto)?.to_text());
    for s in enc.stabilizers() {
        println!("stabilizer: {s}");
    }
    Ok(())
}

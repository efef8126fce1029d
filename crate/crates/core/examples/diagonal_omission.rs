//! Diagonal hopping on a 4x4 lattice, encoded directly on the king's graph or
//! routed through the square lattice.

use fermicode::analytics::weight_stats;
use fermicode::basis::{BasisChoice, BasisKind};
use fermicode::encoder::build_encoding;
use fermicode::fermion::{build_lattice_model, transform_hamiltonian, LatticeModel, RoutingPolicy};
use fermicode::graph::{gen_lattice, qubit_count, Boundary, LatticeKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let l = 4;
    let h = build_lattice_model(LatticeModel::SquareNnDiag, &[l], 1.0, 0.5, 2.0, Boundary::Open)?;
    for kind in BasisKind::ALL {
        for lattice in [LatticeKind::SquareDiagonal, LatticeKind::Square] {
            let g = gen_lattice(lattice, &[l], Boundary::Open)?;
            let enc = build_encoding(&g, &BasisChoice::uniform(kind))?;
            let s = weight_stats(&transform_hamiltonian(&h, &enc, &RoutingPolicy::Auto)?);
            println!(
                "{:<8} {:<16} qubits {:>3}  max weight {:>2}  total {:>4}  stabilizers {}",
                kind.name(),
                lattice.name(),
                qubit_count(&g),
                s.max_term_weight,
                s.total_weight,
                enc.stabilizers().len()
            );
        }
    }
    Ok(())
}

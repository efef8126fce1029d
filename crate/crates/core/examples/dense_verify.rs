//! Check an encoded Hamiltonian against exact diagonalization on a 2x2 torus.

use fermicode::analytics::dense_oracle_check;
use fermicode::basis::{BasisChoice, BasisKind};
use fermicode::encoder::build_encoding;
use fermicode::fermion::{build_syk2, SykCouplings};
use fermicode::graph::{gen_lattice, Boundary, LatticeKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_lattice(LatticeKind::Square, &[2], Boundary::Periodic)?;
    let h = build_syk2(&SykCouplings::gaussian(g.n_vertices(), 7))?;
    for kind in BasisKind::ALL {
        let enc = build_encoding(&g, &BasisChoice::uniform(kind))?;
        println!("== {}", kind.name());
        println!("{}", dense_oracle_check(&h, &enc, 1e-9, 12)?);
    }
    Ok(())
}

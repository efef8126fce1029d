//! Products of edge operators along a ring are Jordan-Wigner strings.

use fermicode::encoder::{build_encoding, chain_yx_choice, Route};
use fermicode::graph::{gen_lattice, Boundary, LatticeKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g = gen_lattice(LatticeKind::Linear, &[10], Boundary::Periodic)?;
    let enc = build_encoding(&g, &chain_yx_choice(&g)?)?;
    for n in 1..8 {
        let verts: Vec<usize> = (0..=n).collect();
        let r = Route::from_vertices(&g, &verts)?;
        println!("raw {:<36} A(1,{}) = {}", enc.path_operator_raw(&r)?.to_string(), n + 1, enc.path_operator(&r)?);
    }
    Ok(())
}

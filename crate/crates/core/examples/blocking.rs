//! Qubit cost of blocking a square lattice into chains.

use fermicode::graph::{gen_blocked_square, gen_lattice, qubit_count, Boundary, LatticeKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let side = 8;
    let full = gen_lattice(LatticeKind::Square, &[side], Boundary::Periodic)?;
    println!("unblocked {side}x{side}: {} qubits", qubit_count(&full));
    for (br, bc) in [(2, 2), (2, 4), (4, 4), (8, 8)] {
        for boundary in [Boundary::Periodic, Boundary::Open] {
            let Ok(g) = gen_blocked_square(side, br, bc, boundary) else {
                continue;
            };
            let b = (side / br) * (side / bc);
            println!(
                "{br}x{bc} blocks, {boundary:?}: b = {b}, qubits {} (L^2 + 2b = {})",
                qubit_count(&g),
                side * side + 2 * b
            );
        }
    }
    Ok(())
}

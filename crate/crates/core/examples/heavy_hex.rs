//! Square-lattice fermions on a 65-qubit heavy-hexagon device.

use fermicode::basis::{BasisChoice, BasisKind};
use fermicode::encoder::build_encoding;
use fermicode::graph::{gen_heavy_hex, qubit_count};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, layout) = gen_heavy_hex()?;
    println!("{} modes on {} qubits, {} couplings", g.n_vertices(), qubit_count(&g), g.n_edges());
    let enc = build_encoding(&g, &BasisChoice::uniform(BasisKind::Jw))?;
    let report = enc.check_algebra();
    println!("{} stabilizers, algebra ok: {}", enc.stabilizers().len(), report.is_ok());
    let worst = (0..g.n_edges()).map(|e| enc.edge_op(e).weight()).max().unwrap_or(0);
    println!("heaviest edge operator: weight {worst}");
    for (v, group) in layout.groups.iter().enumerate().filter(|(_, grp)| grp.len() == 2).take(5) {
        println!("mode {v} (degree {}) -> device qubits {group:?}", g.degree(v));
    }
    Ok(())
}

//! Qubit counts and Pauli weights of the quadratic SYK model on every geometry.

use fermicode::analytics::{loglog_slope, sweep_syk_geometries, write_csv, Field, SweepConfig};
use fermicode::graph::SykGeometry;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ns = [16, 24, 32, 48, 64, 96];
    let cfg = SweepConfig {
        timing: true,
        ..Default::default()
    };
    let records = sweep_syk_geometries(&SykGeometry::ALL, &ns, &cfg)?;
    write_csv(&records, std::io::stdout())?;
    println!();
    for g in SykGeometry::ALL {
        let rows: Vec<_> = records.iter().filter(|r| r.geometry == g).cloned().collect();
        let w = loglog_slope(&rows, Field::TotalWeight)?;
        let q = loglog_slope(&rows, Field::Qubits)?;
        println!(
            "{:<13} total weight ~ N^{:.2} (+/- {:.2}), qubits ~ N^{:.2}",
            g.name(),
            w.slope,
            w.stderr,
            q.slope
        );
    }
    Ok(())
}

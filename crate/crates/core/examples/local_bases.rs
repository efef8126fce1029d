//! Local Majorana bases and their weights at increasing vertex degree.

use fermicode::basis::{basis_verify, BasisKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>6} {:>5} {:>8} {:>8}", "degree", "qubits", "jw", "fenwick", "ternary");
    for d in [2, 4, 8, 16, 26, 32, 64] {
        let w: Vec<usize> = BasisKind::ALL.iter().map(|k| k.build(d).map(|b| b.max_weight())).collect::<Result<_, _>>()?;
        println!("{d:>6} {:>6} {:>5} {:>8} {:>8}", d.div_ceil(2), w[0], w[1], w[2]);
    }
    let b = BasisKind::Ternary.build(6)?;
    for (p, op) in b.ops.iter().enumerate() {
        println!("c{} = {op}", p + 1);
    }
    println!("{}", basis_verify(&b));
    Ok(())
}

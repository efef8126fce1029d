//! Phase-tracked Pauli products and sums.

use fermicode::pauli::{PauliString, PauliSum};
use num_complex::Complex64;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = 3;
    let a = PauliString::parse("X1 Z2", n)?;
    let b = PauliString::parse("Z1 X2 Y3", n)?;
    let ab = a.checked_mul(&b)?;
    println!("({a}) * ({b}) = {ab}");
    println!("commute: {}, weight of product: {}", a.commutes_with(&b)?, ab.weight());
    println!("hermitian: {} / {}", ab.is_hermitian(), ab.hermitian_form().is_hermitian());

    let mut h = PauliSum::new(n);
    for q in 0..n - 1 {
        let xx = PauliString::parse(&format!("X{} X{}", q + 1, q + 2), n)?;
        let yy = PauliString::parse(&format!("Y{} Y{}", q + 1, q + 2), n)?;
        h.accumulate(Complex64::new(0.5, 0.0), &xx)?;
        h.accumulate(Complex64::new(0.5, 0.0), &yy)?;
    }
    // cancels the first XX term
    h.accumulate(Complex64::new(-0.5, 0.0), &PauliString::parse("X1 X2", n)?)?;
    print!("{}", h.to_text());
    Ok(())
}

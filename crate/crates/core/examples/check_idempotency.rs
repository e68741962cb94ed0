// Deciding `A^k = A` and reading the witness when it fails.
//
// Run with `cargo run --example check_idempotency`.

use kidem::structure::power_witness;
use kidem::{is_k_idempotent, Matrix01};

pub fn run_example() -> kidem::Result<()> {
    // The directed 3-cycle returns to itself after 3 steps, so C_3^k = C_3
    // exactly when 3 divides k - 1.
    let c3 = Matrix01::cycle(3);
    for k in 2..=7 {
        println!("C_3 is {k}-idempotent: {}", is_k_idempotent(&c3, k)?);
    }

    let ones = Matrix01::all_ones(2);
    print!("J_2 =\n{ones}");
    if let Some(w) = power_witness(&ones, 2)? {
        println!(
            "J_2^2 has {} at ({},{}) where J_2 has {}: {:?}",
            w.power, w.row, w.col, w.entry as u8, w.kind
        );
    }

    let p = c3.sat_power(4);
    println!("C_3^4 in the saturating semiring: {p:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> kidem::Result<()> {
    run_example()
}

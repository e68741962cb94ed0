// Recovering the canonical block form of a k-idempotent matrix, and
// rebuilding the matrix from it.
//
// Run with `cargo run --example canonical_decomposition`.

use kidem::{decompose, idempotency_index, CanonicalDecomposition, Matrix01};

pub fn run_example() -> kidem::Result<()> {
    // A 2-cycle {1, 4} fed by source 3 and feeding sink 0; vertex 2 is isolated.
    let a: Matrix01 = "5\n00000\n00001\n00000\n11000\n11000\n".parse()?;
    let k = idempotency_index(&a).expect("the matrix is k-idempotent for some k");
    println!("smallest k with A^k = A: {k}");

    let d = decompose(&a, k)?;
    print!("{}", d.to_text(k));
    println!("Z = XP^TY = {:?}", d.z()?);

    let (k2, parsed) = CanonicalDecomposition::parse(&d.to_text(k))?;
    let rebuilt = parsed.realize(k2)?;
    assert_eq!(rebuilt, a);
    println!("rebuilt matrix matches: {}", rebuilt == a);

    // The 2-cycle forbids even exponents.
    match decompose(&a, 4) {
        Ok(_) => println!("unexpected decomposition at k = 4"),
        Err(e) => println!("k = 4 rejected: {e}"),
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> kidem::Result<()> {
    run_example()
}

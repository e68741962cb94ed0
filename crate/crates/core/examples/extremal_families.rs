// Maximum density of k-idempotent matrices and the families attaining it.
//
// Run with `cargo run --example extremal_families -- [N] [K]` (default 5 3).

use kidem::extremal::{construct_extremal, extremal_families, gamma, is_extremal};

pub fn run_example_with(n: usize, k: u64) -> kidem::Result<()> {
    println!("gamma({n}) = {}", gamma(n)?);
    let families = extremal_families(n, k)?;
    println!("{} families for k = {k}", families.len());
    for p in &families {
        let a = construct_extremal(n, k, p)?;
        assert!(is_extremal(&a, k)?);
        println!("{}", p.to_line(n, k)?);
        print!("{a}");
    }
    Ok(())
}

pub fn run_example() -> kidem::Result<()> {
    run_example_with(5, 3)
}

#[allow(dead_code)]
fn main() -> kidem::Result<()> {
    let mut args = std::env::args().skip(1);
    let n = args
        .next()
        .map_or(5, |s| s.parse().expect("N must be a number"));
    let k = args
        .next()
        .map_or(3, |s| s.parse().expect("K must be a number"));
    run_example_with(n, k)
}

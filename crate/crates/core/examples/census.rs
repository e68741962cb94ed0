// Exhaustive census: every 0-1 matrix of small order, both decision routes,
// the density maximum and the triangular lemma.
//
// Run with `cargo run --release --example census -- [MAX_N]` (default 3).

use kidem::oracle::{census, sampled_density_check, ScanLimits};

pub fn run_example_with(max_n: usize) -> kidem::Result<()> {
    for n in 1..=max_n {
        for k in 2..=4 {
            let report = census(n, k, ScanLimits::default())?;
            println!(
                "n={n} k={k}: {} k-idempotent, max ones {} (gamma {}), all checks {}",
                report.total_k_idempotent,
                report.max_nnz,
                report.gamma.unwrap_or(0),
                if report.passed() { "passed" } else { "FAILED" }
            );
        }
    }
    let sample = sampled_density_check(8, 3, 500, 2024)?;
    println!("{sample:?}");
    Ok(())
}

pub fn run_example() -> kidem::Result<()> {
    run_example_with(3)
}

#[allow(dead_code)]
fn main() -> kidem::Result<()> {
    let max_n = std::env::args()
        .nth(1)
        .map_or(3, |s| s.parse().expect("MAX_N must be a number"));
    run_example_with(max_n)
}

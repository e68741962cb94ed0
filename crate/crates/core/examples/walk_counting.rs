// The digraph view: strong components and exact walk counts, checked
// against saturating matrix powers.
//
// Run with `cargo run --example walk_counting`.

use kidem::digraph::Digraph;
use kidem::Matrix01;

pub fn run_example() -> kidem::Result<()> {
    let a: Matrix01 = "4\n0100\n0010\n1001\n0001\n".parse()?;
    let g = Digraph::from_matrix(&a);
    for c in g.sccs().components {
        println!("component {:?}: {:?}", c.vertices, c.kind);
    }
    for len in 1..=6 {
        let walks = g.count_walks(len)?;
        assert_eq!(walks.saturate(), a.sat_power(len));
        println!("walks of length {len}: {walks:?}");
    }
    println!(
        "cycle reaches the looped vertex: {}",
        g.has_path(&[0, 1, 2], &[3])
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> kidem::Result<()> {
    run_example()
}

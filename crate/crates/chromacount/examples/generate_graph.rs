//! Seeded sparse random graph generation and the edge-list text format.
//!
//! ```bash
//! cargo run --release --example generate_graph
//! ```

use chromacount::graph::{ball, generate_gnp, sphere, Graph};

fn main() -> chromacount::Result<()> {
    let (n, d, seed) = (200, 3.0, 42);
    let g = generate_gnp(n, d, seed)?;
    println!("G({n}, {d}/{n}) with seed {seed}: {} edges", g.edge_count());
    println!("expected edge count d(n-1)/2 = {}", d * (n as f64 - 1.0) / 2.0);

    let again = generate_gnp(n, d, seed)?;
    assert_eq!(g, again);
    println!("regenerating with the same seed reproduces the identical graph");

    let text = g.to_edge_list();
    let parsed = Graph::parse_edge_list(&text)?;
    assert_eq!(g, parsed);
    println!("edge-list round trip: {} bytes", text.len());
    println!("first lines:\n{}", text.lines().take(4).collect::<Vec<_>>().join("\n"));

    let centre = [0];
    for t in 0..=3 {
        println!(
            "ball(0, {t}) has {:3} vertices, sphere(0, {t}) has {:3}",
            ball(&g, &centre, t).len(),
            sphere(&g, &centre, t).len()
        );
    }
    let degrees: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    println!(
        "degrees: max {}, mean {:.2}",
        degrees.iter().max().unwrap(),
        degrees.iter().sum::<usize>() as f64 / n as f64
    );
    Ok(())
}

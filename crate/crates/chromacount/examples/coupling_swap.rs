//! The colour-class swap map: a bijection between the colourings that give a
//! chosen vertex colour sigma and those that give it eta, realised by
//! swapping the two colours on the maximal connected two-coloured subgraph
//! through that vertex.
//!
//! ```bash
//! cargo run --release --example coupling_swap
//! ```

use chromacount::graph::Graph;
use chromacount::oracles::enumerate_colourings;
use chromacount::percolation::coupling_map_t;

fn main() -> chromacount::Result<()> {
    let g = Graph::from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (1, 4)])?;
    let k = 3;
    let all = enumerate_colourings(&g, k, 1 << 22)?;
    println!("6-cycle with a chord, k = {k}: {} proper colourings", all.len());

    let (x, sigma, eta) = (0usize, 0usize, 1usize);
    let omega_sigma: Vec<_> = all.iter().filter(|c| c[x] == sigma).collect();
    let omega_eta = all.iter().filter(|c| c[x] == eta).count();
    println!("|colourings with x = {sigma}| = {}, |with x = {eta}| = {omega_eta}", omega_sigma.len());

    let xi = omega_sigma[0].clone();
    let swapped = coupling_map_t(&g, x, sigma, eta, &xi, k)?;
    println!("\n  vertex:   {:?}", (0..g.n()).collect::<Vec<_>>());
    println!("  xi:       {xi:?}");
    println!("  T(xi):    {swapped:?}");
    let back = coupling_map_t(&g, x, eta, sigma, &swapped, k)?;
    assert_eq!(back, xi);
    println!("  applying the reverse swap restores xi");

    // Bijectivity over the whole class: distinct images, all proper, all eta.
    let mut images = std::collections::BTreeSet::new();
    for xi in &omega_sigma {
        let image = coupling_map_t(&g, x, sigma, eta, xi, k)?;
        assert_eq!(image[x], eta);
        assert!(g.edges().iter().all(|e| image[e.a()] != image[e.b()]));
        images.insert(image);
    }
    println!(
        "\nall {} images are distinct proper colourings with x = {eta}: bijection onto a class of size {omega_eta}",
        images.len()
    );
    Ok(())
}

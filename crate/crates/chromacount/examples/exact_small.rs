//! Exact oracles on small graphs: exhaustive counting, the chromatic
//! polynomial via deletion-contraction, and conditional marginals.
//!
//! ```bash
//! cargo run --release --example exact_small
//! ```

use chromacount::graph::Graph;
use chromacount::oracles::{brute_force_count, chromatic_polynomial, exact_joint_marginals};

fn main() -> chromacount::Result<()> {
    // Wheel on 6 vertices: hub 0 joined to a 5-cycle.
    let rim = (1..=5).map(|i| (i, i % 5 + 1));
    let spokes = (1..=5).map(|i| (0, i));
    let g = Graph::from_pairs(6, rim.chain(spokes))?;
    println!("wheel W_5: {} vertices, {} edges", g.n(), g.edge_count());

    let p = chromatic_polynomial(&g, 1 << 22)?;
    let coeffs: Vec<String> = p.coeffs.iter().map(|c| c.to_string()).collect();
    println!("chromatic polynomial coefficients (x^0..x^{}): {:?}", p.degree(), coeffs);
    println!("\n  k   P(k)      exhaustive");
    for k in 0..=6u64 {
        let eval = p.eval(k);
        let brute = if k == 0 {
            "0".to_string()
        } else {
            brute_force_count(&g, k as usize, 1 << 24)?.to_string()
        };
        println!("  {k}   {eval:<9} {brute}");
        if k > 0 {
            assert_eq!(eval.to_string(), brute);
        }
    }

    // Conditional marginal: colour of the antipodal rim vertex given the hub.
    let t = exact_joint_marginals(&g, &[(0, 0)], &[3], 4, 1 << 24)?;
    println!("\nPr[colour(3) | colour(0) = 0] with k = 4: {:?}", t.probs());
    Ok(())
}

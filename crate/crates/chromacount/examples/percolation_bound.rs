//! Disagreement percolation: the exact probability that an all-disagreeing
//! path reaches a target set upper-bounds the conditional total-variation
//! influence of the root; Monte-Carlo agrees with exact enumeration.
//!
//! ```bash
//! cargo run --release --example percolation_bound
//! ```

use chromacount::graph::generate_gnp;
use chromacount::percolation::{
    percolation_probability_exact, percolation_probability_mc, tv_vs_percolation_check,
    DisagreementConfig,
};

fn main() -> chromacount::Result<()> {
    let g = generate_gnp(14, 2.0, 31)?;
    println!("G(14, 2/14), seed 31: {} edges", g.edge_count());

    let k = 4;
    let root = 0;
    let cfg = DisagreementConfig::new(k, root);
    for v in 0..g.n() {
        let q = cfg.q(&g, v);
        if v < 4 {
            println!("  q({v}) = {q:.4} (degree {})", g.degree(v));
        }
    }

    let target = vec![g.n() - 1];
    let exact = percolation_probability_exact(&g, &cfg, &target, 20)?;
    let mc = percolation_probability_mc(&g, &cfg, &target, 1_000_000, 7)?;
    println!("\npercolation probability root 0 -> {target:?}");
    println!("  exact enumeration : {exact:.6}");
    println!("  monte-carlo       : {:.6} +/- {:.6}", mc.estimate, mc.half_width_95);

    println!("\nconditional TV on a pair vs the percolation bound (k = {k}):");
    println!("  lambda       tv_max      percolation  holds");
    for lambda in [vec![5, 9], vec![2], vec![g.n() - 1, g.n() - 2]] {
        let chk = tv_vs_percolation_check(&g, root, &lambda, k, 1 << 26, 20)?;
        println!("  {lambda:<12?} {:<11.6} {:<12.6} {}", chk.tv_max, chk.perc, chk.holds);
    }
    Ok(())
}

//! Disagreement percolation: the per-vertex product measure, exact and
//! Monte-Carlo path-of-disagreement probabilities, and the colour-class swap
//! coupling whose bijectivity backs the percolation upper bound on
//! conditional total-variation distances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::marginal::Colour;
use crate::oracles::tv_table;

/// Default cap on `n` for exact percolation (2^(n-1) patterns).
pub const DEFAULT_EXACT_PERCOLATION_CAP: usize = 20;

/// The product measure: the root is disagreeing with probability 1, a vertex
/// of degree `deg >= s` likewise, and any other vertex independently with
/// probability `1 / (s - deg)`.
#[derive(Clone, Copy, Debug)]
pub struct DisagreementConfig {
    pub s: usize,
    pub root: Vertex,
}

impl DisagreementConfig {
    pub fn new(s: usize, root: Vertex) -> DisagreementConfig {
        DisagreementConfig { s, root }
    }

    /// Per-vertex disagreement probability; always in (0, 1].
    pub fn q(&self, g: &Graph, v: Vertex) -> f64 {
        if v == self.root || g.degree(v) >= self.s {
            1.0
        } else {
            1.0 / (self.s - g.degree(v)) as f64
        }
    }
}

/// Probability that a given simple path (starting at the root) is entirely
/// disagreeing: the product of `q` over its vertices.
pub fn path_disagreement_probability(
    g: &Graph,
    cfg: &DisagreementConfig,
    path: &[Vertex],
) -> Result<f64> {
    if path.first() != Some(&cfg.root) {
        return Err(Error::InvalidInput("path must start at the root".into()));
    }
    let mut seen = vec![false; g.n()];
    for w in path.windows(2) {
        if !g.has_edge(w[0], w[1]) {
            return Err(Error::InvalidInput(format!(
                "vertices {} and {} are not adjacent",
                w[0], w[1]
            )));
        }
    }
    for &v in path {
        if seen[v] {
            return Err(Error::InvalidInput(format!("path revisits vertex {v}")));
        }
        seen[v] = true;
    }
    Ok(path.iter().map(|&v| cfg.q(g, v)).product())
}

/// Exact probability that some all-disagreeing path joins the root to the
/// target set, by summing over every disagreement pattern of the free
/// vertices. Errors when `n` exceeds `cap`.
pub fn percolation_probability_exact(
    g: &Graph,
    cfg: &DisagreementConfig,
    target: &[Vertex],
    cap: usize,
) -> Result<f64> {
    if g.n() > cap {
        return Err(Error::BudgetExceeded {
            what: "exact percolation pattern enumeration",
            needed: g.n() as u128,
            budget: cap as u128,
        });
    }
    let forced: Vec<bool> = (0..g.n()).map(|v| cfg.q(g, v) == 1.0).collect();
    let free: Vec<Vertex> = (0..g.n()).filter(|&v| !forced[v]).collect();
    let mut in_target = vec![false; g.n()];
    for &t in target {
        in_target[t] = true;
    }
    let mut prob = 0f64;
    let mut disagreeing = vec![false; g.n()];
    for pattern in 0u64..(1u64 << free.len()) {
        let mut weight = 1f64;
        for (bit, &v) in free.iter().enumerate() {
            let on = pattern >> bit & 1 == 1;
            disagreeing[v] = on;
            let q = cfg.q(g, v);
            weight *= if on { q } else { 1.0 - q };
        }
        for v in 0..g.n() {
            if forced[v] {
                disagreeing[v] = true;
            }
        }
        if percolates(g, cfg.root, &disagreeing, &in_target) {
            prob += weight;
        }
    }
    // Pattern weights sum to 1 exactly; keep rounding inside [0, 1].
    Ok(prob.clamp(0.0, 1.0))
}

fn percolates(g: &Graph, root: Vertex, disagreeing: &[bool], in_target: &[bool]) -> bool {
    if !disagreeing[root] {
        return false;
    }
    let mut seen = vec![false; g.n()];
    let mut stack = vec![root];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        if in_target[v] {
            return true;
        }
        for &w in g.neighbours(v) {
            if !seen[w] && disagreeing[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    false
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub half_width_95: f64,
    pub samples: u64,
}

/// Monte-Carlo estimate of the percolation probability: per sample, free
/// vertices draw one uniform each (in ascending vertex order; forced vertices
/// consume no draw), followed by a reachability check. Deterministic for a
/// fixed seed; the half width is the 95% normal approximation.
pub fn percolation_probability_mc(
    g: &Graph,
    cfg: &DisagreementConfig,
    target: &[Vertex],
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidParameter("need at least one sample".into()));
    }
    let qs: Vec<f64> = (0..g.n()).map(|v| cfg.q(g, v)).collect();
    let mut in_target = vec![false; g.n()];
    for &t in target {
        in_target[t] = true;
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut disagreeing = vec![false; g.n()];
    let mut hits = 0u64;
    for _ in 0..samples {
        for v in 0..g.n() {
            disagreeing[v] = qs[v] == 1.0 || rng.gen::<f64>() < qs[v];
        }
        if percolates(g, cfg.root, &disagreeing, &in_target) {
            hits += 1;
        }
    }
    let estimate = hits as f64 / samples as f64;
    let half_width_95 = 1.96 * (estimate * (1.0 - estimate) / samples as f64).sqrt();
    Ok(McEstimate { estimate, half_width_95, samples })
}

/// The colour-class swap map: starting from `x`, the maximal connected
/// induced subgraph using only colours `sigma` and `eta` has those two
/// colours exchanged; everything else is untouched. The output is proper and
/// assigns `x` the colour `eta`.
pub fn coupling_map_t(
    g: &Graph,
    x: Vertex,
    sigma: Colour,
    eta: Colour,
    xi: &[Colour],
    k: usize,
) -> Result<Vec<Colour>> {
    if sigma == eta || sigma >= k || eta >= k {
        return Err(Error::InvalidParameter(format!(
            "need distinct colours below k = {k}, got ({sigma}, {eta})"
        )));
    }
    if xi.len() != g.n() {
        return Err(Error::InvalidInput("colouring length does not match the graph".into()));
    }
    if xi[x] != sigma {
        return Err(Error::InvalidInput(format!("xi({x}) = {} but sigma = {sigma}", xi[x])));
    }
    for e in g.edges() {
        if xi[e.a()] == xi[e.b()] {
            return Err(Error::InvalidInput(format!("xi is improper on edge {e:?}")));
        }
    }
    // BFS over the sigma/eta colour classes from x.
    let mut in_swap = vec![false; g.n()];
    let mut stack = vec![x];
    in_swap[x] = true;
    while let Some(v) = stack.pop() {
        for &w in g.neighbours(v) {
            if !in_swap[w] && (xi[w] == sigma || xi[w] == eta) {
                in_swap[w] = true;
                stack.push(w);
            }
        }
    }
    let mut out = xi.to_vec();
    for v in 0..g.n() {
        if in_swap[v] {
            out[v] = if xi[v] == sigma { eta } else { sigma };
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, serde::Serialize)]
pub struct TvPercolationCheck {
    pub tv_max: f64,
    pub perc: f64,
    pub holds: bool,
}

/// Exactly compares the worst conditional TV distance on `lambda` against the
/// percolation probability with `s = k`: the percolation side must dominate.
pub fn tv_vs_percolation_check(
    g: &Graph,
    x: Vertex,
    lambda: &[Vertex],
    k: usize,
    enum_budget: u64,
    exact_cap: usize,
) -> Result<TvPercolationCheck> {
    let tv_max = if lambda.is_empty() {
        0.0
    } else {
        tv_table(g, x, lambda, k, enum_budget)?.tv_max()
    };
    let cfg = DisagreementConfig::new(k, x);
    let perc = percolation_probability_exact(g, &cfg, lambda, exact_cap)?;
    Ok(TvPercolationCheck { tv_max, perc, holds: tv_max <= perc + 1e-12 })
}

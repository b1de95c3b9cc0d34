//! The end-to-end counting schema: a telescoping product of exact anchor
//! marginals over the counting sequence, evaluated on radius-t truncated
//! components, with the large-R exhaustive fallback and the per-term error
//! decomposition diagnostic.

use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::marginal::{big_ln, disagreement_probability, joint_table};
use crate::oracles::{brute_force_count, exact_disagreement_probability};
use crate::sequence::{counting_sequence, truncated_component};

/// Default cap on `k^|pin_set|` DP evaluations per component.
pub const DEFAULT_PIN_BUDGET: u64 = 10_000_000;

/// `max(1, floor(ln n / (2 ln d)))`; needs `d > 1`.
pub fn default_truncation_radius(n: usize, d: f64) -> Result<usize> {
    if d <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "default truncation radius needs d > 1, got {d}"
        )));
    }
    let t = ((n.max(1) as f64).ln() / (2.0 * d.ln())).floor();
    Ok((t as usize).max(1))
}

/// `floor(ln n / (10 ln d))`, with no minimum; needs `d > 1`. At small scale
/// this is typically below 3, making the special edge set R empty.
pub fn default_cycle_threshold(n: usize, d: f64) -> Result<usize> {
    if d <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "default cycle threshold needs d > 1, got {d}"
        )));
    }
    Ok(((n.max(1) as f64).ln() / (10.0 * d.ln())).floor() as usize)
}

#[derive(Clone, Debug)]
pub struct EstimatorConfig {
    /// Truncation radius; derived from `d` when absent.
    pub t: Option<usize>,
    /// Short-cycle length threshold; derived from `d` when absent.
    pub ell: Option<usize>,
    /// Expected degree; metadata for defaults and the first-moment value.
    pub d: Option<f64>,
    pub pin_budget: u64,
    pub enumeration_budget: u64,
    pub cycle_cap: usize,
    /// `|R| > n^exponent` triggers the exhaustive fallback.
    pub r_threshold_exponent: f64,
    /// Worker threads for per-term marginals; 1 = sequential. The reduction
    /// order is always the sequence order, so results do not depend on this.
    pub threads: usize,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        EstimatorConfig {
            t: None,
            ell: None,
            d: None,
            pin_budget: DEFAULT_PIN_BUDGET,
            enumeration_budget: crate::oracles::DEFAULT_ENUM_BUDGET,
            cycle_cap: crate::graph::DEFAULT_CYCLE_CAP,
            r_threshold_exponent: 0.3,
            threads: 1,
        }
    }
}

impl EstimatorConfig {
    pub fn resolve_radii(&self, n: usize) -> Result<(usize, usize)> {
        let t = match (self.t, self.d) {
            (Some(t), _) => t,
            (None, Some(d)) => default_truncation_radius(n, d)?,
            (None, None) => {
                return Err(Error::InvalidParameter(
                    "neither a truncation radius t nor d to derive it from".into(),
                ))
            }
        };
        if t == 0 {
            return Err(Error::InvalidParameter("truncation radius must be >= 1".into()));
        }
        let ell = match (self.ell, self.d) {
            (Some(ell), _) => ell,
            (None, Some(d)) => default_cycle_threshold(n, d)?,
            (None, None) => {
                return Err(Error::InvalidParameter(
                    "neither a cycle threshold ell nor d to derive it from".into(),
                ))
            }
        };
        Ok((t, ell))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermRecord {
    pub edge: (usize, usize),
    pub log_p: f64,
    pub component_size: usize,
    pub extra_edges: usize,
    pub disconnected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateReport {
    pub schema_version: u32,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    pub k: usize,
    pub t: usize,
    pub ell: usize,
    /// `log Z / n` (natural log).
    pub psi: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_moment: Option<f64>,
    pub terms: Vec<TermRecord>,
    /// Terms at and beyond the cutoff, treated as probability 1.
    pub skipped: usize,
    pub fallback: bool,
    #[serde(skip_serializing)]
    pub runtime: Duration,
}

/// Neumaier-compensated accumulator; used so the reduction is exactly the
/// same regardless of how the terms were computed.
#[derive(Clone, Copy, Debug, Default)]
pub struct KahanSum {
    sum: f64,
    compensation: f64,
}

impl KahanSum {
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

/// `ln k + (d/2) ln(1 - 1/k)`: the first-moment value of `log Z / n`.
pub fn first_moment_formula(d: f64, k: usize) -> f64 {
    (k as f64).ln() + d / 2.0 * (1.0 - 1.0 / k as f64).ln()
}

/// Runs the counting schema on `g`: computes R, falls back to exhaustive
/// enumeration when `|R| > n^0.3` (erroring if that is infeasible), and
/// otherwise multiplies the exact truncated-component marginals over the
/// counting sequence, skipping the R-tail as probability 1.
pub fn estimate_log_z(g: &Graph, k: usize, cfg: &EstimatorConfig) -> Result<EstimateReport> {
    let started = std::time::Instant::now();
    if g.n() == 0 {
        return Err(Error::InvalidParameter("estimate_log_z needs a nonempty vertex set".into()));
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("estimate_log_z needs k >= 3, got {k}")));
    }
    let n = g.n();
    let (t, ell) = cfg.resolve_radii(n)?;
    let first_moment = cfg.d.map(|d| first_moment_formula(d, k));

    let r = crate::sequence::edge_set_r(g, ell, cfg.cycle_cap)?;
    let r_threshold = (n as f64).powf(cfg.r_threshold_exponent);
    if r.len() as f64 > r_threshold {
        // Exhaustive fallback; only possible when k^n fits the budget.
        let feasible =
            (n as f64) * (k as f64).ln() <= (cfg.enumeration_budget as f64).ln() + 1e-9;
        if !feasible {
            return Err(Error::FallbackInfeasible { r_size: r.len(), threshold: r_threshold });
        }
        let count = brute_force_count(g, k, cfg.enumeration_budget)?;
        if count == num_bigint::BigUint::from(0u32) {
            return Err(Error::UncolourableComponent { k });
        }
        return Ok(EstimateReport {
            schema_version: 1,
            n,
            d: cfg.d,
            k,
            t,
            ell,
            psi: big_ln(&count) / n as f64,
            first_moment,
            terms: Vec::new(),
            skipped: g.edge_count(),
            fallback: true,
            runtime: started.elapsed(),
        });
    }

    let seq = counting_sequence(g, ell, cfg.cycle_cap)?;
    let compute_term = |i: usize| -> Result<TermRecord> {
        let tc = truncated_component(g, &seq, i, t)?;
        // The ratio only depends on the constrained core of the ball.
        let core = tc.pruned_core();
        let jt = joint_table(&core, k, cfg.pin_budget).map_err(|e| {
            eprintln!("term {i}: core {} verts {} edges, {} extras", core.component.n(), core.component.edge_count(), core.extra_edges.len());
            e
        })?;
        let p = disagreement_probability(&jt)?;
        if p <= 0.0 {
            return Err(Error::UncolourableComponent { k });
        }
        Ok(TermRecord {
            edge: seq.edges[i].endpoints(),
            log_p: p.ln(),
            component_size: tc.component.n(),
            extra_edges: tc.extra_edges.len(),
            disconnected: tc.disconnected,
        })
    };
    let terms: Vec<TermRecord> = if cfg.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..seq.cutoff)
                .into_par_iter()
                .map(compute_term)
                .collect::<Result<Vec<TermRecord>>>()
        })
    } else {
        (0..seq.cutoff).map(compute_term).collect()
    }?;

    let mut acc = KahanSum::default();
    for term in &terms {
        acc.add(term.log_p);
    }
    let psi = (k as f64).ln() + acc.value() / n as f64;
    Ok(EstimateReport {
        schema_version: 1,
        n,
        d: cfg.d,
        k,
        t,
        ell,
        psi,
        first_moment,
        terms,
        skipped: seq.len() - seq.cutoff,
        fallback: false,
        runtime: started.elapsed(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorTerm {
    pub edge: (usize, usize),
    /// Marginal on the untruncated graph `G_i`, by brute force.
    pub exact_p: f64,
    /// Marginal the schema uses (1.0 for the skipped R-tail).
    pub approx_p: f64,
    pub ratio_error: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ErrorDecomposition {
    pub schema_version: u32,
    pub n: usize,
    pub k: usize,
    pub t: usize,
    pub ell: usize,
    pub terms: Vec<ErrorTerm>,
    /// `(1/n) |log Z_schema - log Z|`.
    pub gap: f64,
    /// `(2/n) sum ratio_error`.
    pub bound: f64,
    /// All per-term ratios below 1/2 (the regime where the bound is valid).
    pub all_small: bool,
    /// `gap <= bound`, meaningful when `all_small`.
    pub bound_holds: bool,
}

/// Compares, term by term, the schema marginal against the exact marginal of
/// the full graph `G_i`, and the resulting telescoped gap against the summed
/// relative errors. Needs the whole graph to be enumeration-feasible.
pub fn error_decomposition(g: &Graph, k: usize, cfg: &EstimatorConfig) -> Result<ErrorDecomposition> {
    if g.n() == 0 {
        return Err(Error::InvalidParameter("empty vertex set".into()));
    }
    if (g.n() as f64) * (k as f64).ln() > (cfg.enumeration_budget as f64).ln() + 1e-9 {
        return Err(Error::InfeasibleSize(format!(
            "error decomposition needs k^n <= {}",
            cfg.enumeration_budget
        )));
    }
    let n = g.n();
    let (t, ell) = cfg.resolve_radii(n)?;
    let seq = counting_sequence(g, ell, cfg.cycle_cap)?;
    let mut terms = Vec::with_capacity(seq.len());
    let mut schema_sum = KahanSum::default();
    for i in 0..seq.len() {
        let gi = seq.graph_before(i);
        let (v, u) = seq.edges[i].endpoints();
        let exact_p = exact_disagreement_probability(&gi, v, u, k, cfg.enumeration_budget)?;
        let approx_p = if i < seq.cutoff {
            let tc = truncated_component(g, &seq, i, t)?;
            let jt = joint_table(&tc.pruned_core(), k, cfg.pin_budget)?;
            disagreement_probability(&jt)?
        } else {
            1.0
        };
        if i < seq.cutoff {
            schema_sum.add(approx_p.ln());
        }
        let ratio_error = if exact_p > 0.0 {
            (exact_p - approx_p).abs() / exact_p
        } else {
            f64::INFINITY
        };
        terms.push(ErrorTerm { edge: (v, u), exact_p, approx_p, ratio_error });
    }
    let log_schema = n as f64 * (k as f64).ln() + schema_sum.value();
    let z = brute_force_count(g, k, cfg.enumeration_budget)?;
    if z == num_bigint::BigUint::from(0u32) {
        return Err(Error::UncolourableComponent { k });
    }
    let gap = (log_schema - big_ln(&z)).abs() / n as f64;
    let bound = 2.0 / n as f64 * terms.iter().map(|t| t.ratio_error).sum::<f64>();
    let all_small = terms.iter().all(|t| t.ratio_error < 0.5);
    Ok(ErrorDecomposition {
        schema_version: 1,
        n,
        k,
        t,
        ell,
        terms,
        gap,
        bound,
        all_small,
        bound_holds: gap <= bound + 1e-12,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate_gnp_with_probability, Graph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn cfg(t: usize, ell: usize) -> EstimatorConfig {
        EstimatorConfig { t: Some(t), ell: Some(ell), ..EstimatorConfig::default() }
    }

    #[test]
    fn edgeless_graph_gives_ln_k() {
        let g = Graph::new(6, vec![]).unwrap();
        let rep = estimate_log_z(&g, 3, &cfg(1, 0)).unwrap();
        assert!((rep.psi - 3f64.ln()).abs() < 1e-15);
        assert!(rep.terms.is_empty());
    }

    #[test]
    fn triangle_is_exact_at_large_radius() {
        let g = Graph::from_pairs(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let rep = estimate_log_z(&g, 3, &cfg(5, 0)).unwrap();
        assert!((rep.psi - 6f64.ln() / 3.0).abs() < 1e-12, "psi = {}", rep.psi);
        // The three term probabilities are 2/3, 2/3, 1/2 in sequence order.
        let ps: Vec<f64> = rep.terms.iter().map(|t| t.log_p.exp()).collect();
        assert!((ps[0] - 2.0 / 3.0).abs() < 1e-12);
        assert!((ps[1] - 2.0 / 3.0).abs() < 1e-12);
        assert!((ps[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn trees_are_exact_at_any_radius() {
        let mut rng = ChaCha12Rng::seed_from_u64(31);
        for trial in 0..30 {
            let n = 2 + trial % 9;
            let mut pairs = Vec::new();
            for v in 1..n {
                pairs.push((rng.gen_range(0..v), v));
            }
            let g = Graph::from_pairs(n, pairs).unwrap();
            let k = 3 + trial % 3;
            let rep = estimate_log_z(&g, k, &cfg(1, 0)).unwrap();
            let expect = (n as f64 * (k as f64).ln()
                + (n as f64 - 1.0) * (1.0 - 1.0 / k as f64).ln())
                / n as f64;
            assert!((rep.psi - expect).abs() < 1e-12, "n={n} k={k}");
            // Cross-check against enumeration.
            let z = crate::oracles::brute_force_count(&g, k, 1 << 27).unwrap();
            assert!((rep.psi - crate::marginal::big_ln(&z) / n as f64).abs() < 1e-9);
        }
    }

    #[test]
    fn saturation_matches_brute_force() {
        let mut rng = ChaCha12Rng::seed_from_u64(8);
        let mut done = 0;
        while done < 25 {
            let n = 4 + (done % 5);
            let g = generate_gnp_with_probability(n, 0.4, rng.gen()).unwrap();
            let k = 3 + done % 3;
            let z = crate::oracles::brute_force_count(&g, k, 1 << 27).unwrap();
            if z == num_bigint::BigUint::from(0u32) {
                continue;
            }
            let rep = estimate_log_z(&g, k, &cfg(n, 0)).unwrap();
            let want = crate::marginal::big_ln(&z) / n as f64;
            assert!((rep.psi - want).abs() < 1e-9, "n={n} k={k} psi={} want={want}", rep.psi);
            done += 1;
        }
    }

    #[test]
    fn reports_are_deterministic_across_thread_counts() {
        let g = generate_gnp_with_probability(40, 0.06, 5).unwrap();
        let mut c1 = cfg(2, 0);
        let mut c8 = cfg(2, 0);
        c1.threads = 1;
        c8.threads = 8;
        let r1 = estimate_log_z(&g, 5, &c1).unwrap();
        let r8 = estimate_log_z(&g, 5, &c8).unwrap();
        assert_eq!(serde_json::to_string(&r1).unwrap(), serde_json::to_string(&r8).unwrap());
    }

    #[test]
    fn fallback_engages_when_r_is_large() {
        // Triangle with two pendants: R = {(0,3), (1,4)}, and 2 > 5^0.3.
        let g = Graph::from_pairs(5, [(0, 1), (0, 2), (1, 2), (0, 3), (1, 4)]).unwrap();
        let rep = estimate_log_z(&g, 3, &cfg(3, 3)).unwrap();
        assert!(rep.fallback);
        let z = crate::oracles::brute_force_count(&g, 3, 1 << 20).unwrap();
        assert!((rep.psi - crate::marginal::big_ln(&z) / 5.0).abs() < 1e-12);

        // Same graph with a tiny enumeration budget: explicit failure.
        let mut tight = cfg(3, 3);
        tight.enumeration_budget = 10;
        assert!(matches!(
            estimate_log_z(&g, 3, &tight),
            Err(Error::FallbackInfeasible { .. })
        ));
    }

    #[test]
    fn first_moment_values() {
        assert!((first_moment_formula(0.0, 7) - 7f64.ln()).abs() < 1e-15);
        assert!((first_moment_formula(2.0, 2) - 0.0).abs() < 1e-15);
        let v = first_moment_formula(5.0, 12);
        assert!((v - 2.2674).abs() < 5e-4, "got {v}");
    }

    #[test]
    fn error_decomposition_zero_when_saturated() {
        let g = Graph::from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let dec = error_decomposition(&g, 3, &cfg(6, 0)).unwrap();
        assert!(dec.gap < 1e-12);
        for t in &dec.terms {
            assert!(t.ratio_error < 1e-12);
        }
    }

    #[test]
    fn error_decomposition_c6_radius_one() {
        let g = Graph::from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let dec = error_decomposition(&g, 3, &cfg(1, 0)).unwrap();
        assert!(dec.terms.iter().any(|t| t.ratio_error > 0.0), "radius 1 must lose accuracy");
        assert!(dec.all_small);
        assert!(dec.bound_holds, "gap {} bound {}", dec.gap, dec.bound);
    }

    #[test]
    fn error_decomposition_forest_gap_is_zero() {
        let g = Graph::from_pairs(7, [(0, 1), (1, 2), (3, 4), (5, 6)]).unwrap();
        let dec = error_decomposition(&g, 4, &cfg(1, 0)).unwrap();
        assert!(dec.gap < 1e-12);
    }

    #[test]
    fn radius_defaults() {
        assert_eq!(default_truncation_radius(2000, 5.0).unwrap(), 2);
        assert_eq!(default_cycle_threshold(2000, 5.0).unwrap(), 0);
        assert_eq!(default_truncation_radius(10, 3.0).unwrap(), 1);
        assert!(default_truncation_radius(10, 1.0).is_err());
    }
}

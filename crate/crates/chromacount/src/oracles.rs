//! Ground-truth engines used by tests and diagnostics: pruned exhaustive
//! enumeration of proper colourings, deletion-contraction chromatic
//! polynomials, exact conditional marginals and total-variation distances,
//! spatial decay profiles, and a seeded Glauber chain for Monte-Carlo
//! cross-checks.
//!
//! Everything here is exact (integer counts, one final division) except the
//! Glauber sampler, which is explicitly a randomized diagnostic and never
//! feeds the deterministic pipeline.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::graph::{sphere, Graph, Vertex};
use crate::marginal::{Colour, ColourLists};

/// Default enumeration budget (leaf assignments).
pub const DEFAULT_ENUM_BUDGET: u64 = 100_000_000;

/// Backtracking enumerator over proper list colourings. Vertices are filled
/// in BFS order (per component, from its lowest vertex), checking only edges
/// into the already-coloured prefix.
struct Enumerator<'g> {
    g: &'g Graph,
    order: Vec<Vertex>,
    /// For each order position, the already-placed neighbours (vertex ids).
    back: Vec<Vec<Vertex>>,
    k: usize,
    masks: Vec<u64>,
}

impl<'g> Enumerator<'g> {
    fn new(g: &'g Graph, lists: &ColourLists, budget: u64) -> Result<Enumerator<'g>> {
        let k = lists.k();
        // Work is bounded by the product of list sizes; compare in log space.
        let mut log_work = 0f64;
        for v in 0..g.n() {
            let c = lists.mask(v).count_ones();
            if c == 0 {
                log_work = f64::NEG_INFINITY;
                break;
            }
            log_work += (c as f64).ln();
        }
        if log_work > (budget as f64).ln() * 1.000_000_1 + 1e-9 {
            return Err(Error::BudgetExceeded {
                what: "colouring enumeration",
                needed: log_work.exp().min(u128::MAX as f64) as u128,
                budget: budget as u128,
            });
        }
        let mut order = Vec::with_capacity(g.n());
        let mut seen = vec![false; g.n()];
        let mut queue = std::collections::VecDeque::new();
        for r in 0..g.n() {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            queue.push_back(r);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in g.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        let mut pos = vec![0usize; g.n()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .map(|&v| {
                g.neighbours(v)
                    .iter()
                    .copied()
                    .filter(|&w| pos[w] < pos[v])
                    .collect()
            })
            .collect();
        let masks = (0..g.n()).map(|v| lists.mask(v)).collect();
        Ok(Enumerator { g, order, back, k, masks })
    }

    /// Visits every proper list colouring once; returns the number visited.
    fn run<F: FnMut(&[Colour])>(&self, mut visit: F) -> u64 {
        let n = self.g.n();
        if n == 0 {
            visit(&[]);
            return 1;
        }
        let mut col = vec![0 as Colour; n];
        let mut count = 0u64;
        self.recurse(0, &mut col, &mut count, &mut visit);
        count
    }

    fn recurse<F: FnMut(&[Colour])>(
        &self,
        depth: usize,
        col: &mut [Colour],
        count: &mut u64,
        visit: &mut F,
    ) {
        let v = self.order[depth];
        let mut forbidden = !self.masks[v];
        for &w in &self.back[depth] {
            forbidden |= 1u64 << col[w];
        }
        let mut avail = !forbidden & mask_k(self.k);
        while avail != 0 {
            let c = avail.trailing_zeros() as Colour;
            avail &= avail - 1;
            col[v] = c;
            if depth + 1 == self.order.len() {
                *count += 1;
                visit(col);
            } else {
                self.recurse(depth + 1, col, count, visit);
            }
        }
    }
}

fn mask_k(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Exact number of proper k-colourings by pruned exhaustive enumeration.
pub fn brute_force_count(g: &Graph, k: usize, budget: u64) -> Result<BigUint> {
    let lists = ColourLists::full(g.n(), k)?;
    brute_force_list_count(g, &lists, budget)
}

/// Exact number of proper list colourings by pruned exhaustive enumeration.
pub fn brute_force_list_count(g: &Graph, lists: &ColourLists, budget: u64) -> Result<BigUint> {
    let en = Enumerator::new(g, lists, budget)?;
    Ok(BigUint::from(en.run(|_| {})))
}

/// Runs `visit` on every proper colouring (vertex-indexed slice) and returns
/// how many there were.
pub fn for_each_colouring<F: FnMut(&[Colour])>(
    g: &Graph,
    k: usize,
    budget: u64,
    visit: F,
) -> Result<u64> {
    let lists = ColourLists::full(g.n(), k)?;
    Ok(Enumerator::new(g, &lists, budget)?.run(visit))
}

/// Materialises every proper colouring; intended for small test instances.
pub fn enumerate_colourings(g: &Graph, k: usize, budget: u64) -> Result<Vec<Vec<Colour>>> {
    let mut out = Vec::new();
    for_each_colouring(g, k, budget, |col| out.push(col.to_vec()))?;
    Ok(out)
}

/// Chromatic polynomial in the monomial basis: `coeffs[i]` multiplies `x^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChromaticPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl ChromaticPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, k: u64) -> BigInt {
        let x = BigInt::from(k);
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &x + c;
        }
        acc
    }
}

/// Deletion-contraction: `P(G) = P(G - e) - P(G / e)` on the lexicographically
/// first edge, contracting to a simple graph (parallel edges merged). Each
/// recursive call costs one step against `step_budget`.
pub fn chromatic_polynomial(g: &Graph, step_budget: u64) -> Result<ChromaticPolynomial> {
    let edges: Vec<(usize, usize)> = g.edges().iter().map(|e| e.endpoints()).collect();
    let mut steps = 0u64;
    let coeffs = del_con(g.n(), edges, &mut steps, step_budget)?;
    Ok(ChromaticPolynomial { coeffs })
}

fn del_con(
    n: usize,
    edges: Vec<(usize, usize)>,
    steps: &mut u64,
    budget: u64,
) -> Result<Vec<BigInt>> {
    *steps += 1;
    if *steps > budget {
        return Err(Error::BudgetExceeded {
            what: "deletion-contraction",
            needed: *steps as u128,
            budget: budget as u128,
        });
    }
    if edges.is_empty() {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        return Ok(coeffs);
    }
    let (a, b) = edges[0];
    let deleted = edges[1..].to_vec();
    // Contract b into a, shift indices above b down, drop loops and duplicates.
    let relabel = |v: usize| {
        let v = if v == b { a } else { v };
        if v > b {
            v - 1
        } else {
            v
        }
    };
    let mut contracted: Vec<(usize, usize)> = deleted
        .iter()
        .map(|&(x, y)| {
            let (x, y) = (relabel(x), relabel(y));
            (x.min(y), x.max(y))
        })
        .filter(|&(x, y)| x != y)
        .collect();
    contracted.sort_unstable();
    contracted.dedup();

    let p_del = del_con(n, deleted, steps, budget)?;
    let p_con = del_con(n - 1, contracted, steps, budget)?;
    let mut out = p_del;
    for (i, c) in p_con.into_iter().enumerate() {
        out[i] -= c;
    }
    Ok(out)
}

/// Exact conditional Gibbs distribution of `targets` given pinned colours:
/// the table over `[k]^targets` (row-major, first target most significant).
#[derive(Clone, Debug)]
pub struct MarginalTable {
    pub targets: Vec<Vertex>,
    pub k: usize,
    pub counts: Vec<u64>,
    pub total: u64,
}

impl MarginalTable {
    pub fn prob(&self, assignment: &[Colour]) -> f64 {
        self.counts[self.index(assignment)] as f64 / self.total as f64
    }

    pub fn probs(&self) -> Vec<f64> {
        self.counts.iter().map(|&c| c as f64 / self.total as f64).collect()
    }

    pub fn index(&self, assignment: &[Colour]) -> usize {
        assert_eq!(assignment.len(), self.targets.len());
        assignment.iter().fold(0, |acc, &c| acc * self.k + c)
    }
}

/// Enumerates the proper colourings extending `pins` and tabulates the joint
/// distribution of the target vertices. Errors with empty-support if the pins
/// cannot be extended.
pub fn exact_joint_marginals(
    g: &Graph,
    pins: &[(Vertex, Colour)],
    targets: &[Vertex],
    k: usize,
    budget: u64,
) -> Result<MarginalTable> {
    let mut lists = ColourLists::full(g.n(), k)?;
    for &(v, c) in pins {
        if c >= k {
            return Err(Error::InvalidParameter(format!("pin colour {c} >= k = {k}")));
        }
        lists = lists.pin(v, c);
    }
    let table_size = (k as u128).checked_pow(targets.len() as u32).unwrap_or(u128::MAX);
    if table_size > 1 << 24 {
        return Err(Error::InfeasibleSize(format!(
            "marginal table with k^{} = {table_size} cells",
            targets.len()
        )));
    }
    let mut counts = vec![0u64; table_size as usize];
    let en = Enumerator::new(g, &lists, budget)?;
    let total = en.run(|col| {
        let idx = targets.iter().fold(0usize, |acc, &t| acc * k + col[t]);
        counts[idx] += 1;
    });
    if total == 0 {
        return Err(Error::EmptySupport);
    }
    Ok(MarginalTable { targets: targets.to_vec(), k, counts, total })
}

/// `Pr[colour(v) != colour(u)]` under the uniform distribution on proper
/// k-colourings of `g`, by direct enumeration.
pub fn exact_disagreement_probability(
    g: &Graph,
    v: Vertex,
    u: Vertex,
    k: usize,
    budget: u64,
) -> Result<f64> {
    let lists = ColourLists::full(g.n(), k)?;
    let en = Enumerator::new(g, &lists, budget)?;
    let mut equal = 0u64;
    let total = en.run(|col| {
        if col[v] == col[u] {
            equal += 1;
        }
    });
    if total == 0 {
        return Err(Error::UncolourableComponent { k });
    }
    Ok((total - equal) as f64 / total as f64)
}

/// Joint counts of (colour of x, configuration of lambda) from one
/// enumeration pass; all conditional TV distances over colour pairs at `x`
/// come from this table by exact cross-multiplication.
pub struct TvTable {
    k: usize,
    lambda_cells: usize,
    /// `joint[cx * lambda_cells + idx]`
    joint: Vec<u64>,
    /// Colourings with `colour(x) = cx`.
    m: Vec<u64>,
}

impl TvTable {
    /// TV distance between the lambda-projections conditioned on
    /// `x = sigma` versus `x = eta`.
    pub fn tv(&self, sigma: Colour, eta: Colour) -> f64 {
        let (ms, me) = (self.m[sigma], self.m[eta]);
        let mut num: u128 = 0;
        for idx in 0..self.lambda_cells {
            let a = self.joint[sigma * self.lambda_cells + idx] as u128 * me as u128;
            let b = self.joint[eta * self.lambda_cells + idx] as u128 * ms as u128;
            num += a.abs_diff(b);
        }
        num as f64 / (2.0 * ms as f64 * me as f64)
    }

    pub fn tv_max(&self) -> f64 {
        let mut best = 0f64;
        for s in 0..self.k {
            for e in (s + 1)..self.k {
                best = best.max(self.tv(s, e));
            }
        }
        best
    }
}

/// Builds the [`TvTable`] of vertex `x` against the (small) set `lambda`.
pub fn tv_table(g: &Graph, x: Vertex, lambda: &[Vertex], k: usize, budget: u64) -> Result<TvTable> {
    let cells = (k as u128).checked_pow(lambda.len() as u32).unwrap_or(u128::MAX);
    if cells > 1 << 24 {
        return Err(Error::InfeasibleSize(format!(
            "projection table with k^{} = {cells} cells",
            lambda.len()
        )));
    }
    let cells = cells as usize;
    let mut joint = vec![0u64; k * cells];
    let mut m = vec![0u64; k];
    let total = for_each_colouring(g, k, budget, |col| {
        let idx = lambda.iter().fold(0usize, |acc, &t| acc * k + col[t]);
        joint[col[x] * cells + idx] += 1;
        m[col[x]] += 1;
    })?;
    if total == 0 {
        return Err(Error::EmptySupport);
    }
    // Z > 0 implies every colour occurs at x (permute colours globally).
    debug_assert!(m.iter().all(|&c| c > 0));
    Ok(TvTable { k, lambda_cells: cells, joint, m })
}

/// Exact total variation distance between the projections on `lambda` of the
/// Gibbs distributions conditioned on `x = sigma` and `x = eta`.
pub fn exact_tv(
    g: &Graph,
    x: Vertex,
    sigma: Colour,
    eta: Colour,
    lambda: &[Vertex],
    k: usize,
    budget: u64,
) -> Result<f64> {
    if sigma >= k || eta >= k {
        return Err(Error::InvalidParameter(format!("colours ({sigma}, {eta}) must be < k = {k}")));
    }
    if sigma == eta {
        return Ok(0.0);
    }
    Ok(tv_table(g, x, lambda, k, budget)?.tv(sigma, eta))
}

/// One row of a decay profile at radius `t` around a vertex:
/// `eq3` is the worst influence of a pinned root colour on the sphere,
/// `eq5` the worst root colour-pair influence on the sphere, and
/// `eq6` the average influence of a typical sphere colouring back on the root.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DecayRecord {
    pub t: usize,
    pub eq3: f64,
    pub eq5: f64,
    pub eq6: f64,
}

/// Exact decay profile of vertex `x` for radii `1..=t_max`. Empty spheres
/// yield zero rows.
pub fn decay_profile(
    g: &Graph,
    x: Vertex,
    k: usize,
    t_max: usize,
    budget: u64,
) -> Result<Vec<DecayRecord>> {
    let mut out = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        let sph = sphere(g, &[x], t);
        if sph.is_empty() {
            out.push(DecayRecord { t, eq3: 0.0, eq5: 0.0, eq6: 0.0 });
            continue;
        }
        // Counts per sphere configuration, split by the colour of x.
        let mut table: BTreeMap<Vec<u8>, Vec<u64>> = BTreeMap::new();
        let mut m = vec![0u64; k];
        let total = for_each_colouring(g, k, budget, |col| {
            let key: Vec<u8> = sph.iter().map(|&v| col[v] as u8).collect();
            table.entry(key).or_insert_with(|| vec![0u64; k])[col[x]] += 1;
            m[col[x]] += 1;
        })?;
        if total == 0 {
            return Err(Error::EmptySupport);
        }
        let z = total as u128;

        // eq3: max over root colours C of TV(unconditional sphere law,
        // sphere law given x = C); cross-multiplied exactly.
        let mut eq3 = 0f64;
        for c in 0..k {
            let mc = m[c] as u128;
            let mut num: u128 = 0;
            for per in table.values() {
                let ca: u128 = per.iter().map(|&v| v as u128).sum();
                let cc = per[c] as u128;
                num += (ca * mc).abs_diff(cc * z);
            }
            eq3 = eq3.max(num as f64 / (2.0 * m[c] as f64 * total as f64));
        }

        // eq5: max over root colour pairs of TV between the two conditional
        // sphere laws.
        let mut eq5 = 0f64;
        for s in 0..k {
            for e in (s + 1)..k {
                let (ms, me) = (m[s] as u128, m[e] as u128);
                let mut num: u128 = 0;
                for per in table.values() {
                    num += (per[s] as u128 * me).abs_diff(per[e] as u128 * ms);
                }
                eq5 = eq5.max(num as f64 / (2.0 * m[s] as f64 * m[e] as f64));
            }
        }

        // eq6: sum over sphere configurations A of mu(A) * TV(law of x | A,
        // law of x); equals sum |c_A(cx) * Z - m(cx) * c_A| / (2 Z^2).
        let mut num6: u128 = 0;
        for per in table.values() {
            let ca: u128 = per.iter().map(|&v| v as u128).sum();
            for cx in 0..k {
                num6 += (per[cx] as u128 * z).abs_diff(m[cx] as u128 * ca);
            }
        }
        let eq6 = num6 as f64 / (2.0 * total as f64 * total as f64);

        out.push(DecayRecord { t, eq3, eq5, eq6 });
    }
    Ok(out)
}

/// Greedy proper colouring in vertex order; errors when k is too small for
/// the order.
fn greedy_colouring(g: &Graph, k: usize) -> Result<Vec<Colour>> {
    let mut col = vec![usize::MAX; g.n()];
    for v in 0..g.n() {
        let mut used = 0u64;
        for &w in g.neighbours(v) {
            if col[w] != usize::MAX {
                used |= 1u64 << col[w];
            }
        }
        let free = !used & mask_k(k);
        if free == 0 {
            return Err(Error::InitFailed { vertex: v, k });
        }
        col[v] = free.trailing_zeros() as Colour;
    }
    Ok(col)
}

/// Single-site heat-bath chain over proper k-colourings, started from the
/// greedy colouring; `steps` counts single-site updates. Deterministic for a
/// fixed seed. A diagnostic: its randomness never feeds the estimator.
pub fn glauber_sampler(g: &Graph, k: usize, steps: u64, seed: u64) -> Result<Vec<Colour>> {
    if k == 0 || k > 64 {
        return Err(Error::InvalidParameter(format!("k = {k} outside 1..=64")));
    }
    let mut col = greedy_colouring(g, k)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    for _ in 0..steps {
        heat_bath_step(g, k, &mut col, &mut rng);
    }
    Ok(col)
}

fn heat_bath_step(g: &Graph, k: usize, col: &mut [Colour], rng: &mut ChaCha12Rng) {
    let v = rng.gen_range(0..g.n());
    let mut used = 0u64;
    for &w in g.neighbours(v) {
        used |= 1u64 << col[w];
    }
    let mut free = !used & mask_k(k);
    // The current colour is always free, so free != 0.
    let pick = rng.gen_range(0..free.count_ones());
    for _ in 0..pick {
        free &= free - 1;
    }
    col[v] = free.trailing_zeros() as Colour;
}

/// Monte-Carlo estimate of `Pr[colour(v) != colour(u)]` from a Glauber chain.
#[derive(Clone, Debug, serde::Serialize)]
pub struct PdiffEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub samples: u64,
}

/// Runs `sweeps` recorded sweeps (of n single-site updates each) after a 10%
/// burn-in and reports the disagreement frequency of the pair with a
/// batch-means standard error.
pub fn glauber_pdiff(
    g: &Graph,
    v: Vertex,
    u: Vertex,
    k: usize,
    sweeps: u64,
    seed: u64,
) -> Result<PdiffEstimate> {
    if sweeps == 0 {
        return Err(Error::InvalidParameter("need at least one sweep".into()));
    }
    let mut col = greedy_colouring(g, k)?;
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let n = g.n() as u64;
    let burn = sweeps / 10 + 1;
    for _ in 0..burn * n {
        heat_bath_step(g, k, &mut col, &mut rng);
    }
    let mut hits: Vec<u8> = Vec::with_capacity(sweeps as usize);
    for _ in 0..sweeps {
        for _ in 0..n {
            heat_bath_step(g, k, &mut col, &mut rng);
        }
        hits.push(u8::from(col[v] != col[u]));
    }
    let mean = hits.iter().map(|&h| h as f64).sum::<f64>() / sweeps as f64;
    // Batch means absorb autocorrelation between consecutive sweeps.
    let batches = 50.min(sweeps) as usize;
    let per = hits.len() / batches;
    let mut var_acc = 0f64;
    for b in 0..batches {
        let slice = &hits[b * per..(b + 1) * per];
        let bm = slice.iter().map(|&h| h as f64).sum::<f64>() / per as f64;
        var_acc += (bm - mean) * (bm - mean);
    }
    let std_error = if batches > 1 {
        (var_acc / ((batches - 1) as f64 * batches as f64)).sqrt()
    } else {
        (mean * (1.0 - mean) / sweeps as f64).sqrt()
    };
    Ok(PdiffEstimate { estimate: mean, std_error, samples: sweeps })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate_gnp_with_probability;

    fn triangle() -> Graph {
        Graph::from_pairs(3, [(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_count(&triangle(), 3, 1 << 20).unwrap(), BigUint::from(6u32));
        assert_eq!(brute_force_count(&c4(), 3, 1 << 20).unwrap(), BigUint::from(18u32));
        let edgeless = Graph::new(5, vec![]).unwrap();
        assert_eq!(brute_force_count(&edgeless, 4, 1 << 20).unwrap(), BigUint::from(1024u32));
    }

    #[test]
    fn enumeration_budget_is_enforced() {
        let g = Graph::new(30, vec![]).unwrap();
        assert!(matches!(
            brute_force_count(&g, 5, 1000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn chromatic_polynomial_closed_forms() {
        // Tree on 5 vertices: k (k-1)^4.
        let tree = Graph::from_pairs(5, [(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let p = chromatic_polynomial(&tree, 1 << 20).unwrap();
        for k in 0..=6u64 {
            let want = k as i128 * (k as i128 - 1).pow(4);
            assert_eq!(p.eval(k), BigInt::from(want));
        }

        let p = chromatic_polynomial(&triangle(), 1 << 20).unwrap();
        for k in 0..=6u64 {
            let want = k as i128 * (k as i128 - 1) * (k as i128 - 2);
            assert_eq!(p.eval(k), BigInt::from(want));
        }

        let p = chromatic_polynomial(&c4(), 1 << 20).unwrap();
        for k in 0..=6u64 {
            let want = (k as i128 - 1).pow(4) + (k as i128 - 1);
            assert_eq!(p.eval(k), BigInt::from(want));
        }
    }

    #[test]
    fn chromatic_polynomial_matches_enumeration() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        for trial in 0..40 {
            let n = 3 + trial % 5;
            let g = generate_gnp_with_probability(n, 0.4, rng.gen()).unwrap();
            let p = chromatic_polynomial(&g, 1 << 24).unwrap();
            assert_eq!(p.degree(), n);
            assert_eq!(*p.coeffs.last().unwrap(), BigInt::one());
            for k in 0..=5usize {
                let bf = brute_force_count(&g, k.max(1), 1 << 24).unwrap();
                let bf = if k == 0 {
                    if g.n() == 0 { BigUint::one() } else { BigUint::zero() }
                } else {
                    bf
                };
                assert_eq!(p.eval(k as u64), BigInt::from(bf), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn joint_marginals_examples() {
        // No pins, one target, connected graph: uniform by colour symmetry.
        let t = exact_joint_marginals(&triangle(), &[], &[0], 3, 1 << 20).unwrap();
        for p in t.probs() {
            assert!((p - 1.0 / 3.0).abs() < 1e-12);
        }

        // Edge x-y, pin x = 0: y uniform over the other two colours.
        let edge = Graph::from_pairs(2, [(0, 1)]).unwrap();
        let t = exact_joint_marginals(&edge, &[(0, 0)], &[1], 3, 1 << 20).unwrap();
        assert_eq!(t.probs(), vec![0.0, 0.5, 0.5]);
        // Colour-permutation equivariance: pinning x = 1 permutes the table.
        let t2 = exact_joint_marginals(&edge, &[(0, 1)], &[1], 3, 1 << 20).unwrap();
        assert_eq!(t2.probs(), vec![0.5, 0.0, 0.5]);

        // Path x-w-y, pin x = 0, target y: (1/2, 1/4, 1/4).
        let path = Graph::from_pairs(3, [(0, 1), (1, 2)]).unwrap();
        let t = exact_joint_marginals(&path, &[(0, 0)], &[2], 3, 1 << 20).unwrap();
        assert_eq!(t.probs(), vec![0.5, 0.25, 0.25]);
    }

    #[test]
    fn joint_marginals_empty_support() {
        let edge = Graph::from_pairs(2, [(0, 1)]).unwrap();
        let r = exact_joint_marginals(&edge, &[(0, 0), (1, 0)], &[1], 3, 1 << 20);
        assert!(matches!(r, Err(Error::EmptySupport)));
    }

    #[test]
    fn tables_sum_to_one() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..20 {
            let g = generate_gnp_with_probability(6, 0.4, rng.gen()).unwrap();
            let t = exact_joint_marginals(&g, &[], &[1, 4], 3, 1 << 22).unwrap();
            let s: f64 = t.probs().iter().sum();
            assert!((s - 1.0).abs() < 1e-12);
            assert!(t.probs().iter().all(|&p| p >= 0.0));
        }
    }

    #[test]
    fn exact_tv_examples() {
        let edge = Graph::from_pairs(2, [(0, 1)]).unwrap();
        // Lambda empty.
        assert_eq!(exact_tv(&edge, 0, 0, 1, &[], 3, 1 << 20).unwrap(), 0.0);
        // sigma == eta.
        assert_eq!(exact_tv(&edge, 0, 1, 1, &[1], 3, 1 << 20).unwrap(), 0.0);
        // Tables (0, 1/2, 1/2) vs (1/2, 0, 1/2): TV = 1/2.
        let tv = exact_tv(&edge, 0, 0, 1, &[1], 3, 1 << 20).unwrap();
        assert!((tv - 0.5).abs() < 1e-12);
    }

    #[test]
    fn exact_tv_properties() {
        let mut rng = ChaCha12Rng::seed_from_u64(13);
        for _ in 0..15 {
            let g = generate_gnp_with_probability(6, 0.35, rng.gen()).unwrap();
            let k = 4;
            let table = tv_table(&g, 2, &[0, 5], k, 1 << 22).unwrap();
            for s in 0..k {
                for e in 0..k {
                    let tv = table.tv(s, e);
                    assert!((0.0..=1.0 + 1e-12).contains(&tv));
                    assert!((tv - table.tv(e, s)).abs() < 1e-12, "symmetry");
                }
            }
            // Triangle inequality through a third colour.
            for a in 0..k {
                for b in 0..k {
                    for c in 0..k {
                        assert!(table.tv(a, b) <= table.tv(a, c) + table.tv(c, b) + 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn decay_profile_trivial_cases() {
        // Star centre: sphere empty beyond t = 1.
        let star = Graph::from_pairs(5, (1..5).map(|v| (0, v))).unwrap();
        let prof = decay_profile(&star, 0, 3, 3, 1 << 20).unwrap();
        assert_eq!(prof[1].eq3, 0.0);
        assert_eq!(prof[1].eq5, 0.0);
        assert_eq!(prof[2].eq6, 0.0);

        let edgeless = Graph::new(4, vec![]).unwrap();
        let prof = decay_profile(&edgeless, 0, 3, 2, 1 << 20).unwrap();
        for rec in prof {
            assert_eq!((rec.eq3, rec.eq5, rec.eq6), (0.0, 0.0, 0.0));
        }
    }

    #[test]
    fn decay_profile_lemma_relation_on_c6() {
        let c6 = Graph::from_pairs(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5)]).unwrap();
        let k = 4;
        let prof = decay_profile(&c6, 0, k, 3, 1 << 22).unwrap();
        for rec in &prof {
            assert!(
                rec.eq5 <= 2.0 * k as f64 * rec.eq6 + 1e-12,
                "t={} eq5={} eq6={}",
                rec.t,
                rec.eq5,
                rec.eq6
            );
        }
        // At t = 3 the profile is nontrivial on the 6-cycle.
        assert!(prof[2].eq5 > 0.0);
    }

    #[test]
    fn decay_profile_lemma_relation_random() {
        let mut rng = ChaCha12Rng::seed_from_u64(17);
        for _ in 0..10 {
            let g = generate_gnp_with_probability(7, 0.3, rng.gen()).unwrap();
            for k in [3, 4] {
                let prof = decay_profile(&g, 0, k, 3, 1 << 22).unwrap();
                for rec in prof {
                    assert!(rec.eq5 <= 2.0 * k as f64 * rec.eq6 + 1e-12);
                }
            }
        }
    }

    #[test]
    fn glauber_single_edge_always_differs() {
        let edge = Graph::from_pairs(2, [(0, 1)]).unwrap();
        let est = glauber_pdiff(&edge, 0, 1, 3, 2000, 42).unwrap();
        assert_eq!(est.estimate, 1.0);
    }

    #[test]
    fn glauber_matches_exact_on_c5() {
        let c5 = Graph::from_pairs(5, [(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let k = 4;
        let t = exact_joint_marginals(&c5, &[], &[0, 2], k, 1 << 22).unwrap();
        let mut p_eq = 0f64;
        for c in 0..k {
            p_eq += t.prob(&[c, c]);
        }
        let exact = 1.0 - p_eq;
        let est = glauber_pdiff(&c5, 0, 2, k, 20_000, 7).unwrap();
        assert!(
            (est.estimate - exact).abs() <= 3.0 * est.std_error.max(1e-3),
            "estimate {} exact {} se {}",
            est.estimate,
            exact,
            est.std_error
        );
    }

    #[test]
    fn glauber_init_failure() {
        assert!(matches!(
            glauber_sampler(&triangle(), 2, 10, 0),
            Err(Error::InitFailed { .. })
        ));
    }

    #[test]
    fn glauber_edgeless_is_uniform() {
        let g = Graph::new(3, vec![]).unwrap();
        let mut freq = [0u32; 3];
        for seed in 0..300 {
            let col = glauber_sampler(&g, 3, 6, seed).unwrap();
            freq[col[0]] += 1;
        }
        for f in freq {
            assert!((50..=250).contains(&f), "frequencies {freq:?}");
        }
    }
}

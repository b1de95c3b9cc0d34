//! Exact anchor-pair marginals on a truncated component, via list-colouring
//! dynamic programming on the spanning forest with enumeration over the
//! colours of extra-edge endpoints. All counts are arbitrary-precision
//! integers; floating point enters only in the final ratio.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph, Vertex};
use crate::sequence::TruncatedComponent;

pub type Colour = usize;

/// Largest supported colour count (lists are 64-bit masks).
pub const MAX_COLOURS: usize = 64;

/// Per-vertex allowed-colour sets, stored as bitmasks over `[0, k)`.
#[derive(Clone, Debug)]
pub struct ColourLists {
    k: usize,
    masks: Vec<u64>,
}

impl ColourLists {
    pub fn full(n: usize, k: usize) -> Result<ColourLists> {
        if k == 0 || k > MAX_COLOURS {
            return Err(Error::InvalidParameter(format!(
                "colour count {k} outside supported range 1..={MAX_COLOURS}"
            )));
        }
        let mask = if k == 64 { u64::MAX } else { (1u64 << k) - 1 };
        Ok(ColourLists { k, masks: vec![mask; n] })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.masks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.is_empty()
    }

    pub fn allows(&self, v: Vertex, c: Colour) -> bool {
        self.masks[v] >> c & 1 == 1
    }

    pub fn mask(&self, v: Vertex) -> u64 {
        self.masks[v]
    }

    pub fn set_mask(&mut self, v: Vertex, mask: u64) {
        self.masks[v] = mask;
    }

    /// Restricts the list of `v` to the single colour `c`. If `c` is not in
    /// the current list the list becomes empty and any count is 0.
    pub fn pin(&self, v: Vertex, c: Colour) -> ColourLists {
        let mut out = self.clone();
        out.masks[v] &= 1u64 << c;
        out
    }

    fn colours(&self, v: Vertex) -> impl Iterator<Item = Colour> + '_ {
        let mask = self.masks[v];
        (0..self.k).filter(move |c| mask >> c & 1 == 1)
    }
}

/// Rooting of a forest: BFS order from the lowest-indexed vertex of each
/// component (or a preferred root for its component), children visited in
/// ascending order.
struct ForestDp {
    order: Vec<Vertex>,
    children: Vec<Vec<Vertex>>,
    roots: Vec<Vertex>,
}

impl ForestDp {
    fn new(forest: &Graph, preferred_root: Option<Vertex>) -> ForestDp {
        let n = forest.n();
        let mut order = Vec::with_capacity(n);
        let mut children = vec![Vec::new(); n];
        let mut seen = vec![false; n];
        let mut roots = Vec::new();
        let mut queue = std::collections::VecDeque::new();
        let starts = preferred_root.into_iter().chain(0..n);
        for r in starts {
            if seen[r] {
                continue;
            }
            roots.push(r);
            seen[r] = true;
            queue.push_back(r);
            while let Some(v) = queue.pop_front() {
                order.push(v);
                for &w in forest.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        children[v].push(w);
                        queue.push_back(w);
                    }
                }
            }
        }
        ForestDp { order, children, roots }
    }

    /// Per-vertex colour tables: `cnt[v][c]` counts the list colourings of
    /// v's subtree with v coloured c; a child w contributes the factor
    /// `total(w) - cnt[w][c]`.
    fn tables(&self, lists: &ColourLists, k: usize) -> (Vec<Vec<BigUint>>, Vec<BigUint>) {
        let n = self.order.len();
        let mut cnt: Vec<Vec<BigUint>> = vec![Vec::new(); n];
        let mut totals: Vec<BigUint> = vec![BigUint::zero(); n];
        for &v in self.order.iter().rev() {
            let mut row = Vec::with_capacity(k);
            for c in 0..k {
                row.push(if lists.allows(v, c) { BigUint::one() } else { BigUint::zero() });
            }
            for &w in &self.children[v] {
                for c in 0..k {
                    let factor = &totals[w] - &cnt[w][c];
                    row[c] *= factor;
                }
            }
            totals[v] = row.iter().sum();
            cnt[v] = row;
        }
        (cnt, totals)
    }

    /// Number of proper list colourings of the forest.
    fn count(&self, lists: &ColourLists, k: usize) -> BigUint {
        let (_, totals) = self.tables(lists, k);
        let mut out = BigUint::one();
        for &r in &self.roots {
            out *= &totals[r];
        }
        out
    }

    /// Per-colour counts at `target` (which must be a root) times the product
    /// of the remaining components' totals.
    fn count_by_colour(&self, lists: &ColourLists, k: usize, target: Vertex) -> Vec<BigUint> {
        debug_assert!(self.roots.contains(&target), "target must be a component root");
        let (cnt, totals) = self.tables(lists, k);
        let mut rest = BigUint::one();
        for &r in &self.roots {
            if r != target {
                rest *= &totals[r];
            }
        }
        cnt[target].iter().map(|c| c * &rest).collect()
    }

    /// u128 variant of [`ForestDp::tables`]: counts almost always fit (they
    /// are bounded by the number of list colourings), and u128 arithmetic is
    /// worth a large constant factor over BigUint. Returns `None` on
    /// overflow; callers fall back to the exact BigUint path.
    fn tables_u128(&self, lists: &ColourLists, k: usize) -> Option<(Vec<Vec<u128>>, Vec<u128>)> {
        let n = self.order.len();
        let mut cnt: Vec<Vec<u128>> = vec![Vec::new(); n];
        let mut totals: Vec<u128> = vec![0; n];
        for &v in self.order.iter().rev() {
            let mut row = vec![0u128; k];
            for (c, item) in row.iter_mut().enumerate() {
                *item = u128::from(lists.allows(v, c));
            }
            for &w in &self.children[v] {
                for c in 0..k {
                    row[c] = row[c].checked_mul(totals[w] - cnt[w][c])?;
                }
            }
            let mut sum = 0u128;
            for &x in &row {
                sum = sum.checked_add(x)?;
            }
            totals[v] = sum;
            cnt[v] = row;
        }
        Some((cnt, totals))
    }

    fn count_u128(&self, lists: &ColourLists, k: usize) -> Option<u128> {
        let (_, totals) = self.tables_u128(lists, k)?;
        let mut out = 1u128;
        for &r in &self.roots {
            out = out.checked_mul(totals[r])?;
        }
        Some(out)
    }

    fn count_by_colour_u128(&self, lists: &ColourLists, k: usize, target: Vertex) -> Option<Vec<u128>> {
        debug_assert!(self.roots.contains(&target), "target must be a component root");
        let (cnt, totals) = self.tables_u128(lists, k)?;
        let mut rest = 1u128;
        for &r in &self.roots {
            if r != target {
                rest = rest.checked_mul(totals[r])?;
            }
        }
        let mut out = Vec::with_capacity(k);
        for &c in &cnt[target] {
            out.push(c.checked_mul(rest)?);
        }
        Some(out)
    }
}

/// Exact minimum vertex cover of a small edge set, by branching on the first
/// uncovered edge. Deterministic: ties prefer the branch through the smaller
/// endpoint.
fn min_vertex_cover(edges: &[(Vertex, Vertex)]) -> Vec<Vertex> {
    fn solve(edges: &[(Vertex, Vertex)]) -> Vec<Vertex> {
        let Some(&(a, b)) = edges.first() else { return Vec::new() };
        let without = |v: Vertex| -> Vec<(Vertex, Vertex)> {
            edges.iter().copied().filter(|&(x, y)| x != v && y != v).collect()
        };
        let mut with_a = solve(&without(a));
        with_a.push(a);
        let mut with_b = solve(&without(b));
        with_b.push(b);
        if with_a.len() <= with_b.len() {
            with_a
        } else {
            with_b
        }
    }
    let mut cover = solve(edges);
    cover.sort_unstable();
    cover.dedup();
    cover
}

/// Exact number of proper list colourings of a tree (connected, acyclic).
pub fn tree_count(tree: &Graph, lists: &ColourLists, k: usize) -> Result<BigUint> {
    if lists.len() != tree.n() || lists.k() != k {
        return Err(Error::InvalidParameter("colour lists do not match the tree".into()));
    }
    if tree.n() == 0 {
        return Ok(BigUint::one());
    }
    if tree.edge_count() + 1 != tree.n() || !tree.is_connected() {
        return Err(Error::InvalidInput("tree_count needs a connected acyclic input".into()));
    }
    Ok(ForestDp::new(tree, None).count(lists, k))
}

/// Splits the extra edges against a pinned vertex set: edges with both
/// endpoints pinned are checked directly, edges with one pinned endpoint
/// become a list exclusion on the free partner.
fn split_extra_edges(
    extra: &[Edge],
    pinned: &[Vertex],
) -> (Vec<(usize, usize)>, Vec<(usize, Vertex)>) {
    let pos = |v: Vertex| pinned.binary_search(&v).ok();
    let mut both = Vec::new();
    let mut single = Vec::new();
    for e in extra {
        match (pos(e.a()), pos(e.b())) {
            (Some(i), Some(j)) => both.push((i, j)),
            (Some(i), None) => single.push((i, e.b())),
            (None, Some(j)) => single.push((j, e.a())),
            (None, None) => unreachable!("cover misses an extra edge"),
        }
    }
    (both, single)
}

/// Exact number of proper list colourings of a (possibly disconnected)
/// truncated component: a minimum vertex cover of the extra edges is pinned
/// and enumerated; every assignment costs one spanning-forest DP, with the
/// remaining extra-edge constraints folded into the partner lists. Errors
/// with budget-exceeded when the enumeration needs more than `budget` DP
/// evaluations.
pub fn component_count(
    tc: &TruncatedComponent,
    lists: &ColourLists,
    k: usize,
    budget: u64,
) -> Result<BigUint> {
    if lists.len() != tc.component.n() || lists.k() != k {
        return Err(Error::InvalidParameter("colour lists do not match the component".into()));
    }
    let extra: Vec<(Vertex, Vertex)> = tc.extra_edges.iter().map(|e| e.endpoints()).collect();
    let cover = min_vertex_cover(&extra);
    let mut combos: u128 = 1;
    for &p in &cover {
        combos = combos.saturating_mul(lists.mask(p).count_ones() as u128);
    }
    if combos > budget as u128 {
        return Err(Error::BudgetExceeded {
            what: "extra-edge pin enumeration",
            needed: combos,
            budget: budget as u128,
        });
    }
    let forest = Graph::new(tc.component.n(), tc.tree_edges.clone())
        .expect("tree edges come from a valid split");
    let dp = ForestDp::new(&forest, None);
    if cover.is_empty() {
        return Ok(dp.count(lists, k));
    }
    let (both, single) = split_extra_edges(&tc.extra_edges, &cover);
    let mut total = BigUint::zero();
    let mut assignment: Vec<Colour> = Vec::with_capacity(cover.len());
    enumerate_cover(
        &dp,
        lists,
        k,
        &cover,
        &both,
        &single,
        &mut assignment,
        &mut total,
    );
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_cover(
    dp: &ForestDp,
    lists: &ColourLists,
    k: usize,
    cover: &[Vertex],
    both: &[(usize, usize)],
    single: &[(usize, Vertex)],
    assignment: &mut Vec<Colour>,
    total: &mut BigUint,
) {
    let pos = assignment.len();
    if pos == cover.len() {
        let mut pinned = lists.clone();
        for (i, &v) in cover.iter().enumerate() {
            pinned = pinned.pin(v, assignment[i]);
        }
        for &(i, partner) in single {
            pinned.set_mask(partner, pinned.mask(partner) & !(1u64 << assignment[i]));
        }
        *total += dp.count(&pinned, k);
        return;
    }
    for c in lists.colours(cover[pos]).collect::<Vec<_>>() {
        // Prune against already-assigned cover partners.
        if both.iter().any(|&(i, j)| {
            (i == pos && j < pos && assignment[j] == c) || (j == pos && i < pos && assignment[i] == c)
        }) {
            continue;
        }
        assignment.push(c);
        enumerate_cover(dp, lists, k, cover, both, single, assignment, total);
        assignment.pop();
    }
}

/// Exact counts of colourings of a component with the two anchors pinned to
/// equal (`n_same`) or fixed distinct (`n_diff`) colours. Global colour
/// symmetry makes these two numbers the whole joint table:
/// `Z = k * n_same + k(k-1) * n_diff`.
#[derive(Clone, Debug)]
pub struct JointTable {
    pub k: usize,
    pub n_same: BigUint,
    pub n_diff: BigUint,
}

impl JointTable {
    pub fn z_comp(&self) -> BigUint {
        let k = BigUint::from(self.k);
        let km1 = BigUint::from(self.k - 1);
        &k * &self.n_same + k * km1 * &self.n_diff
    }
}

/// Builds the joint table of a truncated component by pinning the first
/// anchor and reading the second anchor's colour distribution off the DP.
/// Anchors in different components factorise automatically (`n_same = n_diff`),
/// which yields the independent marginal `1 - 1/k`.
///
/// Cover-pin assignments are enumerated only up to permutations of the
/// non-anchor colours: labels `{0, 1}` are the anchor colours, fresh labels
/// appear in increasing order, and each class is weighted by its orbit size
/// `(k-2)(k-3)...`. The lists away from the anchors are full, so every
/// assignment in a class yields the same count. `budget` caps the number of
/// DP evaluations.
pub fn joint_table(tc: &TruncatedComponent, k: usize, budget: u64) -> Result<JointTable> {
    let (v, u) = tc.anchor;
    if v == u {
        return Err(Error::InvalidInput("joint_table needs distinct anchors".into()));
    }
    if k < 3 {
        return Err(Error::InvalidParameter(format!("joint_table needs k >= 3, got {k}")));
    }
    let base = ColourLists::full(tc.component.n(), k)?;
    let extra: Vec<(Vertex, Vertex)> = tc.extra_edges.iter().map(|e| e.endpoints()).collect();
    let cover = min_vertex_cover(&extra);
    let forest = Graph::new(tc.component.n(), tc.tree_edges.clone())
        .expect("tree edges come from a valid split");
    let dp = ForestDp::new(&forest, Some(u));
    let (both, single) = split_extra_edges(&tc.extra_edges, &cover);
    let u_pos = cover.binary_search(&u).ok();

    let mut state = SymmetricEnum {
        dp: &dp,
        base: &base,
        k,
        v,
        u,
        u_pos,
        cover: &cover,
        both: &both,
        single: &single,
        budget,
        dp_calls: 0,
        n_same: BigUint::zero(),
        n_diff: BigUint::zero(),
        assignment: Vec::with_capacity(cover.len()),
    };
    state.enumerate(0, 1)?;
    let jt = JointTable { k, n_same: state.n_same, n_diff: state.n_diff };
    if jt.z_comp().is_zero() {
        return Err(Error::UncolourableComponent { k });
    }
    Ok(jt)
}

struct SymmetricEnum<'a> {
    dp: &'a ForestDp,
    base: &'a ColourLists,
    k: usize,
    v: Vertex,
    u: Vertex,
    u_pos: Option<usize>,
    cover: &'a [Vertex],
    both: &'a [(usize, usize)],
    single: &'a [(usize, Vertex)],
    budget: u64,
    dp_calls: u64,
    n_same: BigUint,
    n_diff: BigUint,
    assignment: Vec<Colour>,
}

impl SymmetricEnum<'_> {
    /// `fresh` counts the distinct non-anchor labels used so far; labels are
    /// 0, 1 (anchor colours) then 2, 3, ... in order of first use.
    fn enumerate(&mut self, fresh: usize, mult: u128) -> Result<()> {
        let pos = self.assignment.len();
        if pos == self.cover.len() {
            return self.leaf(mult);
        }
        let w = self.cover[pos];
        let options: Vec<(Colour, usize, u128)> = if w == self.v {
            vec![(0, fresh, mult)]
        } else if w == self.u {
            // Only the two anchor colours feed the table.
            vec![(0, fresh, mult), (1, fresh, mult)]
        } else {
            let mut opts = vec![(0, fresh, mult), (1, fresh, mult)];
            for label in 0..fresh {
                opts.push((2 + label, fresh, mult));
            }
            if fresh < self.k - 2 {
                opts.push((2 + fresh, fresh + 1, mult * (self.k - 2 - fresh) as u128));
            }
            opts
        };
        for (c, next_fresh, next_mult) in options {
            if self.both.iter().any(|&(i, j)| {
                (i == pos && j < pos && self.assignment[j] == c)
                    || (j == pos && i < pos && self.assignment[i] == c)
            }) {
                continue;
            }
            self.assignment.push(c);
            self.enumerate(next_fresh, next_mult)?;
            self.assignment.pop();
        }
        Ok(())
    }

    fn leaf(&mut self, mult: u128) -> Result<()> {
        self.dp_calls += 1;
        if self.dp_calls > self.budget {
            return Err(Error::BudgetExceeded {
                what: "joint-table pin enumeration",
                needed: self.dp_calls as u128,
                budget: self.budget as u128,
            });
        }
        let mut lists = self.base.pin(self.v, 0);
        for (i, &w) in self.cover.iter().enumerate() {
            lists = lists.pin(w, self.assignment[i]);
        }
        for &(i, partner) in self.single {
            lists.set_mask(partner, lists.mask(partner) & !(1u64 << self.assignment[i]));
        }
        let mult = BigUint::from(mult);
        match self.u_pos {
            Some(pos) => {
                let count = match self.dp.count_u128(&lists, self.k) {
                    Some(c) => BigUint::from(c),
                    None => self.dp.count(&lists, self.k),
                };
                if self.assignment[pos] == 0 {
                    self.n_same += mult * count;
                } else {
                    self.n_diff += mult * count;
                }
            }
            None => {
                let (same, diff) = match self.dp.count_by_colour_u128(&lists, self.k, self.u) {
                    Some(per) => (BigUint::from(per[0]), BigUint::from(per[1])),
                    None => {
                        let per = self.dp.count_by_colour(&lists, self.k, self.u);
                        (per[0].clone(), per[1].clone())
                    }
                };
                self.n_same += &mult * &same;
                self.n_diff += mult * diff;
            }
        }
        Ok(())
    }
}

/// `Pr[colour(v) != colour(u)] = (k-1) n_diff / (n_same + (k-1) n_diff)`,
/// evaluated with exact integers and a single final division.
pub fn disagreement_probability(jt: &JointTable) -> Result<f64> {
    let num = BigUint::from(jt.k - 1) * &jt.n_diff;
    let den = &jt.n_same + &num;
    if den.is_zero() {
        return Err(Error::UncolourableComponent { k: jt.k });
    }
    Ok(ratio_to_f64(&num, &den))
}

/// The error-bound diagnostic `max over cells of (cell probability)^-2`,
/// where the cells are `Pr[specific same pair] = n_same / Z` and
/// `Pr[specific differing pair] = n_diff / Z`. Infinite if a cell is empty.
pub fn cij_bound(jt: &JointTable) -> f64 {
    if jt.n_same.is_zero() || jt.n_diff.is_zero() {
        return f64::INFINITY;
    }
    let z = jt.z_comp();
    let same = ratio_to_f64(&z, &jt.n_same);
    let diff = ratio_to_f64(&z, &jt.n_diff);
    (same * same).max(diff * diff)
}

/// `num / den` with both operands reduced to <= 53 significant bits before a
/// single floating division; relative error is a few ulps regardless of
/// magnitude.
pub fn ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    if num.is_zero() {
        return 0.0;
    }
    assert!(!den.is_zero(), "ratio_to_f64 division by zero");
    let ns = num.bits().saturating_sub(53);
    let ds = den.bits().saturating_sub(53);
    let a = (num >> ns).to_f64().expect("fits in 53 bits");
    let b = (den >> ds).to_f64().expect("fits in 53 bits");
    (a / b) * (ns as f64 - ds as f64).exp2()
}

/// Natural log of a positive big integer.
pub fn big_ln(x: &BigUint) -> f64 {
    assert!(!x.is_zero(), "log of zero");
    let shift = x.bits().saturating_sub(53);
    let top = (x >> shift).to_f64().expect("fits in 53 bits");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

//! Edge-insertion schedules and the truncated per-edge instances they induce.
//!
//! A [`BuildSequence`] lists the edges of a graph in the order they are
//! (conceptually) inserted, one per step. Two orderings are provided: the
//! counting variant puts the special edge set R last, the verification
//! variant puts all short-cycle edges first. For step `i`, `G_i` is the
//! graph holding the first `i` edges only -- the edge at index `i` itself is
//! *not* yet present.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{
    ball, distances, induced_subgraph, short_cycle_edges, spanning_forest_split, Edge, Graph,
    Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    Counting,
    Verification,
}

/// An ordered edge-insertion schedule over all edges of a graph.
#[derive(Clone, Debug)]
pub struct BuildSequence {
    pub n: usize,
    pub edges: Vec<Edge>,
    /// Counting variant: index of the first R-edge. Verification variant:
    /// one past the last short-cycle edge.
    pub cutoff: usize,
    pub variant: Variant,
    pub ell: usize,
}

impl BuildSequence {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The graph `G_i` containing exactly the first `i` scheduled edges.
    pub fn graph_before(&self, i: usize) -> Graph {
        Graph::new(self.n, self.edges[..i].to_vec()).expect("sequence edges are valid")
    }
}

/// The set R: edges not lying on any cycle of length <= `ell` but incident to
/// at least one vertex that does. Empty whenever `ell < 3`.
pub fn edge_set_r(g: &Graph, ell: usize, cycle_cap: usize) -> Result<Vec<Edge>> {
    let sc = short_cycle_edges(g, ell, cycle_cap)?;
    let on_vertex = sc.cycle_vertices(g.n());
    Ok(g.edges()
        .iter()
        .copied()
        .filter(|e| !sc.on_short_cycle(*e) && (on_vertex[e.a()] || on_vertex[e.b()]))
        .collect())
}

/// Counting schedule: non-R edges first, then R, both blocks in canonical
/// lexicographic order; `cutoff = |E| - |R|`.
pub fn counting_sequence(g: &Graph, ell: usize, cycle_cap: usize) -> Result<BuildSequence> {
    let r = edge_set_r(g, ell, cycle_cap)?;
    let mut in_r = vec![false; g.edge_count()];
    for e in &r {
        let idx = g.edges().binary_search(e).expect("R edge belongs to graph");
        in_r[idx] = true;
    }
    let mut edges: Vec<Edge> = Vec::with_capacity(g.edge_count());
    edges.extend(g.edges().iter().zip(&in_r).filter(|(_, r)| !**r).map(|(e, _)| *e));
    let cutoff = edges.len();
    edges.extend(g.edges().iter().zip(&in_r).filter(|(_, r)| **r).map(|(e, _)| *e));
    Ok(BuildSequence { n: g.n(), edges, cutoff, variant: Variant::Counting, ell })
}

/// Verification schedule: edges on cycles of length <= `ell` first, the rest
/// after, both blocks in canonical order; `cutoff` counts the cycle edges.
pub fn verification_sequence(g: &Graph, ell: usize, cycle_cap: usize) -> Result<BuildSequence> {
    let sc = short_cycle_edges(g, ell, cycle_cap)?;
    let mut edges: Vec<Edge> = Vec::with_capacity(g.edge_count());
    edges.extend(g.edges().iter().copied().filter(|e| sc.on_short_cycle(*e)));
    let cutoff = edges.len();
    edges.extend(g.edges().iter().copied().filter(|e| !sc.on_short_cycle(*e)));
    Ok(BuildSequence { n: g.n(), edges, cutoff, variant: Variant::Verification, ell })
}

/// The radius-`t` instance around the edge at step `i`: the subgraph of `G_i`
/// induced on the ball of radius `t` around the edge's endpoints, decomposed
/// into a spanning forest plus extra edges.
#[derive(Clone, Debug)]
pub struct TruncatedComponent {
    pub component: Graph,
    /// Anchor endpoints in component-local coordinates.
    pub anchor: (Vertex, Vertex),
    pub radius: usize,
    pub tree_edges: Vec<Edge>,
    pub extra_edges: Vec<Edge>,
    /// Distinct endpoints of the extra edges, sorted (component-local).
    pub pin_set: Vec<Vertex>,
    /// Set when the anchors lie in different components of `G_i`.
    pub disconnected: bool,
    /// Local index -> vertex of the parent graph.
    pub to_parent: Vec<Vertex>,
}

impl TruncatedComponent {
    /// Strips, iteratively, every leaf that is neither an anchor nor an
    /// extra-edge endpoint. Such pendant subtrees are unconstrained, so they
    /// multiply every pinned colouring count by the same factor; the
    /// disagreement probability and the error diagnostic of the core are
    /// exactly those of the full component, at a fraction of the DP size.
    pub fn pruned_core(&self) -> TruncatedComponent {
        let g = &self.component;
        let mut protected = vec![false; g.n()];
        protected[self.anchor.0] = true;
        protected[self.anchor.1] = true;
        for e in &self.extra_edges {
            protected[e.a()] = true;
            protected[e.b()] = true;
        }
        let mut alive = vec![true; g.n()];
        let mut degree: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        let mut queue: Vec<Vertex> =
            (0..g.n()).filter(|&v| !protected[v] && degree[v] <= 1).collect();
        while let Some(v) = queue.pop() {
            if !alive[v] || protected[v] || degree[v] > 1 {
                continue;
            }
            alive[v] = false;
            for &w in g.neighbours(v) {
                if alive[w] {
                    degree[w] -= 1;
                    if !protected[w] && degree[w] <= 1 {
                        queue.push(w);
                    }
                }
            }
        }
        let keep: Vec<Vertex> = (0..g.n()).filter(|&v| alive[v]).collect();
        let sub = induced_subgraph(g, &keep);
        let anchor = (
            sub.local(self.anchor.0).expect("anchors are protected"),
            sub.local(self.anchor.1).expect("anchors are protected"),
        );
        let to_parent = sub.to_parent.iter().map(|&v| self.to_parent[v]).collect();
        TruncatedComponent::analyse(sub.graph, anchor, self.radius, to_parent)
    }

    /// Decomposes an arbitrary anchor component (used directly by tests and
    /// by [`truncated_component`]).
    pub fn analyse(
        component: Graph,
        anchor: (Vertex, Vertex),
        radius: usize,
        to_parent: Vec<Vertex>,
    ) -> TruncatedComponent {
        let (tree_edges, extra_edges) = spanning_forest_split(&component);
        let mut pin_set: Vec<Vertex> = extra_edges
            .iter()
            .flat_map(|e| [e.a(), e.b()])
            .collect();
        pin_set.sort_unstable();
        pin_set.dedup();
        let dist = distances(&component, &[anchor.0]);
        let disconnected = dist[anchor.1].is_none();
        TruncatedComponent {
            component,
            anchor,
            radius,
            tree_edges,
            extra_edges,
            pin_set,
            disconnected,
            to_parent,
        }
    }
}

/// Builds the truncated instance for step `i` of a sequence: the component of
/// the anchor pair inside the radius-`t` ball, measured in `G_i` (the edge at
/// index `i` excluded). Anchors in different components of `G_i` yield a
/// two-component result with the `disconnected` flag set.
pub fn truncated_component(
    g: &Graph,
    seq: &BuildSequence,
    i: usize,
    t: usize,
) -> Result<TruncatedComponent> {
    if i >= seq.len() {
        return Err(Error::InvalidParameter(format!(
            "step {i} out of range for a sequence of {} edges",
            seq.len()
        )));
    }
    if t == 0 {
        return Err(Error::InvalidParameter("truncation radius must be >= 1".into()));
    }
    debug_assert_eq!(g.n(), seq.n);
    let (v, u) = seq.edges[i].endpoints();
    let gi = seq.graph_before(i);
    let b = ball(&gi, &[v, u], t);
    let sub = induced_subgraph(&gi, &b);
    let anchor = (
        sub.local(v).expect("anchor is in its own ball"),
        sub.local(u).expect("anchor is in its own ball"),
    );
    Ok(TruncatedComponent::analyse(sub.graph, anchor, t, sub.to_parent))
}

use serde::Serialize;

use super::green::UnionFind;
use super::{ElementSet, FiniteSemigroup};

/// The right Cayley graph `Γ_r(S, A)`: vertices are all of `S`, with an arc
/// `x → xa` labelled `a` for each `a ∈ A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CayleyGraph {
    pub vertex_count: usize,
    pub labels: Vec<usize>,
    /// `(source, label, target)` triples, sorted.
    pub arcs: Vec<(usize, usize, usize)>,
}

pub fn right_cayley_graph(s: &FiniteSemigroup, a: &ElementSet) -> CayleyGraph {
    let mut arcs = Vec::with_capacity(s.order() * a.len());
    for x in s.elements() {
        for &g in a {
            arcs.push((x, g, s.mul(x, g)));
        }
    }
    CayleyGraph { vertex_count: s.order(), labels: a.iter().copied().collect(), arcs }
}

pub fn is_connected_undirected(g: &CayleyGraph) -> bool {
    if g.vertex_count == 0 {
        return true;
    }
    let mut uf = UnionFind::new(g.vertex_count);
    for &(x, _, y) in &g.arcs {
        uf.union(x, y);
    }
    (0..g.vertex_count).all(|x| uf.find(x) == 0)
}

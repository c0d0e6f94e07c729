//! 2-colorability by depth-first indexing.
//!
//! A depth-first traversal assigns every vertex its depth (DFI) in the
//! traversal forest. Colouring by DFI parity is proper unless some non-tree
//! edge joins two vertices of equal parity; the tree paths from those
//! endpoints to their lowest common ancestor, closed by that edge, then form
//! a cycle of odd length. Every edge is scanned twice, so the whole decision
//! is O(V + E).

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::coloring::Coloring;
use crate::graph::{Graph, Vertex};

/// Depth-first traversal forest.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DfiTrace {
    /// Depth of each vertex below its component root.
    pub dfi: Vec<usize>,
    pub parent: Vec<Option<Vertex>>,
    pub root_of_component: Vec<Vertex>,
}

/// An odd cycle `v_0, v_1, ..., v_{2m}` (closing edge `v_{2m} v_0` implied).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct OddCycleCertificate {
    pub cycle: Vec<Vertex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("cycle has {0} vertices; an odd cycle needs at least 3")]
    TooShort(usize),
    #[error("cycle length {0} is even")]
    EvenLength(usize),
    #[error("vertex {0} repeats")]
    Repeated(Vertex),
    #[error("{{{0}, {1}}} is not an edge")]
    MissingEdge(Vertex, Vertex),
}

impl OddCycleCertificate {
    /// Number of edges on the cycle.
    pub fn len(&self) -> usize {
        self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycle.is_empty()
    }

    /// Checks the certificate against `g`: odd length ≥ 3, no repeated vertex,
    /// and every consecutive pair (including the wrap-around) is an edge.
    pub fn check(&self, g: &Graph) -> Result<(), CertificateError> {
        let n = self.cycle.len();
        if n < 3 {
            return Err(CertificateError::TooShort(n));
        }
        if n.is_multiple_of(2) {
            return Err(CertificateError::EvenLength(n));
        }
        let mut seen = vec![false; g.vertex_count()];
        for &v in &self.cycle {
            if v >= g.vertex_count() {
                return Err(CertificateError::MissingEdge(v, v));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(CertificateError::Repeated(v));
            }
        }
        for i in 0..n {
            let (a, b) = (self.cycle[i], self.cycle[(i + 1) % n]);
            if !g.has_edge(a, b) {
                return Err(CertificateError::MissingEdge(a, b));
            }
        }
        Ok(())
    }

    /// Rotation/reflection-invariant form: smallest vertex first, then the
    /// direction whose second entry is smaller.
    pub fn canonical(&self) -> OddCycleCertificate {
        let n = self.cycle.len();
        if n == 0 {
            return self.clone();
        }
        let start = (0..n).min_by_key(|&i| self.cycle[i]).unwrap();
        let fwd: Vec<_> = (0..n).map(|i| self.cycle[(start + i) % n]).collect();
        let bwd: Vec<_> = (0..n).map(|i| self.cycle[(start + n - i) % n]).collect();
        OddCycleCertificate {
            cycle: if n > 1 && bwd[1] < fwd[1] { bwd } else { fwd },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TwoColorResult {
    Colorable(Coloring),
    OddCycle(OddCycleCertificate),
}

impl TwoColorResult {
    pub fn is_colorable(&self) -> bool {
        matches!(self, TwoColorResult::Colorable(_))
    }
}

/// Depth-first traversal from `roots` (in order, skipping visited ones),
/// neighbors taken in ascending order. `on_conflict` sees every
/// equal-parity non-tree edge `(u, w)` as it is scanned from `u`; returning
/// `true` stops the traversal.
pub(crate) fn traverse<R, F>(g: &Graph, roots: R, mut on_conflict: F) -> DfiTrace
where
    R: IntoIterator<Item = Vertex>,
    F: FnMut(&DfiTrace, Vertex, Vertex) -> bool,
{
    let n = g.vertex_count();
    const UNSEEN: usize = usize::MAX;
    let mut t = DfiTrace {
        dfi: vec![UNSEEN; n],
        parent: vec![None; n],
        root_of_component: vec![UNSEEN; n],
    };
    let mut stack: Vec<(Vertex, usize)> = Vec::new();

    for r in roots {
        if t.dfi[r] != UNSEEN {
            continue;
        }
        t.dfi[r] = 0;
        t.root_of_component[r] = r;
        stack.push((r, 0));
        while let Some(top) = stack.last_mut() {
            let (u, i) = *top;
            let adj = g.neighbors(u);
            if i == adj.len() {
                stack.pop();
                continue;
            }
            top.1 += 1;
            let w = adj[i];
            if t.dfi[w] == UNSEEN {
                t.dfi[w] = t.dfi[u] + 1;
                t.parent[w] = Some(u);
                t.root_of_component[w] = r;
                stack.push((w, 0));
            } else if t.parent[u] != Some(w)
                && t.dfi[w] % 2 == t.dfi[u] % 2
                && on_conflict(&t, u, w)
            {
                return t;
            }
        }
    }
    t
}

/// Odd cycle closed by the non-tree edge `(u, w)` with equal DFI parity.
pub(crate) fn cycle_through(t: &DfiTrace, u: Vertex, w: Vertex) -> OddCycleCertificate {
    let mut up_u = vec![u];
    let mut x = u;
    while let Some(p) = t.parent[x] {
        up_u.push(p);
        x = p;
    }
    let pos_in_u: HashMap<Vertex, usize> = up_u.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut up_w = Vec::new();
    let mut y = w;
    let lca_pos = loop {
        if let Some(&pos) = pos_in_u.get(&y) {
            break pos;
        }
        up_w.push(y);
        y = t.parent[y].expect("endpoints share a component root");
    };
    let mut cycle: Vec<Vertex> = up_u[..=lca_pos].to_vec();
    cycle.extend(up_w.into_iter().rev());
    OddCycleCertificate { cycle }
}

/// Depth-first indexing over all components. Roots are the lowest-indexed
/// unvisited vertices; neighbors are visited in ascending index order.
pub fn dfi_levels(g: &Graph) -> DfiTrace {
    traverse(g, g.vertices(), |_, _, _| false)
}

/// Decides 2-colorability, returning either a proper coloring with colors
/// in `{0, 1}` or the first odd cycle met in the traversal.
pub fn two_color(g: &Graph) -> TwoColorResult {
    let mut conflict = None;
    let t = traverse(g, g.vertices(), |t, u, w| {
        conflict = Some(cycle_through(t, u, w));
        true
    });
    match conflict {
        Some(cert) => {
            debug_assert!(cert.check(g).is_ok());
            TwoColorResult::OddCycle(cert)
        }
        None => TwoColorResult::Colorable(Coloring::new(
            t.dfi.iter().map(|d| d % 2).collect(),
            2,
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coloring::verify_coloring;
    use crate::generate::{complete, cycle, path};
    use crate::graph::build_graph;

    #[test]
    fn even_clock_alternates() {
        let g = cycle(12);
        match two_color(&g) {
            TwoColorResult::Colorable(c) => {
                assert!(verify_coloring(&g, &c).unwrap());
                for v in 0..12 {
                    assert_ne!(c.colors[v], c.colors[(v + 1) % 12]);
                }
            }
            other => panic!("expected coloring, got {other:?}"),
        }
    }

    #[test]
    fn odd_clock_certificate() {
        let g = cycle(11);
        match two_color(&g) {
            TwoColorResult::OddCycle(cert) => {
                assert_eq!(cert.len(), 11);
                cert.check(&g).unwrap();
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn edgeless_all_zero() {
        let g = Graph::edgeless(5);
        assert_eq!(
            two_color(&g),
            TwoColorResult::Colorable(Coloring::new(vec![0; 5], 2))
        );
        assert!(two_color(&Graph::edgeless(0)).is_colorable());
    }

    #[test]
    fn dfi_on_path_and_edgeless() {
        let t = dfi_levels(&path(3));
        assert_eq!(t.dfi, vec![0, 1, 2]);
        assert_eq!(t.parent, vec![None, Some(0), Some(1)]);
        let t = dfi_levels(&Graph::edgeless(3));
        assert_eq!(t.dfi, vec![0, 0, 0]);
        assert_eq!(t.root_of_component, vec![0, 1, 2]);
    }

    #[test]
    fn dfi_parities_alternate_on_tree_edges() {
        let g = cycle(4);
        let t = dfi_levels(&g);
        for v in g.vertices() {
            if let Some(p) = t.parent[v] {
                assert!(g.has_edge(v, p));
                assert_eq!(t.dfi[v], t.dfi[p] + 1);
            }
        }
    }

    #[test]
    fn short_cycle_inside_larger_graph() {
        // Even square 0-1-2-3 with a pendant triangle 3-4-5.
        let g = build_graph(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        let TwoColorResult::OddCycle(cert) = two_color(&g) else {
            panic!("triangle present");
        };
        cert.check(&g).unwrap();
        assert_eq!(cert.canonical().cycle, vec![3, 4, 5]);
    }

    #[test]
    fn second_component_odd() {
        let g = build_graph(5, &[(0, 1), (2, 3), (3, 4), (4, 2)]).unwrap();
        let TwoColorResult::OddCycle(cert) = two_color(&g) else {
            panic!();
        };
        assert_eq!(cert.canonical().cycle, vec![2, 3, 4]);
    }

    #[test]
    fn certificate_checker_rejects() {
        let g = complete(4);
        let c = |v: Vec<usize>| OddCycleCertificate { cycle: v };
        assert_eq!(c(vec![0, 1]).check(&g), Err(CertificateError::TooShort(2)));
        assert_eq!(c(vec![0, 1, 2, 3]).check(&g), Err(CertificateError::EvenLength(4)));
        assert_eq!(c(vec![0, 1, 0]).check(&g), Err(CertificateError::Repeated(0)));
        let p = path(3);
        assert_eq!(c(vec![0, 1, 2]).check(&p), Err(CertificateError::MissingEdge(2, 0)));
    }

    #[test]
    fn canonical_form() {
        let a = OddCycleCertificate { cycle: vec![4, 2, 7] };
        let b = OddCycleCertificate { cycle: vec![7, 2, 4] };
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.canonical().cycle, vec![2, 4, 7]);
    }
}

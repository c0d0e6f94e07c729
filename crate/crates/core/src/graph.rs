//! Simple undirected graphs with dense 0-based vertex indices.

use std::collections::BTreeSet;

use thiserror::Error;

/// Vertex index. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: Vertex, vertex_count: usize },
}

/// An immutable simple undirected graph.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted lexicographically.
/// Adjacency is kept in one flat array (`targets[offsets[v]..offsets[v + 1]]`),
/// each list sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(Vertex, Vertex)>,
    offsets: Vec<usize>,
    targets: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, repeated pairs (in either
    /// orientation) and endpoints outside `0..vertex_count`.
    pub fn new<I>(vertex_count: usize, edge_list: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut seen = BTreeSet::new();
        for (u, v) in edge_list {
            for w in [u, v] {
                if w >= vertex_count {
                    return Err(GraphError::VertexOutOfRange {
                        vertex: w,
                        vertex_count,
                    });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
        }
        Ok(Self::from_canonical(vertex_count, seen.into_iter().collect()))
    }

    /// Graph with no edges.
    pub fn edgeless(vertex_count: usize) -> Self {
        Self::from_canonical(vertex_count, Vec::new())
    }

    /// `edges` must be sorted, deduplicated, loop-free and normalized to `u < v`.
    pub(crate) fn from_canonical(vertex_count: usize, edges: Vec<(Vertex, Vertex)>) -> Self {
        debug_assert!(edges.windows(2).all(|w| w[0] < w[1]));
        let mut offsets = vec![0usize; vertex_count + 1];
        for &(u, v) in &edges {
            debug_assert!(u < v && v < vertex_count);
            offsets[u + 1] += 1;
            offsets[v + 1] += 1;
        }
        for i in 0..vertex_count {
            offsets[i + 1] += offsets[i];
        }
        // Walking the sorted edge list fills every list in ascending order:
        // smaller neighbors arrive first, then larger ones.
        let mut cursor = offsets.clone();
        let mut targets = vec![0; 2 * edges.len()];
        for &(u, v) in &edges {
            targets[cursor[u]] = v;
            cursor[u] += 1;
            targets[cursor[v]] = u;
            cursor[v] += 1;
        }
        let g = Graph {
            vertex_count,
            edges,
            offsets,
            targets,
        };
        debug_assert!(g.vertices().all(|v| g.neighbors(v).windows(2).all(|w| w[0] < w[1])));
        g
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.vertex_count && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Δ(G); zero for edgeless and empty graphs.
    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.vertex_count
    }

    /// The complement graph on the same vertex set.
    pub fn complement(&self) -> Graph {
        let n = self.vertex_count;
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2 - self.edges.len());
        for u in 0..n {
            let mut adj = self.neighbors(u).iter().peekable();
            for v in (u + 1)..n {
                while adj.peek().is_some_and(|&&w| w < v) {
                    adj.next();
                }
                if adj.peek() != Some(&&v) {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_canonical(n, edges)
    }

    /// Subgraph induced by the vertices where `keep` is true, together with
    /// the map from new vertex indices back to original ones.
    pub fn induced(&self, keep: &[bool]) -> (Graph, Vec<Vertex>) {
        assert_eq!(keep.len(), self.vertex_count);
        let mut new_index = vec![usize::MAX; self.vertex_count];
        let mut original = Vec::new();
        for v in self.vertices().filter(|&v| keep[v]) {
            new_index[v] = original.len();
            original.push(v);
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| keep[u] && keep[v])
            .map(|&(u, v)| (new_index[u], new_index[v]))
            .collect();
        (Graph::from_canonical(original.len(), edges), original)
    }

    /// True if no two vertices of `set` are adjacent.
    pub fn is_independent_set(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| u != v && !self.has_edge(u, v)))
    }

    /// True if every pair of distinct vertices of `set` is adjacent.
    pub fn is_clique(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    /// True if every edge has an endpoint in `set`.
    pub fn is_vertex_cover(&self, set: &[Vertex]) -> bool {
        let mut inside = vec![false; self.vertex_count];
        for &v in set {
            if v < self.vertex_count {
                inside[v] = true;
            }
        }
        self.edges.iter().all(|&(u, v)| inside[u] || inside[v])
    }
}

/// Free-function form of [`Graph::new`].
pub fn build_graph(
    vertex_count: usize,
    edge_list: &[(Vertex, Vertex)],
) -> Result<Graph, GraphError> {
    Graph::new(vertex_count, edge_list.iter().copied())
}

/// Free-function form of [`Graph::max_degree`].
pub fn max_degree(g: &Graph) -> usize {
    g.max_degree()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle() {
        let g = build_graph(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g.max_degree(), 2);
        assert_eq!(g.edges(), &[(0, 1), (0, 2), (1, 2)]);
        assert_eq!(g.neighbors(2), &[0, 1]);
    }

    #[test]
    fn edgeless_and_empty() {
        let g = build_graph(2, &[]).unwrap();
        assert_eq!(g.vertex_count(), 2);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.max_degree(), 0);
        assert_eq!(Graph::edgeless(0).max_degree(), 0);
        assert_eq!(max_degree(&Graph::edgeless(7)), 0);
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(
            build_graph(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert_eq!(build_graph(3, &[(2, 2)]), Err(GraphError::SelfLoop(2)));
        assert_eq!(
            build_graph(3, &[(0, 3)]),
            Err(GraphError::VertexOutOfRange {
                vertex: 3,
                vertex_count: 3
            })
        );
    }

    #[test]
    fn edge_order_irrelevant() {
        let a = build_graph(4, &[(0, 1), (2, 3), (1, 2)]).unwrap();
        let b = build_graph(4, &[(3, 2), (2, 1), (1, 0)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn complement_of_path() {
        let p = build_graph(3, &[(0, 1), (1, 2)]).unwrap();
        let c = p.complement();
        assert_eq!(c.edges(), &[(0, 2)]);
        assert_eq!(c.complement(), p);
    }

    #[test]
    fn induced_subgraph() {
        let g = build_graph(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let (h, map) = g.induced(&[true, false, true, true]);
        assert_eq!(map, vec![0, 2, 3]);
        assert_eq!(h.edges(), &[(0, 2), (1, 2)]);
    }

    #[test]
    fn set_predicates() {
        let g = build_graph(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert!(g.is_clique(&[0, 1, 2]));
        assert!(!g.is_clique(&[0, 1, 3]));
        assert!(g.is_independent_set(&[0, 3]));
        assert!(!g.is_independent_set(&[1, 2]));
        assert!(g.is_vertex_cover(&[0, 2]));
        assert!(!g.is_vertex_cover(&[0, 1]));
    }
}

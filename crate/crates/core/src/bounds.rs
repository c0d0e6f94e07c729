//! Exact clique, independence and vertex-cover numbers for small graphs,
//! and a report that audits the usual inequalities between them and χ.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{chromatic_number, Chromatic, SearchLimits};
use crate::graph::{Graph, Vertex};

/// Default vertex cap for the exponential searches in this module.
pub const DEFAULT_MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("graph has {vertex_count} vertices; limit is {limit}")]
    TooLarge { vertex_count: usize, limit: usize },
}

fn check_size(g: &Graph, limit: usize) -> Result<(), BoundsError> {
    if g.vertex_count() > limit {
        return Err(BoundsError::TooLarge {
            vertex_count: g.vertex_count(),
            limit,
        });
    }
    Ok(())
}

/// Orders `cand` by greedy color class and returns, per position, the number
/// of classes used up to it: an upper bound on any clique inside `cand[..=i]`.
fn color_sort(adj: &[Vec<bool>], cand: &[Vertex]) -> (Vec<Vertex>, Vec<usize>) {
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    for &v in cand {
        match classes
            .iter_mut()
            .find(|class| class.iter().all(|&u| !adj[u][v]))
        {
            Some(class) => class.push(v),
            None => classes.push(vec![v]),
        }
    }
    let mut order = Vec::with_capacity(cand.len());
    let mut bound = Vec::with_capacity(cand.len());
    for (i, class) in classes.into_iter().enumerate() {
        for v in class {
            order.push(v);
            bound.push(i + 1);
        }
    }
    (order, bound)
}

fn expand(adj: &[Vec<bool>], clique: &mut Vec<Vertex>, cand: &[Vertex], best: &mut Vec<Vertex>) {
    let (order, bound) = color_sort(adj, cand);
    for i in (0..order.len()).rev() {
        if clique.len() + bound[i] <= best.len() {
            return;
        }
        let v = order[i];
        clique.push(v);
        let next: Vec<_> = order[..i].iter().copied().filter(|&u| adj[v][u]).collect();
        if next.is_empty() {
            if clique.len() > best.len() {
                *best = clique.clone();
            }
        } else {
            expand(adj, clique, &next, best);
        }
        clique.pop();
    }
}

/// ω(G) with a maximum clique, by branch and bound with greedy-coloring
/// bounds on the candidate set.
pub fn clique_number(g: &Graph, max_vertices: usize) -> Result<(usize, Vec<Vertex>), BoundsError> {
    check_size(g, max_vertices)?;
    let n = g.vertex_count();
    let mut adj = vec![vec![false; n]; n];
    for &(u, v) in g.edges() {
        adj[u][v] = true;
        adj[v][u] = true;
    }
    // low-degree vertices first so high-degree ones are branched on first
    let mut cand: Vec<_> = g.vertices().collect();
    cand.sort_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)));
    let mut best = Vec::new();
    expand(&adj, &mut Vec::new(), &cand, &mut best);
    best.sort_unstable();
    debug_assert!(g.is_clique(&best));
    Ok((best.len(), best))
}

/// α(G), computed as ω of the complement.
pub fn independence_number(
    g: &Graph,
    max_vertices: usize,
) -> Result<(usize, Vec<Vertex>), BoundsError> {
    check_size(g, max_vertices)?;
    let (size, set) = clique_number(&g.complement(), max_vertices)?;
    debug_assert!(g.is_independent_set(&set));
    Ok((size, set))
}

/// MVC(G) = V − α(G); the witness is the complement of a maximum
/// independent set.
pub fn min_vertex_cover(
    g: &Graph,
    max_vertices: usize,
) -> Result<(usize, Vec<Vertex>), BoundsError> {
    let (_, independent) = independence_number(g, max_vertices)?;
    Ok(cover_from_independent(g, &independent))
}

fn cover_from_independent(g: &Graph, independent: &[Vertex]) -> (usize, Vec<Vertex>) {
    let mut inside = vec![false; g.vertex_count()];
    for &v in independent {
        inside[v] = true;
    }
    let cover: Vec<_> = g.vertices().filter(|&v| !inside[v]).collect();
    debug_assert!(g.is_vertex_cover(&cover));
    (cover.len(), cover)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witnesses {
    pub clique: Option<Vec<Vertex>>,
    pub independent_set: Option<Vec<Vertex>>,
    pub vertex_cover: Option<Vec<Vertex>>,
}

/// One audited inequality `lhs <= rhs`. `passed` is `None` when either side
/// could not be computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainCheck {
    pub name: &'static str,
    pub relation: &'static str,
    pub lhs: Option<usize>,
    pub rhs: Option<usize>,
    pub passed: Option<bool>,
}

impl ChainCheck {
    fn new(name: &'static str, relation: &'static str, lhs: Option<usize>, rhs: Option<usize>) -> Self {
        let passed = lhs.zip(rhs).map(|(a, b)| a <= b);
        Self {
            name,
            relation,
            lhs,
            rhs,
            passed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub vertex_count: usize,
    pub edge_count: usize,
    pub clique_number: Option<usize>,
    pub independence_number: Option<usize>,
    pub min_vertex_cover: Option<usize>,
    pub max_degree_plus_one: usize,
    pub chromatic: Option<usize>,
    pub witnesses: Witnesses,
    pub chain_violations: Vec<ChainCheck>,
    /// Fields left empty, with the reason.
    pub unavailable: Vec<String>,
}

impl BoundsReport {
    pub fn check(&self, name: &str) -> Option<&ChainCheck> {
        self.chain_violations.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &ChainCheck> {
        self.chain_violations
            .iter()
            .filter(|c| c.passed == Some(false))
    }

    /// Re-checks every witness against `g` and the identity MVC + α = V.
    pub fn witnesses_certify(&self, g: &Graph) -> bool {
        let w = &self.witnesses;
        let sized = |set: &Option<Vec<Vertex>>, n: Option<usize>| {
            set.as_ref().map(Vec::len) == n
        };
        sized(&w.clique, self.clique_number)
            && sized(&w.independent_set, self.independence_number)
            && sized(&w.vertex_cover, self.min_vertex_cover)
            && w.clique.as_ref().is_none_or(|s| g.is_clique(s))
            && w.independent_set.as_ref().is_none_or(|s| g.is_independent_set(s))
            && w.vertex_cover.as_ref().is_none_or(|s| g.is_vertex_cover(s))
            && match (self.min_vertex_cover, self.independence_number) {
                (Some(c), Some(a)) => c + a == g.vertex_count(),
                _ => true,
            }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundsLimits {
    pub max_vertices: usize,
    pub search: SearchLimits,
}

impl Default for BoundsLimits {
    fn default() -> Self {
        Self {
            max_vertices: DEFAULT_MAX_VERTICES,
            search: SearchLimits::unlimited(),
        }
    }
}

/// Computes ω, α, MVC, Δ+1 and optionally χ, then evaluates the checks
/// `omega_le_chi`, `chi_le_delta_plus_one`, `chi_le_alpha`, `omega_le_mvc`
/// and `mvc_le_alpha`. Failed checks are reported, not raised.
pub fn bounds_report(g: &Graph, compute_chi: bool, limits: &BoundsLimits) -> BoundsReport {
    let mut unavailable = Vec::new();

    let clique = match clique_number(g, limits.max_vertices) {
        Ok((_, set)) => Some(set),
        Err(e) => {
            unavailable.push(format!("clique_number: {e}"));
            None
        }
    };
    let independent = match independence_number(g, limits.max_vertices) {
        Ok((_, set)) => Some(set),
        Err(e) => {
            unavailable.push(format!("independence_number: {e}"));
            None
        }
    };
    let cover = match &independent {
        Some(set) => Some(cover_from_independent(g, set).1),
        None => {
            unavailable.push("min_vertex_cover: needs independence_number".to_string());
            None
        }
    };

    let chromatic = if compute_chi {
        match chromatic_number(g, &limits.search) {
            Chromatic::Exact { chromatic, .. } => Some(chromatic),
            Chromatic::Bounded { lower, upper } => {
                unavailable.push(format!(
                    "chromatic: search budget exhausted, {lower} <= chi <= {upper}"
                ));
                None
            }
        }
    } else {
        None
    };

    let omega = clique.as_ref().map(Vec::len);
    let alpha = independent.as_ref().map(Vec::len);
    let mvc = cover.as_ref().map(Vec::len);
    let delta1 = g.max_degree() + 1;

    let chain_violations = vec![
        ChainCheck::new("omega_le_chi", "omega <= chi", omega, chromatic),
        ChainCheck::new("chi_le_delta_plus_one", "chi <= delta + 1", chromatic, Some(delta1)),
        ChainCheck::new("chi_le_alpha", "chi <= alpha", chromatic, alpha),
        ChainCheck::new("omega_le_mvc", "omega <= mvc", omega, mvc),
        ChainCheck::new("mvc_le_alpha", "mvc <= alpha", mvc, alpha),
    ];

    BoundsReport {
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        clique_number: omega,
        independence_number: alpha,
        min_vertex_cover: mvc,
        max_degree_plus_one: delta1,
        chromatic,
        witnesses: Witnesses {
            clique,
            independent_set: independent,
            vertex_cover: cover,
        },
        chain_violations,
        unavailable,
    }
}

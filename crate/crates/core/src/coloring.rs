//! Proper colorings: verification, first-fit greedy, and exact search.
//!
//! The exact solver is a backtracking search with forward checking. Each
//! uncolored vertex keeps its degree of freedom, the number of palette colors
//! not yet taken by a colored neighbor. A branch dies as soon as some
//! uncolored vertex drops to zero, and the next vertex to branch on is always
//! the one with the fewest colors left.

use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::graph::{Graph, Vertex};

/// Color index per vertex, with the palette size `k` the coloring claims.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub palette_size: usize,
}

impl Coloring {
    pub fn new(colors: Vec<usize>, palette_size: usize) -> Self {
        Self {
            colors,
            palette_size,
        }
    }

    /// `1 + max color`, or 0 for the empty coloring.
    pub fn colors_used(&self) -> usize {
        self.colors.iter().max().map_or(0, |&c| c + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring has {got} entries but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },
    #[error("order is not a permutation of the vertices")]
    NotAPermutation,
}

/// True iff no edge is monochromatic and every color is below the palette size.
pub fn verify_coloring(g: &Graph, c: &Coloring) -> Result<bool, ColoringError> {
    if c.colors.len() != g.vertex_count() {
        return Err(ColoringError::LengthMismatch {
            expected: g.vertex_count(),
            got: c.colors.len(),
        });
    }
    Ok(c.colors.iter().all(|&x| x < c.palette_size)
        && g.edges().iter().all(|&(u, v)| c.colors[u] != c.colors[v]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GreedyResult {
    pub coloring: Coloring,
    pub colors_used: usize,
    pub order: Vec<Vertex>,
}

/// First-fit: each vertex in `order` takes the smallest color absent from its
/// already-colored neighbors.
pub fn greedy_color(g: &Graph, order: &[Vertex]) -> Result<GreedyResult, ColoringError> {
    let n = g.vertex_count();
    if order.len() != n {
        return Err(ColoringError::NotAPermutation);
    }
    let mut seen = vec![false; n];
    for &v in order {
        if v >= n || std::mem::replace(&mut seen[v], true) {
            return Err(ColoringError::NotAPermutation);
        }
    }

    const NONE: usize = usize::MAX;
    let mut colors = vec![NONE; n];
    // taken[c] == stamp marks color c as used by a neighbor of the current vertex
    let mut taken = vec![NONE; g.max_degree() + 1];
    for (stamp, &v) in order.iter().enumerate() {
        for &w in g.neighbors(v) {
            if colors[w] != NONE {
                taken[colors[w]] = stamp;
            }
        }
        colors[v] = (0..).find(|&c| taken[c] != stamp).unwrap();
    }
    let colors_used = colors.iter().max().map_or(0, |&c| c + 1);
    Ok(GreedyResult {
        coloring: Coloring::new(colors, colors_used),
        colors_used,
        order: order.to_vec(),
    })
}

/// Vertices by descending degree, ties by index.
pub fn largest_first_order(g: &Graph) -> Vec<Vertex> {
    let mut order: Vec<_> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    order
}

/// A maximal clique grown greedily from each start vertex (neighbors by
/// descending degree); the largest one found. Lower bound for ω and χ.
pub fn greedy_clique(g: &Graph) -> Vec<Vertex> {
    let mut best = Vec::new();
    for s in g.vertices() {
        if g.degree(s) < best.len() {
            continue;
        }
        let mut cand: Vec<_> = g.neighbors(s).to_vec();
        cand.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
        let mut clique = vec![s];
        for v in cand {
            if clique.iter().all(|&u| g.has_edge(u, v)) {
                clique.push(v);
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Optional caps on an exact search. Hitting either yields an inconclusive
/// result, never a wrong one.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchLimits {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
}

impl SearchLimits {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn nodes(max_nodes: u64) -> Self {
        Self {
            max_nodes: Some(max_nodes),
            max_time: None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchStats {
    /// Color assignments attempted.
    pub nodes_expanded: u64,
    /// Assignments undone, whether by a domain wipeout or an exhausted subtree.
    pub backtracks: u64,
    pub wall_time: Duration,
}

impl SearchStats {
    fn absorb(&mut self, other: &SearchStats) {
        self.nodes_expanded += other.nodes_expanded;
        self.backtracks += other.backtracks;
        self.wall_time += other.wall_time;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Colorable(Coloring),
    NotColorable,
    BudgetExhausted(SearchStats),
}

/// Node budget and deadline shared across one or more searches.
struct Budget {
    nodes_left: Option<u64>,
    deadline: Option<Instant>,
}

impl Budget {
    fn new(limits: &SearchLimits, start: Instant) -> Self {
        Self {
            nodes_left: limits.max_nodes,
            deadline: limits.max_time.map(|d| start + d),
        }
    }

    fn spend(&mut self, stats: &SearchStats) -> bool {
        if let Some(left) = &mut self.nodes_left {
            if *left == 0 {
                return false;
            }
            *left -= 1;
        }
        match self.deadline {
            Some(d) if stats.nodes_expanded % 256 == 1 => Instant::now() < d,
            _ => true,
        }
    }
}

struct Frame {
    vertex: Vertex,
    next_color: usize,
    color_limit: usize,
    used_before: usize,
    assigned: Option<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    colors: Vec<usize>,
    /// forbid[v * k + c]: colored neighbors of v holding color c
    forbid: Vec<u32>,
    /// Degree of freedom of each vertex.
    free: Vec<usize>,
    uncolored: usize,
    stats: SearchStats,
}

const UNCOLORED: usize = usize::MAX;

impl<'a> Search<'a> {
    fn new(g: &'a Graph, k: usize) -> Self {
        let n = g.vertex_count();
        Self {
            g,
            k,
            colors: vec![UNCOLORED; n],
            forbid: vec![0; n * k],
            free: vec![k; n],
            uncolored: n,
            stats: SearchStats::default(),
        }
    }

    /// Colors `v` with `c`; returns false if some uncolored neighbor is left
    /// with no available color.
    fn assign(&mut self, v: Vertex, c: usize) -> bool {
        self.colors[v] = c;
        self.uncolored -= 1;
        let mut alive = true;
        for &w in self.g.neighbors(v) {
            if self.colors[w] != UNCOLORED {
                continue;
            }
            let slot = &mut self.forbid[w * self.k + c];
            if *slot == 0 {
                self.free[w] -= 1;
                if self.free[w] == 0 {
                    alive = false;
                }
            }
            *slot += 1;
        }
        alive
    }

    fn unassign(&mut self, v: Vertex) {
        let c = self.colors[v];
        self.colors[v] = UNCOLORED;
        self.uncolored += 1;
        for &w in self.g.neighbors(v) {
            if self.colors[w] != UNCOLORED {
                continue;
            }
            let slot = &mut self.forbid[w * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.free[w] += 1;
            }
        }
        self.stats.backtracks += 1;
    }

    /// Fewest free colors first; ties go to higher saturation (distinct
    /// neighbor colors), then to the lower index.
    fn select(&self) -> Vertex {
        self.g
            .vertices()
            .filter(|&v| self.colors[v] == UNCOLORED)
            .min_by_key(|&v| (self.free[v], std::cmp::Reverse(self.k - self.free[v]), v))
            .expect("select called with every vertex colored")
    }

    /// Runs to completion or budget exhaustion. `Some(true)` means a full
    /// coloring sits in `self.colors`.
    fn run(&mut self, budget: &mut Budget) -> Option<bool> {
        let mut stack: Vec<Frame> = Vec::new();
        let mut used = 0usize;
        'outer: loop {
            if self.uncolored == 0 {
                return Some(true);
            }
            let v = self.select();
            stack.push(Frame {
                vertex: v,
                next_color: 0,
                // a fresh color may only be the next unused index
                color_limit: self.k.min(used + 1),
                used_before: used,
                assigned: None,
            });
            loop {
                let Some(frame) = stack.last_mut() else {
                    return Some(false);
                };
                if frame.assigned.take().is_some() {
                    self.unassign(frame.vertex);
                    used = frame.used_before;
                }
                let v = frame.vertex;
                while frame.next_color < frame.color_limit {
                    let c = frame.next_color;
                    frame.next_color += 1;
                    if self.forbid[v * self.k + c] != 0 {
                        continue;
                    }
                    self.stats.nodes_expanded += 1;
                    if !budget.spend(&self.stats) {
                        return None;
                    }
                    if self.assign(v, c) {
                        frame.assigned = Some(c);
                        used = used.max(c + 1);
                        continue 'outer;
                    }
                    self.unassign(v);
                }
                stack.pop();
            }
        }
    }
}

fn decide_with_budget(g: &Graph, k: usize, budget: &mut Budget) -> (Decision, SearchStats) {
    let start = Instant::now();
    let n = g.vertex_count();
    let trivial = match k {
        0 => Some(n == 0),
        1 => Some(g.edge_count() == 0),
        _ if n == 0 => Some(true),
        _ => None,
    };
    if let Some(ok) = trivial {
        let decision = if ok {
            Decision::Colorable(Coloring::new(vec![0; n], k))
        } else {
            Decision::NotColorable
        };
        let stats = SearchStats {
            wall_time: start.elapsed(),
            ..SearchStats::default()
        };
        return (decision, stats);
    }

    // colors beyond n are never needed once fresh colors are introduced in order
    let mut search = Search::new(g, k.min(n));
    let outcome = search.run(budget);
    search.stats.wall_time = start.elapsed();
    let stats = search.stats;
    let decision = match outcome {
        Some(true) => {
            let c = Coloring::new(search.colors, k);
            debug_assert_eq!(verify_coloring(g, &c), Ok(true));
            Decision::Colorable(c)
        }
        Some(false) => Decision::NotColorable,
        None => Decision::BudgetExhausted(stats),
    };
    (decision, stats)
}

/// Exact k-colorability with optional limits, also returning search counters.
pub fn decide_k_colorable_with_stats(
    g: &Graph,
    k: usize,
    limits: &SearchLimits,
) -> (Decision, SearchStats) {
    let mut budget = Budget::new(limits, Instant::now());
    decide_with_budget(g, k, &mut budget)
}

/// Exact k-colorability. `NotColorable` is only reported after an
/// exhaustive search.
pub fn decide_k_colorable(g: &Graph, k: usize, limits: &SearchLimits) -> Decision {
    decide_k_colorable_with_stats(g, k, limits).0
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Chromatic {
    Exact { chromatic: usize, coloring: Coloring },
    /// χ lies in `lower..=upper`; the search ran out of budget at `lower`.
    Bounded { lower: usize, upper: usize },
}

/// χ(G) by trying k upward from a greedy clique size. The loop is capped by
/// min(Δ+1, largest-first greedy count); reaching the cap returns the greedy
/// coloring.
pub fn chromatic_number_with_stats(g: &Graph, limits: &SearchLimits) -> (Chromatic, SearchStats) {
    let start = Instant::now();
    let mut budget = Budget::new(limits, start);
    let mut stats = SearchStats::default();
    if g.vertex_count() == 0 {
        let exact = Chromatic::Exact {
            chromatic: 0,
            coloring: Coloring::new(Vec::new(), 0),
        };
        return (exact, stats);
    }

    let lower = greedy_clique(g).len();
    let greedy = greedy_color(g, &largest_first_order(g)).expect("order is a permutation");
    debug_assert!(greedy.colors_used <= g.max_degree() + 1);
    let upper = greedy.colors_used.min(g.max_degree() + 1);

    let mut result = None;
    for k in lower..upper {
        let (decision, s) = decide_with_budget(g, k, &mut budget);
        stats.absorb(&s);
        match decision {
            Decision::Colorable(coloring) => {
                result = Some(Chromatic::Exact {
                    chromatic: k,
                    coloring,
                });
                break;
            }
            Decision::NotColorable => {}
            Decision::BudgetExhausted(_) => {
                result = Some(Chromatic::Bounded { lower: k, upper });
                break;
            }
        }
    }
    stats.wall_time = start.elapsed();
    let result = result.unwrap_or(Chromatic::Exact {
        chromatic: upper,
        coloring: greedy.coloring,
    });
    (result, stats)
}

pub fn chromatic_number(g: &Graph, limits: &SearchLimits) -> Chromatic {
    chromatic_number_with_stats(g, limits).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete, cycle, gnp, path, petersen};

    fn chi(g: &Graph) -> usize {
        match chromatic_number(g, &SearchLimits::unlimited()) {
            Chromatic::Exact { chromatic, coloring } => {
                assert_eq!(verify_coloring(g, &coloring), Ok(true));
                assert_eq!(coloring.palette_size, chromatic);
                chromatic
            }
            other => panic!("unbounded search returned {other:?}"),
        }
    }

    #[test]
    fn verifier() {
        let k3 = complete(3);
        assert_eq!(verify_coloring(&k3, &Coloring::new(vec![0, 1, 2], 3)), Ok(true));
        assert_eq!(verify_coloring(&k3, &Coloring::new(vec![0, 1, 1], 3)), Ok(false));
        assert_eq!(verify_coloring(&path(2), &Coloring::new(vec![0, 2], 2)), Ok(false));
        assert_eq!(
            verify_coloring(&k3, &Coloring::new(vec![0, 1], 3)),
            Err(ColoringError::LengthMismatch {
                expected: 3,
                got: 2
            })
        );
    }

    #[test]
    fn first_fit_traces() {
        let r = greedy_color(&cycle(5), &[0, 1, 2, 3, 4]).unwrap();
        assert_eq!(r.coloring.colors, vec![0, 1, 0, 1, 2]);
        assert_eq!(r.colors_used, 3);
        assert_eq!(greedy_color(&complete(4), &[2, 0, 3, 1]).unwrap().colors_used, 4);
        let natural: Vec<_> = (0..12).collect();
        assert_eq!(greedy_color(&cycle(12), &natural).unwrap().colors_used, 2);
        let empty = greedy_color(&Graph::edgeless(0), &[]).unwrap();
        assert_eq!(empty.colors_used, 0);
    }

    #[test]
    fn first_fit_rejects_bad_orders() {
        let g = path(3);
        assert_eq!(greedy_color(&g, &[0, 1]), Err(ColoringError::NotAPermutation));
        assert_eq!(greedy_color(&g, &[0, 1, 1]), Err(ColoringError::NotAPermutation));
        assert_eq!(greedy_color(&g, &[0, 1, 3]), Err(ColoringError::NotAPermutation));
    }

    #[test]
    fn decide_small_cases() {
        let none = SearchLimits::unlimited();
        assert_eq!(decide_k_colorable(&complete(4), 3, &none), Decision::NotColorable);
        assert!(matches!(
            decide_k_colorable(&cycle(11), 3, &none),
            Decision::Colorable(_)
        ));
        assert_eq!(decide_k_colorable(&Graph::edgeless(4), 0, &none), Decision::NotColorable);
        assert_eq!(
            decide_k_colorable(&Graph::edgeless(0), 0, &none),
            Decision::Colorable(Coloring::new(vec![], 0))
        );
        assert_eq!(
            decide_k_colorable(&Graph::edgeless(3), 1, &none),
            Decision::Colorable(Coloring::new(vec![0; 3], 1))
        );
        assert_eq!(decide_k_colorable(&path(2), 1, &none), Decision::NotColorable);
    }

    #[test]
    fn petersen_is_three_chromatic() {
        let none = SearchLimits::unlimited();
        let p = petersen();
        let Decision::Colorable(c) = decide_k_colorable(&p, 3, &none) else {
            panic!("Petersen graph is 3-colorable");
        };
        assert_eq!(verify_coloring(&p, &c), Ok(true));
        assert_eq!(decide_k_colorable(&p, 2, &none), Decision::NotColorable);
        assert_eq!(chi(&p), 3);
    }

    #[test]
    fn large_palette_is_fine() {
        let none = SearchLimits::unlimited();
        let Decision::Colorable(c) = decide_k_colorable(&complete(3), 10, &none) else {
            panic!();
        };
        assert_eq!(c.palette_size, 10);
        assert_eq!(verify_coloring(&complete(3), &c), Ok(true));
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chi(&complete(4)), 4);
        assert_eq!(chi(&cycle(11)), 3);
        assert_eq!(chi(&cycle(12)), 2);
        assert_eq!(chi(&Graph::edgeless(5)), 1);
        assert_eq!(chi(&Graph::edgeless(0)), 0);
    }

    #[test]
    fn budget_exhaustion_is_honest() {
        let g = gnp(40, 0.5, 11);
        let tiny = SearchLimits::nodes(5);
        match decide_k_colorable(&g, 6, &tiny) {
            Decision::BudgetExhausted(stats) => assert!(stats.nodes_expanded <= 6),
            Decision::Colorable(c) => assert_eq!(verify_coloring(&g, &c), Ok(true)),
            Decision::NotColorable => panic!("NotColorable under a 5-node budget"),
        }
        match chromatic_number(&g, &tiny) {
            Chromatic::Bounded { lower, upper } => assert!(lower <= upper),
            Chromatic::Exact { .. } => panic!("5 nodes cannot settle χ of G(40, 0.5)"),
        }
    }

    #[test]
    fn time_budget() {
        let g = gnp(60, 0.5, 3);
        let limits = SearchLimits {
            max_nodes: None,
            max_time: Some(Duration::from_millis(0)),
        };
        assert!(matches!(
            decide_k_colorable(&g, 7, &limits),
            Decision::BudgetExhausted(_)
        ));
    }

    #[test]
    fn greedy_clique_is_clique() {
        let g = gnp(20, 0.5, 4);
        let c = greedy_clique(&g);
        assert!(g.is_clique(&c));
        assert_eq!(greedy_clique(&complete(5)), vec![0, 1, 2, 3, 4]);
    }
}

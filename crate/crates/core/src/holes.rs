//! Hole-rotation 3-coloring heuristic.
//!
//! A hole is a vertex that takes the third color. If the holes are pairwise
//! non-adjacent and every odd cycle passes through one, the rest of the graph
//! is bipartite and colors 0/1 finish the job. The search places one hole per
//! known odd cycle, then repeatedly slides conflicting holes along their
//! cycles (or adds a hole to an odd cycle left in the remainder) until that
//! state is reached or the step budget runs out.
//!
//! Any coloring returned is verified. `Unknown` says nothing about whether a
//! 3-coloring exists.

use std::collections::HashSet;

use serde::Serialize;

use crate::bipartite::{
    cycle_through, traverse, two_color, DfiTrace, OddCycleCertificate, TwoColorResult,
};
use crate::coloring::{greedy_color, largest_first_order, verify_coloring, Coloring};
use crate::graph::{Graph, Vertex};
use crate::rng::SplitMix64;

#[derive(Default)]
struct CycleHarvest {
    found: Vec<OddCycleCertificate>,
    seen: HashSet<Vec<Vertex>>,
    odd_roots: HashSet<Vertex>,
}

impl CycleHarvest {
    /// One traversal from `roots`; returns the forest.
    fn run<R>(&mut self, g: &Graph, roots: R, limit: usize) -> DfiTrace
    where
        R: IntoIterator<Item = Vertex>,
    {
        traverse(g, roots, |t, u, w| {
            self.odd_roots.insert(t.root_of_component[u]);
            let c = cycle_through(t, u, w).canonical();
            if self.seen.insert(c.cycle.clone()) {
                self.found.push(c);
            }
            self.found.len() >= limit
        })
    }
}

/// Distinct odd cycles (up to rotation and reflection), found by depth-first
/// traversals from varied roots. Empty iff `g` is bipartite.
pub fn find_odd_cycles(g: &Graph, limit: usize) -> Vec<OddCycleCertificate> {
    let limit = limit.max(1);
    let mut harvest = CycleHarvest::default();
    // the first pass covers every component and marks the non-bipartite ones
    let first = harvest.run(g, g.vertices(), limit);
    let extra_roots: Vec<Vertex> = g
        .vertices()
        .filter(|&v| {
            let r = first.root_of_component[v];
            r != v && r != usize::MAX && harvest.odd_roots.contains(&r)
        })
        .take(4 * limit)
        .collect();
    for root in extra_roots {
        if harvest.found.len() >= limit {
            break;
        }
        harvest.run(g, std::iter::once(root), limit);
    }
    harvest.found
}

/// Search state, exposed when the heuristic gives up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HoleState {
    /// Current holes, ascending. Pairwise non-adjacent only on success.
    pub holes: Vec<Vertex>,
    /// Vertices outside the hole set, ascending.
    pub remainder_vertices: Vec<Vertex>,
    /// Two-coloring attempt on the remainder. Coloring entries follow
    /// `remainder_vertices`; certificate entries are original vertex ids.
    pub remainder_result: TwoColorResult,
    pub rotation_steps: usize,
    pub budget: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HeuristicOutcome {
    Colored {
        /// Proper, palette size 3, holes carry color 2.
        coloring: Coloring,
        holes: Vec<Vertex>,
        rotation_steps: usize,
    },
    Unknown {
        state: HoleState,
        reason: String,
    },
}

impl HeuristicOutcome {
    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            HeuristicOutcome::Colored { coloring, .. } => Some(coloring),
            HeuristicOutcome::Unknown { .. } => None,
        }
    }
}

const HOLE_COLOR: usize = 2;

struct Evaluation {
    cost: usize,
    hole_conflicts: usize,
    remainder: Vec<Vertex>,
    result: TwoColorResult,
}

/// Cost = hole–hole edges + odd cycles visible in the remainder (capped).
fn evaluate(g: &Graph, is_hole: &[bool]) -> Evaluation {
    let hole_conflicts = g
        .edges()
        .iter()
        .filter(|&&(u, v)| is_hole[u] && is_hole[v])
        .count();
    let keep: Vec<bool> = is_hole.iter().map(|&h| !h).collect();
    let (rest, original) = g.induced(&keep);
    let (odd, result) = match two_color(&rest) {
        TwoColorResult::Colorable(c) => (0, TwoColorResult::Colorable(c)),
        TwoColorResult::OddCycle(cert) => {
            let odd = find_odd_cycles(&rest, REMAINDER_CYCLE_CAP).len();
            let mapped = OddCycleCertificate {
                cycle: cert.cycle.iter().map(|&v| original[v]).collect(),
            };
            (odd, TwoColorResult::OddCycle(mapped))
        }
    };
    Evaluation {
        cost: hole_conflicts + odd,
        hole_conflicts,
        remainder: original,
        result,
    }
}

const REMAINDER_CYCLE_CAP: usize = 16;

fn assemble(g: &Graph, is_hole: &[bool], eval: &Evaluation) -> Option<Coloring> {
    let TwoColorResult::Colorable(two) = &eval.result else {
        return None;
    };
    if eval.hole_conflicts > 0 {
        return None;
    }
    let mut colors = vec![HOLE_COLOR; g.vertex_count()];
    for (i, &v) in eval.remainder.iter().enumerate() {
        debug_assert!(!is_hole[v]);
        colors[v] = two.colors[i];
    }
    let c = Coloring::new(colors, 3);
    (verify_coloring(g, &c) == Ok(true)).then_some(c)
}

fn hole_list(is_hole: &[bool]) -> Vec<Vertex> {
    (0..is_hole.len()).filter(|&v| is_hole[v]).collect()
}

/// A hole and the odd cycle it is responsible for.
#[derive(Clone)]
struct Hole {
    vertex: Vertex,
    cycle: Vec<Vertex>,
}

fn adjacent_holes(g: &Graph, is_hole: &[bool], v: Vertex) -> usize {
    g.neighbors(v).iter().filter(|&&w| is_hole[w]).count()
}

/// Picks the hole position on `cycle`: highest degree among vertices with no
/// hole neighbor, else the vertex with fewest hole neighbors.
fn place(g: &Graph, is_hole: &[bool], cycle: &[Vertex]) -> Vertex {
    let free = cycle
        .iter()
        .copied()
        .filter(|&v| adjacent_holes(g, is_hole, v) == 0)
        .min_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    free.unwrap_or_else(|| {
        cycle
            .iter()
            .copied()
            .min_by_key(|&v| (adjacent_holes(g, is_hole, v), std::cmp::Reverse(g.degree(v)), v))
            .expect("odd cycles are nonempty")
    })
}

fn colored(g: &Graph, coloring: Coloring, holes: Vec<Vertex>, rotation_steps: usize) -> HeuristicOutcome {
    debug_assert_eq!(verify_coloring(g, &coloring), Ok(true));
    debug_assert!(g.is_independent_set(&holes));
    HeuristicOutcome::Colored {
        coloring,
        holes,
        rotation_steps,
    }
}

/// Attempts a 3-coloring by hole rotation within `budget` steps.
///
/// Bipartite graphs are colored with 0/1 and no holes. Otherwise one hole
/// is placed per odd cycle, then each step either slides a conflicting hole
/// to a neighboring position on its cycle or adds a hole to an odd cycle of
/// the remainder. Worse states are accepted with probability
/// `0.5 * (1 - step / budget)`. If the budget runs out, the color classes 0, 1
/// and 2 of a largest-first greedy coloring are each tried as hole sets.
pub fn three_color_heuristic(g: &Graph, budget: usize, seed: u64) -> HeuristicOutcome {
    let budget = budget.max(1);
    if let TwoColorResult::Colorable(c) = two_color(g) {
        return HeuristicOutcome::Colored {
            coloring: Coloring::new(c.colors, 3),
            holes: Vec::new(),
            rotation_steps: 0,
        };
    }

    let n = g.vertex_count();
    let mut rng = SplitMix64::new(seed);
    let mut is_hole = vec![false; n];
    let mut holes: Vec<Hole> = Vec::new();

    for cert in find_odd_cycles(g, n.max(8)) {
        if cert.cycle.iter().any(|&v| is_hole[v]) {
            continue;
        }
        let v = place(g, &is_hole, &cert.cycle);
        is_hole[v] = true;
        holes.push(Hole {
            vertex: v,
            cycle: cert.cycle,
        });
    }

    let mut eval = evaluate(g, &is_hole);
    let mut steps = 0;
    while steps < budget {
        if let Some(coloring) = assemble(g, &is_hole, &eval) {
            return colored(g, coloring, hole_list(&is_hole), steps);
        }
        steps += 1;

        let conflicted: Vec<usize> = (0..holes.len())
            .filter(|&i| adjacent_holes(g, &is_hole, holes[i].vertex) > 0)
            .collect();
        let remainder_cycle = match &eval.result {
            TwoColorResult::OddCycle(c) => Some(c.cycle.clone()),
            TwoColorResult::Colorable(_) => None,
        };

        let prev_is_hole = is_hole.clone();
        let prev_holes = holes.clone();
        let insert = match (&remainder_cycle, conflicted.is_empty()) {
            (Some(_), true) => true,
            (Some(_), false) => rng.bernoulli(0.5),
            (None, _) => false,
        };
        if insert {
            let cycle = remainder_cycle.unwrap();
            let v = place(g, &is_hole, &cycle);
            is_hole[v] = true;
            holes.push(Hole { vertex: v, cycle });
        } else {
            // rotate one conflicting hole one position along its cycle
            let idx = conflicted[rng.below(conflicted.len())];
            let hole = &mut holes[idx];
            let len = hole.cycle.len();
            let pos = hole.cycle.iter().position(|&v| v == hole.vertex).unwrap();
            let step = if rng.bernoulli(0.5) { 1 } else { len - 1 };
            let target = hole.cycle[(pos + step) % len];
            is_hole[hole.vertex] = false;
            if is_hole[target] {
                // another hole already sits there; this one merges into it
                holes.swap_remove(idx);
            } else {
                is_hole[target] = true;
                hole.vertex = target;
            }
        }

        let candidate = evaluate(g, &is_hole);
        let worse_ok = 0.5 * (1.0 - steps as f64 / budget as f64);
        if candidate.cost < eval.cost || rng.bernoulli(worse_ok) {
            eval = candidate;
        } else {
            is_hole = prev_is_hole;
            holes = prev_holes;
        }
    }
    if let Some(coloring) = assemble(g, &is_hole, &eval) {
        return colored(g, coloring, hole_list(&is_hole), steps);
    }

    // any color class of a proper coloring may serve as the hole set
    let greedy = greedy_color(g, &largest_first_order(g)).expect("order is a permutation");
    for class in 0..3 {
        let candidate: Vec<bool> = greedy.coloring.colors.iter().map(|&c| c == class).collect();
        let trial = evaluate(g, &candidate);
        if let Some(coloring) = assemble(g, &candidate, &trial) {
            return colored(g, coloring, hole_list(&candidate), steps);
        }
    }

    let reason = format!(
        "no independent hole set with bipartite remainder found in {steps} steps \
         ({} hole conflicts, remainder {})",
        eval.hole_conflicts,
        if eval.result.is_colorable() { "bipartite" } else { "has an odd cycle" }
    );
    HeuristicOutcome::Unknown {
        state: HoleState {
            holes: hole_list(&is_hole),
            remainder_vertices: eval.remainder,
            remainder_result: eval.result,
            rotation_steps: steps,
            budget,
        },
        reason,
    }
}

//! Brute-force oracles. Nothing here calls into the solvers under test.

#![allow(dead_code)]

use kchroma_core::graph::Graph;
use kchroma_core::reductions::CnfFormula;

/// Calls `visit` on every assignment in `0..k` for `n` positions, stopping
/// early when it returns true. Returns whether it stopped early.
pub fn for_each_assignment(n: usize, k: usize, mut visit: impl FnMut(&[usize]) -> bool) -> bool {
    if k == 0 {
        return n == 0 && visit(&[]);
    }
    let mut a = vec![0usize; n];
    loop {
        if visit(&a) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            a[i] += 1;
            if a[i] < k {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

pub fn is_proper(g: &Graph, colors: &[usize]) -> bool {
    g.edges().iter().all(|&(u, v)| colors[u] != colors[v])
}

pub fn brute_k_colorable(g: &Graph, k: usize) -> bool {
    for_each_assignment(g.vertex_count(), k, |a| is_proper(g, a))
}

pub fn brute_chromatic(g: &Graph) -> usize {
    (0..=g.vertex_count())
        .find(|&k| brute_k_colorable(g, k))
        .unwrap()
}

/// Every proper k-coloring of `g`.
pub fn all_proper_colorings(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_assignment(g.vertex_count(), k, |a| {
        if is_proper(g, a) {
            out.push(a.to_vec());
        }
        false
    });
    out
}

/// Exhaustive k-colorability by plain index-order backtracking, for graphs
/// too large for full enumeration.
pub fn backtrack_k_colorable(g: &Graph, k: usize) -> bool {
    fn go(g: &Graph, k: usize, v: usize, colors: &mut Vec<usize>) -> bool {
        if v == g.vertex_count() {
            return true;
        }
        for c in 0..k {
            if g.neighbors(v).iter().all(|&w| w > v || colors[w] != c) {
                colors[v] = c;
                if go(g, k, v + 1, colors) {
                    return true;
                }
            }
        }
        false
    }
    go(g, k, 0, &mut vec![0; g.vertex_count()])
}

fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..(1 << n)).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}

pub fn brute_clique_number(g: &Graph) -> usize {
    subsets(g.vertex_count())
        .filter(|s| s.iter().all(|&u| s.iter().all(|&v| u == v || g.has_edge(u, v))))
        .map(|s| s.len())
        .max()
        .unwrap()
}

pub fn brute_independence_number(g: &Graph) -> usize {
    subsets(g.vertex_count())
        .filter(|s| s.iter().all(|&u| s.iter().all(|&v| !g.has_edge(u, v))))
        .map(|s| s.len())
        .max()
        .unwrap()
}

pub fn brute_min_vertex_cover(g: &Graph) -> usize {
    subsets(g.vertex_count())
        .filter(|s| g.edges().iter().all(|(u, v)| s.contains(u) || s.contains(v)))
        .map(|s| s.len())
        .min()
        .unwrap()
}

pub fn all_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Truth-table satisfiability.
pub fn brute_satisfiable(f: &CnfFormula) -> bool {
    (0u32..(1 << f.variable_count)).any(|mask| {
        f.clauses.iter().all(|clause| {
            clause
                .iter()
                .any(|l| (mask >> l.variable & 1 == 1) != l.negated)
        })
    })
}

/// Graph on `n` vertices whose edges are the pairs `(u, v)`, `u < v`, in
/// lexicographic order, selected by `bits`.
pub fn graph_from_bits(n: usize, bits: &[bool]) -> Graph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Every formula over exactly `n` variables with at most `max_clauses`
/// clauses. Clauses are sorted literal multisets and formulas are
/// multisets of clauses, so literal and clause order are factored out.
pub fn small_formulas(n: usize, max_clauses: usize) -> Vec<CnfFormula> {
    use kchroma_core::reductions::Literal;
    let lits: Vec<Literal> = (0..n).flat_map(|v| [Literal::pos(v), Literal::neg(v)]).collect();
    let mut clauses = Vec::new();
    for a in 0..lits.len() {
        for b in a..lits.len() {
            for c in b..lits.len() {
                clauses.push([lits[a], lits[b], lits[c]]);
            }
        }
    }
    fn grow(
        n: usize,
        clauses: &[[kchroma_core::reductions::Literal; 3]],
        from: usize,
        left: usize,
        cur: &mut Vec<[kchroma_core::reductions::Literal; 3]>,
        out: &mut Vec<CnfFormula>,
    ) {
        out.push(CnfFormula::new(n, cur.clone()).unwrap());
        if left == 0 {
            return;
        }
        for i in from..clauses.len() {
            cur.push(clauses[i]);
            grow(n, clauses, i, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(n, &clauses, 0, max_clauses, &mut Vec::new(), &mut out);
    out
}

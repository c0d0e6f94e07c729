//! 3-SAT to 3-colorability.
//!
//! Three palette vertices `T`, `F`, `D` form a triangle; their colors stand
//! for TRUE, FALSE and a third value that no literal may take. Each variable
//! contributes a triangle `{x, ¬x, D}`, so exactly one of `x`, `¬x` shares
//! `T`'s color. Each clause `(a ∨ b ∨ c)` becomes two chained OR gates:
//!
//! ```text
//!   a ── g1 ──┐             o1 ── g3 ──┐
//!        │    o1                  │    o2 ── F
//!   b ── g2 ──┘             c ── g4 ──┘     └── D
//! ```
//!
//! Inside a gate `g1–g2`, `g1–o`, `g2–o` form a triangle and the inputs hang
//! off `g1`/`g2`. If both inputs have `F`'s color the output must too. The
//! final output `o2` sees `F` and `D`, so it is forced to `T`'s color, which
//! is possible only when some literal of the clause is true.
//!
//! Vertex numbering: `T = 0`, `F = 1`, `D = 2`; variable `i` has `x_i = 3 + 2i`
//! and `¬x_i = 4 + 2i`; clause `j` owns `g1, g2, o1, g3, g4, o2` starting at
//! `3 + 2n + 6j`. For `n` variables and `m` clauses the graph has
//! `3 + 2n + 6m` vertices and `3 + 3n + 12m` edges.

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{verify_coloring, Coloring};
use crate::graph::{Graph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Literal {
    pub variable: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(variable: usize) -> Self {
        Self {
            variable,
            negated: false,
        }
    }

    pub fn neg(variable: usize) -> Self {
        Self {
            variable,
            negated: true,
        }
    }

    /// Signed 1-based DIMACS form.
    pub fn to_dimacs(self) -> i64 {
        let v = self.variable as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn eval(self, assignment: &[bool]) -> bool {
        assignment[self.variable] != self.negated
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CnfFormula {
    pub variable_count: usize,
    pub clauses: Vec<Clause>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CnfError {
    #[error("missing `p cnf VARS CLAUSES` header")]
    MissingHeader,
    #[error("clause {0} has more than 3 literals")]
    TooManyLiterals(usize),
    #[error("line {0}: malformed line")]
    MalformedLine(usize),
    #[error("line {line}: variable {variable} out of range 1..={variable_count}")]
    VariableOutOfRange {
        line: usize,
        variable: usize,
        variable_count: usize,
    },
    #[error("header declares {declared} clauses but {parsed} were read")]
    ClauseCountMismatch { declared: usize, parsed: usize },
}

impl CnfFormula {
    /// Checks that every literal refers to a variable below `variable_count`.
    pub fn new(variable_count: usize, clauses: Vec<Clause>) -> Result<Self, CnfError> {
        for lit in clauses.iter().flatten() {
            if lit.variable >= variable_count {
                return Err(CnfError::VariableOutOfRange {
                    line: 0,
                    variable: lit.variable + 1,
                    variable_count,
                });
            }
        }
        Ok(Self {
            variable_count,
            clauses,
        })
    }

    pub fn is_satisfied_by(&self, assignment: &[bool]) -> bool {
        self.clauses
            .iter()
            .all(|clause| clause.iter().any(|l| l.eval(assignment)))
    }
}

/// Pads a clause of one to three literals by repeating its last literal.
fn pad(lits: &[Literal]) -> Clause {
    let last = *lits.last().expect("nonempty clause");
    [
        lits[0],
        lits.get(1).copied().unwrap_or(last),
        lits.get(2).copied().unwrap_or(last),
    ]
}

/// Parses DIMACS `.cnf`. Clauses are 0-terminated and may span lines; those
/// with fewer than three literals are padded by repeating the last literal.
/// A `%` line ends the input (SATLIB convention).
pub fn parse_dimacs_cnf(text: &str) -> Result<CnfFormula, CnfError> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            match toks.as_slice() {
                ["p", "cnf", v, c] if header.is_none() => {
                    let v = v.parse().map_err(|_| CnfError::MalformedLine(line))?;
                    let c = c.parse().map_err(|_| CnfError::MalformedLine(line))?;
                    header = Some((v, c));
                    continue;
                }
                _ => return Err(CnfError::MalformedLine(line)),
            }
        }
        let (variable_count, _) = header.ok_or(CnfError::MissingHeader)?;
        for tok in trimmed.split_whitespace() {
            let x: i64 = tok.parse().map_err(|_| CnfError::MalformedLine(line))?;
            if x == 0 {
                if current.is_empty() {
                    // the empty clause cannot be expressed with three literals
                    return Err(CnfError::MalformedLine(line));
                }
                clauses.push(pad(&current));
                current.clear();
                continue;
            }
            let variable = x.unsigned_abs() as usize;
            if variable > variable_count {
                return Err(CnfError::VariableOutOfRange {
                    line,
                    variable,
                    variable_count,
                });
            }
            if current.len() == 3 {
                return Err(CnfError::TooManyLiterals(clauses.len()));
            }
            current.push(Literal {
                variable: variable - 1,
                negated: x < 0,
            });
        }
    }

    let (variable_count, declared) = header.ok_or(CnfError::MissingHeader)?;
    if !current.is_empty() {
        return Err(CnfError::MalformedLine(last_line));
    }
    if declared != clauses.len() {
        return Err(CnfError::ClauseCountMismatch {
            declared,
            parsed: clauses.len(),
        });
    }
    Ok(CnfFormula {
        variable_count,
        clauses,
    })
}

/// Writes a formula as DIMACS `.cnf`.
pub fn emit_dimacs_cnf(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count, f.clauses.len());
    for clause in &f.clauses {
        for lit in clause {
            out.push_str(&lit.to_dimacs().to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PaletteVertices {
    #[serde(rename = "true")]
    pub true_vertex: Vertex,
    #[serde(rename = "false")]
    pub false_vertex: Vertex,
    pub dummy: Vertex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LiteralPair {
    pub positive: Vertex,
    pub negative: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionMap {
    pub palette_vertices: PaletteVertices,
    pub literal_vertices: Vec<LiteralPair>,
    /// Per clause: `[g1, g2, o1, g3, g4, o2]`.
    pub clause_gadget_vertices: Vec<[Vertex; 6]>,
    #[serde(skip)]
    pub graph: Graph,
    #[serde(skip)]
    pub formula: CnfFormula,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("coloring is not a proper 3-coloring of the reduced graph")]
    NotAProperColoring,
}

pub fn reduced_vertex_count(variables: usize, clauses: usize) -> usize {
    3 + 2 * variables + 6 * clauses
}

pub fn reduced_edge_count(variables: usize, clauses: usize) -> usize {
    3 + 3 * variables + 12 * clauses
}

/// Builds the 3-coloring instance for `f`; the graph is 3-colorable iff `f`
/// is satisfiable.
pub fn reduce_3sat_to_3col(f: &CnfFormula) -> ReductionMap {
    let n = f.variable_count;
    let m = f.clauses.len();
    let palette = PaletteVertices {
        true_vertex: 0,
        false_vertex: 1,
        dummy: 2,
    };
    let (t, fa, d) = (palette.true_vertex, palette.false_vertex, palette.dummy);
    let mut edges = vec![(t, fa), (t, d), (fa, d)];

    let literal_vertices: Vec<LiteralPair> = (0..n)
        .map(|i| LiteralPair {
            positive: 3 + 2 * i,
            negative: 4 + 2 * i,
        })
        .collect();
    for p in &literal_vertices {
        edges.extend([(p.positive, p.negative), (p.positive, d), (p.negative, d)]);
    }
    let vertex_of = |lit: Literal| {
        let p = literal_vertices[lit.variable];
        if lit.negated {
            p.negative
        } else {
            p.positive
        }
    };

    let mut clause_gadget_vertices = Vec::with_capacity(m);
    for (j, clause) in f.clauses.iter().enumerate() {
        let base = 3 + 2 * n + 6 * j;
        let gadget = [base, base + 1, base + 2, base + 3, base + 4, base + 5];
        let [g1, g2, o1, g3, g4, o2] = gadget;
        let [a, b, c] = clause.map(vertex_of);
        edges.extend([
            (a, g1),
            (b, g2),
            (g1, g2),
            (g1, o1),
            (g2, o1),
            (o1, g3),
            (c, g4),
            (g3, g4),
            (g3, o2),
            (g4, o2),
            (o2, fa),
            (o2, d),
        ]);
        clause_gadget_vertices.push(gadget);
    }

    let graph = Graph::new(reduced_vertex_count(n, m), edges)
        .expect("gadget edges are distinct and in range");
    debug_assert_eq!(graph.edge_count(), reduced_edge_count(n, m));
    ReductionMap {
        palette_vertices: palette,
        literal_vertices,
        clause_gadget_vertices,
        graph,
        formula: f.clone(),
    }
}

/// Reads a satisfying assignment off a proper 3-coloring of the reduced
/// graph: `x` is true iff its vertex shares `T`'s color.
pub fn lift_coloring_to_assignment(
    m: &ReductionMap,
    c: &Coloring,
) -> Result<Vec<bool>, ReductionError> {
    let proper = verify_coloring(&m.graph, c).unwrap_or(false);
    if !proper || c.colors.iter().any(|&x| x >= 3) {
        return Err(ReductionError::NotAProperColoring);
    }
    let truth = c.colors[m.palette_vertices.true_vertex];
    let assignment: Vec<bool> = m
        .literal_vertices
        .iter()
        .map(|p| c.colors[p.positive] == truth)
        .collect();
    debug_assert!(m.formula.is_satisfied_by(&assignment));
    Ok(assignment)
}

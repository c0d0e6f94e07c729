//! Deterministic graph families.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::rng::SplitMix64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid generator spec: {0}")]
pub struct InvalidSpec(pub String);

/// A named graph family with its parameters.
///
/// Textual form (used by the CLI): `cycle:N`, `path:N`, `complete:N`,
/// `complete_bipartite:A,B`, `gnp:N,P,SEED`.
#[derive(Debug, Clone, PartialEq)]
pub enum GeneratorSpec {
    Cycle(usize),
    Path(usize),
    Complete(usize),
    CompleteBipartite(usize, usize),
    /// Erdős–Rényi G(n, p). Pairs `(u, v)`, `u < v`, are visited in
    /// lexicographic order and each is kept when a [`SplitMix64`] Bernoulli
    /// trial seeded with `seed` succeeds.
    Gnp { n: usize, p: f64, seed: u64 },
}

impl GeneratorSpec {
    pub fn validate(&self) -> Result<(), InvalidSpec> {
        match *self {
            GeneratorSpec::Cycle(n) if n < 3 => {
                Err(InvalidSpec(format!("cycle needs at least 3 vertices, got {n}")))
            }
            GeneratorSpec::Path(0) => Err(InvalidSpec("path needs at least 1 vertex".into())),
            GeneratorSpec::Gnp { p, .. } if !(0.0..=1.0).contains(&p) => Err(InvalidSpec(
                format!("edge probability {p} is outside [0, 1]"),
            )),
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &GeneratorSpec) -> Result<Graph, InvalidSpec> {
    spec.validate()?;
    let (n, edges) = match *spec {
        GeneratorSpec::Cycle(n) => {
            let mut e: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
            e.push((0, n - 1));
            e.sort_unstable();
            (n, e)
        }
        GeneratorSpec::Path(n) => (n, (0..n - 1).map(|i| (i, i + 1)).collect()),
        GeneratorSpec::Complete(n) => (
            n,
            (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .collect(),
        ),
        GeneratorSpec::CompleteBipartite(a, b) => (
            a + b,
            (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v))).collect(),
        ),
        GeneratorSpec::Gnp { n, p, seed } => {
            let mut rng = SplitMix64::new(seed);
            let mut e = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.bernoulli(p) {
                        e.push((u, v));
                    }
                }
            }
            (n, e)
        }
    };
    Ok(Graph::from_canonical(n, edges))
}

pub fn cycle(n: usize) -> Graph {
    generate(&GeneratorSpec::Cycle(n)).expect("cycle needs n >= 3")
}

pub fn path(n: usize) -> Graph {
    generate(&GeneratorSpec::Path(n)).expect("path needs n >= 1")
}

pub fn complete(n: usize) -> Graph {
    generate(&GeneratorSpec::Complete(n)).unwrap()
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    generate(&GeneratorSpec::CompleteBipartite(a, b)).unwrap()
}

pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    generate(&GeneratorSpec::Gnp { n, p, seed }).expect("p must lie in [0, 1]")
}

/// Star with center 0 and `leaves` leaves.
pub fn star(leaves: usize) -> Graph {
    complete_bipartite(1, leaves)
}

/// The Petersen graph: outer 5-cycle 0..5, inner pentagram 5..10, spokes i–i+5.
pub fn petersen() -> Graph {
    let mut edges = Vec::with_capacity(15);
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    Graph::new(10, edges).unwrap()
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Cycle(n) => write!(f, "cycle:{n}"),
            GeneratorSpec::Path(n) => write!(f, "path:{n}"),
            GeneratorSpec::Complete(n) => write!(f, "complete:{n}"),
            GeneratorSpec::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            GeneratorSpec::Gnp { n, p, seed } => write!(f, "gnp:{n},{p},{seed}"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = InvalidSpec;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (kind, args) = s
            .split_once(':')
            .ok_or_else(|| InvalidSpec(format!("expected KIND:ARGS, got {s:?}")))?;
        let args: Vec<&str> = args.split(',').map(str::trim).collect();
        let bad = || InvalidSpec(format!("bad arguments for {kind}: {s:?}"));
        let nat = |t: &str| t.parse::<usize>().map_err(|_| bad());
        let spec = match (kind.trim(), args.as_slice()) {
            ("cycle", [n]) => GeneratorSpec::Cycle(nat(n)?),
            ("path", [n]) => GeneratorSpec::Path(nat(n)?),
            ("complete", [n]) => GeneratorSpec::Complete(nat(n)?),
            ("complete_bipartite", [a, b]) => GeneratorSpec::CompleteBipartite(nat(a)?, nat(b)?),
            ("gnp", [n, p, seed]) => GeneratorSpec::Gnp {
                n: nat(n)?,
                p: p.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            },
            _ => return Err(InvalidSpec(format!("unknown generator {s:?}"))),
        };
        spec.validate()?;
        Ok(spec)
    }
}

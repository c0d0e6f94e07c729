//! Graphviz DOT output.

use std::fmt::Write as _;

use kchroma_core::coloring::{verify_coloring, Coloring};
use kchroma_core::graph::Graph;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("coloring is not a proper coloring of the graph")]
pub struct NotAProperColoring;

const PALETTE: [&str; 10] = [
    "#e41a1c", "#377eb8", "#4daf4a", "#984ea3", "#ff7f00", "#ffff33", "#a65628", "#f781bf",
    "#999999", "#66c2a5",
];

/// Fill color for color index `c`. Indices past the fixed palette get an
/// HSV string with golden-ratio hue spacing.
pub fn color_attr(c: usize) -> String {
    match PALETTE.get(c) {
        Some(hex) => (*hex).to_string(),
        None => {
            let hue = (c as f64 * 0.618_033_988_749_895).fract();
            format!("{hue:.4} 0.55 0.95")
        }
    }
}

/// Undirected DOT with vertices then edges in ascending order.
pub fn export_dot(g: &Graph, coloring: Option<&Coloring>) -> Result<String, NotAProperColoring> {
    if let Some(c) = coloring {
        if verify_coloring(g, c) != Ok(true) {
            return Err(NotAProperColoring);
        }
    }
    let mut out = String::from("graph G {\n");
    if coloring.is_some() {
        out.push_str("  node [style=filled];\n");
    }
    for v in g.vertices() {
        match coloring {
            Some(c) => {
                let _ = writeln!(out, "  {v} [fillcolor=\"{}\"];", color_attr(c.colors[v]));
            }
            None => {
                let _ = writeln!(out, "  {v};");
            }
        }
    }
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "  {u} -- {v};");
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use kchroma_core::generate::{complete, cycle};
    use std::collections::BTreeSet;

    fn fills(dot: &str) -> Vec<String> {
        dot.lines()
            .filter_map(|l| l.split_once("fillcolor=\"").map(|(_, r)| r.split('"').next().unwrap().to_string()))
            .collect()
    }

    #[test]
    fn triangle_three_colors() {
        let dot = export_dot(&complete(3), Some(&Coloring::new(vec![0, 1, 2], 3))).unwrap();
        assert_eq!(dot.matches(" -- ").count(), 3);
        let f = fills(&dot);
        assert_eq!(f.len(), 3);
        assert_eq!(f.iter().collect::<BTreeSet<_>>().len(), 3);
        assert!(dot.starts_with("graph G {"));
    }

    #[test]
    fn edgeless_plain() {
        let dot = export_dot(&Graph::edgeless(2), None).unwrap();
        assert_eq!(dot, "graph G {\n  0;\n  1;\n}\n");
    }

    #[test]
    fn even_clock_alternates() {
        let colors: Vec<usize> = (0..12).map(|v| v % 2).collect();
        let dot = export_dot(&cycle(12), Some(&Coloring::new(colors, 2))).unwrap();
        let f = fills(&dot);
        for v in 0..12 {
            assert_ne!(f[v], f[(v + 1) % 12]);
            assert_eq!(f[v], f[(v + 2) % 12]);
        }
    }

    #[test]
    fn rejects_improper() {
        assert_eq!(
            export_dot(&complete(3), Some(&Coloring::new(vec![0, 0, 1], 3))),
            Err(NotAProperColoring)
        );
    }

    #[test]
    fn many_colors_stay_distinct() {
        let attrs: BTreeSet<_> = (0..40).map(color_attr).collect();
        assert_eq!(attrs.len(), 40);
    }
}

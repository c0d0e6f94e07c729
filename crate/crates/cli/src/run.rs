use std::ffi::OsString;
use std::time::{Duration, Instant};

use clap::Parser;
use kchroma_core::bipartite::{two_color, TwoColorResult};
use kchroma_core::bounds::{bounds_report, BoundsLimits, DEFAULT_MAX_VERTICES};
use kchroma_core::coloring::{
    chromatic_number_with_stats, decide_k_colorable_with_stats, greedy_color, Chromatic, Coloring,
    Decision, SearchStats,
};
use kchroma_core::dimacs::{emit_dimacs_col, parse_dimacs_col};
use kchroma_core::generate::generate;
use kchroma_core::graph::Graph;
use kchroma_core::holes::{three_color_heuristic, HeuristicOutcome};
use kchroma_core::reductions::{parse_dimacs_cnf, reduce_3sat_to_3col};
use kchroma_core::rng::SplitMix64;
use serde_json::{json, Value};

use crate::bench;
use crate::config::{Cli, CliError, Command, Format, InputSource, RunConfig, DEFAULT_STEPS};
use crate::dot::export_dot;
use crate::report::{self, exit};

/// What a finished invocation prints and returns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    pub(crate) fn input_error(err: &CliError) -> Self {
        RunOutput {
            code: exit::INPUT_ERROR,
            stdout: report::render(&report::error_report(err)),
            stderr: format!("kchroma: {err}\n"),
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub wall_time: Duration,
    pub search: Option<SearchStats>,
}

impl RunStats {
    pub fn to_json(&self) -> Value {
        let mut v = json!({ "wall_time_ms": self.wall_time.as_secs_f64() * 1e3 });
        if let Some(s) = &self.search {
            v["nodes_expanded"] = json!(s.nodes_expanded);
            v["backtracks"] = json!(s.backtracks);
        }
        v
    }
}

/// Result of one non-bench subcommand.
#[derive(Debug, Clone)]
pub struct Execution {
    pub exit_code: i32,
    pub result: Value,
    pub stats: RunStats,
    pub input_digest: String,
    /// Graph to render for `dot`/`dimacs` output.
    pub graph: Option<Graph>,
    pub coloring: Option<Coloring>,
    pub summary: String,
}

fn read(path: &std::path::Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Loads the graph input; the digest covers the file bytes, or the DIMACS
/// text of a generated graph.
pub fn load_graph(src: &InputSource) -> Result<(Graph, String), CliError> {
    match src {
        InputSource::Path(p) => {
            let text = read(p)?;
            let g = parse_dimacs_col(&text)?;
            Ok((g, report::digest(text.as_bytes())))
        }
        InputSource::Gen(spec) => {
            let g = generate(spec)?;
            let digest = report::digest(emit_dimacs_col(&g).as_bytes());
            Ok((g, digest))
        }
    }
}

fn shuffled_order(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    let mut rng = SplitMix64::new(seed);
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        order.swap(i, j);
    }
    order
}

/// Runs a single non-bench subcommand.
pub fn execute(cfg: &RunConfig) -> Result<Execution, CliError> {
    cfg.validate()?;
    let input = cfg
        .input
        .as_ref()
        .ok_or_else(|| CliError::Usage("missing input".into()))?;

    if cfg.subcommand == Command::Reduce {
        return execute_reduce(cfg, input);
    }
    if cfg.subcommand == Command::Bench {
        return Err(CliError::Usage("bench cannot run as a single instance".into()));
    }

    let (g, input_digest) = load_graph(input)?;
    let start = Instant::now();
    let mut search = None;
    let mut coloring = None;
    let (exit_code, result, summary) = match cfg.subcommand {
        Command::Color => {
            let order = match cfg.seed {
                Some(seed) => shuffled_order(g.vertex_count(), seed),
                None => g.vertices().collect(),
            };
            let r = greedy_color(&g, &order).expect("order is a permutation");
            let summary = format!("first-fit used {} colors", r.colors_used);
            let result = json!({
                "colors_used": r.colors_used,
                "coloring": r.coloring.colors,
                "order": r.order,
            });
            coloring = Some(r.coloring);
            (exit::OK, result, summary)
        }
        Command::Decide => {
            let k = cfg.k.expect("validated");
            let (decision, stats) = decide_k_colorable_with_stats(&g, k, &cfg.search_limits());
            search = Some(stats);
            match decision {
                Decision::Colorable(c) => {
                    let result = json!({
                        "k": k,
                        "status": "colorable",
                        "colorable": true,
                        "coloring": c.colors,
                    });
                    coloring = Some(c);
                    (exit::OK, result, format!("{k}-colorable"))
                }
                Decision::NotColorable => {
                    let mut result = json!({"k": k, "status": "not_colorable", "colorable": false});
                    let mut summary = format!("not {k}-colorable");
                    if k == 2 {
                        if let TwoColorResult::OddCycle(cert) = two_color(&g) {
                            summary.push_str(&format!(" (odd cycle of length {})", cert.len()));
                            result["odd_cycle"] = json!(cert.cycle);
                        }
                    }
                    (exit::NOT_COLORABLE, result, summary)
                }
                Decision::BudgetExhausted(_) => (
                    exit::UNKNOWN,
                    json!({"k": k, "status": "unknown", "colorable": null, "reason": "search budget exhausted"}),
                    format!("{k}-colorability unknown (budget exhausted)"),
                ),
            }
        }
        Command::Chi => {
            let (chi, stats) = chromatic_number_with_stats(&g, &cfg.search_limits());
            search = Some(stats);
            match chi {
                Chromatic::Exact {
                    chromatic,
                    coloring: c,
                } => {
                    let result = json!({"status": "exact", "chromatic": chromatic, "coloring": c.colors});
                    coloring = Some(c);
                    (exit::OK, result, format!("chromatic number {chromatic}"))
                }
                Chromatic::Bounded { lower, upper } => (
                    exit::UNKNOWN,
                    json!({"status": "bounded", "lower": lower, "upper": upper}),
                    format!("chromatic number in [{lower}, {upper}] (budget exhausted)"),
                ),
            }
        }
        Command::Bipartite => match two_color(&g) {
            TwoColorResult::Colorable(c) => {
                let result = json!({"colorable": true, "coloring": c.colors});
                coloring = Some(c);
                (exit::OK, result, "bipartite".to_string())
            }
            TwoColorResult::OddCycle(cert) => (
                exit::NOT_COLORABLE,
                json!({"colorable": false, "odd_cycle": cert.cycle}),
                format!("not bipartite (odd cycle of length {})", cert.len()),
            ),
        },
        Command::Bounds => {
            let limits = BoundsLimits {
                max_vertices: DEFAULT_MAX_VERTICES,
                search: cfg.search_limits(),
            };
            let r = bounds_report(&g, true, &limits);
            let failed: Vec<&str> = r.failed_checks().map(|c| c.name).collect();
            let summary = format!(
                "omega={} alpha={} mvc={} chi={} delta+1={}; failed checks: {}",
                opt(r.clique_number),
                opt(r.independence_number),
                opt(r.min_vertex_cover),
                opt(r.chromatic),
                r.max_degree_plus_one,
                if failed.is_empty() { "none".to_string() } else { failed.join(", ") }
            );
            (exit::OK, serde_json::to_value(&r).expect("report serializes"), summary)
        }
        Command::Holes => {
            let steps = cfg.budget_steps.unwrap_or(DEFAULT_STEPS);
            match three_color_heuristic(&g, steps, cfg.seed.unwrap_or(0)) {
                HeuristicOutcome::Colored {
                    coloring: c,
                    holes,
                    rotation_steps,
                } => {
                    let summary = format!("3-colored with {} holes after {rotation_steps} steps", holes.len());
                    let result = json!({
                        "status": "colored",
                        "coloring": c.colors,
                        "holes": holes,
                        "rotation_steps": rotation_steps,
                    });
                    coloring = Some(c);
                    (exit::OK, result, summary)
                }
                HeuristicOutcome::Unknown { state, reason } => (
                    exit::UNKNOWN,
                    json!({
                        "status": "unknown",
                        "holes": state.holes,
                        "rotation_steps": state.rotation_steps,
                        "budget": state.budget,
                        "reason": reason,
                    }),
                    format!("unknown after {} steps: {reason}", state.rotation_steps),
                ),
            }
        }
        Command::Gen => {
            let result = json!({
                "vertex_count": g.vertex_count(),
                "edge_count": g.edge_count(),
                "edges": g.edges(),
            });
            let summary = format!("{} vertices, {} edges", g.vertex_count(), g.edge_count());
            (exit::OK, result, summary)
        }
        Command::Reduce | Command::Bench => unreachable!(),
    };

    Ok(Execution {
        exit_code,
        result,
        stats: RunStats {
            wall_time: start.elapsed(),
            search,
        },
        input_digest,
        graph: Some(g),
        coloring,
        summary,
    })
}

fn opt(x: Option<usize>) -> String {
    x.map_or("n/a".to_string(), |v| v.to_string())
}

fn execute_reduce(cfg: &RunConfig, input: &InputSource) -> Result<Execution, CliError> {
    let InputSource::Path(path) = input else {
        return Err(CliError::Usage("reduce reads a .cnf file via --input".into()));
    };
    let text = read(path)?;
    let start = Instant::now();
    let formula = parse_dimacs_cnf(&text)?;
    let map = reduce_3sat_to_3col(&formula);
    let mut result = serde_json::to_value(&map).expect("map serializes");
    result["variables"] = json!(formula.variable_count);
    result["clauses"] = json!(formula.clauses.len());
    result["vertex_count"] = json!(map.graph.vertex_count());
    result["edge_count"] = json!(map.graph.edge_count());
    if let Some(sidecar) = &cfg.sidecar {
        std::fs::write(sidecar, report::render(&result)).map_err(|source| CliError::Io {
            path: sidecar.display().to_string(),
            source,
        })?;
    }
    let summary = format!(
        "{} variables, {} clauses -> {} vertices, {} edges",
        formula.variable_count,
        formula.clauses.len(),
        map.graph.vertex_count(),
        map.graph.edge_count()
    );
    Ok(Execution {
        exit_code: exit::OK,
        result,
        stats: RunStats {
            wall_time: start.elapsed(),
            search: None,
        },
        input_digest: report::digest(text.as_bytes()),
        graph: Some(map.graph),
        coloring: None,
        summary,
    })
}

fn ansi_enabled() -> bool {
    std::env::var_os("KCHROMA_NO_COLOR").is_none()
}

pub(crate) fn paint(code: i32, text: &str) -> String {
    if !ansi_enabled() {
        return text.to_string();
    }
    let esc = match code {
        exit::OK => "32",
        exit::NOT_COLORABLE => "31",
        _ => "33",
    };
    format!("\x1b[{esc}m{text}\x1b[0m")
}

/// Renders an execution in the configured format.
pub fn render_execution(cfg: &RunConfig, exec: &Execution) -> Result<String, CliError> {
    Ok(match cfg.format {
        Format::Json => report::render(&report::envelope(
            cfg.subcommand.name(),
            &exec.input_digest,
            exec.result.clone(),
            exec.stats.to_json(),
        )),
        Format::Dot => {
            let g = exec.graph.as_ref().expect("graph subcommands keep their graph");
            export_dot(g, exec.coloring.as_ref()).map_err(|e| CliError::Usage(e.to_string()))?
        }
        Format::Dimacs => emit_dimacs_col(exec.graph.as_ref().expect("gen/reduce keep their graph")),
        Format::Summary => format!(
            "{}: {}\n",
            cfg.subcommand.name(),
            paint(exec.exit_code, &exec.summary)
        ),
    })
}

/// Runs a validated config, including `bench`.
pub fn run_config(cfg: &RunConfig) -> RunOutput {
    if cfg.subcommand == Command::Bench {
        return bench::run_bench(cfg);
    }
    match execute(cfg).and_then(|exec| Ok((render_execution(cfg, &exec)?, exec.exit_code))) {
        Ok((stdout, code)) => RunOutput {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => RunOutput::input_error(&e),
    }
}

/// Parses command-line arguments (program name first) and runs them.
pub fn run<I, T>(args: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return RunOutput {
                    code: exit::OK,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            return RunOutput::input_error(&CliError::Usage(e.to_string()));
        }
    };
    match RunConfig::from_cli(cli) {
        Ok(cfg) => run_config(&cfg),
        Err(e) => RunOutput::input_error(&e),
    }
}

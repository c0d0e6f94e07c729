//! Benchmark suites and the linear-time check for the bipartite test.

use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use kchroma_core::bipartite::two_color;
use kchroma_core::generate::{generate, GeneratorSpec};
use kchroma_core::graph::Graph;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::config::{CliError, Command, Format, InputSource, RunConfig};
use crate::report::{self, exit};
use crate::run::{execute, load_graph, paint, RunOutput};

/// Accepted range for the fitted log-log exponent.
pub const LINEAR_EXPONENT_RANGE: (f64, f64) = (0.8, 1.3);

/// Ladder used by `--check-linear` when no suite is given.
pub const DEFAULT_LADDER: [usize; 3] = [1_000, 10_000, 100_000];

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Suite {
    pub instances: Vec<SuiteInstance>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteInstance {
    pub id: String,
    #[serde(default)]
    pub gen: Option<String>,
    #[serde(default)]
    pub path: Option<PathBuf>,
    pub subcommand: String,
    #[serde(default)]
    pub k: Option<usize>,
    #[serde(default)]
    pub budget_nodes: Option<u64>,
    #[serde(default)]
    pub budget_ms: Option<u64>,
    #[serde(default)]
    pub budget_steps: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// One suite row. Timings live in a parallel list under `stats`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRow {
    pub id: String,
    pub subcommand: String,
    pub exit_code: i32,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nodes_expanded: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    pub wall_time: Duration,
}

pub fn parse_suite(text: &str) -> Result<Suite, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Suite(e.to_string()))
}

impl SuiteInstance {
    /// Builds the run config, resolving `path` against `base`.
    pub fn to_config(&self, base: &Path) -> Result<RunConfig, CliError> {
        let subcommand = Command::from_name(&self.subcommand)
            .ok_or_else(|| CliError::Suite(format!("unknown subcommand {:?}", self.subcommand)))?;
        if matches!(subcommand, Command::Bench | Command::Reduce) {
            return Err(CliError::Suite(format!(
                "{} is not allowed inside a suite",
                subcommand.name()
            )));
        }
        let mut cfg = RunConfig::new(subcommand);
        cfg.input = match (&self.gen, &self.path) {
            (Some(g), None) => Some(InputSource::Gen(g.parse()?)),
            (None, Some(p)) => Some(InputSource::Path(base.join(p))),
            _ => {
                return Err(CliError::Suite(format!(
                    "instance {:?} needs exactly one of gen and path",
                    self.id
                )))
            }
        };
        cfg.k = self.k;
        cfg.budget_nodes = self.budget_nodes;
        cfg.budget_ms = self.budget_ms;
        cfg.budget_steps = self.budget_steps;
        cfg.seed = self.seed;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn status_for(exec_code: i32, result: &Value) -> String {
    if let Some(s) = result.get("status").and_then(Value::as_str) {
        return s.to_string();
    }
    if let Some(c) = result.get("colorable").and_then(Value::as_bool) {
        return if c { "colorable" } else { "not_colorable" }.to_string();
    }
    match exec_code {
        exit::OK => "ok",
        exit::NOT_COLORABLE => "not_colorable",
        _ => "unknown",
    }
    .to_string()
}

fn run_instance(inst: &SuiteInstance, base: &Path) -> BenchRow {
    let start = Instant::now();
    let outcome = inst.to_config(base).and_then(|cfg| execute(&cfg));
    match outcome {
        Ok(exec) => BenchRow {
            id: inst.id.clone(),
            subcommand: inst.subcommand.clone(),
            exit_code: exec.exit_code,
            status: status_for(exec.exit_code, &exec.result),
            nodes_expanded: exec.stats.search.as_ref().map(|s| s.nodes_expanded),
            error: None,
            wall_time: start.elapsed(),
        },
        Err(e) => BenchRow {
            id: inst.id.clone(),
            subcommand: inst.subcommand.clone(),
            exit_code: exit::INPUT_ERROR,
            status: "error".into(),
            nodes_expanded: None,
            error: Some(e.to_string()),
            wall_time: start.elapsed(),
        },
    }
}

/// Runs every instance with up to `jobs` workers; rows come back in suite order.
pub fn run_suite(suite: &Suite, base: &Path, jobs: usize) -> Vec<BenchRow> {
    let n = suite.instances.len();
    let slots: Vec<Mutex<Option<BenchRow>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, n.max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= n {
                    break;
                }
                let row = run_instance(&suite.instances[i], base);
                *slots[i].lock().unwrap() = Some(row);
            });
        }
    });
    slots
        .into_iter()
        .map(|m| m.into_inner().unwrap().expect("every slot filled"))
        .collect()
}

pub fn aggregate(rows: &[BenchRow]) -> Value {
    let count = |code: i32| rows.iter().filter(|r| r.exit_code == code).count();
    json!({
        "instances": rows.len(),
        "ok": count(exit::OK),
        "not_colorable": count(exit::NOT_COLORABLE),
        "unknown": count(exit::UNKNOWN),
        "errors": count(exit::INPUT_ERROR),
        "nodes_expanded": rows.iter().filter_map(|r| r.nodes_expanded).sum::<u64>(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearPoint {
    pub id: String,
    pub vertex_count: usize,
    pub edge_count: usize,
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LinearFit {
    pub points: Vec<LinearPoint>,
    pub exponent: f64,
    pub range: (f64, f64),
    pub passed: bool,
}

/// Minimum over batches of the mean per-call time of `two_color(g)`.
pub fn time_two_color(g: &Graph) -> f64 {
    const BATCHES: usize = 7;
    const BATCH_TARGET: Duration = Duration::from_millis(15);
    std::hint::black_box(two_color(g));
    let mut best = f64::INFINITY;
    for _ in 0..BATCHES {
        let start = Instant::now();
        let mut reps = 0u32;
        while reps == 0 || start.elapsed() < BATCH_TARGET {
            std::hint::black_box(two_color(std::hint::black_box(g)));
            reps += 1;
        }
        best = best.min(start.elapsed().as_secs_f64() / f64::from(reps));
    }
    best
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Times `two_color` on each graph and fits wall time against V+E.
pub fn check_linear(graphs: &[(String, Graph)]) -> Result<LinearFit, CliError> {
    let sizes: std::collections::BTreeSet<usize> =
        graphs.iter().map(|(_, g)| g.vertex_count() + g.edge_count()).collect();
    if sizes.len() < 2 {
        return Err(CliError::Suite(
            "linear check needs bipartite instances of at least two sizes".into(),
        ));
    }
    let points: Vec<LinearPoint> = graphs
        .iter()
        .map(|(id, g)| LinearPoint {
            id: id.clone(),
            vertex_count: g.vertex_count(),
            edge_count: g.edge_count(),
            seconds: time_two_color(g),
        })
        .collect();
    let xs: Vec<f64> = points.iter().map(|p| (p.vertex_count + p.edge_count) as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.seconds.max(1e-12)).collect();
    let exponent = loglog_slope(&xs, &ys);
    let range = LINEAR_EXPONENT_RANGE;
    Ok(LinearFit {
        points,
        exponent,
        range,
        passed: exponent >= range.0 && exponent <= range.1,
    })
}

pub fn default_ladder() -> Vec<(String, Graph)> {
    DEFAULT_LADDER
        .iter()
        .map(|&n| {
            let spec = GeneratorSpec::Cycle(n);
            (spec.to_string(), generate(&spec).expect("ladder specs are valid"))
        })
        .collect()
}

fn linear_graphs(suite: &Suite, base: &Path) -> Result<Vec<(String, Graph)>, CliError> {
    let mut out = Vec::new();
    for inst in suite.instances.iter().filter(|i| i.subcommand == "bipartite") {
        let cfg = inst.to_config(base)?;
        let (g, _) = load_graph(cfg.input.as_ref().expect("validated"))?;
        out.push((inst.id.clone(), g));
    }
    Ok(out)
}

/// Entry point for `kchroma bench`.
pub fn run_bench(cfg: &RunConfig) -> RunOutput {
    match bench(cfg) {
        Ok(out) => out,
        Err(e) => RunOutput::input_error(&e),
    }
}

fn bench(cfg: &RunConfig) -> Result<RunOutput, CliError> {
    cfg.validate()?;
    let start = Instant::now();
    let (suite, base, digest) = match &cfg.input {
        Some(InputSource::Path(p)) => {
            let text = std::fs::read_to_string(p).map_err(|source| CliError::Io {
                path: p.display().to_string(),
                source,
            })?;
            let base = p.parent().map(Path::to_path_buf).unwrap_or_default();
            (Some(parse_suite(&text)?), base, report::digest(text.as_bytes()))
        }
        _ => (None, PathBuf::new(), report::digest(b"")),
    };

    let mut result = json!({});
    let mut stats = json!({});
    let mut code = exit::OK;
    let mut summary = String::new();

    if let Some(suite) = &suite {
        if !cfg.check_linear {
            let rows = run_suite(suite, &base, cfg.jobs);
            if rows.iter().any(|r| r.exit_code == exit::INPUT_ERROR) {
                code = exit::INPUT_ERROR;
            }
            for r in &rows {
                summary.push_str(&format!(
                    "{:<24} {:<10} {:<14} {:>12} {:>10.3} ms\n",
                    r.id,
                    r.subcommand,
                    paint(r.exit_code, &r.status),
                    r.nodes_expanded.map_or("-".to_string(), |n| n.to_string()),
                    r.wall_time.as_secs_f64() * 1e3
                ));
            }
            let agg = aggregate(&rows);
            summary.push_str(&format!("aggregate: {agg}\n"));
            stats["rows"] = rows
                .iter()
                .map(|r| json!({"id": r.id, "wall_time_ms": r.wall_time.as_secs_f64() * 1e3}))
                .collect();
            result["rows"] = serde_json::to_value(&rows).expect("rows serialize");
            result["aggregate"] = agg;
        }
    }

    if cfg.check_linear {
        let graphs = match &suite {
            Some(s) => linear_graphs(s, &base)?,
            None => default_ladder(),
        };
        let fit = check_linear(&graphs)?;
        if !fit.passed && code == exit::OK {
            code = exit::NOT_COLORABLE;
        }
        summary.push_str(&format!(
            "linear check: exponent {:.3} in [{}, {}]: {}\n",
            fit.exponent,
            fit.range.0,
            fit.range.1,
            paint(if fit.passed { exit::OK } else { exit::NOT_COLORABLE }, if fit.passed { "pass" } else { "fail" })
        ));
        result["check_linear"] = serde_json::to_value(&fit).expect("fit serializes");
    }

    stats["wall_time_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    let stdout = match cfg.format {
        Format::Summary => summary,
        _ => report::render(&report::envelope("bench", &digest, result, stats)),
    };
    let stderr = if code == exit::INPUT_ERROR {
        "kchroma: one or more suite instances failed\n".to_string()
    } else {
        String::new()
    };
    Ok(RunOutput { code, stdout, stderr })
}

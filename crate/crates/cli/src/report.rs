//! JSON report envelope shared by every subcommand.
//!
//! Everything outside `stats` is a pure function of the inputs and seed;
//! `stats` carries timings and search counters.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::config::CliError;

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL: &str = "kchroma";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The published schema for reports and error reports.
pub const REPORT_SCHEMA: &str = include_str!("../schema/report.schema.json");

/// Process exit codes.
pub mod exit {
    /// Decided colorable, or computed successfully.
    pub const OK: i32 = 0;
    /// Input or usage error.
    pub const INPUT_ERROR: i32 = 2;
    /// Decided not colorable.
    pub const NOT_COLORABLE: i32 = 10;
    /// Unknown or budget exhausted.
    pub const UNKNOWN: i32 = 20;
}

pub fn digest(bytes: &[u8]) -> String {
    format!("sha256:{}", hex::encode(Sha256::digest(bytes)))
}

pub fn envelope(subcommand: &str, input_digest: &str, result: Value, stats: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "tool_version": TOOL_VERSION,
        "subcommand": subcommand,
        "input_digest": input_digest,
        "result": result,
        "stats": stats,
    })
}

pub fn error_report(err: &CliError) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "tool_version": TOOL_VERSION,
        "error": {
            "kind": err.kind(),
            "message": err.to_string(),
        },
    })
}

/// Pretty JSON with a trailing newline.
pub fn render(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

/// Copy of a report with the `stats` object removed, for determinism checks.
pub fn without_stats(v: &Value) -> Value {
    let mut v = v.clone();
    if let Some(obj) = v.as_object_mut() {
        obj.remove("stats");
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digest_of_empty_input() {
        assert_eq!(
            digest(b""),
            "sha256:e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855"
        );
    }

    #[test]
    fn stats_stripped() {
        let r = envelope("chi", "sha256:00", json!({"chromatic": 1}), json!({"wall_time_ms": 1.5}));
        let s = without_stats(&r);
        assert!(s.get("stats").is_none());
        assert_eq!(s["result"]["chromatic"], 1);
    }
}

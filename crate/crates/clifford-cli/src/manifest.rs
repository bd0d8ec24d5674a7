//! Provenance block embedded in every output document.
//!
//! The manifest records what produced a document: command, arguments, tool
//! version, seeds, and the field involved. Arguments that cannot influence
//! document content (`--jobs`, `--timings`, `--out`) are stripped so reruns
//! with different parallelism produce byte-identical documents; wall-clock
//! timing is filled only when explicitly requested.

use serde::{Deserialize, Serialize};

use crate::json::FieldSpecDto;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub command: String,
    pub args: Vec<String>,
    pub version: String,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub field: Option<FieldSpecDto>,
    pub timing_ms: Option<u64>,
}

const VOLATILE_WITH_VALUE: &[&str] = &["--jobs", "--out"];
const VOLATILE_FLAGS: &[&str] = &["--timings"];

pub fn build(command: &str, argv: &[String], seeds: Vec<u64>, field: Option<FieldSpecDto>) -> Manifest {
    let mut args = Vec::new();
    let mut skip_next = false;
    for a in argv.iter().skip(2) {
        if skip_next {
            skip_next = false;
            continue;
        }
        if VOLATILE_FLAGS.contains(&a.as_str()) {
            continue;
        }
        if VOLATILE_WITH_VALUE.contains(&a.as_str()) {
            skip_next = true;
            continue;
        }
        if VOLATILE_WITH_VALUE.iter().any(|v| a.starts_with(&format!("{v}=")))
            || VOLATILE_FLAGS.iter().any(|v| a.starts_with(&format!("{v}=")))
        {
            continue;
        }
        args.push(a.clone());
    }
    Manifest {
        command: command.to_string(),
        args,
        version: env!("CARGO_PKG_VERSION").to_string(),
        seeds,
        field,
        timing_ms: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn volatile_args_are_stripped() {
        let argv: Vec<String> = [
            "clifford", "census", "--form", "f.json", "--jobs", "4", "--timings", "--m", "3",
            "--out=x.json",
        ]
        .iter()
        .map(|s| s.to_string())
        .collect();
        let m = build("census", &argv, vec![], None);
        assert_eq!(m.args, vec!["--form", "f.json", "--m", "3"]);
        assert_eq!(m.timing_ms, None);
    }
}

//! Suite runs and their text and JSON renderings.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::checks::{catalog, run_checks, select, CheckResult, Status, Workbench};
use crate::corpus::Corpus;
use crate::error::Result;
use crate::par::Parallelism;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// JSON schema of [`Report::to_json`].
pub const SCHEMA: &str = include_str!("../schema/report.schema.json");

#[derive(Clone, Debug)]
pub struct Report {
    pub version: &'static str,
    pub corpus_hash: String,
    pub max_length: usize,
    pub checks: Vec<CheckResult>,
}

/// Runs the checks matching `filters` (all of them for `None`).
pub fn run_suite(corpus: Corpus, filters: Option<&[String]>, max_length: usize, par: Parallelism) -> Result<Report> {
    let ids = match filters {
        Some(f) => select(f)?,
        None => catalog().iter().map(|c| c.id).collect(),
    };
    let corpus_hash = corpus.hash().to_string();
    let bench = Workbench::new(corpus, max_length, par);
    let checks = run_checks(&bench, &ids)?;
    Ok(Report { version: VERSION, corpus_hash, max_length, checks })
}

impl Report {
    pub fn count(&self, f: impl Fn(Status) -> bool) -> usize {
        self.checks.iter().filter(|c| f(c.status)).count()
    }

    pub fn has_failure(&self) -> bool {
        self.count(|s| s == Status::Fail) > 0
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.has_failure())
    }

    fn summary(&self) -> String {
        let n = |name: &str| self.count(|s| s.name() == name);
        format!(
            "{} checks: {} PASS, {} PARTIAL, {} INCONCLUSIVE, {} FAIL, {} SKIP",
            self.checks.len(),
            n("PASS"),
            n("PARTIAL"),
            n("INCONCLUSIVE"),
            n("FAIL"),
            n("SKIP")
        )
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "pd3 {} corpus {} max-length {}", self.version, self.corpus_hash, self.max_length);
        for c in &self.checks {
            let time = if timings { format!("  [{:.3} s]", c.wall_time.as_secs_f64()) } else { String::new() };
            let _ = writeln!(out, "{:<4} {:<16} {}{time}", c.id, c.status.to_string(), c.title);
            let _ = writeln!(out, "       claim: {}", c.reference);
            if matches!(c.status, Status::Partial(_) | Status::Inconclusive(_)) {
                let _ = writeln!(
                    out,
                    "       bounded certificate: supports within the ball of radius {}",
                    c.status.bound().unwrap_or(0)
                );
            }
            for (k, v) in &c.details {
                let _ = writeln!(out, "       {k}: {v}");
            }
        }
        let _ = writeln!(out, "{}", self.summary());
        out
    }

    pub fn to_json_value(&self, timings: bool) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| {
                let mut v = json!({
                    "id": c.id,
                    "title": c.title,
                    "status": c.status.name(),
                    "bound": c.status.bound(),
                    "reference": c.reference,
                    "details": c.details,
                });
                if timings {
                    v["wall_time_ms"] = json!(c.wall_time.as_secs_f64() * 1000.0);
                }
                v
            })
            .collect();
        json!({
            "version": self.version,
            "corpus_hash": self.corpus_hash,
            "max_length": self.max_length,
            "exit_code": self.exit_code(),
            "checks": checks,
        })
    }

    pub fn to_json(&self, timings: bool) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json_value(timings)).expect("serializable");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_is_deterministic_without_timings() {
        let run = || run_suite(Corpus::embedded(), Some(&["X*".to_string()]), 2, Parallelism::Parallel).unwrap();
        let (a, b) = (run(), run());
        assert_eq!(a.checks.len(), 8);
        assert_eq!(a.to_json(false), b.to_json(false));
        assert!(a.to_json(true).contains("wall_time_ms"));
        assert!(!a.to_json(false).contains("wall_time_ms"));
        assert_eq!(a.exit_code(), 0);
    }

    #[test]
    fn empty_selection() {
        let r = run_suite(Corpus::embedded(), Some(&["Q*".to_string()]), 2, Parallelism::Sequential).unwrap();
        assert!(r.checks.is_empty());
        assert_eq!(r.exit_code(), 0);
    }

    #[test]
    fn text_shows_bounds() {
        let r = run_suite(Corpus::embedded(), Some(&["Y6".to_string()]), 2, Parallelism::Sequential).unwrap();
        assert!(r.to_text(false).contains("PARTIAL(2)"));
    }
}

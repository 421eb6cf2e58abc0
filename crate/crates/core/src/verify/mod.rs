//! Seeded verification suites and their JSON report.
//!
//! Every trial draws from its own RNG derived from the master seed, the
//! suite id and the trial index, so reports do not depend on scheduling.
//! Wall times are recorded only on request, which keeps reports for a
//! fixed configuration byte-identical.

mod suites;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::dynamics::DEFAULT_RETRY_BUDGET;
use crate::error::{Error, Result};

pub use suites::suite_names;

/// Failure payloads kept per suite.
pub const MAX_EXAMPLES: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Overrides the per-suite trial counts when set.
    pub trials: Option<usize>,
    pub max_word_len: usize,
    pub max_window: usize,
    pub max_depth: usize,
    pub retry_budget: usize,
    /// Seconds for the whole run.
    pub time_limit: u64,
    /// Record per-suite wall time in the report.
    #[serde(default)]
    pub timings: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            trials: None,
            max_word_len: 8,
            max_window: 4,
            max_depth: 12,
            retry_budget: DEFAULT_RETRY_BUDGET,
            time_limit: 300,
            timings: false,
        }
    }
}

impl SuiteConfig {
    pub fn validate(&self) -> Result<()> {
        let counts = [
            ("trials", self.trials.unwrap_or(1)),
            ("max_word_len", self.max_word_len),
            ("max_window", self.max_window),
            ("max_depth", self.max_depth),
            ("retry_budget", self.retry_budget),
            ("time_limit", self.time_limit as usize),
        ];
        for (name, value) in counts {
            if value == 0 {
                return Err(Error::InvalidConfig(format!("{name} must be at least 1")));
            }
        }
        Ok(())
    }

    /// Trials for a suite with the given default.
    pub fn trials_or(&self, default: usize) -> usize {
        self.trials.unwrap_or(default)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SuiteStatus {
    Pass,
    Fail,
    /// The time limit ran out during this suite.
    TimeLimit,
    /// Not started because the time limit had already run out.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub name: String,
    pub trials: usize,
    pub failures: usize,
    pub examples: Vec<Value>,
    pub status: SuiteStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteResult>,
    pub passed: bool,
}

impl Report {
    /// 0 when every suite passed, 3 when the time limit cut the run short,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.suites.is_empty() {
            1
        } else if self
            .suites
            .iter()
            .any(|s| matches!(s.status, SuiteStatus::TimeLimit | SuiteStatus::Skipped))
        {
            3
        } else if self.passed {
            0
        } else {
            1
        }
    }
}

/// Shared state while running suites.
pub(crate) struct Runner<'a> {
    pub config: &'a SuiteConfig,
    deadline: Instant,
}

/// What a batch of trials produced.
pub(crate) struct Outcome {
    pub trials: usize,
    pub failures: usize,
    pub examples: Vec<Value>,
    pub timed_out: bool,
}

impl Runner<'_> {
    pub fn expired(&self) -> bool {
        Instant::now() >= self.deadline
    }

    /// Runs `trial(i)` for `i < n` in parallel chunks, checking the deadline
    /// between chunks. `trial` returns a payload on failure.
    pub fn trials<F>(&self, n: usize, trial: F) -> Outcome
    where
        F: Fn(u64) -> Option<Value> + Sync,
    {
        use rayon::prelude::*;
        const CHUNK: usize = 64;
        let mut out = Outcome {
            trials: 0,
            failures: 0,
            examples: Vec::new(),
            timed_out: false,
        };
        let mut start = 0;
        while start < n {
            if self.expired() {
                out.timed_out = true;
                break;
            }
            let end = (start + CHUNK).min(n);
            let results: Vec<Option<Value>> = (start..end)
                .into_par_iter()
                .map(|i| trial(i as u64))
                .collect();
            for payload in results.into_iter().flatten() {
                out.failures += 1;
                if out.examples.len() < MAX_EXAMPLES {
                    out.examples.push(payload);
                }
            }
            out.trials = end;
            start = end;
        }
        out
    }
}

/// Runs every suite in order and collects the report.
pub fn cmd_verify(config: &SuiteConfig) -> Result<Report> {
    config.validate()?;
    let started = Instant::now();
    let runner = Runner {
        config,
        deadline: started + Duration::from_secs(config.time_limit),
    };
    let mut results = Vec::new();
    for (id, (name, suite)) in suites::SUITES.iter().enumerate() {
        if runner.expired() {
            results.push(SuiteResult {
                name: name.to_string(),
                trials: 0,
                failures: 0,
                examples: Vec::new(),
                status: SuiteStatus::Skipped,
                wall_ms: None,
            });
            continue;
        }
        let t0 = Instant::now();
        let outcome = suite(&runner, id as u64);
        let status = if outcome.timed_out {
            SuiteStatus::TimeLimit
        } else if outcome.failures > 0 {
            SuiteStatus::Fail
        } else {
            SuiteStatus::Pass
        };
        results.push(SuiteResult {
            name: name.to_string(),
            trials: outcome.trials,
            failures: outcome.failures,
            examples: outcome.examples,
            status,
            wall_ms: config.timings.then(|| t0.elapsed().as_millis() as u64),
        });
    }
    let passed = results.iter().all(|s| s.status == SuiteStatus::Pass);
    Ok(Report {
        config: config.clone(),
        suites: results,
        passed,
    })
}

/// Plain-text summary of a report and the exit code it implies.
pub fn render_report(report: &Report) -> (String, i32) {
    let mut out = String::new();
    let c = &report.config;
    let _ = writeln!(out, "seed {}", c.seed);
    if report.suites.is_empty() {
        out.push_str("NO SUITES RUN\n");
        return (out, 1);
    }
    for s in &report.suites {
        let status = match s.status {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => "FAIL",
            SuiteStatus::TimeLimit => "TIME LIMIT",
            SuiteStatus::Skipped => "SKIPPED",
        };
        let _ = write!(
            out,
            "{:<22} {:<10} trials {:>5}  failures {:>4}",
            s.name, status, s.trials, s.failures
        );
        if let Some(ms) = s.wall_ms {
            let _ = write!(out, "  {ms} ms");
        }
        out.push('\n');
        for e in &s.examples {
            let _ = writeln!(out, "    example: {e}");
        }
    }
    let bad: Vec<&str> = report
        .suites
        .iter()
        .filter(|s| s.status != SuiteStatus::Pass)
        .map(|s| s.name.as_str())
        .collect();
    if bad.is_empty() {
        out.push_str("ALL SUITES PASSED\n");
    } else {
        let _ = writeln!(out, "FAILED: {} (seed {})", bad.join(", "), c.seed);
    }
    (out, report.exit_code())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> SuiteConfig {
        SuiteConfig {
            trials: Some(1),
            max_word_len: 3,
            ..SuiteConfig::default()
        }
    }

    #[test]
    fn config_validation() {
        assert!(SuiteConfig::default().validate().is_ok());
        let bad = SuiteConfig {
            max_word_len: 0,
            ..SuiteConfig::default()
        };
        assert!(matches!(bad.validate(), Err(Error::InvalidConfig(_))));
        let bad = SuiteConfig {
            trials: Some(0),
            ..SuiteConfig::default()
        };
        assert!(cmd_verify(&bad).is_err());
    }

    #[test]
    fn single_trial_run_is_deterministic() {
        let a = cmd_verify(&small()).unwrap();
        let b = cmd_verify(&small()).unwrap();
        assert!(a.passed, "{a:?}");
        assert_eq!(a.suites.len(), suite_names().count());
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }

    #[test]
    fn rendering() {
        let mut report = cmd_verify(&small()).unwrap();
        let (text, code) = render_report(&report);
        assert!(text.ends_with("ALL SUITES PASSED\n"));
        assert_eq!(code, 0);

        report.suites[1].failures = 1;
        report.suites[1].status = SuiteStatus::Fail;
        report.suites[1].examples = vec![serde_json::json!({"trial": 7})];
        report.passed = false;
        let (text, code) = render_report(&report);
        assert_eq!(code, 1);
        assert!(text.contains("FAILED: v-group-laws (seed 0)"));
        assert!(text.contains(r#"{"trial":7}"#));

        report.suites.clear();
        let (text, code) = render_report(&report);
        assert!(text.contains("NO SUITES RUN"));
        assert_ne!(code, 0);
    }

    #[test]
    fn time_limit_exit_code() {
        let mut report = cmd_verify(&small()).unwrap();
        report.suites[9].status = SuiteStatus::Skipped;
        report.passed = false;
        let (text, code) = render_report(&report);
        assert_eq!(code, 3);
        assert!(text.contains("SKIPPED"));
    }
}

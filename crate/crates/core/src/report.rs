//! Uniform result reporting for the verification suites.
//!
//! Every suite returns a [`Report`]: how it ran (exhaustive or sampled with
//! which seed), how many individual checks were made, how many failed, and a
//! capped list of failure witnesses. Reports render to a stable one-line text
//! form and serialize to JSON with a fixed field order, so identical inputs
//! and configuration always produce byte-identical output.

use serde::Serialize;
use std::fmt;

/// How many failure witnesses a report retains.
pub const WITNESS_CAP: usize = 5;

/// How a suite enumerated its checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Mode {
    /// Every case in the suite's scope was checked.
    Exhaustive,
    /// `samples` pseudorandom cases drawn from the stream seeded by `seed`.
    Sampled { samples: u64, seed: u64 },
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Exhaustive => write!(f, "exhaustive"),
            Mode::Sampled { samples, seed } => {
                write!(f, "sampled(samples={samples},seed={seed})")
            }
        }
    }
}

/// Outcome of one verification suite.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub mode: Mode,
    pub checks: u64,
    pub failures: u64,
    /// First few failure witnesses, as human-readable strings.
    pub witnesses: Vec<String>,
    /// Free-form remarks (scope reductions, derived quantities, ...).
    pub notes: Vec<String>,
    /// True when the suite did not run (e.g. out of scope for the input).
    pub skipped: bool,
}

impl Report {
    pub fn new(suite: impl Into<String>, mode: Mode) -> Self {
        Report {
            suite: suite.into(),
            mode,
            checks: 0,
            failures: 0,
            witnesses: Vec::new(),
            notes: Vec::new(),
            skipped: false,
        }
    }

    /// A suite that was intentionally not run; counts as passing.
    pub fn skipped(suite: impl Into<String>, why: impl Into<String>) -> Self {
        let mut r = Report::new(suite, Mode::Exhaustive);
        r.skipped = true;
        r.notes.push(why.into());
        r
    }

    /// Record one check; on failure the witness closure is rendered
    /// (only while the witness list has room).
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(witness());
            }
        }
    }

    pub fn note(&mut self, msg: impl Into<String>) {
        self.notes.push(msg.into());
    }

    /// Fold another report into this one (sums counts, merges witnesses).
    pub fn absorb(&mut self, other: &Report) {
        self.checks += other.checks;
        self.failures += other.failures;
        for w in &other.witnesses {
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(w.clone());
            }
        }
        for n in &other.notes {
            self.notes.push(format!("{}: {}", other.suite, n));
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// Stable single-line rendering used by the text report format.
    pub fn text_line(&self) -> String {
        let status = if self.skipped {
            "SKIP"
        } else if self.passed() {
            "PASS"
        } else {
            "FAIL"
        };
        let mut line = format!(
            "{status} {suite} mode={mode} checks={checks} failures={failures}",
            suite = self.suite,
            mode = self.mode,
            checks = self.checks,
            failures = self.failures,
        );
        for w in &self.witnesses {
            line.push_str(&format!(" witness[{w}]"));
        }
        for n in &self.notes {
            line.push_str(&format!(" note[{n}]"));
        }
        line
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text_line())
    }
}

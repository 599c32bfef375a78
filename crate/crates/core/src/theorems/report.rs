//! Per-statement verdicts and their table and JSON renderings.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::Serialize;

/// Counterexamples kept in a report; the count covers all of them.
pub const MAX_COUNTEREXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub ring: String,
    pub ideal: Option<String>,
    pub element: Option<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub id: String,
    pub description: String,
    pub instances: usize,
    pub vacuous: usize,
    pub verdict: Verdict,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    pub notes: Vec<String>,
    pub wall_ms: u64,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn non_vacuous(&self) -> usize {
        self.instances - self.vacuous
    }
}

/// Tallies gathered while checking one statement.
#[derive(Debug, Default, Clone)]
pub struct Tally {
    pub instances: usize,
    pub vacuous: usize,
    pub counterexample_count: usize,
    pub counterexamples: Vec<Counterexample>,
    /// Named counts summed across rings and reported as notes.
    pub counters: BTreeMap<&'static str, usize>,
}

impl Tally {
    pub fn instance(&mut self, vacuous: bool) {
        self.instances += 1;
        if vacuous {
            self.vacuous += 1;
        }
    }

    pub fn fail(&mut self, c: Counterexample) {
        self.counterexample_count += 1;
        if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
            self.counterexamples.push(c);
        }
    }

    pub fn count(&mut self, label: &'static str, by: usize) {
        *self.counters.entry(label).or_default() += by;
    }

    pub fn merge(&mut self, other: Tally) {
        for (label, n) in other.counters {
            self.count(label, n);
        }
        self.instances += other.instances;
        self.vacuous += other.vacuous;
        self.counterexample_count += other.counterexample_count;
        for c in other.counterexamples {
            if self.counterexamples.len() < MAX_COUNTEREXAMPLES {
                self.counterexamples.push(c);
            }
        }
    }
}

/// Fixed-width summary, one row per report, followed by any counterexamples.
pub fn render_table(reports: &[TheoremReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:<7} {:>9} {:>8} {:>8} {:>9}",
        "statement", "verdict", "instances", "vacuous", "counter", "time(ms)"
    );
    for r in reports {
        let verdict = if r.passed() { "pass" } else { "FAIL" };
        let _ = writeln!(
            out,
            "{:<12} {:<7} {:>9} {:>8} {:>8} {:>9}",
            r.id, verdict, r.instances, r.vacuous, r.counterexample_count, r.wall_ms
        );
    }
    for r in reports.iter().filter(|r| !r.passed()) {
        let _ = writeln!(out, "\n{}: {}", r.id, r.description);
        for c in &r.counterexamples {
            let _ = write!(out, "  ring {}", c.ring);
            if let Some(i) = &c.ideal {
                let _ = write!(out, ", ideal {i}");
            }
            if let Some(x) = &c.element {
                let _ = write!(out, ", element {x}");
            }
            let _ = writeln!(out, ": expected {}, got {}", c.expected, c.actual);
        }
    }
    out
}

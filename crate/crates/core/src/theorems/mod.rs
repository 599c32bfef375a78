//! Executable checkers for the weak nil clean ideal statements, run over a corpus of small rings.

mod catalog;
mod corpus;
mod report;

use std::time::Instant;

use rayon::prelude::*;

pub use catalog::{statement_ids, Statement, CATALOG};
pub use corpus::{build_corpus, build_corpus_with, Corpus, CorpusConfig, CorpusEntry};
pub use report::{render_table, Counterexample, TheoremReport, Verdict, MAX_COUNTEREXAMPLES};

use crate::error::{Error, Result};
use report::Tally;

pub fn find_statement(id: &str) -> Result<&'static Statement> {
    CATALOG
        .iter()
        .find(|s| s.id == id)
        .ok_or_else(|| Error::UnknownStatement(id.to_string()))
}

/// Checks one statement on every corpus ring, in parallel, merging in corpus order.
pub fn run_statement_on(id: &str, corpus: &Corpus) -> Result<TheoremReport> {
    let stmt = find_statement(id)?;
    let start = Instant::now();
    let parts: Vec<Tally> = corpus
        .entries
        .par_iter()
        .map(|entry| {
            (stmt.check)(entry).unwrap_or_else(|err| {
                let mut t = Tally::default();
                t.fail(Counterexample {
                    ring: entry.ring.spec().to_string(),
                    ideal: None,
                    element: None,
                    expected: "checker completes".into(),
                    actual: err.to_string(),
                });
                t
            })
        })
        .collect();
    let mut tally = Tally::default();
    for part in parts {
        tally.merge(part);
    }
    let mut notes: Vec<String> = stmt.notes.iter().map(|s| s.to_string()).collect();
    notes.extend(tally.counters.iter().map(|(label, n)| format!("{label}: {n}")));
    Ok(TheoremReport {
        id: stmt.id.to_string(),
        description: stmt.description.to_string(),
        instances: tally.instances,
        vacuous: tally.vacuous,
        verdict: if tally.counterexample_count == 0 {
            Verdict::Pass
        } else {
            Verdict::Fail
        },
        counterexample_count: tally.counterexample_count,
        counterexamples: tally.counterexamples,
        notes,
        wall_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn run_statement(id: &str, config: &CorpusConfig) -> Result<TheoremReport> {
    find_statement(id)?;
    run_statement_on(id, &build_corpus(config)?)
}

/// Every statement, sorted by id.
pub fn run_all_on(corpus: &Corpus) -> Vec<TheoremReport> {
    let mut reports: Vec<TheoremReport> = CATALOG
        .par_iter()
        .map(|s| run_statement_on(s.id, corpus).expect("catalog ids resolve"))
        .collect();
    reports.sort_by(|a, b| a.id.cmp(&b.id));
    reports
}

pub fn run_all(config: &CorpusConfig) -> Result<Vec<TheoremReport>> {
    Ok(run_all_on(&build_corpus(config)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_corpus_passes_vacuously() {
        let reports = run_all(&CorpusConfig::empty()).unwrap();
        assert_eq!(reports.len(), 21);
        for r in &reports {
            assert!(r.passed(), "{}", r.id);
            assert_eq!((r.instances, r.vacuous), (0, 0));
        }
        let ids: Vec<&str> = reports.iter().map(|r| r.id.as_str()).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(ids, sorted);
    }

    #[test]
    fn unknown_statement() {
        assert!(matches!(
            run_statement("STMT-NOPE", &CorpusConfig::empty()),
            Err(Error::UnknownStatement(_))
        ));
    }

    #[test]
    fn small_residue_corpus_passes() {
        let config = CorpusConfig {
            zn_max: 12,
            ..CorpusConfig::empty()
        };
        for r in run_all(&config).unwrap() {
            assert!(r.passed(), "{} {:?}", r.id, r.counterexamples);
        }
    }
}

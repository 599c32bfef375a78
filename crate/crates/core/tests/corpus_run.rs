use std::time::Instant;

use nilclean::theorems::{run_all, run_statement, CorpusConfig};

#[test]
fn residue_rings_up_to_ten_pass_quickly() {
    let config = CorpusConfig {
        zn_max: 10,
        ..CorpusConfig::empty()
    };
    let start = Instant::now();
    let reports = run_all(&config).unwrap();
    let elapsed = start.elapsed();
    assert_eq!(reports.len(), 21);
    for r in &reports {
        assert!(r.passed(), "{}: {:?}", r.id, r.counterexamples);
    }
    assert!(elapsed.as_secs_f64() < 1.0, "{elapsed:?}");
}

#[test]
fn product_statement_covers_the_negative_instance() {
    let config = CorpusConfig {
        extra: vec!["Z6 x Z6".into()],
        ..CorpusConfig::empty()
    };
    let r = run_statement("STMT-PROD", &config).unwrap();
    assert!(r.passed());
    assert_eq!(r.instances, 16);
    assert!(r.notes.iter().any(|n| n.contains("infinite")));
}

#[test]
fn idealization_lemma_passes() {
    let config = CorpusConfig {
        extra: vec!["Idealization(Z2, Z2)".into()],
        ..CorpusConfig::empty()
    };
    let r = run_statement("STMT-RM", &config).unwrap();
    assert!(r.passed());
    assert_eq!(r.instances, 1);
}

#[test]
fn corpus_file_with_unknown_field_is_rejected() {
    assert!(CorpusConfig::from_json(r#"{"zn_max": 5, "typo": 1}"#).is_err());
    let c = CorpusConfig::from_json(r#"{"zn_max": 5, "product_max": 0, "triangular_max": 0, "idealization_max": 0, "morita_moduli": []}"#).unwrap();
    assert_eq!(c.specs().len(), 5);
}

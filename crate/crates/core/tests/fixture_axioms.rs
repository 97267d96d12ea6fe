//! Full axiom runs on the shipped fixtures.

use std::time::Instant;

use rtcat::addcat::SearchConfig;
use rtcat::catalog::{a2_costable, nakayama_stable};
use rtcat::report::Status;
use rtcat::rtstruct::{check_axioms, check_derotation, AxiomLevel};

#[test]
fn nakayama_4_2_full_suite() {
    let (cat, tri) = nakayama_stable(4, 2).unwrap();
    let start = Instant::now();
    let report = check_axioms(&cat, &tri, &AxiomLevel::all(), &SearchConfig::default());
    let elapsed = start.elapsed();
    eprintln!("nakayama(4,2) axiom suite in {elapsed:?}");
    eprintln!("{}", report.render_text());
    assert_eq!(report.status(), Status::Pass, "{}", report.render_text());
}

#[test]
fn a2_derotation_fails_and_shift_unfaithful() {
    let (cat, tri) = a2_costable(2).unwrap();
    let rep = check_derotation(&cat, &tri, &SearchConfig::default());
    assert!(!rep.violations.is_empty(), "{}", rep.notes.join("; "));
    assert!(rep.notes.iter().any(|n| n.contains("not faithful")));
}

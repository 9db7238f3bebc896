use std::path::PathBuf;

use super::*;
use crate::corpus::bootstrap;
use crate::testkit::s4_system;

fn corpus() -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    bootstrap(dir.path()).unwrap();
    let p = dir.path().to_path_buf();
    (dir, p)
}

fn only(entry: &str, theorem: &str) -> Options {
    Options {
        theorem: Some(theorem.into()),
        entry: Some(entry.into()),
        ..Options::default()
    }
}

#[test]
fn empty_corpus_gives_empty_report() {
    let dir = tempfile::tempdir().unwrap();
    let r = run_verification(dir.path(), &Options::default()).unwrap();
    assert_eq!(serde_json::to_string(&r).unwrap(), r#"{"version":1,"theorems":[]}"#);
    assert_eq!(r.to_text(), "");
}

#[test]
fn unknown_theorem_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let opts = Options {
        theorem: Some("theorem-Z".into()),
        ..Options::default()
    };
    assert!(matches!(run_verification(dir.path(), &opts), Err(Error::Validation(_))));
}

#[test]
fn theorem_d_on_s4() {
    let f = s4_system();
    let orders: Vec<usize> = strongly_closed_subgroups(&f).iter().map(Subgroup::order).collect();
    assert_eq!(orders, [1, 4, 8]);
    let (_d, path) = corpus();
    let r = run_verification(&path, &only("S4", "theorem-D")).unwrap();
    let t = r.theorem("theorem-D").unwrap();
    // pairs from {1, V4, D8} at 2 and {1, C3} at 3
    assert_eq!((t.instances, t.passes), (9, 9));
}

#[test]
fn tampered_expectation_fails_with_replayable_witness() {
    let (_d, path) = corpus();
    let file = path.join("entries/S4.json");
    let mut entry: crate::corpus::CorpusEntry =
        serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    let x = entry
        .expected
        .iter_mut()
        .find(|x| x.system == "S4@2" && x.key == "o_p_order")
        .unwrap();
    x.value = json!(8);
    std::fs::write(&file, serde_json::to_string_pretty(&entry).unwrap()).unwrap();
    let r = run_verification(&path, &only("S4", "expected-values")).unwrap();
    assert_eq!(r.failure_count(), 1);
    let fail = &r.theorem("expected-values").unwrap().failures[0];
    assert_eq!((fail.system.as_str(), fail.instance.as_str()), ("S4@2", "o_p_order"));
    assert_eq!(fail.witness["expected"], json!(8));
    assert_eq!(fail.witness["actual"], json!(4));
    assert!(fail.replay.contains("--theorem expected-values --entry S4"));
    let back: VerificationReport = serde_json::from_str(&r.to_json()).unwrap();
    assert_eq!(back, r);
    assert!(r.to_text().contains("FAIL"));
}

#[test]
fn parallel_and_sequential_reports_agree() {
    let (_d, path) = corpus();
    let mut opts = Options {
        entry: Some("D8xC2".into()),
        ..Options::default()
    };
    let par = run_verification(&path, &opts).unwrap();
    opts.sequential = true;
    let seq = run_verification(&path, &opts).unwrap();
    assert_eq!(par.to_json(), seq.to_json());
    assert_eq!(par.failure_count(), 0);
    assert_eq!(par.theorems.len(), SUITES.len());
}

#[test]
fn suite_ids_are_sorted_and_unique() {
    let ids: Vec<&str> = suite_ids().collect();
    let mut sorted = ids.clone();
    sorted.sort();
    sorted.dedup();
    assert_eq!(ids, sorted);
}

use std::path::PathBuf;

use fuskit_core::closure::{alperin_generators, o_p};
use fuskit_core::corpus::{load_corpus, Source};
use fuskit_core::io;
use fuskit_core::solubility::o_p_tower;

fn shipped() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn shipped_corpus_is_complete() {
    let entries = load_corpus(&shipped(), 100_000).unwrap();
    let names: Vec<&str> = entries.iter().map(|e| e.entry.name.as_str()).collect();
    for want in [
        "C2", "C3", "D8", "Q8", "C4xC2", "E16", "D8xC2", "S4", "A4", "SL2_3", "A6", "Qd2", "Qd3", "S3",
    ] {
        assert!(names.contains(&want), "missing {want}");
    }
    let saturated = entries
        .iter()
        .flat_map(|e| &e.systems)
        .filter(|s| s.system.is_saturated())
        .count();
    assert!(saturated >= 12, "{saturated}");
    let d8c2 = entries.iter().find(|e| e.entry.name == "D8xC2").unwrap();
    assert_eq!(d8c2.named("Q").unwrap().order(), 8);
    assert_eq!(d8c2.named("R").unwrap().order(), 8);
    let sl = entries.iter().find(|e| e.entry.name == "SL2_3").unwrap();
    assert_eq!(sl.group.degree(), 8);
    let a6 = entries.iter().find(|e| e.entry.name == "A6").unwrap();
    assert_eq!(a6.group.degree(), 6);
}

#[test]
fn every_expected_value_has_a_provenance() {
    let raw = std::fs::read_dir(shipped().join("entries")).unwrap();
    let mut seen = [false, false];
    for f in raw {
        let text = std::fs::read_to_string(f.unwrap().path()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        for x in v["expected"].as_array().into_iter().flatten() {
            let p = x["provenance"].as_str().unwrap();
            assert!(p == "paper" || p == "derived-oracle", "{p}");
            seen[(p == "paper") as usize] = true;
        }
    }
    assert_eq!(seen, [true, true]);
    let entries = load_corpus(&shipped(), 100_000).unwrap();
    assert!(entries
        .iter()
        .flat_map(|e| &e.entry.expected)
        .any(|x| x.provenance == Source::DerivedOracle));
}

#[test]
fn shipped_files_round_trip() {
    let entries = load_corpus(&shipped(), 100_000).unwrap();
    for e in &entries {
        let text = std::fs::read_to_string(e.path.parent().unwrap().join(&e.entry.group)).unwrap();
        let g = io::parse_group_str(&text, "g", 100_000).unwrap();
        assert_eq!(io::group_to_json(&g), text, "{}", e.entry.name);
        for s in &e.systems {
            let json = io::system_to_json(&s.system);
            let back = io::parse_system_str(&json, &s.id, 100_000).unwrap();
            assert_eq!(io::system_to_json(&back), json);
        }
    }
}

#[test]
fn s4_at_two() {
    let entries = load_corpus(&shipped(), 100_000).unwrap();
    let s4 = entries.iter().find(|e| e.entry.name == "S4").unwrap();
    let f = &s4.system("S4@2").unwrap().system;
    let r = o_p_tower(f).unwrap();
    assert_eq!(r.tower.iter().map(|t| t.order()).collect::<Vec<_>>(), [1, 4, 8]);
    assert_eq!(r.p_length, Some(2));
    assert!(r.constrained);
    assert_eq!(o_p(f).unwrap(), r.tower[1]);
    let gens: Vec<usize> = alperin_generators(f).unwrap().iter().map(|(s, _)| s.order()).collect();
    assert_eq!(gens, [4, 8]);

    let a6 = entries.iter().find(|e| e.entry.name == "A6").unwrap();
    let r = o_p_tower(&a6.system("A6@2").unwrap().system).unwrap();
    assert!(!r.p_soluble && !r.constrained);
}

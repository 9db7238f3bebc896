use std::path::PathBuf;
use std::sync::Arc;

use fuskit_core::catalog;
use fuskit_core::closure::is_strongly_closed;
use fuskit_core::io::{self, FusionSpec, GroupFile, GroupRef, Mode};
use fuskit_core::quotients::{bar_system, factor_system, prefusion_is_fusion, Witness};
use fuskit_core::{Error, FusionSystem};

fn shipped(rel: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(rel)
}

#[test]
fn d8_file_parses_to_order_eight() {
    let g = io::load_group(&shipped("groups/D8.json"), 1000).unwrap();
    assert_eq!(g.order(), 8);
}

#[test]
fn duplicate_image_is_a_parse_error() {
    let text = r#"{"name": "bad", "degree": 4, "generators": [[1, 1, 2, 3]]}"#;
    assert!(matches!(io::parse_group_str(text, "bad.json", 1000), Err(Error::Parse { .. })));
}

#[test]
fn seeded_order_sixteen_system() {
    let f = io::load_fusion_spec(&shipped("systems/E16-seeded.json"), 1000).unwrap();
    let g = f.group();
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| g.index_of(&catalog::e16().generators()[i]).unwrap());
    let qa = g.generate(&[a]);
    assert!(is_strongly_closed(&f, &qa));
    let bar = bar_system(&f, &qa).unwrap();
    let (ok, w) = prefusion_is_fusion(&bar.system);
    assert!(!ok);
    let Some(Witness::MissingComposite { first, second }) = w else { panic!("{w:?}") };
    let coset = |x| bar.projection.image(&g.generate(&[a, x]));
    let n = bar.projection.group.order();
    assert_eq!((first.domain.clone(), first.image(n)), (coset(b), coset(c)));
    assert_eq!((second.domain.clone(), second.image(n)), (coset(c), coset(d)));
    let fq = factor_system(&f, &qa).unwrap();
    let inner = FusionSystem::inner(fq.projection.group.clone(), fq.system.carrier().clone(), 2).unwrap();
    assert!(fq.system.equals(&inner).unwrap());
}

#[test]
fn d8_x_c2_intersection_cannot_be_saturated() {
    let g = Arc::new(catalog::d8_x_c2());
    let [x, y, z] = [0, 1, 2].map(|i| g.index_of(&g.generators()[i]).unwrap());
    let q = g.generate(&[x, y]);
    let r = g.generate(&[g.mul(x, z), y]);
    let e = FusionSystem::inner(g.clone(), q, 2)
        .unwrap()
        .intersect(&FusionSystem::inner(g.clone(), r, 2).unwrap())
        .unwrap();
    let auts = e.aut(e.carrier());
    assert_eq!(auts.len(), 2);
    let x2y = g.mul(g.mul(x, x), y);
    assert!(auts.iter().any(|h| h.apply(y) == x2y));
    assert!(!e.is_saturated());
}

#[test]
fn generated_spec_with_inline_group_and_ambient() {
    let spec = FusionSpec {
        group: GroupRef::Inline(GroupFile::from_group(&catalog::d8())),
        p: 2,
        mode: Mode::Generated,
        ambient: Some(GroupRef::Path("groups/S4.json".into())),
        seed_morphisms: vec![],
    };
    let f = spec.build(&shipped(""), 1000).unwrap();
    assert_eq!((f.group().order(), f.carrier().order()), (24, 8));
    assert!(f.is_saturated());
}

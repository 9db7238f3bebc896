use super::*;
use crate::catalog;
use crate::closure::{center_of_fusion, is_centric};
use crate::subsystems::is_normal_by_definition;
use crate::testkit::*;

/// Soluble groups are p-soluble for every p.
fn is_soluble(g: &Group) -> bool {
    let mut h = g.whole();
    loop {
        let d = g.commutator(&h, &h);
        if d.is_trivial() {
            return true;
        }
        if d == h {
            return false;
        }
        h = d;
    }
}

fn constrained_by_definition(f: &FusionSystem) -> bool {
    f.subgroups()
        .iter()
        .any(|q| is_normal_by_definition(f, q) && is_centric(f, f.idx(q)))
}

fn systems() -> Vec<(Group, FusionSystem)> {
    let mut out = Vec::new();
    for (g, p) in [
        (catalog::s4(), 2),
        (catalog::s4(), 3),
        (catalog::a4(), 2),
        (catalog::sl2_3(), 2),
        (catalog::symmetric_3(), 3),
        (catalog::d8(), 2),
        (catalog::a6(), 2),
        (catalog::a6(), 3),
        (qd_group(3).unwrap(), 3),
        (qd_group(3).unwrap(), 2),
    ] {
        let f = FusionSystem::from_group(&g, p).unwrap();
        out.push((g, f));
    }
    out
}

#[test]
fn tower_examples() {
    let f = s4_system();
    let r = o_p_tower(&f).unwrap();
    let orders: Vec<usize> = r.tower.iter().map(|s| s.order()).collect();
    assert_eq!(orders, vec![1, 4, 8]);
    assert_eq!(r.tower[1], v4(f.group()));
    assert!(r.p_soluble && r.constrained);
    assert_eq!(r.p_length, Some(2));

    let d8 = inner_of(catalog::d8(), 2);
    let r = o_p_tower(&d8).unwrap();
    assert_eq!(r.tower, vec![d8.group().trivial(), d8.carrier().clone()]);
    assert_eq!(r.p_length, Some(1));

    let r = o_p_tower(&a6_system()).unwrap();
    assert_eq!(r.tower.len(), 1);
    assert!(!r.p_soluble && !r.constrained);
    assert_eq!(r.p_length, None);

    assert!(matches!(o_p_tower(&e16_example()), Err(Error::NotSaturated)));
}

#[test]
fn constrained_matches_definition() {
    for (_, f) in systems() {
        assert_eq!(is_constrained(&f).unwrap(), constrained_by_definition(&f));
    }
}

#[test]
fn p_soluble_systems_are_constrained() {
    for (_, f) in systems() {
        let r = o_p_tower(&f).unwrap();
        if r.p_soluble {
            assert!(r.constrained);
        }
    }
}

#[test]
fn group_p_solubility() {
    for g in [catalog::s4(), catalog::a4(), catalog::sl2_3(), catalog::d8(), catalog::symmetric_3(), qd_group(3).unwrap()] {
        assert!(is_soluble(&g));
        for p in [2, 3, 5] {
            assert!(group_is_p_soluble(&g, p).unwrap());
        }
    }
    let a6 = catalog::a6();
    assert!(!is_soluble(&a6));
    for p in [2, 3, 5] {
        assert!(!group_is_p_soluble(&a6, p).unwrap());
    }
    assert!(group_is_p_soluble(&a6, 7).unwrap());
}

#[test]
fn qd_groups() {
    let q2 = qd_group(2).unwrap();
    assert_eq!(q2.order(), 24);
    assert!(isomorphism_search(&q2, &catalog::s4()).unwrap().is_some());
    let q3 = qd_group(3).unwrap();
    assert_eq!(q3.order(), 216);
    let mut orbit = vec![false; 9];
    for x in 0..q3.order() {
        orbit[q3.element(x).apply(0)] = true;
    }
    assert!(orbit.iter().all(|&b| b));
    assert!(qd_group(4).is_err());
}

#[test]
fn qd_freeness() {
    assert!(!is_qdp_free_group(&catalog::s4(), 2).unwrap());
    assert!(is_qdp_free_group(&catalog::d8(), 2).unwrap());
    assert!(is_qdp_free_group(&catalog::sl2_3(), 2).unwrap());
    assert!(!is_qdp_free_group(&catalog::s4_x_c3(), 2).unwrap());
    assert!(is_qdp_free_group(&catalog::a4(), 2).unwrap());
}

#[test]
fn thompson_examples() {
    assert!(thompson_factorization_holds(&inner_of(catalog::d8(), 2)).unwrap());
    assert!(!thompson_factorization_holds(&s4_system()).unwrap());
    let s3 = FusionSystem::from_group(&catalog::symmetric_3(), 3).unwrap();
    assert!(thompson_factorization_holds(&s3).unwrap());
}

#[test]
fn model_examples() {
    let f = s4_system();
    assert!(is_model(&catalog::s4(), &f).unwrap());
    assert!(!is_model(&catalog::s4_x_c3(), &f).unwrap());
    assert!(is_model(&catalog::d8(), &inner_of(catalog::d8(), 2)).unwrap());
    assert!(matches!(is_model(&catalog::a4(), &f), Err(Error::SylowMismatch)));
    // D8 carries the inner system, which S4 does not realize
    assert!(!is_model(&catalog::s4(), &inner_of(catalog::d8(), 2)).unwrap());
}

#[test]
fn models_and_aut_criterion() {
    for (g, f) in systems() {
        if !is_constrained(&f).unwrap() {
            continue;
        }
        let whole = g.whole();
        let op = g.core_p(&whole, f.p());
        if !g.core_pprime(&whole, f.p()).is_trivial() || !g.centralizer(&whole, &op).is_subgroup_of(&op) {
            assert!(!is_model(&g, &f).unwrap());
            continue;
        }
        assert!(is_model(&g, &f).unwrap(), "{}", g.name());
        assert_eq!(group_is_p_soluble(&g, f.p()).unwrap(), aut_of_o_p_is_p_soluble(&f).unwrap());
    }
}

#[test]
fn o_p_mod_centre() {
    for (_, f) in systems() {
        let z = center_of_fusion(&f).unwrap();
        let fz = factor_system(&f, &z).unwrap();
        let lifted = fz.projection.preimage(&o_p(&fz.system).unwrap());
        assert_eq!(lifted, o_p(&f).unwrap());
    }
}

#[test]
fn group_centralizer_of_o_p() {
    for (g, f) in systems() {
        let whole = g.whole();
        if group_is_p_soluble(&g, f.p()).unwrap() && g.core_pprime(&whole, f.p()).is_trivial() {
            let op = g.core_p(&whole, f.p());
            assert!(g.centralizer(&whole, &op).is_subgroup_of(&op));
        }
    }
}

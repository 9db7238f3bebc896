use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::catalog;
use crate::hom::{automorphisms, hom_build};

/// Every composite, inverse and restriction of stored isos is stored, and
/// every conjugation is present.
pub(crate) fn assert_closed(f: &FusionSystem) {
    let g = f.group().clone();
    for (q, r, phi) in f.all_isos() {
        let inv = invert(phi);
        assert!(f.contains_map(r, q, &inv), "inverse missing");
        for &m in f.lattice().maximal(q) {
            let res = restrict(phi, f.lattice().get(m));
            let c = f.codomain_of(m, &res);
            assert!(f.contains_map(m, c, &res), "restriction missing");
        }
        for (s, maps) in f.isos_from(r) {
            for psi in maps {
                assert!(f.contains_map(q, *s, &compose(phi, psi)), "composite missing");
            }
        }
    }
    for (qi, q) in f.subgroups().iter().enumerate() {
        for x in f.carrier().members() {
            let m = conjugation_map(&g, q, x);
            let c = f.codomain_of(qi, &m);
            assert!(f.contains_map(qi, c, &m));
        }
    }
}

fn s4_system() -> FusionSystem {
    FusionSystem::from_group(&catalog::s4(), 2).unwrap()
}

/// The normal Klein four of S4 inside the Sylow: identity plus the
/// fixed-point-free involutions.
fn v4(f: &FusionSystem) -> Subgroup {
    let g = f.group();
    g.subgroup_from_ids(
        (0..g.order()).filter(|&x| x == 0 || g.element(x).images().iter().enumerate().all(|(i, &j)| i != j) && g.element_order(x) == 2),
    )
    .unwrap()
}

fn element(g: &Group, images: &[usize]) -> ElementId {
    g.index_of(&crate::Perm::new(images.to_vec()).unwrap()).unwrap()
}

#[test]
fn s4_aut_of_v4_has_order_six() {
    let f = s4_system();
    let v = v4(&f);
    assert_eq!(v.order(), 4);
    // oracle: |N_G(V4) / C_G(V4)| in S4 itself
    let s4 = catalog::s4();
    let big = s4.core_p(&s4.whole(), 2);
    let expected = s4.normalizer(&s4.whole(), &big).order() / s4.centralizer(&s4.whole(), &big).order();
    assert_eq!(f.aut(&v).len(), expected);
    assert_eq!(expected, 6);
}

#[test]
fn s4_double_transposition_fuses_three_ways() {
    let f = s4_system();
    let g = f.group();
    let t = element(g, &[2, 3, 0, 1]);
    let q = g.generate(&[t]);
    let homs = f.hom_set(&q, &v4(&f));
    assert_eq!(homs.len(), 3);
    let images: BTreeSet<ElementId> = homs.iter().map(|h| h.apply(t)).collect();
    assert_eq!(images.len(), 3);
}

#[test]
fn group_systems_are_saturated_and_closed() {
    for (g, p) in [
        (catalog::s4(), 2),
        (catalog::s4(), 3),
        (catalog::a4(), 2),
        (catalog::d8(), 2),
        (catalog::q8(), 2),
        (catalog::symmetric_3(), 3),
        (catalog::sl2_3(), 2),
        (catalog::a6(), 2),
    ] {
        let f = FusionSystem::from_group(&g, p).unwrap();
        assert!(f.is_saturated(), "{} at {p}", g.name());
        assert_closed(&f);
    }
}

#[test]
fn abelian_inner_system_only_has_inclusions() {
    let g = Arc::new(catalog::c4_x_c2());
    let f = FusionSystem::inner(g.clone(), g.whole(), 2).unwrap();
    for q in f.subgroups() {
        for r in f.subgroups() {
            let homs = f.hom_set(q, r);
            if q.is_subgroup_of(r) {
                assert_eq!(homs.len(), 1);
                assert!(homs[0].is_identity());
            } else {
                assert!(homs.is_empty());
            }
        }
    }
}

#[test]
fn empty_seed_gives_inner_system() {
    let p = catalog::d8();
    let from_group = FusionSystem::from_group(&p, 2).unwrap();
    let gen = FusionSystem::generated(from_group.group().clone(), from_group.carrier().clone(), 2, &[]).unwrap();
    assert!(gen.equals(&from_group).unwrap());
}

#[test]
fn regenerating_a_closed_system_is_idempotent() {
    let f = s4_system();
    let seeds: Vec<GroupHom> = f.all_isos().map(|(q, r, m)| f.to_hom(q, r, m)).collect();
    let g = FusionSystem::generated(f.group().clone(), f.carrier().clone(), 2, &seeds).unwrap();
    assert!(g.equals(&f).unwrap());
}

#[test]
fn s4_and_d8_systems_differ() {
    let f = s4_system();
    let inner = FusionSystem::inner(f.group().clone(), f.carrier().clone(), 2).unwrap();
    assert!(!f.equals(&inner).unwrap());
    assert_eq!(inner.aut(&v4(&f)).len(), 2);
}

fn e16_example() -> FusionSystem {
    let g = Arc::new(catalog::e16());
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| g.index_of(&g.generators()[i]).unwrap());
    let ab = g.mul(a, b);
    let ac = g.mul(a, c);
    let seed = |x, y| hom_build(&g, &g.generate(&[x]), &g, &g.whole(), &[(x, y)]).unwrap();
    FusionSystem::generated(g.clone(), g.whole(), 2, &[seed(ab, c), seed(ac, d)]).unwrap()
}

#[test]
fn e16_example_iso_classes() {
    let f = e16_example();
    assert_closed(&f);
    let g = f.group();
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| g.index_of(&g.generators()[i]).unwrap());
    let cyc = |x| f.index_of(&g.generate(&[x])).unwrap();
    let mut nontrivial: Vec<Vec<usize>> = (0..f.lattice().len())
        .filter(|&i| f.lattice().get(i).order() == 2)
        .map(|i| f.iso_class(i))
        .filter(|c| c.len() > 1)
        .collect();
    nontrivial.sort();
    nontrivial.dedup();
    let mut expected = vec![
        {
            let mut v = vec![cyc(g.mul(a, b)), cyc(c)];
            v.sort();
            v
        },
        {
            let mut v = vec![cyc(g.mul(a, c)), cyc(d)];
            v.sort();
            v
        },
    ];
    expected.sort();
    assert_eq!(nontrivial, expected);
    assert_eq!(f.aut(f.carrier()).len(), 1);
}

/// `D8 × C2` with `x, y, z` the catalog generators.
fn d8c2_parts() -> (Arc<Group>, Subgroup, Subgroup, ElementId, ElementId, ElementId) {
    let g = Arc::new(catalog::d8_x_c2());
    let [x, y, z] = [0, 1, 2].map(|i| g.index_of(&g.generators()[i]).unwrap());
    let q = g.generate(&[x, y]);
    let r = g.generate(&[g.mul(x, z), y]);
    (g, q, r, x, y, z)
}

#[test]
fn d8c2_intersection_is_not_saturated() {
    let (g, q, r, x, y, _) = d8c2_parts();
    let fq = FusionSystem::inner(g.clone(), q.clone(), 2).unwrap();
    let fr = FusionSystem::inner(g.clone(), r.clone(), 2).unwrap();
    let e = fq.intersect(&fr).unwrap();
    let s = q.intersect(&r);
    assert_eq!(e.carrier(), &s);
    assert_eq!(s.order(), 4);
    assert!(g.is_normal(&s, &g.whole()));
    let auts = e.aut(&s);
    assert_eq!(auts.len(), 2);
    let x2y = g.mul(g.mul(x, x), y);
    assert!(auts.iter().any(|h| h.apply(y) == x2y && h.apply(x2y) == y));
    assert!(!e.is_saturated());
    assert!(matches!(
        e.saturation_failure(),
        Some(SaturationFailure::SylowAxiom { aut_order: 2, inner_order: 1 })
    ));
}

#[test]
fn intersect_requires_same_ambient() {
    let a = FusionSystem::from_group(&catalog::d8(), 2).unwrap();
    let b = FusionSystem::from_group(&catalog::q8(), 2).unwrap();
    assert!(matches!(a.intersect(&b), Err(Error::DifferentCarrier)));
    assert!(matches!(a.equals(&b), Err(Error::DifferentCarrier)));
    let i = FusionSystem::inner(a.group().clone(), a.carrier().clone(), 2).unwrap();
    assert!(a.intersect(&a).unwrap().equals(&a).unwrap());
    assert!(i.intersect(&a).unwrap().equals(&i).unwrap());
}

#[test]
fn n_phi_examples() {
    let f = s4_system();
    let g = f.group().clone();
    let p = f.carrier().clone();
    for q in f.subgroups() {
        let id = GroupHom::identity(&g, q);
        assert_eq!(f.n_phi(&id).unwrap(), g.normalizer(&p, q));
    }
    // a non-central involution outside V4 and its P-conjugate
    let v = v4(&f);
    let t = (1..g.order())
        .find(|&t| g.element_order(t) == 2 && !v.contains(t))
        .unwrap();
    let q = g.generate(&[t]);
    let other = (0..g.order()).map(|h| g.conj(t, h)).find(|&u| u != t).unwrap();
    let r = g.generate(&[other]);
    let phi = f.hom_set(&q, &r).pop().unwrap();
    let n = f.n_phi(&phi).unwrap();
    assert_eq!(n.order(), 4);
    assert_eq!(n, g.normalizer(&p, &q));
}

#[test]
fn n_phi_rejects_foreign_morphisms() {
    let f = e16_example();
    let g = f.group().clone();
    let [a, b, ..] = [0, 1, 2, 3].map(|i| g.index_of(&g.generators()[i]).unwrap());
    let q = g.generate(&[a]);
    let h = hom_build(&g, &q, &g, &g.whole(), &[(a, b)]).unwrap();
    assert!(matches!(f.n_phi(&h), Err(Error::MorphismNotInSystem)));
}

#[test]
fn n_phi_contains_q_times_centralizer() {
    for f in [s4_system(), FusionSystem::from_group(&catalog::a6(), 2).unwrap()] {
        let g = f.group().clone();
        for (q, r, m) in f.all_isos() {
            let phi = f.to_hom(q, r, m);
            let n = f.n_phi(&phi).unwrap();
            let qs = f.lattice().get(q);
            let qc = g.join(qs, &g.centralizer(f.carrier(), qs));
            assert!(qc.is_subgroup_of(&n));
            assert!(n.is_subgroup_of(&g.normalizer(f.carrier(), qs)));
        }
    }
}

#[test]
fn fully_normalized_examples() {
    let f = s4_system();
    assert!(f.is_fully_normalized(f.carrier()));
    assert!(f.is_fully_normalized(&v4(&f)));
    assert_eq!(f.iso_class(f.index_of(&v4(&f)).unwrap()).len(), 1);
}

#[test]
fn transport_along_automorphisms() {
    let f = s4_system();
    let g = f.group().clone();
    for x in f.carrier().members() {
        let theta = crate::hom::conjugation_hom(&g, x, f.carrier(), f.carrier()).unwrap();
        assert!(f.transport(&theta, g.clone()).unwrap().equals(&f).unwrap());
    }
    for auto in automorphisms(&g).unwrap() {
        let theta = GroupHom { domain: g.whole(), codomain: g.whole(), map: auto };
        let t = f.transport(&theta, g.clone()).unwrap();
        assert_eq!(t.is_saturated(), f.is_saturated());
        let back = t.transport(&theta.inverse(), g.clone()).unwrap();
        assert!(back.equals(&f).unwrap());
    }
}

#[test]
fn transport_rejects_non_isomorphisms() {
    let f = s4_system();
    let g = f.group().clone();
    let theta = GroupHom { domain: g.whole(), codomain: g.whole(), map: vec![0; g.order()] };
    assert!(matches!(f.transport(&theta, g.clone()), Err(Error::NotAnIsomorphism)));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    /// Random seed sets on D8 × C2 close to genuine fusion systems.
    #[test]
    fn generated_systems_are_closed(picks in proptest::collection::vec((0usize..64, 0usize..64), 0..3)) {
        let g = Arc::new(catalog::d8_x_c2());
        let subs = g.subgroups().unwrap().to_vec();
        let mut seeds = Vec::new();
        for (a, b) in picks {
            let q = &subs[a % subs.len()];
            let same: Vec<&Subgroup> = subs.iter().filter(|s| s.order() == q.order()).collect();
            let r = same[b % same.len()];
            if let Some(Some(iso)) = crate::hom::isomorphisms(&sub_as_group(&g, q), &sub_as_group(&g, r)).ok().map(|v| v.into_iter().next()) {
                let qs = sub_as_group(&g, q);
                let rs = sub_as_group(&g, r);
                let mut map = vec![NONE; g.order()];
                for x in 0..qs.order() {
                    map[g.index_of(qs.element(x)).unwrap()] = g.index_of(rs.element(iso[x])).unwrap();
                }
                seeds.push(GroupHom { domain: q.clone(), codomain: r.clone(), map });
            }
        }
        let f = FusionSystem::generated(g.clone(), g.whole(), 2, &seeds).unwrap();
        assert_closed(&f);
        for s in &seeds {
            prop_assert!(f.contains_hom(s));
        }
    }
}

fn sub_as_group(g: &Group, q: &Subgroup) -> Group {
    let gens = g.generating_set(q).into_iter().map(|x| g.element(x).clone()).collect();
    Group::from_generators("sub", g.degree(), gens).unwrap()
}

//! Shared fixtures for unit tests.

use std::sync::Arc;

use crate::catalog;
use crate::fusion::FusionSystem;
use crate::group::{Group, Subgroup};
use crate::hom::hom_build;

pub fn s4_system() -> FusionSystem {
    FusionSystem::from_group(&catalog::s4(), 2).unwrap()
}

pub fn a6_system() -> FusionSystem {
    FusionSystem::from_group(&catalog::a6(), 2).unwrap()
}

/// Identity plus the fixed-point-free involutions: the normal Klein four
/// of S4 when `g` is a Sylow 2-subgroup of S4.
pub fn v4(g: &Group) -> Subgroup {
    g.subgroup_from_ids((0..g.order()).filter(|&x| {
        x == 0
            || g.element_order(x) == 2
                && g.element(x).images().iter().enumerate().all(|(i, &j)| i != j)
    }))
    .unwrap()
}

/// The Klein four subgroups of `g`'s carrier other than `v`.
pub fn other_klein_fours(g: &Group, v: &Subgroup) -> Vec<Subgroup> {
    g.subgroups()
        .unwrap()
        .iter()
        .filter(|s| s.order() == 4 && s != &v && (0..g.order()).filter(|&x| s.contains(x)).all(|x| g.element_order(x) <= 2))
        .cloned()
        .collect()
}


/// Elementary abelian `⟨a, b, c, d⟩` with the two seeds `ab ↦ c` and
/// `ac ↦ d`.
pub fn e16_example() -> FusionSystem {
    let g = Arc::new(catalog::e16());
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| g.generator_ids()[i]);
    let ab = g.mul(a, b);
    let ac = g.mul(a, c);
    let seed = |x, y| hom_build(&g, &g.generate(&[x]), &g, &g.whole(), &[(x, y)]).unwrap();
    FusionSystem::generated(g.clone(), g.whole(), 2, &[seed(ab, c), seed(ac, d)]).unwrap()
}

pub fn inner_of(g: impl Into<Arc<Group>>, p: u32) -> FusionSystem {
    let g: Arc<Group> = g.into();
    FusionSystem::inner(g.clone(), g.whole(), p).unwrap()
}

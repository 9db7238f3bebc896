//! Worklist closure of isomorphism tables.

use std::collections::BTreeSet;

use super::{compose, conjugation_map, invert, restrict, Map, PreFusionSystem};

/// Inserts `θ_g` restricted to every subgroup, for every `g` in the carrier.
/// The result is already closed.
pub(super) fn add_conjugations(pre: &mut PreFusionSystem) {
    let group = pre.group.clone();
    let elems: Vec<_> = pre.carrier.members().collect();
    for qi in 0..pre.lattice.len() {
        let q = pre.lattice.get(qi).clone();
        for &g in &elems {
            pre.insert(qi, conjugation_map(&group, &q, g));
        }
    }
}

/// Closes `pre` under inverses, restriction to subgroups and composition,
/// starting from the current contents plus `seeds`.
///
/// Every newly inserted isomorphism pushes its inverse, its restrictions to
/// maximal subgroups of its domain, and its composites with every stored
/// isomorphism on either side. Composites of two stored maps are therefore
/// pushed when the later of the two is inserted.
pub(super) fn close(pre: &mut PreFusionSystem, seeds: Vec<(usize, Map)>) {
    // into[r] = domains with at least one stored isomorphism onto r
    let mut into: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); pre.lattice.len()];
    for (q, r, _) in pre.all_isos() {
        into[r].insert(q);
    }
    let mut work: Vec<(usize, Map)> = seeds;
    work.reverse();
    while let Some((q, map)) = work.pop() {
        let r = pre.codomain_of(q, &map);
        if pre.contains_map(q, r, &map) {
            continue;
        }
        pre.table[q].entry(r).or_default().insert(map.clone());
        into[r].insert(q);

        let mut push = |d: usize, m: Map, pre: &PreFusionSystem| {
            let c = pre.codomain_of(d, &m);
            if !pre.contains_map(d, c, &m) {
                work.push((d, m));
            }
        };
        push(r, invert(&map), pre);
        for &m in pre.lattice.maximal(q) {
            push(m, restrict(&map, pre.lattice.get(m)), pre);
        }
        let after: Vec<Map> = pre.table[r]
            .values()
            .flatten()
            .map(|psi| compose(&map, psi))
            .collect();
        for m in after {
            push(q, m, pre);
        }
        let before: Vec<(usize, Map)> = into[q]
            .iter()
            .flat_map(|&d| {
                pre.table[d]
                    .get(&q)
                    .into_iter()
                    .flatten()
                    .map(move |psi| (d, psi))
            })
            .map(|(d, psi)| (d, compose(psi, &map)))
            .collect();
        for (d, m) in before {
            push(d, m, pre);
        }
    }
}

//! Classification of subgroups inside a fusion system: centric, radical,
//! weakly and strongly closed, normal; `O_p(F)`, `Z(F)`, closed central
//! series and Alperin generation.

use std::collections::{HashMap, VecDeque};

use log::warn;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, Map};
use crate::group::{Group, Subgroup, NONE};
use crate::hom::GroupHom;
use crate::perm::Perm;
use crate::subsystems;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClassification {
    pub subgroup: Subgroup,
    pub fully_normalized: bool,
    pub centric: bool,
    pub radical: bool,
    pub weakly_closed: bool,
    pub strongly_closed: bool,
    pub normal_in_f: bool,
}

pub fn classify(f: &FusionSystem, q: &Subgroup) -> SubgroupClassification {
    let qi = f.index_of(q).expect("subgroup of the carrier");
    SubgroupClassification {
        subgroup: q.clone(),
        fully_normalized: f.is_fully_normalized(q),
        centric: is_centric(f, qi),
        radical: is_radical(f, qi),
        weakly_closed: is_weakly_closed(f, q),
        strongly_closed: is_strongly_closed(f, q),
        normal_in_f: is_normal_subgroup(f, q),
    }
}

/// Every `F`-conjugate of the `i`-th subgroup contains its `P`-centralizer.
pub fn is_centric(f: &FusionSystem, i: usize) -> bool {
    let g = f.group();
    f.iso_class(i).into_iter().all(|j| {
        let r = f.lattice().get(j);
        g.centralizer(f.carrier(), r).is_subgroup_of(r)
    })
}

/// `Aut_F(Q)` realized as a permutation group on the members of `Q`.
pub struct AutGroup {
    pub group: Group,
    /// `maps[k]` is the automorphism behind element `k` of `group`.
    pub maps: Vec<Map>,
    /// `Inn(Q)` inside `group`.
    pub inner: Subgroup,
}

pub fn aut_group(f: &FusionSystem, i: usize) -> AutGroup {
    let g = f.group();
    let q = f.lattice().get(i);
    let members = q.member_vec();
    let mut pos = vec![NONE; g.order()];
    for (k, &x) in members.iter().enumerate() {
        pos[x] = k;
    }
    let to_perm = |m: &Map| Perm::new_unchecked(members.iter().map(|&x| pos[m[x]]).collect());
    let gens: Vec<Perm> = f.iso_maps(i, i).map(to_perm).collect();
    let group = Group::from_generators("Aut_F(Q)", members.len(), gens)
        .expect("automorphism groups stay below the cap");
    let maps = group
        .elements()
        .iter()
        .map(|p| {
            let mut m = vec![NONE; g.order()];
            for (k, &x) in members.iter().enumerate() {
                m[x] = members[p.apply(k)];
            }
            m
        })
        .collect::<Vec<_>>();
    let inner_ids = q.members().map(|x| {
        let c = Perm::new_unchecked(members.iter().map(|&y| pos[g.conj(y, x)]).collect());
        group.index_of(&c).expect("inner automorphisms lie in Aut_F(Q)")
    });
    let inner = group.subgroup_from_ids(inner_ids).expect("Inn(Q) is a subgroup");
    AutGroup { group, maps, inner }
}

/// `O_p(Aut_F(Q)) = Inn(Q)`.
pub fn is_radical(f: &FusionSystem, i: usize) -> bool {
    let a = aut_group(f, i);
    a.group.core_p(&a.group.whole(), f.p()) == a.inner
}

pub fn is_weakly_closed(f: &FusionSystem, q: &Subgroup) -> bool {
    let i = f.index_of(q).expect("subgroup of the carrier");
    f.iso_class(i) == [i]
}

/// For each element `x`, the set of images of `x` under `F`-morphisms.
pub fn element_classes(f: &FusionSystem) -> &[BitSet] {
    f.element_classes.get_or_init(|| {
        let g = f.group();
        (0..g.order())
            .map(|x| {
                let mut class = g.empty_set();
                if f.carrier().contains(x) {
                    let ci = f.index_of(&g.generate(&[x])).unwrap();
                    for m in f.isos_from(ci).values().flatten() {
                        class.insert(m[x]);
                    }
                }
                class
            })
            .collect()
    })
}

/// No morphism sends an element of `Q` outside `Q`. Checking elements
/// suffices since every morphism restricts to cyclic subgroups.
pub fn is_strongly_closed(f: &FusionSystem, q: &Subgroup) -> bool {
    let classes = element_classes(f);
    q.members().all(|x| classes[x].is_subset(q.bits()))
}

pub fn strongly_closed_subgroups(f: &FusionSystem) -> Vec<Subgroup> {
    f.subgroups()
        .iter()
        .filter(|q| is_strongly_closed(f, q))
        .cloned()
        .collect()
}

pub fn weakly_closed_subgroups(f: &FusionSystem) -> Vec<Subgroup> {
    f.subgroups()
        .iter()
        .filter(|q| is_weakly_closed(f, q))
        .cloned()
        .collect()
}

/// Lattice indices of the fully normalized, centric, radical subgroups.
pub fn fully_normalized_centric_radicals(f: &FusionSystem) -> &[usize] {
    f.fncr.get_or_init(|| {
        (0..f.lattice().len())
            .filter(|&i| {
                f.is_fully_normalized(f.lattice().get(i)) && is_centric(f, i) && is_radical(f, i)
            })
            .collect()
    })
}

/// Normality of `Q` in `F`.
///
/// For saturated systems: `Q` is strongly closed and lies in every fully
/// normalized centric radical subgroup. Otherwise the definition
/// `N_F(Q) = F` is checked directly and a warning is logged.
pub fn is_normal_subgroup(f: &FusionSystem, q: &Subgroup) -> bool {
    if f.is_saturated() {
        normal_by_criterion(f, q)
    } else {
        warn!("system is not saturated; checking normality from the definition");
        subsystems::is_normal_by_definition(f, q)
    }
}

/// Like [`is_normal_subgroup`] but refuses unsaturated systems.
pub fn is_normal_subgroup_strict(f: &FusionSystem, q: &Subgroup) -> Result<bool> {
    if !f.is_saturated() {
        return Err(Error::NotSaturated);
    }
    Ok(normal_by_criterion(f, q))
}

pub(crate) fn normal_by_criterion(f: &FusionSystem, q: &Subgroup) -> bool {
    is_strongly_closed(f, q)
        && fully_normalized_centric_radicals(f)
            .iter()
            .all(|&i| q.is_subgroup_of(f.lattice().get(i)))
}

fn require_saturated(f: &FusionSystem) -> Result<()> {
    if f.is_saturated() {
        Ok(())
    } else {
        Err(Error::NotSaturated)
    }
}

/// The largest normal subgroup: the largest strongly closed subgroup inside
/// the intersection of the fully normalized centric radical subgroups.
pub fn o_p(f: &FusionSystem) -> Result<Subgroup> {
    require_saturated(f)?;
    let inter = fully_normalized_centric_radicals(f)
        .iter()
        .fold(f.carrier().clone(), |acc, &i| acc.intersect(f.lattice().get(i)));
    let g = f.group();
    let closed: Vec<Subgroup> = f
        .subgroups()
        .iter()
        .filter(|s| s.is_subgroup_of(&inter) && is_strongly_closed(f, s))
        .cloned()
        .collect();
    Ok(g.join_all(&closed))
}

/// `Z(F)`: the largest `Z ≤ Z(P)` with `C_F(Z) = F`.
pub fn center_of_fusion(f: &FusionSystem) -> Result<Subgroup> {
    require_saturated(f)?;
    let g = f.group();
    let zp = g.center(f.carrier());
    let mut qualifying = Vec::new();
    for z in f.subgroups().iter().filter(|s| s.is_subgroup_of(&zp)) {
        if subsystems::centralizes(f, z)? {
            qualifying.push(z.clone());
        }
    }
    let join = g.join_all(&qualifying);
    if qualifying.contains(&join) {
        Ok(join)
    } else {
        Err(Error::CenterJoinFailure)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosureMode {
    Strong,
    Weak,
}

/// A central series of `Q` whose terms are strongly (or weakly) closed,
/// built greedily; `None` if no such series exists.
///
/// Each term is the largest closed subgroup of `Q` inside the preimage of
/// `Z(Q/Q_{i-1})`. Any valid series has its `i`-th term inside the `i`-th
/// greedy term, so the greedy ascent reaches `Q` whenever some series does.
/// In weak mode a `Q` that is not strongly closed has no series.
pub fn strongly_closed_central_series(
    f: &FusionSystem,
    q: &Subgroup,
    mode: ClosureMode,
) -> Result<Option<Vec<Subgroup>>> {
    require_saturated(f)?;
    let closed = |s: &Subgroup| match mode {
        ClosureMode::Strong => is_strongly_closed(f, s),
        ClosureMode::Weak => is_weakly_closed(f, s),
    };
    if mode == ClosureMode::Weak && !is_strongly_closed(f, q) {
        return Ok(None);
    }
    let g = f.group();
    let gens = g.generating_set(q);
    let mut series = vec![g.trivial()];
    while series.last().unwrap() != q {
        let last = series.last().unwrap();
        let upper = Subgroup::from_bits(BitSet::from_indices(
            g.order(),
            q.members()
                .filter(|&x| gens.iter().all(|&y| last.contains(g.commutator_elem(x, y)))),
        ));
        let candidates: Vec<&Subgroup> = f
            .subgroups()
            .iter()
            .filter(|s| s.is_subgroup_of(&upper) && closed(s))
            .collect();
        let mut next = g.join_all(candidates.iter().copied());
        if !closed(&next) {
            warn!("join of closed subgroups is not closed; using the largest candidate");
            next = candidates.iter().max().map(|s| (*s).clone()).unwrap_or_else(|| g.trivial());
        }
        if &next == last {
            return Ok(None);
        }
        series.push(next);
    }
    Ok(Some(series))
}

/// The fully normalized centric radical subgroups with their `Aut_F`.
pub fn alperin_generators(f: &FusionSystem) -> Result<Vec<(Subgroup, Vec<GroupHom>)>> {
    require_saturated(f)?;
    Ok(fully_normalized_centric_radicals(f)
        .iter()
        .map(|&i| {
            let s = f.lattice().get(i).clone();
            let auts = f.aut(&s);
            (s, auts)
        })
        .collect())
}

/// Writes `φ: Q → R` as a product of restrictions of automorphisms of
/// fully normalized centric radical subgroups, by breadth-first search over
/// the composites reachable from the identity on `Q`.
pub fn alperin_decompose(f: &FusionSystem, phi: &GroupHom) -> Result<Vec<(Subgroup, GroupHom)>> {
    require_saturated(f)?;
    if !f.contains_hom(phi) {
        return Err(Error::MorphismNotInSystem);
    }
    let g = f.group();
    let q = &phi.domain;
    let target = crate::fusion::restrict(&phi.map, q);
    let start = GroupHom::identity(g, q).map;
    if start == target {
        return Ok(Vec::new());
    }
    let gens: Vec<(usize, Vec<&Map>)> = fully_normalized_centric_radicals(f)
        .iter()
        .map(|&i| (i, f.aut_maps(i)))
        .collect();
    // state -> (previous state, generator subgroup, automorphism)
    let mut parent: HashMap<Map, Option<(Map, usize, Map)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let img = crate::fusion::image(g, q, &cur);
        for (si, auts) in &gens {
            if !img.is_subgroup_of(f.lattice().get(*si)) {
                continue;
            }
            for &alpha in auts {
                let next: Map = cur
                    .iter()
                    .map(|&y| if y == NONE { NONE } else { alpha[y] })
                    .collect();
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((cur.clone(), *si, alpha.clone())));
                if next == target {
                    return Ok(unwind(f, &parent, next));
                }
                queue.push_back(next);
            }
        }
    }
    Err(Error::DecompositionNotFound)
}

fn unwind(
    f: &FusionSystem,
    parent: &HashMap<Map, Option<(Map, usize, Map)>>,
    end: Map,
) -> Vec<(Subgroup, GroupHom)> {
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, si, alpha))) = parent.get(&cur) {
        let s = f.lattice().get(*si).clone();
        steps.push((
            s.clone(),
            GroupHom {
                domain: s.clone(),
                codomain: s,
                map: alpha.clone(),
            },
        ));
        cur = prev.clone();
    }
    steps.reverse();
    steps
}

//! Fusion systems stored as isomorphism tables.
//!
//! For each subgroup `Q` of the carrier the table lists, per codomain `R`,
//! the set of isomorphisms `Q → R`. A map is a total vector over the
//! ambient group's element ids with [`NONE`] outside its domain. Every
//! morphism of the category factors as an isomorphism onto its image
//! followed by an inclusion, so hom-sets are derived on demand.

mod engine;
mod lattice;
mod saturation;
mod transport;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::Deref;
use std::sync::{Arc, OnceLock};

pub use lattice::Lattice;
pub use saturation::SaturationFailure;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{is_prime, ElementId, Group, Subgroup, NONE};
use crate::hom::GroupHom;

pub type Map = Vec<ElementId>;

pub(crate) type IsoTable = Vec<BTreeMap<usize, BTreeSet<Map>>>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    FromGroup(String),
    Generated,
    Derived(String),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::FromGroup(g) => write!(f, "from-group:{g}"),
            Provenance::Generated => write!(f, "generated"),
            Provenance::Derived(how) => write!(f, "derived:{how}"),
        }
    }
}

impl Provenance {
    pub fn parse(s: &str) -> Provenance {
        if let Some(g) = s.strip_prefix("from-group:") {
            Provenance::FromGroup(g.to_string())
        } else if let Some(how) = s.strip_prefix("derived:") {
            Provenance::Derived(how.to_string())
        } else {
            Provenance::Generated
        }
    }
}

/// An isomorphism table with no closure guarantee.
#[derive(Clone)]
pub struct PreFusionSystem {
    pub(crate) group: Arc<Group>,
    pub(crate) carrier: Subgroup,
    pub(crate) p: u32,
    pub(crate) lattice: Arc<Lattice>,
    pub(crate) table: IsoTable,
}

impl fmt::Debug for PreFusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PreFusionSystem")
            .field("group", &self.group.name())
            .field("carrier_order", &self.carrier.order())
            .field("p", &self.p)
            .field("isos", &self.iso_count())
            .finish()
    }
}

impl PreFusionSystem {
    pub fn new(group: Arc<Group>, carrier: Subgroup, p: u32) -> Result<Self> {
        let lattice = Arc::new(Lattice::new(&group, &carrier)?);
        Ok(Self::with_lattice(group, carrier, p, lattice))
    }

    pub(crate) fn with_lattice(group: Arc<Group>, carrier: Subgroup, p: u32, lattice: Arc<Lattice>) -> Self {
        let table = vec![BTreeMap::new(); lattice.len()];
        PreFusionSystem {
            group,
            carrier,
            p,
            lattice,
            table,
        }
    }

    pub fn group(&self) -> &Arc<Group> {
        &self.group
    }

    pub fn carrier(&self) -> &Subgroup {
        &self.carrier
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        self.lattice.subgroups()
    }

    pub fn index_of(&self, q: &Subgroup) -> Option<usize> {
        self.lattice.index_of(q)
    }

    pub(crate) fn idx(&self, q: &Subgroup) -> usize {
        self.lattice
            .index_of(q)
            .expect("subgroup of the carrier")
    }

    /// Isomorphisms out of the `i`-th subgroup, keyed by codomain index.
    pub fn isos_from(&self, i: usize) -> &BTreeMap<usize, BTreeSet<Map>> {
        &self.table[i]
    }

    pub fn iso_maps(&self, q: usize, r: usize) -> impl Iterator<Item = &Map> {
        self.table[q].get(&r).into_iter().flatten()
    }

    /// All stored isomorphisms as `(domain, codomain, map)` in canonical order.
    pub fn all_isos(&self) -> impl Iterator<Item = (usize, usize, &Map)> {
        self.table.iter().enumerate().flat_map(|(q, row)| {
            row.iter()
                .flat_map(move |(&r, maps)| maps.iter().map(move |m| (q, r, m)))
        })
    }

    pub fn iso_count(&self) -> usize {
        self.table
            .iter()
            .map(|row| row.values().map(BTreeSet::len).sum::<usize>())
            .sum()
    }

    pub fn contains_map(&self, q: usize, r: usize, map: &Map) -> bool {
        self.table[q].get(&r).is_some_and(|s| s.contains(map))
    }

    /// Adds an isomorphism given by its domain index and map; the codomain is
    /// computed. Returns false if it was already present.
    pub fn insert(&mut self, q: usize, map: Map) -> bool {
        let r = self.codomain_of(q, &map);
        self.table[q].entry(r).or_default().insert(map)
    }

    pub(crate) fn codomain_of(&self, q: usize, map: &Map) -> usize {
        let img = image(&self.group, self.lattice.get(q), map);
        self.idx(&img)
    }

    pub fn to_hom(&self, q: usize, r: usize, map: &Map) -> GroupHom {
        GroupHom {
            domain: self.lattice.get(q).clone(),
            codomain: self.lattice.get(r).clone(),
            map: map.clone(),
        }
    }

    /// Looks up a hom given with an arbitrary codomain containing its image.
    pub fn contains_hom(&self, h: &GroupHom) -> bool {
        let Some(q) = self.index_of(&h.domain) else {
            return false;
        };
        let img = h.image(self.group.order());
        match self.index_of(&img) {
            Some(r) => self.contains_map(q, r, &h.map),
            None => false,
        }
    }

    /// Aut-set of the `i`-th subgroup.
    pub fn aut_maps(&self, i: usize) -> Vec<&Map> {
        self.iso_maps(i, i).collect()
    }
}

/// A fusion system: a [`PreFusionSystem`] closed under composition,
/// inverses and restriction, and containing all conjugations by the carrier.
#[derive(Clone)]
pub struct FusionSystem {
    pre: PreFusionSystem,
    provenance: Provenance,
    saturated: OnceLock<Option<SaturationFailure>>,
    fully_normalized: OnceLock<Vec<bool>>,
    pub(crate) element_classes: OnceLock<Vec<BitSet>>,
    pub(crate) fncr: OnceLock<Vec<usize>>,
}

impl Deref for FusionSystem {
    type Target = PreFusionSystem;

    fn deref(&self) -> &PreFusionSystem {
        &self.pre
    }
}

impl fmt::Debug for FusionSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionSystem")
            .field("group", &self.group.name())
            .field("carrier_order", &self.carrier.order())
            .field("p", &self.p)
            .field("provenance", &self.provenance)
            .field("isos", &self.iso_count())
            .finish()
    }
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as usize) {
        Ok(())
    } else {
        Err(Error::Validation(format!("{p} is not prime")))
    }
}

impl FusionSystem {
    /// Wraps a table that the caller guarantees is closed.
    pub(crate) fn from_closed(pre: PreFusionSystem, provenance: Provenance) -> Self {
        FusionSystem {
            pre,
            provenance,
            saturated: OnceLock::new(),
            fully_normalized: OnceLock::new(),
            element_classes: OnceLock::new(),
            fncr: OnceLock::new(),
        }
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    pub fn as_prefusion(&self) -> &PreFusionSystem {
        &self.pre
    }

    pub fn into_prefusion(self) -> PreFusionSystem {
        self.pre
    }

    /// `F_P(G)` on a Sylow `p`-subgroup `P` of `g`.
    ///
    /// `P` is re-enumerated as a group in its own right, so the resulting
    /// system's ambient group is `P`.
    pub fn from_group(g: &Group, p: u32) -> Result<Self> {
        check_prime(p)?;
        let whole = g.whole();
        let sylow = g.sylow(&whole, p);
        let gens: Vec<_> = g
            .generating_set(&sylow)
            .into_iter()
            .map(|x| g.element(x).clone())
            .collect();
        let pg = Arc::new(Group::with_cap(
            format!("Syl{p}({})", g.name()),
            g.degree(),
            gens,
            g.order_cap(),
        )?);
        let to_p: Vec<ElementId> = (0..g.order())
            .map(|x| {
                if sylow.contains(x) {
                    pg.index_of(g.element(x)).unwrap()
                } else {
                    NONE
                }
            })
            .collect();
        let to_g: Vec<ElementId> = (0..pg.order())
            .map(|x| g.index_of(pg.element(x)).unwrap())
            .collect();
        let mut pre = PreFusionSystem::new(pg.clone(), pg.whole(), p)?;
        for qi in 0..pre.lattice.len() {
            let q: Vec<ElementId> = pre.lattice.get(qi).members().collect();
            for t in 0..g.order() {
                let imgs: Option<Vec<ElementId>> = q
                    .iter()
                    .map(|&x| {
                        let y = to_p[g.conj(to_g[x], t)];
                        (y != NONE).then_some(y)
                    })
                    .collect();
                if let Some(imgs) = imgs {
                    let mut map = vec![NONE; pg.order()];
                    for (&x, y) in q.iter().zip(imgs) {
                        map[x] = y;
                    }
                    pre.insert(qi, map);
                }
            }
        }
        Ok(Self::from_closed(pre, Provenance::FromGroup(g.name().to_string())))
    }

    /// `F_Q(Q)` for a `p`-subgroup `carrier` of `group`.
    pub fn inner(group: Arc<Group>, carrier: Subgroup, p: u32) -> Result<Self> {
        let mut pre = PreFusionSystem::new(group, carrier, p)?;
        engine::add_conjugations(&mut pre);
        Ok(Self::from_closed(pre, Provenance::Derived("inner".into())))
    }

    pub(crate) fn inner_on_lattice(group: Arc<Group>, carrier: Subgroup, p: u32, lattice: Arc<Lattice>) -> Self {
        let mut pre = PreFusionSystem::with_lattice(group, carrier, p, lattice);
        engine::add_conjugations(&mut pre);
        Self::from_closed(pre, Provenance::Derived("inner".into()))
    }

    /// The smallest fusion system on `carrier` containing the seed homs.
    ///
    /// Each seed is replaced by the isomorphism onto its image.
    pub fn generated(group: Arc<Group>, carrier: Subgroup, p: u32, seeds: &[GroupHom]) -> Result<Self> {
        check_prime(p)?;
        if !group.is_p_group(&carrier, p) {
            return Err(Error::Validation(format!("carrier is not a {p}-group")));
        }
        let pre = PreFusionSystem::new(group, carrier, p)?;
        let mut seed_maps = Vec::new();
        for h in seeds {
            let q = pre.index_of(&h.domain).ok_or(Error::NotASubgroup)?;
            seed_maps.push((q, h.map.clone()));
        }
        Ok(Self::close(pre, seed_maps, Provenance::Generated))
    }

    /// Closure of conjugations plus `seeds` on the lattice of `pre`, which
    /// may already hold isomorphisms (these are treated as seeds too).
    pub fn close(pre: PreFusionSystem, seeds: Vec<(usize, Map)>, provenance: Provenance) -> Self {
        let mut seeds = seeds;
        seeds.extend(pre.all_isos().map(|(q, _, m)| (q, m.clone())));
        let mut fresh = PreFusionSystem::with_lattice(pre.group, pre.carrier, pre.p, pre.lattice);
        engine::add_conjugations(&mut fresh);
        engine::close(&mut fresh, seeds);
        Self::from_closed(fresh, provenance)
    }

    /// Hom-set `Hom_F(Q, R)`: isomorphisms onto subgroups of `R`.
    pub fn hom_set(&self, q: &Subgroup, r: &Subgroup) -> Vec<GroupHom> {
        let (Some(qi), Some(_)) = (self.index_of(q), self.index_of(r)) else {
            return Vec::new();
        };
        self.table[qi]
            .iter()
            .filter(|(&s, _)| self.lattice.get(s).is_subgroup_of(r))
            .flat_map(|(&s, maps)| {
                maps.iter().map(move |m| GroupHom {
                    domain: q.clone(),
                    codomain: self.lattice.get(s).clone(),
                    map: m.clone(),
                })
            })
            .map(|mut h| {
                h.codomain = r.clone();
                h
            })
            .collect()
    }

    pub fn aut(&self, q: &Subgroup) -> Vec<GroupHom> {
        self.hom_set(q, q)
    }

    /// Indices of the subgroups `F`-isomorphic to the `i`-th one.
    pub fn iso_class(&self, i: usize) -> Vec<usize> {
        self.table[i].keys().copied().collect()
    }

    /// Orbit representatives: the smallest index in each isomorphism class.
    pub fn class_representatives(&self) -> Vec<usize> {
        (0..self.lattice.len())
            .filter(|&i| self.table[i].keys().next() == Some(&i))
            .collect()
    }
}

pub(crate) fn image(group: &Group, q: &Subgroup, map: &Map) -> Subgroup {
    let mut bits = group.empty_set();
    for x in q.members() {
        bits.insert(map[x]);
    }
    Subgroup::from_bits(bits)
}

pub(crate) fn compose(a: &Map, b: &Map) -> Map {
    a.iter()
        .map(|&y| if y == NONE { NONE } else { b[y] })
        .collect()
}

pub(crate) fn invert(a: &Map) -> Map {
    let mut inv = vec![NONE; a.len()];
    for (x, &y) in a.iter().enumerate() {
        if y != NONE {
            inv[y] = x;
        }
    }
    inv
}

pub(crate) fn restrict(a: &Map, sub: &Subgroup) -> Map {
    let mut r = vec![NONE; a.len()];
    for x in sub.members() {
        r[x] = a[x];
    }
    r
}

pub(crate) fn conjugation_map(group: &Group, q: &Subgroup, g: ElementId) -> Map {
    let mut m = vec![NONE; group.order()];
    for x in q.members() {
        m[x] = group.conj(x, g);
    }
    m
}

#[cfg(test)]
mod tests;

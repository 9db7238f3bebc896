//! Injective homomorphisms between subgroups, and isomorphism search.

use std::collections::VecDeque;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{ElementId, Group, Subgroup, NONE};

pub const DEFAULT_ISO_CAP: usize = 512;

/// An injective homomorphism from `domain` (in a source group) into
/// `codomain` (in a target group), stored as a total map over the source
/// group's element ids with [`NONE`] outside the domain.
///
/// Equality compares the domain and the map; the codomain only bounds the
/// image and is ignored.
#[derive(Clone, Debug)]
pub struct GroupHom {
    pub domain: Subgroup,
    pub codomain: Subgroup,
    pub map: Vec<ElementId>,
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.domain == other.domain && self.map == other.map
    }
}

impl Eq for GroupHom {}

impl PartialOrd for GroupHom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupHom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.domain
            .cmp(&other.domain)
            .then_with(|| self.map.cmp(&other.map))
    }
}

impl GroupHom {
    pub fn identity(g: &Group, q: &Subgroup) -> Self {
        let mut map = vec![NONE; g.order()];
        for x in q.members() {
            map[x] = x;
        }
        GroupHom {
            domain: q.clone(),
            codomain: q.clone(),
            map,
        }
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.map[x]
    }

    /// Image of a subset of the domain, as a subset of a target of order `target_order`.
    pub fn image_of(&self, s: &Subgroup, target_order: usize) -> Subgroup {
        Subgroup::from_bits(BitSet::from_indices(
            target_order,
            s.members().map(|x| self.map[x]),
        ))
    }

    pub fn image(&self, target_order: usize) -> Subgroup {
        self.image_of(&self.domain, target_order)
    }

    /// `self` followed by `next`. Requires the image of `self` inside `next.domain`.
    pub fn then(&self, next: &GroupHom) -> GroupHom {
        let map = self
            .map
            .iter()
            .map(|&y| if y == NONE { NONE } else { next.map[y] })
            .collect();
        GroupHom {
            domain: self.domain.clone(),
            codomain: next.codomain.clone(),
            map,
        }
    }

    /// Inverse of the isomorphism onto the image, for homs within one group.
    pub fn inverse(&self) -> GroupHom {
        let n = self.map.len();
        let mut map = vec![NONE; n];
        for x in self.domain.members() {
            map[self.map[x]] = x;
        }
        GroupHom {
            domain: self.image(n),
            codomain: self.domain.clone(),
            map,
        }
    }

    pub fn restrict(&self, sub: &Subgroup) -> GroupHom {
        let mut map = vec![NONE; self.map.len()];
        for x in sub.members() {
            map[x] = self.map[x];
        }
        GroupHom {
            domain: sub.clone(),
            codomain: self.codomain.clone(),
            map,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.domain.members().all(|x| self.map[x] == x)
    }
}

/// Extends generator images multiplicatively to all of `domain`.
///
/// `gen_images` pairs source elements with target elements; the sources
/// must generate `domain`.
pub fn hom_build(
    src: &Group,
    domain: &Subgroup,
    dst: &Group,
    codomain: &Subgroup,
    gen_images: &[(ElementId, ElementId)],
) -> Result<GroupHom> {
    let gens: Vec<ElementId> = gen_images.iter().map(|&(s, _)| s).collect();
    if src.generate(&gens) != *domain {
        return Err(Error::DoesNotGenerate);
    }
    let map = extend(src, dst, gen_images).ok_or(Error::NotAHomomorphism)?;
    let mut seen = dst.empty_set();
    for x in domain.members() {
        if !codomain.contains(map[x]) {
            return Err(Error::ImageEscapesCodomain);
        }
        if !seen.insert(map[x]) {
            return Err(Error::NotInjective);
        }
    }
    Ok(GroupHom {
        domain: domain.clone(),
        codomain: codomain.clone(),
        map,
    })
}

/// Walks the Cayley graph of the generated subgroup, returning `None` on
/// the first inconsistent edge.
fn extend(src: &Group, dst: &Group, gen_images: &[(ElementId, ElementId)]) -> Option<Vec<ElementId>> {
    let mut map = vec![NONE; src.order()];
    map[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &(g, h) in gen_images {
            let y = src.mul(x, g);
            let img = dst.mul(map[x], h);
            if map[y] == NONE {
                map[y] = img;
                queue.push_back(y);
            } else if map[y] != img {
                return None;
            }
        }
    }
    Some(map)
}

/// `θ_g : x ↦ g⁻¹xg` from `q` into `r`.
pub fn conjugation_hom(g: &Group, x: ElementId, q: &Subgroup, r: &Subgroup) -> Result<GroupHom> {
    let mut map = vec![NONE; g.order()];
    for y in q.members() {
        let c = g.conj(y, x);
        if !r.contains(c) {
            return Err(Error::ConjugateEscapes);
        }
        map[y] = c;
    }
    Ok(GroupHom {
        domain: q.clone(),
        codomain: r.clone(),
        map,
    })
}

struct Search<'a> {
    g: &'a Group,
    h: &'a Group,
    gens: Vec<ElementId>,
    candidates: Vec<Vec<ElementId>>,
}

impl Search<'_> {
    fn new<'a>(g: &'a Group, h: &'a Group, seed: Option<&[ElementId]>) -> Search<'a> {
        let gens = match seed {
            Some(s) => s.to_vec(),
            None => {
                let mut by_order: Vec<ElementId> = (0..g.order()).collect();
                by_order.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
                let mut gens = Vec::new();
                let mut cur = g.trivial();
                for x in by_order {
                    if !cur.contains(x) {
                        gens.push(x);
                        cur = g.generate(&gens);
                        if cur.order() == g.order() {
                            break;
                        }
                    }
                }
                gens
            }
        };
        let cg = centralizer_sizes(g, &gens);
        let ch = centralizer_sizes(h, &(0..h.order()).collect::<Vec<_>>());
        let candidates = gens
            .iter()
            .enumerate()
            .map(|(i, &x)| {
                (0..h.order())
                    .filter(|&y| h.element_order(y) == g.element_order(x) && ch[y] == cg[i])
                    .collect()
            })
            .collect();
        Search {
            g,
            h,
            gens,
            candidates,
        }
    }

    /// Depth-first over generator images; `visit` returns false to stop.
    fn run(&self, visit: &mut dyn FnMut(Vec<ElementId>) -> bool) {
        let mut chosen = Vec::with_capacity(self.gens.len());
        self.step(&mut chosen, visit);
    }

    fn step(&self, chosen: &mut Vec<(ElementId, ElementId)>, visit: &mut dyn FnMut(Vec<ElementId>) -> bool) -> bool {
        let k = chosen.len();
        if k == self.gens.len() {
            let map = extend(self.g, self.h, chosen).expect("checked at previous level");
            return visit(map);
        }
        for &y in &self.candidates[k] {
            chosen.push((self.gens[k], y));
            let ok = match extend(self.g, self.h, chosen) {
                Some(map) => {
                    let mut seen = self.h.empty_set();
                    map.iter().filter(|&&v| v != NONE).all(|&v| seen.insert(v))
                }
                None => false,
            };
            if ok && !self.step(chosen, visit) {
                chosen.pop();
                return false;
            }
            chosen.pop();
        }
        true
    }
}

fn centralizer_sizes(g: &Group, xs: &[ElementId]) -> Vec<usize> {
    xs.iter()
        .map(|&x| (0..g.order()).filter(|&y| g.mul(x, y) == g.mul(y, x)).count())
        .collect()
}

fn order_profile(g: &Group) -> Vec<usize> {
    let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
    v.sort_unstable();
    v
}

pub fn isomorphism_search(g: &Group, h: &Group) -> Result<Option<GroupHom>> {
    isomorphism_search_with_cap(g, h, DEFAULT_ISO_CAP)
}

/// Finds an isomorphism `g → h` by backtracking over generator images,
/// pruning by element order and centralizer size. The first isomorphism in
/// candidate order is returned.
pub fn isomorphism_search_with_cap(g: &Group, h: &Group, cap: usize) -> Result<Option<GroupHom>> {
    if g.order() > cap || h.order() > cap {
        return Err(Error::OrderCapExceeded { cap });
    }
    if g.order() != h.order() || order_profile(g) != order_profile(h) {
        return Ok(None);
    }
    if g == h {
        return Ok(Some(GroupHom::identity(g, &g.whole())));
    }
    let mut found = None;
    Search::new(g, h, None).run(&mut |map| {
        found = Some(map);
        false
    });
    Ok(found.map(|map| GroupHom {
        domain: g.whole(),
        codomain: h.whole(),
        map,
    }))
}

/// All automorphisms of `g`, as element maps, in search order.
pub fn automorphisms(g: &Group) -> Result<Vec<Vec<ElementId>>> {
    if g.order() > DEFAULT_ISO_CAP {
        return Err(Error::OrderCapExceeded { cap: DEFAULT_ISO_CAP });
    }
    let mut all = Vec::new();
    Search::new(g, g, None).run(&mut |map| {
        all.push(map);
        true
    });
    all.sort();
    Ok(all)
}

/// All isomorphisms `g → h`.
pub fn isomorphisms(g: &Group, h: &Group) -> Result<Vec<Vec<ElementId>>> {
    if g.order() > DEFAULT_ISO_CAP || h.order() > DEFAULT_ISO_CAP {
        return Err(Error::OrderCapExceeded { cap: DEFAULT_ISO_CAP });
    }
    if g.order() != h.order() || order_profile(g) != order_profile(h) {
        return Ok(Vec::new());
    }
    let mut all = Vec::new();
    Search::new(g, h, None).run(&mut |map| {
        all.push(map);
        true
    });
    all.sort();
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;

    fn perm(images: &[usize]) -> Perm {
        Perm::new(images.to_vec()).unwrap()
    }

    fn s4() -> Group {
        Group::from_generators("S4", 4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap()
    }

    #[test]
    fn conjugation_examples() {
        let g = s4();
        let c = g.index_of(&perm(&[1, 2, 3, 0])).unwrap();
        let t02 = g.index_of(&perm(&[2, 1, 0, 3])).unwrap();
        let t13 = g.index_of(&perm(&[0, 3, 2, 1])).unwrap();
        let t01 = g.index_of(&perm(&[1, 0, 2, 3])).unwrap();
        let q = g.generate(&[t02]);
        let r = g.generate(&[t13]);
        let h = conjugation_hom(&g, c, &q, &r).unwrap();
        assert_eq!(h.apply(t02), t13);
        assert!(matches!(
            conjugation_hom(&g, t01, &q, &q),
            Err(Error::ConjugateEscapes)
        ));
        let id = conjugation_hom(&g, 0, &q, &g.whole()).unwrap();
        assert!(id.is_identity());
    }

    #[test]
    fn conjugation_round_trip() {
        let g = s4();
        let q = g.core_p(&g.whole(), 2);
        for x in 0..g.order() {
            let qx = g.conjugate(&q, x);
            let a = conjugation_hom(&g, x, &q, &qx).unwrap();
            let b = conjugation_hom(&g, g.inv(x), &qx, &q).unwrap();
            assert!(a.then(&b).is_identity());
        }
    }

    #[test]
    fn build_rejects_collapse() {
        let c4 = Group::from_generators("C4", 4, vec![perm(&[1, 2, 3, 0])]).unwrap();
        let r = c4.index_of(&perm(&[1, 2, 3, 0])).unwrap();
        let r2 = c4.mul(r, r);
        let err = hom_build(&c4, &c4.whole(), &c4, &c4.whole(), &[(r, r2)]);
        assert!(matches!(err, Err(Error::NotInjective)));
        let ok = hom_build(&c4, &c4.whole(), &c4, &c4.whole(), &[(r, r)]).unwrap();
        assert!(ok.is_identity());
        let err = hom_build(&c4, &c4.whole(), &c4, &c4.whole(), &[(r2, r2)]);
        assert!(matches!(err, Err(Error::DoesNotGenerate)));
    }

    #[test]
    fn d8_and_q8_are_not_isomorphic() {
        let d8 = Group::from_generators("D8", 4, vec![perm(&[1, 2, 3, 0]), perm(&[2, 1, 0, 3])]).unwrap();
        let q8 = crate::catalog::q8();
        assert_eq!(q8.order(), 8);
        assert_eq!(isomorphism_search(&d8, &q8).unwrap(), None);
        assert!(isomorphism_search(&d8, &d8).unwrap().unwrap().is_identity());
    }

    #[test]
    fn automorphism_counts() {
        let d8 = Group::from_generators("D8", 4, vec![perm(&[1, 2, 3, 0]), perm(&[2, 1, 0, 3])]).unwrap();
        assert_eq!(automorphisms(&d8).unwrap().len(), 8);
        assert_eq!(automorphisms(&s4()).unwrap().len(), 24);
    }
}

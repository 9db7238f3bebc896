//! Factor systems `F/Q`, the bar construction, morphisms of fusion systems
//! and the isomorphism theorems.

use std::sync::Arc;

use crate::closure::{is_strongly_closed, is_weakly_closed};
use crate::error::{Error, Result};
use crate::fusion::{image, FusionSystem, Map, PreFusionSystem, Provenance};
use crate::group::{ElementId, Group, Subgroup, NONE};
use crate::hom::GroupHom;
use crate::subsystems::normalizer_system;

/// The natural map from a carrier `P` onto `P/Q`.
#[derive(Clone, Debug)]
pub struct Projection {
    pub group: Arc<Group>,
    /// Indexed by ids of the source ambient group; `NONE` outside `P`.
    pub map: Vec<ElementId>,
    pub kernel: Subgroup,
}

impl Projection {
    pub fn new(source: &Group, carrier: &Subgroup, q: &Subgroup) -> Result<Self> {
        if !q.is_subgroup_of(carrier) || !source.is_normal(q, carrier) {
            return Err(Error::NotNormalInP);
        }
        let quo = source.quotient(carrier, q)?;
        Ok(Projection {
            group: Arc::new(quo.group),
            map: quo.projection,
            kernel: quo.kernel,
        })
    }

    pub fn image(&self, s: &Subgroup) -> Subgroup {
        image(&self.group, s, &self.map)
    }

    pub fn preimage(&self, s: &Subgroup) -> Subgroup {
        let ids = (0..self.map.len()).filter(|&x| self.map[x] != NONE && s.contains(self.map[x]));
        Subgroup::from_bits(crate::bitset::BitSet::from_indices(self.map.len(), ids))
    }

    /// The map `xQ ↦ (xφ)Q` on the image of `r`, or `None` when it is not
    /// well defined.
    pub fn induce(&self, r: &Subgroup, phi: &Map) -> Option<Map> {
        let mut m = vec![NONE; self.group.order()];
        for x in r.members() {
            let (a, b) = (self.map[x], self.map[phi[x]]);
            if m[a] != NONE && m[a] != b {
                return None;
            }
            m[a] = b;
        }
        Some(m)
    }
}

/// A system on a quotient together with the projection that produced it.
#[derive(Clone)]
pub struct Quotiented<T> {
    pub system: T,
    pub projection: Projection,
}

fn check_normal_in_p(f: &FusionSystem, q: &Subgroup) -> Result<()> {
    if f.index_of(q).is_none() || !f.group().is_normal(q, f.carrier()) {
        return Err(Error::NotNormalInP);
    }
    Ok(())
}

fn check_strongly_closed(f: &FusionSystem, q: &Subgroup) -> Result<()> {
    if f.index_of(q).is_none() || !is_strongly_closed(f, q) {
        return Err(Error::NotStronglyClosed);
    }
    Ok(())
}

/// `F/Q` for `Q ⊴ P`: the maps induced on `R/Q → S/Q` by `F`-morphisms
/// `R → S` that send `Q` to `Q`.
pub fn factor_system(f: &FusionSystem, q: &Subgroup) -> Result<Quotiented<FusionSystem>> {
    check_normal_in_p(f, q)?;
    let proj = Projection::new(f.group(), f.carrier(), q)?;
    let qg = proj.group.clone();
    let mut pre = PreFusionSystem::new(qg.clone(), qg.whole(), f.p())?;
    for (ri, _, phi) in f.all_isos() {
        let r = f.lattice().get(ri);
        if !q.is_subgroup_of(r) || !q.members().all(|x| q.contains(phi[x])) {
            continue;
        }
        let m = proj.induce(r, phi).expect("Q is fixed, so the induced map is well defined");
        let ii = pre.idx(&proj.image(r));
        pre.insert(ii, m);
    }
    Ok(Quotiented {
        system: FusionSystem::from_closed(pre, Provenance::Derived("factor".into())),
        projection: proj,
    })
}

/// `bar F_Q`: every `F`-morphism `R' → S'` induces `QR'/Q → QS'/Q`.
pub fn bar_system(f: &FusionSystem, q: &Subgroup) -> Result<Quotiented<PreFusionSystem>> {
    check_strongly_closed(f, q)?;
    let proj = Projection::new(f.group(), f.carrier(), q)?;
    let qg = proj.group.clone();
    let mut pre = PreFusionSystem::new(qg.clone(), qg.whole(), f.p())?;
    for (ri, _, phi) in f.all_isos() {
        let r = f.lattice().get(ri);
        let m = proj.induce(r, phi).expect("Q is strongly closed");
        let ii = pre.idx(&proj.image(r));
        pre.insert(ii, m);
    }
    Ok(Quotiented { system: pre, projection: proj })
}

/// `⟨bar F_Q⟩`.
pub fn generated_bar(f: &FusionSystem, q: &Subgroup) -> Result<Quotiented<FusionSystem>> {
    let bar = bar_system(f, q)?;
    Ok(Quotiented {
        system: FusionSystem::close(bar.system, Vec::new(), Provenance::Derived("generated-bar".into())),
        projection: bar.projection,
    })
}

/// A reason a prefusion system fails to be a fusion system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    MissingConjugation { subgroup: Subgroup, element: ElementId },
    MissingInverse { phi: GroupHom },
    MissingRestriction { phi: GroupHom, to: Subgroup },
    MissingComposite { first: GroupHom, second: GroupHom },
}

/// Checks conjugations, inverses, restrictions and composites in that
/// order; the first gap met in table order is returned.
pub fn prefusion_is_fusion(pre: &PreFusionSystem) -> (bool, Option<Witness>) {
    match first_gap(pre) {
        None => (true, None),
        Some(w) => (false, Some(w)),
    }
}

fn first_gap(pre: &PreFusionSystem) -> Option<Witness> {
    let g = pre.group();
    let lat = pre.lattice();
    for qi in 0..lat.len() {
        let q = lat.get(qi);
        for x in pre.carrier().members() {
            let m = crate::fusion::conjugation_map(g, q, x);
            let ri = pre.idx(&image(g, q, &m));
            if !pre.contains_map(qi, ri, &m) {
                return Some(Witness::MissingConjugation { subgroup: q.clone(), element: x });
            }
        }
    }
    for (qi, ri, m) in pre.all_isos() {
        if !pre.contains_map(ri, qi, &crate::fusion::invert(m)) {
            return Some(Witness::MissingInverse { phi: pre.to_hom(qi, ri, m) });
        }
    }
    for (qi, ri, m) in pre.all_isos() {
        for ui in lat.below(qi) {
            let u = lat.get(ui);
            let r = crate::fusion::restrict(m, u);
            let vi = pre.idx(&image(g, u, &r));
            if !pre.contains_map(ui, vi, &r) {
                return Some(Witness::MissingRestriction { phi: pre.to_hom(qi, ri, m), to: u.clone() });
            }
        }
    }
    for (qi, ri, m) in pre.all_isos() {
        for (&si, maps) in pre.isos_from(ri) {
            for n in maps {
                let c = crate::fusion::compose(m, n);
                if !pre.contains_map(qi, si, &c) {
                    return Some(Witness::MissingComposite {
                        first: pre.to_hom(qi, ri, m),
                        second: pre.to_hom(ri, si, n),
                    });
                }
            }
        }
    }
    None
}

/// A group homomorphism `P → P'` that carries every morphism of `source`
/// to a morphism of `target`.
#[derive(Clone)]
pub struct FusionSystemMorphism {
    pub source: FusionSystem,
    pub target: FusionSystem,
    /// Indexed by ids of the source ambient group; `NONE` outside `P`.
    pub carrier: Vec<ElementId>,
    pub kernel: Subgroup,
}

impl std::fmt::Debug for FusionSystemMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FusionSystemMorphism")
            .field("carrier", &self.carrier)
            .field("kernel", &self.kernel)
            .finish()
    }
}

impl FusionSystemMorphism {
    /// Validates the homomorphism and the functor condition exhaustively.
    pub fn new(source: FusionSystem, target: FusionSystem, carrier: Vec<ElementId>) -> Result<Self> {
        let (g, h) = (source.group().clone(), target.group().clone());
        let p = source.carrier();
        for x in p.members() {
            if carrier[x] == NONE || !target.carrier().contains(carrier[x]) {
                return Err(Error::ImageEscapesCodomain);
            }
            for y in p.members() {
                if carrier[g.mul(x, y)] != h.mul(carrier[x], carrier[y]) {
                    return Err(Error::NotAHomomorphism);
                }
            }
        }
        let kernel = Subgroup::from_bits(crate::bitset::BitSet::from_indices(
            g.order(),
            p.members().filter(|&x| carrier[x] == 0),
        ));
        for (ri, _, phi) in source.all_isos() {
            let r = source.lattice().get(ri);
            let mut m = vec![NONE; h.order()];
            for x in r.members() {
                let (a, b) = (carrier[x], carrier[phi[x]]);
                if m[a] != NONE && m[a] != b {
                    return Err(Error::MorphismNotInSystem);
                }
                m[a] = b;
            }
            let dom = image(&h, r, &carrier);
            let cod = image(&h, &dom, &m);
            let ok = match (target.index_of(&dom), target.index_of(&cod)) {
                (Some(d), Some(c)) => dom.order() == cod.order() && target.contains_map(d, c, &m),
                _ => false,
            };
            if !ok {
                return Err(Error::MorphismNotInSystem);
            }
        }
        Ok(FusionSystemMorphism { source, target, carrier, kernel })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuotientTarget {
    GeneratedBar,
    Factor,
}

/// The natural map `F → F/Q` with kernel `Q`.
pub fn quotient_morphism(f: &FusionSystem, q: &Subgroup, target: QuotientTarget) -> Result<FusionSystemMorphism> {
    check_strongly_closed(f, q)?;
    let t = match target {
        QuotientTarget::GeneratedBar => generated_bar(f, q)?,
        QuotientTarget::Factor => {
            let fq = factor_system(f, q)?;
            let bar = bar_system(f, q)?;
            if !fq.system.as_prefusion().equals(&bar.system)? {
                return Err(Error::ImageNotAFusionSystem);
            }
            fq
        }
    };
    let m = FusionSystemMorphism::new(
        FusionSystem::from_closed(f.as_prefusion().clone(), f.provenance().clone()),
        t.system,
        t.projection.map,
    )?;
    debug_assert_eq!(&m.kernel, q);
    Ok(m)
}

/// Both sides of the closure-transfer correspondences for strongly closed
/// `Q`, with `F/Q` the factor system. Lists over `P` hold the subgroups
/// containing `Q`; the matching quotient lists are in the same order.
#[derive(Clone, Debug)]
pub struct ClosureTransfer {
    pub weak_above: Vec<Subgroup>,
    pub weak_quotient: Vec<Subgroup>,
    pub weak_bijection: bool,
    pub weak_images: bool,
    /// Only computed for saturated `F`.
    pub strong_above: Option<Vec<Subgroup>>,
    pub strong_quotient: Option<Vec<Subgroup>>,
    pub strong_bijection: Option<bool>,
    pub strong_images: Option<bool>,
}

impl ClosureTransfer {
    pub fn holds(&self) -> bool {
        self.weak_bijection
            && self.weak_images
            && self.strong_bijection != Some(false)
            && self.strong_images != Some(false)
    }
}

fn correspond(
    proj: &Projection,
    above: &[Subgroup],
    quotient_side: Vec<Subgroup>,
) -> (Vec<Subgroup>, bool) {
    let images: Vec<Subgroup> = above.iter().map(|r| proj.image(r)).collect();
    let mut a = images.clone();
    let mut b = quotient_side;
    a.sort();
    b.sort();
    (images, a == b)
}

pub fn closure_transfer(f: &FusionSystem, q: &Subgroup) -> Result<ClosureTransfer> {
    check_strongly_closed(f, q)?;
    let fq = factor_system(f, q)?;
    let (fq, proj) = (fq.system, fq.projection);
    let g = f.group();
    let above: Vec<&Subgroup> = f.subgroups().iter().filter(|r| q.is_subgroup_of(r)).collect();

    let weak_above: Vec<Subgroup> = above.iter().filter(|r| is_weakly_closed(f, r)).map(|r| (*r).clone()).collect();
    let weak_q: Vec<Subgroup> = fq.subgroups().iter().filter(|s| is_weakly_closed(&fq, s)).cloned().collect();
    let (weak_quotient, weak_bijection) = correspond(&proj, &weak_above, weak_q.clone());
    let weak_images = f
        .subgroups()
        .iter()
        .filter(|r| is_weakly_closed(f, r))
        .all(|r| weak_q.contains(&proj.image(&g.join(q, r))));

    let (mut strong_above, mut strong_quotient, mut strong_bijection, mut strong_images) = (None, None, None, None);
    if f.is_saturated() {
        let sa: Vec<Subgroup> = above.iter().filter(|r| is_strongly_closed(f, r)).map(|r| (*r).clone()).collect();
        let sq: Vec<Subgroup> = fq.subgroups().iter().filter(|s| is_strongly_closed(&fq, s)).cloned().collect();
        let (images, bij) = correspond(&proj, &sa, sq.clone());
        strong_images = Some(
            f.subgroups()
                .iter()
                .filter(|r| is_strongly_closed(f, r))
                .all(|r| sq.contains(&proj.image(&g.join(q, r)))),
        );
        strong_above = Some(sa);
        strong_quotient = Some(images);
        strong_bijection = Some(bij);
    }
    Ok(ClosureTransfer {
        weak_above,
        weak_quotient,
        weak_bijection,
        weak_images,
        strong_above,
        strong_quotient,
        strong_bijection,
        strong_images,
    })
}

/// Image of a subsystem `E` of `F` in `bar F_Q`, on `RQ/Q`.
pub fn image_in_bar(f: &FusionSystem, q: &Subgroup, e: &FusionSystem) -> Result<Quotiented<PreFusionSystem>> {
    check_strongly_closed(f, q)?;
    if **e.group() != **f.group() || !e.carrier().is_subgroup_of(f.carrier()) {
        return Err(Error::DifferentCarrier);
    }
    let proj = Projection::new(f.group(), f.carrier(), q)?;
    let mut pre = PreFusionSystem::new(proj.group.clone(), proj.image(e.carrier()), f.p())?;
    for (ri, _, phi) in e.all_isos() {
        let r = e.lattice().get(ri);
        let m = proj.induce(r, phi).expect("Q is strongly closed");
        let ii = pre.idx(&proj.image(r));
        pre.insert(ii, m);
    }
    Ok(Quotiented { system: pre, projection: proj })
}

fn require_saturated(f: &FusionSystem) -> Result<()> {
    if f.is_saturated() {
        Ok(())
    } else {
        Err(Error::NotSaturated)
    }
}

/// `EQ/Q ≅ E/(R ∩ Q)` through the coset correspondence `xQ ↦ x(R ∩ Q)`.
pub fn verify_second_iso(f: &FusionSystem, q: &Subgroup, e: &FusionSystem) -> Result<bool> {
    require_saturated(f)?;
    require_saturated(e)?;
    let lhs = image_in_bar(f, q, e)?;
    let r = e.carrier();
    let rq = r.intersect(q);
    let rhs = factor_system(e, &rq)?;
    let mut theta = vec![NONE; lhs.projection.group.order()];
    for x in r.members() {
        theta[lhs.projection.map[x]] = rhs.projection.map[x];
    }
    let theta = GroupHom {
        domain: lhs.system.carrier().clone(),
        codomain: rhs.system.carrier().clone(),
        map: theta,
    };
    let moved = lhs.system.transport(&theta, rhs.projection.group.clone())?;
    moved.equals(rhs.system.as_prefusion())
}

/// `(F/Q)/(R/Q) ≅ F/R` through `xR ↦ (xQ)(R/Q)`.
pub fn verify_third_iso(f: &FusionSystem, q: &Subgroup, r: &Subgroup) -> Result<bool> {
    require_saturated(f)?;
    check_strongly_closed(f, q)?;
    check_strongly_closed(f, r)?;
    if !q.is_subgroup_of(r) {
        return Err(Error::NotASubgroup);
    }
    let fq = factor_system(f, q)?;
    let rbar = fq.projection.image(r);
    let twice = factor_system(&fq.system, &rbar)?;
    let once = factor_system(f, r)?;
    let mut theta = vec![NONE; once.projection.group.order()];
    for x in f.carrier().members() {
        theta[once.projection.map[x]] = twice.projection.map[fq.projection.map[x]];
    }
    let theta = GroupHom {
        domain: once.system.carrier().clone(),
        codomain: twice.system.carrier().clone(),
        map: theta,
    };
    let moved = once.system.transport(&theta, twice.projection.group.clone())?;
    moved.equals(&twice.system)
}

/// Whether `F/Q = N_F(Q)/Q`. Exposed as a check, not relied upon.
pub fn locally_determined(f: &FusionSystem, q: &Subgroup) -> Result<bool> {
    let fq = factor_system(f, q)?;
    let n = normalizer_system(f, q)?;
    if n.carrier() != f.carrier() {
        return Err(Error::NotNormalInP);
    }
    let nq = factor_system(&n, q)?;
    fq.system.equals(&nq.system)
}

//! Subsystems: inner systems, K-normalizers, and the invariance,
//! Frattini, normality and characteristic predicates.

use std::collections::HashSet;

use crate::bitset::BitSet;
use crate::closure::is_strongly_closed;
use crate::error::{Error, Result};
use crate::fusion::{compose, invert, restrict, FusionSystem, Map, PreFusionSystem, Provenance};
use crate::group::{Subgroup, NONE};
use crate::hom::{automorphisms, GroupHom};

/// `F_Q(Q)` inside the ambient group of `f`.
pub fn inner_system(f: &FusionSystem, q: &Subgroup) -> Result<FusionSystem> {
    if q == f.carrier() {
        Ok(FusionSystem::inner_on_lattice(
            f.group().clone(),
            q.clone(),
            f.p(),
            f.lattice().clone(),
        ))
    } else {
        FusionSystem::inner(f.group().clone(), q.clone(), f.p())
    }
}

/// `N_F^K(Q)`: carrier `N_P^K(Q)`, and a morphism `φ: R → S` is kept when
/// some `F`-morphism `QR → QS` extends it and restricts to an element of
/// `K` on `Q`.
pub fn k_normalizer_system(f: &FusionSystem, q: &Subgroup, k: &[GroupHom]) -> Result<FusionSystem> {
    let g = f.group().clone();
    let qi = f.index_of(q).ok_or(Error::NotASubgroup)?;
    let kset: HashSet<Map> = k.iter().map(|h| restrict(&h.map, q)).collect();
    for m in &kset {
        if !f.contains_map(qi, qi, m) {
            return Err(Error::NotASubgroupOfAut);
        }
    }
    if !kset.contains(&crate::hom::GroupHom::identity(&g, q).map)
        || kset.iter().any(|a| kset.iter().any(|b| !kset.contains(&compose(a, b))))
    {
        return Err(Error::NotASubgroupOfAut);
    }
    let carrier = Subgroup::from_bits(BitSet::from_indices(
        g.order(),
        g.normalizer(f.carrier(), q)
            .members()
            .filter(|&x| kset.contains(&crate::fusion::conjugation_map(&g, q, x))),
    ));
    let mut pre = if &carrier == f.carrier() {
        PreFusionSystem::with_lattice(g.clone(), carrier.clone(), f.p(), f.lattice().clone())
    } else {
        PreFusionSystem::new(g.clone(), carrier.clone(), f.p())?
    };
    for ri in 0..pre.lattice().len() {
        let r = pre.lattice().get(ri).clone();
        let qr = g.join(q, &r);
        let Some(ti) = f.index_of(&qr) else { continue };
        for psi in f.isos_from(ti).values().flatten() {
            if q.members().all(|x| q.contains(psi[x])) && kset.contains(&restrict(psi, q)) {
                pre.insert(ri, restrict(psi, &r));
            }
        }
    }
    Ok(FusionSystem::from_closed(pre, Provenance::Derived("k-normalizer".into())))
}

/// `N_F(Q)`.
pub fn normalizer_system(f: &FusionSystem, q: &Subgroup) -> Result<FusionSystem> {
    let k = f.aut(q);
    k_normalizer_system(f, q, &k)
}

/// `C_F(Q)`.
pub fn centralizer_system(f: &FusionSystem, q: &Subgroup) -> Result<FusionSystem> {
    let id = GroupHom::identity(f.group(), q);
    k_normalizer_system(f, q, &[id])
}

/// `N_F(Q) = F`.
pub fn is_normal_by_definition(f: &FusionSystem, q: &Subgroup) -> bool {
    normalizer_system(f, q).is_ok_and(|n| n.equals(f).unwrap_or(false))
}

/// `C_F(Z) = F`.
pub fn centralizes(f: &FusionSystem, z: &Subgroup) -> Result<bool> {
    centralizer_system(f, z)?.equals(f)
}

fn require_strongly_closed(f: &FusionSystem, e: &FusionSystem) -> Result<()> {
    if **e.group() != **f.group() {
        return Err(Error::DifferentCarrier);
    }
    if !e.carrier().is_subgroup_of(f.carrier()) || !is_strongly_closed(f, e.carrier()) {
        return Err(Error::CarrierNotStronglyClosed);
    }
    Ok(())
}

/// `ψ⁻¹φψ` on `Rψ`, for `φ` defined on `R` and `ψ` defined on `R ∪ Rφ`.
fn conjugate_map(r: &Subgroup, phi: &Map, psi: &Map) -> Map {
    let mut m = vec![NONE; phi.len()];
    for x in r.members() {
        m[psi[x]] = psi[phi[x]];
    }
    m
}

/// `E` on a strongly closed `Q` is invariant: conjugating any
/// `E`-morphism by any `F`-morphism stays in `E`.
///
/// For `φ: R → R'` in `E` only the restriction of `ψ` to `⟨R, R'⟩`
/// matters, so it suffices to range `ψ` over the `F`-isomorphisms out of
/// that join.
pub fn is_invariant(f: &FusionSystem, e: &FusionSystem) -> Result<bool> {
    require_strongly_closed(f, e)?;
    Ok(invariance_failure(f, e).is_none())
}

/// First `(φ, ψ)` violating invariance, in canonical order.
pub fn invariance_failure(f: &FusionSystem, e: &FusionSystem) -> Option<(GroupHom, GroupHom)> {
    let g = f.group();
    for (ri, r2i, phi) in e.all_isos() {
        let r = e.lattice().get(ri);
        let s0 = g.join(r, e.lattice().get(r2i));
        let si = f.index_of(&s0).expect("inside the carrier");
        for psi in f.isos_from(si).values().flatten() {
            let m = conjugate_map(r, phi, psi);
            let dom = crate::fusion::image(g, r, psi);
            let ok = e.index_of(&dom).is_some_and(|d| {
                let c = crate::fusion::image(g, &dom, &m);
                e.index_of(&c).is_some_and(|c| e.contains_map(d, c, &m))
            });
            if !ok {
                return Some((f.to_hom(ri, r2i, phi), f.to_hom(si, f.codomain_of(si, psi), psi)));
            }
        }
    }
    None
}

/// Every `F`-morphism out of a subgroup of `Q` is an `F`-automorphism of
/// `Q` followed by an `E`-morphism.
pub fn is_frattini(f: &FusionSystem, e: &FusionSystem) -> Result<bool> {
    require_strongly_closed(f, e)?;
    let q = e.carrier();
    let qi = f.idx(q);
    let alphas: Vec<&Map> = f.aut_maps(qi);
    let g = f.group();
    for r in e.subgroups() {
        let fi = f.idx(r);
        for phi in f.isos_from(fi).values().flatten() {
            let found = alphas.iter().any(|alpha| {
                let ra = crate::fusion::image(g, r, alpha);
                let Some(rai) = e.index_of(&ra) else { return false };
                // β = α⁻¹φ on Rα
                let ainv = invert(&restrict(alpha, r));
                let beta = compose(&ainv, phi);
                let ci = e.index_of(&crate::fusion::image(g, &ra, &beta));
                ci.is_some_and(|c| e.contains_map(rai, c, &beta))
            });
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Every `α` conjugates `E` onto itself.
pub fn aut_f_acts_on(e: &FusionSystem, alphas: &[GroupHom]) -> bool {
    let g = e.group();
    alphas.iter().all(|alpha| {
        e.all_isos().all(|(ri, _, phi)| {
            let r = e.lattice().get(ri);
            let m = conjugate_map(r, phi, &alpha.map);
            let dom = crate::fusion::image(g, r, &alpha.map);
            e.index_of(&dom).is_some_and(|d| {
                let c = crate::fusion::image(g, &dom, &m);
                e.index_of(&c).is_some_and(|c| e.contains_map(d, c, &m))
            })
        })
    })
}

/// Invariant and saturated.
pub fn is_normal_subsystem(f: &FusionSystem, e: &FusionSystem) -> Result<bool> {
    Ok(is_invariant(f, e)? && e.is_saturated())
}

/// Automorphisms of the carrier, as maps over ambient ids.
pub fn carrier_automorphisms(f: &FusionSystem) -> Result<Vec<Map>> {
    let g = f.group();
    let (p, embed) = g.subgroup_as_group(f.carrier(), "P")?;
    Ok(automorphisms(&p)?
        .into_iter()
        .map(|a| {
            let mut m = vec![NONE; g.order()];
            for (x, &y) in a.iter().enumerate() {
                m[embed[x]] = embed[y];
            }
            m
        })
        .collect())
}

/// `Aut(F)`: automorphisms `α` of `P` with `Fα = F`.
pub fn fusion_automorphisms(f: &FusionSystem) -> Result<Vec<Map>> {
    let g = f.group().clone();
    let mut out = Vec::new();
    for a in carrier_automorphisms(f)? {
        let theta = GroupHom {
            domain: f.carrier().clone(),
            codomain: f.carrier().clone(),
            map: a.clone(),
        };
        if f.transport(&theta, g.clone())?.equals(f)? {
            out.push(a);
        }
    }
    Ok(out)
}

/// `E ⊴ F` is carried to itself by every element of `Aut(F)`.
pub fn is_characteristic(f: &FusionSystem, e: &FusionSystem) -> Result<bool> {
    if !is_normal_subsystem(f, e)? {
        return Err(Error::NotNormal);
    }
    let g = f.group().clone();
    for a in fusion_automorphisms(f)? {
        let theta = GroupHom {
            domain: e.carrier().clone(),
            codomain: e.carrier().clone(),
            map: restrict(&a, e.carrier()),
        };
        if !e.transport(&theta, g.clone())?.equals(e)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subgroups of `q` fixed by every automorphism of `q`.
pub fn characteristic_subgroups(f: &FusionSystem, q: &Subgroup) -> Result<Vec<Subgroup>> {
    let g = f.group();
    let (qg, embed) = g.subgroup_as_group(q, "Q")?;
    let auts = automorphisms(&qg)?;
    let mut back = vec![NONE; g.order()];
    for (x, &y) in embed.iter().enumerate() {
        back[y] = x;
    }
    Ok(f.subgroups()
        .iter()
        .filter(|s| s.is_subgroup_of(q))
        .filter(|s| {
            auts.iter()
                .all(|a| s.members().all(|x| s.contains(embed[a[back[x]]])))
        })
        .cloned()
        .collect())
}

/// `F_Q(Q) ⊴ F` holds exactly when `Q` is normal in `F`; a convenience
/// wrapper used by the verification suites.
pub fn inner_is_normal(f: &FusionSystem, q: &Subgroup) -> Result<bool> {
    if !is_strongly_closed(f, q) {
        return Ok(false);
    }
    let e = inner_system(f, q)?;
    is_normal_subsystem(f, &e)
}

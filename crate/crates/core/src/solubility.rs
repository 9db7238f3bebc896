//! p-solubility of fusion systems and groups, constrained systems, models,
//! `Qd(p)` and Thompson factorization.

use crate::closure::{aut_group, o_p};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, PreFusionSystem, Provenance};
use crate::group::{is_prime, Group, Subgroup, NONE};
use crate::hom::{isomorphism_search, isomorphisms, GroupHom};
use crate::perm::Perm;
use crate::quotients::factor_system;
use crate::subsystems::{centralizer_system, normalizer_system};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolubilityReport {
    /// `T_0 = 1 < T_1 < ...`, each the preimage of `O_p(F/T_{i-1})`.
    pub tower: Vec<Subgroup>,
    pub p_soluble: bool,
    pub p_length: Option<usize>,
    pub constrained: bool,
}

fn require_saturated(f: &FusionSystem) -> Result<()> {
    if f.is_saturated() {
        Ok(())
    } else {
        Err(Error::NotSaturated)
    }
}

pub fn o_p_tower(f: &FusionSystem) -> Result<SolubilityReport> {
    require_saturated(f)?;
    let mut tower = vec![f.group().trivial()];
    loop {
        let t = tower.last().unwrap();
        let fq = factor_system(f, t)?;
        let next = fq.projection.preimage(&o_p(&fq.system)?);
        if &next == t {
            break;
        }
        tower.push(next);
    }
    let p_soluble = tower.last() == Some(f.carrier());
    Ok(SolubilityReport {
        p_length: p_soluble.then(|| tower.len() - 1),
        tower,
        p_soluble,
        constrained: is_constrained(f)?,
    })
}

/// `C_P(O_p(F)) ≤ O_p(F)`.
pub fn is_constrained(f: &FusionSystem) -> Result<bool> {
    require_saturated(f)?;
    let op = o_p(f)?;
    Ok(f.group().centralizer(f.carrier(), &op).is_subgroup_of(&op))
}

/// Whether `g` is p-soluble: peeling off `O_{p'}` and `O_p` alternately
/// reaches the trivial group.
pub fn group_is_p_soluble(g: &Group, p: u32) -> Result<bool> {
    let mut cur: Option<Group> = None;
    loop {
        let h = cur.as_ref().unwrap_or(g);
        if h.order() == 1 {
            return Ok(true);
        }
        let whole = h.whole();
        let mut n = h.core_pprime(&whole, p);
        if n.is_trivial() {
            n = h.core_p(&whole, p);
        }
        if n.is_trivial() {
            return Ok(false);
        }
        let next = h.quotient(&whole, &n)?.group;
        cur = Some(next);
    }
}

/// `O_{p'}(G) = 1`, `C_G(O_p(G)) ≤ O_p(G)` and `F_P(G) ≅ F` along some
/// identification of the Sylow subgroups.
pub fn is_model(g: &Group, f: &FusionSystem) -> Result<bool> {
    let p = f.p();
    let whole = g.whole();
    if !g.core_pprime(&whole, p).is_trivial() {
        return Ok(false);
    }
    let op = g.core_p(&whole, p);
    if !g.centralizer(&whole, &op).is_subgroup_of(&op) {
        return Ok(false);
    }
    let fg = FusionSystem::from_group(g, p)?;
    let (pf, embed) = f.group().subgroup_as_group(f.carrier(), "P")?;
    let pg = fg.group();
    let Some(first) = isomorphism_search(pg, &pf)? else {
        return Err(Error::SylowMismatch);
    };
    let matches = |m: &[usize]| -> Result<bool> {
        let mut map = vec![NONE; pg.order()];
        for (x, &y) in m.iter().enumerate() {
            map[x] = embed[y];
        }
        let theta = GroupHom {
            domain: fg.carrier().clone(),
            codomain: f.carrier().clone(),
            map,
        };
        fg.transport(&theta, f.group().clone())?.equals(f)
    };
    if matches(&first.map)? {
        return Ok(true);
    }
    for m in isomorphisms(pg, &pf)? {
        if matches(&m)? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// `(C_p × C_p) ⋊ SL_2(p)` as the affine maps `v ↦ vM + t` on `F_p^2`.
pub fn qd_group(p: u32) -> Result<Group> {
    if !is_prime(p as usize) {
        return Err(Error::Validation(format!("{p} is not prime")));
    }
    let q = p as usize;
    let pt = |x: usize, y: usize| (x % q) + q * (y % q);
    let affine = |m: [[usize; 2]; 2], t: (usize, usize)| {
        Perm::new(
            (0..q * q)
                .map(|i| {
                    let (x, y) = (i % q, i / q);
                    pt(x * m[0][0] + y * m[1][0] + t.0, x * m[0][1] + y * m[1][1] + t.1)
                })
                .collect(),
        )
        .expect("affine maps are bijections")
    };
    let id = [[1, 0], [0, 1]];
    let gens = vec![
        affine(id, (1, 0)),
        affine(id, (0, 1)),
        affine([[1, 1], [0, 1]], (0, 0)),
        affine([[1, 0], [1, 1]], (0, 0)),
    ];
    Group::from_generators(format!("Qd({p})"), q * q, gens)
}

/// No subquotient `H/N` of `g` is isomorphic to `Qd(p)`.
pub fn is_qdp_free_group(g: &Group, p: u32) -> Result<bool> {
    let qd = qd_group(p)?;
    let target = qd.order();
    if g.order() % target != 0 {
        return Ok(true);
    }
    for h in g.subgroups()? {
        if h.order() % target != 0 {
            continue;
        }
        for n in g.normal_subgroups(h)? {
            if n.order() * target != h.order() {
                continue;
            }
            let quo = g.quotient(h, &n)?.group;
            if isomorphism_search(&quo, &qd)?.is_some() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `F` is generated by `N_F(J(P))` and `C_F(Ω_1(Z(P)))`.
pub fn thompson_factorization_holds(f: &FusionSystem) -> Result<bool> {
    require_saturated(f)?;
    let g = f.group();
    let j = g.thompson_j(f.carrier())?;
    let z = g.omega1(&g.center(f.carrier()), f.p());
    let n = normalizer_system(f, &j)?;
    let c = centralizer_system(f, &z)?;
    let mut seeds = Vec::new();
    for e in [&n, &c] {
        for (qi, _, m) in e.all_isos() {
            seeds.push((f.idx(e.lattice().get(qi)), m.clone()));
        }
    }
    let pre = PreFusionSystem::with_lattice(g.clone(), f.carrier().clone(), f.p(), f.lattice().clone());
    let product = FusionSystem::close(pre, seeds, Provenance::Derived("product".into()));
    product.equals(f)
}

/// `Aut_F(O_p(F))` is p-soluble as a finite group.
pub fn aut_of_o_p_is_p_soluble(f: &FusionSystem) -> Result<bool> {
    let op = o_p(f)?;
    let a = aut_group(f, f.idx(&op));
    group_is_p_soluble(&a.group, f.p())
}

#[cfg(test)]
mod tests;

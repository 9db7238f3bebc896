use std::sync::Arc;

use super::{FusionSystem, PreFusionSystem, Provenance};
use crate::error::{Error, Result};
use crate::group::{Group, NONE};
use crate::hom::GroupHom;

fn same_group(a: &Arc<Group>, b: &Arc<Group>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl PreFusionSystem {
    /// Moves every stored isomorphism `φ: Q → R` to `θ⁻¹φθ: Qθ → Rθ`.
    pub fn transport(&self, theta: &GroupHom, target: Arc<Group>) -> Result<PreFusionSystem> {
        let g = &self.group;
        if theta.domain != self.carrier || theta.map.len() != g.order() {
            return Err(Error::NotAnIsomorphism);
        }
        let mut seen = target.empty_set();
        for x in self.carrier.members() {
            let y = theta.map[x];
            if y == NONE || y >= target.order() || !seen.insert(y) {
                return Err(Error::NotAnIsomorphism);
            }
        }
        for x in self.carrier.members() {
            for y in self.carrier.members() {
                if theta.map[g.mul(x, y)] != target.mul(theta.map[x], theta.map[y]) {
                    return Err(Error::NotAnIsomorphism);
                }
            }
        }
        let image = theta.image(target.order());
        let mut out = if same_group(&target, g) && image == self.carrier {
            PreFusionSystem::with_lattice(target.clone(), image, self.p, self.lattice.clone())
        } else {
            PreFusionSystem::new(target.clone(), image, self.p)?
        };
        for (q, _, map) in self.all_isos() {
            let dom = theta.image_of(self.lattice.get(q), target.order());
            let mut m = vec![NONE; target.order()];
            for x in self.lattice.get(q).members() {
                m[theta.map[x]] = theta.map[map[x]];
            }
            let qi = out.idx(&dom);
            out.insert(qi, m);
        }
        Ok(out)
    }
}

impl FusionSystem {
    pub fn transport(&self, theta: &GroupHom, target: Arc<Group>) -> Result<FusionSystem> {
        let pre = self.as_prefusion().transport(theta, target)?;
        Ok(FusionSystem::from_closed(pre, Provenance::Derived("transport".into())))
    }

    /// Systems on the same ambient group; the result lives on the
    /// intersection of the two carriers and keeps the isomorphisms lying in
    /// both.
    pub fn intersect(&self, other: &FusionSystem) -> Result<FusionSystem> {
        if !same_group(&self.group, &other.group) || self.p != other.p {
            return Err(Error::DifferentCarrier);
        }
        let carrier = self.carrier.intersect(&other.carrier);
        let mut out = if carrier == self.carrier {
            PreFusionSystem::with_lattice(self.group.clone(), carrier.clone(), self.p, self.lattice.clone())
        } else {
            PreFusionSystem::new(self.group.clone(), carrier.clone(), self.p)?
        };
        for qi in 0..out.lattice.len() {
            let q = out.lattice.get(qi).clone();
            let i1 = self.idx(&q);
            let i2 = other.idx(&q);
            for (&r, maps) in &self.table[i1] {
                let rs = self.lattice.get(r);
                if !rs.is_subgroup_of(&carrier) {
                    continue;
                }
                let r2 = other.idx(rs);
                for m in maps {
                    if other.contains_map(i2, r2, m) {
                        out.insert(qi, m.clone());
                    }
                }
            }
        }
        Ok(FusionSystem::from_closed(out, Provenance::Derived("intersection".into())))
    }

    /// Table equality. Systems on different carriers of one ambient group
    /// are simply unequal.
    pub fn equals(&self, other: &FusionSystem) -> Result<bool> {
        self.as_prefusion().equals(other.as_prefusion())
    }
}

impl PreFusionSystem {
    pub fn equals(&self, other: &PreFusionSystem) -> Result<bool> {
        if !same_group(&self.group, &other.group) {
            return Err(Error::DifferentCarrier);
        }
        if self.carrier != other.carrier || self.p != other.p {
            return Ok(false);
        }
        if Arc::ptr_eq(&self.lattice, &other.lattice) || self.lattice.subgroups() == other.lattice.subgroups() {
            return Ok(self.table == other.table);
        }
        Ok(false)
    }
}

use std::collections::HashSet;

use super::{conjugation_map, FusionSystem, Map};
use crate::error::{Error, Result};
use crate::group::{p_part, Subgroup, NONE};
use crate::hom::GroupHom;

/// Why a system fails to be saturated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SaturationFailure {
    /// `Aut_P(P)` is not a Sylow subgroup of `Aut_F(P)`.
    SylowAxiom { aut_order: usize, inner_order: usize },
    /// An isomorphism with fully normalized codomain that does not extend to `N_φ`.
    Extension { phi: GroupHom, n_phi: Subgroup },
}

impl FusionSystem {
    /// `Aut_P(R)` as a set of maps.
    fn aut_p(&self, r: &Subgroup) -> HashSet<Map> {
        let n = self.group.normalizer(&self.carrier, r);
        n.members()
            .map(|g| conjugation_map(&self.group, r, g))
            .collect()
    }

    /// `N_φ = { x ∈ N_P(Q) : φ⁻¹ c_x φ ∈ Aut_P(R) }`.
    pub fn n_phi(&self, phi: &GroupHom) -> Result<Subgroup> {
        if !self.contains_hom(phi) {
            return Err(Error::MorphismNotInSystem);
        }
        let r = phi.image(self.group.order());
        Ok(self.n_phi_unchecked(&phi.domain, &r, &phi.map, &self.aut_p(&r)))
    }

    fn n_phi_unchecked(&self, q: &Subgroup, r: &Subgroup, map: &Map, aut_p_r: &HashSet<Map>) -> Subgroup {
        let g = &self.group;
        let mut inv = vec![NONE; g.order()];
        for x in q.members() {
            inv[map[x]] = x;
        }
        let norm = g.normalizer(&self.carrier, q);
        let keep = norm.members().filter(|&x| {
            let mut m = vec![NONE; g.order()];
            for y in r.members() {
                m[y] = map[g.conj(inv[y], x)];
            }
            aut_p_r.contains(&m)
        });
        Subgroup::from_bits(crate::bitset::BitSet::from_indices(g.order(), keep))
    }

    pub fn is_fully_normalized(&self, q: &Subgroup) -> bool {
        self.index_of(q)
            .is_some_and(|i| self.fully_normalized_flags()[i])
    }

    pub(crate) fn fully_normalized_flags(&self) -> &[bool] {
        self.fully_normalized.get_or_init(|| {
            (0..self.lattice.len())
                .map(|i| {
                    let own = self.lattice.normalizer_order(i);
                    self.table[i]
                        .keys()
                        .all(|&j| self.lattice.normalizer_order(j) <= own)
                })
                .collect()
        })
    }

    pub fn is_saturated(&self) -> bool {
        self.saturation_failure().is_none()
    }

    /// Checks both saturation axioms exhaustively, returning the first
    /// failure in canonical order.
    pub fn saturation_failure(&self) -> Option<&SaturationFailure> {
        self.saturated
            .get_or_init(|| self.find_saturation_failure())
            .as_ref()
    }

    fn find_saturation_failure(&self) -> Option<SaturationFailure> {
        let top = self.idx(&self.carrier);
        let aut_order = self.iso_maps(top, top).count();
        let inner_order = self.aut_p(&self.carrier).len();
        if p_part(aut_order, self.p) != inner_order {
            return Some(SaturationFailure::SylowAxiom {
                aut_order,
                inner_order,
            });
        }
        let fully = self.fully_normalized_flags();
        for (ri, r) in self.lattice.subgroups().iter().enumerate() {
            if !fully[ri] {
                continue;
            }
            let aut_p_r = self.aut_p(r);
            for &qi in self.table[ri].keys() {
                let q = self.lattice.get(qi);
                for map in self.iso_maps(qi, ri) {
                    let n = self.n_phi_unchecked(q, r, map, &aut_p_r);
                    let ni = self.idx(&n);
                    let extends = self.table[ni]
                        .values()
                        .flatten()
                        .any(|psi| q.members().all(|x| psi[x] == map[x]));
                    if !extends {
                        return Some(SaturationFailure::Extension {
                            phi: self.to_hom(qi, ri, map),
                            n_phi: n,
                        });
                    }
                }
            }
        }
        None
    }
}

use std::collections::HashMap;

use crate::error::Result;
use crate::group::{Group, Subgroup};

/// The subgroups of a carrier `P`, in canonical order, with the data the
/// closure engine and saturation checks need repeatedly.
#[derive(Debug)]
pub struct Lattice {
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    maximal: Vec<Vec<usize>>,
    normalizer_order: Vec<usize>,
}

impl Lattice {
    pub fn new(group: &Group, carrier: &Subgroup) -> Result<Self> {
        let subgroups = if carrier.order() == group.order() {
            group.subgroups()?.to_vec()
        } else {
            group.subgroups_within(carrier)?
        };
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        // in a p-group the maximal subgroups are exactly those of index p
        let maximal = subgroups
            .iter()
            .map(|s| {
                subgroups
                    .iter()
                    .enumerate()
                    .filter(|(_, t)| {
                        t.order() < s.order()
                            && t.is_subgroup_of(s)
                            && crate::group::is_prime(s.order() / t.order())
                    })
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        let normalizer_order = subgroups
            .iter()
            .map(|s| group.normalizer(carrier, s).order())
            .collect();
        Ok(Lattice {
            subgroups,
            index,
            maximal,
            normalizer_order,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn maximal(&self, i: usize) -> &[usize] {
        &self.maximal[i]
    }

    /// `|N_P(Q)|` for the `i`-th subgroup.
    pub fn normalizer_order(&self, i: usize) -> usize {
        self.normalizer_order[i]
    }

    /// Indices of all subgroups of the `i`-th subgroup.
    pub fn below(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let s = &self.subgroups[i];
        (0..=i).filter(move |&j| self.subgroups[j].is_subgroup_of(s))
    }
}

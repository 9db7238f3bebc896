//! Finite permutation groups with fully enumerated elements.
//!
//! Every element of a [`Group`] gets an [`ElementId`]: its position in the
//! lexicographically sorted list of image arrays. The identity is always
//! element 0. Subgroups are bitsets over these ids.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub type ElementId = usize;

/// Marker for "outside the domain" in total element maps.
pub const NONE: ElementId = usize::MAX;

pub const DEFAULT_ORDER_CAP: usize = 20_000;

const MUL_TABLE_LIMIT: usize = 1024;

pub struct Group {
    name: String,
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, ElementId>,
    mul: Option<Vec<u32>>,
    inv: Vec<ElementId>,
    orders: Vec<usize>,
    cap: usize,
    lattice: OnceLock<Vec<Subgroup>>,
}

impl fmt::Debug for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Group")
            .field("name", &self.name)
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for Group {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for Group {}

/// A subgroup of some parent [`Group`], stored as the set of member ids.
///
/// The parent is not stored; every operation takes the parent explicitly.
/// Ordering is by order, then lexicographically on the sorted member list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    bits: BitSet,
}

impl Subgroup {
    pub(crate) fn from_bits(bits: BitSet) -> Self {
        Subgroup { bits }
    }

    pub fn bits(&self) -> &BitSet {
        &self.bits
    }

    pub fn order(&self) -> usize {
        self.bits.count()
    }

    pub fn contains(&self, x: ElementId) -> bool {
        self.bits.contains(x)
    }

    pub fn members(&self) -> impl Iterator<Item = ElementId> + '_ {
        self.bits.iter()
    }

    pub fn member_vec(&self) -> Vec<ElementId> {
        self.bits.iter().collect()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            bits: self.bits.intersection(&other.bits),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order()
            .cmp(&other.order())
            .then_with(|| self.bits.cmp_members(&other.bits))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup{:?}", self.member_vec())
    }
}

/// Named constructions accepted by [`Group::standard_subgroup`].
#[derive(Clone, Debug)]
pub enum SubgroupKind {
    Center,
    Normalizer(Subgroup),
    Centralizer(Subgroup),
    Commutator(Subgroup, Subgroup),
    Omega1(u32),
    ThompsonJ,
    Sylow(u32),
    CoreP(u32),
    CorePPrime(u32),
    Join(Subgroup, Subgroup),
    SetProduct(Subgroup, Subgroup),
}

impl Group {
    pub fn from_generators(name: impl Into<String>, degree: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::with_cap(name, degree, gens, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(
        name: impl Into<String>,
        degree: usize,
        gens: Vec<Perm>,
        cap: usize,
    ) -> Result<Self> {
        for (index, g) in gens.iter().enumerate() {
            if g.degree() != degree {
                return Err(Error::NotAPermutation { index, degree });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(e) = queue.pop_front() {
            for g in &gens {
                let x = e.then(g);
                if !seen.contains(&x) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    seen.insert(x.clone());
                    queue.push_back(x);
                }
            }
        }
        let mut elements: Vec<Perm> = seen.into_iter().collect();
        elements.sort();
        Ok(Self::from_sorted(name.into(), degree, gens, elements, cap))
    }

    fn from_sorted(
        name: String,
        degree: usize,
        generators: Vec<Perm>,
        elements: Vec<Perm>,
        cap: usize,
    ) -> Self {
        let n = elements.len();
        let index: HashMap<Perm, ElementId> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inv: Vec<ElementId> = elements.iter().map(|p| index[&p.inverse()]).collect();
        let mul = (n <= MUL_TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for a in 0..n {
                for b in 0..n {
                    t[a * n + b] = index[&elements[a].then(&elements[b])] as u32;
                }
            }
            t
        });
        let mut g = Group {
            name,
            degree,
            generators,
            elements,
            index,
            mul,
            inv,
            orders: Vec::new(),
            cap,
            lattice: OnceLock::new(),
        };
        g.orders = (0..n)
            .map(|x| {
                let mut k = 1;
                let mut y = x;
                while y != 0 {
                    y = g.mul(y, x);
                    k += 1;
                }
                k
            })
            .collect();
        g
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn order_cap(&self) -> usize {
        self.cap
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn generator_ids(&self) -> Vec<ElementId> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn element(&self, x: ElementId) -> &Perm {
        &self.elements[x]
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn index_of(&self, p: &Perm) -> Option<ElementId> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.mul {
            Some(t) => t[a * self.elements.len() + b] as ElementId,
            None => self.index[&self.elements[a].then(&self.elements[b])],
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a]
    }

    pub fn pow(&self, a: ElementId, k: usize) -> ElementId {
        (0..k).fold(0, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: ElementId) -> usize {
        self.orders[a]
    }

    /// `g^-1 x g`
    #[inline]
    pub fn conj(&self, x: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv[g], x), g)
    }

    pub fn commutator_elem(&self, x: ElementId, y: ElementId) -> ElementId {
        self.mul(self.mul(self.inv[x], self.inv[y]), self.mul(x, y))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_bits(BitSet::full(self.order()))
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_bits(BitSet::from_indices(self.order(), [0]))
    }

    pub fn empty_set(&self) -> BitSet {
        BitSet::new(self.order())
    }

    pub fn is_abelian(&self, h: &Subgroup) -> bool {
        let gens = self.generating_set(h);
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Validates that `ids` is closed under multiplication.
    pub fn subgroup_from_ids(&self, ids: impl IntoIterator<Item = ElementId>) -> Result<Subgroup> {
        let mut bits = self.empty_set();
        for i in ids {
            if i >= self.order() {
                return Err(Error::NotASubgroup);
            }
            bits.insert(i);
        }
        if !bits.contains(0) {
            return Err(Error::NotASubgroup);
        }
        let members: Vec<_> = bits.iter().collect();
        for &a in &members {
            for &b in &members {
                if !bits.contains(self.mul(a, b)) {
                    return Err(Error::NotASubgroup);
                }
            }
        }
        Ok(Subgroup::from_bits(bits))
    }

    pub fn generate(&self, gens: &[ElementId]) -> Subgroup {
        let mut bits = self.empty_set();
        bits.insert(0);
        let mut queue = VecDeque::from([0]);
        while let Some(e) = queue.pop_front() {
            for &g in gens {
                let x = self.mul(e, g);
                if bits.insert(x) {
                    queue.push_back(x);
                }
            }
        }
        Subgroup::from_bits(bits)
    }

    pub fn generate_perms(&self, gens: &[Perm]) -> Result<Subgroup> {
        let ids = gens
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.generate(&ids))
    }

    /// A small generating set, chosen greedily in element order.
    pub fn generating_set(&self, h: &Subgroup) -> Vec<ElementId> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for x in h.members() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.generate(&gens);
                if cur.order() == h.order() {
                    break;
                }
            }
        }
        gens
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        if a.is_subgroup_of(b) {
            return b.clone();
        }
        if b.is_subgroup_of(a) {
            return a.clone();
        }
        let mut gens = self.generating_set(a);
        gens.extend(self.generating_set(b));
        self.generate(&gens)
    }

    pub fn join_all<'a>(&self, subs: impl IntoIterator<Item = &'a Subgroup>) -> Subgroup {
        subs.into_iter()
            .fold(self.trivial(), |acc, s| self.join(&acc, s))
    }

    pub fn conjugate(&self, q: &Subgroup, g: ElementId) -> Subgroup {
        let mut bits = self.empty_set();
        for x in q.members() {
            bits.insert(self.conj(x, g));
        }
        Subgroup::from_bits(bits)
    }

    pub fn normalizer(&self, within: &Subgroup, q: &Subgroup) -> Subgroup {
        let gens = self.generating_set(q);
        let bits = BitSet::from_indices(
            self.order(),
            within
                .members()
                .filter(|&g| gens.iter().all(|&x| q.contains(self.conj(x, g)))),
        );
        Subgroup::from_bits(bits)
    }

    pub fn centralizer(&self, within: &Subgroup, q: &Subgroup) -> Subgroup {
        let gens = self.generating_set(q);
        let bits = BitSet::from_indices(
            self.order(),
            within
                .members()
                .filter(|&g| gens.iter().all(|&x| self.mul(x, g) == self.mul(g, x))),
        );
        Subgroup::from_bits(bits)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        self.centralizer(h, h).intersect(h)
    }

    pub fn commutator(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut gens = Vec::new();
        let mut seen = self.empty_set();
        for x in a.members() {
            for y in b.members() {
                let c = self.commutator_elem(x, y);
                if seen.insert(c) {
                    gens.push(c);
                }
            }
        }
        self.generate(&gens)
    }

    pub fn is_normal(&self, n: &Subgroup, h: &Subgroup) -> bool {
        if !n.is_subgroup_of(h) {
            return false;
        }
        let gn = self.generating_set(n);
        self.generating_set(h)
            .into_iter()
            .all(|g| gn.iter().all(|&x| n.contains(self.conj(x, g))))
    }

    pub fn is_p_group(&self, h: &Subgroup, p: u32) -> bool {
        is_power_of(h.order(), p)
    }

    /// Subgroup generated by the elements of `h` of order dividing `p`.
    pub fn omega1(&self, h: &Subgroup, p: u32) -> Subgroup {
        let gens: Vec<_> = h
            .members()
            .filter(|&x| (p as usize) % self.element_order(x) == 0)
            .collect();
        self.generate(&gens)
    }

    /// Join of the abelian subgroups of `h` of maximal order.
    pub fn thompson_j(&self, h: &Subgroup) -> Result<Subgroup> {
        let subs = self.subgroups_within(h)?;
        let abelian: Vec<&Subgroup> = subs.iter().filter(|s| self.is_abelian(s)).collect();
        let max = abelian.iter().map(|s| s.order()).max().unwrap_or(1);
        Ok(self.join_all(abelian.into_iter().filter(|s| s.order() == max)))
    }

    /// A Sylow `p`-subgroup of `h`, grown greedily from the trivial subgroup.
    ///
    /// At each step the smallest element (by id) normalizing the current
    /// `p`-subgroup `S`, lying outside it, and with `p`-th power inside it is
    /// adjoined, which multiplies the order by exactly `p`.
    pub fn sylow(&self, h: &Subgroup, p: u32) -> Subgroup {
        let target = p_part(h.order(), p);
        let mut s = self.trivial();
        while s.order() < target {
            let norm = self.normalizer(h, &s);
            let g = norm
                .members()
                .find(|&g| !s.contains(g) && s.contains(self.pow(g, p as usize)))
                .expect("a p-subgroup below Sylow order has a proper p-overgroup in its normalizer");
            let mut gens = self.generating_set(&s);
            gens.push(g);
            s = self.generate(&gens);
        }
        s
    }

    /// `O_p(h)`: the largest normal `p`-subgroup, as the core of a Sylow subgroup.
    pub fn core_p(&self, h: &Subgroup, p: u32) -> Subgroup {
        let s = self.sylow(h, p);
        h.members()
            .fold(s.clone(), |acc, g| acc.intersect(&self.conjugate(&s, g)))
    }

    pub fn normal_closure(&self, h: &Subgroup, gens: &[ElementId]) -> Subgroup {
        let mut conjugates = Vec::new();
        let mut seen = self.empty_set();
        for &x in gens {
            for g in h.members() {
                let c = self.conj(x, g);
                if seen.insert(c) {
                    conjugates.push(c);
                }
            }
        }
        self.generate(&conjugates)
    }

    /// `O_{p'}(h)`: the largest normal subgroup of order prime to `p`.
    pub fn core_pprime(&self, h: &Subgroup, p: u32) -> Subgroup {
        let mut acc = self.trivial();
        for x in h.members() {
            if acc.contains(x) || self.element_order(x) % p as usize == 0 {
                continue;
            }
            let n = self.normal_closure(h, &[x]);
            if n.order() % p as usize != 0 {
                acc = self.join(&acc, &n);
            }
        }
        acc
    }

    pub fn set_product(&self, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        let mut bits = self.empty_set();
        for x in a.members() {
            for y in b.members() {
                bits.insert(self.mul(x, y));
            }
        }
        let s = Subgroup::from_bits(bits);
        if self.generate(&s.member_vec()) == s {
            Ok(s)
        } else {
            Err(Error::ProductNotASubgroup)
        }
    }

    /// `1 = Z_0 <= Z_1 <= ...` up to the hypercenter of `q`.
    pub fn upper_central_series(&self, q: &Subgroup) -> Vec<Subgroup> {
        let gens = self.generating_set(q);
        let mut series = vec![self.trivial()];
        loop {
            let last = series.last().unwrap();
            let bits = BitSet::from_indices(
                self.order(),
                q.members().filter(|&x| {
                    gens.iter()
                        .all(|&y| last.contains(self.commutator_elem(x, y)))
                }),
            );
            let next = Subgroup::from_bits(bits);
            if &next == last {
                return series;
            }
            series.push(next);
        }
    }

    pub fn standard_subgroup(&self, kind: &SubgroupKind) -> Result<Subgroup> {
        let g = self.whole();
        let check = |s: &Subgroup| {
            if self.generate(&s.member_vec()) == *s {
                Ok(())
            } else {
                Err(Error::NotASubgroup)
            }
        };
        Ok(match kind {
            SubgroupKind::Center => self.center(&g),
            SubgroupKind::Normalizer(q) => {
                check(q)?;
                self.normalizer(&g, q)
            }
            SubgroupKind::Centralizer(q) => {
                check(q)?;
                self.centralizer(&g, q)
            }
            SubgroupKind::Commutator(a, b) => {
                check(a)?;
                check(b)?;
                self.commutator(a, b)
            }
            SubgroupKind::Omega1(p) => self.omega1(&g, *p),
            SubgroupKind::ThompsonJ => self.thompson_j(&g)?,
            SubgroupKind::Sylow(p) => self.sylow(&g, *p),
            SubgroupKind::CoreP(p) => self.core_p(&g, *p),
            SubgroupKind::CorePPrime(p) => self.core_pprime(&g, *p),
            SubgroupKind::Join(a, b) => {
                check(a)?;
                check(b)?;
                self.join(a, b)
            }
            SubgroupKind::SetProduct(a, b) => {
                check(a)?;
                check(b)?;
                self.set_product(a, b)?
            }
        })
    }

    /// All subgroups of the group, ordered by order then member list.
    pub fn subgroups(&self) -> Result<&[Subgroup]> {
        if let Some(l) = self.lattice.get() {
            return Ok(l);
        }
        let l = self.subgroups_within(&self.whole())?;
        Ok(self.lattice.get_or_init(|| l))
    }

    /// All subgroups of `h`, by layered extension with cyclic subgroups of
    /// prime-power order.
    pub fn subgroups_within(&self, h: &Subgroup) -> Result<Vec<Subgroup>> {
        if h.order() > self.cap {
            return Err(Error::OrderCapExceeded { cap: self.cap });
        }
        if let Some(l) = self.lattice.get() {
            return Ok(l.iter().filter(|s| s.is_subgroup_of(h)).cloned().collect());
        }
        let mut cyclic: Vec<(Subgroup, ElementId)> = Vec::new();
        let mut seen_cyclic: HashSet<Subgroup> = HashSet::new();
        for x in h.members() {
            let o = self.element_order(x);
            if o > 1 && is_prime_power(o) {
                let c = self.generate(&[x]);
                if seen_cyclic.insert(c.clone()) {
                    cyclic.push((c, x));
                }
            }
        }
        let mut found: HashMap<Subgroup, Vec<ElementId>> = HashMap::new();
        let trivial = self.trivial();
        found.insert(trivial.clone(), Vec::new());
        let mut queue = VecDeque::from([trivial]);
        while let Some(k) = queue.pop_front() {
            let gens_k = found[&k].clone();
            for (c, x) in &cyclic {
                if c.is_subgroup_of(&k) {
                    continue;
                }
                let mut gens = gens_k.clone();
                gens.push(*x);
                let j = self.generate(&gens);
                if !found.contains_key(&j) {
                    found.insert(j.clone(), gens);
                    queue.push_back(j);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_keys().collect();
        subs.sort();
        Ok(subs)
    }

    /// `h` as a group in its own right, with the embedding of its element
    /// ids into this group.
    pub fn subgroup_as_group(&self, h: &Subgroup, name: &str) -> Result<(Group, Vec<ElementId>)> {
        let gens = self
            .generating_set(h)
            .into_iter()
            .map(|x| self.elements[x].clone())
            .collect();
        let sub = Group::with_cap(name, self.degree, gens, self.cap)?;
        let embed = sub.elements().iter().map(|p| self.index[p]).collect();
        Ok((sub, embed))
    }

    pub fn normal_subgroups(&self, h: &Subgroup) -> Result<Vec<Subgroup>> {
        Ok(self
            .subgroups_within(h)?
            .into_iter()
            .filter(|n| self.is_normal(n, h))
            .collect())
    }

    /// Realizes `h / n` as a permutation group on the right cosets of `n`.
    ///
    /// Cosets are numbered by their smallest member. The returned projection
    /// maps every element of `h` to its image; elements outside `h` map to
    /// [`NONE`].
    pub fn quotient(&self, h: &Subgroup, n: &Subgroup) -> Result<Quotient> {
        if !self.is_normal(n, h) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![NONE; self.order()];
        let mut reps = Vec::new();
        for x in h.members() {
            if coset_of[x] != NONE {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for y in n.members() {
                coset_of[self.mul(y, x)] = c;
            }
        }
        let k = reps.len();
        let action = |x: ElementId| {
            Perm::new_unchecked(reps.iter().map(|&r| coset_of[self.mul(r, x)]).collect())
        };
        let gens: Vec<Perm> = self.generating_set(h).into_iter().map(action).collect();
        let group = Group::with_cap(format!("{}/N", self.name), k, gens, self.cap)?;
        let mut projection = vec![NONE; self.order()];
        for x in h.members() {
            projection[x] = group.index_of(&action(x)).expect("coset action lands in quotient");
        }
        Ok(Quotient {
            group,
            projection,
            kernel: n.clone(),
        })
    }
}

/// Result of [`Group::quotient`].
#[derive(Debug)]
pub struct Quotient {
    pub group: Group,
    pub projection: Vec<ElementId>,
    pub kernel: Subgroup,
}

impl Quotient {
    pub fn image(&self, s: &Subgroup) -> Subgroup {
        let mut bits = self.group.empty_set();
        for x in s.members() {
            bits.insert(self.projection[x]);
        }
        Subgroup::from_bits(bits)
    }

    /// Full preimage inside the numerator.
    pub fn preimage(&self, s: &Subgroup, parent_order: usize) -> Subgroup {
        let bits = BitSet::from_indices(
            parent_order,
            (0..parent_order).filter(|&x| self.projection[x] != NONE && s.contains(self.projection[x])),
        );
        Subgroup::from_bits(bits)
    }
}

pub fn is_power_of(n: usize, p: u32) -> bool {
    let p = p as usize;
    let mut n = n;
    while n > 1 && n % p == 0 {
        n /= p;
    }
    n == 1
}

pub fn p_part(n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut n = n;
    let mut part = 1;
    while n % p == 0 {
        n /= p;
        part *= p;
    }
    part
}

pub fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

pub fn is_prime_power(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    is_power_of(n, p as u32)
}

/// The prime dividing a nontrivial prime power.
pub fn prime_of(n: usize) -> Option<u32> {
    if is_prime_power(n) {
        (2..=n).find(|d| n % d == 0).map(|d| d as u32)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(images: &[usize]) -> Perm {
        Perm::new(images.to_vec()).unwrap()
    }

    fn d8() -> Group {
        Group::from_generators("D8", 4, vec![perm(&[1, 2, 3, 0]), perm(&[2, 1, 0, 3])]).unwrap()
    }

    fn s4() -> Group {
        Group::from_generators("S4", 4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])]).unwrap()
    }

    #[test]
    fn enumeration_orders() {
        assert_eq!(d8().order(), 8);
        assert_eq!(s4().order(), 24);
        let t = Group::from_generators("1", 1, vec![]).unwrap();
        assert_eq!(t.order(), 1);
        assert!(t.element(0).is_identity());
    }

    #[test]
    fn order_cap_is_enforced() {
        let err = Group::with_cap("S4", 4, vec![perm(&[1, 0, 2, 3]), perm(&[1, 2, 3, 0])], 10);
        assert!(matches!(err, Err(Error::OrderCapExceeded { cap: 10 })));
    }

    #[test]
    fn wrong_degree_generator_is_rejected() {
        let err = Group::from_generators("x", 4, vec![perm(&[1, 0, 2])]);
        assert!(matches!(err, Err(Error::NotAPermutation { index: 0, degree: 4 })));
    }

    #[test]
    fn identity_first_and_inverses() {
        let g = s4();
        assert!(g.element(0).is_identity());
        for x in 0..g.order() {
            assert_eq!(g.mul(x, g.inv(x)), 0);
        }
    }

    #[test]
    fn d8_center_and_thompson() {
        let g = d8();
        let z = g.center(&g.whole());
        assert_eq!(z.order(), 2);
        let r2 = g.index_of(&perm(&[2, 3, 0, 1])).unwrap();
        assert!(z.contains(r2));
        assert_eq!(g.thompson_j(&g.whole()).unwrap(), g.whole());
        let series = g.upper_central_series(&g.whole());
        assert_eq!(series.iter().map(|s| s.order()).collect::<Vec<_>>(), vec![1, 2, 8]);
    }

    #[test]
    fn s4_cores() {
        let g = s4();
        let w = g.whole();
        let v4 = g.core_p(&w, 2);
        assert_eq!(v4.order(), 4);
        assert!(v4.contains(g.index_of(&perm(&[1, 0, 3, 2])).unwrap()));
        assert!(g.core_pprime(&w, 2).is_trivial());
        assert!(g.core_p(&w, 3).is_trivial());
        assert_eq!(g.sylow(&w, 2).order(), 8);
        assert_eq!(g.sylow(&w, 3).order(), 3);
    }

    #[test]
    fn omega1_of_c4() {
        let g = Group::from_generators("C4", 4, vec![perm(&[1, 2, 3, 0])]).unwrap();
        assert_eq!(g.omega1(&g.whole(), 2).order(), 2);
    }

    #[test]
    fn quotient_of_d8_by_center_is_klein_four() {
        let g = d8();
        let z = g.center(&g.whole());
        let q = g.quotient(&g.whole(), &z).unwrap();
        assert_eq!(q.group.order(), 4);
        assert!((1..4).all(|x| q.group.element_order(x) == 2));
        let k: Vec<_> = (0..8).filter(|&x| q.projection[x] == 0).collect();
        assert_eq!(k, z.member_vec());
        let all = q.group.whole();
        assert_eq!(q.preimage(&all, 8), g.whole());
    }

    #[test]
    fn quotient_by_non_normal_fails() {
        let g = s4();
        let t = g.generate(&[g.index_of(&perm(&[1, 0, 2, 3])).unwrap()]);
        assert!(matches!(g.quotient(&g.whole(), &t), Err(Error::NotNormal)));
    }

    #[test]
    fn set_product_requires_subgroup() {
        let g = s4();
        let a = g.generate(&[g.index_of(&perm(&[1, 0, 2, 3])).unwrap()]);
        let b = g.generate(&[g.index_of(&perm(&[0, 2, 1, 3])).unwrap()]);
        assert!(matches!(g.set_product(&a, &b), Err(Error::ProductNotASubgroup)));
        let v4 = g.core_p(&g.whole(), 2);
        assert_eq!(g.set_product(&v4, &a).unwrap().order(), 8);
    }

    #[test]
    fn standard_subgroup_rejects_non_subgroups() {
        let g = d8();
        let bogus = Subgroup::from_bits(BitSet::from_indices(8, [0, 1]));
        let r = g.standard_subgroup(&SubgroupKind::Normalizer(bogus));
        if g.element_order(1) != 2 {
            assert!(matches!(r, Err(Error::NotASubgroup)));
        }
        assert_eq!(g.standard_subgroup(&SubgroupKind::Center).unwrap().order(), 2);
    }

    #[test]
    fn prime_helpers() {
        assert!(is_prime_power(8) && is_prime_power(9) && !is_prime_power(12) && !is_prime_power(1));
        assert_eq!(p_part(24, 2), 8);
        assert_eq!(prime_of(27), Some(3));
        assert!(is_prime(5) && !is_prime(9));
    }
}

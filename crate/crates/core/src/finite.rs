//! Explicitly enumerated groups: elements are numbered by their position in
//! lexicographic order of image lists, so the identity is element 0.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashMap;

use crate::bsgs::PermGroup;
use crate::error::{Error, Result};
use crate::perm::Perm;

pub type Elem = u32;

/// Groups up to this order get a full multiplication table.
const TABLE_LIMIT: usize = 1024;
const MAX_BASE: usize = 64;

pub const DEFAULT_ELEMENT_BUDGET: u128 = 200_000;

pub struct FiniteGroup {
    perm: PermGroup,
    degree: usize,
    base: Vec<usize>,
    images: Vec<u32>,
    lookup: FxHashMap<Box<[u32]>, Elem>,
    table: Option<Vec<Elem>>,
    inverses: Vec<Elem>,
    orders: Vec<u32>,
    gens: Vec<Elem>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .finish()
    }
}

impl FiniteGroup {
    pub fn new(perm: &PermGroup, budget: u128) -> Result<Self> {
        let elems = perm.elements(budget)?;
        let degree = perm.degree();
        let base = perm.base();
        if base.len() > MAX_BASE {
            return Err(Error::Capacity(format!("base of length {}", base.len())));
        }
        let n = elems.len();
        let mut images = Vec::with_capacity(n * degree);
        let mut lookup = FxHashMap::default();
        lookup.reserve(n);
        for (i, e) in elems.iter().enumerate() {
            images.extend_from_slice(e.images());
            let key: Box<[u32]> = base.iter().map(|&b| e.images()[b]).collect();
            lookup.insert(key, i as Elem);
        }
        let mut g = FiniteGroup {
            perm: perm.clone(),
            degree,
            base,
            images,
            lookup,
            table: None,
            inverses: Vec::new(),
            orders: Vec::new(),
            gens: Vec::new(),
        };
        g.inverses = elems
            .iter()
            .map(|e| g.id_of(&e.inverse()).expect("inverse lies in the group"))
            .collect();
        g.orders = elems.iter().map(|e| e.order() as u32).collect();
        g.gens = perm
            .generators()
            .iter()
            .filter(|p| !p.is_identity())
            .map(|p| g.id_of(p).expect("generator lies in the group"))
            .collect();
        g.gens.dedup();
        if n <= TABLE_LIMIT {
            let mut table = vec![0; n * n];
            for a in 0..n {
                for b in 0..n {
                    table[a * n + b] = g.mul_slow(a as Elem, b as Elem);
                }
            }
            g.table = Some(table);
        }
        Ok(g)
    }

    pub fn from_generators(degree: usize, gens: &[Perm], budget: u128) -> Result<Self> {
        FiniteGroup::new(&PermGroup::new(degree, gens)?, budget)
    }

    pub fn perm_group(&self) -> &PermGroup {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.inverses.len()
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn images(&self, e: Elem) -> &[u32] {
        let s = e as usize * self.degree;
        &self.images[s..s + self.degree]
    }

    pub fn perm(&self, e: Elem) -> Perm {
        Perm::from_images_unchecked(self.images(e).to_vec())
    }

    pub fn id_of(&self, p: &Perm) -> Option<Elem> {
        if p.degree() != self.degree {
            return None;
        }
        let mut buf = [0u32; MAX_BASE];
        for (k, &b) in self.base.iter().enumerate() {
            buf[k] = p.images()[b];
        }
        let id = *self.lookup.get(&buf[..self.base.len()])?;
        (self.images(id) == p.images()).then_some(id)
    }

    fn mul_slow(&self, a: Elem, b: Elem) -> Elem {
        let ia = self.images(a);
        let ib = self.images(b);
        let mut buf = [0u32; MAX_BASE];
        for (k, &x) in self.base.iter().enumerate() {
            buf[k] = ib[ia[x] as usize];
        }
        self.lookup[&buf[..self.base.len()]]
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a as usize * self.order() + b as usize],
            None => self.mul_slow(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverses[a as usize]
    }

    /// `g^-1 x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    pub fn pow(&self, x: Elem, e: u64) -> Elem {
        let mut acc = self.identity();
        for _ in 0..(e % self.elem_order(x) as u64) {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn elem_order(&self, x: Elem) -> u32 {
        self.orders[x as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    pub fn conj_table(&self, g: Elem) -> Vec<Elem> {
        self.elements().map(|x| self.conj(x, g)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.gens
            .iter()
            .all(|&a| self.gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_soluble(&self) -> Result<bool> {
        self.perm.is_soluble()
    }

    pub fn whole(&self) -> Subgroup {
        let mut elems = FixedBitSet::with_capacity(self.order());
        elems.insert_range(..);
        Subgroup {
            gens: self.gens.clone(),
            elems,
            order: self.order(),
        }
    }

    pub fn trivial(&self) -> Subgroup {
        let mut elems = FixedBitSet::with_capacity(self.order());
        elems.insert(0);
        Subgroup {
            gens: Vec::new(),
            elems,
            order: 1,
        }
    }

    pub fn closure(&self, gens: &[Elem]) -> Subgroup {
        let mut h = self.trivial();
        for &g in gens {
            h = self.extend(&h, g);
        }
        h
    }

    /// `<h, g>`.
    pub fn extend(&self, h: &Subgroup, g: Elem) -> Subgroup {
        self.extend_bounded(h, g, usize::MAX)
            .expect("unbounded closure")
    }

    /// `<h, g>`, or `None` once the closure would exceed `limit` elements.
    pub fn extend_bounded(&self, h: &Subgroup, g: Elem, limit: usize) -> Option<Subgroup> {
        if h.contains(g) {
            return Some(h.clone());
        }
        let mut gens = h.gens.clone();
        gens.push(g);
        let mut elems = h.elems.clone();
        let mut list: Vec<Elem> = h.elems.ones().map(|x| x as Elem).collect();
        let old = list.len();
        let mut count = old;
        for i in 0..old {
            let y = self.mul(list[i], g);
            if !elems.put(y as usize) {
                count += 1;
                list.push(y);
            }
        }
        let mut i = old;
        while i < list.len() {
            if count > limit {
                return None;
            }
            let x = list[i];
            for &s in &gens {
                let y = self.mul(x, s);
                if !elems.put(y as usize) {
                    count += 1;
                    list.push(y);
                }
            }
            i += 1;
        }
        if count > limit {
            return None;
        }
        Some(Subgroup {
            gens,
            elems,
            order: count,
        })
    }

    /// Subgroup with the given (closed) element set; generators are chosen greedily.
    pub fn subgroup_from_set(&self, set: &FixedBitSet) -> Subgroup {
        let mut h = self.trivial();
        for x in set.ones() {
            if !h.contains(x as Elem) {
                h = self.extend(&h, x as Elem);
            }
        }
        debug_assert_eq!(&h.elems, set);
        h
    }

    pub fn conjugate_set(&self, set: &FixedBitSet, g: Elem) -> FixedBitSet {
        let mut out = FixedBitSet::with_capacity(self.order());
        for x in set.ones() {
            out.insert(self.conj(x as Elem, g) as usize);
        }
        out
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        Subgroup {
            gens: h.gens.iter().map(|&x| self.conj(x, g)).collect(),
            elems: self.conjugate_set(&h.elems, g),
            order: h.order,
        }
    }

    /// All distinct conjugates of an element set, in discovery order.
    pub fn conjugates_of_set(&self, set: &FixedBitSet) -> Vec<FixedBitSet> {
        let mut out = vec![set.clone()];
        let mut seen: rustc_hash::FxHashSet<FixedBitSet> = Default::default();
        seen.insert(set.clone());
        let mut i = 0;
        while i < out.len() {
            for &g in &self.gens {
                let c = self.conjugate_set(&out[i], g);
                if seen.insert(c.clone()) {
                    out.push(c);
                }
            }
            i += 1;
        }
        out
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        h.gens
            .iter()
            .all(|&x| self.gens.iter().all(|&g| h.contains(self.conj(x, g))))
    }

    /// Smallest normal subgroup containing `h`.
    pub fn normal_closure(&self, h: &Subgroup) -> Subgroup {
        let mut n = h.clone();
        loop {
            let mut grown = false;
            let gens = n.gens.clone();
            for &x in &gens {
                for &g in &self.gens {
                    let c = self.conj(x, g);
                    if !n.contains(c) {
                        n = self.extend(&n, c);
                        grown = true;
                    }
                }
            }
            if !grown {
                return n;
            }
        }
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut set = a.elems.clone();
        set.intersect_with(&b.elems);
        self.subgroup_from_set(&set)
    }

    /// Subgroup generated by `a` and `b`.
    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut h = a.clone();
        for &g in &b.gens {
            h = self.extend(&h, g);
        }
        h
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let x = self.mul(self.inv(a), self.inv(b));
        self.mul(self.mul(x, a), b)
    }

    pub fn centralizer_of_set(&self, set: &FixedBitSet) -> Subgroup {
        let mut c = FixedBitSet::with_capacity(self.order());
        for g in self.elements() {
            if set
                .ones()
                .all(|x| self.mul(x as Elem, g) == self.mul(g, x as Elem))
            {
                c.insert(g as usize);
            }
        }
        self.subgroup_from_set(&c)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let mut c = FixedBitSet::with_capacity(self.order());
        for g in self.elements() {
            if h.gens.iter().all(|&x| h.contains(self.conj(x, g))) {
                c.insert(g as usize);
            }
        }
        self.subgroup_from_set(&c)
    }

    /// The subgroup as a permutation group on the same points.
    pub fn to_perm_group(&self, h: &Subgroup) -> Result<PermGroup> {
        let gens: Vec<Perm> = h.gens.iter().map(|&g| self.perm(g)).collect();
        PermGroup::new(self.degree, &gens)
    }

    /// Element ids of a permutation subgroup, or an error if some generator is outside.
    pub fn subgroup_of(&self, h: &PermGroup) -> Result<Subgroup> {
        let mut ids = Vec::new();
        for p in h.generators() {
            let id = self
                .id_of(p)
                .ok_or_else(|| Error::NotSubgroup(format!("{p} is not in the group")))?;
            ids.push(id);
        }
        Ok(self.closure(&ids))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    gens: Vec<Elem>,
    elems: FixedBitSet,
    order: usize,
}

impl Subgroup {
    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> &FixedBitSet {
        &self.elems
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.elems.ones().map(|x| x as Elem)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elems.contains(x as usize)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.elems.is_subset(&other.elems)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(n: usize) -> FiniteGroup {
        let c: Vec<usize> = (1..n).chain([0]).collect();
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        FiniteGroup::from_generators(
            n,
            &[Perm::from_images(c).unwrap(), Perm::from_images(t).unwrap()],
            DEFAULT_ELEMENT_BUDGET,
        )
        .unwrap()
    }

    #[test]
    fn multiplication_matches_perms() {
        let g = sym(4);
        assert_eq!(g.order(), 24);
        for a in g.elements() {
            for b in g.elements() {
                let p = g.perm(a).then(&g.perm(b));
                assert_eq!(g.id_of(&p), Some(g.mul(a, b)));
                assert_eq!(g.mul_slow(a, b), g.mul(a, b));
            }
            assert_eq!(g.mul(a, g.inv(a)), 0);
        }
    }

    #[test]
    fn closures() {
        let g = sym(4);
        let id = |s: &str| g.id_of(&Perm::parse(s, 4).unwrap()).unwrap();
        let h = g.closure(&[id("(1,2,3)"), id("(1,2)(3,4)")]);
        assert_eq!(h.order(), 12);
        let v = g.normal_closure(&g.closure(&[id("(1,2)(3,4)")]));
        assert!(g.is_normal(&v));
        assert_eq!(v.order(), 4);
        assert_eq!(g.normalizer(&g.closure(&[id("(1,2)")])).order(), 4);
        assert_eq!(g.centralizer_of_set(v.elements()).order(), 4);
        let whole = g.whole();
        assert_eq!(g.subgroup_from_set(whole.elements()).order(), 24);
        let small = g.extend_bounded(&g.trivial(), g.generators()[0], 3);
        assert!(small.is_none());
    }
}

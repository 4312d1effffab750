//! The closure operator `C(X) = X ∪ ⋂ <x_1^g_1, ..., x_t^g_t>` and its
//! bounded-arity approximations `C_n`.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rand::Rng;
use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::finite::{Elem, FiniteGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureBudget {
    pub max_tuples: u64,
    pub max_generations: u64,
}

impl Default for ClosureBudget {
    fn default() -> Self {
        ClosureBudget {
            max_tuples: 50_000_000,
            max_generations: 50_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NaryVerdict {
    Yes { scanned: usize },
    No { witness: Vec<Elem> },
    BudgetExceeded { scanned: usize },
}

/// Largest group order for which every subset is scanned by default.
pub const EXHAUSTIVE_LIMIT: usize = 24;

pub struct Closure<'a> {
    g: &'a FiniteGroup,
    classes: &'a ClassTable,
    budget: ClosureBudget,
    tuples: u64,
    generations: u64,
    memo: FxHashMap<FixedBitSet, FixedBitSet>,
}

impl<'a> Closure<'a> {
    pub fn new(g: &'a FiniteGroup, classes: &'a ClassTable, budget: ClosureBudget) -> Self {
        Closure {
            g,
            classes,
            budget,
            tuples: 0,
            generations: 0,
            memo: FxHashMap::default(),
        }
    }

    pub fn set(&self, elems: &[Elem]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.g.order());
        for &x in elems {
            s.insert(x as usize);
        }
        s
    }

    fn count_generation(&mut self) -> Result<()> {
        self.generations += 1;
        if self.generations > self.budget.max_generations {
            return Err(Error::budget(
                "subgroup generation",
                self.generations,
                self.budget.max_generations,
            ));
        }
        Ok(())
    }

    fn count_tuple(&mut self) -> Result<()> {
        self.tuples += 1;
        if self.tuples > self.budget.max_tuples {
            return Err(Error::budget("tuple", self.tuples, self.budget.max_tuples));
        }
        Ok(())
    }

    /// `C(X)`.
    pub fn closure(&mut self, x: &FixedBitSet) -> Result<FixedBitSet> {
        if let Some(r) = self.memo.get(x) {
            return Ok(r.clone());
        }
        let n = self.intersection(x)?;
        debug_assert!(self.g.is_normal(&self.g.subgroup_from_set(&n)));
        let mut out = x.clone();
        out.union_with(&n);
        self.memo.insert(x.clone(), out.clone());
        Ok(out)
    }

    /// The intersection of `<x_1^g_1, ..., x_t^g_t>` over all conjugating tuples.
    /// The first coordinate is fixed and the normal core taken afterwards.
    pub fn intersection(&mut self, x: &FixedBitSet) -> Result<FixedBitSet> {
        let g = self.g;
        let mut elems: Vec<Elem> = x.ones().map(|e| e as Elem).collect();
        if elems.is_empty() {
            return Ok(g.trivial().elements().clone());
        }
        let size = |e: Elem| self.classes.size(self.classes.class_of(e));
        let first_pos = (0..elems.len()).max_by_key(|&i| (size(elems[i]), std::cmp::Reverse(elems[i]))).unwrap();
        let first = elems.remove(first_pos);
        elems.sort_by_key(|&e| (size(e), e));
        let mut best = g.whole();
        let mut visited: FxHashSet<(usize, FixedBitSet)> = FxHashSet::default();
        let start = g.closure(&[first]);
        self.count_generation()?;
        self.search(&elems, 0, start, &mut best, &mut visited)?;
        let mut core = best.elements().clone();
        for c in g.conjugates_of_set(best.elements()) {
            core.intersect_with(&c);
        }
        Ok(core)
    }

    fn search(
        &mut self,
        rest: &[Elem],
        depth: usize,
        prefix: Subgroup,
        best: &mut Subgroup,
        visited: &mut FxHashSet<(usize, FixedBitSet)>,
    ) -> Result<()> {
        if best.order() == 1 || best.is_subgroup_of(&prefix) {
            return Ok(());
        }
        if depth == rest.len() {
            self.count_tuple()?;
            let mut s = best.elements().clone();
            s.intersect_with(prefix.elements());
            *best = self.g.subgroup_from_set(&s);
            return Ok(());
        }
        if !visited.insert((depth, prefix.elements().clone())) {
            return Ok(());
        }
        let class = self.classes.class_of(rest[depth]);
        for &c in self.classes.members(class) {
            self.count_generation()?;
            let next = self.g.extend(&prefix, c);
            self.search(rest, depth + 1, next, best, visited)?;
            if best.order() == 1 {
                break;
            }
        }
        Ok(())
    }

    /// `C(X)` by enumerating every conjugating tuple, without pruning.
    pub fn closure_unpruned(&mut self, x: &FixedBitSet) -> Result<FixedBitSet> {
        let g = self.g;
        let elems: Vec<Elem> = x.ones().map(|e| e as Elem).collect();
        let mut inter = g.whole().elements().clone();
        if elems.is_empty() {
            inter = g.trivial().elements().clone();
        } else {
            let mut idx = vec![0usize; elems.len()];
            let members: Vec<&[Elem]> = elems
                .iter()
                .map(|&e| self.classes.members(self.classes.class_of(e)))
                .collect();
            loop {
                self.count_tuple()?;
                let tuple: Vec<Elem> = idx.iter().zip(&members).map(|(&i, m)| m[i]).collect();
                inter.intersect_with(g.closure(&tuple).elements());
                let mut k = idx.len();
                loop {
                    if k == 0 {
                        break;
                    }
                    k -= 1;
                    idx[k] += 1;
                    if idx[k] < members[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    if k == 0 {
                        k = usize::MAX;
                        break;
                    }
                }
                if k == usize::MAX {
                    break;
                }
            }
        }
        let mut out = x.clone();
        out.union_with(&inter);
        Ok(out)
    }

    /// `C_n(X)`: the union of `C(Y)` over subsets `Y` of size at most `n`.
    pub fn closure_n(&mut self, x: &FixedBitSet, n: usize) -> Result<FixedBitSet> {
        let elems: Vec<usize> = x.ones().collect();
        let mut out = FixedBitSet::with_capacity(self.g.order());
        let mut chosen = Vec::new();
        self.subsets(&elems, 0, n, &mut chosen, &mut out)?;
        Ok(out)
    }

    fn subsets(
        &mut self,
        elems: &[usize],
        start: usize,
        left: usize,
        chosen: &mut Vec<usize>,
        out: &mut FixedBitSet,
    ) -> Result<()> {
        let mut y = FixedBitSet::with_capacity(self.g.order());
        for &c in chosen.iter() {
            y.insert(c);
        }
        out.union_with(&self.closure(&y)?);
        if left == 0 {
            return Ok(());
        }
        for i in start..elems.len() {
            chosen.push(elems[i]);
            self.subsets(elems, i + 1, left - 1, chosen, out)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Iterates `C_n` until it stabilises.
    pub fn fixpoint(&mut self, x: &FixedBitSet, n: usize) -> Result<FixedBitSet> {
        let mut cur = x.clone();
        loop {
            let mut next = self.closure_n(&cur, n)?;
            next.union_with(&cur);
            if next == cur {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Whether `C` agrees with the `C_n` fixpoint on every set (exhaustively
    /// over the `C_n`-closed sets when `candidates` is `None`).
    pub fn is_invariable_nary(
        &mut self,
        n: usize,
        candidates: Option<&[FixedBitSet]>,
    ) -> NaryVerdict {
        let result = match candidates {
            Some(list) => self.scan_candidates(n, list),
            None if self.g.order() <= EXHAUSTIVE_LIMIT => self.scan_closed_sets(n),
            None => return NaryVerdict::BudgetExceeded { scanned: 0 },
        };
        match result {
            Ok(v) => v,
            Err(_) => NaryVerdict::BudgetExceeded { scanned: 0 },
        }
    }

    fn scan_candidates(&mut self, n: usize, list: &[FixedBitSet]) -> Result<NaryVerdict> {
        for x in list {
            let f = self.fixpoint(x, n)?;
            if self.closure(x)? != f {
                return Ok(NaryVerdict::No {
                    witness: x.ones().map(|e| e as Elem).collect(),
                });
            }
        }
        Ok(NaryVerdict::Yes { scanned: list.len() })
    }

    /// Ganter's next-closure enumeration of the `C_n`-closed sets.
    fn scan_closed_sets(&mut self, n: usize) -> Result<NaryVerdict> {
        let size = self.g.order();
        let mut a = self.fixpoint(&FixedBitSet::with_capacity(size), n)?;
        let mut scanned = 0;
        loop {
            scanned += 1;
            if self.closure(&a)? != a {
                return Ok(NaryVerdict::No {
                    witness: a.ones().map(|e| e as Elem).collect(),
                });
            }
            let mut next = None;
            let mut base = a.clone();
            for i in (0..size).rev() {
                if base.contains(i) {
                    base.set(i, false);
                    continue;
                }
                let mut cand = base.clone();
                cand.insert(i);
                let b = self.fixpoint(&cand, n)?;
                if b.ones().take_while(|&j| j < i).all(|j| base.contains(j)) {
                    next = Some(b);
                    break;
                }
            }
            match next {
                Some(b) => a = b,
                None => return Ok(NaryVerdict::Yes { scanned }),
            }
        }
    }

    /// Checks extensivity, monotonicity and idempotence on a sample of sets;
    /// monotonicity is tested against a random subset of each sample.
    pub fn laws(&mut self, sample: &[FixedBitSet], rng: &mut impl Rng) -> Result<LawsReport> {
        let mut report = LawsReport {
            tested: sample.len(),
            extensive: true,
            monotone: true,
            idempotent: true,
        };
        for x in sample {
            let c = self.closure(x)?;
            if !x.is_subset(&c) {
                report.extensive = false;
            }
            if self.closure(&c)? != c {
                report.idempotent = false;
            }
            let mut y = FixedBitSet::with_capacity(self.g.order());
            for e in x.ones() {
                if rng.gen_bool(0.5) {
                    y.insert(e);
                }
            }
            if !self.closure(&y)?.is_subset(&c) {
                report.monotone = false;
            }
        }
        Ok(report)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LawsReport {
    pub tested: usize,
    pub extensive: bool,
    pub monotone: bool,
    pub idempotent: bool,
}

impl LawsReport {
    pub fn all_hold(&self) -> bool {
        self.extensive && self.monotone && self.idempotent
    }
}

/// Consecutive sizes of minimal invariable generating sets differ by at most `n - 1`.
pub fn nario_gap_check(irb: &BTreeSet<usize>, n: usize) -> bool {
    let v: Vec<usize> = irb.iter().copied().collect();
    v.windows(2).all(|w| w[1] - w[0] < n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::finite::DEFAULT_ELEMENT_BUDGET;
    use crate::perm::Perm;

    fn group(g: &crate::bsgs::PermGroup) -> (FiniteGroup, ClassTable) {
        let f = FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET).unwrap();
        let t = ClassTable::new(&f).unwrap();
        (f, t)
    }

    #[test]
    fn basic_closures() {
        let (g, t) = group(&builder::symmetric(3).unwrap());
        let mut c = Closure::new(&g, &t, ClosureBudget::default());
        let id = |s: &str| g.id_of(&Perm::parse(s, 3).unwrap()).unwrap();
        let x = c.set(&[id("(1,2,3)"), id("(1,2)")]);
        assert_eq!(c.closure(&x).unwrap().count_ones(..), 6);
        let empty = c.set(&[]);
        assert_eq!(c.closure(&empty).unwrap(), c.set(&[0]));
        let (q, qt) = group(&builder::dicyclic(2).unwrap());
        let mut cq = Closure::new(&q, &qt, ClosureBudget::default());
        let i = q.generators()[0];
        let ci = cq.closure(&cq.set(&[i])).unwrap();
        assert_eq!(&ci, q.closure(&[i]).elements());
    }

    #[test]
    fn s3_is_binary() {
        let (g, t) = group(&builder::symmetric(3).unwrap());
        let mut c = Closure::new(&g, &t, ClosureBudget::default());
        assert!(matches!(c.is_invariable_nary(2, None), NaryVerdict::Yes { .. }));
        // brute force over all 64 subsets
        for mask in 0u32..64 {
            let x = c.set(&(0..6).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>());
            assert_eq!(c.closure(&x).unwrap(), c.fixpoint(&x, 2).unwrap());
            assert_eq!(c.closure(&x).unwrap(), c.closure_unpruned(&x).unwrap());
        }
    }

    #[test]
    fn order_18_counterexample() {
        let a = builder::c3c3_c2().unwrap();
        let (g, t) = group(&a.group);
        let mut c = Closure::new(&g, &t, ClosureBudget::default());
        let outside = g.elements().find(|&x| g.elem_order(x) == 2).unwrap();
        let mut x = g.whole().elements().clone();
        x.set(outside as usize, false);
        assert_eq!(c.closure_n(&x, 2).unwrap().is_subset(&x), true);
        assert_eq!(c.fixpoint(&x, 2).unwrap(), x);
        assert_eq!(c.closure(&x).unwrap().count_ones(..), 18);
        let v = c.is_invariable_nary(2, Some(std::slice::from_ref(&x)));
        assert!(matches!(v, NaryVerdict::No { .. }));
    }

    #[test]
    fn gaps() {
        assert!(nario_gap_check(&BTreeSet::from([2]), 2));
        assert!(nario_gap_check(&BTreeSet::from([2, 3]), 2));
        assert!(!nario_gap_check(&BTreeSet::from([2, 4]), 2));
    }
}

//! Invariable generation: the family of class sets `M*` of maximal subgroups
//! and the invariants computed from it.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::classes::{ClassId, ClassSet, ClassTable};
use crate::error::{Error, Result};
use crate::finite::{Elem, FiniteGroup, Subgroup, DEFAULT_ELEMENT_BUDGET};
use crate::lattice::{self, Lattice, MaximalClass};
use crate::normal;

/// Distinct class sets `M*` of the maximal subgroups of a group.
#[derive(Clone, Debug)]
pub struct MStarFamily {
    n_classes: usize,
    members: Vec<ClassSet>,
    /// Indices of the maximal classes giving each member.
    sources: Vec<Vec<usize>>,
}

impl MStarFamily {
    pub fn new(classes: &ClassTable, maximals: &[MaximalClass]) -> Self {
        let sets: Vec<ClassSet> = maximals.iter().map(|m| classes.fusion(&m.rep)).collect();
        Self::from_sets(classes.len(), &sets)
    }

    /// Builds the family from raw sets over `n_classes` points; point 0 plays
    /// the role of the identity class and is added to every member.
    pub fn from_sets(n_classes: usize, sets: &[ClassSet]) -> Self {
        let mut members: Vec<ClassSet> = Vec::new();
        let mut sources: Vec<Vec<usize>> = Vec::new();
        for (i, &s) in sets.iter().enumerate() {
            let s = s.with(0);
            match members.iter().position(|&m| m == s) {
                Some(j) => sources[j].push(i),
                None => {
                    members.push(s);
                    sources.push(vec![i]);
                }
            }
        }
        MStarFamily {
            n_classes,
            members,
            sources,
        }
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn members(&self) -> &[ClassSet] {
        &self.members
    }

    pub fn sources(&self) -> &[Vec<usize>] {
        &self.sources
    }

    fn nontrivial(&self) -> ClassSet {
        ClassSet::full(self.n_classes).without(0)
    }

    /// Whether a set of classes invariably generates.
    pub fn generates(&self, x: ClassSet) -> bool {
        !self.members.iter().any(|&m| x.is_subset(m))
    }

    /// Whether no proper subset of `x` invariably generates.
    pub fn is_minimal_generating(&self, x: ClassSet) -> bool {
        let x = x.without(0);
        self.generates(x) && x.iter().all(|s| !self.generates(x.without(s)))
    }

    /// Every element is critical: `S \ {s}` lies in some member avoiding `s`.
    fn is_independent_set(&self, s: ClassSet) -> bool {
        s.iter().all(|c| {
            let rest = s.without(c);
            self.members
                .iter()
                .any(|&m| rest.is_subset(m) && !m.contains(c))
        })
    }

    /// Least size of an invariably generating set, with the lexicographically
    /// least witness of that size.
    pub fn d_i(&self) -> (usize, ClassSet) {
        let comps: Vec<ClassSet> = self
            .members
            .iter()
            .map(|&m| self.nontrivial().difference(m))
            .collect();
        let universe: Vec<ClassId> = self.nontrivial().to_vec();
        for k in 0..=universe.len() {
            if let Some(w) = lex_hitting_set(&comps, &universe, k) {
                return (k, w);
            }
        }
        unreachable!("the set of all nontrivial classes generates")
    }

    fn independent_dfs(&self, visit: &mut impl FnMut(ClassSet, bool)) {
        let universe: Vec<ClassId> = self.nontrivial().to_vec();
        fn rec(
            fam: &MStarFamily,
            universe: &[ClassId],
            start: usize,
            s: ClassSet,
            visit: &mut impl FnMut(ClassSet, bool),
        ) {
            if fam.generates(s) {
                visit(s, true);
                return;
            }
            visit(s, false);
            for i in start..universe.len() {
                let t = s.with(universe[i]);
                if fam.is_independent_set(t) {
                    rec(fam, universe, i + 1, t, visit);
                }
            }
        }
        rec(self, &universe, 0, ClassSet::EMPTY, visit);
    }

    /// Sizes of all minimal invariable generating sets, the largest size and
    /// the lexicographically least witness of that size.
    pub fn irb(&self) -> Irb {
        let mut sizes = BTreeSet::new();
        let mut best: Option<ClassSet> = None;
        self.independent_dfs(&mut |s, generating| {
            if generating {
                sizes.insert(s.len());
                if best.is_none_or(|b| s.len() > b.len()) {
                    best = Some(s);
                }
            }
        });
        let witness = best.expect("some independent set generates");
        Irb {
            sizes,
            m_i: witness.len(),
            witness,
        }
    }

    pub fn m_i(&self) -> (usize, ClassSet) {
        let irb = self.irb();
        (irb.m_i, irb.witness)
    }

    /// Whether the subfamily with the given member indices is independent:
    /// dropping any one member strictly enlarges the intersection.
    pub fn is_independent_family(&self, idx: &[usize]) -> bool {
        let all = ClassSet::full(self.n_classes);
        let total = idx.iter().fold(all, |acc, &i| acc.intersection(self.members[i]));
        idx.iter().all(|&i| {
            let rest = idx
                .iter()
                .filter(|&&j| j != i)
                .fold(all, |acc, &j| acc.intersection(self.members[j]));
            rest != total
        })
    }

    /// Largest independent subfamily size and the lexicographically least
    /// witness (member indices).
    pub fn iota(&self) -> (usize, Vec<usize>) {
        let mut best: Vec<usize> = Vec::new();
        let mut cur: Vec<usize> = Vec::new();
        fn rec(fam: &MStarFamily, start: usize, cur: &mut Vec<usize>, best: &mut Vec<usize>) {
            if cur.len() > best.len() {
                *best = cur.clone();
            }
            if cur.len() + (fam.members.len() - start) <= best.len() {
                return;
            }
            for i in start..fam.members.len() {
                cur.push(i);
                if fam.is_independent_family(cur) {
                    rec(fam, i + 1, cur, best);
                }
                cur.pop();
            }
        }
        rec(self, 0, &mut cur, &mut best);
        (best.len(), best)
    }

    /// Members that are maximal under inclusion.
    pub fn maximal_members(&self) -> Vec<ClassSet> {
        self.members
            .iter()
            .copied()
            .filter(|&m| {
                !self
                    .members
                    .iter()
                    .any(|&o| o != m && m.is_subset(o))
            })
            .collect()
    }

    /// Intersection of the inclusion-maximal members.
    pub fn frat_i(&self) -> ClassSet {
        self.maximal_members()
            .into_iter()
            .fold(ClassSet::full(self.n_classes), ClassSet::intersection)
    }

    /// Intersection of all members.
    pub fn frat_i_all(&self) -> ClassSet {
        self.members
            .iter()
            .copied()
            .fold(ClassSet::full(self.n_classes), ClassSet::intersection)
    }
}

/// Lexicographically least `k`-subset of `universe` meeting every set in `comps`.
fn lex_hitting_set(comps: &[ClassSet], universe: &[ClassId], k: usize) -> Option<ClassSet> {
    fn rec(
        comps: &[ClassSet],
        universe: &[ClassId],
        start: usize,
        left: usize,
        chosen: ClassSet,
    ) -> Option<ClassSet> {
        let unhit: Vec<ClassSet> = comps
            .iter()
            .copied()
            .filter(|c| c.intersection(chosen).is_empty())
            .collect();
        if unhit.is_empty() {
            return Some(chosen);
        }
        if left == 0 {
            return None;
        }
        let later = universe[start..]
            .iter()
            .fold(ClassSet::EMPTY, |s, &c| s.with(c));
        if unhit.iter().any(|c| c.intersection(later).is_empty()) {
            return None;
        }
        if left == 1 {
            let common = unhit.iter().fold(later, |acc, &c| acc.intersection(c));
            return common.iter().next().map(|c| chosen.with(c));
        }
        for i in start..universe.len() {
            if let Some(w) = rec(comps, universe, i + 1, left - 1, chosen.with(universe[i])) {
                return Some(w);
            }
        }
        None
    }
    rec(comps, universe, 0, k, ClassSet::EMPTY)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Irb {
    pub sizes: BTreeSet<usize>,
    pub m_i: usize,
    pub witness: ClassSet,
}

/// A group together with its classes, maximal subgroups and `M*` family.
#[derive(Debug)]
pub struct Analysis {
    pub group: FiniteGroup,
    pub classes: ClassTable,
    pub maximals: Vec<MaximalClass>,
    pub family: MStarFamily,
}

impl Analysis {
    pub fn new(group: FiniteGroup, maximals: Vec<MaximalClass>) -> Result<Self> {
        let classes = ClassTable::new(&group)?;
        let family = MStarFamily::new(&classes, &maximals);
        Ok(Analysis {
            group,
            classes,
            maximals,
            family,
        })
    }

    /// Uses the full subgroup lattice to find maximal subgroups.
    pub fn from_lattice(group: FiniteGroup, budget: usize) -> Result<Self> {
        let maximals = lattice::maximal_subgroups(&group, budget)?;
        Self::new(group, maximals)
    }

    /// Whether the given elements invariably generate the group.
    pub fn igen_check(&self, xs: &[Elem]) -> Result<bool> {
        for &x in xs {
            if x as usize >= self.group.order() {
                return Err(Error::NotSubgroup(format!("element id {x} not in group")));
            }
        }
        Ok(self.family.generates(self.classes.classes_of(xs.iter().copied())))
    }

    pub fn frattini(&self) -> Subgroup {
        lattice::frattini_from_maximals(&self.group, &self.maximals)
    }

    /// Elements in the union of the `Frat_I` classes.
    pub fn frat_i_size(&self) -> usize {
        self.classes.union_size(self.family.frat_i())
    }

    pub fn is_soluble(&self) -> Result<bool> {
        self.group.is_soluble()
    }

    /// Every element has prime-power order.
    pub fn is_cp(&self) -> bool {
        (0..self.classes.len()).all(|c| is_prime_power(self.classes.elem_order(c)))
    }

    pub fn m_formula(&self) -> Result<usize> {
        normal::m_formula(&self.group, &self.classes, &self.maximals)
    }

    /// `m(G)` by exhaustive search when the group is small, otherwise by the
    /// chief-series count for soluble groups.
    pub fn m(&self, brute_limit: usize) -> Result<Option<(usize, &'static str)>> {
        if self.group.order() <= brute_limit {
            return Ok(Some((m_classical(&self.group).0, "search")));
        }
        if self.is_soluble()? {
            return Ok(Some((self.m_formula()?, "chief_series")));
        }
        Ok(None)
    }

    /// For soluble groups: every prime divisor of the order is the order of
    /// some element outside `Frat_I`, up to taking powers.
    pub fn pote_check(&self) -> Result<bool> {
        if !self.is_soluble()? {
            return Err(Error::Unsupported("group is not soluble".into()));
        }
        let frat = self.family.frat_i();
        let primes = prime_divisors(self.group.order() as u64);
        Ok(primes.iter().all(|&p| {
            (1..self.classes.len()).any(|c| {
                !frat.contains(c) && is_power_of(self.classes.elem_order(c) as u64, p)
            })
        }))
    }

    /// `d_I(H) == m_I(H)` for one representative `H` of each subgroup class.
    /// Returns the representatives where this fails.
    pub fn ibp_failures(&self, lattice: &Lattice, budget: usize) -> Result<Vec<IbpFailure>> {
        let mut out = Vec::new();
        for (i, c) in lattice.classes().iter().enumerate() {
            let h = subgroup_analysis(&self.group, &c.rep, budget)?;
            let (d, _) = h.family.d_i();
            let (m, _) = h.family.m_i();
            if d != m {
                out.push(IbpFailure {
                    class_index: i,
                    order: c.order(),
                    d_i: d,
                    m_i: m,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IbpFailure {
    pub class_index: usize,
    pub order: usize,
    pub d_i: usize,
    pub m_i: usize,
}

/// Analysis of a subgroup, treated as a group in its own right.
pub fn subgroup_analysis(g: &FiniteGroup, h: &Subgroup, budget: usize) -> Result<Analysis> {
    let hg = FiniteGroup::new(&g.to_perm_group(h)?, DEFAULT_ELEMENT_BUDGET)?;
    Analysis::from_lattice(hg, budget)
}

pub(crate) fn is_prime_power(n: u32) -> bool {
    n == 1 || prime_divisors(n as u64).len() == 1
}

fn is_power_of(n: u64, p: u64) -> bool {
    let mut m = n;
    while m > 1 && m % p == 0 {
        m /= p;
    }
    m == 1 && n > 1
}

pub fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Least `d` such that some `d` elements generate, with a witness found by
/// search over tuples whose first entry is a class representative.
pub fn d_classical(g: &FiniteGroup) -> (usize, Vec<Elem>) {
    if g.order() == 1 {
        return (0, Vec::new());
    }
    let table = ClassTable::new(g).ok();
    let firsts: Vec<Elem> = match &table {
        Some(t) => t.reps()[1..].to_vec(),
        None => g.elements().skip(1).collect(),
    };
    for k in 1.. {
        for &x in &firsts {
            let h = g.closure(&[x]);
            let mut chosen = vec![x];
            if tuple_search(g, &h, k - 1, &mut chosen) {
                return (k, chosen);
            }
        }
    }
    unreachable!()
}

fn tuple_search(g: &FiniteGroup, h: &Subgroup, left: usize, chosen: &mut Vec<Elem>) -> bool {
    if h.order() == g.order() {
        return true;
    }
    if left == 0 {
        return false;
    }
    for y in g.elements() {
        if h.contains(y) {
            continue;
        }
        let k = g.extend(h, y);
        chosen.push(y);
        if tuple_search(g, &k, left - 1, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Largest size of an irredundant generating set, by exhaustive search over
/// sets of cyclic subgroups with the first one fixed up to conjugacy.
pub fn m_classical(g: &FiniteGroup) -> (usize, Vec<Elem>) {
    if g.order() == 1 {
        return (0, Vec::new());
    }
    // one canonical generator per nontrivial cyclic subgroup
    let mut canon: Vec<Elem> = Vec::new();
    let mut seen = vec![false; g.order()];
    for x in g.elements().skip(1) {
        if seen[x as usize] {
            continue;
        }
        let c = g.closure(&[x]);
        let gens: Vec<Elem> = c.iter().filter(|&y| g.elem_order(y) == g.elem_order(x)).collect();
        for &y in &gens {
            seen[y as usize] = true;
        }
        canon.push(*gens.iter().min().unwrap());
    }
    let firsts: Vec<Elem> = match ClassTable::new(g) {
        Ok(t) => {
            let mut seen_class = vec![false; t.len()];
            canon
                .iter()
                .copied()
                .filter(|&x| !std::mem::replace(&mut seen_class[t.class_of(x)], true))
                .collect()
        }
        Err(_) => canon.clone(),
    };
    let mut best: Vec<Elem> = Vec::new();
    for &x in &firsts {
        let s = vec![x];
        let full = g.closure(&s);
        let rest = vec![g.trivial()];
        irredundant_dfs(g, &canon, 0, s, full, rest, &mut best);
    }
    (best.len(), best)
}

fn omega(mut n: usize) -> usize {
    let mut k = 0;
    let mut d = 2;
    while d * d <= n {
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        d += 1;
    }
    if n > 1 {
        k += 1;
    }
    k
}

/// `s` is irredundant; `full = <s>`, `rest[i] = <s \ s_i>`.
fn irredundant_dfs(
    g: &FiniteGroup,
    canon: &[Elem],
    start: usize,
    s: Vec<Elem>,
    full: Subgroup,
    rest: Vec<Subgroup>,
    best: &mut Vec<Elem>,
) {
    if full.order() == g.order() {
        if s.len() > best.len() {
            *best = s;
        }
        return;
    }
    if s.len() + omega(g.order() / full.order()) <= best.len() {
        return;
    }
    for (i, &y) in canon.iter().enumerate().skip(start) {
        if s.contains(&y) || full.contains(y) {
            continue;
        }
        let mut new_rest = Vec::with_capacity(rest.len() + 1);
        let mut ok = true;
        for (r, &x) in rest.iter().zip(&s) {
            let r2 = g.extend(r, y);
            if r2.contains(x) {
                ok = false;
                break;
            }
            new_rest.push(r2);
        }
        if !ok {
            continue;
        }
        new_rest.push(full.clone());
        let mut s2 = s.clone();
        s2.push(y);
        let full2 = g.extend(&full, y);
        irredundant_dfs(g, canon, i + 1, s2, full2, new_rest, best);
    }
}

/// Summary of the invariants of a group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IGenReport {
    pub order: u128,
    pub classes: usize,
    pub maximal_classes: usize,
    pub d: Option<usize>,
    pub d_witness: Option<Vec<Elem>>,
    pub m: Option<usize>,
    pub m_method: Option<String>,
    pub d_i: usize,
    pub d_i_witness: Vec<ClassId>,
    pub m_i: usize,
    pub m_i_witness: Vec<ClassId>,
    pub irb_i: Vec<usize>,
    pub iota: usize,
    pub iota_witness: Vec<usize>,
    pub frat_i_classes: Vec<ClassId>,
    pub frat_i_nontrivial: Vec<ClassId>,
    pub frat_i_all_classes: Vec<ClassId>,
    pub frat_i_elements: usize,
    pub is_b: Option<bool>,
    pub is_bi: bool,
    pub is_cp: bool,
}

/// Limits for the expensive parts of a report.
#[derive(Clone, Copy, Debug)]
pub struct ReportLimits {
    /// Largest order for exhaustive `d` and `m` searches.
    pub brute_limit: usize,
}

impl Default for ReportLimits {
    fn default() -> Self {
        ReportLimits { brute_limit: 200 }
    }
}

pub fn report(a: &Analysis, limits: ReportLimits) -> Result<IGenReport> {
    let (d_i, d_w) = a.family.d_i();
    let irb = a.family.irb();
    let (iota, iota_w) = a.family.iota();
    let frat = a.family.frat_i();
    let (d, d_witness) = if a.group.order() <= limits.brute_limit.max(DEFAULT_D_LIMIT) {
        let (d, w) = d_classical(&a.group);
        (Some(d), Some(w))
    } else {
        (None, None)
    };
    let m = a.m(limits.brute_limit)?;
    let is_b = match (d, m) {
        (Some(d), Some((m, _))) => Some(d == m),
        _ => None,
    };
    Ok(IGenReport {
        order: a.group.order() as u128,
        classes: a.classes.len(),
        maximal_classes: a.maximals.len(),
        d,
        d_witness,
        m: m.map(|x| x.0),
        m_method: m.map(|x| x.1.to_string()),
        d_i,
        d_i_witness: d_w.to_vec(),
        m_i: irb.m_i,
        m_i_witness: irb.witness.to_vec(),
        irb_i: irb.sizes.iter().copied().collect(),
        iota,
        iota_witness: iota_w,
        frat_i_classes: frat.to_vec(),
        frat_i_nontrivial: frat.without(0).to_vec(),
        frat_i_all_classes: a.family.frat_i_all().to_vec(),
        frat_i_elements: a.classes.union_size(frat),
        is_b,
        is_bi: d_i == irb.m_i,
        is_cp: a.is_cp(),
    })
}

/// `d` is cheap enough by tuple search for groups up to this order.
const DEFAULT_D_LIMIT: usize = 5000;

/// `m_I(A) + m_I(B)` against `m_I(A x B)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditivityCheck {
    pub sum: usize,
    pub product: usize,
    pub equal: bool,
}

pub fn mi_additivity_check(
    a: &crate::bsgs::PermGroup,
    b: &crate::bsgs::PermGroup,
    budget: usize,
) -> Result<AdditivityCheck> {
    let mi = |g: &crate::bsgs::PermGroup| -> Result<usize> {
        let an = Analysis::from_lattice(FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET)?, budget)?;
        Ok(an.family.m_i().0)
    };
    let sum = mi(a)? + mi(b)?;
    let product = mi(&crate::builder::direct_product(a, b)?)?;
    Ok(AdditivityCheck {
        sum,
        product,
        equal: sum == product,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::perm::Perm;

    fn analysis(g: &crate::bsgs::PermGroup) -> Analysis {
        Analysis::from_lattice(FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET).unwrap(), 2000).unwrap()
    }

    #[test]
    fn alt5() {
        let a = analysis(&builder::alternating(5).unwrap());
        let id = |s: &str| a.group.id_of(&Perm::parse(s, 5).unwrap()).unwrap();
        assert!(a.igen_check(&[id("(1,2,3)"), id("(1,2,3,4,5)")]).unwrap());
        assert!(!a.igen_check(&[id("(1,2,3)"), id("(1,3,2)")]).unwrap());
        assert_eq!(a.family.d_i().0, 2);
        assert_eq!(a.family.m_i().0, 2);
        assert_eq!(m_classical(&a.group).0, 3);
        assert_eq!(d_classical(&a.group).0, 2);
        assert_eq!(a.family.frat_i(), ClassSet::from_ids([0, 1]));
        assert_eq!(a.family.members().len(), 2);
        let (iota, w) = a.family.iota();
        assert_eq!(iota, 2);
        let mut fam: Vec<ClassSet> = w.iter().map(|&i| a.family.members()[i]).collect();
        fam.sort();
        assert_eq!(
            fam,
            vec![ClassSet::from_ids([0, 1, 2]), ClassSet::from_ids([0, 1, 3, 4])]
        );
    }

    #[test]
    fn sym4() {
        let a = analysis(&builder::symmetric(4).unwrap());
        assert_eq!(a.family.d_i().0, 2);
        let irb = a.family.irb();
        assert_eq!(irb.m_i, 3);
        assert_eq!(irb.sizes, BTreeSet::from([2, 3]));
        assert!(a.pote_check().unwrap());
        assert_eq!(m_classical(&a.group).0, 3);
    }

    #[test]
    fn trivial_group() {
        let a = analysis(&builder::cyclic(1).unwrap());
        assert_eq!(a.family.d_i().0, 0);
        assert_eq!(a.family.m_i().0, 0);
        assert_eq!(d_classical(&a.group).0, 0);
        assert_eq!(m_classical(&a.group).0, 0);
        assert!(a.igen_check(&[]).unwrap());
    }

    #[test]
    fn iota_singleton() {
        let f = MStarFamily::from_sets(3, &[ClassSet::from_ids([0, 1])]);
        assert_eq!(f.iota().0, 1);
        assert!(f.is_independent_family(&[0]));
    }

    #[test]
    fn affine_examples() {
        let a = analysis(&builder::c3c3_c2().unwrap().group);
        assert_eq!(a.family.d_i().0, 3);
        let q = analysis(&builder::fp2_q8(3).unwrap().group);
        assert_eq!(q.family.d_i().0, 3);
        assert_eq!(q.family.m_i().0, 3);
        assert!(q.is_cp());
        assert_eq!(q.m_formula().unwrap(), 3);
        assert_eq!(d_classical(&q.group).0, 2);
    }

    #[test]
    fn additivity() {
        let c = mi_additivity_check(&builder::symmetric(3).unwrap(), &builder::cyclic(5).unwrap(), 2000)
            .unwrap();
        assert_eq!((c.sum, c.product), (3, 3));
        let c2 = mi_additivity_check(&builder::cyclic(2).unwrap(), &builder::cyclic(2).unwrap(), 2000)
            .unwrap();
        assert_eq!((c2.sum, c2.product), (2, 2));
    }

    #[test]
    fn pote_rejects_insoluble() {
        let a = analysis(&builder::alternating(5).unwrap());
        assert!(matches!(a.pote_check(), Err(Error::Unsupported(_))));
        let c6 = analysis(&builder::cyclic(6).unwrap());
        assert!(c6.pote_check().unwrap());
    }
}

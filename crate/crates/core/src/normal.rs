//! Normal subgroups, chief series and quotients.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::bsgs::PermGroup;
use crate::classes::ClassTable;
use crate::error::{Error, Result};
use crate::finite::{Elem, FiniteGroup, Subgroup};
use crate::lattice::MaximalClass;
use crate::perm::Perm;

fn sort_key(h: &Subgroup) -> (usize, Vec<usize>) {
    (h.order(), h.elements().ones().collect())
}

/// All normal subgroups, sorted by order and then by element list.
pub fn normal_subgroups(g: &FiniteGroup, classes: &ClassTable) -> Vec<Subgroup> {
    let mut closures: Vec<Subgroup> = Vec::new();
    let mut seen_closure: FxHashSet<FixedBitSet> = FxHashSet::default();
    for &r in classes.reps().iter().skip(1) {
        let n = g.normal_closure(&g.closure(&[r]));
        if seen_closure.insert(n.elements().clone()) {
            closures.push(n);
        }
    }
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    let trivial = g.trivial();
    seen.insert(trivial.elements().clone());
    let mut all = vec![trivial];
    let mut i = 0;
    while i < all.len() {
        for c in &closures {
            if c.is_subgroup_of(&all[i]) {
                continue;
            }
            let j = g.join(&all[i], c);
            if seen.insert(j.elements().clone()) {
                all.push(j);
            }
        }
        i += 1;
    }
    all.sort_by_cached_key(sort_key);
    all
}

pub fn minimal_normal_subgroups(normals: &[Subgroup]) -> Vec<Subgroup> {
    normals
        .iter()
        .filter(|n| {
            !n.is_trivial()
                && !normals
                    .iter()
                    .any(|m| !m.is_trivial() && m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChiefFactor {
    /// Order of the factor `N_i / N_{i+1}`.
    pub order: usize,
    /// Whether the factor lies in the Frattini subgroup of `G / N_{i+1}`.
    pub frattini: bool,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    /// Terms from `G` down to the trivial subgroup.
    pub terms: Vec<Subgroup>,
    pub factors: Vec<ChiefFactor>,
}

/// A chief series built bottom-up, choosing at each step the least normal
/// subgroup (by order, then element list) covering the previous term.
pub fn chief_series(
    g: &FiniteGroup,
    normals: &[Subgroup],
    maximals: &[MaximalClass],
) -> ChiefSeries {
    let mut chain = vec![g.trivial()];
    loop {
        let cur = chain.last().unwrap();
        if cur.order() == g.order() {
            break;
        }
        let above: Vec<&Subgroup> = normals
            .iter()
            .filter(|n| n.order() > cur.order() && cur.is_subgroup_of(n))
            .collect();
        let next = above
            .iter()
            .find(|n| {
                !above
                    .iter()
                    .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
            })
            .expect("some normal subgroup covers the current term");
        chain.push((*next).clone());
    }
    chain.reverse();
    let all_max: Vec<&FixedBitSet> = maximals.iter().flat_map(|m| m.conjugates.iter()).collect();
    let factors = chain
        .windows(2)
        .map(|w| {
            let (upper, lower) = (&w[0], &w[1]);
            let frattini = all_max
                .iter()
                .filter(|m| lower.elements().is_subset(m))
                .all(|m| upper.elements().is_subset(m));
            ChiefFactor {
                order: upper.order() / lower.order(),
                frattini,
            }
        })
        .collect();
    ChiefSeries {
        terms: chain,
        factors,
    }
}

/// Number of non-Frattini chief factors; valid as the maximal size of an
/// irredundant generating set only for soluble groups.
pub fn m_formula(
    g: &FiniteGroup,
    classes: &ClassTable,
    maximals: &[MaximalClass],
) -> Result<usize> {
    if !g.is_soluble()? {
        return Err(Error::Unsupported("group is not soluble".into()));
    }
    let normals = normal_subgroups(g, classes);
    let series = chief_series(g, &normals, maximals);
    Ok(series.factors.iter().filter(|f| !f.frattini).count())
}

/// The action of `G` on the right cosets of a normal subgroup.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// Coset index of each element of `G`.
    pub coset_of: Vec<usize>,
    pub reps: Vec<Elem>,
}

impl Quotient {
    /// Image of an element of `G` in the quotient.
    pub fn project(&self, g: &FiniteGroup, x: Elem) -> Perm {
        let images = self
            .reps
            .iter()
            .map(|&r| self.coset_of[g.mul(r, x) as usize])
            .collect();
        Perm::from_images(images).expect("coset action is a permutation")
    }
}

pub fn quotient(g: &FiniteGroup, n: &Subgroup) -> Result<Quotient> {
    if !g.is_normal(n) {
        return Err(Error::NotSubgroup("subgroup is not normal".into()));
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset_of[x as usize] != usize::MAX {
            continue;
        }
        for y in n.iter() {
            coset_of[g.mul(y, x) as usize] = reps.len();
        }
        reps.push(x);
    }
    let k = reps.len();
    let mut q = Quotient {
        group: PermGroup::trivial(k),
        coset_of,
        reps,
    };
    let gens: Vec<Perm> = g.generators().iter().map(|&s| q.project(g, s)).collect();
    q.group = PermGroup::new(k, &gens)?;
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::finite::DEFAULT_ELEMENT_BUDGET;
    use crate::lattice::{frattini_from_maximals, maximal_subgroups, maximal_subgroups_semidirect};

    fn fg(g: &PermGroup) -> FiniteGroup {
        FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET).unwrap()
    }

    #[test]
    fn normal_subgroups_of_small_groups() {
        let s4 = fg(&builder::symmetric(4).unwrap());
        let t = ClassTable::new(&s4).unwrap();
        let orders: Vec<usize> = normal_subgroups(&s4, &t).iter().map(|n| n.order()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
        let q8 = fg(&builder::dicyclic(2).unwrap());
        let t = ClassTable::new(&q8).unwrap();
        let n = normal_subgroups(&q8, &t);
        assert_eq!(n.len(), 6);
        assert_eq!(minimal_normal_subgroups(&n).len(), 1);
    }

    #[test]
    fn chief_counts() {
        for (g, expect) in [
            (builder::symmetric(4).unwrap(), 3),
            (builder::cyclic(4).unwrap(), 1),
            (builder::dicyclic(2).unwrap(), 2),
        ] {
            let g = fg(&g);
            let t = ClassTable::new(&g).unwrap();
            let m = maximal_subgroups(&g, 2000).unwrap();
            assert_eq!(m_formula(&g, &t, &m).unwrap(), expect);
        }
        let a5 = fg(&builder::alternating(5).unwrap());
        let t = ClassTable::new(&a5).unwrap();
        let m = maximal_subgroups(&a5, 2000).unwrap();
        assert!(matches!(m_formula(&a5, &t, &m), Err(Error::Unsupported(_))));
    }

    #[test]
    fn frattini_and_quotients() {
        let q8 = fg(&builder::dicyclic(2).unwrap());
        let m = maximal_subgroups(&q8, 2000).unwrap();
        let phi = frattini_from_maximals(&q8, &m);
        assert_eq!(phi.order(), 2);
        let q = quotient(&q8, &phi).unwrap();
        assert_eq!(q.group.order(), 4);
        let v4 = fg(&q.group);
        assert!(v4.is_abelian());
        assert!(v4.elements().all(|x| v4.elem_order(x) <= 2));

        let a = builder::fp2_q8(3).unwrap();
        let g = fg(&a.group);
        let mx = maximal_subgroups_semidirect(&g, &a, 2000).unwrap();
        assert_eq!(frattini_from_maximals(&g, &mx).order(), 1);
        let t = ClassTable::new(&g).unwrap();
        let normals = normal_subgroups(&g, &t);
        let v = minimal_normal_subgroups(&normals);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].order(), 9);
        let q = quotient(&g, &v[0]).unwrap();
        let qg = fg(&q.group);
        assert_eq!(qg.order(), 8);
        let inv = qg.elements().filter(|&x| qg.elem_order(x) == 2).count();
        assert_eq!(inv, 1);
        let s4 = fg(&builder::symmetric(4).unwrap());
        let h = s4.closure(&[1]);
        if !s4.is_normal(&h) {
            assert!(quotient(&s4, &h).is_err());
        }
    }
}

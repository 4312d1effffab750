//! A combinatorial model of the conjugacy-class unions covered by maximal
//! subgroups of `Alt(5)^n`, over tuples of `Alt(5)` classes.

use fixedbitset::FixedBitSet;
use rustc_hash::FxHashSet;
use serde::{Deserialize, Serialize};

use crate::bsgs::PermGroup;
use crate::builder;
use crate::classes::{ClassSet, ClassTable};
use crate::error::{Error, Result};
use crate::finite::{FiniteGroup, DEFAULT_ELEMENT_BUDGET};
use crate::igen::MStarFamily;
use crate::lattice::maximal_subgroups;
use crate::perm::Perm;

/// Number of classes of `Alt(5)`: identity, involutions, 3-cycles and two
/// classes of 5-cycles.
pub const OMEGA: usize = 5;
pub const MAX_N: usize = 6;

/// Classes met by `A4` (and `S3`).
pub const Y1: [usize; 3] = [0, 1, 2];
/// Classes met by `D10`.
pub const Y2: [usize; 4] = [0, 1, 3, 4];

/// The involution swapping the two 5-cycle classes.
pub fn twist(w: usize) -> usize {
    match w {
        3 => 4,
        4 => 3,
        w => w,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MemberKind {
    /// `ω_i ∈ Y1`.
    A { i: usize },
    /// `ω_i ∈ Y2`.
    B { i: usize },
    /// `ω_i = ω_j`.
    C { i: usize, j: usize },
    /// `ω_i = twist(ω_j)`.
    D { i: usize, j: usize },
}

impl std::fmt::Display for MemberKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            MemberKind::A { i } => write!(f, "A{}", i + 1),
            MemberKind::B { i } => write!(f, "B{}", i + 1),
            MemberKind::C { i, j } => write!(f, "C{},{}", i + 1, j + 1),
            MemberKind::D { i, j } => write!(f, "D{},{}", i + 1, j + 1),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DeltaModel {
    n: usize,
    kinds: Vec<MemberKind>,
    sets: Vec<FixedBitSet>,
}

impl DeltaModel {
    pub fn build(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_N {
            return Err(Error::InvalidParameter(format!(
                "model dimension must be in 1..={MAX_N}, got {n}"
            )));
        }
        let size = OMEGA.pow(n as u32);
        let mut kinds = Vec::new();
        for i in 0..n {
            kinds.push(MemberKind::A { i });
            kinds.push(MemberKind::B { i });
        }
        for i in 0..n {
            for j in i + 1..n {
                kinds.push(MemberKind::C { i, j });
                kinds.push(MemberKind::D { i, j });
            }
        }
        let sets = kinds
            .iter()
            .map(|&k| {
                let mut s = FixedBitSet::with_capacity(size);
                for t in 0..size {
                    let w = |c: usize| t / OMEGA.pow(c as u32) % OMEGA;
                    let inside = match k {
                        MemberKind::A { i } => Y1.contains(&w(i)),
                        MemberKind::B { i } => Y2.contains(&w(i)),
                        MemberKind::C { i, j } => w(i) == w(j),
                        MemberKind::D { i, j } => w(i) == twist(w(j)),
                    };
                    s.set(t, inside);
                }
                s
            })
            .collect();
        Ok(DeltaModel { n, kinds, sets })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        OMEGA.pow(self.n as u32)
    }

    pub fn kinds(&self) -> &[MemberKind] {
        &self.kinds
    }

    pub fn sets(&self) -> &[FixedBitSet] {
        &self.sets
    }

    /// Index of a class tuple (coordinate `i` is digit `i` in base 5).
    pub fn encode(tuple: &[usize]) -> usize {
        tuple.iter().rev().fold(0, |acc, &w| acc * OMEGA + w)
    }

    pub fn decode(&self, t: usize) -> Vec<usize> {
        (0..self.n).map(|c| t / OMEGA.pow(c as u32) % OMEGA).collect()
    }

    fn intersection(&self, idx: &[usize]) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.size());
        s.insert_range(..);
        for &i in idx {
            s.intersect_with(&self.sets[i]);
        }
        s
    }

    /// Dropping any member strictly enlarges the intersection.
    pub fn is_independent(&self, idx: &[usize]) -> bool {
        let total = self.intersection(idx);
        (0..idx.len()).all(|k| {
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &m)| m).collect();
            self.intersection(&rest) != total
        })
    }

    /// No member contains every tuple of `x`.
    pub fn generates(&self, x: &[usize]) -> bool {
        !self.sets.iter().any(|s| x.iter().all(|&t| s.contains(t)))
    }

    pub fn is_minimal_generating(&self, x: &[usize]) -> bool {
        self.generates(x)
            && (0..x.len()).all(|k| {
                let rest: Vec<usize> = x.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, &t)| t).collect();
                !self.generates(&rest)
            })
    }

    /// The tuples with `C3` or `C4` in one coordinate and the identity class elsewhere.
    pub fn marker_set(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for w in [2, 3] {
                let mut t = vec![0; self.n];
                t[i] = w;
                out.push(Self::encode(&t));
            }
        }
        out
    }
}

/// Largest independent subfamily, with the lexicographically least witness
/// among those of maximal size.
pub fn iota_model(n: usize, node_budget: u64) -> Result<(usize, Vec<MemberKind>)> {
    let model = DeltaModel::build(n)?;
    struct Search<'a> {
        model: &'a DeltaModel,
        best: Vec<usize>,
        nodes: u64,
        budget: u64,
    }
    impl Search<'_> {
        fn rec(&mut self, start: usize, cur: &mut Vec<usize>) -> Result<()> {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::budget("model search node", self.nodes, self.budget));
            }
            if cur.len() > self.best.len() {
                self.best = cur.clone();
            }
            let total = self.model.sets.len();
            if cur.len() + (total - start) <= self.best.len() {
                return Ok(());
            }
            for i in start..total {
                cur.push(i);
                if self.model.is_independent(cur) {
                    self.rec(i + 1, cur)?;
                }
                cur.pop();
            }
            Ok(())
        }
    }
    let mut search = Search {
        model: &model,
        best: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    search.rec(0, &mut Vec::new())?;
    let kinds = search.best.iter().map(|&i| model.kinds[i]).collect();
    Ok((search.best.len(), kinds))
}

pub const DEFAULT_MODEL_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub n: usize,
    pub group_classes: usize,
    pub model_sets: usize,
    pub group_sets: usize,
    /// The outer automorphism swaps the two 5-cycle classes and fixes the rest.
    pub twist_matches_outer: bool,
    pub matched: bool,
    pub iota_group: usize,
    pub iota_model: usize,
    pub m_i_group: usize,
}

impl Crosscheck {
    pub fn passed(&self) -> bool {
        self.twist_matches_outer && self.matched && self.iota_group == self.iota_model
    }
}

fn block_perm(blocks: &[&Perm]) -> Perm {
    let mut images = Vec::new();
    for (b, p) in blocks.iter().enumerate() {
        images.extend(p.images().iter().map(|&x| x as usize + b * OMEGA));
    }
    Perm::from_images(images).expect("block images form a permutation")
}

/// Builds `Alt(5)^n` for `n <= 2`, its maximal subgroups of product and
/// diagonal type, and compares the class sets they cover with the model.
pub fn crosscheck_group_model(n: usize) -> Result<Crosscheck> {
    if !(1..=2).contains(&n) {
        return Err(Error::InvalidParameter(format!(
            "group crosscheck supports n in 1..=2, got {n}"
        )));
    }
    let a5p = builder::alternating(5)?;
    let a5 = FiniteGroup::new(&a5p, DEFAULT_ELEMENT_BUDGET)?;
    let a5t = ClassTable::new(&a5)?;
    let orders: Vec<u32> = (0..a5t.len()).map(|c| a5t.elem_order(c)).collect();
    if orders != [1, 2, 3, 5, 5] {
        return Err(Error::Unsupported("unexpected class ordering for Alt(5)".into()));
    }
    let a5max = maximal_subgroups(&a5, 2000)?;

    let swap = Perm::parse("(1,2)", OMEGA)?;
    let outer = |x: &Perm| x.conjugate(&swap).expect("degrees agree");
    let twist_matches_outer = (0..OMEGA).all(|c| {
        let img = outer(&a5.perm(a5t.rep(c)));
        a5t.class_of(a5.id_of(&img).expect("outer image is even")) == twist(c)
    });

    let mut gp = a5p.clone();
    for _ in 1..n {
        gp = builder::direct_product(&gp, &a5p)?;
    }
    let g = FiniteGroup::new(&gp, DEFAULT_ELEMENT_BUDGET)?;
    let gt = ClassTable::new(&g)?;
    let model = DeltaModel::build(n)?;
    let tuple_of = |c: usize| -> usize {
        let p = g.perm(gt.rep(c));
        let t: Vec<usize> = (0..n)
            .map(|b| {
                let images: Vec<usize> = (0..OMEGA)
                    .map(|i| p.image(b * OMEGA + i) - b * OMEGA)
                    .collect();
                let q = Perm::from_images(images).expect("blocks are preserved");
                a5t.class_of(a5.id_of(&q).expect("block element is even"))
            })
            .collect();
        DeltaModel::encode(&t)
    };
    let class_tuple: Vec<usize> = (0..gt.len()).map(tuple_of).collect();

    let identity = Perm::identity(OMEGA);
    let a5gens: Vec<Perm> = a5p.generators().to_vec();
    let mut subgroups: Vec<PermGroup> = Vec::new();
    for i in 0..n {
        for m in &a5max {
            let mut gens = Vec::new();
            for b in 0..n {
                let local: Vec<Perm> = if b == i {
                    m.rep.gens().iter().map(|&e| a5.perm(e)).collect()
                } else {
                    a5gens.clone()
                };
                for s in local {
                    let blocks: Vec<&Perm> = (0..n).map(|c| if c == b { &s } else { &identity }).collect();
                    gens.push(block_perm(&blocks));
                }
            }
            subgroups.push(PermGroup::new(OMEGA * n, &gens)?);
        }
    }
    if n == 2 {
        for phi in [false, true] {
            let gens: Vec<Perm> = a5gens
                .iter()
                .map(|s| {
                    let t = if phi { outer(s) } else { s.clone() };
                    block_perm(&[s, &t])
                })
                .collect();
            subgroups.push(PermGroup::new(OMEGA * n, &gens)?);
        }
    }

    let mut group_sets: FxHashSet<FixedBitSet> = FxHashSet::default();
    let mut class_sets: Vec<ClassSet> = Vec::new();
    for h in &subgroups {
        let sub = g.subgroup_of(h)?;
        let fused = gt.fusion(&sub);
        class_sets.push(fused);
        let mut s = FixedBitSet::with_capacity(model.size());
        for c in fused.iter() {
            s.insert(class_tuple[c]);
        }
        group_sets.insert(s);
    }
    if n == 1 {
        let lattice_sets: FxHashSet<FixedBitSet> = a5max
            .iter()
            .map(|m| {
                let mut s = FixedBitSet::with_capacity(model.size());
                for c in a5t.fusion(&m.rep).iter() {
                    s.insert(c);
                }
                s
            })
            .collect();
        if lattice_sets != group_sets {
            return Err(Error::Unsupported("explicit maximals disagree with the lattice".into()));
        }
    }
    let model_sets: FxHashSet<FixedBitSet> = model.sets.iter().cloned().collect();
    let family = MStarFamily::from_sets(gt.len(), &class_sets);
    let iota_group = family.iota().0;
    let m_i_group = family.m_i().0;
    let iota_model = iota_model(n, DEFAULT_MODEL_BUDGET)?.0;
    Ok(Crosscheck {
        n,
        group_classes: gt.len(),
        model_sets: model_sets.len(),
        group_sets: group_sets.len(),
        twist_matches_outer,
        matched: model_sets == group_sets,
        iota_group,
        iota_model,
        m_i_group,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_sizes() {
        let m = DeltaModel::build(1).unwrap();
        let sizes: Vec<usize> = m.sets().iter().map(|s| s.count_ones(..)).collect();
        assert_eq!(sizes, vec![3, 4]);
        let m = DeltaModel::build(2).unwrap();
        assert_eq!(m.sets().len(), 6);
        let sizes: Vec<usize> = m.sets().iter().map(|s| s.count_ones(..)).collect();
        assert_eq!(sizes, vec![15, 20, 15, 20, 5, 5]);
        assert!(m.sets().iter().all(|s| s.contains(0)));
        assert!(DeltaModel::build(0).is_err());
        assert!(DeltaModel::build(7).is_err());
        assert_eq!(m.decode(DeltaModel::encode(&[3, 1])), vec![3, 1]);
    }

    #[test]
    fn iota_small() {
        assert_eq!(iota_model(1, DEFAULT_MODEL_BUDGET).unwrap().0, 2);
        assert_eq!(iota_model(2, DEFAULT_MODEL_BUDGET).unwrap().0, 4);
    }

    #[test]
    fn markers() {
        for n in 1..=3 {
            let m = DeltaModel::build(n).unwrap();
            let x = m.marker_set();
            assert_eq!(x.len(), 2 * n);
            assert!(m.is_minimal_generating(&x));
        }
    }

    #[test]
    fn crosscheck_one() {
        let c = crosscheck_group_model(1).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.group_classes, 5);
    }
}

//! Subgroups up to conjugacy and maximal subgroups.

use fixedbitset::FixedBitSet;
use rustc_hash::{FxHashMap, FxHashSet};

use crate::builder::AffineGroup;
use crate::error::{Error, Result};
use crate::finite::{Elem, FiniteGroup, Subgroup, DEFAULT_ELEMENT_BUDGET};
use crate::fp::{self, FpMatrix};

/// Largest group order for which the full subgroup lattice is computed.
pub const DEFAULT_LATTICE_BUDGET: usize = 2000;

#[derive(Clone, Debug)]
pub struct SubgroupClass {
    pub rep: Subgroup,
    pub conjugates: Vec<FixedBitSet>,
    pub normal: bool,
    pub maximal: bool,
}

impl SubgroupClass {
    pub fn order(&self) -> usize {
        self.rep.order()
    }

    pub fn size(&self) -> usize {
        self.conjugates.len()
    }
}

/// All subgroups of a group, grouped into conjugacy classes sorted by order.
#[derive(Clone, Debug)]
pub struct Lattice {
    classes: Vec<SubgroupClass>,
}

impl Lattice {
    pub fn compute(g: &FiniteGroup, budget: usize) -> Result<Self> {
        if g.order() > budget {
            return Err(Error::budget("lattice", g.order() as u128, budget as u128));
        }
        let prime_power: Vec<bool> = g
            .elements()
            .map(|x| is_prime_power(g.elem_order(x)))
            .collect();
        let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
        let trivial = g.trivial();
        seen.insert(trivial.elements().clone());
        let mut reps = vec![trivial];
        let mut conjugates = vec![vec![reps[0].elements().clone()]];
        let mut ci = 0;
        while ci < reps.len() {
            let h = reps[ci].clone();
            let mut done = h.elements().clone();
            for x in g.elements() {
                if done.contains(x as usize) || !prime_power[x as usize] {
                    continue;
                }
                for y in h.iter() {
                    done.insert(g.mul(y, x) as usize);
                }
                let k = g.extend(&h, x);
                if seen.contains(k.elements()) {
                    continue;
                }
                let conj = g.conjugates_of_set(k.elements());
                for c in &conj {
                    seen.insert(c.clone());
                }
                reps.push(k);
                conjugates.push(conj);
            }
            ci += 1;
        }
        let mut classes: Vec<SubgroupClass> = reps
            .into_iter()
            .zip(conjugates)
            .map(|(rep, conj)| SubgroupClass {
                normal: conj.len() == 1,
                rep,
                conjugates: conj,
                maximal: false,
            })
            .collect();
        Self::finish(g, &mut classes);
        Ok(Lattice { classes })
    }

    /// Rebuilds a lattice from one generating set per class (e.g. read from a cache).
    pub fn from_class_generators(g: &FiniteGroup, gens: &[Vec<Elem>]) -> Result<Self> {
        let mut classes = Vec::new();
        for gs in gens {
            if gs.iter().any(|&x| x as usize >= g.order()) {
                return Err(Error::InvalidParameter("element id out of range".into()));
            }
            let rep = g.closure(gs);
            let conj = g.conjugates_of_set(rep.elements());
            classes.push(SubgroupClass {
                normal: conj.len() == 1,
                rep,
                conjugates: conj,
                maximal: false,
            });
        }
        Self::finish(g, &mut classes);
        Ok(Lattice { classes })
    }

    fn finish(g: &FiniteGroup, classes: &mut [SubgroupClass]) {
        classes.sort_by_cached_key(|c| {
            let elems: Vec<usize> = c.rep.elements().ones().collect();
            (c.order(), c.size(), elems)
        });
        let n = g.order();
        let flags: Vec<bool> = classes
            .iter()
            .map(|k| {
                k.order() < n
                    && !classes.iter().any(|l| {
                        l.order() > k.order()
                            && l.order() < n
                            && l.order() % k.order() == 0
                            && l.conjugates
                                .iter()
                                .any(|s| k.rep.elements().is_subset(s))
                    })
            })
            .collect();
        for (c, f) in classes.iter_mut().zip(flags) {
            c.maximal = f;
        }
    }

    pub fn classes(&self) -> &[SubgroupClass] {
        &self.classes
    }

    pub fn total_subgroups(&self) -> usize {
        self.classes.iter().map(|c| c.size()).sum()
    }

    pub fn maximal_classes(&self) -> Vec<MaximalClass> {
        self.classes
            .iter()
            .filter(|c| c.maximal)
            .map(|c| MaximalClass {
                rep: c.rep.clone(),
                conjugates: c.conjugates.clone(),
                kind: MaximalKind::Lattice,
            })
            .collect()
    }

    pub fn normal_subgroups(&self) -> Vec<&Subgroup> {
        self.classes
            .iter()
            .filter(|c| c.normal)
            .map(|c| &c.rep)
            .collect()
    }
}

fn is_prime_power(n: u32) -> bool {
    if n <= 1 {
        return true;
    }
    let p = (2..=n).find(|d| n % d == 0).unwrap();
    let mut m = n;
    while m % p == 0 {
        m /= p;
    }
    m == 1
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MaximalKind {
    /// Found in the full subgroup lattice.
    Lattice,
    /// Contains the translation subgroup of an affine group.
    ContainsTranslations,
    /// Complement to a chief factor of the translation subgroup.
    Complement,
}

#[derive(Clone, Debug)]
pub struct MaximalClass {
    pub rep: Subgroup,
    pub conjugates: Vec<FixedBitSet>,
    pub kind: MaximalKind,
}

impl MaximalClass {
    pub fn order(&self) -> usize {
        self.rep.order()
    }
}

/// Maximal subgroups of `g` up to conjugacy, sorted by decreasing order.
pub fn maximal_subgroups(g: &FiniteGroup, budget: usize) -> Result<Vec<MaximalClass>> {
    let mut m = Lattice::compute(g, budget)?.maximal_classes();
    sort_maximals(&mut m);
    Ok(m)
}

/// Decreasing order, then class size, then elements.
pub fn sort_maximals(m: &mut [MaximalClass]) {
    m.sort_by_cached_key(|c| {
        let elems: Vec<usize> = c.rep.elements().ones().collect();
        (std::cmp::Reverse(c.order()), c.conjugates.len(), elems)
    });
}

/// Intersection of all maximal subgroups.
pub fn frattini_from_maximals(g: &FiniteGroup, maximals: &[MaximalClass]) -> Subgroup {
    let mut set = g.whole().elements().clone();
    for m in maximals {
        for c in &m.conjugates {
            set.intersect_with(c);
        }
    }
    g.subgroup_from_set(&set)
}

/// Maximal subgroups of `V : K` where the translation subgroup `V` is a
/// minimal normal subgroup.
pub fn maximal_subgroups_semidirect(
    g: &FiniteGroup,
    a: &AffineGroup,
    budget: usize,
) -> Result<Vec<MaximalClass>> {
    if a.dim == 0 {
        return Err(Error::InvalidParameter("trivial translation subgroup".into()));
    }
    let irreducible = if a.linear.is_empty() {
        a.dim == 1
    } else {
        fp::is_irreducible(&a.linear)
    };
    if !irreducible {
        return Err(Error::InvalidParameter(
            "translation subgroup is not minimal normal".into(),
        ));
    }
    maximal_subgroups_affine(g, a, budget)
}

/// Maximal subgroups of an affine group `V : K` for an arbitrary `K`-module `V`.
pub fn maximal_subgroups_affine(
    g: &FiniteGroup,
    a: &AffineGroup,
    budget: usize,
) -> Result<Vec<MaximalClass>> {
    if g.degree() != a.degree() || g.order() as u128 != a.group.order() {
        return Err(Error::InvalidParameter("group does not match affine data".into()));
    }
    let (p, d) = (a.p, a.dim);
    let id_of = |perm: &crate::perm::Perm| {
        g.id_of(perm)
            .ok_or_else(|| Error::NotSubgroup("affine map outside the group".into()))
    };
    let unit = |i: usize| {
        let mut v = vec![0u32; d];
        v[i] = 1;
        v
    };
    let translations: Vec<Elem> = (0..d)
        .map(|i| id_of(&a.translation(&unit(i))))
        .collect::<Result<_>>()?;
    let zero = vec![0u32; d];
    let linear_ids: Vec<Elem> = a
        .linear
        .iter()
        .map(|m| id_of(&a.map(m, &zero)))
        .collect::<Result<_>>()?;
    let v_sub = g.closure(&translations);
    let k_sub = g.closure(&linear_ids);
    let mut out = Vec::new();

    // Maximal subgroups containing V come from maximal subgroups of K.
    if k_sub.order() > 1 {
        let k_perm = g.to_perm_group(&k_sub)?;
        let kg = FiniteGroup::new(&k_perm, DEFAULT_ELEMENT_BUDGET)?;
        for mk in maximal_subgroups(&kg, budget)? {
            let mut h = v_sub.clone();
            for &x in mk.rep.gens() {
                h = g.extend(&h, id_of(&kg.perm(x))?);
            }
            let conj = g.conjugates_of_set(h.elements());
            out.push(MaximalClass {
                rep: h,
                conjugates: conj,
                kind: MaximalKind::ContainsTranslations,
            });
        }
    }

    // Complements modulo each maximal submodule W.
    let dual: Vec<FpMatrix> = a.linear.iter().map(|m| m.transpose()).collect();
    let target = |w_dim: usize| (p as usize).pow(w_dim as u32) * k_sub.order();
    let mut seen: FxHashSet<FixedBitSet> = FxHashSet::default();
    for u in minimal_submodules(&dual, p, d) {
        let w_basis = FpMatrix::from_vectors(p, d, &u).nullspace();
        let w_elems: Vec<Elem> = w_basis
            .iter()
            .map(|v| id_of(&a.translation(v)))
            .collect::<Result<_>>()?;
        let w_sub = g.closure(&w_elems);
        let reps = coset_representatives(p, d, &w_basis);
        let limit = target(w_basis.len());
        let r = a.linear.len();
        let mut choice = vec![0usize; r];
        loop {
            let mut h = w_sub.clone();
            let mut ok = true;
            for (j, m) in a.linear.iter().enumerate() {
                let x = id_of(&a.map(m, &reps[choice[j]]))?;
                match g.extend_bounded(&h, x, limit) {
                    Some(next) => h = next,
                    None => {
                        ok = false;
                        break;
                    }
                }
            }
            if ok && h.order() == limit && !seen.contains(h.elements()) {
                let conj = g.conjugates_of_set(h.elements());
                for c in &conj {
                    seen.insert(c.clone());
                }
                out.push(MaximalClass {
                    rep: h,
                    conjugates: conj,
                    kind: MaximalKind::Complement,
                });
            }
            if !advance(&mut choice, reps.len()) {
                break;
            }
        }
    }
    sort_maximals(&mut out);
    Ok(out)
}

fn advance(choice: &mut [usize], base: usize) -> bool {
    for c in choice.iter_mut().rev() {
        *c += 1;
        if *c < base {
            return true;
        }
        *c = 0;
    }
    false
}

/// All vectors of a complement of `span(w_basis)` in `F_p^d`, zero first.
fn coset_representatives(p: u32, d: usize, w_basis: &[Vec<u32>]) -> Vec<Vec<u32>> {
    let mut basis = w_basis.to_vec();
    let mut extra = Vec::new();
    for i in 0..d {
        let mut e = vec![0u32; d];
        e[i] = 1;
        let mut cand = basis.clone();
        cand.push(e.clone());
        if fp::span_dim(p, d, &cand) > basis.len() {
            basis = cand;
            extra.push(e);
        }
    }
    let c = extra.len();
    (0..(p as usize).pow(c as u32))
        .map(|idx| {
            let coeffs = fp::index_to_vector(idx, p, c);
            let mut v = vec![0u32; d];
            for (k, e) in extra.iter().enumerate() {
                for j in 0..d {
                    v[j] = (v[j] + coeffs[k] * e[j]) % p;
                }
            }
            v
        })
        .collect()
}

/// Minimal nonzero submodules of `F_p^d` (row vectors) under the given matrices,
/// each as a reduced basis.
pub fn minimal_submodules(gens: &[FpMatrix], p: u32, d: usize) -> Vec<Vec<Vec<u32>>> {
    let total = (p as usize).pow(d as u32);
    let mut covered = vec![false; total];
    let mut spin_dim: FxHashMap<usize, usize> = FxHashMap::default();
    let mut found: Vec<Vec<Vec<u32>>> = Vec::new();
    let spin = |v: Vec<u32>| -> Vec<Vec<u32>> {
        if gens.is_empty() {
            FpMatrix::from_vectors(p, d, &[v]).row_space()
        } else {
            fp::spin(gens, &[v])
        }
    };
    for idx in 1..total {
        if covered[idx] {
            continue;
        }
        let s = spin(fp::index_to_vector(idx, p, d));
        let members = span_members(p, d, &s);
        let minimal = members.iter().filter(|&&m| m != 0).all(|&m| {
            let dim = *spin_dim
                .entry(m)
                .or_insert_with(|| spin(fp::index_to_vector(m, p, d)).len());
            dim == s.len()
        });
        if minimal {
            for m in members {
                covered[m] = true;
            }
            found.push(s);
        }
    }
    found
}

fn span_members(p: u32, d: usize, basis: &[Vec<u32>]) -> Vec<usize> {
    let k = basis.len();
    (0..(p as usize).pow(k as u32))
        .map(|idx| {
            let coeffs = fp::index_to_vector(idx, p, k);
            let mut v = vec![0u32; d];
            for (c, b) in coeffs.iter().zip(basis) {
                for j in 0..d {
                    v[j] = (v[j] + c * b[j]) % p;
                }
            }
            fp::vector_to_index(&v, p)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::finite::DEFAULT_ELEMENT_BUDGET;

    fn fg(g: &crate::bsgs::PermGroup) -> FiniteGroup {
        FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET).unwrap()
    }

    #[test]
    fn small_lattices() {
        let s3 = fg(&builder::symmetric(3).unwrap());
        let l = Lattice::compute(&s3, 100).unwrap();
        assert_eq!(l.total_subgroups(), 6);
        assert_eq!(l.classes().len(), 4);
        let q8 = fg(&builder::dicyclic(2).unwrap());
        let l = Lattice::compute(&q8, 100).unwrap();
        assert_eq!(l.total_subgroups(), 6);
        assert!(l.classes().iter().all(|c| c.normal));
        let a5 = fg(&builder::alternating(5).unwrap());
        let l = Lattice::compute(&a5, 100).unwrap();
        assert_eq!(l.total_subgroups(), 59);
        assert_eq!(l.classes().len(), 9);
        assert!(Lattice::compute(&a5, 10).is_err());
    }

    #[test]
    fn maximal_orders() {
        let orders = |g: &FiniteGroup| -> Vec<usize> {
            maximal_subgroups(g, 1000)
                .unwrap()
                .iter()
                .map(|m| m.order())
                .collect()
        };
        assert_eq!(orders(&fg(&builder::alternating(5).unwrap())), vec![12, 10, 6]);
        assert_eq!(orders(&fg(&builder::l2_8().unwrap())), vec![56, 18, 14]);
        assert_eq!(orders(&fg(&builder::symmetric(4).unwrap())), vec![12, 8, 6]);
    }

    #[test]
    fn rebuild_from_generators() {
        let s4 = fg(&builder::symmetric(4).unwrap());
        let l = Lattice::compute(&s4, 100).unwrap();
        let gens: Vec<Vec<Elem>> = l.classes().iter().map(|c| c.rep.gens().to_vec()).collect();
        let r = Lattice::from_class_generators(&s4, &gens).unwrap();
        assert_eq!(r.total_subgroups(), l.total_subgroups());
        let flags: Vec<bool> = r.classes().iter().map(|c| c.maximal).collect();
        let orig: Vec<bool> = l.classes().iter().map(|c| c.maximal).collect();
        assert_eq!(flags, orig);
    }

    fn same_maximals(g: &FiniteGroup, a: &AffineGroup) {
        let via_lattice = maximal_subgroups(g, 2000).unwrap();
        let via_affine = maximal_subgroups_affine(g, a, 2000).unwrap();
        let key = |m: &[MaximalClass]| {
            let mut v: Vec<Vec<usize>> = m
                .iter()
                .flat_map(|c| c.conjugates.iter().map(|s| s.ones().collect()))
                .collect();
            v.sort();
            v
        };
        assert_eq!(key(&via_lattice), key(&via_affine));
    }

    #[test]
    fn affine_route_matches_lattice() {
        for a in [
            builder::c3c3_c2().unwrap(),
            builder::fp2_q8(3).unwrap(),
            builder::AffineGroup::new(2, 2, vec![]).unwrap(),
            builder::AffineGroup::new(
                3,
                2,
                vec![FpMatrix::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap()],
            )
            .unwrap(),
        ] {
            let g = fg(&a.group);
            same_maximals(&g, &a);
        }
    }

    #[test]
    fn semidirect_requires_minimal_normal() {
        let a = builder::AffineGroup::new(
            3,
            2,
            vec![FpMatrix::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap()],
        )
        .unwrap();
        let g = fg(&a.group);
        assert!(maximal_subgroups_semidirect(&g, &a, 2000).is_err());
        let b = builder::fp2_q8(3).unwrap();
        let g = fg(&b.group);
        let m = maximal_subgroups_semidirect(&g, &b, 2000).unwrap();
        assert!(m.iter().any(|c| c.kind == MaximalKind::Complement && c.order() == 8));
    }

    #[test]
    fn minimal_submodules_of_sums() {
        let m = FpMatrix::from_rows(3, &[vec![2, 0], vec![0, 2]]).unwrap();
        assert_eq!(minimal_submodules(&[m], 3, 2).len(), 4);
        let j = FpMatrix::from_rows(3, &[vec![1, 1], vec![0, 1]]).unwrap();
        assert_eq!(minimal_submodules(&[j], 3, 2).len(), 1);
    }
}

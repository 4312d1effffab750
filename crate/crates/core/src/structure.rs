//! Structural tests for soluble groups: Fitting subgroup, complements,
//! fixed-point-free actions and the shapes of groups with the invariable
//! basis property.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::finite::{Elem, FiniteGroup, Subgroup};
use crate::igen::{prime_divisors, subgroup_analysis, Analysis};
use crate::lattice::Lattice;
use crate::normal;

/// The prime `p` when `n` is a positive power of `p`.
pub fn prime_of_power(n: usize) -> Option<u64> {
    match prime_divisors(n as u64).as_slice() {
        [p] => Some(*p),
        _ => None,
    }
}

pub fn is_cyclic(g: &FiniteGroup, h: &Subgroup) -> bool {
    h.iter().any(|x| g.elem_order(x) as usize == h.order())
}

pub fn is_elementary_abelian(g: &FiniteGroup, h: &Subgroup) -> bool {
    let Some(p) = prime_of_power(h.order()) else {
        return false;
    };
    let elems: Vec<Elem> = h.iter().collect();
    elems.iter().all(|&x| x == g.identity() || g.elem_order(x) as u64 == p)
        && elems
            .iter()
            .all(|&x| elems.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// A non-cyclic 2-group with a single involution.
pub fn is_generalized_quaternion(g: &FiniteGroup, h: &Subgroup) -> bool {
    prime_of_power(h.order()) == Some(2)
        && !is_cyclic(g, h)
        && h.iter().filter(|&x| g.elem_order(x) == 2).count() == 1
}

/// Elements of `n` fixed by conjugation by `h`.
pub fn fixed_points(g: &FiniteGroup, n: &Subgroup, h: Elem) -> usize {
    n.iter().filter(|&x| g.conj(x, h) == x).count()
}

/// The largest normal nilpotent subgroup: the join of the largest normal
/// `p`-subgroups.
pub fn fitting_subgroup(g: &FiniteGroup, normals: &[Subgroup]) -> Subgroup {
    let mut f = g.trivial();
    for p in prime_divisors(g.order() as u64) {
        if let Some(op) = normals
            .iter()
            .filter(|n| prime_of_power(n.order()) == Some(p))
            .max_by_key(|n| n.order())
        {
            f = g.join(&f, op);
        }
    }
    f
}

pub fn is_nilpotent(g: &FiniteGroup, normals: &[Subgroup]) -> bool {
    fitting_subgroup(g, normals).order() == g.order()
}

/// Representatives of the conjugacy classes of complements of `n`.
pub fn complements(lattice: &Lattice, g: &FiniteGroup, n: &Subgroup) -> Vec<Subgroup> {
    lattice
        .classes()
        .iter()
        .map(|c| &c.rep)
        .filter(|h| h.order() * n.order() == g.order() && g.intersection(h, n).order() == 1)
        .cloned()
        .collect()
}

/// `n` is a minimal normal subgroup of `g`.
pub fn is_minimal_normal(g: &FiniteGroup, n: &Subgroup) -> bool {
    g.is_normal(n)
        && !n.is_trivial()
        && n
            .iter()
            .filter(|&x| x != g.identity())
            .all(|x| g.normal_closure(&g.closure(&[x])).order() == n.order())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IbpShape {
    /// Elementary abelian `p`-group.
    ElementaryAbelian,
    /// `P : Q` with `P` elementary abelian, `Q` a faithful cyclic `q`-group
    /// and `P` a sum of isomorphic simple modules.
    CyclicOnIsotypic,
    /// `N : H` with `H` generalized quaternion acting irreducibly on `N` of
    /// order `p^2`, `p = 3 mod 4`.
    QuaternionOnPlane,
}

/// Shape of a Frattini-free soluble group among those with the invariable
/// basis property, if any.
pub fn ibp_shape(g: &FiniteGroup, lattice: &Lattice) -> Result<Option<IbpShape>> {
    let whole = g.whole();
    if is_elementary_abelian(g, &whole) {
        return Ok(Some(IbpShape::ElementaryAbelian));
    }
    let primes = prime_divisors(g.order() as u64);
    if primes.len() != 2 {
        return Ok(None);
    }
    let normals: Vec<Subgroup> = lattice.normal_subgroups().into_iter().cloned().collect();
    let fit = fitting_subgroup(g, &normals);
    let Some(p) = prime_of_power(fit.order()) else {
        return Ok(None);
    };
    if !is_elementary_abelian(g, &fit) || g.centralizer_of_set(fit.elements()).order() != fit.order() {
        return Ok(None);
    }
    let q = if primes[0] == p { primes[1] } else { primes[0] };
    for h in complements(lattice, g, &fit) {
        if prime_of_power(h.order()) != Some(q) {
            continue;
        }
        if is_cyclic(g, &h) {
            let size = |x: Elem| g.normal_closure(&g.closure(&[x])).order();
            let first = fit.iter().find(|&x| x != g.identity()).map(size);
            if fit.iter().filter(|&x| x != g.identity()).all(|x| Some(size(x)) == first) {
                return Ok(Some(IbpShape::CyclicOnIsotypic));
            }
        } else if is_generalized_quaternion(g, &h)
            && fit.order() as u64 == p * p
            && p % 4 == 3
            && is_minimal_normal(g, &fit)
        {
            return Ok(Some(IbpShape::QuaternionOnPlane));
        }
    }
    Ok(None)
}

/// `d_I(H) = m_I(H)` for every subgroup `H`; groups with an element whose
/// order is not a prime power fail at once.
pub fn has_ibp(a: &Analysis, lattice: &Lattice, budget: usize) -> Result<bool> {
    if !a.is_cp() {
        return Ok(false);
    }
    Ok(a.ibp_failures(lattice, budget)?.is_empty())
}

/// `G = P : Q` with `P` a normal Sylow subgroup and `Q` a Sylow subgroup
/// acting fixed-point-freely on `P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SylowDecomposition {
    pub normal_order: usize,
    pub complement_order: usize,
    pub complement_cyclic: bool,
    pub complement_quaternion: bool,
}

pub fn fixed_point_free_sylow_decomposition(
    g: &FiniteGroup,
    lattice: &Lattice,
) -> Option<SylowDecomposition> {
    let primes = prime_divisors(g.order() as u64);
    if primes.len() <= 1 {
        return Some(SylowDecomposition {
            normal_order: g.order(),
            complement_order: 1,
            complement_cyclic: true,
            complement_quaternion: false,
        });
    }
    if primes.len() > 2 {
        return None;
    }
    let normals = lattice.normal_subgroups();
    for &p in &primes {
        let pp = {
            let mut n = g.order();
            let mut out = 1;
            while n as u64 % p == 0 {
                n /= p as usize;
                out *= p as usize;
            }
            out
        };
        let Some(sylow) = normals.iter().find(|n| n.order() == pp) else {
            continue;
        };
        for q in complements(lattice, g, sylow) {
            let free = q
                .iter()
                .filter(|&x| x != g.identity())
                .all(|x| fixed_points(g, sylow, x) == 1);
            if free {
                return Some(SylowDecomposition {
                    normal_order: pp,
                    complement_order: q.order(),
                    complement_cyclic: is_cyclic(g, &q),
                    complement_quaternion: is_generalized_quaternion(g, &q),
                });
            }
        }
    }
    None
}

/// The two possible structures of a Frattini-free soluble group with
/// `d_I = m_I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "case", rename_all = "snake_case")]
pub enum BiStructure {
    /// `d = m`.
    BGroup,
    /// `N : H` with `N` faithful irreducible, `H` with `d_I = m_I`, and every
    /// element of `H` outside `Frat_I(H)` acting without nontrivial fixed points.
    Module {
        module_order: usize,
        complement_order: usize,
        coprime: bool,
    },
}

/// Classifies a Frattini-free soluble group with `d_I = m_I`; `d` and `m` are
/// supplied by the caller.
pub fn bi_structure(
    a: &Analysis,
    lattice: &Lattice,
    d: usize,
    m: usize,
    budget: usize,
) -> Result<Option<BiStructure>> {
    if d == m {
        return Ok(Some(BiStructure::BGroup));
    }
    let g = &a.group;
    let normals: Vec<Subgroup> = lattice.normal_subgroups().into_iter().cloned().collect();
    let fit = fitting_subgroup(g, &normals);
    if !is_minimal_normal(g, &fit) || g.centralizer_of_set(fit.elements()).order() != fit.order() {
        return Ok(None);
    }
    for h in complements(lattice, g, &fit) {
        let ha = subgroup_analysis(g, &h, budget)?;
        if ha.family.d_i().0 != ha.family.m_i().0 {
            continue;
        }
        let frat = ha.family.frat_i();
        let ok = ha.group.elements().all(|x| {
            if frat.contains(ha.classes.class_of(x)) {
                return true;
            }
            let y = g.id_of(&ha.group.perm(x)).expect("subgroup element lies in the group");
            fixed_points(g, &fit, y) == 1
        });
        if ok {
            let coprime = gcd(fit.order(), h.order()) == 1;
            return Ok(Some(BiStructure::Module {
                module_order: fit.order(),
                complement_order: h.order(),
                coprime,
            }));
        }
    }
    Ok(None)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `m_I(G) >= m_I(G/N) + 1` for every minimal normal subgroup `N` outside
/// the Frattini subgroup. Returns the failing pairs `(|N|, m_I(G/N))`.
pub fn somma_failures(a: &Analysis, lattice: &Lattice, budget: usize) -> Result<Vec<(usize, usize)>> {
    let g = &a.group;
    let frat = a.frattini();
    let normals: Vec<Subgroup> = lattice.normal_subgroups().into_iter().cloned().collect();
    let m_i = a.family.m_i().0;
    let mut out = Vec::new();
    for n in normal::minimal_normal_subgroups(&normals) {
        if n.is_subgroup_of(&frat) {
            continue;
        }
        let q = normal::quotient(g, &n)?;
        let qg = FiniteGroup::new(&q.group, crate::finite::DEFAULT_ELEMENT_BUDGET)?;
        let qm = Analysis::from_lattice(qg, budget)?.family.m_i().0;
        if m_i < qm + 1 {
            out.push((n.order(), qm));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builder;
    use crate::finite::DEFAULT_ELEMENT_BUDGET;

    fn setup(g: &crate::bsgs::PermGroup) -> (Analysis, Lattice) {
        let f = FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET).unwrap();
        let l = Lattice::compute(&f, 2000).unwrap();
        (Analysis::new(f, l.maximal_classes()).unwrap(), l)
    }

    #[test]
    fn shapes() {
        let (a, l) = setup(&builder::symmetric(3).unwrap());
        assert_eq!(ibp_shape(&a.group, &l).unwrap(), Some(IbpShape::CyclicOnIsotypic));
        assert!(has_ibp(&a, &l, 2000).unwrap());
        let (a, l) = setup(&builder::fp2_q8(3).unwrap().group);
        assert_eq!(ibp_shape(&a.group, &l).unwrap(), Some(IbpShape::QuaternionOnPlane));
        let (a, l) = setup(&builder::symmetric(4).unwrap());
        assert_eq!(ibp_shape(&a.group, &l).unwrap(), None);
        assert!(!has_ibp(&a, &l, 2000).unwrap());
        let (a, l) = setup(&builder::elementary_abelian(2, 3).unwrap());
        assert_eq!(ibp_shape(&a.group, &l).unwrap(), Some(IbpShape::ElementaryAbelian));
    }

    #[test]
    fn fitting_and_decomposition() {
        let (a, l) = setup(&builder::symmetric(4).unwrap());
        let normals: Vec<Subgroup> = l.normal_subgroups().into_iter().cloned().collect();
        assert_eq!(fitting_subgroup(&a.group, &normals).order(), 4);
        assert!(!is_nilpotent(&a.group, &normals));
        let (a, l) = setup(&builder::dicyclic(2).unwrap());
        let normals: Vec<Subgroup> = l.normal_subgroups().into_iter().cloned().collect();
        assert!(is_nilpotent(&a.group, &normals));
        assert!(is_generalized_quaternion(&a.group, &a.group.whole()));
        let (a, l) = setup(&builder::fp2_q8(3).unwrap().group);
        let dec = fixed_point_free_sylow_decomposition(&a.group, &l).unwrap();
        assert_eq!((dec.normal_order, dec.complement_order), (9, 8));
        assert!(dec.complement_quaternion);
        let s = bi_structure(&a, &l, 2, 3, 2000).unwrap();
        assert_eq!(
            s,
            Some(BiStructure::Module {
                module_order: 9,
                complement_order: 8,
                coprime: true
            })
        );
        assert!(somma_failures(&a, &l, 2000).unwrap().is_empty());
    }
}

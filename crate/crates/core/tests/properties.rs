use std::collections::BTreeSet;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use invgen_core::builder::{self, AffineGroup};
use invgen_core::classes::{ClassSet, ClassTable};
use invgen_core::corpus;
use invgen_core::crown;
use invgen_core::finite::{Elem, FiniteGroup, DEFAULT_ELEMENT_BUDGET};
use invgen_core::igen::{d_classical, m_classical, mi_additivity_check, subgroup_analysis, Analysis};
use invgen_core::lattice::Lattice;
use invgen_core::normal;
use invgen_core::structure;
use invgen_core::suite::{linear_subgroup, translation_subgroup};
use invgen_core::tarski::{Closure, ClosureBudget, NaryVerdict};
use invgen_core::{Perm, PermGroup};

struct Entry {
    name: String,
    a: Analysis,
    l: Lattice,
    affine: Option<AffineGroup>,
}

fn fg(g: &PermGroup) -> FiniteGroup {
    FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET).unwrap()
}

fn entry(name: &str, g: &PermGroup, affine: Option<AffineGroup>) -> Entry {
    let f = fg(g);
    let l = Lattice::compute(&f, 2000).unwrap();
    let a = Analysis::new(f, l.maximal_classes()).unwrap();
    Entry {
        name: name.to_string(),
        a,
        l,
        affine,
    }
}

fn corpus() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        let mut v: Vec<Entry> = corpus::soluble_corpus()
            .unwrap()
            .into_iter()
            .map(|ng| entry(&ng.name, &ng.group, ng.affine))
            .collect();
        v.push(entry("Alt(5)", &builder::alternating(5).unwrap(), None));
        v.push(entry("Sym(5)", &builder::symmetric(5).unwrap(), None));
        v
    })
}

fn perm(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

fn bits(order: usize, elems: impl IntoIterator<Item = Elem>) -> FixedBitSet {
    let mut s = FixedBitSet::with_capacity(order);
    for e in elems {
        s.insert(e as usize);
    }
    s
}

fn subset_of(order: usize, mask: u64) -> Vec<Elem> {
    (0..order.min(64)).filter(|i| mask >> i & 1 == 1).map(|i| i as Elem).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn perm_group_laws(a in perm(7), b in perm(7), c in perm(7)) {
        let ab_c = a.compose(&b).unwrap().compose(&c).unwrap();
        let a_bc = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(ab_c, a_bc);
        prop_assert!(a.compose(&a.inverse()).unwrap().is_identity());
        let conj = b.inverse().compose(&a).unwrap().compose(&b).unwrap();
        prop_assert_eq!(a.conjugate(&b).unwrap(), conj);
        prop_assert_eq!(Perm::parse(&a.to_cycle_string(), 7).unwrap(), a.clone());
        prop_assert_eq!(a.pow(a.order()), Perm::identity(7));
    }

    #[test]
    fn bsgs_matches_brute_force(a in perm(6), b in perm(6), x in perm(6)) {
        let g = PermGroup::new(6, &[a.clone(), b.clone()]).unwrap();
        let mut seen: BTreeSet<Perm> = BTreeSet::from([Perm::identity(6)]);
        let mut frontier = vec![Perm::identity(6)];
        while let Some(p) = frontier.pop() {
            for s in [&a, &b] {
                let q = p.compose(s).unwrap();
                if seen.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        prop_assert_eq!(g.order(), seen.len() as u128);
        let inside = g.contains(&x).unwrap();
        prop_assert_eq!(inside, seen.contains(&x));
        if inside {
            prop_assert!(g.contains(&x.inverse()).unwrap());
        }
        let h = PermGroup::new(6, &[a.compose(&b).unwrap()]).unwrap();
        for orbit in h.orbits() {
            let home = g.orbits().into_iter().find(|o| o.contains(&orbit[0])).unwrap();
            prop_assert!(orbit.iter().all(|p| home.contains(p)));
        }
    }

    #[test]
    fn class_of_is_conjugation_invariant(i in 0usize..52, x in any::<u32>(), y in any::<u32>()) {
        let e = &corpus()[i % corpus().len()];
        let g = &e.a.group;
        let x = x % g.order() as u32;
        let y = y % g.order() as u32;
        let t = &e.a.classes;
        prop_assert_eq!(t.class_of(x), t.class_of(g.conj(x, y)));
        prop_assert_eq!(t.elem_order(t.class_of(x)), g.elem_order(x));
        prop_assert_eq!(t.fusion(&g.whole()), t.all());
    }

    #[test]
    fn fusion_is_monotone(i in 0usize..52, j in any::<usize>(), k in any::<usize>()) {
        let e = &corpus()[i % corpus().len()];
        let classes = e.l.classes();
        let h1 = &classes[j % classes.len()].rep;
        let h2 = &classes[k % classes.len()].rep;
        if h1.is_subgroup_of(h2) {
            prop_assert!(e.a.classes.fusion(h1).is_subset(e.a.classes.fusion(h2)));
        }
    }

    #[test]
    fn nilpotent_groups_igen_iff_generate(i in 0usize..52, mask in any::<u64>()) {
        let e = &corpus()[i % corpus().len()];
        let g = &e.a.group;
        let normals: Vec<_> = e.l.normal_subgroups().into_iter().cloned().collect();
        if structure::is_nilpotent(g, &normals) {
            let xs = subset_of(g.order(), mask);
            prop_assert_eq!(e.a.igen_check(&xs).unwrap(), g.closure(&xs).order() == g.order());
        }
    }

    #[test]
    fn frattini_is_the_set_of_non_generators(i in 0usize..52, x in any::<u32>()) {
        let e = &corpus()[i % corpus().len()];
        let g = &e.a.group;
        prop_assume!(g.order() <= 200);
        let x = x % g.order() as u32;
        let cx = g.closure(&[x]);
        let non_generator = e.l.classes().iter().all(|c| {
            c.conjugates.iter().all(|h| {
                let h = g.subgroup_from_set(h);
                g.join(&h, &cx).order() < g.order() || h.order() == g.order()
            })
        });
        prop_assert_eq!(e.a.frattini().contains(x), non_generator);
    }

    #[test]
    fn module_generator_completes_invariable_generation(i in 0usize..52, mask in any::<u64>(), y in any::<u32>()) {
        let e = &corpus()[i % corpus().len()];
        let Some(aff) = &e.affine else { return Ok(()) };
        let g = &e.a.group;
        let v = translation_subgroup(g, aff).unwrap();
        let h = linear_subgroup(g, aff).unwrap();
        let y = v.iter().nth(y as usize % v.order()).unwrap();
        prop_assume!(g.normal_closure(&g.closure(&[y])).order() == v.order());
        let hk = subgroup_analysis(g, &h, 2000).unwrap();
        let hs: Vec<Elem> = h.iter().collect();
        let xs: Vec<Elem> = subset_of(hs.len(), mask).into_iter().map(|k| hs[k as usize]).collect();
        let local: Vec<Elem> = xs.iter().map(|&x| hk.group.id_of(&g.perm(x)).unwrap()).collect();
        prop_assume!(hk.igen_check(&local).unwrap());
        let mut all = xs.clone();
        all.push(y);
        prop_assert!(e.a.igen_check(&all).unwrap(), "{}: {:?} with {}", e.name, xs, y);
    }

    #[test]
    fn crown_matrix_agrees_with_group(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spec = crown::RandomSpec { max_delta: 2, ..Default::default() };
        let inst = crown::random_instance(&mut rng, &spec);
        prop_assert_eq!(
            crown::igen_matrix_check(&inst, false).unwrap(),
            crown::oracle_check(&inst).unwrap()
        );
        for y in &inst.ys {
            let n = y.rows();
            prop_assert_eq!(crown::commutator_space(y).len() + crown::fixed_space(y).len(), n);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn closure_laws_on_small_groups(which in 0usize..2, m1 in 0u64..256, m2 in 0u64..256) {
        let g = fg(&[builder::dicyclic(2).unwrap(), builder::dihedral(4).unwrap()][which]);
        let t = ClassTable::new(&g).unwrap();
        let mut c = Closure::new(&g, &t, ClosureBudget::default());
        let x = bits(8, subset_of(8, m1));
        let y = {
            let mut y = x.clone();
            y.union_with(&bits(8, subset_of(8, m2)));
            y
        };
        let cx = c.closure(&x).unwrap();
        let cy = c.closure(&y).unwrap();
        prop_assert!(x.is_subset(&cx));
        prop_assert!(cx.is_subset(&cy));
        prop_assert_eq!(c.closure(&cx).unwrap(), cx.clone());
        let core = c.intersection(&x).unwrap();
        prop_assert!(g.is_normal(&g.subgroup_from_set(&core)));
    }

    #[test]
    fn pruning_is_sound(i in 0usize..52, mask in any::<u64>()) {
        let e = &corpus()[i % corpus().len()];
        let g = &e.a.group;
        prop_assume!(g.order() <= 24);
        let xs: Vec<Elem> = subset_of(g.order(), mask).into_iter().take(3).collect();
        let mut c = Closure::new(g, &e.a.classes, ClosureBudget::default());
        let x = c.set(&xs);
        prop_assert_eq!(c.closure(&x).unwrap(), c.closure_unpruned(&x).unwrap());
    }
}

#[test]
fn invariant_chain_on_corpus() {
    for e in corpus() {
        let g = &e.a.group;
        let d = d_classical(g).0;
        let (d_i, m_i) = (e.a.family.d_i().0, e.a.family.m_i().0);
        let iota = e.a.family.iota().0;
        assert!(d <= d_i && d_i <= m_i && m_i <= iota, "{}: {d} {d_i} {m_i} {iota}", e.name);
        for w in [e.a.family.d_i().1, e.a.family.m_i().1] {
            let reps: Vec<Elem> = w.iter().map(|c| e.a.classes.rep(c)).collect();
            assert_eq!(e.a.classes.classes_of(reps.iter().copied()).len(), reps.len());
            assert!(e.a.family.is_minimal_generating(w), "{}", e.name);
        }
        let frat = e.a.family.frat_i();
        assert!(frat.contains(0));
        if g.order() <= 100 && e.a.is_soluble().unwrap() {
            let m = m_classical(g).0;
            assert_eq!(e.a.m_formula().unwrap(), m, "{}", e.name);
            if d == m {
                assert_eq!(d_i, m_i, "{}: B-group that is not B_I", e.name);
            }
        }
    }
}

#[test]
fn quotient_orders_multiply() {
    for e in corpus() {
        let g = &e.a.group;
        for n in normal::normal_subgroups(g, &e.a.classes) {
            let q = normal::quotient(g, &n).unwrap();
            assert_eq!(n.order() as u128 * q.group.order(), g.order() as u128, "{}", e.name);
        }
    }
}

#[test]
fn abelian_groups_are_binary() {
    for e in corpus() {
        let g = &e.a.group;
        if !g.is_abelian() || g.order() > 16 {
            continue;
        }
        let mut c = Closure::new(g, &e.a.classes, ClosureBudget::default());
        for n in 2..=3 {
            let v = c.is_invariable_nary(n, None);
            assert!(matches!(v, NaryVerdict::Yes { .. }), "{} n={n}: {v:?}", e.name);
        }
    }
}

#[test]
fn psl2_5_resembles_alt5() {
    let a = &corpus().iter().find(|e| e.name == "Alt(5)").unwrap();
    let p = entry("L2(5)", &builder::psl2(5).unwrap(), None);
    let sizes = |e: &Entry| {
        let mut v: Vec<usize> = (0..e.a.classes.len()).map(|c| e.a.classes.size(c)).collect();
        v.sort();
        v
    };
    let maximal_orders = |e: &Entry| {
        let mut v: Vec<usize> = e.a.maximals.iter().map(|m| m.order()).collect();
        v.sort();
        v
    };
    assert_eq!(p.a.group.order(), 60);
    assert_eq!(sizes(&p), sizes(a));
    assert_eq!(maximal_orders(&p), maximal_orders(a));
}

#[test]
fn mi_additivity() {
    let c = mi_additivity_check(&builder::symmetric(3).unwrap(), &builder::cyclic(5).unwrap(), 2000)
        .unwrap();
    assert_eq!((c.sum, c.product), (3, 3));
    let c = mi_additivity_check(&builder::cyclic(2).unwrap(), &builder::cyclic(2).unwrap(), 2000)
        .unwrap();
    assert_eq!((c.sum, c.product), (2, 2));
}

#[test]
fn frattini_inside_frat_i() {
    for e in corpus() {
        let frat_i = e.a.family.frat_i();
        let classes: ClassSet = e.a.classes.classes_of(e.a.frattini().iter());
        assert!(classes.is_subset(frat_i), "{}", e.name);
    }
}

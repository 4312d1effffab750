//! Verification suites: each check recomputes a known value and records one
//! assertion per compared quantity.

use std::fmt::Debug;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bsgs::PermGroup;
use crate::builder::{self, AffineGroup};
use crate::classes::{ClassSet, ClassTable};
use crate::corpus;
use crate::crown::{self, RandomSpec};
use crate::error::{Error, Result};
use crate::finite::{Elem, FiniteGroup, Subgroup, DEFAULT_ELEMENT_BUDGET};
use crate::igen::{d_classical, m_classical, Analysis, MStarFamily};
use crate::lattice::{maximal_subgroups_semidirect, Lattice};
use crate::perm::Perm;
use crate::product_model;
use crate::structure;
use crate::tarski::{Closure, ClosureBudget, NaryVerdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Core,
    SolubleCorpus,
    Stretch,
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "core" => Ok(Suite::Core),
            "soluble-corpus" => Ok(Suite::SolubleCorpus),
            "stretch" => Ok(Suite::Stretch),
            _ => Err(Error::InvalidParameter(format!(
                "unknown suite {s:?} (expected core, soluble-corpus or stretch)"
            ))),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub seed: u64,
    pub lattice_budget: usize,
    pub crown_instances: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 1,
            lattice_budget: crate::lattice::DEFAULT_LATTICE_BUDGET,
            crown_instances: 200,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assertion {
    pub what: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub time_limit_secs: u64,
    pub assertions: Vec<Assertion>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }

    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skipped => "SKIPPED",
        };
        let mut line = format!("[{status}] {} {}", self.id, self.name);
        if let Some(r) = &self.reason {
            line.push_str(&format!(" ({r})"));
        }
        line
    }
}

#[derive(Default)]
pub struct Recorder {
    assertions: Vec<Assertion>,
}

impl Recorder {
    pub fn check(&mut self, what: impl Into<String>, pass: bool) {
        self.assertions.push(Assertion {
            what: what.into(),
            pass,
        });
    }

    pub fn eq<T: PartialEq + Debug>(&mut self, what: &str, got: T, want: T) {
        let pass = got == want;
        self.check(format!("{what} = {got:?} (expected {want:?})"), pass);
    }
}

enum Outcome {
    Done,
    Skip(String),
}

fn run(
    id: &str,
    name: &str,
    limit_secs: u64,
    f: impl FnOnce(&mut Recorder) -> Result<Outcome>,
) -> CheckResult {
    let start = Instant::now();
    let mut r = Recorder::default();
    let outcome = f(&mut r);
    let elapsed = start.elapsed();
    let mut reason = None;
    let mut skipped = false;
    match outcome {
        Ok(Outcome::Done) => {}
        Ok(Outcome::Skip(why)) => {
            skipped = true;
            reason = Some(why);
        }
        Err(e) => r.check(format!("error: {e}"), false),
    }
    r.check(
        format!("finished within {limit_secs} s"),
        elapsed.as_secs_f64() < limit_secs as f64,
    );
    let failed = r.assertions.iter().any(|a| !a.pass);
    let status = if failed {
        Status::Fail
    } else if skipped {
        Status::Skipped
    } else {
        Status::Pass
    };
    CheckResult {
        id: id.to_string(),
        name: name.to_string(),
        status,
        reason,
        time_limit_secs: limit_secs,
        assertions: r.assertions,
        elapsed,
    }
}

pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Vec<CheckResult> {
    match suite {
        Suite::Core => vec![
            alt5(cfg),
            sym4(cfg),
            alt6(cfg),
            alt29(),
            f3sq_q8(),
            f13sq_dic12(),
            asl2_4(),
            product_model_check(),
            tarski_check(),
            crown_oracle(cfg),
            ibp_spot_checks(cfg),
        ],
        Suite::SolubleCorpus => vec![soluble_corpus(cfg), soluble_structure(cfg)],
        Suite::Stretch => vec![stretch(cfg)],
    }
}

fn fg(g: &PermGroup) -> Result<FiniteGroup> {
    FiniteGroup::new(g, DEFAULT_ELEMENT_BUDGET)
}

pub fn lattice_analysis(g: &PermGroup, budget: usize) -> Result<(Analysis, Lattice)> {
    let f = fg(g)?;
    let l = Lattice::compute(&f, budget)?;
    let a = Analysis::new(f, l.maximal_classes())?;
    Ok((a, l))
}

pub fn semidirect_analysis(a: &AffineGroup, budget: usize) -> Result<Analysis> {
    let g = fg(&a.group)?;
    let mx = maximal_subgroups_semidirect(&g, a, budget)?;
    Analysis::new(g, mx)
}

fn class_sets(family: &MStarFamily, idx: &[usize]) -> Vec<ClassSet> {
    let mut v: Vec<ClassSet> = idx.iter().map(|&i| family.members()[i]).collect();
    v.sort();
    v
}

pub fn alt5(cfg: &SuiteConfig) -> CheckResult {
    run("1", "Alt(5) invariants", 1, |r| {
        let (a, _) = lattice_analysis(&builder::alternating(5)?, cfg.lattice_budget)?;
        let orders: Vec<u32> = (0..a.classes.len()).map(|c| a.classes.elem_order(c)).collect();
        r.eq("class element orders", orders, vec![1, 2, 3, 5, 5]);
        let m = m_classical(&a.group).0;
        r.eq("m", m, 3);
        let d = d_classical(&a.group).0;
        let (d_i, m_i) = (a.family.d_i().0, a.family.m_i().0);
        r.eq("m_I", m_i, 2);
        r.eq("d_I", d_i, 2);
        r.eq("is_BI", d_i == m_i, true);
        r.eq("is_B", d == m, false);
        r.eq("Frat_I classes", a.family.frat_i().to_vec(), vec![0, 1]);
        let (iota, w) = a.family.iota();
        r.eq("iota", iota, 2);
        r.eq(
            "independent family",
            class_sets(&a.family, &w),
            vec![ClassSet::from_ids([0, 1, 2]), ClassSet::from_ids([0, 1, 3, 4])],
        );
        Ok(Outcome::Done)
    })
}

pub fn sym4(cfg: &SuiteConfig) -> CheckResult {
    run("2", "Sym(4) invariants", 1, |r| {
        let (a, l) = lattice_analysis(&builder::symmetric(4)?, cfg.lattice_budget)?;
        let irb = a.family.irb();
        r.eq("d_I", a.family.d_i().0, 2);
        r.eq("m_I", irb.m_i, 3);
        r.eq("irb_I", irb.sizes.into_iter().collect::<Vec<_>>(), vec![2, 3]);
        r.eq("has_IBP", structure::has_ibp(&a, &l, cfg.lattice_budget)?, false);
        Ok(Outcome::Done)
    })
}

pub fn alt6(cfg: &SuiteConfig) -> CheckResult {
    run("3", "Alt(6) fusion containment", 30, |r| {
        let (a, _) = lattice_analysis(&builder::alternating(6)?, cfg.lattice_budget)?;
        let fusion = |order: usize| -> Vec<ClassSet> {
            a.maximals
                .iter()
                .filter(|m| m.order() == order)
                .map(|m| a.classes.fusion(&m.rep))
                .collect()
        };
        let s4 = fusion(24);
        let big = fusion(36);
        r.check(format!("maximal classes of order 24: {}", s4.len()), !s4.is_empty());
        r.eq("maximal classes of order 36", big.len(), 1);
        if let Some(&m2) = big.first() {
            for (i, &m1) in s4.iter().enumerate() {
                r.check(
                    format!("M*(order-24 class {i}) strictly inside M*(order-36 class)"),
                    m1.is_subset(m2) && m1 != m2,
                );
            }
            let not5 = ClassSet::from_ids((0..a.classes.len()).filter(|&c| a.classes.elem_order(c) != 5));
            r.eq("M*(order-36 class)", m2, not5);
        }
        Ok(Outcome::Done)
    })
}

pub fn alt29() -> CheckResult {
    run("4", "Alt(29) generator sub-claims", 1, |r| {
        let [a, b, c] = builder::alt29_generators();
        let g = PermGroup::new(29, &[a.clone(), b.clone(), c.clone()])?;
        let half_factorial: u128 = (1..=29u128).product::<u128>() / 2;
        r.eq("|<a,b,c>|", g.order(), half_factorial);
        let ab = PermGroup::new(29, &[a.clone(), b.clone()])?;
        r.eq("<a,b> stabilizes {1,2,3,4}", ab.stabilizes_set(&[0, 1, 2, 3])?, true);
        let bc = PermGroup::new(29, &[b, c.clone()])?;
        r.eq("<b,c> stabilizes {1,2}", bc.stabilizes_set(&[0, 1])?, true);
        let t = Perm::parse("(2,8)", 29)?;
        let ac = PermGroup::new(29, &[a.conjugate(&t)?, c])?;
        r.eq(
            "<a^(2,8),c> stabilizes {3,...,8}",
            ac.stabilizes_set(&[2, 3, 4, 5, 6, 7])?,
            true,
        );
        Ok(Outcome::Done)
    })
}

fn bi_not_b(r: &mut Recorder, a: &Analysis, d_i_expected: usize) -> Result<()> {
    let (d_i, m_i) = (a.family.d_i().0, a.family.m_i().0);
    r.eq("d_I", d_i, d_i_expected);
    r.eq("m_I", m_i, d_i_expected);
    let d = d_classical(&a.group).0;
    let m = a.m_formula()?;
    r.eq("d", d, 2);
    r.eq("m (chief factors)", m, 3);
    r.eq("is_BI", d_i == m_i, true);
    r.eq("is_B", d == m, false);
    Ok(())
}

pub fn f3sq_q8() -> CheckResult {
    run("5", "F3^2:Q8 invariants", 5, |r| {
        let a = semidirect_analysis(&builder::fp2_q8(3)?, usize::MAX)?;
        bi_not_b(r, &a, 3)?;
        r.eq("is_CP", a.is_cp(), true);
        let six = a.group.elements().filter(|&x| a.group.elem_order(x) == 6).count();
        r.eq("elements of order 6", six, 0);
        Ok(Outcome::Done)
    })
}

pub fn f13sq_dic12() -> CheckResult {
    run("6", "F13^2:Dic12 invariants", 60, |r| {
        let a = semidirect_analysis(&builder::f13sq_dic12()?, usize::MAX)?;
        r.eq("order", a.group.order(), 2028);
        bi_not_b(r, &a, 3)?;
        Ok(Outcome::Done)
    })
}

/// The translations of an affine group.
pub fn translation_subgroup(g: &FiniteGroup, a: &AffineGroup) -> Result<Subgroup> {
    let gens: Vec<Perm> = (0..a.dim)
        .map(|i| {
            let mut v = vec![0; a.dim];
            v[i] = 1;
            a.translation(&v)
        })
        .collect();
    g.subgroup_of(&PermGroup::new(a.degree(), &gens)?)
}

/// The linear part of an affine group: the stabilizer of the zero vector.
pub fn linear_subgroup(g: &FiniteGroup, a: &AffineGroup) -> Result<Subgroup> {
    let zero = vec![0; a.dim];
    let gens: Vec<Perm> = a.linear.iter().map(|m| a.map(m, &zero)).collect();
    g.subgroup_of(&PermGroup::new(a.degree(), &gens)?)
}

pub fn asl2_4() -> CheckResult {
    run("7", "ASL(2,4) invariants", 120, |r| {
        let aff = builder::asl2_4()?;
        let a = semidirect_analysis(&aff, usize::MAX)?;
        r.eq("order", a.group.order(), 960);
        let k = linear_subgroup(&a.group, &aff)?;
        let in_k = a.classes.fusion(&k);
        let ok = (0..a.classes.len()).all(|c| {
            let o = a.classes.elem_order(c);
            4 % o == 0 || ((o == 3 || o == 5) && in_k.contains(c))
        });
        r.check(
            "every element has order dividing 4 or is conjugate into SL(2,4) with order 3 or 5",
            ok,
        );
        r.eq("d_I", a.family.d_i().0, 3);
        r.eq("m_I", a.family.m_i().0, 3);
        Ok(Outcome::Done)
    })
}

pub fn product_model_check() -> CheckResult {
    run("8", "Alt(5)^n class model", 60, |r| {
        for (n, want) in [(1, 2), (2, 4), (3, 6)] {
            let (iota, _) = product_model::iota_model(n, product_model::DEFAULT_MODEL_BUDGET)?;
            r.eq(&format!("iota_model({n})"), iota, want);
        }
        let c = product_model::crosscheck_group_model(2)?;
        r.eq("Alt(5)^2 classes", c.group_classes, 25);
        r.eq("model sets matched by maximal subgroups", c.matched, true);
        r.eq("outer automorphism swaps the 5-cycle classes", c.twist_matches_outer, true);
        r.eq("iota(Alt(5)^2) from subgroups", c.iota_group, 4);
        r.eq("m_I(Alt(5)^2)", c.m_i_group, 4);
        let model = product_model::DeltaModel::build(2)?;
        r.eq(
            "marker set is a minimal generating set",
            model.is_minimal_generating(&model.marker_set()),
            true,
        );
        Ok(Outcome::Done)
    })
}

/// Every subset of a small group, as bitsets.
pub fn all_subsets(order: usize) -> Vec<fixedbitset::FixedBitSet> {
    (0u64..1 << order)
        .map(|mask| {
            let mut s = fixedbitset::FixedBitSet::with_capacity(order);
            for i in 0..order {
                if mask >> i & 1 == 1 {
                    s.insert(i);
                }
            }
            s
        })
        .collect()
}

/// Extensive, monotone and idempotent on every subset, and `C(X) = G`
/// exactly when `X` invariably generates.
pub fn closure_laws_exhaustive(a: &Analysis) -> Result<(bool, bool)> {
    let g = &a.group;
    let mut c = Closure::new(g, &a.classes, ClosureBudget::default());
    let subsets = all_subsets(g.order());
    let closed: Vec<fixedbitset::FixedBitSet> = subsets
        .iter()
        .map(|x| c.closure(x))
        .collect::<Result<_>>()?;
    let mut laws = true;
    let mut igen_agrees = true;
    for (i, x) in subsets.iter().enumerate() {
        let cx = &closed[i];
        laws &= x.is_subset(cx);
        laws &= closed[cx.ones().fold(0usize, |m, e| m | 1 << e)] == *cx;
        // monotone: removing one element at a time covers all subsets by induction
        for e in x.ones() {
            laws &= closed[i & !(1 << e)].is_subset(cx);
        }
        let xs: Vec<Elem> = x.ones().map(|e| e as Elem).collect();
        let full = cx.count_ones(..) == g.order();
        igen_agrees &= full == a.igen_check(&xs)?;
    }
    Ok((laws, igen_agrees))
}

pub fn tarski_check() -> CheckResult {
    run("9", "closure operator", 60, |r| {
        let aff = builder::c3c3_c2()?;
        let g = fg(&aff.group)?;
        let t = ClassTable::new(&g)?;
        let mut c = Closure::new(&g, &t, ClosureBudget::default());
        let translations = translation_subgroup(&g, &aff)?;
        let outside = g
            .elements()
            .find(|&x| !translations.contains(x))
            .expect("the group is larger than its translations");
        let mut x = g.whole().elements().clone();
        x.set(outside as usize, false);
        let verdict = c.is_invariable_nary(2, Some(std::slice::from_ref(&x)));
        let witness: Vec<Elem> = x.ones().map(|e| e as Elem).collect();
        r.eq("2-ary verdict", verdict, NaryVerdict::No { witness });
        r.eq("C_2 fixpoint of G minus g", c.fixpoint(&x, 2)?.count_ones(..), 17);
        r.eq("C(G minus g)", c.closure(&x)?.count_ones(..), 18);
        for (name, grp) in [("S3", builder::symmetric(3)?), ("Q8", builder::dicyclic(2)?)] {
            let a = Analysis::from_lattice(fg(&grp)?, usize::MAX)?;
            let (laws, agrees) = closure_laws_exhaustive(&a)?;
            r.eq(&format!("closure laws on all subsets of {name}"), laws, true);
            r.eq(&format!("C(X) = G iff X invariably generates, {name}"), agrees, true);
        }
        Ok(Outcome::Done)
    })
}

pub fn crown_oracle(cfg: &SuiteConfig) -> CheckResult {
    run("11", "crown matrix criterion against group oracle", 300, |r| {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let spec = RandomSpec::default();
        let mut agree = 0;
        let mut exhaustive = 0;
        let mut exhaustive_agree = 0;
        let small = |inst: &crown::CrownInstance| inst.p == 3 && inst.n <= 2 && inst.delta <= 2 && inst.t() <= 3;
        for _ in 0..cfg.crown_instances {
            let inst = crown::random_instance(&mut rng, &spec);
            if crown::igen_matrix_check(&inst, false)? == crown::oracle_check(&inst)? {
                agree += 1;
            }
            if small(&inst) {
                exhaustive += 1;
                if crown::exists_w_check(&inst)? == crown::exists_w_exhaustive(&inst)? {
                    exhaustive_agree += 1;
                }
            }
        }
        r.eq("matrix verdict equals group verdict", agree, cfg.crown_instances);
        let p3 = RandomSpec {
            primes: &[3],
            max_delta: 2,
            ..spec
        };
        for _ in 0..50 {
            let inst = crown::random_instance(&mut rng, &p3);
            exhaustive += 1;
            if crown::exists_w_check(&inst)? == crown::exists_w_exhaustive(&inst)? {
                exhaustive_agree += 1;
            }
        }
        r.eq("existence criterion equals exhaustive search", exhaustive_agree, exhaustive);
        Ok(Outcome::Done)
    })
}

pub fn ibp_spot_checks(cfg: &SuiteConfig) -> CheckResult {
    run("12", "invariable basis property spot checks", 300, |r| {
        for (name, g, want) in [
            ("L2(5)", builder::psl2(5)?, true),
            ("Sym(4)", builder::symmetric(4)?, false),
            ("F3^2:Q8", builder::fp2_q8(3)?.group, true),
        ] {
            let (a, l) = lattice_analysis(&g, cfg.lattice_budget)?;
            r.eq(&format!("has_IBP({name})"), structure::has_ibp(&a, &l, cfg.lattice_budget)?, want);
        }
        let aff = builder::fp2_q8(5)?;
        let (a, l) = lattice_analysis(&aff.group, cfg.lattice_budget)?;
        r.eq("is_CP(F5^2:Q8)", a.is_cp(), true);
        let fails = a.ibp_failures(&l, cfg.lattice_budget)?;
        r.check(format!("F5^2:Q8 has {} failing subgroup classes", fails.len()), !fails.is_empty());
        let v = translation_subgroup(&a.group, &aff)?;
        let witness = fails.iter().find(|f| {
            let h = &l.classes()[f.class_index].rep;
            let cyclic_top = h.iter().any(|x| a.group.elem_order(x) == 4);
            f.order == 100 && f.d_i == 2 && f.m_i == 3 && v.is_subgroup_of(h) && cyclic_top
        });
        r.check(
            "failing subgroup N:<i> of order 100 with d_I = 2 < m_I = 3",
            witness.is_some(),
        );
        Ok(Outcome::Done)
    })
}

pub fn soluble_corpus(cfg: &SuiteConfig) -> CheckResult {
    run("10", "soluble corpus theorems", 600, |r| {
        let groups = corpus::soluble_corpus()?;
        r.check(format!("corpus size {}", groups.len()), groups.len() >= 25);
        for ng in &groups {
            let (a, _) = lattice_analysis(&ng.group, cfg.lattice_budget)?;
            let name = &ng.name;
            let m = m_classical(&a.group).0;
            let irb = a.family.irb();
            let d_i = a.family.d_i().0;
            r.eq(&format!("{name}: m = m_I"), m, irb.m_i);
            r.eq(
                &format!("{name}: irb_I"),
                irb.sizes.iter().copied().collect::<Vec<_>>(),
                (d_i..=irb.m_i).collect::<Vec<_>>(),
            );
            let frat_i = a.family.frat_i();
            let frat_inside = a.frattini().iter().all(|x| frat_i.contains(a.classes.class_of(x)));
            r.eq(&format!("{name}: Frat inside Frat_I"), frat_inside, true);
            r.eq(&format!("{name}: Frat_I primary = variant"), frat_i, a.family.frat_i_all());
            r.eq(&format!("{name}: pote"), a.pote_check()?, true);
            let members = a.family.members();
            let incomparable = members.iter().enumerate().all(|(i, x)| {
                members.iter().enumerate().all(|(j, y)| i == j || !x.is_subset(*y))
            });
            r.eq(&format!("{name}: maximal M~ pairwise incomparable"), incomparable, true);
        }
        Ok(Outcome::Done)
    })
}

pub fn soluble_structure(cfg: &SuiteConfig) -> CheckResult {
    run("10s", "soluble corpus structure", 600, |r| {
        for ng in corpus::soluble_corpus()? {
            let (a, l) = lattice_analysis(&ng.group, cfg.lattice_budget)?;
            let name = &ng.name;
            let g = &a.group;
            let d = d_classical(g).0;
            let m = m_classical(g).0;
            let (d_i, m_i) = (a.family.d_i().0, a.family.m_i().0);
            let iota = a.family.iota().0;
            r.check(
                format!("{name}: d <= d_I <= m_I <= iota ({d} {d_i} {m_i} {iota})"),
                d <= d_i && d_i <= m_i && m_i <= iota,
            );
            r.eq(&format!("{name}: m from chief factors"), a.m_formula()?, m);
            if d == m {
                r.eq(&format!("{name}: B-group is B_I"), d_i, m_i);
            }
            let ibp = structure::has_ibp(&a, &l, cfg.lattice_budget)?;
            let frattini_free = a.frattini().order() == 1;
            if frattini_free {
                let shape = structure::ibp_shape(g, &l)?;
                r.eq(&format!("{name}: IBP iff listed shape ({shape:?})"), ibp, shape.is_some());
                if d_i == m_i {
                    let s = structure::bi_structure(&a, &l, d, m, cfg.lattice_budget)?;
                    let ok = match &s {
                        Some(structure::BiStructure::BGroup) => true,
                        Some(structure::BiStructure::Module { coprime, .. }) => *coprime,
                        None => false,
                    };
                    r.check(format!("{name}: B_I structure {s:?}"), ok);
                }
            }
            if ibp {
                let dec = structure::fixed_point_free_sylow_decomposition(g, &l);
                let ok = dec
                    .as_ref()
                    .is_some_and(|d| d.complement_cyclic || d.complement_quaternion);
                r.check(format!("{name}: IBP gives P:Q fixed-point-free ({dec:?})"), ok);
            }
            let failures = structure::somma_failures(&a, &l, cfg.lattice_budget)?;
            r.check(
                format!("{name}: m_I(G) > m_I(G/N) for non-Frattini minimal normal N"),
                failures.is_empty(),
            );
        }
        Ok(Outcome::Done)
    })
}

/// Data gathered for `PSL(2, p)` from a constructed list of subgroups.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Psl2Partial {
    pub p: u32,
    pub order: usize,
    pub classes: usize,
    /// Orders among 3, 4, 5 realised by elements.
    pub orders_realized: Vec<u32>,
    /// Name and order of each constructed subgroup.
    pub subgroups: Vec<(String, usize)>,
    /// Every pair of classes of elements of order 3, 4 or 5 meets a common
    /// constructed subgroup.
    pub pairs_covered: bool,
    /// Elements of orders 3, 4, 5 lie in no common constructed subgroup.
    pub triples_escape: bool,
    /// `m_I` and `iota` computed as if the constructed subgroups were all
    /// the maximal subgroups.
    pub m_i_conditional: usize,
    pub iota_conditional: usize,
}

/// Builds the Borel subgroup, the dihedral groups of orders `p - 1` and
/// `p + 1`, and subgroups `Alt(4)`-`Sym(4)`/`Alt(5)` where they exist.
pub fn psl2_partial(p: u32) -> Result<Psl2Partial> {
    let g = fg(&builder::psl2(p)?)?;
    let t = ClassTable::new(&g)?;
    let of_order = |k: u32| g.elements().find(|&x| g.elem_order(x) == k);
    let need = |k: u32| {
        of_order(k).ok_or_else(|| Error::Unsupported(format!("no element of order {k}")))
    };
    let mut subgroups: Vec<(String, Subgroup)> = Vec::new();
    subgroups.push(("Borel".into(), g.normalizer(&g.closure(&[need(p)?]))));
    subgroups.push((format!("D{}", p - 1), g.normalizer(&g.closure(&[need((p - 1) / 2)?]))));
    subgroups.push((format!("D{}", p + 1), g.normalizer(&g.closure(&[need((p + 1) / 2)?]))));
    let search = |a: u32, b: u32, prod: u32, size: usize| -> Option<Subgroup> {
        let x = of_order(a)?;
        let hx = g.closure(&[x]);
        g.elements()
            .filter(|&y| g.elem_order(y) == b && g.elem_order(g.mul(x, y)) == prod)
            .find_map(|y| g.extend_bounded(&hx, y, size).filter(|h| h.order() == size))
    };
    if let Some(h) = search(2, 3, 5, 60) {
        subgroups.push(("Alt(5)".into(), h));
    }
    if let Some(h) = search(4, 3, 2, 24) {
        subgroups.push(("Sym(4)".into(), h));
    }
    let sets: Vec<ClassSet> = subgroups.iter().map(|(_, h)| t.fusion(h)).collect();
    let targets: Vec<usize> = (0..t.len())
        .filter(|&c| [3, 4, 5].contains(&t.elem_order(c)))
        .collect();
    let pairs_covered = targets.iter().all(|&a| {
        targets
            .iter()
            .all(|&b| sets.iter().any(|s| s.contains(a) && s.contains(b)))
    });
    let family = MStarFamily::from_sets(t.len(), &sets);
    let by_order = |k: u32| -> Vec<usize> {
        targets.iter().copied().filter(|&c| t.elem_order(c) == k).collect()
    };
    let (threes, fours, fives) = (by_order(3), by_order(4), by_order(5));
    let triples_escape = threes.iter().all(|&a| {
        fours.iter().all(|&b| {
            fives
                .iter()
                .all(|&c| family.generates(ClassSet::from_ids([a, b, c])))
        })
    });
    let mut orders_realized: Vec<u32> = targets.iter().map(|&c| t.elem_order(c)).collect();
    orders_realized.dedup();
    Ok(Psl2Partial {
        p,
        order: g.order(),
        classes: t.len(),
        orders_realized,
        subgroups: subgroups.iter().map(|(n, h)| (n.clone(), h.order())).collect(),
        pairs_covered,
        triples_escape,
        m_i_conditional: family.m_i().0,
        iota_conditional: family.iota().0,
    })
}

pub fn stretch(cfg: &SuiteConfig) -> CheckResult {
    run("13", "L2(8) and PSL(2,41)", 600, |r| {
        let skip = |e: Error| -> Result<Outcome> {
            match e {
                Error::Budget { .. } => Ok(Outcome::Skip(format!("budget exceeded: {e}"))),
                e => Err(e),
            }
        };
        let (a, l) = match lattice_analysis(&builder::l2_8()?, cfg.lattice_budget) {
            Ok(x) => x,
            Err(e) => return skip(e),
        };
        r.eq("has_IBP(L2(8))", structure::has_ibp(&a, &l, cfg.lattice_budget)?, true);
        let mut orders: Vec<usize> = a.maximals.iter().map(|m| m.order()).collect();
        orders.sort_unstable_by(|x, y| y.cmp(x));
        r.eq("L2(8) maximal orders", orders, vec![56, 18, 14]);
        let ps = match psl2_partial(41) {
            Ok(x) => x,
            Err(e) => return skip(e),
        };
        r.eq("|PSL(2,41)|", ps.order, 34440);
        r.eq("orders 3, 4, 5 realised", ps.orders_realized, vec![3, 4, 5]);
        r.eq(
            "constructed subgroup orders",
            ps.subgroups.iter().map(|s| s.1).collect::<Vec<_>>(),
            vec![820, 40, 42, 60, 24],
        );
        r.eq("pairs from order-3/4/5 classes share a subgroup (m_I >= 3)", ps.pairs_covered, true);
        r.eq("orders 3, 4, 5 together escape every listed subgroup (conditional)", ps.triples_escape, true);
        r.eq("m_I upper bound from the listed subgroups (conditional)", ps.m_i_conditional, 3);
        r.eq("iota from the listed subgroups (conditional)", ps.iota_conditional, 3);
        Ok(Outcome::Done)
    })
}


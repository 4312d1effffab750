use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use invgen_core::classes::{ClassId, ClassSet};
use invgen_core::crown::{self, CrownInstance, RandomSpec};
use invgen_core::finite::{Elem, FiniteGroup};
use invgen_core::igen::{self, Analysis, ReportLimits};
use invgen_core::lattice::{self, Lattice};
use invgen_core::product_model::{self, DeltaModel};
use invgen_core::structure;
use invgen_core::suite::{self, Suite, SuiteConfig};
use invgen_core::tarski::{Closure, NaryVerdict};
use invgen_core::{Error, Perm};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::cache::{self, LatticeCache};
use crate::config::Config;
use crate::error::CliError;
use crate::report::{hash_inputs, AssertionLine, Report, SCHEMA};
use crate::select::{select, Selected};
use crate::{Cli, Command, CrownCmd, GroupArg, GroupCmd, IgenCmd, ModelCmd, TarskiCmd, VerifyCmd, WitnessKind};

type Res<T> = Result<T, CliError>;

struct Ctx {
    cfg: Config,
    cache: LatticeCache,
    hashed: Vec<String>,
    notes: Vec<String>,
    assertions: Vec<AssertionLine>,
    diagnostics: BTreeMap<String, Value>,
}

/// A group with the structures most commands need.
struct Loaded {
    a: Analysis,
    lattice: Option<Lattice>,
}

#[derive(Serialize)]
struct ClassRef {
    id: ClassId,
    label: String,
    order: u32,
    size: usize,
    rep: String,
}

fn class_ref(a: &Analysis, c: ClassId) -> ClassRef {
    ClassRef {
        id: c,
        label: invgen_core::classes::ClassTable::label(c),
        order: a.classes.elem_order(c),
        size: a.classes.size(c),
        rep: a.group.perm(a.classes.rep(c)).to_string(),
    }
}

fn class_refs(a: &Analysis, s: ClassSet) -> Vec<ClassRef> {
    s.iter().map(|c| class_ref(a, c)).collect()
}

fn elem_strings(g: &FiniteGroup, xs: impl IntoIterator<Item = Elem>) -> Vec<String> {
    xs.into_iter().map(|x| g.perm(x).to_string()).collect()
}

fn to_value(x: impl Serialize) -> Value {
    serde_json::to_value(x).expect("serializable")
}

impl Ctx {
    fn new(cfg: Config) -> Self {
        let cache = LatticeCache::new(cfg.cache_dir.clone());
        Ctx {
            hashed: vec![serde_json::to_string(&cfg).expect("config serializes")],
            cfg,
            cache,
            notes: Vec::new(),
            assertions: Vec::new(),
            diagnostics: BTreeMap::new(),
        }
    }

    fn assert(&mut self, what: impl Into<String>, pass: bool) {
        self.assertions.push(AssertionLine {
            what: what.into(),
            pass,
        });
    }

    fn read_file(&mut self, path: &Path) -> Res<String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
        self.hashed.push(text.clone());
        Ok(text)
    }

    fn select(&mut self, g: &GroupArg) -> Res<Selected> {
        let sel = select(&g.group)?;
        self.hashed.push(sel.canonical_text());
        Ok(sel)
    }

    fn finite(&self, sel: &Selected) -> Res<FiniteGroup> {
        Ok(FiniteGroup::new(&sel.group, self.cfg.element_budget)?)
    }

    fn lattice(&mut self, sel: &Selected, g: &FiniteGroup) -> Res<Lattice> {
        let key = cache::key_for(&sel.canonical_text());
        let budget = self.cfg.lattice_budget;
        let (l, outcome, note) = self.cache.lattice(&key, g, || Lattice::compute(g, budget))?;
        self.diagnostics.insert("lattice_cache".into(), to_value(outcome));
        if let Some(n) = note {
            self.diagnostics.insert("cache_warning".into(), Value::String(n));
        }
        Ok(l)
    }

    fn check_classes(&self, a: &Analysis) -> Res<()> {
        if a.classes.len() > self.cfg.class_budget {
            return Err(Error::Budget {
                what: "class",
                needed: a.classes.len() as u128,
                limit: self.cfg.class_budget as u128,
            }
            .into());
        }
        Ok(())
    }

    /// Maximal subgroups from the full lattice when the order is within the
    /// lattice budget, otherwise from the affine structure when there is one.
    fn load(&mut self, g: &GroupArg) -> Res<Loaded> {
        let sel = self.select(g)?;
        let f = self.finite(&sel)?;
        if f.order() <= self.cfg.lattice_budget || sel.affine.is_none() {
            let l = self.lattice(&sel, &f)?;
            let mut maximals = l.maximal_classes();
            lattice::sort_maximals(&mut maximals);
            let a = Analysis::new(f, maximals)?;
            self.check_classes(&a)?;
            self.notes.push("maximal subgroups from the full subgroup lattice".into());
            return Ok(Loaded {
                a,
                lattice: Some(l),
            });
        }
        let aff = sel.affine.as_ref().expect("checked above");
        let maximals = lattice::maximal_subgroups_affine(&f, aff, self.cfg.lattice_budget)?;
        let a = Analysis::new(f, maximals)?;
        self.check_classes(&a)?;
        self.notes.push(format!(
            "order {} exceeds lattice_budget {}; maximal subgroups from the affine structure",
            a.group.order(),
            self.cfg.lattice_budget
        ));
        Ok(Loaded {
            a,
            lattice: None,
        })
    }

    fn need_lattice<'a>(&self, l: &'a Loaded) -> Res<&'a Lattice> {
        l.lattice.as_ref().ok_or_else(|| {
            Error::Budget {
                what: "lattice",
                needed: l.a.group.order() as u128,
                limit: self.cfg.lattice_budget as u128,
            }
            .into()
        })
    }

    fn elems(&self, g: &FiniteGroup, texts: &[String]) -> Res<Vec<Elem>> {
        texts
            .iter()
            .map(|t| {
                let p = Perm::parse(t, g.degree())?;
                g.id_of(&p)
                    .ok_or_else(|| CliError::Usage(format!("{t} is not an element of the group")))
            })
            .collect()
    }
}

pub fn run(cli: &Cli, cfg: Config, argv: Vec<String>) -> (Report, u8) {
    let mut ctx = Ctx::new(cfg);
    let start = Instant::now();
    let outcome = dispatch(&mut ctx, &cli.command);
    let elapsed = start.elapsed().as_secs_f64();
    let mut hashed = argv.clone();
    hashed.extend(ctx.hashed.iter().cloned());
    let (results, error, code) = match outcome {
        Ok(v) => {
            let code = if ctx.assertions.iter().all(|a| a.pass) { 0 } else { 1 };
            (v, None, code)
        }
        Err(e) => {
            let (r, code) = Report::failure(Vec::new(), &e);
            (Value::Null, r.error, code)
        }
    };
    let diagnostics = cli.timings.then(|| {
        let mut d = std::mem::take(&mut ctx.diagnostics);
        d.insert("elapsed_secs".into(), json!(elapsed));
        d
    });
    let report = Report {
        schema: SCHEMA,
        command: argv,
        inputs_hash: hash_inputs(&hashed),
        results,
        budget_notes: ctx.notes,
        assertions: ctx.assertions,
        error,
        diagnostics,
    };
    (report, code)
}

fn dispatch(ctx: &mut Ctx, cmd: &Command) -> Res<Value> {
    match cmd {
        Command::Group { what } => group_cmd(ctx, what),
        Command::Classes(g) => {
            let sel = ctx.select(g)?;
            let f = ctx.finite(&sel)?;
            let t = invgen_core::classes::ClassTable::new(&f)?;
            let classes: Vec<Value> = (0..t.len())
                .map(|c| {
                    json!({
                        "id": c,
                        "label": invgen_core::classes::ClassTable::label(c),
                        "order": t.elem_order(c),
                        "size": t.size(c),
                        "rep": f.perm(t.rep(c)).to_string(),
                    })
                })
                .collect();
            Ok(json!({ "count": t.len(), "classes": classes }))
        }
        Command::Subgroups(g) => {
            let sel = ctx.select(g)?;
            let f = ctx.finite(&sel)?;
            let l = ctx.lattice(&sel, &f)?;
            let classes: Vec<Value> = l
                .classes()
                .iter()
                .map(|c| {
                    json!({
                        "order": c.order(),
                        "conjugates": c.size(),
                        "normal": c.normal,
                        "maximal": c.maximal,
                        "generators": elem_strings(&f, c.rep.gens().iter().copied()),
                    })
                })
                .collect();
            Ok(json!({
                "classes_of_subgroups": l.classes().len(),
                "total_subgroups": l.total_subgroups(),
                "classes": classes,
            }))
        }
        Command::Maximals(g) => {
            let l = ctx.load(g)?;
            let a = &l.a;
            let maximals: Vec<Value> = a
                .maximals
                .iter()
                .map(|m| {
                    json!({
                        "order": m.order(),
                        "conjugates": m.conjugates.len(),
                        "kind": m.kind,
                        "classes_met": a.classes.fusion(&m.rep).to_vec(),
                        "generators": elem_strings(&a.group, m.rep.gens().iter().copied()),
                    })
                })
                .collect();
            Ok(json!({ "maximals": maximals }))
        }
        Command::Igen { what } => igen_cmd(ctx, what),
        Command::FratI(g) => {
            let l = ctx.load(g)?;
            let a = &l.a;
            let frat_i = a.family.frat_i();
            let all = a.family.frat_i_all();
            Ok(json!({
                "classes": class_refs(a, frat_i),
                "elements": a.frat_i_size(),
                "all_maximal_variant": all.to_vec(),
                "variants_agree": frat_i == all,
                "frattini_order": a.frattini().order(),
            }))
        }
        Command::Iota(g) => {
            let l = ctx.load(g)?;
            let a = &l.a;
            let (iota, idx) = a.family.iota();
            let family: Vec<Value> = idx
                .iter()
                .map(|&i| {
                    let orders: Vec<usize> =
                        a.family.sources()[i].iter().map(|&m| a.maximals[m].order()).collect();
                    json!({ "classes": a.family.members()[i].to_vec(), "maximal_orders": orders })
                })
                .collect();
            Ok(json!({ "iota": iota, "family": family }))
        }
        Command::Bi(g) => bi_cmd(ctx, g),
        Command::Ibp(g) => {
            let l = ctx.load(g)?;
            let lat = ctx.need_lattice(&l)?;
            let a = &l.a;
            let budget = ctx.cfg.lattice_budget;
            let failures: Vec<Value> = if a.is_cp() {
                a.ibp_failures(lat, budget)?
                    .iter()
                    .map(|f| {
                        let h = &lat.classes()[f.class_index].rep;
                        json!({
                            "order": f.order,
                            "d_i": f.d_i,
                            "m_i": f.m_i,
                            "generators": elem_strings(&a.group, h.gens().iter().copied()),
                        })
                    })
                    .collect()
            } else {
                ctx.notes.push("not every element has prime-power order; subgroup scan skipped".into());
                Vec::new()
            };
            let frattini_free = a.frattini().order() == 1;
            let shape = if frattini_free && a.is_soluble()? {
                to_value(structure::ibp_shape(&a.group, lat)?)
            } else {
                Value::Null
            };
            Ok(json!({
                "has_ibp": a.is_cp() && failures.is_empty(),
                "is_cp": a.is_cp(),
                "failures": failures,
                "shape": shape,
            }))
        }
        Command::Crown { what } => crown_cmd(ctx, what),
        Command::Tarski { what } => tarski_cmd(ctx, what),
        Command::Model { what } => model_cmd(ctx, what),
        Command::Scan => {
            let s = invgen_core::experiments::open_question_scan(ctx.cfg.lattice_budget)?;
            if !s.counterexamples.is_empty() {
                ctx.notes.push(format!("{} counterexamples found", s.counterexamples.len()));
            }
            Ok(to_value(s))
        }
        Command::Verify { what } => match what {
            VerifyCmd::Paper { suite } => verify(ctx, suite),
        },
    }
}

fn group_cmd(ctx: &mut Ctx, what: &GroupCmd) -> Res<Value> {
    let one_based = |v: Vec<usize>| v.into_iter().map(|x| x + 1).collect::<Vec<_>>();
    match what {
        GroupCmd::Show(g) => {
            let sel = ctx.select(g)?;
            let p = &sel.group;
            Ok(json!({
                "selector": sel.selector,
                "degree": p.degree(),
                "order": p.order(),
                "generators": p.generators().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "base": one_based(p.base()),
                "basic_orbit_lengths": p.basic_orbit_lengths(),
                "transitive": p.is_transitive(),
                "soluble": p.is_soluble()?,
            }))
        }
        GroupCmd::Order(g) => {
            let sel = ctx.select(g)?;
            Ok(json!({ "order": sel.group.order() }))
        }
        GroupCmd::Orbits(g) => {
            let sel = ctx.select(g)?;
            let orbits: Vec<Vec<usize>> = sel.group.orbits().into_iter().map(one_based).collect();
            Ok(json!({ "orbits": orbits }))
        }
    }
}

fn igen_cmd(ctx: &mut Ctx, what: &IgenCmd) -> Res<Value> {
    match what {
        IgenCmd::Check(x) => {
            let l = ctx.load(&x.group)?;
            let a = &l.a;
            let xs = ctx.elems(&a.group, &x.elems)?;
            Ok(json!({
                "elements": elem_strings(&a.group, xs.iter().copied()),
                "classes": a.classes.classes_of(xs.iter().copied()).to_vec(),
                "invariably_generates": a.igen_check(&xs)?,
                "generates": a.group.closure(&xs).order() == a.group.order(),
            }))
        }
        IgenCmd::Summary(g) => {
            let l = ctx.load(g)?;
            let a = &l.a;
            let r = igen::report(a, ReportLimits::default())?;
            if r.d.is_none() {
                ctx.notes.push("d not computed: order above the search limit".into());
            }
            if r.m.is_none() {
                ctx.notes.push("m not computed: insoluble group above the search limit".into());
            }
            let refs = |ids: &[ClassId]| class_refs(a, ClassSet::from_ids(ids.iter().copied()));
            Ok(json!({
                "order": r.order,
                "classes": r.classes,
                "maximal_classes": r.maximal_classes,
                "d": r.d,
                "d_witness": r.d_witness.map(|w| elem_strings(&a.group, w)),
                "m": r.m,
                "m_method": r.m_method,
                "d_i": r.d_i,
                "d_i_witness": refs(&r.d_i_witness),
                "m_i": r.m_i,
                "m_i_witness": refs(&r.m_i_witness),
                "irb_i": r.irb_i,
                "iota": r.iota,
                "frat_i_classes": refs(&r.frat_i_classes),
                "frat_i_elements": r.frat_i_elements,
                "is_b": r.is_b,
                "is_bi": r.is_bi,
                "is_cp": r.is_cp,
            }))
        }
        IgenCmd::Irb(g) => {
            let l = ctx.load(g)?;
            let irb = l.a.family.irb();
            Ok(json!({
                "irb_i": irb.sizes,
                "d_i": l.a.family.d_i().0,
                "m_i": irb.m_i,
            }))
        }
        IgenCmd::Witness { group, kind } => {
            let l = ctx.load(group)?;
            let a = &l.a;
            match kind {
                WitnessKind::DI | WitnessKind::MI => {
                    let (size, w) = match kind {
                        WitnessKind::DI => a.family.d_i(),
                        _ => a.family.m_i(),
                    };
                    let reps: Vec<Elem> = w.iter().map(|c| a.classes.rep(c)).collect();
                    let ok = a.igen_check(&reps)? && a.family.is_minimal_generating(w);
                    ctx.assert("witness is a minimal invariable generating set", ok);
                    Ok(json!({ "size": size, "witness": class_refs(a, w) }))
                }
                WitnessKind::Iota => {
                    let (iota, idx) = a.family.iota();
                    ctx.assert("family is independent", a.family.is_independent_family(&idx));
                    let sets: Vec<Vec<ClassId>> =
                        idx.iter().map(|&i| a.family.members()[i].to_vec()).collect();
                    Ok(json!({ "size": iota, "witness": sets }))
                }
            }
        }
    }
}

fn bi_cmd(ctx: &mut Ctx, g: &GroupArg) -> Res<Value> {
    let l = ctx.load(g)?;
    let a = &l.a;
    let r = igen::report(a, ReportLimits::default())?;
    let mut structure_value = Value::Null;
    match (&l.lattice, r.d, r.m) {
        (Some(lat), Some(d), Some(m)) if r.is_bi && a.is_soluble()? && a.frattini().order() == 1 => {
            let s = structure::bi_structure(a, lat, d, m, ctx.cfg.lattice_budget)?;
            structure_value = to_value(s);
        }
        _ => ctx
            .notes
            .push("structure classification applies to Frattini-free soluble groups with d_I = m_I".into()),
    }
    Ok(json!({
        "d": r.d,
        "m": r.m,
        "d_i": r.d_i,
        "m_i": r.m_i,
        "is_b": r.is_b,
        "is_bi": r.is_bi,
        "structure": structure_value,
    }))
}

fn crown_cmd(ctx: &mut Ctx, what: &CrownCmd) -> Res<Value> {
    fn load(ctx: &mut Ctx, p: &Path) -> Res<CrownInstance> {
        Ok(CrownInstance::parse(&ctx.read_file(p)?)?)
    }
    match what {
        CrownCmd::Check { inst, assume_y_igen } => {
            let i = load(ctx, &inst.instance)?;
            Ok(json!({ "invariably_generates": crown::igen_matrix_check(&i, *assume_y_igen)? }))
        }
        CrownCmd::Exists { inst, exhaustive } => {
            let i = load(ctx, &inst.instance)?;
            let exists = crown::exists_w_check(&i)?;
            let mut v = json!({ "exists": exists });
            if *exhaustive {
                let e = crown::exists_w_exhaustive(&i)?;
                ctx.assert("criterion agrees with enumeration of every w", e == exists);
                v["exhaustive"] = json!(e);
            }
            Ok(v)
        }
        CrownCmd::Oracle { instance, random } => {
            let instances = match (instance, random) {
                (Some(p), _) => vec![load(ctx, p)?],
                (None, Some(n)) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
                    (0..*n).map(|_| crown::random_instance(&mut rng, &RandomSpec::default())).collect()
                }
                (None, None) => {
                    return Err(CliError::Usage("crown oracle needs --instance or --random".into()))
                }
            };
            let mut disagreements = Vec::new();
            let mut verdicts = Vec::new();
            for (k, i) in instances.iter().enumerate() {
                let matrix = crown::igen_matrix_check(i, false)?;
                let group = crown::oracle_check(i)?;
                if matrix != group {
                    disagreements.push(k);
                }
                verdicts.push(matrix);
            }
            ctx.assert(
                format!("matrix verdict equals group verdict on {} instances", instances.len()),
                disagreements.is_empty(),
            );
            Ok(json!({
                "instances": instances.len(),
                "true_verdicts": verdicts.iter().filter(|&&v| v).count(),
                "disagreements": disagreements,
            }))
        }
    }
}

fn tarski_cmd(ctx: &mut Ctx, what: &TarskiCmd) -> Res<Value> {
    match what {
        TarskiCmd::Closure { x, n } => {
            let l = ctx.load(&x.group)?;
            let a = &l.a;
            let xs = ctx.elems(&a.group, &x.elems)?;
            let mut c = Closure::new(&a.group, &a.classes, ctx.cfg.closure_budget());
            let set = c.set(&xs);
            let cx = c.closure(&set)?;
            let core = c.intersection(&set)?;
            let mut v = json!({
                "x": elem_strings(&a.group, xs.iter().copied()),
                "closure_size": cx.count_ones(..),
                "closure": elem_strings(&a.group, cx.ones().map(|e| e as Elem)),
                "core_order": core.count_ones(..),
                "is_whole_group": cx.count_ones(..) == a.group.order(),
                "invariably_generates": a.igen_check(&xs)?,
            });
            if let Some(n) = n {
                v["fixpoint_size"] = json!(c.fixpoint(&set, *n)?.count_ones(..));
            }
            Ok(v)
        }
        TarskiCmd::Nary { group, n, complement_of } => {
            let l = ctx.load(group)?;
            let a = &l.a;
            let g = &a.group;
            let mut c = Closure::new(g, &a.classes, ctx.cfg.closure_budget());
            let candidates: Vec<_> = ctx
                .elems(g, complement_of)?
                .into_iter()
                .map(|e| {
                    let mut s = g.whole().elements().clone();
                    s.set(e as usize, false);
                    s
                })
                .collect();
            let verdict = c.is_invariable_nary(*n, (!candidates.is_empty()).then_some(&candidates[..]));
            let mode = if candidates.is_empty() { "exhaustive" } else { "candidates" };
            Ok(match verdict {
                NaryVerdict::Yes { scanned } => {
                    json!({ "n": n, "verdict": "yes", "mode": mode, "scanned": scanned })
                }
                NaryVerdict::No { witness } => json!({
                    "n": n,
                    "verdict": "no",
                    "mode": mode,
                    "witness": {
                        "size": witness.len(),
                        "elements": elem_strings(g, witness.iter().copied()),
                        "classes": a.classes.classes_of(witness.iter().copied()).to_vec(),
                    },
                }),
                NaryVerdict::BudgetExceeded { scanned } => {
                    return Err(Error::Budget {
                        what: "closed-set scan",
                        needed: scanned as u128 + 1,
                        limit: scanned as u128,
                    }
                    .into())
                }
            })
        }
        TarskiCmd::Laws { group, samples } => {
            let l = ctx.load(group)?;
            let a = &l.a;
            let g = &a.group;
            let mut rng = ChaCha8Rng::seed_from_u64(ctx.cfg.seed);
            let sample: Vec<_> = (0..*samples)
                .map(|_| {
                    let mut s = fixedbitset::FixedBitSet::with_capacity(g.order());
                    for e in 0..g.order() {
                        if rand::Rng::gen_bool(&mut rng, 0.5) {
                            s.insert(e);
                        }
                    }
                    s
                })
                .collect();
            let mut c = Closure::new(g, &a.classes, ctx.cfg.closure_budget());
            let laws = c.laws(&sample, &mut rng)?;
            ctx.assert("closure is extensive, monotone and idempotent", laws.all_hold());
            Ok(to_value(laws))
        }
    }
}

fn model_cmd(ctx: &mut Ctx, what: &ModelCmd) -> Res<Value> {
    match what {
        ModelCmd::Build(m) => {
            let model = DeltaModel::build(m.n)?;
            let members: Vec<Value> = model
                .kinds()
                .iter()
                .zip(model.sets())
                .map(|(k, s)| json!({ "member": k.to_string(), "size": s.count_ones(..) }))
                .collect();
            Ok(json!({ "n": m.n, "tuples": model.size(), "members": members }))
        }
        ModelCmd::Iota(m) => {
            let (iota, w) = product_model::iota_model(m.n, ctx.cfg.tuple_budget)?;
            Ok(json!({
                "n": m.n,
                "iota": iota,
                "family": w.iter().map(|k| k.to_string()).collect::<Vec<_>>(),
            }))
        }
        ModelCmd::Crosscheck(m) => {
            let c = product_model::crosscheck_group_model(m.n)?;
            ctx.assert("model agrees with the subgroups of Alt(5)^n", c.passed());
            Ok(to_value(c))
        }
    }
}

fn verify(ctx: &mut Ctx, suite: &str) -> Res<Value> {
    let s: Suite = suite.parse()?;
    let cfg = SuiteConfig {
        seed: ctx.cfg.seed,
        lattice_budget: ctx.cfg.lattice_budget,
        ..SuiteConfig::default()
    };
    let results = suite::run_suite(s, &cfg);
    let mut timings = BTreeMap::new();
    for r in &results {
        ctx.assert(r.summary_line(), r.passed());
        timings.insert(r.id.clone(), json!(r.elapsed.as_secs_f64()));
    }
    ctx.diagnostics.insert("check_secs".into(), to_value(timings));
    Ok(json!({ "suite": suite, "checks": results }))
}

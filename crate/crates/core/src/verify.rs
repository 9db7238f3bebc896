//! Theorem suites run over a corpus, and the report they produce.
//!
//! Each suite runs per corpus system and yields named instances that pass
//! or fail; a failure carries a JSON witness and the command that replays
//! it. Systems are checked in parallel, and the report is assembled sorted
//! by theorem id, entry, system and instance.

use std::fmt::Write as _;
use std::path::Path;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::closure::{
    alperin_decompose, alperin_generators, center_of_fusion, is_normal_subgroup, is_normal_subgroup_strict,
    is_strongly_closed, is_weakly_closed, o_p, strongly_closed_central_series, strongly_closed_subgroups,
    weakly_closed_subgroups, aut_group, ClosureMode,
};
use crate::corpus::{load_corpus, CorpusSystem, LoadedEntry};
use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, PreFusionSystem, Provenance};
use crate::group::{Subgroup, NONE};
use crate::hom::GroupHom;
use crate::io::{self, hom_json, prefusion_witness_json, saturation_json, sub_json};
use crate::quotients::{
    bar_system, closure_transfer, factor_system, prefusion_is_fusion, quotient_morphism, verify_second_iso,
    verify_third_iso, QuotientTarget, Witness,
};
use crate::solubility::{
    aut_of_o_p_is_p_soluble, group_is_p_soluble, is_constrained, is_model, is_qdp_free_group, o_p_tower,
    thompson_factorization_holds,
};
use crate::subsystems::{
    aut_f_acts_on, characteristic_subgroups, inner_is_normal, inner_system, is_frattini, is_invariant,
    is_normal_by_definition, is_normal_subsystem, k_normalizer_system, normalizer_system,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerificationReport {
    pub version: u32,
    pub theorems: Vec<TheoremReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TheoremReport {
    pub id: String,
    pub instances: usize,
    pub passes: usize,
    pub failures: Vec<Failure>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Failure {
    pub entry: String,
    pub system: String,
    pub instance: String,
    pub witness: Value,
    pub replay: String,
}

impl VerificationReport {
    pub fn failure_count(&self) -> usize {
        self.theorems.iter().map(|t| t.failures.len()).sum()
    }

    pub fn theorem(&self, id: &str) -> Option<&TheoremReport> {
        self.theorems.iter().find(|t| t.id == id)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.theorems {
            let status = if t.failures.is_empty() { "ok" } else { "FAIL" };
            write!(s, "{:<28} {:>5}/{:<5} {status}", t.id, t.passes, t.instances).unwrap();
            if let Some(ms) = t.elapsed_ms {
                write!(s, " {ms}ms").unwrap();
            }
            s.push('\n');
            for f in &t.failures {
                writeln!(s, "  {} {}: {}", f.system, f.instance, f.replay).unwrap();
            }
        }
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub theorem: Option<String>,
    pub entry: Option<String>,
    pub timings: bool,
    pub sequential: bool,
    pub order_cap: Option<usize>,
}

type SuiteFn = fn(&Ctx) -> Vec<Check>;

/// Every registered suite, by id.
const SUITES: &[(&str, SuiteFn)] = &[
    ("alperin", alperin),
    ("centnormalnorm", centnormalnorm),
    ("centre-in-op", centre_in_op),
    ("centrelift", centrelift),
    ("charnormal", charnormal),
    ("closure-transfer", closure_transfer_suite),
    ("example-d8xc2", example_d8xc2),
    ("example-order16", example_order16),
    ("expected-values", expected_values),
    ("fqqnormalimpstrongcentral", fqqnormalimpstrongcentral),
    ("fusion-axioms", fusion_axioms),
    ("group-centralizer", group_centralizer),
    ("n-phi", n_phi),
    ("normalifffrattini", normalifffrattini),
    ("normalop", normalop),
    ("opequalz", opequalz),
    ("psoluble-extension", psoluble_extension),
    ("psoluble-subsystems", psoluble_subsystems),
    ("qdp-free", qdp_free),
    ("quotient-saturation", quotient_saturation),
    ("round-trip", round_trip),
    ("saturated-quotient", saturated_quotient),
    ("second-iso", second_iso),
    ("solublesimple", solublesimple),
    ("theorem-A", theorem_a),
    ("theorem-B", theorem_b),
    ("theorem-C", theorem_c),
    ("theorem-D", theorem_d),
    ("theorem-E", theorem_e),
    ("theorem-F", theorem_f),
    ("third-iso", third_iso),
    ("thompson", thompson),
    ("transport", transport),
    ("weakcentralimpstrong", weakcentralimpstrong),
];

pub fn suite_ids() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|(id, _)| *id)
}

pub fn run_verification(dir: &Path, opts: &Options) -> Result<VerificationReport> {
    let suites: Vec<&(&str, SuiteFn)> = match &opts.theorem {
        None => SUITES.iter().collect(),
        Some(id) => {
            let s: Vec<_> = SUITES.iter().filter(|(sid, _)| sid == id).collect();
            if s.is_empty() {
                return Err(Error::Validation(format!("unknown theorem id {id}")));
            }
            s
        }
    };
    let cap = opts.order_cap.unwrap_or(crate::group::DEFAULT_ORDER_CAP);
    let mut entries = load_corpus(dir, cap)?;
    if let Some(name) = &opts.entry {
        entries.retain(|e| &e.entry.name == name);
    }
    Ok(verify_entries(&entries, &suites, dir, opts))
}

fn verify_entries(
    entries: &[LoadedEntry],
    suites: &[&(&str, SuiteFn)],
    dir: &Path,
    opts: &Options,
) -> VerificationReport {
    if entries.is_empty() {
        return VerificationReport {
            version: REPORT_VERSION,
            theorems: Vec::new(),
        };
    }
    let ctxs: Vec<Ctx> = entries
        .iter()
        .flat_map(|e| e.systems.iter().map(move |s| Ctx::new(e, s)))
        .collect();
    let jobs: Vec<(usize, usize)> = (0..suites.len())
        .flat_map(|i| (0..ctxs.len()).map(move |c| (i, c)))
        .collect();
    let run = |&(i, c): &(usize, usize)| {
        let start = Instant::now();
        let checks = (suites[i].1)(&ctxs[c]);
        (i, c, checks, start.elapsed())
    };
    let results: Vec<_> = if opts.sequential {
        jobs.iter().map(run).collect()
    } else {
        jobs.par_iter().map(run).collect()
    };
    let mut theorems: Vec<TheoremReport> = suites
        .iter()
        .map(|(id, _)| TheoremReport {
            id: id.to_string(),
            instances: 0,
            passes: 0,
            failures: Vec::new(),
            elapsed_ms: opts.timings.then_some(0),
        })
        .collect();
    for (i, c, checks, elapsed) in results {
        let t = &mut theorems[i];
        let ctx = &ctxs[c];
        if let Some(ms) = t.elapsed_ms.as_mut() {
            *ms += elapsed.as_millis() as u64;
        }
        for ch in checks {
            t.instances += 1;
            match ch.witness {
                None => t.passes += 1,
                Some(w) => t.failures.push(Failure {
                    entry: ctx.entry.entry.name.clone(),
                    system: ctx.sys.id.clone(),
                    instance: ch.instance,
                    witness: w,
                    replay: format!(
                        "fuskit verify {} --theorem {} --entry {} --format json",
                        dir.display(),
                        t.id,
                        ctx.entry.entry.name
                    ),
                }),
            }
        }
    }
    for t in &mut theorems {
        t.failures.sort_by(|a, b| {
            (&a.entry, &a.system, &a.instance).cmp(&(&b.entry, &b.system, &b.instance))
        });
    }
    theorems.sort_by(|a, b| a.id.cmp(&b.id));
    VerificationReport {
        version: REPORT_VERSION,
        theorems,
    }
}

/// One instance of a suite; failed when it carries a witness.
struct Check {
    instance: String,
    witness: Option<Value>,
}

fn check(instance: impl Into<String>, ok: bool, witness: impl FnOnce() -> Value) -> Check {
    Check {
        instance: instance.into(),
        witness: (!ok).then(witness),
    }
}

fn errored(instance: impl Into<String>, e: &Error) -> Check {
    Check {
        instance: instance.into(),
        witness: Some(json!({ "error": e.to_string() })),
    }
}

/// Runs `body`, turning a library error into a failed instance.
fn guarded(out: &mut Vec<Check>, instance: &str, body: impl FnOnce(&mut Vec<Check>) -> Result<()>) {
    if let Err(e) = body(out) {
        out.push(errored(instance, &e));
    }
}

fn label(f: &FusionSystem, s: &Subgroup) -> String {
    match f.index_of(s) {
        Some(i) => format!("Q{i}({})", s.order()),
        None => format!("({})", s.order()),
    }
}

struct KNorm {
    q: Subgroup,
    label: String,
    normalizer: Arc<FusionSystem>,
    sub: Result<Arc<FusionSystem>>,
}

/// A normal pair `E ⊴ A`, where `A` is the system under test or one of its
/// normalizer subsystems.
struct Pair {
    label: String,
    ambient: Arc<FusionSystem>,
    ambient_is_f: bool,
    sub: Arc<FusionSystem>,
}

struct Ctx<'a> {
    entry: &'a LoadedEntry,
    sys: &'a CorpusSystem,
    f: Arc<FusionSystem>,
    knorms: OnceLock<Vec<KNorm>>,
    pairs: OnceLock<Vec<Pair>>,
}

impl<'a> Ctx<'a> {
    fn new(entry: &'a LoadedEntry, sys: &'a CorpusSystem) -> Self {
        Ctx {
            entry,
            sys,
            f: Arc::new(sys.system.clone()),
            knorms: OnceLock::new(),
            pairs: OnceLock::new(),
        }
    }

    fn f(&self) -> &FusionSystem {
        &self.f
    }

    fn saturated(&self) -> bool {
        self.f.is_saturated()
    }

    /// `N_F^K(Q)` for every fully normalized `Q` and `K ⊴ Aut_F(Q)`.
    fn knorms(&self) -> &[KNorm] {
        self.knorms.get_or_init(|| {
            let f = self.f();
            let mut out = Vec::new();
            for (qi, q) in f.subgroups().iter().enumerate() {
                if !f.is_fully_normalized(q) {
                    continue;
                }
                let Ok(n) = normalizer_system(f, q) else { continue };
                let n = Arc::new(n);
                let a = aut_group(f, qi);
                let Ok(normals) = a.group.normal_subgroups(&a.group.whole()) else { continue };
                for (ki, k) in normals.iter().enumerate() {
                    let homs: Vec<GroupHom> = k
                        .members()
                        .map(|x| GroupHom {
                            domain: q.clone(),
                            codomain: q.clone(),
                            map: a.maps[x].clone(),
                        })
                        .collect();
                    out.push(KNorm {
                        q: q.clone(),
                        label: format!("{} K{ki}({})", label(f, q), k.order()),
                        normalizer: n.clone(),
                        sub: k_normalizer_system(f, q, &homs).map(Arc::new),
                    });
                }
            }
            out
        })
    }

    fn pairs(&self) -> &[Pair] {
        self.pairs.get_or_init(|| {
            let f = self.f();
            let mut out = vec![Pair {
                label: "F".into(),
                ambient: self.f.clone(),
                ambient_is_f: true,
                sub: self.f.clone(),
            }];
            for q in strongly_closed_subgroups(f) {
                if &q != f.carrier() && inner_is_normal(f, &q).unwrap_or(false) {
                    if let Ok(e) = inner_system(f, &q) {
                        out.push(Pair {
                            label: format!("inner {}", label(f, &q)),
                            ambient: self.f.clone(),
                            ambient_is_f: true,
                            sub: Arc::new(e),
                        });
                    }
                }
            }
            for k in self.knorms() {
                let Ok(sub) = &k.sub else { continue };
                if is_normal_subsystem(&k.normalizer, sub).unwrap_or(false) {
                    let is_f = k.normalizer.carrier() == f.carrier() && k.normalizer.equals(f).unwrap_or(false);
                    out.push(Pair {
                        label: format!("N^K {}", k.label),
                        ambient: if is_f { self.f.clone() } else { k.normalizer.clone() },
                        ambient_is_f: is_f,
                        sub: sub.clone(),
                    });
                }
            }
            out
        })
    }
}

fn fusion_axioms(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let (ok, w) = prefusion_is_fusion(f.as_prefusion());
    let mut out = vec![check("closed", ok, || prefusion_witness_json(f, w.as_ref().unwrap()))];
    if ctx.sys.realizing.is_some() {
        out.push(check("group system saturated", f.is_saturated(), || saturation_json(f)));
    }
    out
}

fn round_trip(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let text = io::system_to_json(f);
    let cap = f.group().order_cap();
    let mut out = Vec::new();
    guarded(&mut out, "system", |out| {
        let back = io::parse_system_str(&text, "round-trip", cap)?;
        let again = io::system_to_json(&back);
        out.push(check("system", back.equals(f)? && again == text, || json!({ "first": text, "second": again })));
        Ok(())
    });
    let g = &ctx.entry.group;
    let gt = io::group_to_json(g);
    guarded(&mut out, "group", |out| {
        let back = io::parse_group_str(&gt, "round-trip", cap)?;
        out.push(check("group", *g.as_ref() == back && io::group_to_json(&back) == gt, || json!({ "group": gt })));
        Ok(())
    });
    out
}

fn transport(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let mut out = Vec::new();
    guarded(&mut out, "carrier as own group", |out| {
        let g = f.group();
        let (pg, embed) = g.subgroup_as_group(f.carrier(), "P")?;
        let mut map = vec![NONE; g.order()];
        for (x, &y) in embed.iter().enumerate() {
            map[y] = x;
        }
        let theta = GroupHom {
            domain: f.carrier().clone(),
            codomain: pg.whole(),
            map,
        };
        let moved = f.transport(&theta, Arc::new(pg))?;
        out.push(check("carrier as own group", moved.is_saturated() == f.is_saturated(), || {
            json!({ "saturated": f.is_saturated(), "transported_saturated": moved.is_saturated() })
        }));
        Ok(())
    });
    out
}

fn n_phi(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for (qi, ri, m) in f.all_isos() {
        let q = f.lattice().get(qi);
        let inst = format!("{} -> {}", label(f, q), label(f, f.lattice().get(ri)));
        let phi = f.to_hom(qi, ri, m);
        match f.n_phi(&phi) {
            Err(e) => out.push(errored(inst, &e)),
            Ok(n) => {
                let lower = g.join(q, &g.centralizer(f.carrier(), q));
                let upper = g.normalizer(f.carrier(), q);
                out.push(check(inst, lower.is_subgroup_of(&n) && n.is_subgroup_of(&upper), || {
                    json!({ "phi": hom_json(g, &phi), "n_phi": sub_json(g, &n) })
                }));
            }
        }
    }
    out
}

fn theorem_a(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let mut out = Vec::new();
    for q in f.subgroups() {
        let inst = label(f, q);
        guarded(&mut out, &inst, |out| {
            let lhs = normalizer_system(f, q)?.equals(f)?;
            let rhs = inner_is_normal(f, q)?;
            out.push(check(inst.clone(), lhs == rhs, || {
                json!({ "q": sub_json(f.group(), q), "k_normalizer_is_f": lhs, "inner_normal": rhs })
            }));
            Ok(())
        });
    }
    out
}

fn theorem_c(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let mut out = Vec::new();
    for q in f.subgroups() {
        let inst = label(f, q);
        guarded(&mut out, &inst, |out| {
            let v = [
                is_normal_by_definition(f, q),
                inner_is_normal(f, q)?,
                is_normal_subgroup_strict(f, q)?,
                strongly_closed_central_series(f, q, ClosureMode::Strong)?.is_some(),
                strongly_closed_central_series(f, q, ClosureMode::Weak)?.is_some(),
            ];
            out.push(check(inst.clone(), v.iter().all(|&b| b == v[0]), || {
                json!({ "q": sub_json(f.group(), q), "criteria": v })
            }));
            Ok(())
        });
    }
    out
}

fn theorem_d(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let closed = strongly_closed_subgroups(f);
    let mut out = Vec::new();
    for (i, q) in closed.iter().enumerate() {
        for r in &closed[i..] {
            let inst = format!("{} {}", label(f, q), label(f, r));
            guarded(&mut out, &inst, |out| {
                let qr = g.set_product(q, r)?;
                let direct = is_strongly_closed(f, &qr);
                let fq = factor_system(f, q)?;
                let image = fq.projection.image(&qr);
                let via_quotient = is_strongly_closed(&fq.system, &image) && fq.projection.preimage(&image) == qr;
                out.push(check(inst.clone(), direct && via_quotient, || {
                    json!({ "q": sub_json(g, q), "r": sub_json(g, r), "product_strongly_closed": direct,
                            "quotient_path": via_quotient })
                }));
                Ok(())
            });
        }
    }
    out
}

fn theorem_b(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for pair in ctx.pairs().iter().filter(|p| p.ambient_is_f) {
        let e = &pair.sub;
        for r in e.subgroups() {
            let inst = format!("{} R={}", pair.label, label(f, r));
            guarded(&mut out, &inst, |out| {
                if !normalizer_system(e, r)?.equals(e)? {
                    return Ok(());
                }
                let ri = f.idx(r);
                let conj: Vec<&Subgroup> = f.iso_class(ri).into_iter().map(|j| f.lattice().get(j)).collect();
                let s = g.join_all(conj);
                let ok = normalizer_system(f, &s)?.equals(f)?;
                out.push(check(inst.clone(), ok, || json!({ "r": sub_json(g, r), "s": sub_json(g, &s) })));
                Ok(())
            });
        }
    }
    out
}

fn charnormal(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for pair in ctx.pairs().iter().filter(|p| p.ambient_is_f) {
        let ep = &pair.sub;
        let alphas = f.aut(ep.carrier());
        for q in strongly_closed_subgroups(ep) {
            let inst = format!("{} Q={}", pair.label, label(f, &q));
            guarded(&mut out, &inst, |out| {
                if !inner_is_normal(ep, &q)? {
                    return Ok(());
                }
                let e = inner_system(ep, &q)?;
                let restricted: Vec<GroupHom> = alphas.iter().map(|a| a.restrict(&q)).collect();
                if !alphas.iter().all(|a| a.image_of(&q, g.order()) == q) || !aut_f_acts_on(&e, &restricted) {
                    return Ok(());
                }
                let ok = is_normal_subsystem(f, &e)?;
                out.push(check(inst.clone(), ok, || json!({ "q": sub_json(g, &q) })));
                Ok(())
            });
        }
    }
    out
}

fn centnormalnorm(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let g = ctx.f().group();
    let mut out = Vec::new();
    for k in ctx.knorms() {
        guarded(&mut out, &k.label, |out| {
            let sub = k.sub.as_ref().map_err(Clone::clone)?;
            let sat = sub.is_saturated();
            let normal = is_normal_subsystem(&k.normalizer, sub)?;
            out.push(check(k.label.clone(), sat && normal, || {
                json!({ "q": sub_json(g, &k.q), "saturated": sat, "normal_in_normalizer": normal,
                        "saturation_failure": saturation_json(sub) })
            }));
            Ok(())
        });
    }
    out
}

fn centrelift(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "centre", |out| {
        let zf = center_of_fusion(f)?;
        for z in strongly_closed_subgroups(f).iter().filter(|z| z.is_subgroup_of(&zf)) {
            let fz = factor_system(f, z)?;
            for q in f.subgroups().iter().filter(|q| z.is_subgroup_of(q)) {
                let lhs = is_normal_subgroup(f, q);
                let rhs = is_normal_subgroup(&fz.system, &fz.projection.image(q));
                out.push(check(format!("Z={} Q={}", label(f, z), label(f, q)), lhs == rhs, || {
                    json!({ "z": sub_json(g, z), "q": sub_json(g, q), "normal": lhs, "normal_mod_z": rhs })
                }));
            }
        }
        Ok(())
    });
    out
}

fn normalop(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let g = ctx.f().group();
    let mut out = Vec::new();
    for pair in ctx.pairs() {
        guarded(&mut out, &pair.label, |out| {
            let lhs = o_p(&pair.ambient)?.intersect(pair.sub.carrier());
            let rhs = o_p(&pair.sub)?;
            out.push(check(pair.label.clone(), lhs == rhs, || {
                json!({ "op_f_cap_q": sub_json(g, &lhs), "op_e": sub_json(g, &rhs) })
            }));
            Ok(())
        });
    }
    out
}

fn solublesimple(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let g = ctx.f().group();
    let mut out = Vec::new();
    for pair in ctx.pairs() {
        guarded(&mut out, &pair.label, |out| {
            let oe = o_p(&pair.sub)?;
            let of = o_p(&pair.ambient)?;
            out.push(check(pair.label.clone(), oe.is_subgroup_of(&of), || {
                json!({ "op_e": sub_json(g, &oe), "op_f": sub_json(g, &of) })
            }));
            Ok(())
        });
    }
    out
}

fn opequalz(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "O_p(F/Z(F))", |out| {
        let z = center_of_fusion(f)?;
        let fz = factor_system(f, &z)?;
        let lifted = fz.projection.preimage(&o_p(&fz.system)?);
        let op = o_p(f)?;
        out.push(check("O_p(F/Z(F))", lifted == op, || {
            json!({ "z": sub_json(g, &z), "lifted": sub_json(g, &lifted), "op": sub_json(g, &op) })
        }));
        Ok(())
    });
    out
}

fn centre_in_op(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "Z(F) <= O_p(F)", |out| {
        let z = center_of_fusion(f)?;
        let op = o_p(f)?;
        out.push(check("Z(F) <= O_p(F)", z.is_subgroup_of(&op), || {
            json!({ "z": sub_json(g, &z), "op": sub_json(g, &op) })
        }));
        Ok(())
    });
    out
}

fn weakcentralimpstrong(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for q in strongly_closed_subgroups(f) {
        let zq = g.center(&q);
        for z in f.subgroups().iter().filter(|z| z.is_subgroup_of(&zq) && is_weakly_closed(f, z)) {
            out.push(check(format!("Q={} Z={}", label(f, &q), label(f, z)), is_strongly_closed(f, z), || {
                json!({ "q": sub_json(g, &q), "z": sub_json(g, z) })
            }));
        }
    }
    out
}

fn fqqnormalimpstrongcentral(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for q in f.subgroups() {
        let inst = label(f, q);
        guarded(&mut out, &inst, |out| {
            if !inner_is_normal(f, q)? {
                return Ok(());
            }
            for c in characteristic_subgroups(f, q)? {
                out.push(check(format!("{inst} C={}", label(f, &c)), is_strongly_closed(f, &c), || {
                    json!({ "q": sub_json(g, q), "characteristic": sub_json(g, &c) })
                }));
            }
            Ok(())
        });
    }
    out
}

fn normalifffrattini(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut subs: Vec<(String, Arc<FusionSystem>)> = Vec::new();
    for q in strongly_closed_subgroups(f) {
        if let Ok(e) = inner_system(f, &q) {
            subs.push((format!("inner {}", label(f, &q)), Arc::new(e)));
        }
    }
    for p in ctx.pairs().iter().filter(|p| p.ambient_is_f) {
        subs.push((p.label.clone(), p.sub.clone()));
    }
    let mut out = Vec::new();
    for (inst, e) in subs {
        guarded(&mut out, &inst, |out| {
            let inv = is_invariant(f, &e)?;
            let acts = aut_f_acts_on(&e, &f.aut(e.carrier()));
            let frat = is_frattini(f, &e)?;
            out.push(check(inst.clone(), inv == (acts && frat), || {
                json!({ "carrier": sub_json(g, e.carrier()), "invariant": inv, "aut_stable": acts, "frattini": frat })
            }));
            Ok(())
        });
    }
    out
}

fn alperin(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "regenerate", |out| {
        let gens = alperin_generators(f)?;
        let mut seeds = Vec::new();
        for (s, auts) in &gens {
            for a in auts {
                seeds.push((f.idx(s), a.map.clone()));
            }
        }
        let pre = PreFusionSystem::new(g.clone(), f.carrier().clone(), f.p())?;
        let regenerated = FusionSystem::close(pre, seeds, Provenance::Derived("alperin".into()));
        out.push(check("regenerate", regenerated.equals(f)?, || {
            json!({ "generators": gens.iter().map(|(s, _)| sub_json(g, s)).collect::<Vec<_>>() })
        }));
        Ok(())
    });
    for (qi, ri, m) in f.all_isos() {
        let inst = format!("decompose {} -> {}", label(f, f.lattice().get(qi)), label(f, f.lattice().get(ri)));
        let phi = f.to_hom(qi, ri, m);
        guarded(&mut out, &inst, |out| {
            let steps = alperin_decompose(f, &phi)?;
            let q = &phi.domain;
            let mut cur: Vec<usize> = vec![NONE; g.order()];
            for x in q.members() {
                cur[x] = x;
            }
            let mut ok = true;
            for (s, alpha) in &steps {
                ok &= q.members().all(|x| s.contains(cur[x]));
                if !ok {
                    break;
                }
                for x in q.members() {
                    cur[x] = alpha.map[cur[x]];
                }
            }
            ok &= q.members().all(|x| cur[x] == phi.map[x]);
            out.push(check(inst.clone(), ok, || json!({ "phi": hom_json(g, &phi), "steps": steps.len() })));
            Ok(())
        });
    }
    out
}

fn quotient_saturation(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for q in weakly_closed_subgroups(f) {
        let inst = label(f, &q);
        guarded(&mut out, &inst, |out| {
            let fq = factor_system(f, &q)?;
            out.push(check(inst.clone(), fq.system.is_saturated(), || {
                json!({ "q": sub_json(g, &q), "failure": saturation_json(&fq.system) })
            }));
            Ok(())
        });
    }
    out
}

fn saturated_quotient(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for q in strongly_closed_subgroups(f) {
        let inst = label(f, &q);
        guarded(&mut out, &inst, |out| {
            let bar = bar_system(f, &q)?;
            let (closed, w) = prefusion_is_fusion(&bar.system);
            let fq = factor_system(f, &q)?;
            let same = fq.system.as_prefusion().equals(&bar.system)?;
            let morphism = quotient_morphism(f, &q, QuotientTarget::Factor)?;
            let kernel_ok = is_strongly_closed(f, &morphism.kernel);
            out.push(check(inst.clone(), closed && same && kernel_ok, || {
                json!({ "q": sub_json(g, &q), "bar_closed": closed, "factor_equals_bar": same,
                        "kernel_strongly_closed": kernel_ok,
                        "bar_gap": w.map(|w| prefusion_witness_json(&bar.system, &w)) })
            }));
            Ok(())
        });
    }
    out
}

fn closure_transfer_suite(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    for q in strongly_closed_subgroups(f) {
        let inst = label(f, &q);
        guarded(&mut out, &inst, |out| {
            let t = closure_transfer(f, &q)?;
            out.push(check(inst.clone(), t.holds(), || {
                json!({ "q": sub_json(g, &q), "weak_bijection": t.weak_bijection, "weak_images": t.weak_images,
                        "strong_bijection": t.strong_bijection, "strong_images": t.strong_images })
            }));
            Ok(())
        });
    }
    out
}

fn second_iso(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    let subs: Vec<&Pair> = ctx.pairs().iter().filter(|p| p.ambient_is_f).collect();
    for q in strongly_closed_subgroups(f) {
        for pair in &subs {
            let inst = format!("Q={} E={}", label(f, &q), pair.label);
            guarded(&mut out, &inst, |out| {
                let ok = verify_second_iso(f, &q, &pair.sub)?;
                out.push(check(inst.clone(), ok, || {
                    json!({ "q": sub_json(g, &q), "e_carrier": sub_json(g, pair.sub.carrier()) })
                }));
                Ok(())
            });
        }
    }
    out
}

fn third_iso(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let closed = strongly_closed_subgroups(f);
    let mut out = Vec::new();
    for q in &closed {
        for r in closed.iter().filter(|r| q.is_subgroup_of(r)) {
            let inst = format!("Q={} R={}", label(f, q), label(f, r));
            guarded(&mut out, &inst, |out| {
                let ok = verify_third_iso(f, q, r)?;
                out.push(check(inst.clone(), ok, || json!({ "q": sub_json(g, q), "r": sub_json(g, r) })));
                Ok(())
            });
        }
    }
    out
}

fn is_p_soluble(f: &FusionSystem) -> Result<bool> {
    Ok(o_p_tower(f)?.p_soluble)
}

fn theorem_e(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "constrained", |out| {
        if !is_p_soluble(f)? {
            return Ok(());
        }
        let op = o_p(f)?;
        let c = g.centralizer(f.carrier(), &op);
        out.push(check("constrained", is_constrained(f)? && c == g.center(&op), || {
            json!({ "op": sub_json(g, &op), "centralizer": sub_json(g, &c) })
        }));
        Ok(())
    });
    out
}

fn psoluble_subsystems(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "p-soluble", |out| {
        if !is_p_soluble(f)? {
            return Ok(());
        }
        for q in strongly_closed_subgroups(f) {
            let fq = factor_system(f, &q)?;
            out.push(check(format!("F/{}", label(f, &q)), is_p_soluble(&fq.system)?, || {
                json!({ "q": sub_json(g, &q) })
            }));
        }
        for k in ctx.knorms() {
            let Ok(sub) = &k.sub else { continue };
            if sub.is_saturated() {
                out.push(check(format!("N^K {}", k.label), is_p_soluble(sub)?, || {
                    json!({ "q": sub_json(g, &k.q), "carrier": sub_json(g, sub.carrier()) })
                }));
            }
        }
        Ok(())
    });
    out
}

fn psoluble_extension(ctx: &Ctx) -> Vec<Check> {
    if !ctx.saturated() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "extension", |out| {
        let op = o_p(f)?;
        let e = inner_system(f, &op)?;
        let fq = factor_system(f, &op)?;
        let top = o_p_tower(&fq.system)?;
        if !(is_p_soluble(&e)? && top.p_soluble) {
            return Ok(());
        }
        let own = o_p_tower(f)?;
        // the tower of F is O_p(F) followed by the preimages of the tower of F/O_p(F)
        let mut glued = vec![g.trivial()];
        glued.extend(top.tower.iter().map(|t| fq.projection.preimage(t)));
        glued.dedup();
        out.push(check("extension", own.p_soluble && own.tower == glued, || {
            json!({ "tower": own.tower.iter().map(|t| t.order()).collect::<Vec<_>>(),
                    "glued": glued.iter().map(|t| t.order()).collect::<Vec<_>>() })
        }));
        Ok(())
    });
    out
}

fn group_centralizer(ctx: &Ctx) -> Vec<Check> {
    let Some(g) = &ctx.sys.realizing else { return Vec::new() };
    let p = ctx.f().p();
    let mut out = Vec::new();
    guarded(&mut out, "C_G(O_p(G))", |out| {
        let whole = g.whole();
        if !group_is_p_soluble(g, p)? || !g.core_pprime(&whole, p).is_trivial() {
            return Ok(());
        }
        let op = g.core_p(&whole, p);
        let c = g.centralizer(&whole, &op);
        out.push(check("C_G(O_p(G))", c.is_subgroup_of(&op), || {
            json!({ "op": sub_json(g, &op), "centralizer": sub_json(g, &c) })
        }));
        Ok(())
    });
    out
}

fn theorem_f(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let Some(g) = &ctx.sys.realizing else { return Vec::new() };
    if !ctx.entry.entry.model_primes.contains(&f.p()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    guarded(&mut out, "model", |out| {
        let constrained = is_constrained(f)?;
        let model = is_model(g, f)?;
        out.push(check("model", constrained && model, || {
            json!({ "constrained": constrained, "is_model": model })
        }));
        let by_aut = aut_of_o_p_is_p_soluble(f)?;
        let by_group = group_is_p_soluble(g, f.p())?;
        out.push(check("Aut_F(O_p) criterion", by_aut == by_group, || {
            json!({ "aut_criterion": by_aut, "model_p_soluble": by_group })
        }));
        Ok(())
    });
    out
}

fn qdp_free(ctx: &Ctx) -> Vec<Check> {
    let Some(g) = &ctx.sys.realizing else { return Vec::new() };
    let f = ctx.f();
    let p = f.p();
    let mut out = Vec::new();
    guarded(&mut out, "tower", |out| {
        if !group_is_p_soluble(g, p)? || !is_qdp_free_group(g, p)? {
            return Ok(());
        }
        let t = o_p_tower(f)?;
        let strict = t.tower.windows(2).all(|w| w[0].order() < w[1].order());
        out.push(check("tower", t.p_soluble && strict, || {
            json!({ "tower": t.tower.iter().map(|s| s.order()).collect::<Vec<_>>() })
        }));
        Ok(())
    });
    out
}

fn thompson(ctx: &Ctx) -> Vec<Check> {
    let Some(g) = &ctx.sys.realizing else { return Vec::new() };
    let f = ctx.f();
    let p = f.p();
    if p == 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    guarded(&mut out, "factorization", |out| {
        if !is_qdp_free_group(g, p)? {
            return Ok(());
        }
        out.push(check("factorization", thompson_factorization_holds(f)?, || json!({})));
        Ok(())
    });
    out
}

fn expected_values(ctx: &Ctx) -> Vec<Check> {
    let f = ctx.f();
    let mut out = Vec::new();
    for x in ctx.entry.entry.expected.iter().filter(|x| x.system == ctx.sys.id) {
        let inst = x.key.clone();
        match actual_value(ctx, &x.key) {
            Err(e) => out.push(errored(inst, &e)),
            Ok(None) => out.push(check(inst, false, || json!({ "unknown_key": x.key }))),
            Ok(Some(v)) => out.push(check(inst, v == x.value, || {
                json!({ "expected": x.value, "actual": v, "provenance": x.provenance, "system": f.provenance().to_string() })
            })),
        }
    }
    out
}

fn actual_value(ctx: &Ctx, key: &str) -> Result<Option<Value>> {
    let f = ctx.f();
    let named = |n: &str| {
        ctx.entry
            .named(n)
            .ok_or_else(|| Error::Validation(format!("entry has no subgroup {n}")))
    };
    let v = match key {
        "carrier_order" => json!(f.carrier().order()),
        "subgroup_count" => json!(f.subgroups().len()),
        "strongly_closed_count" => json!(strongly_closed_subgroups(f).len()),
        "o_p_order" => json!(o_p(f)?.order()),
        "p_length" => json!(o_p_tower(f)?.p_length),
        "p_soluble" => json!(o_p_tower(f)?.p_soluble),
        "o_p_tower_orders" => json!(o_p_tower(f)?.tower.iter().map(|t| t.order()).collect::<Vec<_>>()),
        "constrained" => json!(is_constrained(f)?),
        "saturated" => json!(f.is_saturated()),
        "alperin_generator_orders" => {
            json!(alperin_generators(f)?.iter().map(|(s, _)| s.order()).collect::<Vec<_>>())
        }
        "strongly_closed_A" => json!(is_strongly_closed(f, &named("A")?)),
        "bar_is_fusion_A" => json!(prefusion_is_fusion(&bar_system(f, &named("A")?)?.system).0),
        "factor_is_inner_A" => {
            let fq = factor_system(f, &named("A")?)?;
            let pq = fq.projection.group.clone();
            let inner = FusionSystem::inner(pq.clone(), fq.system.carrier().clone(), f.p())?;
            json!(fq.system.equals(&inner)?)
        }
        "intersection_aut_order" | "intersection_saturated" => {
            let e = d8c2_intersection(ctx)?;
            if key == "intersection_saturated" {
                json!(e.is_saturated())
            } else {
                json!(e.aut(e.carrier()).len())
            }
        }
        _ => return Ok(None),
    };
    Ok(Some(v))
}

/// `F_Q(Q) ∩ F_R(R)` for the named `Q`, `R` of the entry.
fn d8c2_intersection(ctx: &Ctx) -> Result<FusionSystem> {
    let g = ctx.entry.group.clone();
    let get = |n: &str| ctx.entry.named(n).ok_or_else(|| Error::Validation(format!("entry has no subgroup {n}")));
    let fq = FusionSystem::inner(g.clone(), get("Q")?, ctx.f().p())?;
    let fr = FusionSystem::inner(g.clone(), get("R")?, ctx.f().p())?;
    fq.intersect(&fr)
}

fn example_order16(ctx: &Ctx) -> Vec<Check> {
    if !ctx.entry.entry.examples.iter().any(|e| e == "order16") || ctx.sys.realizing.is_some() {
        return Vec::new();
    }
    let f = ctx.f();
    let g = f.group();
    let mut out = Vec::new();
    guarded(&mut out, "order16", |out| {
        let get = |n: &str| ctx.entry.named(n).ok_or_else(|| Error::Validation(format!("entry has no subgroup {n}")));
        let (a, b, c, d) = (get("A")?, get("B")?, get("C")?, get("D")?);
        out.push(check("A strongly closed", is_strongly_closed(f, &a), || json!({ "a": sub_json(g, &a) })));
        let bar = bar_system(f, &a)?;
        let coset = |x: &Subgroup| bar.projection.image(&g.join(&a, x));
        let (ab, ac, ad) = (coset(&b), coset(&c), coset(&d));
        let (ok, w) = prefusion_is_fusion(&bar.system);
        let pq = bar.projection.group.order();
        let witness_ok = matches!(&w, Some(Witness::MissingComposite { first, second })
            if first.domain == ab && first.image(pq) == ac && second.domain == ac && second.image(pq) == ad);
        out.push(check("bar not a fusion system", !ok && witness_ok, || {
            json!({ "bar_is_fusion": ok, "witness": w.as_ref().map(|w| prefusion_witness_json(&bar.system, w)) })
        }));
        let fq = factor_system(f, &a)?;
        let inner = FusionSystem::inner(fq.projection.group.clone(), fq.system.carrier().clone(), f.p())?;
        out.push(check("F/A is inner", fq.system.equals(&inner)?, || json!({})));
        Ok(())
    });
    out
}

fn example_d8xc2(ctx: &Ctx) -> Vec<Check> {
    if !ctx.entry.entry.examples.iter().any(|e| e == "d8xc2") || ctx.sys.realizing.is_none() {
        return Vec::new();
    }
    let mut out = Vec::new();
    guarded(&mut out, "d8xc2", |out| {
        let g = ctx.entry.group.clone();
        let e = d8c2_intersection(ctx)?;
        let get = |n: &str| ctx.entry.named(n).ok_or_else(|| Error::Validation(format!("entry has no subgroup {n}")));
        let x = get("X")?.members().find(|&m| g.element_order(m) == 4).ok_or(Error::NotASubgroup)?;
        let y = get("Y")?.members().find(|&m| m != 0).ok_or(Error::NotASubgroup)?;
        let x2y = g.mul(g.mul(x, x), y);
        let s = e.carrier().clone();
        let auts = e.aut(&s);
        let swap = auts.iter().any(|h| h.apply(y) == x2y && h.apply(x2y) == y);
        out.push(check("Aut_E(S)", auts.len() == 2 && swap && s.order() == 4, || {
            json!({ "s": sub_json(&g, &s), "aut_order": auts.len(), "has_swap": swap })
        }));
        out.push(check("E not saturated", !e.is_saturated(), || json!({})));
        Ok(())
    });
    out
}

#[cfg(test)]
mod tests;

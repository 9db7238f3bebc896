//! The example corpus: entry files, loading, and the bootstrap that writes
//! the shipped corpus with oracle-stamped expected values.
//!
//! Layout of a corpus directory:
//!
//! ```text
//! entries/NAME.json    one CorpusEntry each
//! groups/NAME.json     group files
//! systems/NAME.json    fusion-system specs
//! ```
//!
//! Paths inside an entry are relative to the entry file.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::catalog;
use crate::error::{Error, Result};
use crate::fusion::FusionSystem;
use crate::group::{p_part, Group, Subgroup};
use crate::io::{self, FusionSpec, GroupFile, GroupRef, Mode, SeedMorphism};
use crate::perm::Perm;
use crate::quotients::factor_system;
use crate::solubility::qd_group;
use crate::subsystems::is_normal_by_definition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    Paper,
    DerivedOracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub system: String,
    pub key: String,
    pub value: Value,
    pub provenance: Source,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemRef {
    pub name: String,
    pub spec: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusEntry {
    pub name: String,
    pub group: String,
    pub primes: Vec<u32>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub systems: Vec<SystemRef>,
    /// Primes at which the group is shipped as a model of its own system.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub model_primes: Vec<u32>,
    /// Named subgroups, each given by generators.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub subgroups: BTreeMap<String, Vec<Vec<usize>>>,
    /// Worked examples this entry reproduces.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub examples: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<Expected>,
}

pub struct CorpusSystem {
    pub entry: String,
    /// `NAME@p` for the system of the group, `NAME/spec` for a spec.
    pub id: String,
    pub system: FusionSystem,
    /// The group realizing the system, for `NAME@p` systems.
    pub realizing: Option<Arc<Group>>,
}

pub struct LoadedEntry {
    pub entry: CorpusEntry,
    pub path: PathBuf,
    pub group: Arc<Group>,
    pub systems: Vec<CorpusSystem>,
}

impl LoadedEntry {
    pub fn named(&self, name: &str) -> Option<Subgroup> {
        named_subgroup(&self.group, self.entry.subgroups.get(name)?).ok()
    }

    pub fn system(&self, id: &str) -> Option<&CorpusSystem> {
        self.systems.iter().find(|s| s.id == id)
    }
}

fn named_subgroup(g: &Group, gens: &[Vec<usize>]) -> Result<Subgroup> {
    let perms = gens
        .iter()
        .map(|im| Perm::new(im.clone()))
        .collect::<Result<Vec<_>>>()?;
    g.generate_perms(&perms)
}

pub fn system_id(entry: &str, p: u32) -> String {
    format!("{entry}@{p}")
}

pub fn load_entry(path: &Path, cap: usize) -> Result<LoadedEntry> {
    let text = io::read_text(path)?;
    let loc = path.display().to_string();
    let entry: CorpusEntry =
        serde_json::from_str(&text).map_err(|e| Error::parse(format!("{loc}:{}:{}", e.line(), e.column()), e.to_string()))?;
    let base = io::base_dir(path);
    let group = Arc::new(io::load_group(&base.join(&entry.group), cap)?);
    for (name, gens) in &entry.subgroups {
        named_subgroup(&group, gens).map_err(|_| Error::parse(format!("{loc}: subgroups.{name}"), "generators are not in the group"))?;
    }
    let mut systems = Vec::new();
    for &p in &entry.primes {
        systems.push(CorpusSystem {
            entry: entry.name.clone(),
            id: system_id(&entry.name, p),
            system: FusionSystem::from_group(&group, p)?,
            realizing: Some(group.clone()),
        });
    }
    for s in &entry.systems {
        systems.push(CorpusSystem {
            entry: entry.name.clone(),
            id: format!("{}/{}", entry.name, s.name),
            system: io::load_fusion_spec(&base.join(&s.spec), cap)?,
            realizing: None,
        });
    }
    Ok(LoadedEntry {
        entry,
        path: path.to_path_buf(),
        group,
        systems,
    })
}

/// Entries sorted by name. A directory without `entries/` is an empty
/// corpus.
pub fn load_corpus(dir: &Path, cap: usize) -> Result<Vec<LoadedEntry>> {
    if !dir.is_dir() {
        return Err(Error::Io(format!("{}: not a directory", dir.display())));
    }
    let entries_dir = dir.join("entries");
    if !entries_dir.is_dir() {
        return Ok(Vec::new());
    }
    let mut paths: Vec<PathBuf> = std::fs::read_dir(&entries_dir)
        .map_err(|e| Error::Io(format!("{}: {e}", entries_dir.display())))?
        .filter_map(|d| d.ok().map(|d| d.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut out = paths
        .iter()
        .map(|p| load_entry(p, cap))
        .collect::<Result<Vec<_>>>()?;
    out.sort_by(|a, b| a.entry.name.cmp(&b.entry.name));
    Ok(out)
}

/// Brute-force reference computations, kept apart from the algorithms they
/// check: subgroups by closing under joins with cyclic subgroups, element
/// fusion from conjugacy in the realizing group, and `O_p(F)` as the
/// largest subgroup with `N_F(Q) = F`.
pub mod oracle {
    use std::collections::BTreeSet;

    use super::*;

    pub fn subgroups(g: &Group, p: &Subgroup) -> BTreeSet<Subgroup> {
        let mut seen: BTreeSet<Subgroup> = BTreeSet::new();
        let mut frontier = vec![g.trivial()];
        seen.insert(g.trivial());
        while let Some(s) = frontier.pop() {
            for x in p.members().filter(|&x| !s.contains(x)) {
                let mut gens = s.member_vec();
                gens.push(x);
                let t = g.generate(&gens);
                if seen.insert(t.clone()) {
                    frontier.push(t);
                }
            }
        }
        seen
    }

    /// Strongly closed subgroups of `p`, a Sylow subgroup of `g`, with
    /// fusion of elements read off from conjugation in `g`.
    pub fn strongly_closed_count(g: &Group, p: &Subgroup) -> usize {
        let fused = |x| -> Vec<usize> {
            (0..g.order())
                .map(|h| g.conj(x, h))
                .filter(|&y| p.contains(y))
                .collect()
        };
        let classes: Vec<Vec<usize>> = (0..g.order())
            .map(|x| if p.contains(x) { fused(x) } else { Vec::new() })
            .collect();
        subgroups(g, p)
            .iter()
            .filter(|q| q.members().all(|x| classes[x].iter().all(|&y| q.contains(y))))
            .count()
    }

    pub fn o_p(f: &FusionSystem) -> Subgroup {
        f.subgroups()
            .iter()
            .filter(|q| is_normal_by_definition(f, q))
            .max_by_key(|q| q.order())
            .cloned()
            .unwrap_or_else(|| f.group().trivial())
    }

    /// Number of steps for the `O_p` tower to reach the carrier, or `None`.
    pub fn p_length(f: &FusionSystem) -> Result<Option<usize>> {
        let mut t = f.group().trivial();
        let mut steps = 0;
        while &t != f.carrier() {
            let fq = factor_system(f, &t)?;
            let next = fq.projection.preimage(&o_p(&fq.system));
            if next == t {
                return Ok(None);
            }
            t = next;
            steps += 1;
        }
        Ok(Some(steps))
    }

    pub fn constrained(f: &FusionSystem) -> bool {
        let op = o_p(f);
        f.group().centralizer(f.carrier(), &op).is_subgroup_of(&op)
    }
}

struct Plan {
    name: &'static str,
    group: Group,
    primes: Vec<u32>,
    model_primes: Vec<u32>,
}

fn plans() -> Result<Vec<Plan>> {
    let plan = |name, group, primes: &[u32], model_primes: &[u32]| Plan {
        name,
        group,
        primes: primes.to_vec(),
        model_primes: model_primes.to_vec(),
    };
    Ok(vec![
        plan("C2", catalog::cyclic(2), &[2], &[2]),
        plan("C3", catalog::cyclic(3), &[3], &[3]),
        plan("D8", catalog::d8(), &[2], &[2]),
        plan("Q8", catalog::q8(), &[2], &[2]),
        plan("C4xC2", catalog::c4_x_c2(), &[2], &[2]),
        plan("E16", catalog::e16(), &[2], &[2]),
        plan("D8xC2", catalog::d8_x_c2(), &[2], &[2]),
        plan("S3", catalog::symmetric_3(), &[2, 3], &[3]),
        plan("S4", catalog::s4(), &[2, 3], &[2]),
        plan("A4", catalog::a4(), &[2, 3], &[2]),
        plan("SL2_3", catalog::sl2_3(), &[2, 3], &[2]),
        plan("A6", catalog::a6(), &[2, 3], &[]),
        plan("Qd2", qd_group(2)?, &[2, 3], &[2]),
        plan("Qd3", qd_group(3)?, &[2, 3], &[3]),
        plan("S4xC3", catalog::s4_x_c3(), &[2, 3], &[]),
    ])
}

fn derived(system: &str, key: &str, value: Value) -> Expected {
    Expected {
        system: system.into(),
        key: key.into(),
        value,
        provenance: Source::DerivedOracle,
        note: None,
    }
}

fn paper(system: &str, key: &str, value: Value, note: &str) -> Expected {
    Expected {
        system: system.into(),
        key: key.into(),
        value,
        provenance: Source::Paper,
        note: Some(note.into()),
    }
}

/// Oracle values for a system realized by `g` at `p`.
fn group_expectations(id: &str, g: &Group, f: &FusionSystem) -> Result<Vec<Expected>> {
    let p = f.p();
    let sylow = g.sylow(&g.whole(), p);
    let op = oracle::o_p(f);
    Ok(vec![
        derived(id, "carrier_order", json!(p_part(g.order(), p))),
        derived(id, "subgroup_count", json!(oracle::subgroups(g, &sylow).len())),
        derived(id, "strongly_closed_count", json!(oracle::strongly_closed_count(g, &sylow))),
        derived(id, "o_p_order", json!(op.order())),
        derived(id, "p_length", json!(oracle::p_length(f)?)),
        derived(id, "constrained", json!(oracle::constrained(f))),
        paper(id, "saturated", json!(true), "the fusion system of a finite group is saturated"),
    ])
}

fn gens_of(g: &Group, idx: &[usize]) -> Vec<Vec<usize>> {
    idx.iter().map(|&i| g.generators()[i].images().to_vec()).collect()
}

fn write_json<T: Serialize>(path: &Path, x: &T) -> Result<()> {
    let mut s = serde_json::to_string_pretty(x).expect("plain data serializes");
    s.push('\n');
    std::fs::write(path, s).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Writes the shipped corpus to `out`, computing every derived expected
/// value with the oracles above.
pub fn bootstrap(out: &Path) -> Result<Vec<String>> {
    let mk = |d: &str| {
        let p = out.join(d);
        std::fs::create_dir_all(&p).map_err(|e| Error::Io(format!("{}: {e}", p.display())))
    };
    mk("entries")?;
    mk("groups")?;
    mk("systems")?;
    let mut written = Vec::new();
    for plan in plans()? {
        let g = &plan.group;
        write_json(&out.join(format!("groups/{}.json", plan.name)), &GroupFile::from_group(g))?;
        let mut entry = CorpusEntry {
            name: plan.name.into(),
            group: format!("../groups/{}.json", plan.name),
            primes: plan.primes.clone(),
            systems: Vec::new(),
            model_primes: plan.model_primes.clone(),
            subgroups: BTreeMap::new(),
            examples: Vec::new(),
            expected: Vec::new(),
        };
        for &p in &plan.primes {
            let f = FusionSystem::from_group(g, p)?;
            entry.expected.extend(group_expectations(&system_id(plan.name, p), g, &f)?);
        }
        match plan.name {
            "E16" => e16_extras(out, g, &mut entry)?,
            "D8xC2" => d8c2_extras(g, &mut entry),
            "S4" => entry.expected.extend([
                paper("S4@2", "o_p_tower_orders", json!([1, 4, 8]), "tower 1 < V4 < D8"),
                paper("S4@2", "alperin_generator_orders", json!([4, 8]), "generators V4 and D8"),
            ]),
            "A6" => entry.expected.push(paper("A6@2", "p_soluble", json!(false), "A6 is not 2-soluble")),
            _ => {}
        }
        log::info!("bootstrapped {}", plan.name);
        write_json(&out.join(format!("entries/{}.json", plan.name)), &entry)?;
        written.push(plan.name.to_string());
    }
    Ok(written)
}

fn e16_extras(out: &Path, g: &Group, entry: &mut CorpusEntry) -> Result<()> {
    let gens = gens_of(g, &[0, 1, 2, 3]);
    let prod = |x: &[usize], y: &[usize]| x.iter().map(|&i| y[i]).collect::<Vec<_>>();
    let (a, b, c, d) = (&gens[0], &gens[1], &gens[2], &gens[3]);
    let spec = FusionSpec {
        group: GroupRef::Path("../groups/E16.json".into()),
        p: 2,
        mode: Mode::Generated,
        ambient: None,
        seed_morphisms: vec![
            SeedMorphism {
                domain_gens: vec![prod(a, b)],
                images: vec![c.clone()],
            },
            SeedMorphism {
                domain_gens: vec![prod(a, c)],
                images: vec![d.clone()],
            },
        ],
    };
    write_json(&out.join("systems/E16-seeded.json"), &spec)?;
    entry.systems.push(SystemRef {
        name: "seeded".into(),
        spec: "../systems/E16-seeded.json".into(),
    });
    for (name, x) in [("A", a), ("B", b), ("C", c), ("D", d)] {
        entry.subgroups.insert(name.into(), vec![x.clone()]);
    }
    entry.examples.push("order16".into());
    let f = io::load_fusion_spec(&out.join("systems/E16-seeded.json"), g.order_cap())?;
    let id = "E16/seeded";
    entry.expected.extend([
        derived(id, "carrier_order", json!(16)),
        derived(id, "subgroup_count", json!(oracle::subgroups(f.group(), f.carrier()).len())),
        paper(id, "strongly_closed_A", json!(true), "A = <a> is strongly closed"),
        paper(id, "bar_is_fusion_A", json!(false), "cosets Ab, Ac and Ac, Ad are fused but Ab, Ad are not"),
        paper(id, "factor_is_inner_A", json!(true), "no non-trivial morphisms on overgroups of A"),
    ]);
    Ok(())
}

fn d8c2_extras(g: &Group, entry: &mut CorpusEntry) {
    let gens = gens_of(g, &[0, 1, 2]);
    let (x, y, z) = (&gens[0], &gens[1], &gens[2]);
    let xz: Vec<usize> = x.iter().map(|&i| z[i]).collect();
    entry.subgroups.insert("X".into(), vec![x.clone()]);
    entry.subgroups.insert("Y".into(), vec![y.clone()]);
    entry.subgroups.insert("Q".into(), vec![x.clone(), y.clone()]);
    entry.subgroups.insert("R".into(), vec![xz, y.clone()]);
    entry.examples.push("d8xc2".into());
    entry.expected.extend([
        paper("D8xC2@2", "intersection_aut_order", json!(2), "Aut_E(S) = {1, y <-> x^2y}"),
        paper("D8xC2@2", "intersection_saturated", json!(false), "E cannot be saturated"),
    ]);
}

//! JSON formats: group files, fusion-system specs and computed systems.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fusion::{FusionSystem, PreFusionSystem, Provenance, SaturationFailure};
use crate::group::{ElementId, Group, Subgroup, NONE};
use crate::hom::{hom_build, GroupHom};
use crate::perm::Perm;
use crate::quotients::{prefusion_is_fusion, Witness};

/// `{"name": ..., "degree": n, "generators": [[...], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupFile {
    pub fn from_group(g: &Group) -> Self {
        GroupFile {
            name: g.name().to_string(),
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }

    pub fn build(&self, cap: usize) -> Result<Group> {
        let mut gens = Vec::new();
        for (i, imgs) in self.generators.iter().enumerate() {
            if imgs.len() != self.degree {
                return Err(Error::parse(
                    format!("generators[{i}]"),
                    format!("expected {} images, found {}", self.degree, imgs.len()),
                ));
            }
            let p = Perm::new(imgs.clone())
                .map_err(|_| Error::parse(format!("generators[{i}]"), "not a permutation"))?;
            gens.push(p);
        }
        Group::with_cap(self.name.clone(), self.degree, gens, cap)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    /// Path relative to the file that mentions it.
    Path(String),
    Inline(GroupFile),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    FromGroup,
    Generated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedMorphism {
    pub domain_gens: Vec<Vec<usize>>,
    pub images: Vec<Vec<usize>>,
}

/// A fusion system to build. In `from-group` mode `group` is the finite
/// group and the system lives on its Sylow subgroup; in `generated` mode
/// `group` is the p-group itself, optionally sitting inside `ambient`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FusionSpec {
    pub group: GroupRef,
    pub p: u32,
    pub mode: Mode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<GroupRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub seed_morphisms: Vec<SeedMorphism>,
}

fn json_error(location: &str, e: serde_json::Error) -> Error {
    Error::parse(format!("{location}:{}:{}", e.line(), e.column()), e.to_string())
}

pub fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

pub fn parse_group_str(text: &str, location: &str, cap: usize) -> Result<Group> {
    let file: GroupFile = serde_json::from_str(text).map_err(|e| json_error(location, e))?;
    file.build(cap).map_err(|e| relocate(e, location))
}

fn relocate(e: Error, location: &str) -> Error {
    match e {
        Error::Parse { location: l, message } => Error::Parse {
            location: format!("{location}: {l}"),
            message,
        },
        other => other,
    }
}

pub fn load_group(path: &Path, cap: usize) -> Result<Group> {
    parse_group_str(&read_text(path)?, &path.display().to_string(), cap)
}

pub fn group_to_json(g: &Group) -> String {
    to_pretty(&GroupFile::from_group(g))
}

fn to_pretty<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("plain data serializes");
    s.push('\n');
    s
}

fn resolve(r: &GroupRef, base: &Path, cap: usize) -> Result<Group> {
    match r {
        GroupRef::Path(p) => load_group(&base.join(p), cap),
        GroupRef::Inline(g) => g.build(cap),
    }
}

fn perm_id(g: &Group, imgs: &[usize], location: String) -> Result<ElementId> {
    let p = Perm::new(imgs.to_vec()).map_err(|_| Error::parse(location.clone(), "not a permutation"))?;
    g.index_of(&p)
        .ok_or_else(|| Error::parse(location, "permutation is not in the group"))
}

impl FusionSpec {
    /// Builds the system; relative group paths resolve against `base`.
    pub fn build(&self, base: &Path, cap: usize) -> Result<FusionSystem> {
        let g = resolve(&self.group, base, cap)?;
        match self.mode {
            Mode::FromGroup => {
                if self.ambient.is_some() || !self.seed_morphisms.is_empty() {
                    return Err(Error::Validation(
                        "from-group mode takes neither an ambient group nor seeds".into(),
                    ));
                }
                FusionSystem::from_group(&g, self.p)
            }
            Mode::Generated => {
                let (amb, carrier) = match &self.ambient {
                    None => {
                        let w = g.whole();
                        (Arc::new(g), w)
                    }
                    Some(a) => {
                        let amb = resolve(a, base, cap)?;
                        let c = amb.generate_perms(g.generators()).map_err(|_| {
                            Error::Validation("group generators do not lie in the ambient group".into())
                        })?;
                        (Arc::new(amb), c)
                    }
                };
                let mut seeds = Vec::new();
                for (i, s) in self.seed_morphisms.iter().enumerate() {
                    seeds.push(self.seed(&amb, &carrier, i, s)?);
                }
                FusionSystem::generated(amb, carrier, self.p, &seeds)
            }
        }
    }

    fn seed(&self, g: &Group, carrier: &Subgroup, i: usize, s: &SeedMorphism) -> Result<GroupHom> {
        if s.domain_gens.len() != s.images.len() {
            return Err(Error::parse(
                format!("seed_morphisms[{i}]"),
                "domain_gens and images differ in length",
            ));
        }
        let mut pairs = Vec::new();
        for (k, (d, im)) in s.domain_gens.iter().zip(&s.images).enumerate() {
            let x = perm_id(g, d, format!("seed_morphisms[{i}].domain_gens[{k}]"))?;
            let y = perm_id(g, im, format!("seed_morphisms[{i}].images[{k}]"))?;
            pairs.push((x, y));
        }
        let dom = g.generate(&pairs.iter().map(|&(x, _)| x).collect::<Vec<_>>());
        hom_build(g, &dom, g, carrier, &pairs)
    }
}

pub fn parse_fusion_spec_str(text: &str, location: &str) -> Result<FusionSpec> {
    serde_json::from_str(text).map_err(|e| json_error(location, e))
}

pub fn load_fusion_spec(path: &Path, cap: usize) -> Result<FusionSystem> {
    let spec = parse_fusion_spec_str(&read_text(path)?, &path.display().to_string())?;
    spec.build(&base_dir(path), cap)
}

pub fn base_dir(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// A computed system: subgroups are sorted element-id lists over the
/// canonical element order of `group`, and each isomorphism lists the
/// images of its domain's members in increasing order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemFile {
    pub format: String,
    pub version: u32,
    pub group: GroupFile,
    pub p: u32,
    pub provenance: String,
    pub carrier: Vec<usize>,
    pub subgroups: Vec<Vec<usize>>,
    pub isos: Vec<IsoEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IsoEntry {
    pub domain: usize,
    pub codomain: usize,
    pub images: Vec<Vec<usize>>,
}

pub const SYSTEM_FORMAT: &str = "fusion-system";

pub fn system_file(pre: &PreFusionSystem, provenance: &str) -> SystemFile {
    let lat = pre.lattice();
    let mut isos = Vec::new();
    for qi in 0..lat.len() {
        for (&ri, maps) in pre.isos_from(qi) {
            isos.push(IsoEntry {
                domain: qi,
                codomain: ri,
                images: maps.iter().map(|m| lat.get(qi).members().map(|x| m[x]).collect()).collect(),
            });
        }
    }
    SystemFile {
        format: SYSTEM_FORMAT.into(),
        version: 1,
        group: GroupFile::from_group(pre.group()),
        p: pre.p(),
        provenance: provenance.into(),
        carrier: pre.carrier().member_vec(),
        subgroups: lat.subgroups().iter().map(Subgroup::member_vec).collect(),
        isos,
    }
}

pub fn system_to_json(f: &FusionSystem) -> String {
    to_pretty(&system_file(f.as_prefusion(), &f.provenance().to_string()))
}

pub fn prefusion_to_json(pre: &PreFusionSystem) -> String {
    to_pretty(&system_file(pre, "prefusion"))
}

impl SystemFile {
    pub fn build_prefusion(&self, cap: usize) -> Result<PreFusionSystem> {
        if self.format != SYSTEM_FORMAT || self.version != 1 {
            return Err(Error::parse("format", "expected a version 1 fusion-system file"));
        }
        let g = Arc::new(self.group.build(cap)?);
        let carrier = g
            .subgroup_from_ids(self.carrier.iter().copied())
            .map_err(|_| Error::parse("carrier", "not a subgroup"))?;
        let mut pre = PreFusionSystem::new(g.clone(), carrier, self.p)?;
        let listed: Vec<Vec<usize>> = pre.subgroups().iter().map(Subgroup::member_vec).collect();
        if listed != self.subgroups {
            return Err(Error::parse("subgroups", "does not match the carrier's subgroup lattice"));
        }
        for (k, iso) in self.isos.iter().enumerate() {
            let loc = format!("isos[{k}]");
            let (Some(dom), Some(cod)) = (listed.get(iso.domain), listed.get(iso.codomain)) else {
                return Err(Error::parse(loc, "subgroup index out of range"));
            };
            for (j, imgs) in iso.images.iter().enumerate() {
                let loc = format!("{loc}.images[{j}]");
                if imgs.len() != dom.len() {
                    return Err(Error::parse(loc, "wrong number of images"));
                }
                let mut map = vec![NONE; g.order()];
                for (&x, &y) in dom.iter().zip(imgs) {
                    map[x] = y;
                }
                let mut img: Vec<usize> = imgs.clone();
                img.sort();
                if img != *cod {
                    return Err(Error::parse(loc, "images do not form the codomain"));
                }
                let hom = dom.iter().all(|&x| dom.iter().all(|&y| map[g.mul(x, y)] == g.mul(map[x], map[y])));
                if !hom {
                    return Err(Error::parse(loc, "not an isomorphism onto the codomain"));
                }
                pre.insert(iso.domain, map);
            }
        }
        Ok(pre)
    }

    /// The stored table must already be closed.
    pub fn build_system(&self, cap: usize) -> Result<FusionSystem> {
        let pre = self.build_prefusion(cap)?;
        if let (false, Some(w)) = prefusion_is_fusion(&pre) {
            return Err(Error::Validation(format!(
                "table is not a fusion system: {}",
                prefusion_witness_json(&pre, &w)
            )));
        }
        Ok(FusionSystem::from_closed(pre, Provenance::parse(&self.provenance)))
    }
}

pub fn parse_system_str(text: &str, location: &str, cap: usize) -> Result<FusionSystem> {
    let file: SystemFile = serde_json::from_str(text).map_err(|e| json_error(location, e))?;
    file.build_system(cap).map_err(|e| relocate(e, location))
}

/// Either a computed system or a spec, told apart by the `format` key.
pub fn load_any_system(path: &Path, cap: usize) -> Result<FusionSystem> {
    let text = read_text(path)?;
    let loc = path.display().to_string();
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| json_error(&loc, e))?;
    if v.get("format").is_some() {
        parse_system_str(&text, &loc, cap)
    } else {
        parse_fusion_spec_str(&text, &loc)?.build(&base_dir(path), cap)
    }
}

// JSON shapes for witnesses: elements as permutation images, subgroups by
// generators, homomorphisms by the images of domain generators.

pub fn elem_json(g: &Group, x: usize) -> Value {
    json!(g.element(x).images())
}

pub fn sub_json(g: &Group, s: &Subgroup) -> Value {
    let gens: Vec<Value> = g.generating_set(s).into_iter().map(|x| elem_json(g, x)).collect();
    json!({ "order": s.order(), "generators": gens })
}

pub fn hom_json(g: &Group, h: &GroupHom) -> Value {
    let images: Vec<Value> = g
        .generating_set(&h.domain)
        .into_iter()
        .map(|x| json!([elem_json(g, x), elem_json(g, h.map[x])]))
        .collect();
    json!({ "domain": sub_json(g, &h.domain), "images": images })
}

pub fn prefusion_witness_json(pre: &PreFusionSystem, w: &Witness) -> Value {
    let g = pre.group();
    match w {
        Witness::MissingConjugation { subgroup, element } => json!({
            "missing": "conjugation", "subgroup": sub_json(g, subgroup), "element": elem_json(g, *element)
        }),
        Witness::MissingInverse { phi } => json!({ "missing": "inverse", "phi": hom_json(g, phi) }),
        Witness::MissingRestriction { phi, to } => json!({
            "missing": "restriction", "phi": hom_json(g, phi), "to": sub_json(g, to)
        }),
        Witness::MissingComposite { first, second } => json!({
            "missing": "composite", "first": hom_json(g, first), "second": hom_json(g, second)
        }),
    }
}

pub fn saturation_json(f: &FusionSystem) -> Value {
    let g = f.group();
    match f.saturation_failure() {
        None => Value::Null,
        Some(SaturationFailure::SylowAxiom { aut_order, inner_order }) => json!({
            "axiom": "sylow", "aut_order": aut_order, "inner_order": inner_order
        }),
        Some(SaturationFailure::Extension { phi, n_phi }) => json!({
            "axiom": "extension", "phi": hom_json(g, phi), "n_phi": sub_json(g, n_phi)
        }),
    }
}

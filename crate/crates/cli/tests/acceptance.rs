//! One line per acceptance criterion. Run with
//! `cargo test -p fuskit --test acceptance`.

use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;

use fuskit_core::closure::{alperin_generators, is_strongly_closed};
use fuskit_core::corpus::load_corpus;
use fuskit_core::quotients::{bar_system, factor_system, prefusion_is_fusion, Witness};
use fuskit_core::solubility::o_p_tower;
use fuskit_core::{catalog, io, FusionSystem};

type Check = Result<String, String>;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn fuskit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fuskit"))
        .args(args)
        .output()
        .expect("running fuskit");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

/// Runs the named suites and returns the total instance count.
fn suites(ids: &[&str]) -> Result<u64, String> {
    let dir = corpus();
    let mut total = 0;
    for id in ids {
        let (code, out) = fuskit(&["verify", dir.to_str().unwrap(), "--theorem", id, "--format", "json"]);
        let v: Value = serde_json::from_str(&out).map_err(|e| format!("{id}: bad report: {e}"))?;
        let t = &v["theorems"][0];
        let fails = t["failures"].as_array().map_or(0, Vec::len);
        ensure(code == 0 && fails == 0, format!("{id}: exit {code}, {fails} failures"))?;
        let n = t["instances"].as_u64().unwrap_or(0);
        ensure(n > 0, format!("{id}: no instances"))?;
        total += n;
    }
    Ok(total)
}

fn order16() -> Check {
    let f = io::load_fusion_spec(&corpus().join("systems/E16-seeded.json"), 1000).map_err(|e| e.to_string())?;
    let g = f.group();
    let [a, b, c, d] = [0, 1, 2, 3].map(|i| g.index_of(&catalog::e16().generators()[i]).unwrap());
    let qa = g.generate(&[a]);
    ensure(is_strongly_closed(&f, &qa), "A not strongly closed")?;
    let bar = bar_system(&f, &qa).map_err(|e| e.to_string())?;
    let (ok, w) = prefusion_is_fusion(&bar.system);
    ensure(!ok, "bar system is a fusion system")?;
    let Some(Witness::MissingComposite { first, second }) = w else {
        return Err(format!("unexpected witness {w:?}"));
    };
    let coset = |x| bar.projection.image(&g.generate(&[a, x]));
    let n = bar.projection.group.order();
    ensure(
        (first.domain.clone(), first.image(n), second.domain.clone(), second.image(n))
            == (coset(b), coset(c), coset(c), coset(d)),
        "witness is not <Ab> -> <Ac>, <Ac> -> <Ad>",
    )?;
    let fq = factor_system(&f, &qa).map_err(|e| e.to_string())?;
    let inner = FusionSystem::inner(fq.projection.group.clone(), fq.system.carrier().clone(), 2)
        .map_err(|e| e.to_string())?;
    ensure(fq.system.equals(&inner).map_err(|e| e.to_string())?, "factor system is not F_{P/A}(P/A)")?;
    let n = suites(&["example-order16"])?;
    Ok(format!("witness <Ab>-><Ac>, <Ac>-><Ad>; {n} suite instances"))
}

fn d8xc2() -> Check {
    let g = Arc::new(catalog::d8_x_c2());
    let [x, y, z] = [0, 1, 2].map(|i| g.index_of(&g.generators()[i]).unwrap());
    let inner = |s| FusionSystem::inner(g.clone(), s, 2).map_err(|e| e.to_string());
    let e = inner(g.generate(&[x, y]))?
        .intersect(&inner(g.generate(&[g.mul(x, z), y]))?)
        .map_err(|e| e.to_string())?;
    let auts = e.aut(e.carrier());
    ensure(auts.len() == 2, format!("|Aut_E(S)| = {}", auts.len()))?;
    let x2y = g.mul(g.mul(x, x), y);
    ensure(auts.iter().any(|h| h.apply(y) == x2y), "no y -> x^2 y automorphism")?;
    ensure(!e.is_saturated(), "intersection is saturated")?;
    suites(&["example-d8xc2"])?;
    Ok("|Aut_E(S)| = 2, not saturated".into())
}

fn five_way() -> Check {
    let entries = load_corpus(&corpus(), 100_000).map_err(|e| e.to_string())?;
    let sat = entries
        .iter()
        .flat_map(|e| &e.systems)
        .filter(|s| s.system.is_saturated())
        .count();
    ensure(sat >= 12, format!("only {sat} saturated systems"))?;
    let n = suites(&["theorem-A", "theorem-C"])?;
    Ok(format!("{sat} saturated systems, {n} instances"))
}

fn theorem_e() -> Check {
    let entries = load_corpus(&corpus(), 100_000).map_err(|e| e.to_string())?;
    let sys = |entry: &str, id: &str| {
        entries
            .iter()
            .find(|e| e.entry.name == entry)
            .and_then(|e| e.system(id))
            .map(|s| s.system.clone())
            .ok_or(format!("{id} missing"))
    };
    let r = o_p_tower(&sys("S4", "S4@2")?).map_err(|e| e.to_string())?;
    let orders: Vec<usize> = r.tower.iter().map(|s| s.order()).collect();
    ensure(orders == [1, 4, 8], format!("S4 tower {orders:?}"))?;
    ensure(r.p_length == Some(2) && r.constrained, "S4 not p-length 2 constrained")?;
    let r = o_p_tower(&sys("A6", "A6@2")?).map_err(|e| e.to_string())?;
    ensure(!r.p_soluble && !r.constrained, "A6 reported p-soluble or constrained")?;
    let n = suites(&["theorem-E"])?;
    Ok(format!("S4 tower [1, 4, 8], A6 not p-soluble; {n} instances"))
}

fn alperin() -> Check {
    let entries = load_corpus(&corpus(), 100_000).map_err(|e| e.to_string())?;
    let s4 = entries.iter().find(|e| e.entry.name == "S4").ok_or("S4 missing")?;
    let f = &s4.system("S4@2").ok_or("S4@2 missing")?.system;
    let gens = alperin_generators(f).map_err(|e| e.to_string())?;
    let orders: Vec<usize> = gens.iter().map(|(s, _)| s.order()).collect();
    let v4 = f.group().is_abelian(&gens[0].0);
    ensure(orders == [4, 8] && v4, format!("S4 generators of orders {orders:?}"))?;
    let n = suites(&["alperin"])?;
    Ok(format!("S4 generators {{V4, D8}}; {n} instances"))
}

fn determinism() -> Check {
    let n = suites(&["round-trip"])?;
    let dir = corpus();
    let dir = dir.to_str().unwrap();
    let first = fuskit(&["verify", dir, "--format", "json"]);
    let second = fuskit(&["verify", dir, "--format", "json", "--sequential"]);
    ensure(first == second, "repeated verify output differs")?;
    let spec = corpus().join("systems/E16-seeded.json");
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = tmp.path().join("f.json");
    let (code, _) = fuskit(&["fusion", "build", spec.to_str().unwrap(), "-o", out.to_str().unwrap()]);
    ensure(code == 0, "fusion build failed")?;
    let text = std::fs::read_to_string(&out).map_err(|e| e.to_string())?;
    let back = io::parse_system_str(&text, "f", 1000).map_err(|e| e.to_string())?;
    ensure(io::system_to_json(&back) == text, "system file does not round-trip")?;
    Ok(format!("{n} round-trips, {} report bytes identical", first.1.len()))
}

fn full() -> Check {
    let (code, out) = fuskit(&["verify", corpus().to_str().unwrap()]);
    ensure(code == 0, format!("exit {code}\n{out}"))?;
    Ok(format!("{} suites", out.lines().count()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Check); 10] = [
        ("order-16 counterexample", 5, order16),
        ("D8xC2 counterexample", 5, d8xc2),
        ("five-way normality equivalence", 120, five_way),
        ("products of strongly closed subgroups", 60, || {
            suites(&["theorem-D"]).map(|n| format!("{n} pairs"))
        }),
        ("quotient theorems", 300, || {
            suites(&["quotient-saturation", "saturated-quotient", "second-iso", "third-iso", "closure-transfer"])
                .map(|n| format!("{n} instances"))
        }),
        ("p-soluble systems are constrained", 120, theorem_e),
        ("model groups and Aut_F(O_p) criterion", 60, || {
            suites(&["theorem-F"]).map(|n| format!("{n} instances"))
        }),
        ("Alperin regeneration", 180, alperin),
        ("determinism and round-trip", 60, determinism),
        ("full verify", 600, full),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let result = match result {
            Ok(msg) if took > Duration::from_secs(limit) => Err(format!("{msg}; over time limit")),
            r => r,
        };
        let (tag, msg) = match &result {
            Ok(m) => ("PASS", m),
            Err(m) => ("FAIL", m),
        };
        failed += result.is_err() as u32;
        println!("{tag} {:>2} {name:<40} {:>7.2}s / {limit}s  {msg}", i + 1, took.as_secs_f64());
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}

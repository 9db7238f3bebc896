use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use fuskit_core::closure::{classify, o_p};
use fuskit_core::group::{prime_of, DEFAULT_ORDER_CAP};
use fuskit_core::io;
use fuskit_core::quotients::{bar_system, factor_system, generated_bar, prefusion_is_fusion};
use fuskit_core::solubility::{is_constrained, o_p_tower, thompson_factorization_holds};
use fuskit_core::verify::{run_verification, suite_ids, Options};
use fuskit_core::{FusionSystem, Group, Perm, Subgroup};

#[derive(Parser)]
#[command(name = "fuskit", version, about = "Fusion systems on finite p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Inspect permutation groups.
    Group {
        #[command(subcommand)]
        command: GroupCommand,
    },
    /// Build and check fusion systems.
    Fusion {
        #[command(subcommand)]
        command: FusionCommand,
    },
    /// Quotient a system by a strongly closed or normal subgroup.
    Quotient {
        system: PathBuf,
        /// Generators of the subgroup, as a JSON list of permutations.
        #[arg(long)]
        by: String,
        #[arg(long, value_enum, default_value_t = QuotientMode::Factor)]
        mode: QuotientMode,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the theorem suites over a corpus directory.
    Verify {
        corpus: PathBuf,
        #[arg(long)]
        theorem: Option<String>,
        #[arg(long)]
        entry: Option<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Include elapsed times (makes output run-dependent).
        #[arg(long)]
        timings: bool,
        #[arg(long)]
        sequential: bool,
        /// List the theorem ids and exit.
        #[arg(long)]
        list: bool,
    },
    /// Manage the example corpus.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
}

#[derive(Subcommand)]
enum GroupCommand {
    Info {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Subcommand)]
enum FusionCommand {
    /// Build a system from a spec and write it as a system file.
    Build {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Report properties of a system file or spec.
    Check {
        system: PathBuf,
        #[arg(long)]
        saturated: bool,
        #[arg(long)]
        closure: bool,
        /// Generators of a subgroup to test for normality in the system.
        #[arg(long)]
        normal: Option<String>,
        #[arg(long)]
        op: bool,
        #[arg(long)]
        constrained: bool,
        #[arg(long)]
        psoluble: bool,
        #[arg(long)]
        thompson: bool,
    },
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Write the built-in corpus with freshly computed expected values.
    Bootstrap { out: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuotientMode {
    Factor,
    Bar,
    GeneratedBar,
}

fn order_cap() -> Result<usize> {
    match std::env::var("FUSKIT_ORDER_CAP") {
        Ok(v) => v.trim().parse().with_context(|| format!("FUSKIT_ORDER_CAP={v} is not a number")),
        Err(_) => Ok(DEFAULT_ORDER_CAP),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

/// `Ok(false)` means the command ran but something it checked failed.
fn run(cli: Cli) -> Result<bool> {
    let cap = order_cap()?;
    match cli.command {
        Command::Group { command: GroupCommand::Info { file, format } } => group_info(&file, format, cap),
        Command::Fusion { command: FusionCommand::Build { spec, output } } => {
            let f = io::load_fusion_spec(&spec, cap)?;
            emit(output.as_deref(), &io::system_to_json(&f))?;
            Ok(true)
        }
        Command::Fusion {
            command:
                FusionCommand::Check {
                    system,
                    saturated,
                    closure,
                    normal,
                    op,
                    constrained,
                    psoluble,
                    thompson,
                },
        } => {
            let f = io::load_any_system(&system, cap)?;
            let flags = CheckFlags {
                saturated,
                closure,
                normal,
                op,
                constrained,
                psoluble,
                thompson,
            };
            fusion_check(&f, &flags)
        }
        Command::Quotient { system, by, mode, output } => quotient(&system, &by, mode, output.as_deref(), cap),
        Command::Verify {
            corpus,
            theorem,
            entry,
            format,
            timings,
            sequential,
            list,
        } => {
            if list {
                for id in suite_ids() {
                    println!("{id}");
                }
                return Ok(true);
            }
            let opts = Options {
                theorem,
                entry,
                timings,
                sequential,
                order_cap: Some(cap),
            };
            let report = run_verification(&corpus, &opts)?;
            match format {
                Format::Json => print!("{}", report.to_json()),
                Format::Text => print!("{}", report.to_text()),
            }
            Ok(report.failure_count() == 0)
        }
        Command::Corpus { command: CorpusCommand::Bootstrap { out } } => {
            for name in fuskit_core::corpus::bootstrap(&out)? {
                println!("{name}");
            }
            Ok(true)
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn factorize(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut k = 0;
        while n % d == 0 {
            n /= d;
            k += 1;
        }
        if k > 0 {
            out.push((d, k));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

fn group_info(file: &Path, format: Format, cap: usize) -> Result<bool> {
    let g = io::load_group(file, cap)?;
    let whole = g.whole();
    let factors = factorize(g.order());
    let sylows: Vec<(usize, usize)> = factors
        .iter()
        .map(|&(p, _)| (p, g.sylow(&whole, p as u32).order()))
        .collect();
    let abelian = g.is_abelian(&whole);
    let centre = g.center(&whole).order();
    let p_group = prime_of(g.order());
    match format {
        Format::Json => {
            let v = json!({
                "name": g.name(),
                "degree": g.degree(),
                "order": g.order(),
                "generators": g.generators().len(),
                "abelian": abelian,
                "centre_order": centre,
                "p_group": p_group,
                "sylow_orders": sylows.iter().map(|(p, o)| json!({"p": p, "order": o})).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&v)?);
        }
        Format::Text => {
            println!("name: {}", g.name());
            println!("degree: {}", g.degree());
            println!("order: {}", g.order());
            println!("generators: {}", g.generators().len());
            println!("abelian: {abelian}");
            println!("centre order: {centre}");
            for (p, o) in sylows {
                println!("Sylow {p}-subgroup order: {o}");
            }
        }
    }
    Ok(true)
}

fn parse_gens(g: &Group, text: &str) -> Result<Subgroup> {
    let gens: Vec<Vec<usize>> =
        serde_json::from_str(text).context("subgroup generators must be a JSON list of permutations")?;
    let perms = gens
        .into_iter()
        .map(Perm::new)
        .collect::<fuskit_core::Result<Vec<_>>>()?;
    Ok(g.generate_perms(&perms)?)
}

struct CheckFlags {
    saturated: bool,
    closure: bool,
    normal: Option<String>,
    op: bool,
    constrained: bool,
    psoluble: bool,
    thompson: bool,
}

fn fusion_check(f: &FusionSystem, flags: &CheckFlags) -> Result<bool> {
    let g = f.group();
    let mut all_ok = true;
    let (closed, witness) = prefusion_is_fusion(f.as_prefusion());
    println!("group: {} (order {}), p = {}", g.name(), g.order(), f.p());
    println!("carrier order: {}", f.carrier().order());
    println!("subgroups of carrier: {}", f.subgroups().len());
    println!("isomorphisms: {}", f.iso_count());
    println!("fusion system: {closed}");
    if let Some(w) = witness {
        println!("  gap: {}", io::prefusion_witness_json(f, &w));
        all_ok = false;
    }
    if flags.saturated {
        let s = f.is_saturated();
        println!("saturated: {s}");
        if !s {
            println!("  failure: {}", io::saturation_json(f));
        }
        all_ok &= s;
    }
    if flags.closure {
        println!("closure (index order: fully normalized, centric, radical, weakly, strongly, normal):");
        for (i, q) in f.subgroups().iter().enumerate() {
            let c = classify(f, q);
            let b = |x: bool| if x { '+' } else { '-' };
            println!(
                "  Q{i} order {:>4}  {}{}{}{}{}{}",
                q.order(),
                b(c.fully_normalized),
                b(c.centric),
                b(c.radical),
                b(c.weakly_closed),
                b(c.strongly_closed),
                b(c.normal_in_f)
            );
        }
    }
    if let Some(text) = &flags.normal {
        let q = parse_gens(g, text)?;
        if !q.is_subgroup_of(f.carrier()) {
            bail!("subgroup is not contained in the carrier");
        }
        let n = fuskit_core::closure::is_normal_subgroup(f, &q);
        println!("normal (order {}): {n}", q.order());
        all_ok &= n;
    }
    if flags.op {
        println!("O_p order: {}", o_p(f)?.order());
    }
    if flags.constrained {
        let c = is_constrained(f)?;
        println!("constrained: {c}");
        all_ok &= c;
    }
    if flags.psoluble {
        let r = o_p_tower(f)?;
        let orders: Vec<usize> = r.tower.iter().map(Subgroup::order).collect();
        println!("O_p tower orders: {orders:?}");
        println!("p-soluble: {}", r.p_soluble);
        if let Some(n) = r.p_length {
            println!("p-length: {n}");
        }
        all_ok &= r.p_soluble;
    }
    if flags.thompson {
        let t = thompson_factorization_holds(f)?;
        println!("Thompson factorization: {t}");
        all_ok &= t;
    }
    Ok(all_ok)
}

fn quotient(system: &Path, by: &str, mode: QuotientMode, output: Option<&Path>, cap: usize) -> Result<bool> {
    let f = io::load_any_system(system, cap)?;
    let q = parse_gens(f.group(), by)?;
    if !q.is_subgroup_of(f.carrier()) {
        bail!("subgroup is not contained in the carrier");
    }
    match mode {
        QuotientMode::Factor => {
            let fq = factor_system(&f, &q)?;
            emit(output, &io::system_to_json(&fq.system))?;
            Ok(true)
        }
        QuotientMode::GeneratedBar => {
            let fq = generated_bar(&f, &q)?;
            emit(output, &io::system_to_json(&fq.system))?;
            Ok(true)
        }
        QuotientMode::Bar => {
            let bar = bar_system(&f, &q)?;
            let (ok, w) = prefusion_is_fusion(&bar.system);
            emit(output, &io::prefusion_to_json(&bar.system))?;
            if let Some(w) = w {
                eprintln!("bar system is not a fusion system: {}", io::prefusion_witness_json(&bar.system, &w));
            }
            Ok(ok)
        }
    }
}

//! `thetakit`: enumeration, composition, factorization, presheaf
//! generation, and axiom verification for degree-truncated multi-Reedy
//! categories, from the simplex category through iterated theta
//! constructions.  Output is deterministic; JSON mode is schema-stable
//! for CI consumption.

mod formats;
mod sample;

use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use thetakit_core::oracle::{sections, ReedyOracle};
use thetakit_core::parse::parse_object;
use thetakit_core::presheaf::{
    check_e_prime, classify_points, ez_decompose, latching, product_presheaf, pushout_presheaf,
    relative_latching_mono, yoneda, yoneda_map, EzOutcome, Presheaf,
};
use thetakit_core::term::{MorphismTerm, MultiMorphism, ObjectTerm};
use thetakit_core::theta::{theta_tower, theta_tower_over_delta};
use thetakit_core::trunc::Truncation;
use thetakit_core::verify::{
    prism_correspondence, theta1_delta_equiv, verify_category, verify_elegance_sp, verify_ez,
    verify_f_classes, MultiReedyCheck, VerificationReport,
};

#[derive(Parser)]
#[command(
    name = "thetakit",
    version,
    about = "Degree-truncated multi-Reedy categories: enumeration, factorization, presheaves, verifiers"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Inner {
    /// Iterated theta construction on the terminal category.
    Terminal,
    /// Tower over the directly-implemented simplex category (level 1 is
    /// the simplex category itself; level 2 is theta of it).
    Delta,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct OracleArgs {
    /// Term level of the category's objects.
    #[arg(long, default_value_t = 2)]
    level: u32,
    /// Base of the tower.
    #[arg(long, value_enum, default_value_t = Inner::Terminal)]
    inner: Inner,
}

impl OracleArgs {
    fn build(&self) -> Result<Box<dyn ReedyOracle>> {
        build_oracle(self.level, self.inner)
    }
}

fn build_oracle(level: u32, inner: Inner) -> Result<Box<dyn ReedyOracle>> {
    match inner {
        Inner::Terminal => Ok(theta_tower(level)),
        Inner::Delta => theta_tower_over_delta(level)
            .map_err(|_| anyhow!("--inner delta requires --level >= 1")),
    }
}

#[derive(Args)]
struct FormatArg {
    /// Output format; THETAKIT_FORMAT sets the default.
    #[arg(long, value_enum, env = "THETAKIT_FORMAT", default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// List all objects up to a degree bound, in canonical order.
    Objects {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Enumerate the hom-set between two objects.
    Hom {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Domain object term, e.g. "[1](*)".
        #[arg(long)]
        from: String,
        /// Codomain object term.
        #[arg(long)]
        to: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compose two morphisms g . f (f is applied first).
    Compose {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Domain of f.
        #[arg(long)]
        dom: String,
        /// Codomain of f = domain of g.
        #[arg(long)]
        mid: String,
        /// Codomain of g.
        #[arg(long)]
        cod: String,
        /// Morphism JSON for g.
        #[arg(long)]
        g: String,
        /// Morphism JSON for f.
        #[arg(long)]
        f: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Factorize a multimorphism as inverse-then-direct.
    Factorize {
        #[command(flatten)]
        oracle: OracleArgs,
        /// Common domain object term.
        #[arg(long)]
        domain: String,
        /// Codomain object terms, one per component, in order.
        #[arg(long = "cod")]
        codomains: Vec<String>,
        /// Morphism JSON per component, in the same order.
        #[arg(long = "component")]
        components: Vec<String>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// List the sections of a morphism.
    Sections {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long)]
        dom: String,
        #[arg(long)]
        cod: String,
        /// Morphism JSON for the map whose sections are wanted.
        #[arg(long)]
        f: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compare theta(terminal) with the simplex oracle operation by
    /// operation up to a degree bound.
    EquivDelta {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run an axiom verifier; exit code 1 on failure.
    Verify {
        #[command(subcommand)]
        which: VerifyCommand,
    },
    /// Generate or analyze tabulated presheaves.
    Presheaf {
        #[command(subcommand)]
        which: PresheafCommand,
    },
}

#[derive(Args)]
struct VerifyCommon {
    #[command(flatten)]
    oracle: OracleArgs,
    #[arg(long, default_value_t = 4)]
    max_degree: u32,
    #[command(flatten)]
    format: FormatArg,
    /// Seeded randomized smoke run at max_degree + 2, reported alongside
    /// the exhaustive verdict; never affects the exit code.
    #[arg(long)]
    sample: Option<u64>,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Identity and associativity laws.
    Category {
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// Unique inverse/direct factorization, degree axioms, class closure.
    Multireedy {
        #[command(flatten)]
        common: VerifyCommon,
        #[arg(long, default_value_t = 2)]
        valence: u32,
        /// Worker threads for the family sweep; output is canonical
        /// regardless.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Section existence and separation (the Eilenberg-Zilber axioms).
    Ez {
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// Strong pushouts of inverse pairs, against pointwise unique
    /// decomposition.
    Sp {
        #[command(flatten)]
        common: VerifyCommon,
    },
    /// Yoneda-image characterization of the two classes.
    Fclasses {
        #[command(flatten)]
        common: VerifyCommon,
        #[arg(long, default_value_t = 2)]
        valence: u32,
    },
    /// Jointly-monic family counts against non-degenerate prism cells
    /// (simplex category only).
    Prism {
        /// Source dimension m.
        #[arg(long, default_value_t = 1)]
        source_dim: u32,
        /// Target dimensions, repeatable.
        #[arg(long = "target", required = true)]
        targets: Vec<u32>,
        #[command(flatten)]
        format: FormatArg,
    },
}

#[derive(Subcommand)]
enum PresheafCommand {
    /// Tabulate the representable presheaf of an object.
    Yoneda {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long)]
        object: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate a product of representable presheaves.
    Product {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        /// Object terms of the factors, two or more.
        #[arg(long = "objects", num_args = 2.., required = true)]
        objects: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tabulate the pushout of the Yoneda images of two maps with a
    /// common domain.
    Pushout {
        #[command(flatten)]
        oracle: OracleArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long)]
        domain: String,
        #[arg(long)]
        cod1: String,
        /// Morphism JSON for the first leg.
        #[arg(long)]
        sigma1: String,
        #[arg(long)]
        cod2: String,
        /// Morphism JSON for the second leg.
        #[arg(long)]
        sigma2: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify the points of a tabulated presheaf as degenerate or
    /// non-degenerate.
    Classify {
        /// Presheaf JSON file.
        #[arg(long)]
        file: PathBuf,
        /// Base of the tower the file was tabulated over.
        #[arg(long, value_enum, default_value_t = Inner::Terminal)]
        inner: Inner,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compute the latching object of a presheaf at one object.
    Latching {
        #[arg(long)]
        file: PathBuf,
        #[arg(long)]
        object: String,
        #[arg(long, value_enum, default_value_t = Inner::Terminal)]
        inner: Inner,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Test the relative latching map of a name-matched inclusion for
    /// injectivity; exit 1 on failure.
    Relmono {
        /// Presheaf JSON file for the source.
        #[arg(long)]
        from: PathBuf,
        /// Presheaf JSON file for the target; points are matched by name.
        #[arg(long)]
        to: PathBuf,
        /// Restrict to one object; all bounded objects when omitted.
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum, default_value_t = Inner::Terminal)]
        inner: Inner,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check unique Eilenberg-Zilber decomposition pointwise, against the
    /// bijectivity reformulation; exit 1 on violations.
    CheckE {
        #[arg(long)]
        file: PathBuf,
        /// Restrict to one object; all bounded objects when omitted.
        #[arg(long)]
        object: Option<String>,
        #[arg(long, value_enum, default_value_t = Inner::Terminal)]
        inner: Inner,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn parse_obj(text: &str, level: u32) -> Result<ObjectTerm> {
    parse_object(text, level).map_err(|e| anyhow!("cannot parse object {text:?}: {e}"))
}

fn parse_mor(json_text: &str, dom: &ObjectTerm, cod: &ObjectTerm) -> Result<MorphismTerm> {
    let value: Value =
        serde_json::from_str(json_text).with_context(|| format!("bad JSON {json_text:?}"))?;
    formats::morphism_from_json(&value, dom, cod)
}

fn emit_value(out: Option<&PathBuf>, value: &Value) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(value)?);
    match out {
        Some(path) => std::fs::write(path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(())
}

fn report_exit(report: &VerificationReport, format: Format, extra: Vec<String>) -> ExitCode {
    match format {
        Format::Text => {
            print!("{}", report.render_text());
            for line in &extra {
                println!("{line}");
            }
        }
        Format::Json => {
            let mut value = formats::report_to_json(report);
            if !extra.is_empty() {
                value["sample"] = json!(extra);
            }
            println!("{}", serde_json::to_string_pretty(&value).unwrap());
        }
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn load_presheaf(path: &PathBuf, inner: Inner) -> Result<(Box<dyn ReedyOracle>, u32, Value)> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let value: Value = serde_json::from_str(&text)
        .with_context(|| format!("{} is not valid JSON", path.display()))?;
    let (level, max_degree) = formats::presheaf_json_header(&value)?;
    let oracle = build_oracle(level, inner)?;
    Ok((oracle, max_degree, value))
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Objects {
            oracle,
            max_degree,
            format,
        } => {
            let oracle = oracle.build()?;
            let objects = oracle.enumerate_objects(max_degree);
            match format.format {
                Format::Text => {
                    for o in &objects {
                        println!("{}", o.render());
                    }
                }
                Format::Json => {
                    let list: Vec<Value> = objects
                        .iter()
                        .map(|o| json!({"term": o.render(), "degree": oracle.degree(o)}))
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "level": oracle.level(),
                            "max_degree": max_degree,
                            "objects": list,
                        }))?
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Hom {
            oracle,
            from,
            to,
            format,
        } => {
            let oracle = oracle.build()?;
            let dom = parse_obj(&from, oracle.level())?;
            let cod = parse_obj(&to, oracle.level())?;
            let hom = oracle
                .enumerate_hom(&dom, &cod)
                .map_err(|e| anyhow!("{e}"))?;
            match format.format {
                Format::Text => {
                    for f in &hom {
                        println!("{}", f.render_name());
                    }
                }
                Format::Json => {
                    let list: Vec<Value> = hom.iter().map(formats::morphism_to_json).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "dom": dom.render(),
                            "cod": cod.render(),
                            "count": hom.len(),
                            "morphisms": list,
                        }))?
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose {
            oracle,
            dom,
            mid,
            cod,
            g,
            f,
            format,
        } => {
            let oracle = oracle.build()?;
            let dom = parse_obj(&dom, oracle.level())?;
            let mid = parse_obj(&mid, oracle.level())?;
            let cod = parse_obj(&cod, oracle.level())?;
            let f = parse_mor(&f, &dom, &mid)?;
            let g = parse_mor(&g, &mid, &cod)?;
            let composite = oracle.compose(&g, &f).map_err(|e| anyhow!("{e}"))?;
            match format.format {
                Format::Text => println!("{}", composite.render_name()),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&formats::morphism_to_json(&composite))?
                ),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Factorize {
            oracle,
            domain,
            codomains,
            components,
            format,
        } => {
            let oracle = oracle.build()?;
            let dom = parse_obj(&domain, oracle.level())?;
            if codomains.len() != components.len() {
                bail!(
                    "{} codomains for {} components",
                    codomains.len(),
                    components.len()
                );
            }
            let mut parsed = Vec::with_capacity(components.len());
            for (cod_text, comp_text) in codomains.iter().zip(&components) {
                let cod = parse_obj(cod_text, oracle.level())?;
                parsed.push(parse_mor(comp_text, &dom, &cod)?);
            }
            let family = MultiMorphism::new(dom, parsed);
            let fac = oracle.factorize(&family).map_err(|e| anyhow!("{e}"))?;
            match format.format {
                Format::Text => {
                    println!("minus: {}", fac.minus_part.render_name());
                    println!("mid: {}", fac.mid.render());
                    for (i, h) in fac.plus_part.components.iter().enumerate() {
                        println!("plus[{}]: {}", i + 1, h.render_name());
                    }
                }
                Format::Json => {
                    let plus: Vec<Value> = fac
                        .plus_part
                        .components
                        .iter()
                        .map(formats::morphism_to_json)
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "minus": formats::morphism_to_json(&fac.minus_part),
                            "mid": fac.mid.render(),
                            "plus": plus,
                        }))?
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sections {
            oracle,
            dom,
            cod,
            f,
            format,
        } => {
            let oracle = oracle.build()?;
            let dom = parse_obj(&dom, oracle.level())?;
            let cod = parse_obj(&cod, oracle.level())?;
            let f = parse_mor(&f, &dom, &cod)?;
            let secs = sections(&*oracle, &f, &dom, &cod).map_err(|e| anyhow!("{e}"))?;
            match format.format {
                Format::Text => {
                    for s in &secs {
                        println!("{}", s.render_name());
                    }
                }
                Format::Json => {
                    let list: Vec<Value> = secs.iter().map(formats::morphism_to_json).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "count": secs.len(),
                            "sections": list,
                        }))?
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EquivDelta { max_degree, format } => {
            let report = theta1_delta_equiv(max_degree).map_err(|e| anyhow!("{e}"))?;
            Ok(report_exit(&report, format.format, Vec::new()))
        }
        Command::Verify { which } => run_verify(which),
        Command::Presheaf { which } => run_presheaf(which),
    }
}

fn run_verify(which: VerifyCommand) -> Result<ExitCode> {
    match which {
        VerifyCommand::Category { common } => {
            let oracle = common.oracle.build()?;
            let report =
                verify_category(&*oracle, common.max_degree).map_err(|e| anyhow!("{e}"))?;
            let extra = common
                .sample
                .map(|seed| {
                    vec![sample::smoke_category(&*oracle, common.max_degree + 2, seed).render()]
                })
                .unwrap_or_default();
            Ok(report_exit(&report, common.format.format, extra))
        }
        VerifyCommand::Multireedy {
            common,
            valence,
            jobs,
        } => {
            let oracle = common.oracle.build()?;
            let check = MultiReedyCheck::new(&*oracle, common.max_degree, valence)
                .map_err(|e| anyhow!("{e}"))?;
            let report = run_units(&check, jobs);
            let extra = common
                .sample
                .map(|seed| {
                    vec![
                        sample::smoke_multireedy(&*oracle, common.max_degree + 2, valence, seed)
                            .render(),
                    ]
                })
                .unwrap_or_default();
            Ok(report_exit(&report, common.format.format, extra))
        }
        VerifyCommand::Ez { common } => {
            let oracle = common.oracle.build()?;
            let report = verify_ez(&*oracle, common.max_degree).map_err(|e| anyhow!("{e}"))?;
            let extra = common
                .sample
                .map(|seed| vec![sample::smoke_ez(&*oracle, common.max_degree + 2, seed).render()])
                .unwrap_or_default();
            Ok(report_exit(&report, common.format.format, extra))
        }
        VerifyCommand::Sp { common } => {
            let oracle = common.oracle.build()?;
            let report =
                verify_elegance_sp(&*oracle, common.max_degree).map_err(|e| anyhow!("{e}"))?;
            let extra = common
                .sample
                .map(|_| vec!["sample: not applicable to this check".to_string()])
                .unwrap_or_default();
            Ok(report_exit(&report, common.format.format, extra))
        }
        VerifyCommand::Fclasses { common, valence } => {
            let oracle = common.oracle.build()?;
            let report = verify_f_classes(&*oracle, common.max_degree, valence)
                .map_err(|e| anyhow!("{e}"))?;
            let extra = common
                .sample
                .map(|_| vec!["sample: not applicable to this check".to_string()])
                .unwrap_or_default();
            Ok(report_exit(&report, common.format.format, extra))
        }
        VerifyCommand::Prism {
            source_dim,
            targets,
            format,
        } => {
            let report = prism_correspondence(source_dim, &targets).map_err(|e| anyhow!("{e}"))?;
            Ok(report_exit(&report, format.format, Vec::new()))
        }
    }
}

/// Evaluate the multireedy units across `jobs` workers; unit outcomes are
/// merged in unit order, so the report does not depend on the schedule.
fn run_units(check: &MultiReedyCheck<'_>, jobs: usize) -> VerificationReport {
    let units = check.unit_count();
    if jobs <= 1 || units <= 1 {
        return check.run();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<thetakit_core::verify::UnitOutcome>>> =
        Mutex::new((0..units).map(|_| None).collect());
    std::thread::scope(|scope| {
        for _ in 0..jobs.min(units) {
            scope.spawn(|| loop {
                let unit = next.fetch_add(1, Ordering::Relaxed);
                if unit >= units {
                    break;
                }
                let outcome = check.run_unit(unit);
                slots.lock().unwrap()[unit] = Some(outcome);
            });
        }
    });
    let outcomes = slots
        .into_inner()
        .unwrap()
        .into_iter()
        .map(|o| o.expect("all units evaluated"))
        .collect();
    check.finish(outcomes)
}

fn run_presheaf(which: PresheafCommand) -> Result<ExitCode> {
    match which {
        PresheafCommand::Yoneda {
            oracle,
            max_degree,
            object,
            out,
        } => {
            let oracle = oracle.build()?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let target = trunc
                .object_index(&parse_obj(&object, oracle.level())?)
                .map_err(|e| anyhow!("{e}"))?;
            let x = yoneda(&trunc, target);
            emit_value(out.as_ref(), &formats::presheaf_to_json(&trunc, &x))?;
            Ok(ExitCode::SUCCESS)
        }
        PresheafCommand::Product {
            oracle,
            max_degree,
            objects,
            out,
        } => {
            let oracle = oracle.build()?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let mut product: Option<Presheaf> = None;
            for text in &objects {
                let idx = trunc
                    .object_index(&parse_obj(text, oracle.level())?)
                    .map_err(|e| anyhow!("{e}"))?;
                let factor = yoneda(&trunc, idx);
                product = Some(match product {
                    None => factor,
                    Some(acc) => product_presheaf(&acc, &factor),
                });
            }
            let product = product.expect("clap enforces two or more factors");
            emit_value(out.as_ref(), &formats::presheaf_to_json(&trunc, &product))?;
            Ok(ExitCode::SUCCESS)
        }
        PresheafCommand::Pushout {
            oracle,
            max_degree,
            domain,
            cod1,
            sigma1,
            cod2,
            sigma2,
            out,
        } => {
            let oracle = oracle.build()?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let dom = parse_obj(&domain, oracle.level())?;
            let d1 = parse_obj(&cod1, oracle.level())?;
            let d2 = parse_obj(&cod2, oracle.level())?;
            let c = trunc.object_index(&dom).map_err(|e| anyhow!("{e}"))?;
            let i1 = trunc.object_index(&d1).map_err(|e| anyhow!("{e}"))?;
            let i2 = trunc.object_index(&d2).map_err(|e| anyhow!("{e}"))?;
            let s1 = trunc
                .hom_index(c, i1, &parse_mor(&sigma1, &dom, &d1)?)
                .map_err(|e| anyhow!("{e}"))?;
            let s2 = trunc
                .hom_index(c, i2, &parse_mor(&sigma2, &dom, &d2)?)
                .map_err(|e| anyhow!("{e}"))?;
            let fc = yoneda(&trunc, c);
            let fd1 = yoneda(&trunc, i1);
            let fd2 = yoneda(&trunc, i2);
            let m1 = yoneda_map(&trunc, c, i1, s1);
            let m2 = yoneda_map(&trunc, c, i2, s2);
            let (pushout, _, _) = pushout_presheaf(&trunc, &fc, &fd1, &fd2, &m1, &m2);
            emit_value(out.as_ref(), &formats::presheaf_to_json(&trunc, &pushout))?;
            Ok(ExitCode::SUCCESS)
        }
        PresheafCommand::Classify {
            file,
            inner,
            format,
        } => {
            let (oracle, max_degree, value) = load_presheaf(&file, inner)?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let x = formats::presheaf_from_json(&trunc, &value)?;
            let class = classify_points(&trunc, &x);
            match format.format {
                Format::Text => {
                    for c in 0..trunc.object_count() {
                        println!(
                            "{}: points={} nondegenerate={}",
                            trunc.object(c).render(),
                            x.size(c),
                            class.nd_count(c)
                        );
                    }
                }
                Format::Json => {
                    let list: Vec<Value> = (0..trunc.object_count())
                        .map(|c| {
                            let nd: Vec<&str> = (0..x.size(c) as u32)
                                .filter(|&p| class.is_nd(c, p))
                                .map(|p| x.name(c, p))
                                .collect();
                            json!({
                                "object": trunc.object(c).render(),
                                "points": x.size(c),
                                "nondegenerate": nd,
                            })
                        })
                        .collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({"stages": list}))?
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        PresheafCommand::Latching {
            file,
            object,
            inner,
            format,
        } => {
            let (oracle, max_degree, value) = load_presheaf(&file, inner)?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let x = formats::presheaf_from_json(&trunc, &value)?;
            let c = trunc
                .object_index(&parse_obj(&object, oracle.level())?)
                .map_err(|e| anyhow!("{e}"))?;
            let latch = latching(&trunc, &x, c);
            match format.format {
                Format::Text => {
                    println!(
                        "latching at {}: size={} structure_map_bijective_onto_degenerate={}",
                        trunc.object(c).render(),
                        latch.size,
                        latch.onto_degenerate_bijective
                    );
                    for (class, &p) in latch.structure_map.iter().enumerate() {
                        println!("  class {} -> {}", class, x.name(c, p));
                    }
                }
                Format::Json => {
                    let structure: Vec<&str> =
                        latch.structure_map.iter().map(|&p| x.name(c, p)).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&json!({
                            "object": trunc.object(c).render(),
                            "size": latch.size,
                            "bijective_onto_degenerate": latch.onto_degenerate_bijective,
                            "structure_map": structure,
                        }))?
                    );
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        PresheafCommand::Relmono {
            from,
            to,
            object,
            inner,
            format,
        } => {
            let (oracle, max_degree, from_value) = load_presheaf(&from, inner)?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let x = formats::presheaf_from_json(&trunc, &from_value)?;
            let to_text = std::fs::read_to_string(&to)
                .with_context(|| format!("cannot read {}", to.display()))?;
            let to_value: Value = serde_json::from_str(&to_text)?;
            let y = formats::presheaf_from_json(&trunc, &to_value)?;
            let f = formats::map_by_names(&trunc, &x, &y)?;
            let objects: Vec<usize> = match object {
                Some(text) => vec![trunc
                    .object_index(&parse_obj(&text, oracle.level())?)
                    .map_err(|e| anyhow!("{e}"))?],
                None => (0..trunc.object_count()).collect(),
            };
            let mut all_mono = true;
            let mut lines = Vec::new();
            for c in objects {
                let report =
                    relative_latching_mono(&trunc, &x, &y, &f, c).map_err(|e| anyhow!("{e}"))?;
                all_mono &= report.mono;
                lines.push(json!({
                    "object": trunc.object(c).render(),
                    "pushout_size": report.pushout_size,
                    "mono": report.mono,
                }));
            }
            match format.format {
                Format::Text => {
                    for line in &lines {
                        println!(
                            "{}: pushout_size={} mono={}",
                            line["object"].as_str().unwrap(),
                            line["pushout_size"],
                            line["mono"]
                        );
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"objects": lines, "mono": all_mono}))?
                ),
            }
            Ok(if all_mono {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
        PresheafCommand::CheckE {
            file,
            object,
            inner,
            format,
        } => {
            let (oracle, max_degree, value) = load_presheaf(&file, inner)?;
            let trunc = Truncation::build(&*oracle, max_degree).map_err(|e| anyhow!("{e}"))?;
            let x = formats::presheaf_from_json(&trunc, &value)?;
            let class = classify_points(&trunc, &x);
            let objects: Vec<usize> = match object {
                Some(text) => vec![trunc
                    .object_index(&parse_obj(&text, oracle.level())?)
                    .map_err(|e| anyhow!("{e}"))?],
                None => (0..trunc.object_count()).collect(),
            };
            let mut ok = true;
            let mut lines = Vec::new();
            for c in objects {
                let mut violations = Vec::new();
                for p in 0..x.size(c) as u32 {
                    if let EzOutcome::Violation { pairs } = ez_decompose(&trunc, &x, &class, c, p) {
                        violations.push(json!({
                            "point": x.name(c, p),
                            "decompositions": pairs.len(),
                        }));
                    }
                }
                let eprime = check_e_prime(&trunc, &x, &class, c);
                let agree = eprime.bijective == violations.is_empty();
                ok &= violations.is_empty() && eprime.bijective && agree;
                lines.push(json!({
                    "object": trunc.object(c).render(),
                    "points": x.size(c),
                    "unique_decomposition": violations.is_empty(),
                    "e_prime_bijective": eprime.bijective,
                    "agree": agree,
                    "violations": violations,
                }));
            }
            match format.format {
                Format::Text => {
                    for line in &lines {
                        println!(
                            "{}: points={} unique_decomposition={} e_prime_bijective={} agree={}",
                            line["object"].as_str().unwrap(),
                            line["points"],
                            line["unique_decomposition"],
                            line["e_prime_bijective"],
                            line["agree"]
                        );
                        for v in line["violations"].as_array().unwrap() {
                            println!(
                                "  violation: point={} decompositions={}",
                                v["point"], v["decompositions"]
                            );
                        }
                    }
                }
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&json!({"stages": lines, "passed": ok}))?
                ),
            }
            Ok(if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }
    }
}

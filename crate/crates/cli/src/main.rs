//! `orbipencil` command line.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use orbipencil::corpus::run_corpus;
use orbipencil::fpgroups::{
    abelianize, kernel_rank, reidemeister_schreier, reidemeister_schreier_raw, todd_coxeter, CyclicFreeProduct, Presentation,
    DEFAULT_COSET_CAP,
};
use orbipencil::homology::{check_numequiv, h1_from_intersections, h1_p2, h1_rational_rank, IntersectionData};
use orbipencil::inference::{audit_claim, derive, recover_generators, ClaimStatus, DeriveError, Scenario};
use orbipencil::orbifold::{OrbGroup, OrbifoldCurve};
use orbipencil::pencil::{check_okapq_generators, multiple_fiber_screen, Connectivity, FieldKind, PencilFile, ProjPoint, ScreenOutcome};
use orbipencil::polyalg::{parse_poly_in, Field, QSqrt3, Rational};

const EXIT_CONDITIONAL: u8 = 2;
const EXIT_HYPOTHESIS_FAILED: u8 = 3;

#[derive(Parser)]
#[command(name = "orbipencil", version, about = "Fundamental groups of complements of fiber-type plane curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Derive π₁ of the complement of fibers of a pencil.
    Pi1(Pi1Args),
    /// Check a claimed complement group against component degrees.
    Audit {
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u64>,
        /// Free product such as `F1*Z2*Z3`.
        #[arg(long)]
        group: String,
    },
    /// Named example cases.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
    /// Special fibers, base locus and hypothesis checks of a pencil file.
    AnalyzePencil {
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Finitely presented group tools; `-` reads the presentation from stdin.
    Group {
        #[command(subcommand)]
        action: GroupAction,
    },
    /// Orbifold data such as `S(g=0; n+1=2; m=2,3)`.
    Orbifold { text: String },
    /// First homology of a plane curve complement.
    H1 {
        #[arg(long, value_delimiter = ',', conflicts_with = "matrix")]
        degrees: Option<Vec<u64>>,
        /// Intersection matrix file: one row of integers per H₂ class.
        #[arg(long)]
        matrix: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Pi1Args {
    #[arg(long)]
    pencil: PathBuf,
    /// Number of generic fibers drawn from the seed.
    #[arg(long, default_value_t = 1)]
    generic: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// A fiber `a:b` whose typicality is asserted; repeatable.
    #[arg(long = "assert-fiber", allow_hyphen_values = true)]
    assert_fiber: Vec<String>,
    /// File with the equation of a special fiber to add.
    #[arg(long = "with-component")]
    with_component: Option<PathBuf>,
    /// Asserted complement group of the added component, e.g. `Z3`.
    #[arg(long = "assert-group", requires = "with_component")]
    assert_group: Option<String>,
    /// Assert connected generic fibers instead of testing.
    #[arg(long)]
    assert_connected: bool,
}

#[derive(Subcommand)]
enum CorpusAction {
    Run {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        filter: Option<String>,
        #[arg(long, conflicts_with = "markdown")]
        json: bool,
        #[arg(long)]
        markdown: bool,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    Abelianize {
        file: PathBuf,
    },
    /// Coset enumeration over the subgroup generated by `--subgroup` words.
    Enumerate {
        file: PathBuf,
        #[arg(long)]
        subgroup: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_COSET_CAP)]
        cap: usize,
    },
    /// Kernel of the map onto `Z_m` given by one residue per generator.
    RsKernel {
        file: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        images: Vec<i64>,
        #[arg(long)]
        modulus: u64,
        /// Skip Tietze simplification.
        #[arg(long)]
        raw: bool,
    },
    /// Rank of the free kernel of `Z_{m1} * … * Z_{ms} → Z_lcm`.
    KernelRank {
        #[arg(value_delimiter = ',', required = true)]
        multiplicities: Vec<u64>,
    },
}

fn read_text(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn emit(text: &str) {
    use std::io::Write;
    // A closed pipe (`| head`) is not an error worth reporting.
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print(v: &Value) {
    emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("json")));
}

fn group_json(g: &CyclicFreeProduct) -> Value {
    json!({ "free_rank": g.free_rank(), "torsion": g.torsion(), "text": g.to_string() })
}

/// Equation text of a component file: the non-comment lines joined.
fn component_text(path: &Path) -> Result<String> {
    let text = read_text(path)?;
    let body: Vec<&str> = text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).filter(|l| !l.is_empty()).collect();
    if body.is_empty() {
        bail!("{} holds no equation", path.display());
    }
    Ok(body.join(" "))
}

fn pi1<K: Field>(file: &PencilFile, args: &Pi1Args) -> Result<ExitCode> {
    let mut sc = Scenario::new(file.build::<K>()?);
    for t in &args.assert_fiber {
        sc = sc.with_asserted(t.parse::<ProjPoint>().with_context(|| format!("bad fiber point `{t}`"))?);
    }
    sc = sc.with_sampled(args.generic);
    if let Some(path) = &args.with_component {
        let eq = parse_poly_in::<K>(&component_text(path)?)?;
        let g = args.assert_group.as_deref().map(str::parse::<CyclicFreeProduct>).transpose()?;
        sc = sc.with_component(eq, g);
    }
    if args.assert_connected {
        sc.connectivity = Connectivity::Assert;
    }
    match derive(&sc, args.seed) {
        Ok((claim, trace)) => {
            print(&json!({
                "group": group_json(&claim.group),
                "status": claim.status,
                "space": claim.space,
                "component_degrees": claim.component_degrees,
                "trace": trace.steps,
                "trace_digest": trace.digest(),
            }));
            Ok(match claim.status {
                ClaimStatus::Conditional => ExitCode::from(EXIT_CONDITIONAL),
                _ => ExitCode::SUCCESS,
            })
        }
        Err(DeriveError::HypothesisFailed { rule, hypothesis, evidence, trace }) => {
            print(&json!({
                "group": Value::Null,
                "status": "HypothesisFailed",
                "failure": { "rule": rule, "hypothesis": hypothesis, "evidence": evidence },
                "trace": trace.steps,
            }));
            Ok(ExitCode::from(EXIT_HYPOTHESIS_FAILED))
        }
        Err(e) => Err(e.into()),
    }
}

fn analyze<K: Field>(file: &PencilFile, seed: u64) -> Result<Value> {
    let pencil = file.build::<K>()?;
    let special: Vec<Value> = [ProjPoint::zero(), ProjPoint::infinity()]
        .iter()
        .map(|t| -> Result<Value> {
            let f = pencil.fiber(t)?;
            Ok(json!({
                "point": t,
                "multiplicity": f.multiplicity,
                "reduced": f.reduced,
                "components": f.decomposition.factors.iter().map(|(g, e)| json!({"factor": g.to_string(), "exponent": e})).collect::<Vec<_>>(),
            }))
        })
        .collect::<Result<_>>()?;
    let multiple: Vec<Value> =
        pencil.detect_multiple_fibers(seed, 8)?.iter().map(|f| json!({"point": f.point, "multiplicity": f.multiplicity})).collect();
    let screen = match multiple_fiber_screen(&pencil, seed, 3) {
        ScreenOutcome::Clear { lines } => json!({"clear": true, "lines": lines}),
        ScreenOutcome::Unresolved { residual } => json!({"clear": false, "residual": residual}),
    };
    let okapq = match recover_generators(&pencil)? {
        Some(g) => serde_json::to_value(check_okapq_generators(&g, seed, Connectivity::Test)?)?,
        None => Value::Null,
    };
    Ok(json!({
        "degree": pencil.degree(),
        "A": pencil.a().to_string(),
        "B": pencil.b().to_string(),
        "base_locus": pencil.base_locus_report(),
        "special_fibers": special,
        "multiple_fibers": multiple,
        "multiple_fiber_screen": screen,
        "generic_sample": pencil.sample_generic_points(3, seed)?,
        "okapq": okapq,
    }))
}

fn group(action: GroupAction) -> Result<ExitCode> {
    match action {
        GroupAction::Abelianize { file } => {
            let p = Presentation::parse(&read_text(&file)?)?;
            let a = abelianize(&p);
            print(&json!({"free_rank": a.free_rank, "torsion": a.torsion, "text": a.to_string()}));
        }
        GroupAction::Enumerate { file, subgroup, cap } => {
            let p = Presentation::parse(&read_text(&file)?)?;
            let words = subgroup
                .iter()
                .map(|w| {
                    let text = format!("gens: {}\n{w}", p.generator_names().join(" "));
                    Presentation::parse(&text).map(|q| q.relators.into_iter().next().unwrap_or_default())
                })
                .collect::<Result<Vec<_>, _>>()?;
            let t = todd_coxeter(&p, &words, cap);
            print(&json!({"status": t.status, "cosets": t.coset_count}));
        }
        GroupAction::RsKernel { file, images, modulus, raw } => {
            let p = Presentation::parse(&read_text(&file)?)?;
            let k = if raw { reidemeister_schreier_raw(&p, &images, modulus)? } else { reidemeister_schreier(&p, &images, modulus)? };
            let a = abelianize(&k);
            print(&json!({
                "generators": k.generator_count(),
                "relators": k.relators.len(),
                "abelianization": a.to_string(),
                "free_rank": a.free_rank,
                "presentation": k.to_string(),
            }));
        }
        GroupAction::KernelRank { multiplicities } => {
            let k = kernel_rank(&multiplicities)?;
            print(&json!({
                "rank": k.rho,
                "lcm": k.m,
                "orbifold_euler": k.orbifold_euler.to_string(),
                "euler_identity_holds": k.euler_identity_holds,
            }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Pi1(args) => {
            let file = PencilFile::parse(&read_text(&args.pencil)?)?;
            match file.field() {
                FieldKind::Rational => pi1::<Rational>(&file, &args),
                FieldKind::Sqrt3 => pi1::<QSqrt3>(&file, &args),
            }
        }
        Command::Audit { degrees, group } => {
            let claimed: CyclicFreeProduct = group.parse()?;
            let report = audit_claim(&degrees, &claimed);
            print(&serde_json::to_value(&report)?);
            Ok(if report.passed { ExitCode::SUCCESS } else { ExitCode::from(EXIT_HYPOTHESIS_FAILED) })
        }
        Command::Corpus { action: CorpusAction::Run { seed, filter, json: _, markdown } } => {
            let report = run_corpus(seed, filter.as_deref())?;
            if markdown {
                emit(&report.to_markdown());
            } else {
                emit(&format!("{}\n", report.to_json()));
            }
            Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::AnalyzePencil { file, seed } => {
            let f = PencilFile::parse(&read_text(&file)?)?;
            let v = match f.field() {
                FieldKind::Rational => analyze::<Rational>(&f, seed)?,
                FieldKind::Sqrt3 => analyze::<QSqrt3>(&f, seed)?,
            };
            print(&v);
            Ok(ExitCode::SUCCESS)
        }
        Command::Group { action } => group(action),
        Command::Orbifold { text } => {
            let o: OrbifoldCurve = text.parse()?;
            let g = match o.orb_group() {
                OrbGroup::Open(g) => group_json(&g),
                OrbGroup::Closed(p) => json!({"presentation": p.to_string(), "abelianization": abelianize(&p).to_string()}),
            };
            print(&json!({
                "orbifold": o.to_string(),
                "euler_char": o.euler_char().to_string(),
                "general_type": o.is_general_type(),
                "group": g,
            }));
            Ok(ExitCode::SUCCESS)
        }
        Command::H1 { degrees, matrix } => {
            let v = match (degrees, matrix) {
                (Some(d), _) => {
                    let h = h1_p2(&d)?;
                    json!({"h1": h.to_string(), "free_rank": h.free_rank, "torsion": h.torsion})
                }
                (None, Some(path)) => {
                    let data = IntersectionData::parse(&read_text(&path)?)?;
                    let numequiv = check_numequiv(&data);
                    match h1_from_intersections(&data) {
                        Ok(h) => json!({"h1": h.to_string(), "free_rank": h.free_rank, "torsion": h.torsion, "numerically_equivalent": numequiv}),
                        Err(_) => json!({"h1": Value::Null, "rational_rank": h1_rational_rank(&data), "numerically_equivalent": numequiv}),
                    }
                }
                (None, None) => bail!("give --degrees or --matrix"),
            };
            print(&v);
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

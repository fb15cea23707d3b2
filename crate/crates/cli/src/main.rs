//! `mfkit`: construct and verify exact matrix factorizations of surface
//! singularities from the command line.
//!
//! Exit codes: 0 verified/success, 1 verification failure, 2 invalid
//! input, 3 ideal membership undecided.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use mfkit_core::catalog::{
    effective_relations, make_surface, Exponents, Family, SurfacePoint, SurfaceSpec,
};
use mfkit_core::curves::cstar_ideal;
use mfkit_core::document::{FactorizationDoc, PointDoc, SurfaceDoc, FORMAT};
use mfkit_core::factory::{
    construct_cusp, construct_nonisolated, construct_point_module, construct_quasi,
    find_cofactors, koszul_factorization, MatFac,
};
use mfkit_core::grid::{run_all, run_criterion};
use mfkit_core::parse::parse_rat;
use mfkit_core::verify::{verify_with_options, ParamSampler, VerifyOptions};
use mfkit_core::{Error, QPoly, Var};

#[derive(Parser)]
#[command(name = "mfkit", version, about = "Exact matrix factorizations of surface singularities")]
struct Cli {
    /// Human-readable output instead of JSON
    #[arg(long, global = true)]
    pretty: bool,

    /// JSON output (the default; kept as an explicit switch)
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct SurfaceArgs {
    /// Family: I..VII, cusp, nonisolated
    #[arg(long)]
    family: String,
    #[arg(long, default_value_t = 0)]
    p: u32,
    #[arg(long, default_value_t = 0)]
    q: u32,
    #[arg(long, default_value_t = 0)]
    r: u32,
    #[arg(long)]
    b2: Option<u32>,
    #[arg(long)]
    b3: Option<u32>,
    /// Cusp deformation parameter (rational, nonzero)
    #[arg(long, allow_hyphen_values = true)]
    tau: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Print a catalog surface: defining polynomial, weights, relations
    Surface(SurfaceArgs),
    /// Print the orbit-curve ideal generators through a point
    Curve {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Point: `a,b,c` with rational or symbolic coordinates, or `symbolic`
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Construct and verify a matrix factorization
    Factorize {
        #[command(flatten)]
        surface: SurfaceArgs,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        /// Repeat the point this many times in a block sum
        #[arg(long, default_value_t = 1)]
        multiplicity: u32,
        /// For the non-isolated surface: emit the 2x2 pair or the
        /// reconstructed 3x3 pair
        #[arg(long, default_value_t = 2)]
        size: u32,
    },
    /// Re-verify a factorization document (file path or `-` for stdin)
    Verify {
        /// Input file; `-` reads standard input
        file: String,
    },
    /// Find cofactors h1, h2 with F = h1*g + h2*f
    Cofactors {
        #[command(flatten)]
        surface: SurfaceArgs,
        /// Point on the surface (family mode)
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// Raw mode: defining polynomial F
        #[arg(long = "surface-poly", short = 'F')]
        f_poly: Option<String>,
        /// Raw mode: first generator
        #[arg(long)]
        f: Option<String>,
        /// Raw mode: second generator
        #[arg(long)]
        g: Option<String>,
        /// Raw mode: comma-free relation list (repeatable)
        #[arg(long)]
        relation: Vec<String>,
        /// Also emit the completed Koszul lift as a factorization document
        #[arg(long)]
        lift: bool,
    },
    /// Run the acceptance sweep and print one line per criterion
    Grid {
        /// Run a single criterion instead of all of them
        #[arg(long)]
        criterion: Option<u32>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Failure {
        Failure {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let code = match e {
            Error::MembershipUndecided => 3,
            Error::VerificationFailed(_) | Error::ReconstructionFailed => 1,
            _ => 2,
        };
        Failure::new(code, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pretty = cli.pretty;
    match dispatch(cli.command, pretty) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("mfkit: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn build_surface(args: &SurfaceArgs) -> Result<SurfaceSpec, Failure> {
    let family = Family::parse(&args.family)
        .ok_or_else(|| Failure::new(2, format!("unknown family {:?}", args.family)))?;
    let exps = Exponents {
        p: args.p,
        q: args.q,
        r: args.r,
        b2: args.b2,
        b3: args.b3,
    };
    let tau = match &args.tau {
        Some(s) => Some(parse_rat(s).map_err(Failure::from)?),
        None => None,
    };
    make_surface(family, exps, tau).map_err(Failure::from)
}

/// Point syntax: `symbolic`, or comma-separated coordinates where each is
/// a rational or a variable name (free coordinate). Two coordinates mean
/// (a, b) on the non-isolated parameter curve.
fn parse_point(s: &str, family: Family) -> Result<SurfacePoint, Failure> {
    let trimmed = s.trim();
    if trimmed.eq_ignore_ascii_case("symbolic") {
        return Ok(if family == Family::NonIsolated {
            SurfacePoint::mixed(&[], Var::C)
        } else {
            SurfacePoint::symbolic()
        });
    }
    let slots = [Var::A, Var::B, Var::C];
    let parts: Vec<&str> = trimmed.split(',').map(str::trim).collect();
    if parts.len() > 3 || parts.is_empty() {
        return Err(Failure::new(2, format!("bad point {s:?}")));
    }
    let mut pins = Vec::new();
    for (i, part) in parts.iter().enumerate() {
        if part.eq_ignore_ascii_case(slots[i].name()) || *part == "sym" || *part == "*" {
            continue; // free coordinate
        }
        let value = parse_rat(part).map_err(Failure::from)?;
        pins.push((slots[i], value));
    }
    if family == Family::NonIsolated && !pins.iter().any(|(v, _)| *v == Var::C) {
        // the third coordinate of this surface's points is normalized
        pins.push((Var::C, parse_rat("1").unwrap()));
    }
    let nonzero = if family == Family::NonIsolated {
        Var::C
    } else {
        match pins.iter().find(|(v, _)| *v == Var::A) {
            Some((_, value)) if value == &parse_rat("0").unwrap() => Var::B,
            _ => Var::A,
        }
    };
    Ok(SurfacePoint::mixed(&pins, nonzero))
}

fn describe_exponents(spec: &SurfaceSpec) -> String {
    let e = spec.exponents;
    match spec.family {
        Family::Cusp => format!(
            "(q = {}, r = {}, tau = {})",
            e.q,
            e.r,
            spec.tau.as_ref().map(|t| t.to_string()).unwrap_or_default()
        ),
        Family::NonIsolated => String::new(),
        Family::VI | Family::VII => format!(
            "(p = {}, q = {}, r = {}, b2 = {}, b3 = {})",
            e.p,
            e.q,
            e.r,
            e.b2.unwrap_or(0),
            e.b3.unwrap_or(0)
        ),
        _ => format!("(p = {}, q = {}, r = {})", e.p, e.q, e.r),
    }
}

fn print_json<T: serde::Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn print_matrix(label: &str, m: &mfkit_core::QMatrix) {
    println!("{label} =");
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        println!("  [{}]", row.join(", "));
    }
}

fn emit_factorization(
    mf: &MatFac,
    spec: Option<&SurfaceSpec>,
    point: Option<&SurfacePoint>,
    pretty: bool,
) {
    if pretty {
        if let Some(s) = spec {
            let exps = describe_exponents(s);
            println!("surface: family {} {}", s.family, exps.trim());
            println!("F = {}", s.f);
            println!("weights: {}", s.weights);
        }
        if let Some(p) = point {
            println!("point: {}", p.describe());
        }
        if !mf.relations.is_empty() {
            let rels: Vec<String> = mf.relations.iter().map(|r| r.to_string()).collect();
            println!("relations: [{}]", rels.join(", "));
        }
        print_matrix("phi", &mf.phi);
        print_matrix("psi", &mf.psi);
        println!(
            "size: {}  sign: {}  reduced: {}  verified: {}",
            mf.size, mf.sign, mf.reduced, mf.verified
        );
    } else {
        print_json(&FactorizationDoc::from_matfac(mf, spec, point));
    }
}

fn dispatch(cmd: Command, pretty: bool) -> Result<u8, Failure> {
    match cmd {
        Command::Surface(args) => {
            let spec = build_surface(&args)?;
            if pretty {
                let exps = describe_exponents(&spec);
                println!("family {} {}", spec.family, exps.trim());
                println!("F = {}", spec.f);
                println!("weights: {}", spec.weights);
                for r in &spec.relations {
                    println!("relation: {r} = 0");
                }
            } else {
                print_json(&SurfaceDoc::from(&spec));
            }
            Ok(0)
        }
        Command::Curve { surface, point } => {
            let spec = build_surface(&surface)?;
            let pt = parse_point(&point, spec.family)?;
            let ideal = cstar_ideal(&spec, &pt).map_err(Failure::from)?;
            if pretty {
                println!("f = {}", ideal.f);
                println!("g = {}", ideal.g);
            } else {
                print_json(&serde_json::json!({
                    "format": FORMAT,
                    "f": ideal.f.to_string(),
                    "g": ideal.g.to_string(),
                    "point": PointDoc::from(&pt),
                }));
            }
            Ok(0)
        }
        Command::Factorize {
            surface,
            point,
            multiplicity,
            size,
        } => {
            let spec = build_surface(&surface)?;
            let pt = parse_point(&point, spec.family)?;
            if multiplicity == 0 {
                return Err(Failure::new(2, "multiplicity must be positive"));
            }
            if multiplicity > 1 && !spec.family.is_quasi() {
                return Err(Failure::new(
                    2,
                    "point modules (multiplicity > 1) only apply to families I..VII",
                ));
            }
            if size != 2 && spec.family != Family::NonIsolated {
                return Err(Failure::new(2, "--size only applies to the non-isolated surface"));
            }
            let mf = match spec.family {
                Family::Cusp => construct_cusp(&spec, &pt).map_err(Failure::from)?,
                Family::NonIsolated => {
                    let (m2, m3) = construct_nonisolated(&pt).map_err(Failure::from)?;
                    match size {
                        2 => m2,
                        3 => m3,
                        other => {
                            return Err(Failure::new(
                                2,
                                format!("no {other}x{other} pair for this surface"),
                            ))
                        }
                    }
                }
                _ => {
                    if multiplicity > 1 {
                        construct_point_module(&spec, &[(pt.clone(), multiplicity)])
                            .map_err(Failure::from)?
                    } else {
                        construct_quasi(&spec, &pt).map_err(Failure::from)?
                    }
                }
            };
            emit_factorization(&mf, Some(&spec), Some(&pt), pretty);
            Ok(0)
        }
        Command::Verify { file } => {
            let raw = if file == "-" {
                let mut buf = String::new();
                std::io::stdin()
                    .read_to_string(&mut buf)
                    .map_err(|e| Failure::new(2, e.to_string()))?;
                buf
            } else {
                std::fs::read_to_string(&file).map_err(|e| Failure::new(2, e.to_string()))?
            };
            let doc: FactorizationDoc =
                serde_json::from_str(&raw).map_err(|e| Failure::new(2, e.to_string()))?;
            doc.check_format().map_err(Failure::from)?;

            // rebuild the sampler when the document names a cusp surface
            let spec = doc
                .surface
                .as_ref()
                .and_then(|s| {
                    let tau = s.tau.as_ref().and_then(|t| parse_rat(t).ok());
                    make_surface(s.family, s.exponents, tau).ok()
                });
            let sampler = spec.as_ref().and_then(|s| s.sampler());
            let opts = VerifyOptions {
                sampler: sampler.as_ref().map(|s| s as &dyn ParamSampler),
                ..VerifyOptions::default()
            };
            let report = verify_with_options(&doc.phi, &doc.psi, &doc.f, &doc.relations, &opts)
                .map_err(Failure::from)?;
            if pretty {
                println!(
                    "valid: {}  sign: {:?}  reduced: {}  method: {}",
                    report.valid, report.sign, report.reduced, report.method
                );
            } else {
                print_json(&report);
            }
            if !report.valid {
                eprintln!("mfkit: verification failed; residue included in the report");
                return Ok(1);
            }
            if report.sign != Some(doc.sign) {
                eprintln!(
                    "mfkit: document claims sign {} but verification found {:?}",
                    doc.sign, report.sign
                );
                return Ok(1);
            }
            Ok(0)
        }
        Command::Cofactors {
            surface,
            point,
            f_poly,
            f,
            g,
            relation,
            lift,
        } => {
            let (f_poly, fgen, ggen, relations, spec, pt) = match (&f_poly, &f, &g) {
                (Some(fp), Some(f), Some(g)) => {
                    let mut rels = Vec::new();
                    for r in &relation {
                        rels.push(r.parse::<QPoly>().map_err(Failure::from)?);
                    }
                    (
                        fp.parse::<QPoly>().map_err(Failure::from)?,
                        f.parse::<QPoly>().map_err(Failure::from)?,
                        g.parse::<QPoly>().map_err(Failure::from)?,
                        rels,
                        None,
                        None,
                    )
                }
                (None, None, None) => {
                    let spec = build_surface(&surface)?;
                    let point = point.as_deref().unwrap_or("symbolic");
                    let pt = parse_point(point, spec.family)?;
                    let ideal = cstar_ideal(&spec, &pt).map_err(Failure::from)?;
                    let rels = effective_relations(&spec, &pt);
                    (spec.f.clone(), ideal.f, ideal.g, rels, Some(spec), Some(pt))
                }
                _ => {
                    return Err(Failure::new(
                        2,
                        "raw mode needs all of --surface-poly, --f and --g",
                    ))
                }
            };
            let cof = find_cofactors(&f_poly, &fgen, &ggen, &relations).map_err(Failure::from)?;
            if lift {
                let mf = koszul_factorization(&fgen, &ggen, &cof, &f_poly, &relations)
                    .map_err(Failure::from)?;
                emit_factorization(&mf, spec.as_ref(), pt.as_ref(), pretty);
            } else if pretty {
                println!("h1 = {}", cof.h1);
                println!("h2 = {}", cof.h2);
            } else {
                print_json(&serde_json::json!({
                    "format": FORMAT,
                    "f": fgen.to_string(),
                    "g": ggen.to_string(),
                    "h1": cof.h1.to_string(),
                    "h2": cof.h2.to_string(),
                }));
            }
            Ok(0)
        }
        Command::Grid { criterion } => {
            let reports = match criterion {
                Some(id) => vec![run_criterion(id)],
                None => run_all(),
            };
            let all_pass = reports.iter().all(|r| r.passed());
            if pretty {
                for r in &reports {
                    println!("{}", r.summary_line());
                    for f in &r.failures {
                        println!("    {f}");
                    }
                }
            } else {
                let rows: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "criterion": r.id,
                            "label": r.label,
                            "pass": r.passed(),
                            "cases": r.cases,
                            "elapsed_ms": r.elapsed_ms,
                            "failures": r.failures,
                        })
                    })
                    .collect();
                print_json(&rows);
            }
            Ok(if all_pass { 0 } else { 1 })
        }
    }
}

//! Command-line front end used by the `opeq` binary.
//!
//! Exit codes: 0 when the command solved or the claim holds, 2 when the input
//! was diagnosed unsolvable (the report still carries the evidence), 1 on any
//! error, including a solution that fails its own certificate.

pub mod demo;
pub mod matrix_file;
mod report;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

pub use demo::{truncated_shift, truncated_shift_demo, TruncatedShiftReport};
pub use matrix_file::{load_matrix, parse_matrix, render_matrix, save_matrix, save_matrix_with_block, MatrixFile};

use crate::congruence::{diagnose_congruence, range_intersection, solve_congruence, solve_congruence_cz};
use crate::douglas::{douglas_factor, reduced_solution};
use crate::error::{Error, Result};
use crate::harness::generate::{generate, Family, InstanceSpec, RankTargets, Shape};
use crate::harness::verify::{verify, Certificate, Operators};
use crate::matrix::ComplexMatrix;
use crate::projections::range_inclusion;
use crate::sylvester::{completeness_witness, diagnose_ax_yb, solve_ax_by_orthogonal, solve_ax_yb, SylvesterParams};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Parser)]
#[command(name = "opeq", version, about = "Solve and diagnose operator equations on finite Hilbert C*-modules")]
struct Cli {
    /// Relative singular-value cutoff for numerical rank.
    #[arg(long, global = true, default_value_t = ToleranceConfig::DEFAULT_RANK_REL)]
    tol_rank: f64,
    /// Relative residual accepted for range inclusions and solutions.
    #[arg(long, global = true, default_value_t = ToleranceConfig::DEFAULT_RESIDUAL_REL)]
    tol_residual: f64,
    /// Seed for generated instances and random homogeneous parameters.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Directory that receives output matrices.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Print the report as JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Operands {
    /// Matrix file for A
    #[arg(long = "A", value_name = "FILE")]
    a: PathBuf,
    /// Matrix file for B (all equations except douglas)
    #[arg(long = "B", value_name = "FILE")]
    b: Option<PathBuf>,
    /// Matrix file for C
    #[arg(long = "C", value_name = "FILE")]
    c: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum DiagnoseEquation {
    Sylvester,
    Congruence,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SolveEquation {
    Douglas,
    Sylvester,
    Congruence,
    CongruenceCz,
    Orthogonal,
}

#[derive(Debug, Subcommand)]
enum DemoKind {
    /// Truncations of the weighted shift with non-closed range.
    TruncatedShift {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check solvability conditions without solving.
    Diagnose {
        equation: DiagnoseEquation,
        #[command(flatten)]
        operands: Operands,
    },
    /// Solve an equation and certify the result.
    Solve {
        equation: SolveEquation,
        #[command(flatten)]
        operands: Operands,
    },
    /// Compute R(A) ∩ R(B) from the kernel projection of [A −B].
    Intersect {
        #[arg(long = "A", value_name = "FILE")]
        a: PathBuf,
        #[arg(long = "B", value_name = "FILE")]
        b: PathBuf,
    },
    /// Generate a seeded instance.
    Gen {
        #[arg(long)]
        family: String,
        /// `m,n,p,q` or `m,n,p,q,k`.
        #[arg(long, default_value = "6,5,4,4")]
        shape: String,
        #[arg(long)]
        rank_a: Option<usize>,
        #[arg(long)]
        rank_b: Option<usize>,
        #[arg(long)]
        rank_hidden: Option<usize>,
        /// Scale for scaled-equality-pair.
        #[arg(long)]
        lambda: Option<f64>,
    },
    /// Built-in demonstrations.
    Demo {
        #[command(subcommand)]
        kind: DemoKind,
    },
}

enum Outcome {
    Holds(Value),
    Unsolvable(Value),
    Failed(Value),
}

struct Context {
    tol: ToleranceConfig,
    seed: Option<u64>,
    out: Option<PathBuf>,
}

/// Runs the CLI on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

/// [`run`] with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let json = cli.json;
    let outcome = ToleranceConfig::new(cli.tol_rank, cli.tol_residual).and_then(|tol| {
        let ctx = Context { tol, seed: cli.seed, out: cli.out };
        dispatch(cli.command, &ctx)
    });
    let (code, value) = match outcome {
        Ok(Outcome::Holds(v)) => (0, v),
        Ok(Outcome::Unsolvable(v)) => (2, v),
        Ok(Outcome::Failed(v)) => {
            let _ = writeln!(err, "error: certificate failed");
            (1, v)
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return 1;
        }
    };
    let text = if json { report::to_json(&value) } else { report::to_table(&value) };
    if out.write_all(text.as_bytes()).is_err() {
        return 1;
    }
    code
}

fn dispatch(command: Command, ctx: &Context) -> Result<Outcome> {
    match command {
        Command::Diagnose { equation, operands } => diagnose(equation, &operands, ctx),
        Command::Solve { equation, operands } => solve(equation, &operands, ctx),
        Command::Intersect { a, b } => intersect(&load_matrix(a)?, &load_matrix(b)?, ctx),
        Command::Gen { family, shape, rank_a, rank_b, rank_hidden, lambda } => {
            let spec = InstanceSpec {
                seed: ctx.seed.unwrap_or(0),
                shape: shape.parse::<Shape>()?,
                ranks: RankTargets { a: rank_a, b: rank_b, hidden: rank_hidden },
                family: family.parse::<Family>()?,
                lambda,
            };
            gen(&spec, ctx)
        }
        Command::Demo { kind: DemoKind::TruncatedShift { n } } => {
            let r = truncated_shift_demo(n as usize, &ctx.tol);
            Ok(Outcome::Holds(json!({ "command": "demo", "demo": "truncated-shift", "report": r })))
        }
    }
}

fn require<'a>(path: &'a Option<PathBuf>, flag: &str) -> Result<&'a PathBuf> {
    path.as_ref().ok_or_else(|| Error::Shape(format!("--{flag} is required for this equation")))
}

fn load_abc(o: &Operands, need_b: bool) -> Result<(ComplexMatrix, Option<ComplexMatrix>, ComplexMatrix)> {
    let a = load_matrix(&o.a)?;
    let b = if need_b { Some(load_matrix(require(&o.b, "B")?)?) } else { None };
    let c = load_matrix(require(&o.c, "C")?)?;
    Ok((a, b, c))
}

fn operators(a: &ComplexMatrix, b: Option<&ComplexMatrix>, c: &ComplexMatrix) -> Operators {
    let mut ops = Operators::new();
    ops.insert("A".into(), a.clone());
    if let Some(b) = b {
        ops.insert("B".into(), b.clone());
    }
    ops.insert("C".into(), c.clone());
    ops
}

/// Writes `<name>.json` files into `--out`; returns the file names.
fn write_outputs(ctx: &Context, mats: &[(&str, &ComplexMatrix)]) -> Result<Vec<String>> {
    let Some(dir) = &ctx.out else { return Ok(Vec::new()) };
    create_dir(dir)?;
    let mut files = Vec::new();
    for (name, m) in mats {
        let file = format!("{name}.json");
        save_matrix(dir.join(&file), m)?;
        files.push(file);
    }
    Ok(files)
}

fn create_dir(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|e| Error::Io { path: dir.display().to_string(), message: e.to_string() })
}

fn certified(mut report: Value, cert: Certificate) -> Outcome {
    let pass = cert.pass;
    report["certificate"] = json!(cert);
    if pass {
        Outcome::Holds(report)
    } else {
        Outcome::Failed(report)
    }
}

/// Errors that mean "the theory says no" rather than "the input is broken".
fn is_diagnosis(e: &Error) -> bool {
    matches!(
        e,
        Error::RangeNotContained { .. }
            | Error::NotSolvable { .. }
            | Error::HypothesisViolated { .. }
            | Error::EmptyIntersection
            | Error::IntersectionNotInRangeC { .. }
    )
}

fn unsolvable(equation: &str, e: &Error, evidence: Value) -> Outcome {
    Outcome::Unsolvable(json!({
        "command": "solve",
        "equation": equation,
        "status": "unsolvable",
        "reason": e.to_string(),
        "evidence": evidence,
    }))
}

fn diagnose(equation: DiagnoseEquation, o: &Operands, ctx: &Context) -> Result<Outcome> {
    let (a, b, c) = load_abc(o, true)?;
    let b = b.expect("loaded");
    match equation {
        DiagnoseEquation::Sylvester => {
            let d = diagnose_ax_yb(&a, &b, &c, &ctx.tol)?;
            let v = json!({ "command": "diagnose", "equation": "sylvester", "diagnosis": d });
            Ok(if d.solvable { Outcome::Holds(v) } else { Outcome::Unsolvable(v) })
        }
        DiagnoseEquation::Congruence => {
            let d = diagnose_congruence(&a, &b, &c, &ctx.tol)?;
            let v = json!({ "command": "diagnose", "equation": "congruence", "diagnosis": d });
            Ok(if d.hypotheses_hold && d.solvable { Outcome::Holds(v) } else { Outcome::Unsolvable(v) })
        }
    }
}

fn solve(equation: SolveEquation, o: &Operands, ctx: &Context) -> Result<Outcome> {
    let tol = &ctx.tol;
    match equation {
        SolveEquation::Douglas => {
            let (a, _, c) = load_abc(o, false)?;
            let r = match reduced_solution(&a, &c, tol) {
                Ok(r) => r,
                Err(e) if is_diagnosis(&e) => {
                    return Ok(unsolvable("douglas", &e, json!({ "R(C) ⊆ R(A)": range_inclusion(&c, &a, tol)? })));
                }
                Err(e) => return Err(e),
            };
            let lambda_verified = douglas_factor(&a, &c, tol)?.is_some();
            let files = write_outputs(ctx, &[("X", &r.d)])?;
            let sol: Operators = [("X".to_string(), r.d.clone())].into();
            let cert = verify("douglas", &operators(&a, None, &c), &sol, tol)?;
            let v = json!({
                "command": "solve",
                "equation": "douglas",
                "status": "solved",
                "residual": r.residual,
                "reduced_certificate": r.reduced_certificate,
                "lambda": r.lambda_factor,
                "lambda_verified": lambda_verified,
                "files": files,
            });
            Ok(certified(v, cert))
        }
        SolveEquation::Sylvester => {
            let (a, b, c) = load_abc(o, true)?;
            let b = b.expect("loaded");
            let params = ctx.seed.map(|s| SylvesterParams::seeded(&a, &b, s));
            let s = match solve_ax_yb(&a, &b, &c, params.as_ref(), tol) {
                Ok(s) => s,
                Err(e) if is_diagnosis(&e) => return Ok(unsolvable("sylvester", &e, json!(diagnose_ax_yb(&a, &b, &c, tol)?))),
                Err(e) => return Err(e),
            };
            let witness = completeness_witness(&a, &b, &c, &s.x, &s.y, tol)?;
            let files = write_outputs(ctx, &[("X", &s.x), ("Y", &s.y)])?;
            let sol: Operators = [("X".to_string(), s.x.clone()), ("Y".to_string(), s.y.clone())].into();
            let cert = verify("sylvester", &operators(&a, Some(&b), &c), &sol, tol)?;
            let params = match ctx.seed {
                Some(seed) => json!({ "seeded": seed }),
                None => json!("zero"),
            };
            let v = json!({
                "command": "solve",
                "equation": "sylvester",
                "status": "solved",
                "residual": s.residual,
                "params": params,
                "diagnosis": s.diagnosis,
                "completeness": witness,
                "files": files,
            });
            Ok(certified(v, cert))
        }
        SolveEquation::Orthogonal => {
            let (a, b, c) = load_abc(o, true)?;
            let b = b.expect("loaded");
            let s = match solve_ax_by_orthogonal(&a, &b, &c, tol) {
                Ok(s) => s,
                Err(e) if is_diagnosis(&e) => return Ok(unsolvable("orthogonal", &e, Value::Null)),
                Err(e) => return Err(e),
            };
            let files = write_outputs(ctx, &[("X", &s.x), ("Y", &s.y)])?;
            let sol: Operators = [("X".to_string(), s.x.clone()), ("Y".to_string(), s.y.clone())].into();
            let cert = verify("orthogonal", &operators(&a, Some(&b), &c), &sol, tol)?;
            let v = json!({
                "command": "solve",
                "equation": "orthogonal",
                "status": "solved",
                "residual": s.residual,
                "lambda": s.lambda,
                "orthogonality": s.orthogonality,
                "majorization": s.majorization,
                "off_block": s.off_block,
                "off_block_anomaly": s.off_block_anomaly,
                "inclusion": s.inclusion,
                "files": files,
            });
            Ok(certified(v, cert))
        }
        SolveEquation::Congruence => {
            let (a, b, c) = load_abc(o, true)?;
            let b = b.expect("loaded");
            let s = match solve_congruence(&a, &b, &c, tol) {
                Ok(s) => s,
                Err(e) if is_diagnosis(&e) => return Ok(unsolvable("congruence", &e, json!(diagnose_congruence(&a, &b, &c, tol)?))),
                Err(e) => return Err(e),
            };
            let files = write_outputs(ctx, &[("X", &s.x), ("Y", &s.y), ("X_hat", &s.x_hat), ("Y_hat_star", &s.y_hat_star)])?;
            let sol: Operators = [("X".to_string(), s.x.clone()), ("Y".to_string(), s.y.clone())].into();
            let cert = verify("congruence", &operators(&a, Some(&b), &c), &sol, tol)?;
            let v = json!({
                "command": "solve",
                "equation": "congruence",
                "status": "solved",
                "residual": s.residual,
                "diagnosis": s.diagnosis,
                "files": files,
            });
            Ok(certified(v, cert))
        }
        SolveEquation::CongruenceCz => {
            let (a, b, c) = load_abc(o, true)?;
            let b = b.expect("loaded");
            let s = match solve_congruence_cz(&a, &b, &c, tol) {
                Ok(s) => s,
                Err(e) if is_diagnosis(&e) => return Ok(unsolvable("congruence-cz", &e, Value::Null)),
                Err(e) => return Err(e),
            };
            let files = write_outputs(ctx, &[("X", &s.x), ("Y", &s.y), ("Z", &s.z)])?;
            let sol: Operators =
                [("X".to_string(), s.x.clone()), ("Y".to_string(), s.y.clone()), ("Z".to_string(), s.z.clone())].into();
            let cert = verify("congruence-cz", &operators(&a, Some(&b), &c), &sol, tol)?;
            let v = json!({
                "command": "solve",
                "equation": "congruence-cz",
                "status": "solved",
                "residual": s.report.residual,
                "report": s.report,
                "files": files,
            });
            Ok(certified(v, cert))
        }
    }
}

fn intersect(a: &ComplexMatrix, b: &ComplexMatrix, ctx: &Context) -> Result<Outcome> {
    let r = range_intersection(a, b, &ctx.tol)?;
    let blocks = &r.p_blocks;
    let files = write_outputs(ctx, &[("basis", &r.intersection_basis), ("X", &blocks.x), ("Z", &blocks.z), ("Y", &blocks.y)])?;
    Ok(Outcome::Holds(json!({ "command": "intersect", "report": r, "files": files })))
}

fn gen(spec: &InstanceSpec, ctx: &Context) -> Result<Outcome> {
    let inst = generate(spec)?;
    let block_k = (spec.shape.k > 1).then_some(spec.shape.k);
    let mut v = json!({
        "command": "gen",
        "family": spec.family,
        "seed": spec.seed,
        "shape": spec.shape,
        "scalars": inst.scalars,
    });
    match &ctx.out {
        Some(dir) => {
            create_dir(dir)?;
            let mut files = Vec::new();
            for (name, m) in &inst.operators {
                let file = format!("{name}.json");
                save_matrix_with_block(dir.join(&file), m, block_k)?;
                files.push(file);
            }
            v["files"] = json!(files);
        }
        None => {
            let mats: serde_json::Map<String, Value> =
                inst.operators.iter().map(|(k, m)| (k.clone(), json!(MatrixFile::from_matrix(m, block_k)))).collect();
            v["operators"] = Value::Object(mats);
        }
    }
    Ok(Outcome::Holds(v))
}

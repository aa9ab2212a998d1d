//! Command-line driver. Every subcommand prints a JSON report on stdout.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use preproj::algebra::{dim_label, QuiverAlgebra, DEFAULT_BRICK_BUDGET};
use preproj::arrangement::Arrangement;
use preproj::derived::{Complex, Derived, DEFAULT_SEED};
use preproj::dynkin::{primitive_restricted_roots, DynkinSpec};
use preproj::io::{load_algebra, load_complex, load_smc, ComplexFile, SmcFile};
use preproj::smc::{CompletionLimits, Direction, HeartMembership, NarrowGuards, NarrowResult, Smc};
use preproj::suites::{path_string, run_suite, SUITES};
use preproj::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "preproj", version, about = "Restricted roots, quiver algebras and simple-minded collections")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Global {
    /// Seed for randomized steps and suites.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Work budget: brick-scan tuples, or collections visited by `complete`.
    #[arg(long, global = true)]
    budget: Option<u64>,
    /// Include wall-clock timings (in microseconds) in the report.
    #[arg(long, global = true)]
    timings: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Positive roots of a Dynkin diagram, e.g. `D5`.
    Roots { dynkin: String },
    /// Restricted roots of `FAMILY RANK:I=...`, with the primitive ones.
    Restrict { dynkin: String },
    /// Chambers, adjacency graph and atoms of the restricted-root arrangement.
    Arrangement {
        dynkin: String,
        /// Print the chamber graph in DOT format instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// dim Hom(x, y[n]) in the derived category.
    Hom {
        algebra: String,
        x: String,
        y: String,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Cohomology window of a complex, standard or relative to a collection.
    Bounds {
        algebra: String,
        x: String,
        /// Collection file, or `standard`.
        #[arg(long)]
        smc: Option<String>,
    },
    /// Bricks with dimension vector bounded by `--bound` over F_p.
    BrickScan {
        algebra: String,
        #[arg(long, value_delimiter = ',', required = true)]
        bound: Vec<usize>,
        #[arg(long, default_value_t = 2)]
        field: u64,
    },
    /// Left or right mutation of a collection at a 1-based index.
    Mutate {
        algebra: String,
        /// Collection file, or `standard`.
        smc: String,
        #[arg(long)]
        at: usize,
        #[arg(long)]
        dir: Direction,
    },
    /// Finds a collection whose heart contains x, or a negative self-extension.
    Narrow { algebra: String, x: String },
    /// Completes a two-term semibrick complex to a simple-minded collection.
    Complete { algebra: String, x: String },
    /// Runs a named verification suite, or `all`.
    Verify { suite: String },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let start = Instant::now();
    match run(&cli) {
        Ok(Output::Text(s)) => {
            emit(&s);
            ExitCode::SUCCESS
        }
        Ok(Output::Report { results, inputs, field, passed }) => {
            let mut report = json!({
                "command": argv,
                "inputs_digest": digest(&inputs),
                "field": field,
                "results": results,
            });
            if uses_seed(&cli.command) {
                report["seed"] = json!(cli.global.seed);
            }
            if cli.global.timings {
                report["timings"] = json!({ "total_us": start.elapsed().as_micros().to_string() });
            }
            emit(&pretty(&report));
            if passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let report = json!({ "command": argv, "error": e.to_string(), "exit_code": e.exit_code() });
            emit(&pretty(&report));
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("reports serialize") + "\n"
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(s: &str) {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(s.as_bytes()).and_then(|_| out.flush());
}

enum Output {
    Text(String),
    Report { results: Value, inputs: Vec<Vec<u8>>, field: String, passed: bool },
}

fn report(results: Value, inputs: Vec<Vec<u8>>, field: &str) -> Output {
    Output::Report { results, inputs, field: field.to_string(), passed: true }
}

fn uses_seed(c: &Command) -> bool {
    matches!(c, Command::Verify { .. } | Command::Narrow { .. } | Command::Complete { .. } | Command::Mutate { .. })
}

/// SHA-256 over the length-prefixed inputs.
fn digest(inputs: &[Vec<u8>]) -> String {
    let mut h = Sha256::new();
    for i in inputs {
        h.update((i.len() as u64).to_le_bytes());
        h.update(i);
    }
    h.finalize().iter().map(|b| format!("{b:02x}")).collect()
}

/// Bytes identifying an input argument: file contents if it names a file,
/// otherwise the argument itself.
fn input_bytes(arg: &str) -> Vec<u8> {
    std::fs::read(arg).unwrap_or_else(|_| arg.as_bytes().to_vec())
}

fn inputs(args: &[&str]) -> Vec<Vec<u8>> {
    args.iter().map(|a| input_bytes(a)).collect()
}

fn complex_json(alg: &QuiverAlgebra, x: &Complex) -> Value {
    serde_json::to_value(ComplexFile::from_complex(alg, x)).expect("complex serializes")
}

fn smc_json(alg: &QuiverAlgebra, u: &Smc) -> Value {
    serde_json::to_value(SmcFile::from_smc(alg, u)).expect("collection serializes")
}

fn cohomology_json(alg: &QuiverAlgebra, x: &Complex) -> Value {
    x.cohomology_dims(alg)
        .into_iter()
        .filter(|(_, d)| d.iter().any(|&k| k > 0))
        .map(|(k, d)| json!({ "degree": k, "dims": dim_label(&d) }))
        .collect()
}

fn narrow_json(alg: &QuiverAlgebra, r: &NarrowResult) -> Value {
    json!({
        "path": path_string(r.path()),
        "mutations": r.steps.len(),
        "shift": r.shift,
        "windows": r.steps.iter().map(|s| json!({
            "index": s.index + 1,
            "before": s.before.to_string(),
            "after": s.after.to_string(),
        })).collect::<Vec<_>>(),
        "smc": smc_json(alg, &r.smc),
    })
}

/// A collection file, or `standard` for the simple modules in degree 0.
fn smc_arg(d: &Derived<'_>, arg: &str) -> Result<Smc> {
    if arg == "standard" {
        Ok(d.standard_smc())
    } else {
        load_smc(d.alg(), arg)
    }
}

fn run(cli: &Cli) -> Result<Output> {
    let g = &cli.global;
    match &cli.command {
        Command::Roots { dynkin } => {
            let spec: DynkinSpec = dynkin.parse()?;
            let roots = spec.diagram.positive_roots();
            Ok(report(
                json!({
                    "rank": spec.diagram.rank(),
                    "count": roots.len(),
                    "roots": roots.iter().map(|r| r.0.clone()).collect::<Vec<_>>(),
                }),
                inputs(&[dynkin]),
                "Z",
            ))
        }
        Command::Restrict { dynkin } => {
            let spec: DynkinSpec = dynkin.parse()?;
            let rs = spec.diagram.restrict_roots(&spec.contracted)?;
            let prim = primitive_restricted_roots(&rs);
            Ok(report(
                json!({
                    "contracted": spec.contracted,
                    "restricted_roots": rs.iter().map(|r| r.label()).collect::<Vec<_>>(),
                    "primitive": prim.iter().map(|r| r.label()).collect::<Vec<_>>(),
                }),
                inputs(&[dynkin]),
                "Z",
            ))
        }
        Command::Arrangement { dynkin, dot } => {
            let spec: DynkinSpec = dynkin.parse()?;
            let arr = Arrangement::from_restricted_roots(&spec.diagram.restrict_roots(&spec.contracted)?)?;
            if *dot {
                return Ok(Output::Text(arr.to_dot()));
            }
            let mut atoms = Vec::new();
            for c in 0..arr.chambers().len() {
                let longest = arr.longest_atom(c)?;
                atoms.push(json!({
                    "chamber": c,
                    "atoms": arr.atoms_from(c)?.len(),
                    "longest": { "target": longest.target, "length": arr.atom_length(&longest) },
                    "opposite": arr.opposite_chamber(c)?,
                }));
            }
            Ok(report(
                json!({
                    "hyperplanes": arr.hyperplanes().iter().map(|h| h.normal.clone()).collect::<Vec<_>>(),
                    "chamber_count": arr.chambers().len(),
                    "graph": arr.graph_json(),
                    "atoms": atoms,
                }),
                inputs(&[dynkin]),
                "Q",
            ))
        }
        Command::Hom { algebra, x, y, shift } => {
            let alg = load_algebra(algebra)?;
            let d = Derived::with_seed(&alg, g.seed);
            let (cx, cy) = (load_complex(&alg, x)?, load_complex(&alg, y)?);
            Ok(report(json!({ "shift": shift, "dim": d.hom_dim(&cx, &cy, *shift) }), inputs(&[algebra, x, y]), "Q"))
        }
        Command::Bounds { algebra, x, smc } => {
            let alg = load_algebra(algebra)?;
            let d = Derived::with_seed(&alg, g.seed);
            let cx = load_complex(&alg, x)?;
            let mut results = json!({
                "standard": d.std_bounds(&cx)?.to_string(),
                "cohomology": cohomology_json(&alg, &cx),
            });
            let mut ins = inputs(&[algebra, x]);
            if let Some(f) = smc {
                let u = smc_arg(&d, f)?;
                results["smc"] = json!(d.smc_window(&cx, &u)?.to_string());
                ins.push(input_bytes(f));
            }
            Ok(report(results, ins, "Q"))
        }
        Command::BrickScan { algebra, bound, field } => {
            let alg = load_algebra(algebra)?;
            let scan = alg.enumerate_bricks(bound, *field, g.budget.unwrap_or(DEFAULT_BRICK_BUDGET))?;
            Ok(report(
                json!({
                    "bound": dim_label(bound),
                    "tuples_checked": scan.tuples_checked,
                    "bricks": scan.bricks.iter().map(|b| json!({
                        "dims": dim_label(&b.dims),
                        "classes": b.classes,
                    })).collect::<Vec<_>>(),
                }),
                inputs(&[algebra]),
                &format!("F_{field}"),
            ))
        }
        Command::Mutate { algebra, smc, at, dir } => {
            let alg = load_algebra(algebra)?;
            let d = Derived::with_seed(&alg, g.seed);
            let u = smc_arg(&d, smc)?;
            if *at == 0 || *at > u.len() {
                return Err(Error::Precondition(format!("--at must be between 1 and {}", u.len())));
            }
            let v = d.mutate(&u, at - 1, *dir)?;
            let check = d.validate(&v);
            Ok(report(
                json!({
                    "valid": check.passed,
                    "failures": check.messages,
                    "smc": smc_json(&alg, &v),
                }),
                inputs(&[algebra, smc]),
                "Q",
            ))
        }
        Command::Narrow { algebra, x } => {
            let alg = load_algebra(algebra)?;
            let d = Derived::with_seed(&alg, g.seed);
            let cx = load_complex(&alg, x)?;
            let results = match d.heart_membership(&cx, NarrowGuards::default())? {
                HeartMembership::InHeart(r) => json!({ "in_heart": true, "witness": narrow_json(&alg, &r) }),
                HeartMembership::NegativeSelfExt { degree } => json!({
                    "in_heart": false,
                    "degree": degree,
                    "dim": d.hom_dim(&cx, &cx, degree),
                }),
            };
            Ok(report(results, inputs(&[algebra, x]), "Q"))
        }
        Command::Complete { algebra, x } => {
            let alg = load_algebra(algebra)?;
            let d = Derived::with_seed(&alg, g.seed);
            let cx = load_complex(&alg, x)?;
            let mut limits = CompletionLimits::default();
            if let Some(b) = g.budget {
                limits.budget = b as usize;
            }
            let c = d.complete_semibrick(&cx, None, limits)?;
            Ok(report(
                json!({
                    "summands": c.summands.iter().map(|s| complex_json(&alg, s)).collect::<Vec<_>>(),
                    "positions": c.positions.iter().map(|p| p + 1).collect::<Vec<_>>(),
                    "explored": c.explored,
                    "path": path_string(&c.smc.provenance),
                    "smc": smc_json(&alg, &c.smc),
                }),
                inputs(&[algebra, x]),
                "Q",
            ))
        }
        Command::Verify { suite } => {
            let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut passed = true;
            let mut reports = Vec::new();
            for name in names {
                let r = run_suite(name, g.seed)?;
                passed &= r.passed();
                reports.push(r.to_json());
            }
            let field = if suite == "bricks" { "F_2, F_3" } else { "Q" };
            Ok(Output::Report {
                results: json!({ "passed": passed, "suites": reports }),
                inputs: inputs(&[suite]),
                field: field.to_string(),
                passed,
            })
        }
    }
}

//! `homcyc`: validate Hom-associative algebras and compute their Hochschild,
//! cyclic and periodic cyclic (co)homology.
//!
//! An `ALGEBRA` argument is a path to a JSON algebra file or the name of a
//! built-in corpus algebra (`ex2`, `k`, `k2`, ...).

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use homcyc::algebra::{check_axioms, idempotent_twist_decompose, unital_decompose, yau_twist};
use homcyc::cocycle::{derivation_cocycle, is_cyclic_cocycle, trace_space, Functional, TwistedDerivation};
use homcyc::coefficients::{a_circ, dualize_bimodule, regular_bimodule, Bimodule, BimoduleDef, DualBimodule};
use homcyc::cyclic::{self, Method};
use homcyc::hochschild::{hochschild_cohomology, hochschild_homology};
use homcyc::{corpus, AlgebraDef, Error, HomAlgebra, Matrix, Scalar};

#[derive(Parser)]
#[command(
    name = "homcyc",
    version,
    about = "Exact (co)homology of Hom-associative algebras over ℚ"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Lambda,
    Bicomplex,
    Both,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Method {
        match m {
            MethodArg::Lambda => Method::Lambda,
            MethodArg::Bicomplex => Method::Bicomplex,
            MethodArg::Both => Method::Both,
        }
    }
}

#[derive(Args)]
struct Common {
    /// Algebra JSON file or corpus name.
    algebra: String,
    /// Highest degree to report.
    #[arg(long = "max")]
    max: Option<usize>,
    /// Print representative cycles.
    #[arg(long)]
    representatives: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Validate an algebra and report unit, centroid and idempotence of α.
    Check { algebra: String },
    /// Hochschild homology H_*(A, V); V = A unless --bimodule is given.
    Hh {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bimodule: Option<PathBuf>,
    },
    /// Hochschild cohomology H^*(A, W); W = A* unless --bimodule is given.
    Hhco {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        bimodule: Option<PathBuf>,
    },
    /// Cyclic homology.
    Hc(CyclicArgs),
    /// Cyclic cohomology.
    Hcco(CyclicArgs),
    /// Periodic cyclic homology.
    Hp(PeriodicArgs),
    /// Periodic cyclic cohomology.
    Hpco(PeriodicArgs),
    /// Compare dim H_n(A, A) with dim H^n(A, A*).
    Duality {
        algebra: String,
        #[arg(long = "max")]
        max: Option<usize>,
    },
    /// Yau twist of an associative algebra by an endomorphism (row-major JSON matrix).
    Twist {
        algebra: String,
        alpha: PathBuf,
        #[arg(long)]
        name: Option<String>,
        /// Write the twisted algebra here instead of stdout.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// The subspace A° of A* and its bimodule structure.
    DualSpace { algebra: String },
    /// Split along α(1) (unital case) and along ker α ⊕ im α (α² = α).
    Decompose { algebra: String },
    /// Cyclic cocycles from traces and twisted derivations.
    Cocycle {
        #[command(subcommand)]
        command: CocycleCommand,
    },
}

#[derive(Args)]
struct CyclicArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum, default_value_t = MethodArg::Lambda)]
    method: MethodArg,
    /// Largest column index of the bicomplex.
    #[arg(long)]
    window: Option<usize>,
    /// Also build the (b, B) bicomplex and check its identities (unital algebras).
    #[arg(long)]
    experimental_bb: bool,
}

#[derive(Args)]
struct PeriodicArgs {
    #[command(flatten)]
    common: Common,
    /// Number of negative columns kept.
    #[arg(long)]
    window: Option<usize>,
}

#[derive(Subcommand)]
enum CocycleCommand {
    /// Check that a functional (JSON: degree, coordinates) is a cyclic cocycle.
    Verify { algebra: String, functional: PathBuf },
    /// Build φ(a, b) = tr(a ρ(b)) from a derivation matrix and a trace.
    Derive {
        algebra: String,
        #[arg(long)]
        rho: PathBuf,
        /// Trace functional; a list of coordinates or a degree-0 functional.
        #[arg(long)]
        trace: PathBuf,
    },
}

enum Failure {
    /// Bad input or a property the input does not have (exit 2).
    Validation(String),
    /// An identity that should always hold did not (exit 3).
    Invariant(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        if e.is_invariant_failure() {
            Failure::Invariant(e.to_string())
        } else {
            Failure::Validation(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Validation(format!("{}: {e}", path.display())))
}

fn load_def(source: &str) -> Result<AlgebraDef, Failure> {
    let path = Path::new(source);
    if path.exists() {
        return read_json(path);
    }
    corpus::by_name(source)
        .map(|a| a.to_def())
        .ok_or_else(|| Failure::Validation(format!("{source}: no such file or corpus algebra")))
}

fn load(source: &str) -> Result<HomAlgebra, Failure> {
    Ok(HomAlgebra::from_def(&load_def(source)?)?)
}

fn default_max(a: &HomAlgebra) -> usize {
    match a.dim() {
        0..=2 => 6,
        3 => 4,
        _ => 3,
    }
}

/// `c_1 e_1 + ⋯` with unit coefficients left implicit.
fn combination(v: &[Scalar], names: &[String]) -> String {
    let mut s = String::new();
    for (c, name) in v.iter().zip(names).filter(|(c, _)| !c.is_zero()) {
        let negative = c < &Scalar::zero();
        let abs = c.abs();
        match (s.is_empty(), negative) {
            (true, true) => s.push('-'),
            (false, true) => s.push_str(" - "),
            (false, false) => s.push_str(" + "),
            (true, false) => {}
        }
        if !abs.is_one() {
            let _ = write!(s, "{abs}");
        }
        s.push_str(name);
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

fn emit(format: Format, text: String, value: Value) {
    match format {
        Format::Text => print!("{text}"),
        Format::Json => println!("{}", serde_json::to_string_pretty(&value).expect("JSON output")),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn cmd_check(source: &str, format: Format) -> Outcome {
    let def = load_def(source)?;
    let axioms = check_axioms(&def)?;
    if !axioms.is_valid() {
        let mut text = format!("invalid: {} violation(s)\n", axioms.violation_count());
        for v in axioms.hom_associativity.iter().chain(&axioms.multiplicativity).take(10) {
            let _ = writeln!(text, "  {} fails on {:?}", v.law, v.indices);
        }
        emit(format, text, json!({ "valid": false, "violations": to_value(&axioms) }));
        return Err(Failure::Validation(format!("{} is not a valid algebra", def.name)));
    }
    let a = HomAlgebra::from_def(&def)?;
    let unit = a.find_unit();
    let unit_text = unit.as_ref().map(|u| combination(u, a.basis_names()));
    let centroid = a.is_centroid_element();
    let idempotent = a.is_alpha_idempotent();
    let yes = |b: bool| if b { "yes" } else { "no" };
    let mut parts = vec!["valid".to_string()];
    if a.is_alpha_identity() {
        parts.push("α=Id".into());
        if let Some(u) = &unit_text {
            parts.push(format!("unital (1={u})"));
        }
    } else {
        parts.push("multiplicative".into());
        parts.push(match &unit_text {
            Some(u) => format!("unital (1={u})"),
            None => "non-unital".into(),
        });
        parts.push(format!("centroid: {}", yes(centroid)));
        parts.push(format!("α²=α: {}", yes(idempotent)));
    }
    let value = json!({
        "algebra": a.name(),
        "dim": a.dim(),
        "valid": true,
        "associative": a.is_associative(),
        "alpha_identity": a.is_alpha_identity(),
        "alpha_idempotent": idempotent,
        "centroid": centroid,
        "unit": unit,
    });
    emit(format, parts.join(", ") + "\n", value);
    Ok(())
}

fn cmd_hh(common: &Common, bimodule: Option<&Path>, cohomology: bool, format: Format) -> Outcome {
    let a = load(&common.algebra)?;
    let n = common.max.unwrap_or_else(|| default_max(&a));
    let report = if cohomology {
        let w = match bimodule {
            Some(p) => DualBimodule::from_def(&a, &read_json::<BimoduleDef>(p)?)?,
            None => dualize_bimodule(&regular_bimodule(&a))?,
        };
        hochschild_cohomology(&w, n, common.representatives)?
    } else {
        let v = match bimodule {
            Some(p) => Bimodule::from_def(&a, &read_json::<BimoduleDef>(p)?)?,
            None => regular_bimodule(&a),
        };
        hochschild_homology(&v, n, common.representatives)?
    };
    emit(format, report.to_text(), report.to_json_value());
    Ok(())
}

fn cmd_hc(args: &CyclicArgs, cohomology: bool, format: Format) -> Outcome {
    let a = load(&args.common.algebra)?;
    let n = args.common.max.unwrap_or_else(|| default_max(&a));
    let method = args.method.into();
    let reps = args.common.representatives;
    let report = if cohomology {
        cyclic::cyclic_cohomology(&a, n, method, args.window, reps)?
    } else {
        cyclic::cyclic_homology(&a, n, method, args.window, reps)?
    };
    let mut text = report.to_text();
    let mut value = json!({ "cyclic": to_value(&report) });
    let mut failure = None;
    if !report.all_agree() {
        failure = Some(Failure::Invariant("λ and bicomplex methods disagree".into()));
    }
    if args.experimental_bb {
        if cohomology {
            return Err(Failure::Validation("--experimental-bb applies to hc only".into()));
        }
        let bb = cyclic::connes_bb_bicomplex(&a, n)?;
        text.push_str(&bb.to_text());
        value["bb"] = to_value(&bb);
        if !bb.identities_hold() {
            failure = failure.or(Some(Failure::Invariant("(b, B) identities fail".into())));
        } else if bb.agrees_with_cyclic.as_ref().is_some_and(|v| !v.iter().all(|&x| x)) {
            failure = failure.or(Some(Failure::Invariant("(b, B) homology differs from HC".into())));
        }
    }
    emit(format, text, value);
    failure.map_or(Ok(()), Err)
}

fn cmd_hp(args: &PeriodicArgs, cohomology: bool, format: Format) -> Outcome {
    let a = load(&args.common.algebra)?;
    // Windows grow as d^(degree + window); keep d ≥ 3 small by default.
    let (default_window, default_top) = if a.dim() <= 2 { (2, 3) } else { (1, 1) };
    let window = args.window.unwrap_or(default_window);
    let top = args.common.max.map_or(default_top, |m| m as i64);
    let report = if cohomology {
        cyclic::periodic_cohomology(&a, window, 0..=top)?
    } else {
        cyclic::periodic_homology(&a, window, 0..=top)?
    };
    let mut text = report.to_text();
    if !report.parity_consistent() {
        text.push_str("stabilized degrees of equal parity disagree\n");
    }
    emit(format, text, to_value(&report));
    match report.parity_consistent() {
        true => Ok(()),
        false => Err(Failure::Invariant("periodic betti numbers are not 2-periodic".into())),
    }
}

fn cmd_duality(source: &str, max: Option<usize>, format: Format) -> Outcome {
    let a = load(source)?;
    let n = max.unwrap_or(4.min(default_max(&a)));
    let v = regular_bimodule(&a);
    let homology = hochschild_homology(&v, n, false)?.betti();
    let cohomology = hochschild_cohomology(&dualize_bimodule(&v)?, n, false)?.betti();
    let mut text = format!(
        "duality for {}\n{:>6} {:>8} {:>8} {:>6}\n",
        a.name(),
        "n",
        "H_n",
        "H^n",
        "equal"
    );
    let mut rows = Vec::new();
    for (i, (h, c)) in homology.iter().zip(&cohomology).enumerate() {
        let _ = writeln!(text, "{i:>6} {h:>8} {c:>8} {:>6}", if h == c { "yes" } else { "no" });
        rows.push(json!({ "degree": i, "homology": h, "cohomology": c, "equal": h == c }));
    }
    emit(format, text, json!({ "algebra": a.name(), "rows": rows }));
    match homology == cohomology {
        true => Ok(()),
        false => Err(Failure::Invariant(
            "H_n(A, A) and H^n(A, A*) differ in dimension".into(),
        )),
    }
}

fn cmd_twist(source: &str, alpha: &Path, name: Option<&str>, output: Option<&Path>) -> Outcome {
    let a = load(source)?;
    let endo: Matrix = read_json(alpha)?;
    let mut twisted = yau_twist(&a, &endo)?;
    if let Some(name) = name {
        twisted = twisted.with_name(name);
    }
    let json = serde_json::to_string_pretty(&twisted.to_def()).expect("algebra serializes");
    match output {
        Some(path) => std::fs::write(path, json + "\n")
            .map_err(|e| Failure::Validation(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

fn cmd_dual_space(source: &str, format: Format) -> Outcome {
    let a = load(source)?;
    let circ = a_circ(&a)?;
    let report = circ.bimodule.bimodule_report();
    let dual_names: Vec<String> = a.basis_names().iter().map(|n| format!("{n}*")).collect();
    let basis: Vec<String> = circ
        .subspace
        .basis()
        .iter()
        .map(|f| combination(f, &dual_names))
        .collect();
    let equal = circ.subspace.dim() == a.dim();
    let mut text = format!(
        "A° of {}: dim {} (dim A* = {}), A° = A*: {}\n",
        a.name(),
        circ.subspace.dim(),
        a.dim(),
        if equal { "yes" } else { "no" }
    );
    for (name, f) in circ.bimodule.basis_names().iter().zip(&basis) {
        let _ = writeln!(text, "  {name} = {f}");
    }
    let _ = writeln!(
        text,
        "bimodule axioms: {}",
        if report.is_valid() { "hold" } else { "fail" }
    );
    let value = json!({
        "algebra": a.name(),
        "dim": circ.subspace.dim(),
        "dual_dim": a.dim(),
        "equals_dual": equal,
        "basis": circ.subspace.basis(),
        "bimodule": circ.bimodule.to_def(),
        "bimodule_valid": report.is_valid(),
    });
    emit(format, text, value);
    match report.is_valid() {
        true => Ok(()),
        false => Err(Failure::Invariant("A° fails the bimodule axioms".into())),
    }
}

fn cmd_decompose(source: &str, format: Format) -> Outcome {
    let a = load(source)?;
    let mut text = String::new();
    let mut value = json!({ "algebra": a.name() });
    let mut any = false;
    if a.find_unit().is_some() {
        let d = unital_decompose(&a)?;
        any = true;
        let _ = writeln!(
            text,
            "unital: α(1) = {}, A·α(1) has dim {}, A·(1 − α(1)) has dim {}",
            combination(&d.idempotent, a.basis_names()),
            d.unital_part.dim(),
            d.null_part.dim()
        );
        value["unital"] = json!({
            "unit": d.unit,
            "idempotent": d.idempotent,
            "unital_part": d.unital_part.to_def(),
            "null_part": d.null_part.to_def(),
            "change_of_basis": d.change_of_basis,
        });
    }
    if a.is_alpha_idempotent() {
        match idempotent_twist_decompose(&a) {
            Ok(d) => {
                any = true;
                let _ = writeln!(
                    text,
                    "twist: ker α has dim {}, im α has dim {} (associative, α = Id)",
                    d.kernel_part.dim(),
                    d.image_part.dim()
                );
                value["twist"] = json!({
                    "kernel_part": d.kernel_part.to_def(),
                    "image_part": d.image_part.to_def(),
                    "change_of_basis": d.change_of_basis,
                });
            }
            Err(Error::Precondition(msg)) => {
                let _ = writeln!(text, "twist: not applicable ({msg})");
            }
            Err(e) => return Err(e.into()),
        }
    }
    if !any {
        return Err(Failure::Validation(format!(
            "{}: no unit and α² ≠ α, nothing to decompose",
            a.name()
        )));
    }
    emit(format, text, value);
    Ok(())
}

#[derive(serde::Deserialize)]
#[serde(untagged)]
enum TraceInput {
    Coordinates(Vec<Scalar>),
    Functional(Functional),
}

fn cmd_cocycle(command: &CocycleCommand, format: Format) -> Outcome {
    match command {
        CocycleCommand::Verify { algebra, functional } => {
            let a = load(algebra)?;
            let raw: Functional = read_json(functional)?;
            let phi = Functional::new(&a, raw.degree, raw.coordinates)?;
            let check = is_cyclic_cocycle(&a, &phi)?;
            let yes = |b: bool| if b { "yes" } else { "no" };
            let mut text = format!(
                "degree {} functional on {}: cocycle: {}, cyclic: {}\n",
                phi.degree,
                a.name(),
                yes(check.is_cocycle()),
                yes(check.is_cyclic())
            );
            for t in check.coboundary_residuals.iter().take(10) {
                let _ = writeln!(text, "  bφ({}) = {}", t.label, t.coefficient);
            }
            for t in check.cyclicity_residuals.iter().take(10) {
                let _ = writeln!(text, "  (φ − φt)({}) = {}", t.label, t.coefficient);
            }
            emit(format, text, to_value(&check));
            match check.holds() {
                true => Ok(()),
                false => Err(Failure::Validation("not a cyclic cocycle".into())),
            }
        }
        CocycleCommand::Derive { algebra, rho, trace } => {
            let a = load(algebra)?;
            let rho = TwistedDerivation::new(&a, read_json(rho)?)?;
            let tr = match read_json::<TraceInput>(trace)? {
                TraceInput::Coordinates(c) => Functional::new(&a, 0, c)?,
                TraceInput::Functional(f) => Functional::new(&a, f.degree, f.coordinates)?,
            };
            let phi = derivation_cocycle(&a, &rho, &tr)?;
            let mut text = format!("φ(a, b) = tr(a ρ(b)) on {}\n", a.name());
            for (label, c) in phi.labels.iter().zip(&phi.coordinates).filter(|(_, c)| !c.is_zero()) {
                let _ = writeln!(text, "  φ({label}) = {c}");
            }
            if phi.is_zero() {
                text.push_str("  φ = 0\n");
            }
            let _ = writeln!(text, "traces on {}: dim {}", a.name(), trace_space(&a).dim());
            emit(format, text, to_value(&phi));
            Ok(())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let f = cli.format;
    match &cli.command {
        Command::Check { algebra } => cmd_check(algebra, f),
        Command::Hh { common, bimodule } => cmd_hh(common, bimodule.as_deref(), false, f),
        Command::Hhco { common, bimodule } => cmd_hh(common, bimodule.as_deref(), true, f),
        Command::Hc(args) => cmd_hc(args, false, f),
        Command::Hcco(args) => cmd_hc(args, true, f),
        Command::Hp(args) => cmd_hp(args, false, f),
        Command::Hpco(args) => cmd_hp(args, true, f),
        Command::Duality { algebra, max } => cmd_duality(algebra, *max, f),
        Command::Twist {
            algebra,
            alpha,
            name,
            output,
        } => cmd_twist(algebra, alpha, name.as_deref(), output.as_deref()),
        Command::DualSpace { algebra } => cmd_dual_space(algebra, f),
        Command::Decompose { algebra } => cmd_decompose(algebra, f),
        Command::Cocycle { command } => cmd_cocycle(command, f),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = std::env::var("HOMCYC_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        // Only fails if a global pool already exists, which cannot happen here.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(threads.max(1))
            .build_global();
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invariant(msg)) => {
            eprintln!("invariant failure: {msg}");
            ExitCode::from(3)
        }
    }
}

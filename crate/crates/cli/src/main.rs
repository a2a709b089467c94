use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use algcsp::catalog;
use algcsp::congruence::{congruence_lattice, is_simple};
use algcsp::structure::{
    detect_ec, has_ctb_cib, is_abelian, minimal_absorbing, AbsorptionBounds, AbsorptionCertificate,
};
use algcsp::subuniverse::all_subuniverses;
use algcsp::verify::{classify_cibs_report, run_suite, TheoremOptions, VerificationReport, SUITES};
use algcsp::{enumerate_cibs, find_isomorphism, CspInstance, Error, FiniteAlgebra, Strategy};

#[derive(Parser)]
#[command(name = "algcsp", version, about = "Analyze small algebras and solve CSP instances over them")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Clone)]
struct Common {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Sample subdirect products above the exhaustive bound instead of skipping them.
    #[arg(long, global = true)]
    allow_subpower: bool,
    /// Largest term arity tried when certifying absorption.
    #[arg(long, global = true)]
    bound_arity: Option<usize>,
    /// Largest term depth tried when certifying absorption.
    #[arg(long, global = true)]
    bound_depth: Option<usize>,
}

impl Common {
    fn bounds(&self) -> AbsorptionBounds {
        let d = AbsorptionBounds::default();
        AbsorptionBounds {
            max_arity: self.bound_arity.unwrap_or(d.max_arity),
            max_depth: self.bound_depth.unwrap_or(d.max_depth),
            ..d
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Subuniverses, congruences, masses and structure of one algebra.
    Analyze {
        /// An algebra file, or the name of a fixture or catalog algebra.
        algebra: String,
    },
    /// Decide an instance file; exit 0 when satisfiable, 1 when not.
    Solve {
        instance: PathBuf,
        #[arg(long, default_value = "auto")]
        strategy: String,
    },
    /// Enumerate commutative idempotent binars up to isomorphism.
    ClassifyCibs {
        #[arg(long, default_value_t = 4)]
        max_size: usize,
    },
    /// Run the reproduction suites.
    VerifyPaper {
        /// One suite; all of them when absent.
        #[arg(long)]
        suite: Option<String>,
        /// Products larger than this are sampled or skipped.
        #[arg(long)]
        max_size: Option<usize>,
    },
}

/// Failures mapped onto exit codes.
enum Failure {
    Input(anyhow::Error),
    Internal(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<Error>() {
            Some(Error::WitnessRejected(_)) => Failure::Internal(e),
            _ => Failure::Input(e),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        anyhow::Error::from(e).into()
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(e)) => {
            eprintln!("internal error: {e:#}");
            ExitCode::from(3)
        }
    }
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Analyze { algebra } => analyze(algebra, &cli.common),
        Command::Solve { instance, strategy } => solve(instance, strategy, &cli.common),
        Command::ClassifyCibs { max_size } => classify(*max_size, &cli.common),
        Command::VerifyPaper { suite, max_size } => verify(suite.as_deref(), *max_size, &cli.common),
    }
}

fn fixture_dir() -> PathBuf {
    match std::env::var_os("ALGCSP_FIXTURES") {
        Some(d) => PathBuf::from(d),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures"),
    }
}

fn load_algebra_file(path: &Path) -> anyhow::Result<FiniteAlgebra> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    FiniteAlgebra::from_json_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Looks for `name` (or `name.json`) in each directory, then in the catalog.
fn resolve_algebra(name: &str, dirs: &[PathBuf]) -> anyhow::Result<FiniteAlgebra> {
    for dir in dirs {
        for file in [dir.join(name), dir.join(format!("{name}.json"))] {
            if file.is_file() {
                return load_algebra_file(&file);
            }
        }
    }
    catalog::by_name(name).ok_or_else(|| anyhow::anyhow!("unknown algebra `{name}`"))
}

fn set(elems: &[usize]) -> String {
    let parts: Vec<String> = elems.iter().map(usize::to_string).collect();
    format!("{{{}}}", parts.join(","))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json"));
}

fn analyze(target: &str, common: &Common) -> Result<u8, Failure> {
    let path = Path::new(target);
    let alg = if path.is_file() {
        load_algebra_file(path)?
    } else {
        resolve_algebra(target, &[fixture_dir()])?
    };
    let subs = all_subuniverses(&alg)?;
    let lattice = congruence_lattice(&alg)?;
    let simple = is_simple(&alg)?;
    let abelian = is_abelian(&alg)?;
    let masses = minimal_absorbing(&alg, common.bounds())?;
    let ctb = if alg.is_cib() { Some(has_ctb_cib(&alg)?) } else { None };
    let ec = detect_ec(&alg)?;

    if common.json {
        let ctb = match &ctb {
            None => Value::String("not a cib".into()),
            Some(None) => Value::Null,
            Some(Some((d, s))) => json!({"d": d, "s": s}),
        };
        print_json(&json!({
            "size": alg.size(),
            "subuniverses": subs,
            "congruences": lattice.elements().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "simple": simple,
            "abelian": abelian,
            "masses": masses.masses,
            "certificates": masses.certificates.iter()
                .map(|(s, c)| json!({"subuniverse": s, "certificate": c}))
                .collect::<Vec<_>>(),
            "exhausted": masses.exhausted,
            "bounds": common.bounds(),
            "ctb": ctb,
            "ec": ec,
        }));
        return Ok(0);
    }

    println!("size: {}", alg.size());
    let subs_text: Vec<String> = subs.iter().map(|s| set(s.elements())).collect();
    println!("subuniverses: {}", subs_text.join(" "));
    let cons: Vec<String> = lattice.elements().iter().map(|c| c.to_string()).collect();
    println!("congruences: {}", cons.join(" "));
    println!("simple: {simple}");
    println!("abelian: {abelian}");
    let ms: Vec<String> = masses.masses.iter().map(|s| set(s.elements())).collect();
    println!("masses: [{}]", ms.join(", "));
    println!("certificates:");
    for (s, cert) in &masses.certificates {
        let text = match cert {
            AbsorptionCertificate::Absorbing { term, arity } => format!("absorbing by {term} (arity {arity})"),
            AbsorptionCertificate::NotAbsorbing { reason } => {
                format!("not absorbing: {}", serde_json::to_string(reason).expect("json"))
            }
        };
        println!("  {}: {text}", set(s.elements()));
    }
    match &ctb {
        None => println!("ctb: n/a (not a cib)"),
        Some(None) => println!("ctb: none"),
        Some(Some((d, s))) => println!("ctb: D = {}, S = {}", set(d), set(s)),
    }
    match &ec {
        None => println!("ec: none"),
        Some(e) => {
            let classes: Vec<String> = e.class_order.iter().map(|c| set(c)).collect();
            println!("ec: theta = {}, t = {}, chain = {}", e.theta, e.t, classes.join(" < "));
        }
    }
    Ok(0)
}

fn solve(file: &Path, strategy: &str, common: &Common) -> Result<u8, Failure> {
    let strategy: Strategy = strategy.parse()?;
    let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
    let mut dirs = Vec::new();
    if let Some(d) = std::env::var_os("ALGCSP_FIXTURES") {
        dirs.push(PathBuf::from(d));
    }
    dirs.push(file.parent().map(Path::to_path_buf).unwrap_or_default());
    dirs.push(fixture_dir());
    let resolve = |name: &str| resolve_algebra(name, &dirs).map_err(|e| Error::Malformed(format!("{e:#}")));
    let inst = CspInstance::from_json_str(&text, &resolve)?;
    let issues = inst.validate()?;
    if !issues.is_empty() {
        let msgs: Vec<String> = issues.iter().map(|i| format!("{i:?}")).collect();
        eprintln!("warning: instance does not validate: {}", msgs.join("; "));
    }
    let out = algcsp::solvers::solve(&inst, strategy)?;
    if common.json {
        print_json(&serde_json::to_value(&out).expect("json"));
    } else {
        println!("{}", if out.is_sat() { "sat" } else { "unsat" });
        if let Some(w) = &out.witness {
            let parts: Vec<String> = w.iter().map(usize::to_string).collect();
            println!("witness: {}", parts.join(" "));
        }
        println!("strategy: {}", out.strategy);
    }
    Ok(if out.is_sat() { 0 } else { 1 })
}

fn catalog_name(alg: &FiniteAlgebra) -> Option<String> {
    catalog::named()
        .into_iter()
        .find(|(_, b)| b.size() == alg.size() && find_isomorphism(alg, b).is_some())
        .map(|(n, _)| n)
}

/// Whether some subuniverse is a copy of Sq3 (the algebra itself included).
fn has_sq3_subalgebra(alg: &FiniteAlgebra) -> algcsp::Result<bool> {
    let sq3 = catalog::sq3();
    for s in all_subuniverses(alg)? {
        if s.len() == 3 && find_isomorphism(&alg.restrict(s.elements())?, &sq3).is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

fn classify(max_size: usize, common: &Common) -> Result<u8, Failure> {
    if !(1..=4).contains(&max_size) {
        return Err(Failure::Input(Error::Malformed(format!("--max-size must be 1..=4, got {max_size}")).into()));
    }
    let mut listing = Vec::new();
    for n in 1..=max_size {
        let all = enumerate_cibs(n)?;
        let mut simple = Vec::new();
        let mut with_sq3 = Vec::new();
        for a in &all {
            if is_simple(a)? {
                simple.push(a.clone());
                if has_sq3_subalgebra(a)? {
                    with_sq3.push(a.clone());
                }
            }
        }
        listing.push((n, all.len(), simple.len(), with_sq3));
    }
    let report = classify_cibs_report(max_size)?;
    if common.json {
        let sizes: Vec<Value> = listing
            .iter()
            .map(|(n, total, simple, with_sq3)| {
                json!({
                    "size": n,
                    "cibs": total,
                    "simple": simple,
                    "simple_with_sq3": with_sq3.iter()
                        .map(|a| json!({"name": catalog_name(a), "algebra": a.to_json_value()}))
                        .collect::<Vec<_>>(),
                })
            })
            .collect();
        print_json(&json!({"sizes": sizes, "report": report}));
    } else {
        for (n, total, simple, with_sq3) in &listing {
            println!("size {n}: {total} cibs, {simple} simple, {} simple with an sq3 subalgebra", with_sq3.len());
            for a in with_sq3 {
                let name = catalog_name(a).unwrap_or_else(|| "-".into());
                let rows: Vec<String> = (0..a.size())
                    .map(|x| (0..a.size()).map(|y| a.operations()[0].apply2(x, y).to_string()).collect())
                    .collect();
                println!("  {name:<8} {}", rows.join(" "));
            }
        }
        print!("{report}");
    }
    Ok(if report.all_pass() { 0 } else { 3 })
}

fn verify(suite: Option<&str>, max_size: Option<usize>, common: &Common) -> Result<u8, Failure> {
    let names: Vec<&str> = match suite {
        Some(s) if SUITES.contains(&s) => vec![s],
        Some(s) => return Err(Failure::Input(Error::Malformed(format!("unknown suite `{s}`")).into())),
        None => SUITES.to_vec(),
    };
    let d = TheoremOptions::default();
    let opts = TheoremOptions {
        bounds: common.bounds(),
        product_bound: max_size.unwrap_or(d.product_bound),
        allow_sampling: common.allow_subpower,
        seed: common.seed,
        ..d
    };
    let mut reports: Vec<VerificationReport> = Vec::new();
    for name in names {
        reports.push(run_suite(name, &opts)?);
    }
    let ok = reports.iter().all(VerificationReport::all_pass);
    if common.json {
        print_json(&json!({"pass": ok, "reports": reports}));
    } else {
        for r in &reports {
            print!("{r}");
        }
        println!("{}", if ok { "all suites pass" } else { "some suites FAIL" });
    }
    Ok(if ok { 0 } else { 3 })
}

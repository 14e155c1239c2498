use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};

use chaincode::additive::AdditiveFile;
use chaincode::census::audit::audit;
use chaincode::census::classify::{classify, EquivalenceGroup};
use chaincode::census::{budget_from_env, census_count, Predicate};
use chaincode::counting::{count_lcd_mixed, nonzero, CountSpec, ThetaVariant};
use chaincode::mixedcode::CodeFile;
use chaincode::{CodeType, EisensteinParams, Error, MixedAmbient, MixedCode, Side, SELECTED_THETA};

#[derive(Parser)]
#[command(name = "chaincode", version, about = "Counting, census and classification of mixed-alphabet chain ring codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form counts.
    Count(CountArgs),
    /// Exhaustive count of the codes of an ambient.
    Census(CensusArgs),
    /// Orbit representatives under monomial-type equivalence.
    Classify(CensusArgs),
    /// Inspect a single code read from a file.
    Code(CodeArgs),
    /// Compare the closed forms with the census on a fixed grid.
    Audit(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

/// The ambient, either as block lengths or as an additive code context.
#[derive(Args)]
struct AmbientArgs {
    #[arg(long)]
    p: u64,
    #[arg(long)]
    e: u32,
    #[arg(long)]
    n1: Option<usize>,
    #[arg(long)]
    n2: Option<usize>,
    /// Additive context: Galois ring degree.
    #[arg(long, requires = "n")]
    r: Option<usize>,
    /// Additive context: ramification index.
    #[arg(long, requires = "n")]
    k: Option<usize>,
    /// Additive context: number of top-level coordinates.
    #[arg(long, requires = "n")]
    t: Option<usize>,
    /// Additive context: code length over the ring.
    #[arg(long, conflicts_with_all = ["n1", "n2"])]
    n: Option<usize>,
}

enum Context {
    Mixed(MixedAmbient),
    Additive(EisensteinParams, usize),
}

impl AmbientArgs {
    fn context(&self) -> Result<Context, Error> {
        match (self.n, self.n1, self.n2) {
            (Some(n), _, _) => {
                let params = EisensteinParams::new(self.p, self.e, self.r.unwrap_or(1), self.k.unwrap_or(2), self.t.unwrap_or(1), None)?;
                Ok(Context::Additive(params, n))
            }
            (None, Some(n1), Some(n2)) => Ok(Context::Mixed(MixedAmbient::new(self.p, self.e, n1, n2)?)),
            _ => Err(Error::InvalidParams("give --n1 and --n2, or --n with optional --r --k --t".into())),
        }
    }

    fn ambient(&self) -> Result<MixedAmbient, Error> {
        match self.context()? {
            Context::Mixed(a) => Ok(a),
            Context::Additive(params, n) => MixedAmbient::new(params.p, params.e, n * params.hi_len(), n * params.lo_len()),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CountKind {
    So,
    Sd,
    #[value(alias = "lcd")]
    Acd,
    SdExists,
}

#[derive(Args)]
struct CountArgs {
    kind: CountKind,
    #[command(flatten)]
    ambient: AmbientArgs,
    /// Leave out the zero code.
    #[arg(long)]
    nonzero: bool,
    /// Restrict a self-orthogonal count to one type, e.g. `0,0,0,1;0,0,1`.
    #[arg(long = "type")]
    code_type: Option<String>,
    #[arg(long, default_value = SELECTED_THETA.name())]
    variant: String,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct CensusArgs {
    /// One of all, so, sd, lcd.
    predicate: String,
    #[command(flatten)]
    ambient: AmbientArgs,
    #[arg(long)]
    nonzero: bool,
    #[arg(long)]
    threads: Option<usize>,
    /// Largest ambient cardinality to walk; defaults to CHAINCODE_BUDGET.
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum CodeOp {
    Type,
    Dual,
    Torsion,
    Info,
    Canonical,
}

#[derive(Args)]
struct CodeArgs {
    op: CodeOp,
    #[arg(long = "in")]
    input: PathBuf,
    /// Read an additive code file instead of a mixed one.
    #[arg(long)]
    additive: bool,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct AuditArgs {
    /// Add the large self-orthogonal census point.
    #[arg(long)]
    extended: bool,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long)]
    budget: Option<u128>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

enum Failure {
    Usage(String),
    Budget(String),
    Mismatch(String),
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Parse(_)
            | Error::InvalidParams(_)
            | Error::LengthMismatch { .. }
            | Error::ShapeMismatch(_)
            | Error::Unsupported(_)
            | Error::EvenFieldOrder(_)
            | Error::IndexOutOfRange { .. }
            | Error::NonUnit(_) => Failure::Usage(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

fn parse_type(s: &str) -> Result<CodeType, Error> {
    let parse = |part: &str| -> Result<Vec<u32>, Error> {
        part.split(',')
            .filter(|x| !x.trim().is_empty())
            .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad type entry {x}"))))
            .collect()
    };
    let (k, l) = s.trim_matches(|c| c == '{' || c == '}').split_once(';').ok_or_else(|| Error::Parse(format!("type {s} needs k;l")))?;
    Ok(CodeType { ks: parse(k)?, ls: parse(l)? })
}

fn set_threads(threads: Option<usize>) -> Result<(), Failure> {
    if let Some(n) = threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Usage(e.to_string()))?;
    }
    Ok(())
}

/// CSV of one flat JSON object: a header row and a value row.
fn flat_csv(v: &Value) -> String {
    let cell = |x: &Value| match x {
        Value::String(s) => s.clone(),
        Value::Array(a) => a.iter().map(|y| y.to_string()).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    if let Value::Object(m) = v {
        w.write_record(m.keys()).expect("in-memory write");
        w.write_record(m.values().map(cell)).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

fn emit(format: Format, v: &Value) -> String {
    match format {
        Format::Json => serde_json::to_string(v).expect("plain data serializes"),
        Format::Csv => flat_csv(v),
    }
}

fn run_count(a: &CountArgs) -> Result<String, Failure> {
    let amb = a.ambient.ambient()?;
    let variant: ThetaVariant = a.variant.parse()?;
    let spec = || CountSpec::new(amb.p, amb.mu, amb.n1 as u32, amb.n2 as u32);
    let drop_zero = |n: BigUint| if a.nonzero { nonzero(&n) } else { n };
    let (kind, value) = match a.kind {
        CountKind::So => {
            let n = match &a.code_type {
                Some(t) => {
                    let t = parse_type(t)?;
                    let n = spec()?.count_so_typed_with(&t, variant)?;
                    if a.nonzero && t == CodeType::zero(amb.mu) {
                        nonzero(&n)
                    } else {
                        n
                    }
                }
                None => drop_zero(spec()?.count_so_total_with(variant)?),
            };
            ("so", json!(n.to_string()))
        }
        CountKind::Sd => ("sd", json!(spec()?.count_sd_total()?.to_string())),
        CountKind::Acd => {
            let n = count_lcd_mixed(amb.n1 as u32, amb.n2 as u32, amb.p, amb.mu)?;
            if !a.nonzero {
                eprintln!("note: the total includes the zero code; {} without it (--nonzero)", nonzero(&n));
            }
            ("acd", json!(drop_zero(n).to_string()))
        }
        CountKind::SdExists => ("sd_exists", json!(spec()?.sd_exists()?)),
    };
    Ok(match a.format {
        Format::Json => match &value {
            Value::String(s) => s.clone(),
            other => other.to_string(),
        },
        Format::Csv => flat_csv(&json!({ "kind": kind, "ambient": amb.to_string(), "count": value })),
    })
}

fn run_census(a: &CensusArgs) -> Result<String, Failure> {
    set_threads(a.threads)?;
    let amb = a.ambient.ambient()?;
    let pred: Predicate = a.predicate.parse()?;
    let report = census_count(amb, pred, a.budget.unwrap_or_else(budget_from_env))?;
    eprintln!("elapsed: {:.3}s", report.elapsed_secs);
    let report = if a.nonzero { report.without_zero() } else { report };
    Ok(match a.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    })
}

fn run_classify(a: &CensusArgs) -> Result<String, Failure> {
    set_threads(a.threads)?;
    let amb = a.ambient.ambient()?;
    let group = match a.ambient.context()? {
        Context::Additive(params, n) => EquivalenceGroup::new(&params, n)?,
        Context::Mixed(amb) => EquivalenceGroup::for_ambient(&amb)?,
    };
    let pred: Predicate = a.predicate.parse()?;
    let report = classify(amb, pred, &group, a.nonzero, a.budget.unwrap_or_else(budget_from_env))?;
    Ok(match a.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    })
}

fn torsion_rows(c: &MixedCode, side: Side, levels: u32) -> Result<Vec<Vec<Vec<u64>>>, Error> {
    (1..=levels as usize).map(|i| Ok(c.torsion(i, side)?.to_rows())).collect()
}

fn run_code(a: &CodeArgs) -> Result<String, Failure> {
    let (code, additive) = if a.additive {
        let file = AdditiveFile::read(&a.input)?;
        let code = file.to_code()?;
        (code.image.clone(), Some(code))
    } else {
        (CodeFile::read(&a.input)?.to_code()?, None)
    };
    let amb = code.ambient;
    let value = match a.op {
        CodeOp::Type => serde_json::to_value(code.type_of()).expect("plain data serializes"),
        CodeOp::Dual => match &additive {
            Some(c) => serde_json::to_value(c.chi_dual().to_file()).expect("plain data serializes"),
            None => serde_json::to_value(code.dual().to_file()).expect("plain data serializes"),
        },
        CodeOp::Torsion => json!({
            "x": torsion_rows(&code, Side::X, amb.mu)?,
            "y": torsion_rows(&code, Side::Y, amb.mu - 1)?,
        }),
        CodeOp::Info => {
            let hom = if amb.mu == 2 && amb.n1 == amb.n2 && !code.is_zero() { Some(code.min_hom_distance()?) } else { None };
            json!({
                "ambient": amb.to_string(),
                "cardinality": code.cardinality().to_string(),
                "type": code.type_of(),
                "self_orthogonal": code.is_self_orthogonal(),
                "self_dual": code.is_self_dual(),
                "lcd": code.is_lcd(),
                "hom_distance": hom,
            })
        }
        CodeOp::Canonical => {
            let group = match &additive {
                Some(c) => EquivalenceGroup::new(&c.params, c.n)?,
                None => EquivalenceGroup::for_ambient(&amb)?,
            };
            serde_json::to_value(group.canonical_rep(&code)?.to_file()).expect("plain data serializes")
        }
    };
    Ok(emit(a.format, &value))
}

fn run_audit(a: &AuditArgs) -> Result<String, Failure> {
    set_threads(a.threads)?;
    let report = audit(a.budget.unwrap_or_else(budget_from_env), a.extended)?;
    let out = match a.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    if report.passed() {
        Ok(out)
    } else {
        print_out(&out);
        Err(Failure::Mismatch("formula and census disagree".into()))
    }
}

fn print_out(out: &str) {
    let mut stdout = std::io::stdout().lock();
    let _ = stdout.write_all(out.as_bytes());
    if !out.ends_with('\n') {
        let _ = stdout.write_all(b"\n");
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Count(a) => run_count(a),
        Command::Census(a) => run_census(a),
        Command::Classify(a) => run_classify(a),
        Command::Code(a) => run_code(a),
        Command::Audit(a) => run_audit(a),
    };
    match result {
        Ok(out) => {
            print_out(&out);
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m) | Failure::Mismatch(m) | Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

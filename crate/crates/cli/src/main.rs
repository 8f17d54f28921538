use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use logiqec::code_builder::{build_coset_code, build_matrix_code, build_mds_family};
use logiqec::fp_algebra::{FpMatrix, FpVec};
use logiqec::graph_codes::{corollary1_build, theorem2_check, VertexSet, WeightedGraph};
use logiqec::logic_fn::{
    apc_distance, autocorrelation_spectrum, is_bent, parse_function_file, zset,
    zset_via_autocorrelation, LogicFunction,
};
use logiqec::projector_codes::{
    bent_exclusion, build_projector, extract_all, extract_boolean_basis, lemma3_check,
    shift_generator_matrix,
};
use logiqec::state_oracle::{min_distance, Distance, StateVector, VerifyReport};
use logiqec::{CodeSpec, Error};

const EXIT_FAIL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_CAPACITY: u8 = 3;

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Io { .. } | CliError::Input(_) => EXIT_INPUT,
            CliError::Core(e) if e.is_capacity() => EXIT_CAPACITY,
            CliError::Core(
                Error::DependentShifts { .. }
                | Error::NoQuadraticSolution
                | Error::VerificationMismatch(_)
                | Error::NonOrthogonalBasis { .. },
            ) => EXIT_FAIL,
            CliError::Core(_) => EXIT_INPUT,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "logiqec",
    version,
    about = "Quantum codes from logic functions and graphs"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(1..))]
    jobs: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// APC distance of a function and its witness label.
    Apc {
        function: PathBuf,
        /// Cross-check against the oracle distance of the single state.
        #[arg(long)]
        verify: bool,
    },
    /// Shifts a with Σ f(x) f(x+a) = 0 (p = 2).
    Zset {
        function: PathBuf,
        /// Compute through the autocorrelation spectrum instead.
        #[arg(long)]
        via_autocorrelation: bool,
    },
    /// Bentness and autocorrelation summary (p = 2).
    Bent { function: PathBuf },
    /// Code from a graph and vertex classes; always oracle-checked.
    GraphCode {
        graph: PathBuf,
        /// One vertex set per line, as `{1,2}` or a 0/1 string.
        #[arg(long)]
        classes: PathBuf,
        #[arg(long)]
        d: usize,
        /// Accepted for uniformity; graph codes are always verified.
        #[arg(long)]
        verify: bool,
    },
    /// Rank criteria on a symmetric matrix given as a graph file.
    MatrixCheck {
        matrix: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        d: usize,
        /// Emit the code spec when accepted.
        #[arg(long)]
        build: bool,
        /// Run the oracle on the built code.
        #[arg(long, requires = "build")]
        verify: bool,
    },
    /// Coset code with basis f(x) + β_i·x.
    CosetCode {
        function: PathBuf,
        /// Comma-separated digit strings, e.g. `0000,1100`.
        #[arg(long, value_delimiter = ',', required = true)]
        betas: Vec<String>,
        #[arg(long)]
        verify: bool,
    },
    /// Premises, projector and optional basis for a function and generator matrix.
    Projector {
        function: PathBuf,
        /// Generator matrix file; derived from the derivatives of f when omitted.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        extract_basis: bool,
    },
    /// The [[2m, 2m-2, 2]] family.
    Mds {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Quadratic basis functions for support points of f.
    SolveBasis {
        function: PathBuf,
        #[arg(long)]
        matrix: Option<PathBuf>,
        /// A single support point; all of them when omitted.
        #[arg(long)]
        t: Option<String>,
    },
    /// Knill-Laflamme check of a code spec.
    Verify {
        spec: PathBuf,
        /// Defaults to claimed_d - 1.
        #[arg(long)]
        max_weight: Option<usize>,
        /// Also search the true distance.
        #[arg(long)]
        distance: bool,
    },
}

struct Outcome {
    text: String,
    json: Value,
    code: u8,
}

impl Outcome {
    fn ok(text: String, json: Value) -> Self {
        Outcome {
            text,
            json,
            code: 0,
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

fn read_function(path: &Path) -> CliResult<LogicFunction> {
    Ok(parse_function_file(&read(path)?)?)
}

fn read_generators(f: &LogicFunction, path: Option<&Path>) -> CliResult<FpMatrix> {
    match path {
        Some(path) => Ok(FpMatrix::parse(&read(path)?)?),
        None => Ok(shift_generator_matrix(f)?),
    }
}

fn matrix_rows(m: &FpMatrix) -> Vec<String> {
    (0..m.rows()).map(|r| m.row(r).to_string()).collect()
}

fn report_text(r: &VerifyReport) -> String {
    let mut out = format!(
        "oracle: {} up to weight {} ({} failures)",
        if r.passed() { "pass" } else { "fail" },
        r.max_weight,
        r.failures.len()
    );
    if let Some(f) = r.failures.first() {
        out += &format!(
            "\n  first failure: ({}|{}) {:?} at ({}, {})",
            f.a, f.b, f.kind, f.i, f.j
        );
    }
    out
}

fn report_json(r: &VerifyReport) -> Value {
    serde_json::to_value(r).expect("report serializes")
}

fn spec_text(spec: &CodeSpec) -> String {
    let mut out = format!("{} [{}]", spec.params(), spec.provenance());
    for (i, g) in spec.basis().iter().enumerate() {
        out += &format!("\n  g{} = {}", i + 1, g.anf_string());
    }
    out
}

/// Spec plus the optional oracle report; exit 1 when the oracle rejects the claim.
fn spec_outcome(spec: &CodeSpec, verify: bool, extra: String) -> CliResult<Outcome> {
    let mut text = extra + &spec_text(spec);
    let mut json = json!({ "spec": spec.to_json_value() });
    let mut code = 0;
    if verify {
        let report = spec.verify_claimed()?;
        text += &format!("\n{}", report_text(&report));
        json["report"] = report_json(&report);
        if !report.passed() {
            code = EXIT_FAIL;
        }
    }
    Ok(Outcome { text, json, code })
}

fn distance_value(d: Distance) -> Value {
    match d {
        Distance::Exact(d) => json!(d),
        Distance::AboveCap(c) => json!(format!("> {c}")),
    }
}

fn cmd_apc(path: &Path, verify: bool) -> CliResult<Outcome> {
    let f = read_function(path)?;
    let r = apc_distance(&f)?;
    let mut text = format!("APC distance {} witness {}", r.distance, r.witness);
    let mut json = json!({ "distance": r.distance, "witness": r.witness.to_string() });
    let mut code = 0;
    if verify {
        let d = min_distance(&[StateVector::<i64>::from_function(&f)], f.n())?;
        text += &format!("\noracle distance {d}");
        json["oracle_distance"] = distance_value(d);
        if d != Distance::Exact(r.distance) {
            code = EXIT_FAIL;
        }
    }
    Ok(Outcome { text, json, code })
}

fn cmd_zset(path: &Path, via_autocorrelation: bool) -> CliResult<Outcome> {
    let f = read_function(path)?;
    let z = if via_autocorrelation {
        zset_via_autocorrelation(&f)?
    } else {
        zset(&f)?
    };
    let items: Vec<String> = z.iter().map(FpVec::to_string).collect();
    let text = format!("Zset ({} elements): {}", items.len(), items.join(" "));
    Ok(Outcome::ok(text, json!({ "n": f.n(), "zset": items })))
}

fn cmd_bent(path: &Path) -> CliResult<Outcome> {
    let f = read_function(path)?;
    // odd n admits no bent function
    let bent = if f.p().is_two() && f.n() % 2 == 1 {
        false
    } else {
        is_bent(&f)?
    };
    let spectrum = autocorrelation_spectrum(&f)?;
    let nonzero = spectrum.iter().skip(1).filter(|&&r| r != 0).count();
    let text = format!(
        "{} (support size {}, nonzero autocorrelations off 0: {nonzero})",
        if bent { "bent" } else { "not bent" },
        f.weight()
    );
    Ok(Outcome::ok(
        text,
        json!({ "bent": bent, "weight": f.weight(), "autocorrelation": spectrum }),
    ))
}

fn read_classes(path: &Path, n: usize) -> CliResult<Vec<VertexSet>> {
    read(path)?
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty())
        .map(|l| VertexSet::parse(l, n).map_err(CliError::from))
        .collect()
}

fn cmd_graph_code(graph: &Path, classes: &Path, d: usize) -> CliResult<Outcome> {
    let g = WeightedGraph::parse(&read(graph)?)?;
    let classes = read_classes(classes, g.n())?;
    let spec = corollary1_build(&g, &classes, d)?;
    spec_outcome(&spec, true, String::new())
}

fn cmd_matrix_check(
    path: &Path,
    k: usize,
    d: usize,
    build: bool,
    verify: bool,
) -> CliResult<Outcome> {
    let a = WeightedGraph::parse(&read(path)?)?.adj().clone();
    let check = theorem2_check(&a, k, d)?;
    let mut text = String::new();
    let mut json = json!({ "n": check.n, "k": k, "d": d, "accepted": check.accepted() });
    if let Some(w) = &check.warning {
        text += &format!("warning: {w}\n");
        json["warning"] = json!(w);
    }
    if let Some(fail) = &check.failure {
        text += &format!("rejected: E = {:?} fails {}", fail.e, fail.condition);
        json["failure"] = json!({ "e": fail.e, "condition": fail.condition.to_string() });
        return Ok(Outcome {
            text,
            json,
            code: EXIT_FAIL,
        });
    }
    text += &format!("accepted [[{}, {k}, {d}]]_{}", check.n, a.p());
    if !build {
        return Ok(Outcome::ok(text, json));
    }
    let spec = build_matrix_code(&a, k, d)?;
    let mut out = spec_outcome(&spec, verify, text + "\n")?;
    out.json["check"] = json;
    Ok(out)
}

fn cmd_coset_code(path: &Path, betas: &[String], verify: bool) -> CliResult<Outcome> {
    let f = read_function(path)?;
    let betas = betas
        .iter()
        .map(|b| FpVec::parse_digits(f.p(), b).map_err(CliError::from))
        .collect::<CliResult<Vec<_>>>()?;
    let spec = build_coset_code(&f, &betas)?;
    spec_outcome(&spec, verify, String::new())
}

fn cmd_projector(path: &Path, matrix: Option<&Path>, extract: bool) -> CliResult<Outcome> {
    let f = read_function(path)?;
    let a = read_generators(&f, matrix)?;
    if f.n() > 2 && bent_exclusion(&f)? {
        let msg = "f is bent, so no generator matrix can satisfy the premises";
        return Ok(Outcome {
            text: format!("rejected: {msg}"),
            json: json!({ "bent": true, "error": msg }),
            code: EXIT_FAIL,
        });
    }
    let premises = lemma3_check(&f, &a)?;
    let mut text = format!("A_f rows: {}", matrix_rows(&a).join(" "));
    let mut conditions = Vec::new();
    for (name, ok, detail) in premises.conditions() {
        text += &format!("\n{name}: {} ({detail})", if ok { "pass" } else { "FAIL" });
        conditions.push(json!({ "condition": name, "passed": ok, "detail": detail }));
    }
    let mut json = json!({
        "A_f": matrix_rows(&a),
        "premises": conditions,
        "passed": premises.passed(),
    });
    let code = if premises.passed() { 0 } else { EXIT_FAIL };
    let projector = match build_projector(&f, &a) {
        Ok(p) => p,
        Err(Error::Precondition(msg)) => {
            text += &format!("\nprojector unavailable: {msg}");
            json["error"] = json!(msg);
            return Ok(Outcome {
                text,
                json,
                code: EXIT_FAIL,
            });
        }
        Err(e) => return Err(e.into()),
    };
    let trace = projector.trace();
    let rank = projector.rank()?;
    let idempotent = projector.is_idempotent();
    let trace_text = trace.map_or("non-integral".to_string(), |t| t.to_string());
    text += &format!("\nprojector: trace {trace_text} rank {rank} idempotent {idempotent}");
    json["projector"] = json!({ "trace": trace, "rank": rank, "idempotent": idempotent });
    if extract {
        let basis: Vec<LogicFunction> = extract_all(&f, &a)?.into_iter().map(|(_, g)| g).collect();
        let spec = CodeSpec::new(basis, 2, format!("projector f={}", f.anf_string()))?;
        let report = spec.verify_claimed()?;
        text += &format!("\n{}\n{}", spec_text(&spec), report_text(&report));
        json["spec"] = spec.to_json_value();
        json["report"] = report_json(&report);
        if !report.passed() {
            return Ok(Outcome {
                text,
                json,
                code: EXIT_FAIL,
            });
        }
    }
    Ok(Outcome { text, json, code })
}

fn cmd_mds(m: usize, verify: bool) -> CliResult<Outcome> {
    let spec = build_mds_family(m)?;
    spec_outcome(&spec, verify, String::new())
}

fn cmd_solve_basis(path: &Path, matrix: Option<&Path>, t: Option<&str>) -> CliResult<Outcome> {
    let f = read_function(path)?;
    let a = read_generators(&f, matrix)?;
    let solved = match t {
        Some(t) => {
            let t = FpVec::parse_digits(f.p(), t)?;
            let g = extract_boolean_basis(&f, &a, &t)?;
            vec![(t, g)]
        }
        None => extract_all(&f, &a)?,
    };
    let text = solved
        .iter()
        .map(|(t, g)| format!("t = {t}: {}", g.anf_string()))
        .collect::<Vec<_>>()
        .join("\n");
    let items: Vec<Value> = solved
        .iter()
        .map(|(t, g)| json!({ "t": t.to_string(), "anf": g.anf_string() }))
        .collect();
    Ok(Outcome::ok(text, json!({ "basis": items })))
}

/// Accepts a bare spec or any object holding one under `spec`.
fn read_spec(path: &Path) -> CliResult<CodeSpec> {
    let value: Value = serde_json::from_str(&read(path)?)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let value = match value.get("spec") {
        Some(inner) => inner.clone(),
        None => value,
    };
    Ok(CodeSpec::from_json_value(value)?)
}

fn cmd_verify(path: &Path, max_weight: Option<usize>, distance: bool) -> CliResult<Outcome> {
    let spec = read_spec(path)?;
    let report = match max_weight {
        Some(w) => spec.verify(w)?,
        None => spec.verify_claimed()?,
    };
    let code = if report.passed() { 0 } else { EXIT_FAIL };
    let mut text = format!("{}\n{}", spec.params(), report_text(&report));
    let mut json = report_json(&report);
    if distance {
        let d = spec.true_distance(spec.n())?;
        text += &format!("\ndistance {d}");
        json = json!({ "report": json, "distance": distance_value(d) });
    }
    Ok(Outcome { text, json, code })
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Apc { function, verify } => cmd_apc(function, *verify),
        Command::Zset {
            function,
            via_autocorrelation,
        } => cmd_zset(function, *via_autocorrelation),
        Command::Bent { function } => cmd_bent(function),
        Command::GraphCode {
            graph, classes, d, ..
        } => cmd_graph_code(graph, classes, *d),
        Command::MatrixCheck {
            matrix,
            k,
            d,
            build,
            verify,
        } => cmd_matrix_check(matrix, *k, *d, *build, *verify),
        Command::CosetCode {
            function,
            betas,
            verify,
        } => cmd_coset_code(function, betas, *verify),
        Command::Projector {
            function,
            matrix,
            extract_basis,
        } => cmd_projector(function, matrix.as_deref(), *extract_basis),
        Command::Mds { m, verify } => cmd_mds(*m, *verify),
        Command::SolveBasis {
            function,
            matrix,
            t,
        } => cmd_solve_basis(function, matrix.as_deref(), t.as_deref()),
        Command::Verify {
            spec,
            max_weight,
            distance,
        } => cmd_verify(spec, *max_weight, *distance),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs as usize)
            .build_global()
        {
            eprintln!("error: cannot configure {jobs} workers: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(out) => {
            match cli.format {
                Format::Text => println!("{}", out.text),
                Format::Json => println!("{}", out.json),
            }
            ExitCode::from(out.code)
        }
        Err(e) => {
            match cli.format {
                Format::Text => eprintln!("error: {e}"),
                Format::Json => {
                    println!(
                        "{}",
                        json!({ "error": e.to_string(), "exit_code": e.exit_code() })
                    )
                }
            }
            ExitCode::from(e.exit_code())
        }
    }
}

//! Command-line front end.
//!
//! Exit codes: 0 the system is noncontextual, 1 contextual, 2 usage or
//! input error, 3 size-cap or scale error (also used when an `--oracle`
//! cross-check disagrees, which should never happen).

mod report;

use cbd::contextuality::{
    decide_noncontextuality, decision_lp, degree_lp, is_consistently_connected, ContextualityError,
    Mode,
};
use cbd::coupling::{CouplingError, DEFAULT_MAX_ASSIGNMENTS};
use cbd::format::parse_system;
use cbd::lp::{brute_force_solve, simplex_solve, LpError, LpStatus};
use cbd::rational::{format_rational, parse_rational, Rational};
use cbd::scenarios::{make_cyclic4, make_double_slit, make_griffiths, Cyclic4Params};
use cbd::system::System;
use clap::{Args, Parser, Subcommand, ValueEnum};
use report::{build_report, OracleEntry};
use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

/// Environment variable overriding the default cap on global assignments.
const MAX_ASSIGNMENTS_ENV: &str = "CBD_MAX_ASSIGNMENTS";

#[derive(Parser)]
#[command(
    name = "cbd",
    version,
    about = "Decide contextuality of systems of contextually labeled random variables",
    long_about = "Builds the coupling polytope of a system exactly and decides by exact \
                  linear programming whether couplings with the required pairwise \
                  equality probabilities exist. Exit codes: 0 noncontextual, 1 \
                  contextual, 2 usage/input error, 3 size-cap error or oracle \
                  disagreement."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze one or more system files
    Analyze {
        /// System files to analyze, in report order
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[command(flatten)]
        opts: AnalysisOpts,
    },
    /// Build a named scenario and analyze it
    Scenario {
        #[command(subcommand)]
        which: ScenarioCommand,
    },
    /// Check a directory of <name>.system / <name>.expected pairs
    CorpusCheck {
        dir: PathBuf,
        /// Cross-check every entry against the brute-force solver
        #[arg(long)]
        oracle: bool,
    },
}

#[derive(Args, Clone)]
struct AnalysisOpts {
    /// strict: probability-1 identification (requires consistent
    /// connectedness); extended: maximal pair-equality probabilities
    #[arg(long, value_enum, default_value_t = ModeArg::Extended)]
    mode: ModeArg,
    /// Compute and report the contextuality degree (one extra optimization)
    #[arg(long)]
    degree: bool,
    /// Report a witness coupling when one exists (nonzero rows only)
    #[arg(long)]
    witness: bool,
    /// Re-decide with the brute-force solver and fail loudly on disagreement
    #[arg(long)]
    oracle: bool,
    /// Cap on the number of global assignments (default 2^20; env
    /// CBD_MAX_ASSIGNMENTS also applies, flag wins)
    #[arg(long)]
    max_assignments: Option<usize>,
    /// Machine-readable JSON instead of the line-oriented report
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct ScenarioOpts {
    #[command(flatten)]
    analysis: AnalysisOpts,
    /// Print the system in canonical file form instead of analyzing it
    #[arg(long)]
    emit_system: bool,
}

#[derive(Subcommand)]
enum ScenarioCommand {
    /// One binary content recorded under four slit arrangements
    DoubleSlit {
        /// Detection probability with both slits closed
        #[arg(long, value_parser = rational_arg, default_value = "0")]
        p1: Rational,
        /// Detection probability with only the left slit open
        #[arg(long, value_parser = rational_arg, default_value = "1/4")]
        p2: Rational,
        /// Detection probability with only the right slit open
        #[arg(long, value_parser = rational_arg, default_value = "1/4")]
        p3: Rational,
        /// Detection probability with both slits open
        #[arg(long, value_parser = rational_arg, default_value = "1/3")]
        p4: Rational,
        #[command(flatten)]
        opts: ScenarioOpts,
    },
    /// Eight binary variables in four two-variable bunches forming a cycle
    Cyclic4 {
        /// Product expectations for contexts c1..c4 (pairs (A1,B1), (B1,A2),
        /// (A2,B2), (B2,A1)), comma separated
        #[arg(long, value_parser = rational_arg, value_delimiter = ',', default_value = "0,0,0,0")]
        e: Vec<Rational>,
        /// Marginal expectations of the eight variables in context order
        /// (first member then second member per context), comma separated
        #[arg(long, value_parser = rational_arg, value_delimiter = ',', default_value = "0,0,0,0,0,0,0,0")]
        m: Vec<Rational>,
        #[command(flatten)]
        opts: ScenarioOpts,
    },
    /// Two contexts over three binary contents with the middle one shared
    Griffiths {
        /// Joint pmf of (q1, q2) in context c1: cells (+1,+1), (+1,-1),
        /// (-1,+1), (-1,-1), comma separated
        #[arg(long, value_parser = rational_arg, value_delimiter = ',', default_value = "1/4,1/4,1/4,1/4")]
        b1: Vec<Rational>,
        /// Joint pmf of (q2, q3) in context c2, same cell order
        #[arg(long, value_parser = rational_arg, value_delimiter = ',', default_value = "1/4,1/4,1/4,1/4")]
        b2: Vec<Rational>,
        #[command(flatten)]
        opts: ScenarioOpts,
    },
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Strict,
    Extended,
}

impl From<ModeArg> for Mode {
    fn from(arg: ModeArg) -> Mode {
        match arg {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Extended => Mode::Extended,
        }
    }
}

fn rational_arg(text: &str) -> Result<Rational, String> {
    parse_rational(text).map_err(|e| e.to_string())
}

struct CliError {
    code: u8,
    message: String,
}

fn input_error(message: impl Display) -> CliError {
    CliError {
        code: 2,
        message: message.to_string(),
    }
}

fn scale_error(message: impl Display) -> CliError {
    CliError {
        code: 3,
        message: message.to_string(),
    }
}

impl From<ContextualityError> for CliError {
    fn from(err: ContextualityError) -> CliError {
        match &err {
            ContextualityError::StrictModeInconsistent => input_error(err),
            ContextualityError::System(_) => input_error(err),
            ContextualityError::Coupling(CouplingError::TooLarge { .. }) => scale_error(err),
            ContextualityError::Coupling(_) => input_error(err),
            ContextualityError::Lp(LpError::OracleScale { .. }) => scale_error(err),
            ContextualityError::Lp(_) => scale_error(err),
        }
    }
}

impl From<LpError> for CliError {
    fn from(err: LpError) -> CliError {
        scale_error(err)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Analyze { files, opts } => run_analyze(&files, &opts),
        Command::Scenario { which } => run_scenario(which),
        Command::CorpusCheck { dir, oracle } => run_corpus_check(&dir, oracle),
    };
    ExitCode::from(code)
}

fn run_analyze(files: &[PathBuf], opts: &AnalysisOpts) -> u8 {
    let mut worst = 0u8;
    for file in files {
        let code = match analyze_file(file, opts) {
            Ok(code) => code,
            Err(err) => {
                eprintln!("error: {}: {}", file.display(), err.message);
                err.code
            }
        };
        worst = worst.max(code);
    }
    worst
}

fn analyze_file(file: &Path, opts: &AnalysisOpts) -> Result<u8, CliError> {
    let text =
        std::fs::read_to_string(file).map_err(|e| input_error(format!("cannot read file: {e}")))?;
    let system = parse_system(&text).map_err(input_error)?;
    let (rendered, code) = analyze_system(&file.display().to_string(), &system, opts)?;
    print!("{rendered}");
    Ok(code)
}

fn run_scenario(which: ScenarioCommand) -> u8 {
    let built: Result<(System, String, ScenarioOpts), CliError> = match which {
        ScenarioCommand::DoubleSlit {
            p1,
            p2,
            p3,
            p4,
            opts,
        } => make_double_slit(p1, p2, p3, p4)
            .map(|s| (s, "scenario:double-slit".to_string(), opts))
            .map_err(input_error),
        ScenarioCommand::Cyclic4 { e, m, opts } => {
            build_cyclic4(e, m).map(|s| (s, "scenario:cyclic4".to_string(), opts))
        }
        ScenarioCommand::Griffiths { b1, b2, opts } => {
            build_griffiths(b1, b2).map(|s| (s, "scenario:griffiths".to_string(), opts))
        }
    };
    let (system, name, opts) = match built {
        Ok(v) => v,
        Err(err) => {
            eprintln!("error: {}", err.message);
            return err.code;
        }
    };
    if opts.emit_system {
        print!("{}", cbd::format::serialize_system(&system));
        return 0;
    }
    match analyze_system(&name, &system, &opts.analysis) {
        Ok((rendered, code)) => {
            print!("{rendered}");
            code
        }
        Err(err) => {
            eprintln!("error: {}: {}", name, err.message);
            err.code
        }
    }
}

fn build_cyclic4(e: Vec<Rational>, m: Vec<Rational>) -> Result<System, CliError> {
    let e: [Rational; 4] = e
        .try_into()
        .map_err(|v: Vec<_>| input_error(format!("--e needs 4 values, got {}", v.len())))?;
    if m.len() != 8 {
        return Err(input_error(format!("--m needs 8 values, got {}", m.len())));
    }
    let mut marginals = Vec::new();
    for pair in m.chunks(2) {
        marginals.push((pair[0].clone(), pair[1].clone()));
    }
    let params = Cyclic4Params {
        expectations: e,
        marginals: marginals.try_into().unwrap(),
    };
    make_cyclic4(&params).map_err(input_error)
}

fn build_griffiths(b1: Vec<Rational>, b2: Vec<Rational>) -> Result<System, CliError> {
    let b1: [Rational; 4] = b1
        .try_into()
        .map_err(|v: Vec<_>| input_error(format!("--b1 needs 4 values, got {}", v.len())))?;
    let b2: [Rational; 4] = b2
        .try_into()
        .map_err(|v: Vec<_>| input_error(format!("--b2 needs 4 values, got {}", v.len())))?;
    make_griffiths(&b1, &b2).map_err(input_error)
}

fn resolve_cap(opts: &AnalysisOpts) -> Result<usize, CliError> {
    if let Some(cap) = opts.max_assignments {
        return Ok(cap);
    }
    match std::env::var(MAX_ASSIGNMENTS_ENV) {
        Ok(text) => text.trim().parse().map_err(|_| {
            input_error(format!(
                "{MAX_ASSIGNMENTS_ENV} must be a positive integer, got `{text}`"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_ASSIGNMENTS),
    }
}

fn status_name(status: LpStatus) -> &'static str {
    match status {
        LpStatus::Feasible => "feasible",
        LpStatus::Optimal => "optimal",
        LpStatus::Infeasible => "infeasible",
    }
}

/// Full analysis of one system: verdict, optional degree, optional witness,
/// optional oracle cross-check. Returns the rendered report and exit code.
fn analyze_system(
    input: &str,
    system: &System,
    opts: &AnalysisOpts,
) -> Result<(String, u8), CliError> {
    let cap = resolve_cap(opts)?;
    let mode: Mode = opts.mode.into();
    let start = Instant::now();

    let connectedness = is_consistently_connected(system);
    let verdict = decide_noncontextuality(system, mode, cap)?;

    let mut disagreement = false;
    let oracle = if opts.oracle {
        let clp = decision_lp(system, mode, cap)?;
        let simplex_status = simplex_solve(clp.lp())?.status;
        let brute_status = brute_force_solve(clp.lp())?.status;
        let mut agree =
            (simplex_status == LpStatus::Infeasible) == (brute_status == LpStatus::Infeasible);
        let (mut simplex_degree, mut brute_degree) = (None, None);
        if opts.degree {
            let dlp = degree_lp(system, cap)?;
            let s = simplex_solve(dlp.lp())?
                .objective_value
                .map(|v| -v)
                .ok_or_else(|| scale_error("degree program returned no objective"))?;
            let b = brute_force_solve(dlp.lp())?
                .objective_value
                .map(|v| -v)
                .ok_or_else(|| scale_error("degree program returned no objective"))?;
            if s != b {
                agree = false;
            }
            simplex_degree = Some(format_rational(&s));
            brute_degree = Some(format_rational(&b));
        }
        disagreement = !agree;
        Some(OracleEntry {
            agree,
            simplex: status_name(simplex_status).to_string(),
            brute_force: status_name(brute_status).to_string(),
            simplex_degree,
            brute_force_degree: brute_degree,
        })
    } else {
        None
    };

    let report = build_report(
        input,
        system,
        &connectedness,
        &verdict,
        opts.degree,
        opts.witness,
        oracle,
    );
    let rendered = if opts.json {
        report.render_json()
    } else {
        report.render_human()
    };
    eprintln!("{} analyzed in {:?}", input, start.elapsed());

    if disagreement {
        eprintln!("error: {input}: solver routes disagree; this is a bug");
        return Ok((rendered, 3));
    }
    Ok((rendered, if verdict.noncontextual { 0 } else { 1 }))
}

struct Expected {
    mode: Mode,
    noncontextual: bool,
    degree: Rational,
}

fn parse_expected(text: &str, path: &Path) -> Result<Expected, CliError> {
    let mut mode = None;
    let mut noncontextual = None;
    let mut degree = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let keyword = parts.next().unwrap_or("");
        let value = parts.next().unwrap_or("");
        let complain =
            |what: &str| input_error(format!("{}: line {}: {what}", path.display(), idx + 1));
        match keyword {
            "mode" => {
                mode = Some(match value {
                    "strict" => Mode::Strict,
                    "extended" => Mode::Extended,
                    _ => return Err(complain("mode must be strict or extended")),
                })
            }
            "verdict" => {
                noncontextual = Some(match value {
                    "noncontextual" => true,
                    "contextual" => false,
                    _ => return Err(complain("verdict must be contextual or noncontextual")),
                })
            }
            "degree" => {
                degree =
                    Some(parse_rational(value).map_err(|e| complain(&format!("bad degree: {e}")))?)
            }
            _ => return Err(complain("unknown keyword")),
        }
    }
    let err = |what: &str| input_error(format!("{}: missing `{what}` line", path.display()));
    Ok(Expected {
        mode: mode.ok_or_else(|| err("mode"))?,
        noncontextual: noncontextual.ok_or_else(|| err("verdict"))?,
        degree: degree.ok_or_else(|| err("degree"))?,
    })
}

/// Runs the analysis over every `<name>.system` / `<name>.expected` pair in
/// a directory and compares verdicts and degrees. Exit 0 when everything
/// matches, 1 on any mismatch, 2 on missing or malformed files.
fn run_corpus_check(dir: &Path, oracle: bool) -> u8 {
    let mut entries: Vec<PathBuf> = match std::fs::read_dir(dir) {
        Ok(iter) => iter
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|ext| ext == "system"))
            .collect(),
        Err(e) => {
            eprintln!("error: cannot read corpus directory {}: {e}", dir.display());
            return 2;
        }
    };
    entries.sort();
    if entries.is_empty() {
        eprintln!("error: no .system files in {}", dir.display());
        return 2;
    }

    let mut failures = 0usize;
    let mut errors = 0usize;
    for system_path in &entries {
        let name = system_path
            .file_stem()
            .map(|s| s.to_string_lossy().to_string())
            .unwrap_or_default();
        match check_corpus_entry(system_path, oracle) {
            Ok(Some(diff)) => {
                println!("{name}: MISMATCH ({diff})");
                failures += 1;
            }
            Ok(None) => println!("{name}: ok"),
            Err(err) => {
                println!("{name}: ERROR ({})", err.message);
                errors += 1;
            }
        }
    }
    println!(
        "corpus: {} entries, {} mismatches, {} errors",
        entries.len(),
        failures,
        errors
    );
    if errors > 0 {
        2
    } else if failures > 0 {
        1
    } else {
        0
    }
}

fn check_corpus_entry(system_path: &Path, oracle: bool) -> Result<Option<String>, CliError> {
    let expected_path = system_path.with_extension("expected");
    let system_text = std::fs::read_to_string(system_path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", system_path.display())))?;
    let expected_text = std::fs::read_to_string(&expected_path)
        .map_err(|e| input_error(format!("cannot read {}: {e}", expected_path.display())))?;
    let system = parse_system(&system_text).map_err(input_error)?;
    let expected = parse_expected(&expected_text, &expected_path)?;

    let verdict = decide_noncontextuality(&system, expected.mode, DEFAULT_MAX_ASSIGNMENTS)?;
    if verdict.noncontextual != expected.noncontextual {
        return Ok(Some(format!(
            "expected {}, got {}",
            verdict_name(expected.noncontextual),
            verdict_name(verdict.noncontextual)
        )));
    }
    if verdict.degree != expected.degree {
        return Ok(Some(format!(
            "expected degree {}, got {}",
            format_rational(&expected.degree),
            format_rational(&verdict.degree)
        )));
    }
    if oracle {
        let clp = decision_lp(&system, expected.mode, DEFAULT_MAX_ASSIGNMENTS)?;
        let brute = brute_force_solve(clp.lp())?;
        let brute_noncontextual = brute.status != LpStatus::Infeasible;
        if brute_noncontextual != verdict.noncontextual {
            return Ok(Some(
                "brute-force solver disagrees with simplex".to_string(),
            ));
        }
        let dlp = degree_lp(&system, DEFAULT_MAX_ASSIGNMENTS)?;
        let brute_degree = brute_force_solve(dlp.lp())?
            .objective_value
            .map(|v| -v)
            .ok_or_else(|| scale_error("degree program returned no objective"))?;
        if brute_degree != verdict.degree {
            return Ok(Some(format!(
                "brute-force degree {} disagrees with simplex degree {}",
                format_rational(&brute_degree),
                format_rational(&verdict.degree)
            )));
        }
    }
    Ok(None)
}

fn verdict_name(noncontextual: bool) -> &'static str {
    if noncontextual {
        "noncontextual"
    } else {
        "contextual"
    }
}

//! `cwwkit`: validate codebooks and evaluate student feedback batches.
//!
//! Exit codes: 0 success, 1 usage or configuration error, 2 data or
//! validation error (including a batch with failed rows; the report is still
//! written).

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cwwkit::codebook::{verify_stored_centroids, Codebook};
use cwwkit::feedback::read_feedback_file;
use cwwkit::it2::DiscretizationGrid;
use cwwkit::pipeline::{
    rank_students, uniqueness_report_at, EvalOptions, EvaluationReport, Evaluator, LwaMode,
    PERCEPTUAL_DECIMALS,
};
use cwwkit::report::{
    render_comparison, render_ranking, render_report, render_verification, OutputFormat,
};
use cwwkit::vocabulary::{build_default_schema, Method, ParameterSchema};
use cwwkit::Error;

const CODEBOOK_ENV: &str = "CWWKIT_CODEBOOK";

#[derive(Parser)]
#[command(
    name = "cwwkit",
    version,
    about = "Computing-with-words evaluation of student feedback"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Codebook operations.
    Codebook {
        #[command(subcommand)]
        action: CodebookCommand,
    },
    /// Evaluate a feedback batch with the selected methods.
    Evaluate(EvalArgs),
    /// Rank students by one method's score.
    Rank {
        #[command(flatten)]
        eval: EvalArgs,
        #[arg(long, value_parser = parse_method)]
        method: Method,
    },
    /// Evaluate and append the duplicate-recommendation summary.
    Compare(EvalArgs),
}

#[derive(Subcommand)]
enum CodebookCommand {
    /// Check FOU invariants and recompute stored centroids.
    Validate {
        /// Codebook files; defaults to --codebook, $CWWKIT_CODEBOOK, then the bundled one.
        paths: Vec<PathBuf>,
        #[arg(long)]
        codebook: Option<PathBuf>,
        #[arg(long, default_value_t = 0.05)]
        tolerance: f64,
        #[arg(long, default_value_t = DiscretizationGrid::<f64>::DEFAULT_COUNT)]
        grid: usize,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct EvalArgs {
    /// Feedback CSV: student_id followed by one column per parameter.
    #[arg(long)]
    feedback: PathBuf,
    #[arg(long)]
    codebook: Option<PathBuf>,
    /// Comma-separated subset of extension_principle, symbolic, two_tuple, perceptual.
    #[arg(long, value_delimiter = ',', value_parser = parse_method)]
    methods: Option<Vec<Method>>,
    /// Sample count of the discretization grid.
    #[arg(long, default_value_t = DiscretizationGrid::<f64>::DEFAULT_COUNT)]
    grid: usize,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print perceptual scores at full precision instead of two decimals.
    #[arg(long)]
    verbose_precision: bool,
    #[arg(long, value_enum, default_value_t = Lwa::Exact)]
    lwa: Lwa,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Table,
    Delimited,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Table => OutputFormat::Table,
            Format::Delimited => OutputFormat::Delimited,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Lwa {
    Exact,
    ParameterAverage,
}

fn parse_method(s: &str) -> Result<Method, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) => 1,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let schema = build_default_schema();
    match cli.command {
        Command::Codebook {
            action:
                CodebookCommand::Validate {
                    paths,
                    codebook,
                    tolerance,
                    grid,
                    format,
                    out,
                },
        } => validate(
            &schema,
            paths,
            codebook,
            tolerance,
            grid,
            format,
            out.as_deref(),
        ),
        Command::Evaluate(args) => {
            let (report, failed) = evaluate(&schema, &args)?;
            let text = render_report(&report, args.format.into(), decimals(&args));
            emit(args.out.as_deref(), &text)?;
            Ok(failed)
        }
        Command::Compare(args) => {
            let (report, failed) = evaluate(&schema, &args)?;
            let summary = uniqueness_report_at(&report, decimals(&args));
            let text = render_comparison(&report, &summary, args.format.into(), decimals(&args));
            emit(args.out.as_deref(), &text)?;
            Ok(failed)
        }
        Command::Rank { eval, method } => {
            if eval.methods.as_ref().is_some_and(|m| !m.contains(&method)) {
                return Err(usage(format!("--method {method} is not among --methods")));
            }
            let mut args = eval;
            args.methods = Some(vec![method]);
            let (report, failed) = evaluate(&schema, &args)?;
            let ranking = rank_students(&report, method)?;
            let text = render_ranking(method, &ranking, args.format.into(), decimals(&args));
            emit(args.out.as_deref(), &text)?;
            Ok(failed)
        }
    }
}

fn decimals(args: &EvalArgs) -> Option<usize> {
    (!args.verbose_precision).then_some(PERCEPTUAL_DECIMALS)
}

fn check_grid(count: usize) -> Result<(), Failure> {
    if count < 3 {
        return Err(usage(format!("--grid must be at least 3, got {count}")));
    }
    Ok(())
}

/// Explicit path, then the environment variable, then the bundled codebook.
fn load_codebook(schema: &ParameterSchema, path: Option<&Path>) -> Result<Codebook, Failure> {
    let path = path
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CODEBOOK_ENV).map(PathBuf::from));
    match path {
        Some(p) => Codebook::load(&p, schema).map_err(|e| Failure {
            code: 2,
            message: format!("{}: {e}", p.display()),
        }),
        None => Ok(Codebook::shipped()),
    }
}

fn evaluate(schema: &ParameterSchema, args: &EvalArgs) -> Result<(EvaluationReport, u8), Failure> {
    check_grid(args.grid)?;
    let methods = args.methods.clone().unwrap_or_else(|| Method::ALL.to_vec());
    if methods.is_empty() {
        return Err(usage("--methods must name at least one method"));
    }
    let codebook = if methods.contains(&Method::Perceptual) {
        Some(load_codebook(schema, args.codebook.as_deref())?)
    } else {
        None
    };
    if let Some(notice) = codebook.as_ref().and_then(Codebook::scale_notice) {
        eprintln!("note: {notice}");
    }
    let rows = read_feedback_file(&args.feedback, schema).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", args.feedback.display()),
    })?;
    let options = EvalOptions {
        grid_count: args.grid,
        lwa_mode: match args.lwa {
            Lwa::Exact => LwaMode::Exact,
            Lwa::ParameterAverage => LwaMode::ParameterAverage,
        },
        ..EvalOptions::default()
    };
    let evaluator = Evaluator::new(schema, codebook.as_ref(), options)?;
    let report = evaluator.evaluate_batch(&rows, &methods)?;
    let failed = report.failed_rows().count();
    if failed > 0 {
        eprintln!("{failed} of {} rows failed", report.rows.len());
    }
    Ok((report, if failed > 0 { 2 } else { 0 }))
}

fn validate(
    schema: &ParameterSchema,
    mut paths: Vec<PathBuf>,
    codebook: Option<PathBuf>,
    tolerance: f64,
    grid: usize,
    format: Format,
    out: Option<&Path>,
) -> Result<u8, Failure> {
    check_grid(grid)?;
    if !(tolerance.is_finite() && tolerance >= 0.0) {
        return Err(usage(format!(
            "--tolerance must be a nonnegative number, got {tolerance}"
        )));
    }
    paths.extend(codebook);
    let codebooks: Vec<Result<Codebook, Failure>> = if paths.is_empty() {
        vec![load_codebook(schema, None)]
    } else {
        paths
            .iter()
            .map(|p| load_codebook(schema, Some(p)))
            .collect()
    };

    let mut reports = Vec::new();
    let mut code = 0;
    for cb in codebooks {
        let cb = match cb {
            Ok(cb) => cb,
            Err(f) => {
                eprintln!("error: {}", f.message);
                code = 2;
                continue;
            }
        };
        if let Some(notice) = cb.scale_notice() {
            eprintln!("note: {}: {notice}", cb.source());
        }
        let report = verify_stored_centroids(&cb, &cb.grid(grid)?, tolerance);
        if !report.passed() {
            code = 2;
        }
        reports.push((cb.source().to_string(), report));
    }
    emit(out, &render_verification(&reports, format.into()))?;
    Ok(code)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    let result = match out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    result.map_err(|e| Failure {
        code: 2,
        message: match out {
            Some(p) => format!("{}: {e}", p.display()),
            None => e.to_string(),
        },
    })
}

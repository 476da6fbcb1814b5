//! The `ncgb` command line.
//!
//! Exit codes: 0 success, 1 usage or input error, 2 a completion bound was
//! hit (partial results are still printed), 3 the quotient is infinite where
//! a finite one is required.

pub mod parse;
pub mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::envelope::{
    builtin_operation, builtin_system, envelope_presentation, jordan_presentation, lie_presentation,
    nary_presentation, MultilinearOperation, StructureConstants,
};
use crate::error::{Error, Result};
use crate::groebner::{complete, CompletionConfig, CompletionResult, Presentation};
use crate::par::Execution;
use crate::quotient::Quotient;
use crate::reduce::Reducer;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_BOUND: i32 = 2;
pub const EXIT_INFINITE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "ncgb", version, about = "Noncommutative Gröbner bases and universal associative envelopes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct CompletionArgs {
    /// Skip compositions whose overlap word is longer than this.
    #[arg(long, default_value_t = 20)]
    max_degree: usize,
    /// Stop after this many iterations.
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
    /// Stop once the basis has more elements than this.
    #[arg(long)]
    max_size: Option<usize>,
    /// Disable data parallelism.
    #[arg(long)]
    sequential: bool,
}

impl CompletionArgs {
    fn config(&self) -> CompletionConfig {
        CompletionConfig {
            max_degree: Some(self.max_degree),
            max_iterations: Some(self.max_iter),
            max_basis_size: self.max_size,
            execution: if self.sequential { Execution::Sequential } else { Execution::default() },
            keep_snapshots: false,
        }
    }
}

#[derive(Args, Debug, Clone)]
struct SourceArgs {
    /// Presentation file.
    file: Option<PathBuf>,
    /// Built-in system: sl2, s2, m2-units or a(p,q).
    #[arg(long, conflicts_with_all = ["file", "sc"])]
    preset: Option<String>,
    /// Structure-constant file.
    #[arg(long, conflicts_with = "file")]
    sc: Option<PathBuf>,
    /// Operation key, or an expression such as `abc+cba`.
    #[arg(long)]
    op: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Complete a presentation and print its basis.
    Groebner {
        file: PathBuf,
        #[command(flatten)]
        completion: CompletionArgs,
        /// Print the self-reduced set after every iteration.
        #[arg(long)]
        snapshots: bool,
        /// Write a JSON report (`-` for standard output).
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Normal form of a polynomial.
    Nf {
        file: PathBuf,
        #[arg(long)]
        poly: String,
        /// Reduce against the generators as given instead of the completed basis.
        #[arg(long)]
        raw: bool,
        /// Print every reduction step.
        #[arg(long)]
        trace: bool,
        #[command(flatten)]
        completion: CompletionArgs,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Build an envelope presentation, complete it and describe the quotient.
    Envelope {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        completion: CompletionArgs,
        /// Graded dimensions reported for infinite quotients, degrees 0..=N.
        #[arg(long, default_value_t = 10)]
        window: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Graded dimensions of the quotient.
    Dims {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long)]
        to: usize,
        #[command(flatten)]
        completion: CompletionArgs,
        /// Write `degree,dim` rows.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Multiplication table of a finite-dimensional quotient.
    Multable {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        completion: CompletionArgs,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::Usage(format!("cannot write {}: {e}", path.display())))
}

fn operation(key: &str) -> Result<MultilinearOperation> {
    match builtin_operation(key) {
        Err(Error::UnknownKey(_)) if key.chars().any(|c| c == '+' || c == '-') => MultilinearOperation::parse(key, key),
        other => other,
    }
}

fn load_presentation(path: &Path) -> Result<Presentation> {
    Presentation::from_file(parse::parse_presentation_file(&read(path)?)?)
}

fn resolve(source: &SourceArgs) -> Result<Presentation> {
    match (&source.file, &source.preset, &source.sc) {
        (Some(f), None, None) => {
            if source.op.is_some() {
                return Err(Error::Usage("--op applies to --preset and --sc only".into()));
            }
            load_presentation(f)
        }
        (None, Some(key), None) => {
            let (sys, default_op) = builtin_system(key)?;
            let op = match (&source.op, default_op) {
                (Some(k), _) => operation(k)?,
                (None, Some(op)) => op,
                (None, None) => return Err(Error::Usage(format!("system `{key}` needs --op"))),
            };
            envelope_presentation(&sys, &op)
        }
        (None, None, Some(path)) => {
            let sc = StructureConstants::from_file(&parse::parse_constants_file(&read(path)?)?)?;
            let Some(key) = &source.op else {
                return Err(Error::Usage("--sc needs --op".into()));
            };
            let label = format!("{}/{key}", path.display());
            let p = match key.as_str() {
                "lie-bracket" => lie_presentation(&sc)?,
                "jordan-product" => jordan_presentation(&sc)?,
                _ => nary_presentation(&operation(key)?, &sc)?,
            };
            Ok(p.with_label(label))
        }
        _ => Err(Error::Usage("give exactly one of FILE, --preset, --sc".into())),
    }
}

struct Output {
    text: String,
    json: Value,
    code: i32,
}

fn status_code(r: &CompletionResult) -> i32 {
    if r.status.is_bounded() {
        EXIT_BOUND
    } else {
        EXIT_OK
    }
}

fn basis_text(out: &mut String, r: &CompletionResult) {
    let _ = writeln!(out, "status: {}", r.status);
    let _ = writeln!(out, "iterations: {}", r.profile());
    let _ = writeln!(out, "basis ({}):", r.basis.len());
    for g in &r.basis {
        let _ = writeln!(out, "  {}", g.display(&r.alphabet));
    }
}

fn quotient_text(out: &mut String, q: &Quotient, window: usize) {
    let a = q.alphabet();
    match q.normal_words() {
        Ok(ws) => {
            let _ = writeln!(out, "quotient: finite, dimension {}", ws.len());
            let shown: Vec<String> = ws.iter().map(|w| a.display(w).to_string()).collect();
            let _ = writeln!(out, "normal words: {}", shown.join(" "));
        }
        Err(_) => {
            let dims: Vec<String> = q.graded_dims(window).iter().map(|d| d.to_string()).collect();
            let _ = writeln!(out, "quotient: infinite, graded dims 0..={window}: {}", dims.join(","));
        }
    }
}

fn bound_warning(out: &mut String, r: &CompletionResult) {
    if r.status.is_bounded() {
        let _ = writeln!(out, "warning: completion stopped early ({}); results are partial", r.status);
    }
}

fn execute(cmd: &Command) -> Result<Output> {
    let mut text = String::new();
    match cmd {
        Command::Groebner { file, completion, snapshots, .. } => {
            let p = load_presentation(file)?;
            let cfg = CompletionConfig { keep_snapshots: *snapshots, ..completion.config() };
            let r = complete(&p, &cfg);
            if *snapshots {
                for (k, s) in r.snapshots.iter().enumerate() {
                    let _ = writeln!(text, "after iteration {k} ({} elements):", s.len());
                    for g in s {
                        let _ = writeln!(text, "  {}", g.display(&r.alphabet));
                    }
                }
            }
            basis_text(&mut text, &r);
            let json = json!({
                "config": report::config(&cfg),
                "presentation": report::presentation(&p),
                "completion": report::completion(&r, *snapshots),
            });
            Ok(Output { text, json, code: status_code(&r) })
        }
        Command::Nf { file, poly, raw, trace, completion, .. } => {
            let p = load_presentation(file)?;
            let f = parse::parse_relation(poly, &p.alphabet)?;
            let (gens, code, r) = if *raw {
                (p.generators.iter().map(|g| g.standard_form()).collect::<Vec<_>>(), EXIT_OK, None)
            } else {
                let r = complete(&p, &completion.config());
                (r.basis.clone(), status_code(&r), Some(r))
            };
            let (h, tr) = Reducer::new(&gens).normal_form_traced(&f);
            if let Some(r) = &r {
                bound_warning(&mut text, r);
            }
            if *trace {
                for (k, s) in tr.steps.iter().enumerate() {
                    let _ = writeln!(
                        text,
                        "step {}: subtract {}   [generator {}, position {}]",
                        k + 1,
                        s.subtracted.display(&p.alphabet),
                        s.generator_index + 1,
                        s.occurrence
                    );
                }
            }
            let _ = writeln!(text, "{}", h.display(&p.alphabet));
            let mut json = json!({
                "presentation": report::presentation(&p),
                "input": f.display(&p.alphabet).to_string(),
                "normal_form": h.display(&p.alphabet).to_string(),
                "against": if *raw { "raw" } else { "completed" },
                "trace": tr.to_json(&p.alphabet),
            });
            if let Some(r) = &r {
                json["completion"] = report::completion(r, false);
            }
            Ok(Output { text, json, code })
        }
        Command::Envelope { source, completion, window, .. } => {
            let p = resolve(source)?;
            let cfg = completion.config();
            let r = complete(&p, &cfg);
            let _ = writeln!(
                text,
                "presentation: {} ({} letters, {} generators)",
                p.label.as_deref().unwrap_or("-"),
                p.alphabet.len(),
                p.generators.len()
            );
            basis_text(&mut text, &r);
            let mut json = json!({
                "config": report::config(&cfg),
                "presentation": report::presentation(&p),
                "completion": report::completion(&r, false),
            });
            match Quotient::new(&r) {
                Ok(q) => {
                    quotient_text(&mut text, &q, *window);
                    json["quotient"] = report::quotient(&q, *window);
                }
                Err(_) => bound_warning(&mut text, &r),
            }
            Ok(Output { text, json, code: status_code(&r) })
        }
        Command::Dims { source, to, completion, csv, .. } => {
            let p = resolve(source)?;
            let cfg = completion.config();
            let r = complete(&p, &cfg);
            bound_warning(&mut text, &r);
            // a truncated basis still bounds the dimensions from above
            let q = match Quotient::new(&r) {
                Ok(q) => q,
                Err(_) => Quotient::from_partial_basis(r.alphabet.clone(), r.basis.clone()),
            };
            let dims = q.graded_dims(*to);
            let shown: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
            let _ = writeln!(text, "{}", shown.join(","));
            if let Some(path) = csv {
                let mut s = String::from("degree,dim\n");
                for (n, d) in dims.iter().enumerate() {
                    let _ = writeln!(s, "{n},{d}");
                }
                write_file(path, &s)?;
            }
            let json = json!({
                "config": report::config(&cfg),
                "presentation": report::presentation(&p),
                "completion": report::completion(&r, false),
                "graded_dims": report::dims_json(&dims),
                "exact": !r.status.is_bounded(),
            });
            Ok(Output { text, json, code: status_code(&r) })
        }
        Command::Multable { source, completion, csv, .. } => {
            let p = resolve(source)?;
            let cfg = completion.config();
            let r = complete(&p, &cfg);
            let q = match Quotient::new(&r) {
                Ok(q) => q,
                Err(_) => {
                    bound_warning(&mut text, &r);
                    let json = json!({ "completion": report::completion(&r, false) });
                    return Ok(Output { text, json, code: EXIT_BOUND });
                }
            };
            let t = match q.multiplication_table_with(cfg.execution) {
                Ok(t) => t,
                Err(Error::InfiniteQuotient) => {
                    let _ = writeln!(text, "error: the quotient is infinite-dimensional");
                    let json = json!({
                        "completion": report::completion(&r, false),
                        "quotient": report::quotient(&q, 10),
                    });
                    return Ok(Output { text, json, code: EXIT_INFINITE });
                }
                Err(e) => return Err(e),
            };
            let _ = writeln!(text, "dimension {}", t.dim());
            text.push_str(&t.to_compact_text());
            if let Some(path) = csv {
                write_file(path, &t.to_csv())?;
            }
            let json = json!({
                "presentation": report::presentation(&p),
                "completion": report::completion(&r, false),
                "table": t.to_json(),
            });
            Ok(Output { text, json, code: EXIT_OK })
        }
    }
}

fn json_target(cmd: &Command) -> Option<&PathBuf> {
    match cmd {
        Command::Groebner { json, .. }
        | Command::Nf { json, .. }
        | Command::Envelope { json, .. }
        | Command::Dims { json, .. }
        | Command::Multable { json, .. } => json.as_ref(),
    }
}

/// Runs one command line (including the program name) and returns the exit
/// code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let start = Instant::now();
    let out = match execute(&cli.command) {
        Ok(o) => o,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let report = report::run_report(&echo, out.json, start.elapsed().as_millis());
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
    match json_target(&cli.command) {
        Some(path) if path.as_os_str() == "-" => {
            let _ = stdout.write_all(rendered.as_bytes());
        }
        Some(path) => {
            if let Err(e) = write_file(path, &rendered) {
                let _ = writeln!(stderr, "error: {e}");
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(out.text.as_bytes());
        }
        None => {
            let _ = stdout.write_all(out.text.as_bytes());
        }
    }
    out.code
}

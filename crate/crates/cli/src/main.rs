//! `exit-path`: build exit path simplicial sets of linked spans and check
//! their structure from the command line.
//!
//! Exit status: 0 when every check passes, 1 when one fails, 2 on input
//! errors, 3 when a search ran out of budget before deciding.

mod tables;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use exit_path::format::{parse_bundle, print_set, print_span, Bundle};
use exit_path::gallery;
use exit_path::simplicial::{SimplicialMap, SimplicialSet};
use exit_path::verify::{
    check_fibration, check_mono, lifting_class, lifting_classes, verify_quasicategory,
    verify_simplicial_identities, Budget, Status, VerificationReport,
};
use exit_path::LinkedSpan;

const INPUT_ERROR: u8 = 2;

#[derive(Parser, Debug)]
#[command(name = "exit-path", version, about = "Build and verify exit path simplicial sets of linked spans")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Largest simplex dimension built or checked.
    #[arg(long, global = true, default_value_t = 3)]
    max_dim: usize,

    /// Node limit for each horn, filler or lift search.
    #[arg(long, global = true, default_value_t = Budget::DEFAULT_NODES)]
    budget: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for verification (0 uses every core).
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    /// JSON.
    Machine,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Tabulate the exit shuffles S^k_j and collapses C^k_j for one k.
    ShuffleTable {
        #[arg(long)]
        k: usize,
    },
    /// Tabulate ♭(k,j,i), ♯(k,j,i) and face classes for one k.
    FlatSharpTable {
        #[arg(long)]
        k: usize,
    },
    /// Build Ex of a span and print it as a set document.
    BuildExit {
        #[command(flatten)]
        span: SpanArg,
        /// Print per-degree simplex counts instead of the document.
        #[arg(long)]
        stats: bool,
    },
    /// Check the five families of simplicial identities.
    VerifyIdentities {
        #[command(flatten)]
        target: TargetArg,
    },
    /// Check that every inner horn has a filler.
    VerifyQcat {
        #[command(flatten)]
        target: TargetArg,
    },
    /// Check a lifting property of a map against a class of horns.
    CheckFibration {
        #[command(flatten)]
        map: MapArg,
        /// Lifting class: inner, right, left or kan.
        #[arg(long, default_value = "right")]
        class: String,
    },
    /// Check that a map is injective in every degree.
    CheckMono {
        #[command(flatten)]
        map: MapArg,
    },
    /// List or print the built-in example spans.
    Examples {
        #[command(subcommand)]
        action: ExamplesAction,
    },
    /// Per-degree simplex counts of Ex.
    Stats {
        #[command(flatten)]
        span: SpanArg,
    },
}

#[derive(Subcommand, Debug)]
enum ExamplesAction {
    List,
    /// Print an example as a span document bundle.
    Emit { name: String },
}

#[derive(Args, Debug)]
struct SpanArg {
    /// A built-in example name or a document file holding a span.
    #[arg(long)]
    span: String,
    /// Which span of a multi-span file to use.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct TargetSource {
    /// Check Ex of this span (example name or file).
    #[arg(long)]
    span: Option<String>,
    /// Check a simplicial set from a document file.
    #[arg(long)]
    set: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TargetArg {
    #[command(flatten)]
    source: TargetSource,
    /// Which span or set of a multi-document file to use.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Leg {
    Pi,
    Iota,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct MapSource {
    /// Use a leg of this span (example name or file).
    #[arg(long)]
    span: Option<String>,
    /// Use a simplicial map from a document file.
    #[arg(long)]
    map: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct MapArg {
    #[command(flatten)]
    source: MapSource,
    /// Which leg of the span: pi (default for check-fibration) or iota
    /// (default for check-mono).
    #[arg(long, value_enum)]
    leg: Option<Leg>,
    /// Which span or map of a multi-document file to use.
    #[arg(long)]
    name: Option<String>,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

struct Output {
    text: String,
    status: Status,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build() {
        Ok(pool) => pool,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(INPUT_ERROR);
        }
    };
    match pool.install(|| run(&cli)) {
        Ok(out) => {
            print!("{}", out.text);
            if !out.text.ends_with('\n') {
                println!();
            }
            ExitCode::from(match out.status {
                Status::Pass => 0,
                Status::Fail => 1,
                Status::Inconclusive => 3,
            })
        }
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(INPUT_ERROR)
        }
    }
}

fn run(cli: &Cli) -> Result<Output, InputError> {
    let budget = Budget::new(cli.budget);
    let d = cli.max_dim;
    let machine = cli.format == Format::Machine;
    let plain = |text: String| Ok(Output { text, status: Status::Pass });
    match &cli.command {
        Command::ShuffleTable { k } => plain(tables::shuffle_table(*k, machine)?),
        Command::FlatSharpTable { k } => plain(tables::flat_sharp_table(*k, machine)?),
        Command::BuildExit { span, stats } => {
            let span = load_span(&span.span, span.name.as_deref(), d, budget)?;
            if *stats {
                plain(tables::stats(&span, d, machine)?)
            } else {
                let ex = span.build_exit(d)?;
                let doc = print_set(ex.set());
                plain(if machine { json!({ "document": doc }).to_string() } else { doc })
            }
        }
        Command::Stats { span } => {
            let span = load_span(&span.span, span.name.as_deref(), d, budget)?;
            plain(tables::stats(&span, d, machine)?)
        }
        Command::VerifyIdentities { target } => {
            let x = load_target(target, d, budget, false)?;
            report(verify_simplicial_identities(x.as_ref(), d)?, machine)
        }
        Command::VerifyQcat { target } => {
            let x = load_target(target, d, budget, true)?;
            report(verify_quasicategory(x.as_ref(), d, budget)?, machine)
        }
        Command::CheckFibration { map, class } => {
            let Some(class) = lifting_class(class) else {
                let known: Vec<_> = lifting_classes().iter().map(|c| c.name()).collect();
                return Err(InputError(format!("unknown lifting class `{class}` (known: {})", known.join(", "))));
            };
            let f = load_map(map, Leg::Pi)?;
            report(check_fibration(&f, d, class.as_ref(), budget)?, machine)
        }
        Command::CheckMono { map } => {
            let f = load_map(map, Leg::Iota)?;
            report(check_mono(&f, d)?, machine)
        }
        Command::Examples { action: ExamplesAction::List } => {
            let entries: Vec<_> = gallery::gallery().iter().map(|e| (e.name(), e.description())).collect();
            if machine {
                let list: Vec<_> = entries.iter().map(|(n, d)| json!({ "name": n, "description": d })).collect();
                plain(serde_json::Value::Array(list).to_string())
            } else {
                let width = entries.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
                plain(entries.iter().map(|(n, d)| format!("{n:width$}  {d}\n")).collect())
            }
        }
        Command::Examples { action: ExamplesAction::Emit { name } } => {
            let doc = print_span(&gallery::example(name)?.span());
            plain(if machine { json!({ "document": doc }).to_string() } else { doc })
        }
    }
}

fn report(r: VerificationReport, machine: bool) -> Result<Output, InputError> {
    let text = if machine { serde_json::to_string_pretty(&r)? } else { r.to_string() };
    Ok(Output { text, status: r.status() })
}

fn read_bundle(path: &Path) -> Result<Bundle, InputError> {
    let text = std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    let bundle = parse_bundle(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(bundle)
}

fn audit_all(bundle: &Bundle) -> Result<(), InputError> {
    for x in &bundle.sets {
        x.audit().map_err(|e| InputError(format!("simplicial set `{}`: {e}", x.name())))?;
    }
    Ok(())
}

fn pick<'a, T>(items: &'a [T], name: Option<&str>, kind: &str, name_of: impl Fn(&T) -> &str) -> Result<&'a T, InputError> {
    match name {
        Some(n) => items.iter().find(|t| name_of(t) == n).ok_or_else(|| InputError(format!("no {kind} named `{n}`"))),
        None => match items {
            [one] => Ok(one),
            [] => Err(InputError(format!("the input holds no {kind}"))),
            _ => {
                let names: Vec<_> = items.iter().map(&name_of).collect();
                Err(InputError(format!("the input holds several {kind}s ({}); choose one with --name", names.join(", "))))
            }
        },
    }
}

/// A gallery example (re-checked against its expectations) or a span file,
/// with ι verified mono through `bound`.
fn load_span(source: &str, name: Option<&str>, bound: usize, budget: Budget) -> Result<LinkedSpan, InputError> {
    if let Ok(example) = gallery::example(source) {
        return Ok(gallery::load(example.as_ref(), bound, budget)?);
    }
    let path = Path::new(source);
    if !path.exists() {
        return Err(InputError(format!("`{source}` is neither a built-in example nor a readable file")));
    }
    let bundle = read_bundle(path)?;
    audit_all(&bundle)?;
    let mut span = pick(&bundle.spans, name, "linked span", |s| s.name())?.clone();
    if !span.verify_iota_mono(bound) {
        let (a, b) = span.iota().mono_violation(bound).expect("a failed mono check has a collision");
        let link = span.link();
        return Err(InputError(format!(
            "span `{}`: ι is not injective, {} and {} have the same image",
            span.name(),
            link.describe(&a),
            link.describe(&b)
        )));
    }
    Ok(span)
}

fn load_target(target: &TargetArg, bound: usize, budget: Budget, audit: bool) -> Result<Arc<SimplicialSet>, InputError> {
    let name = target.name.as_deref();
    if let Some(span) = &target.source.span {
        let span = load_span(span, name, bound, budget)?;
        return Ok(span.build_exit(bound)?.set().clone());
    }
    let path = target.source.set.as_ref().expect("clap requires one source");
    let bundle = read_bundle(path)?;
    let x = pick(&bundle.sets, name, "simplicial set", |s| s.name())?.clone();
    if audit {
        x.audit().map_err(|e| InputError(format!("simplicial set `{}`: {e}", x.name())))?;
    }
    Ok(x)
}

fn load_map(arg: &MapArg, default_leg: Leg) -> Result<SimplicialMap, InputError> {
    let name = arg.name.as_deref();
    if let Some(source) = &arg.source.span {
        let span = load_span_unverified(source, name)?;
        return Ok(match arg.leg.unwrap_or(default_leg) {
            Leg::Pi => span.pi().clone(),
            Leg::Iota => span.iota().clone(),
        });
    }
    let path = arg.source.map.as_ref().expect("clap requires one source");
    let bundle = read_bundle(path)?;
    audit_all(&bundle)?;
    Ok(pick(&bundle.maps, name, "simplicial map", |m| m.name())?.clone())
}

/// Map checks examine the legs themselves, so no hypothesis on them is
/// assumed when loading.
fn load_span_unverified(source: &str, name: Option<&str>) -> Result<LinkedSpan, InputError> {
    if let Ok(example) = gallery::example(source) {
        return Ok(example.span());
    }
    let bundle = read_bundle(Path::new(source))?;
    audit_all(&bundle)?;
    Ok(pick(&bundle.spans, name, "linked span", |s| s.name())?.clone())
}

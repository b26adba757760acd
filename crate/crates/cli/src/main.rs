//! Command-line front end: parse → validate → compose → project / render /
//! simulate, with deterministic outputs.
//!
//! Exit codes: 0 success, 1 validation/parse diagnostics (or a rejected
//! trace), 2 usage error, 3 I/O error. Diagnostics go to the error stream as
//! `<file>:<line>:<col>: <code>: <message>`; `SBC_ITG_COLOR=never|auto`
//! controls their coloring (auto = only when the error stream is a
//! terminal). Output files are written via a temp file and renamed into
//! place, so failures never leave partial output behind.

use std::io::{IsTerminal, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use sbc_itg_core::dsl::{self, Parsed, SourceSpan};
use sbc_itg_core::projection::{project_ad, project_ibd, project_itgr, project_smd};
use sbc_itg_core::render::{to_csv, to_dot_ad, to_dot_ibd, to_dot_itg, to_dot_smd};
use sbc_itg_core::simulator::{self, Policy};
use sbc_itg_core::validate::{reachability_lint, validate, Diagnostic, Location, Severity};

#[derive(Parser)]
#[command(
    name = "sbc-itg",
    version,
    about = "Model compiler and simulator for channel-based interaction transition graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file; print diagnostics and exit nonzero on errors
    Validate {
        /// Model file (.itg)
        model: PathBuf,
    },
    /// Project a view of the model and write it as CSV or DOT
    Project {
        /// Model file (.itg)
        model: PathBuf,
        /// Which view to project
        view: ViewArg,
        /// Output syntax
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        /// Write to this file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Execute the model and print the fired transitions
    Simulate {
        /// Model file (.itg)
        model: PathBuf,
        /// Number of steps to run (stops early on deadlock)
        #[arg(long)]
        steps: usize,
        /// Choice policy among enabled transitions
        #[arg(long, value_enum)]
        policy: PolicyArg,
        /// Generator seed (required by --policy uniform)
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check whether a trace file is accepted by the model
    Accepts {
        /// Model file (.itg)
        model: PathBuf,
        /// Trace file: one `<caller>\t<channel>\t<callee>` label per line
        trace: PathBuf,
    },
    /// Reformat a model file canonically
    Print {
        /// Model file (.itg)
        model: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ViewArg {
    Ibd,
    Smd,
    Ad,
    Itgr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Csv,
    Dot,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    Uniform,
    Roundrobin,
}

const EXIT_OK: u8 = 0;
const EXIT_DIAGNOSTICS: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_IO: u8 = 3;

fn main() -> ExitCode {
    // Unknown subcommands/flags/values exit 2 via clap itself.
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { model } => cmd_validate(&model),
        Command::Project {
            model,
            view,
            format,
            out,
        } => cmd_project(&model, view, format, out.as_deref()),
        Command::Simulate {
            model,
            steps,
            policy,
            seed,
        } => cmd_simulate(&model, steps, policy, seed),
        Command::Accepts { model, trace } => cmd_accepts(&model, &trace),
        Command::Print { model } => cmd_print(&model),
    };
    ExitCode::from(code)
}

fn color_enabled() -> bool {
    match std::env::var("SBC_ITG_COLOR").as_deref() {
        Ok("never") => false,
        Ok("auto") | Err(_) => std::io::stderr().is_terminal(),
        Ok(_) => false,
    }
}

/// Prints one `<file>:<line>:<col>: <code>: <message>` line to stderr,
/// coloring the code when enabled (red for errors, yellow for warnings).
fn print_diag_line(file: &str, span: SourceSpan, code: &str, message: &str, severity: Severity) {
    let code = if color_enabled() {
        let tint = match severity {
            Severity::Error => "31",
            Severity::Warning => "33",
        };
        format!("\x1b[{tint}m{code}\x1b[0m")
    } else {
        code.to_string()
    };
    eprintln!(
        "{}:{}:{}: {}: {}",
        file, span.line, span.column, code, message
    );
}

/// Source position for a model-level diagnostic, via the parser's span table.
fn locate(parsed: &Parsed, location: &Location) -> SourceSpan {
    let spans = &parsed.spans;
    let fallback = SourceSpan::new(1, 1, 0);
    match location {
        Location::Model => spans.system.unwrap_or(fallback),
        Location::Agent { index } => spans.agents.get(*index).copied().unwrap_or(fallback),
        Location::Channel { index } => spans.channels.get(*index).copied().unwrap_or(fallback),
        Location::Region { index, .. } => spans.regions.get(*index).copied().unwrap_or(fallback),
        Location::Transition {
            region_index, row, ..
        } => spans
            .transitions
            .get(*region_index)
            .and_then(|rows| rows.get(*row))
            .copied()
            .unwrap_or(fallback),
    }
}

fn print_model_diags(file: &str, parsed: &Parsed, diags: &[Diagnostic]) {
    for d in diags {
        print_diag_line(
            file,
            locate(parsed, &d.location),
            d.rule.code(),
            &d.message,
            d.severity,
        );
    }
}

/// Reads, parses, and validates a model file. Prints diagnostics itself;
/// on failure returns the exit code to propagate.
fn load_model(path: &Path) -> Result<Parsed, u8> {
    let file = path.display().to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {file}: {err}");
            return Err(EXIT_IO);
        }
    };
    let parsed = match dsl::parse_with_spans(&text) {
        Ok(parsed) => parsed,
        Err(diags) => {
            for d in diags {
                print_diag_line(&file, d.span, d.code, &d.message, Severity::Error);
            }
            return Err(EXIT_DIAGNOSTICS);
        }
    };
    let errors = validate(&parsed.model);
    if !errors.is_empty() {
        print_model_diags(&file, &parsed, &errors);
        return Err(EXIT_DIAGNOSTICS);
    }
    Ok(parsed)
}

fn cmd_validate(path: &Path) -> u8 {
    let file = path.display().to_string();
    let text = match std::fs::read_to_string(path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {file}: {err}");
            return EXIT_IO;
        }
    };
    let parsed = match dsl::parse_with_spans(&text) {
        Ok(parsed) => parsed,
        Err(diags) => {
            for d in diags {
                print_diag_line(&file, d.span, d.code, &d.message, Severity::Error);
            }
            return EXIT_DIAGNOSTICS;
        }
    };
    let errors = validate(&parsed.model);
    print_model_diags(&file, &parsed, &errors);
    if !errors.is_empty() {
        return EXIT_DIAGNOSTICS;
    }
    // Valid: surface non-fatal lints (unreachable states) as warnings.
    let warnings = reachability_lint(&parsed.model);
    print_model_diags(&file, &parsed, &warnings);
    EXIT_OK
}

fn cmd_project(path: &Path, view: ViewArg, format: FormatArg, out: Option<&Path>) -> u8 {
    let parsed = match load_model(path) {
        Ok(parsed) => parsed,
        Err(code) => return code,
    };
    let model = &parsed.model;
    let text = match format {
        FormatArg::Csv => {
            let relation = match view {
                ViewArg::Ibd => project_ibd(model),
                ViewArg::Smd => project_smd(model),
                ViewArg::Ad => project_ad(model),
                ViewArg::Itgr => project_itgr(model),
            };
            to_csv(&relation).to_string()
        }
        FormatArg::Dot => match view {
            ViewArg::Ibd => to_dot_ibd(model, &project_ibd(model)).to_string(),
            ViewArg::Smd => to_dot_smd(model, &project_smd(model)).to_string(),
            ViewArg::Ad => to_dot_ad(model, &project_ad(model)).to_string(),
            ViewArg::Itgr => to_dot_itg(model).to_string(),
        },
    };
    write_output(out, &text)
}

fn cmd_simulate(path: &Path, steps: usize, policy: PolicyArg, seed: Option<u64>) -> u8 {
    let policy = match policy {
        PolicyArg::Uniform => match seed {
            Some(seed) => Policy::UniformRandom { seed },
            None => {
                eprintln!("error: --policy uniform requires --seed");
                return EXIT_USAGE;
            }
        },
        PolicyArg::Roundrobin => Policy::RoundRobin,
    };
    let parsed = match load_model(path) {
        Ok(parsed) => parsed,
        Err(code) => return code,
    };
    let trace = simulator::run(&parsed.model, policy, steps);
    let mut stdout = std::io::stdout().lock();
    for (i, step) in trace.iter().enumerate() {
        if writeln!(stdout, "{}", simulator::trace_line(i + 1, step)).is_err() {
            return EXIT_IO;
        }
    }
    EXIT_OK
}

fn cmd_accepts(model_path: &Path, trace_path: &Path) -> u8 {
    let parsed = match load_model(model_path) {
        Ok(parsed) => parsed,
        Err(code) => return code,
    };
    let model = &parsed.model;
    let trace_file = trace_path.display().to_string();
    let text = match std::fs::read_to_string(trace_path) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {trace_file}: {err}");
            return EXIT_IO;
        }
    };

    let mut labels = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let lineno = i + 1;
        if line.is_empty() {
            continue;
        }
        let label = match simulator::parse_label_line(line) {
            Ok(label) => label,
            Err(msg) => {
                eprintln!("{trace_file}:{lineno}: {msg}");
                return EXIT_DIAGNOSTICS;
            }
        };
        // Unknown names can never match; report them instead of searching.
        for agent in [&label.caller, &label.callee] {
            if model.agent(agent).is_none() {
                eprintln!("{trace_file}:{lineno}: unknown agent {agent}");
                return EXIT_DIAGNOSTICS;
            }
        }
        if model.channel(&label.channel).is_none() {
            eprintln!("{trace_file}:{lineno}: unknown channel {}", label.channel);
            return EXIT_DIAGNOSTICS;
        }
        labels.push(label);
    }

    let result = simulator::accepts(model, &labels);
    if result.accepted {
        println!("accepted");
        // Witness: configuration after each matched label (index 0 = initial).
        for (i, config) in result.witness.unwrap_or_default().iter().enumerate() {
            let states: Vec<String> = config
                .current
                .iter()
                .map(|(region, state)| format!("{region}={state}"))
                .collect();
            println!("{}\t{}", i, states.join(" "));
        }
        EXIT_OK
    } else {
        println!("rejected at step {}", result.rejected_at.unwrap_or(0));
        EXIT_DIAGNOSTICS
    }
}

fn cmd_print(path: &Path) -> u8 {
    let parsed = match load_model(path) {
        Ok(parsed) => parsed,
        Err(code) => return code,
    };
    print!("{}", dsl::print(&parsed.model));
    EXIT_OK
}

/// Writes `text` to stdout, or atomically to `out` (temp file in the target
/// directory, then rename) so failed runs leave no partial file.
fn write_output(out: Option<&Path>, text: &str) -> u8 {
    match out {
        None => {
            print!("{text}");
            EXIT_OK
        }
        Some(path) => {
            let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
            let result = (|| -> std::io::Result<()> {
                let mut tmp = match dir {
                    Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
                    None => tempfile::NamedTempFile::new_in(".")?,
                };
                tmp.write_all(text.as_bytes())?;
                tmp.persist(path).map_err(|e| e.error)?;
                Ok(())
            })();
            match result {
                Ok(()) => EXIT_OK,
                Err(err) => {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    EXIT_IO
                }
            }
        }
    }
}

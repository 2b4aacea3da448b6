//! Command-line front end: expression parsing, model files and JSON reports.

pub mod commands;
pub mod error;
pub mod model;
pub mod parse;
pub mod report;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde_json::Value;

pub use commands::Command;
pub use error::CliError;
pub use report::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Parser, Debug)]
#[command(
    name = "eds-lab",
    version,
    about = "Elliptic divisibility sequences on elliptic surfaces"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
}

/// Resolves inputs, runs the command and assembles its report.
pub fn run_command(mut cmd: Command) -> Result<Report, CliError> {
    if let Command::Replay(a) = &cmd {
        return replay(&a.report);
    }
    commands::resolve_inputs(&mut cmd)?;
    let start = Instant::now();
    let out = commands::execute(&cmd)?;
    Ok(commands::report(
        &cmd,
        out,
        start.elapsed().as_secs_f64() * 1e3,
    ))
}

/// Re-runs the command recorded in a report and compares without timings.
pub fn replay(path: &std::path::Path) -> Result<Report, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    let old: Report = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let tagged = serde_json::json!({"command": old.command, "inputs": old.inputs});
    let cmd: Command = serde_json::from_value(tagged)
        .map_err(|e| CliError::Input(format!("cannot replay command '{}': {e}", old.command)))?;
    if old.version != report::VERSION {
        return Err(CliError::Input(format!(
            "report was written by {}, this is {}",
            old.version,
            report::VERSION
        )));
    }
    let start = Instant::now();
    let new = run_command(cmd)?;
    if new.canonical() != old.canonical() {
        return Err(CliError::Mismatch(format!(
            "{} does not reproduce",
            path.display()
        )));
    }
    let mut out = commands::Output::default();
    out.findings
        .insert("replayed".into(), Value::String(old.command.clone()));
    out.findings.insert("identical".into(), Value::Bool(true));
    let mut r = new;
    r.command = "replay".into();
    r.inputs = serde_json::json!({"report": path.display().to_string()});
    r.records = Vec::new();
    r.findings = out.findings;
    r.timings.total_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(r)
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) | Value::Array(_) if !is_flat(v) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(v, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", scalar(v))),
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                if is_flat(item) {
                    out.push_str(&format!("{pad}- {}\n", scalar(item)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 1, out);
                }
            }
        }
        _ => out.push_str(&format!("{pad}{}\n", scalar(v))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(m) => m.is_empty(),
        _ => true,
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(scalar).collect::<Vec<_>>().join(", ")),
        Value::Object(_) => "{}".into(),
        other => other.to_string(),
    }
}

pub fn format_report(r: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(r).unwrap() + "\n",
        Format::Text => {
            let mut s = String::new();
            render_text(&serde_json::to_value(r).unwrap(), 0, &mut s);
            s
        }
    }
}

/// Entry point; returns the process exit code.
pub fn main_with(cli: Cli) -> i32 {
    match run_command(cli.command) {
        Ok(r) => {
            let text = format_report(&r, cli.format);
            let written = match &cli.out {
                Some(path) => {
                    std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
                }
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: {e}");
                    1
                }
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

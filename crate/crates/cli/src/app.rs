//! Command definitions and execution.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use surgeon_core::frontlang::{parse_front, to_diagram};
use surgeon_core::surgery::{build_q, expand_to_pm1, homology};
use surgeon_core::{Severity, SurgeryDiagram};
use thiserror::Error;

use crate::files::{locate_key, DiagramFile};
use crate::report::{d3_report, front_report, invariants_report, to_json, InvariantsReport};

#[derive(Debug, Parser)]
#[command(name = "surgeon", version, about = "Invariants of knots and contact structures in contact surgery diagrams")]
pub struct Cli {
    /// Output format for reports.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a diagram file.
    Check { file: PathBuf },
    /// Classical invariants of companion knots after surgery.
    Invariants {
        file: PathBuf,
        /// Report only this knot (default: every knot in the file).
        #[arg(long)]
        knot: Option<String>,
    },
    /// Euler class and d3-invariant of the surgered contact structure.
    D3 { file: PathBuf },
    /// Rewrite every (±1/m)-surgery as m parallel (±1)-surgeries.
    Expand {
        file: PathBuf,
        /// Write the expanded diagram here instead of standard output.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Invariants of a front projection document.
    Front {
        file: PathBuf,
        /// Also assemble the annotated front into a diagram file.
        #[arg(long)]
        emit_diagram: Option<PathBuf>,
    },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CliError {
    #[error("{0}")]
    User(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::User(_) => 1,
            CliError::Internal(_) => 2,
        }
    }
}

/// Result of running one command.
#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Style {
    pub color: bool,
}

impl Style {
    fn label(&self, severity: Severity) -> String {
        let (text, code) = match severity {
            Severity::Error => ("error", "31"),
            Severity::Warning => ("warning", "33"),
        };
        if self.color {
            format!("\x1b[1;{code}m{text}\x1b[0m")
        } else {
            text.to_string()
        }
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::User(format!("{}: {e}", path.display())))
}

/// Loads and validates a diagram. Warnings are appended to `stderr`;
/// validation errors fail the load.
fn load(path: &Path, style: Style, stderr: &mut String) -> Result<SurgeryDiagram, CliError> {
    let text = read(path)?;
    let diagram = DiagramFile::parse(&text)
        .and_then(|f| f.to_diagram(Some(&text)))
        .map_err(|e| CliError::User(format!("{}:{e}", path.display())))?;
    let mut failed = false;
    for diag in diagram.validate() {
        let anchor = anchor_for(&text, &diag.message);
        let _ = writeln!(stderr, "{}{anchor}: {}: {}", path.display(), style.label(diag.severity), diag.message);
        failed |= diag.severity == Severity::Error;
    }
    if failed {
        return Err(CliError::User(format!("{}: diagram is invalid", path.display())));
    }
    Ok(diagram)
}

/// Best-effort source position for a validation message.
fn anchor_for(text: &str, message: &str) -> String {
    let key = if message.contains("linking") || message.contains("diagonal") {
        "linking"
    } else if message.starts_with("knot") {
        "knots"
    } else {
        "components"
    };
    locate_key(text, key, 0).map_or_else(String::new, |(l, c)| format!(":{l}:{c}"))
}

fn list(items: &[String]) -> String {
    format!("({})", items.join(", "))
}

fn invariants_text(r: &InvariantsReport) -> String {
    let mut s = String::new();
    let kind = match r.sign {
        Some(sign) => format!("{sign} {}", r.kind),
        None => r.kind.to_string(),
    };
    let _ = writeln!(s, "knot {} ({kind})", r.knot);
    let _ = writeln!(s, "  H_1(M) = {}", r.homology);
    let Some(order) = &r.order else {
        let _ = writeln!(s, "  not rationally nullhomologous");
        return s;
    };
    let _ = writeln!(s, "  order d = {order}");
    if let Some(a) = &r.solution {
        let _ = writeln!(s, "  solution a = {}", list(a));
    }
    for (key, value) in [("tb_M", &r.tb), ("rot_M", &r.rot), ("sl_M", &r.sl)] {
        if let Some(v) = value {
            let _ = writeln!(s, "  {key} = {v}");
        }
    }
    match &r.seifert_dependence {
        Some(crate::report::DependenceOut::Kernel(shifts)) => {
            for k in shifts {
                let _ = writeln!(s, "  kernel generator {} shifts the value by {}", list(&k.generator), k.shift);
            }
        }
        _ => {
            let _ = writeln!(s, "  Seifert class: unique");
        }
    }
    s
}

fn check(path: &Path, format: Format, style: Style) -> Outcome {
    let mut out = Outcome::default();
    match load(path, style, &mut out.stderr) {
        Ok(d) => {
            let h = homology(&build_q(&d)).to_string();
            out.stdout = match format {
                Format::Json => to_json(&serde_json::json!({
                    "valid": true,
                    "components": d.len(),
                    "knots": d.knots.len(),
                    "homology": h,
                })),
                Format::Text => format!("ok: {} components, {} knots, H_1(M) = {h}\n", d.len(), d.knots.len()),
            };
        }
        Err(e) => {
            let _ = writeln!(out.stderr, "{e}");
            out.code = e.exit_code();
            if format == Format::Json {
                out.stdout = to_json(&serde_json::json!({ "valid": false }));
            }
        }
    }
    out
}

fn run(cli: &Cli, style: Style, stderr: &mut String) -> Result<String, CliError> {
    match &cli.command {
        Command::Check { .. } => unreachable!("handled separately"),
        Command::Invariants { file, knot } => {
            let d = load(file, style, stderr)?;
            let knots: Vec<_> = match knot {
                Some(name) => vec![d
                    .knot(name)
                    .ok_or_else(|| CliError::User(format!("{}: no knot named {name:?}", file.display())))?],
                None => d.knots.iter().collect(),
            };
            let reports = knots
                .into_iter()
                .map(|k| invariants_report(&d, k).map_err(|e| CliError::User(e.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(match (cli.format, knot) {
                (Format::Json, Some(_)) => to_json(&reports[0]),
                (Format::Json, None) => to_json(&reports),
                (Format::Text, _) => reports.iter().map(invariants_text).collect(),
            })
        }
        Command::D3 { file } => {
            let d = load(file, style, stderr)?;
            let r = d3_report(&d);
            if !r.agrees() {
                return Err(CliError::Internal(format!(
                    "closed form {} disagrees with expansion {}",
                    r.d3, r.d3_expansion
                )));
            }
            Ok(match cli.format {
                Format::Json => to_json(&r),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "H_1(M) = {}", r.homology);
                    let _ = writeln!(s, "PD(e) = {} in the meridian basis", list(&r.euler_class));
                    let _ = writeln!(s, "Euler class torsion: {}", if r.torsion { "yes" } else { "no" });
                    if let Some(b) = &r.b {
                        let _ = writeln!(s, "b = {}", list(b));
                    }
                    let _ = writeln!(s, "signature σ(Q) = {}", r.signature);
                    let _ = writeln!(s, "d3 = {}", r.d3);
                    let _ = writeln!(s, "d3 via {}-component (±1) expansion = {}", r.expanded_components, r.d3_expansion);
                    s
                }
            })
        }
        Command::Expand { file, output } => {
            let d = load(file, style, stderr)?;
            let text = DiagramFile::from_diagram(&expand_to_pm1(&d)).render();
            match output {
                Some(path) => {
                    write(path, &text)?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
        Command::Front { file, emit_diagram } => {
            let text = read(file)?;
            let doc = parse_front(&text).map_err(|e| CliError::User(format!("{}:{e}", file.display())))?;
            if let Some(path) = emit_diagram {
                let d = to_diagram(&doc).map_err(|e| CliError::User(format!("{}: {e}", file.display())))?;
                write(path, &DiagramFile::from_diagram(&d).render())?;
            }
            let r = front_report(&doc);
            Ok(match cli.format {
                Format::Json => to_json(&r),
                Format::Text => {
                    let mut s = String::new();
                    let _ = writeln!(s, "{:<4} {:<12} {:<10} {:>6} {:>5} {:>4} {:>4}", "#", "name", "role", "writhe", "cusps", "tb", "rot");
                    for (i, c) in r.components.iter().enumerate() {
                        let _ = writeln!(
                            s,
                            "{:<4} {:<12} {:<10} {:>6} {:>5} {:>4} {:>4}",
                            i + 1,
                            c.name.as_deref().unwrap_or("-"),
                            c.role.unwrap_or("-"),
                            c.writhe,
                            c.cusps,
                            c.tb,
                            c.rot
                        );
                    }
                    if r.components.len() > 1 {
                        let _ = writeln!(s, "linking:");
                        for row in &r.linking {
                            let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
                            let _ = writeln!(s, "  {}", cells.join(" "));
                        }
                    }
                    s
                }
            })
        }
    }
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli, style: Style) -> Outcome {
    if let Command::Check { file } = &cli.command {
        return check(file, cli.format, style);
    }
    let mut out = Outcome::default();
    match run(cli, style, &mut out.stderr) {
        Ok(stdout) => out.stdout = stdout,
        Err(e) => {
            let _ = writeln!(out.stderr, "{}: {e}", style.label(Severity::Error));
            out.code = e.exit_code();
        }
    }
    out
}

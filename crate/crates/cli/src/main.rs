use std::io::{IsTerminal, Write};
use std::panic;
use std::process::ExitCode;

use clap::Parser;
use surgeon_cli::{execute, Cli, Style};

fn color_enabled() -> bool {
    match std::env::var("SURGEON_COLOR").as_deref() {
        Ok("1") => true,
        Ok("0") => false,
        _ => std::io::stderr().is_terminal(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let style = Style { color: color_enabled() };
    let outcome = match panic::catch_unwind(|| execute(&cli, style)) {
        Ok(o) => o,
        Err(_) => return ExitCode::from(2),
    };
    let _ = std::io::stdout().write_all(outcome.stdout.as_bytes());
    let _ = std::io::stderr().write_all(outcome.stderr.as_bytes());
    ExitCode::from(outcome.code as u8)
}

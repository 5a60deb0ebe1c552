use std::io::Write;
use std::process::ExitCode;

use anyhow::Context;
use clap::Parser;

use shortcut_cli::{run, Args};

fn main() -> ExitCode {
    let args = Args::parse();
    let report = match run(&args) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.code as u8);
        }
    };
    for line in &report.warnings {
        eprintln!("{line}");
    }
    if let (Some(path), Some(svg)) = (&args.svg, &report.svg) {
        if let Err(e) = std::fs::write(path, svg).with_context(|| format!("writing {}", path.display())) {
            eprintln!("error: {e:#}");
            return ExitCode::from(1);
        }
    }
    let text = match serde_json::to_string_pretty(&report.json) {
        Ok(text) => text,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    // a closed pipe on stdout is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
    ExitCode::SUCCESS
}

mod args;
mod commands;
mod render;

use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use args::{Cli, Format};

fn provenance(cli: &Cli) -> serde_json::Value {
    json!({
        "psphere": psphere::VERSION,
        "cli": env!("CARGO_PKG_VERSION"),
        "density": "Im Omega evaluated on the real axis; eps-limit check uses eps = 1e-4, 1e-5, 1e-6",
        "tolerances": {
            "root": 1e-15,
            "quadrature": 1e-9,
            "user": cli.tol,
        },
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let report = match commands::run(&cli.command, cli.tol) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("psphere: {e}");
            return ExitCode::from(if e.is_config() { 2 } else { 3 });
        }
    };
    let text = match cli.format {
        Format::Csv => report.table.render(),
        Format::Json => render::json(&json!({
            "command": report.name,
            "config": report.config,
            "data": report.data,
            "provenance": provenance(&cli),
        })),
    };
    match &cli.out {
        None => print!("{text}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("psphere: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
    }
    ExitCode::SUCCESS
}

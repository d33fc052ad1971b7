//! `toroidal-lab`: batch front end for toroidal-core.
//!
//! Every run prints a metadata block and one table, as CSV (metadata as `#`
//! comment lines) or JSON. Floats use C's `%.15e`. Errors go to stderr as one
//! JSON object, with exit codes 2 (parse/config), 3 (pole/envelope),
//! 4 (convergence region) and 5 (numerical instability).

// `!(x >= y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod commands;
mod output;
mod plot;

use std::io::Write;
use std::process::ExitCode;

use clap::{error::ErrorKind as ClapErrorKind, Parser};

use commands::Cli;
use toroidal_core::Error;

/// Environment variable capping the worker threads.
const THREADS_VAR: &str = "TOROIDAL_LAB_THREADS";

fn error_json(name: &str, kind: &str, code: i32, message: &str) -> String {
    serde_json::json!({ "error": name, "kind": kind, "exit_code": code, "message": message }).to_string()
}

fn report(e: &Error) -> ExitCode {
    let kind = e.kind();
    let code = kind.exit_code();
    eprintln!("{}", error_json(e.name(), kind.as_str(), code, &e.to_string()));
    ExitCode::from(code as u8)
}

fn configure_threads() -> Result<(), Error> {
    let Ok(text) = std::env::var(THREADS_VAR) else {
        return Ok(());
    };
    let n: usize = text
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::InvalidArgument(format!("{THREADS_VAR} must be a positive integer, got {text:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("{}", error_json("UsageError", "config", 2, e.render().to_string().trim()));
            return ExitCode::from(2);
        }
    };
    if let Err(e) = configure_threads() {
        return report(&e);
    }
    let argv: Vec<String> = std::env::args().skip(1).collect();
    match commands::run(&cli, &argv.join(" ")) {
        Ok(text) => {
            let mut out = std::io::stdout().lock();
            if out.write_all(text.as_bytes()).and_then(|_| out.flush()).is_err() {
                return ExitCode::from(1);
            }
            ExitCode::SUCCESS
        }
        Err(e) => report(&e),
    }
}

//! `ncdist`: fit, sample and tabulate normal-Cauchy distributions.
//!
//! Exit status is 0 on success, 1 for usage or data errors and 2 when a fit
//! stops without meeting its convergence tolerance.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod table;

use std::ffi::OsString;
use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use args::Cli;
use commands::Status;

/// Parses `argv`, runs the command into `out` and maps the outcome to the
/// process exit status. Diagnostics go to stderr.
pub fn run_main<I, T>(argv: I, out: &mut dyn Write) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let status = commands::run(cli.command, out);
    let flushed = out.flush();
    match (status, flushed) {
        (Ok(Status::Done), Ok(())) => ExitCode::SUCCESS,
        (Ok(Status::NotConverged), Ok(())) => {
            eprintln!("ncdist: fit did not converge");
            ExitCode::from(2)
        }
        (Err(e), _) => {
            eprintln!("ncdist: {e}");
            ExitCode::from(1)
        }
        (_, Err(e)) => {
            eprintln!("ncdist: cannot write output: {e}");
            ExitCode::from(1)
        }
    }
}

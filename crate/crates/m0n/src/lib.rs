//! Command-line front end for `m0n-core`: argument grammar, dispatch,
//! JSON reports, tree files and Graphviz output.
//!
//! Exit codes: 0 on success, 1 on a domain error or a failed check, 2 on a
//! usage error.

pub mod args;
pub mod commands;
pub mod formats;
pub mod report;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;

pub use args::{Cli, Format};
pub use commands::CliError;
pub use report::Report;

/// Parses `argv` (including the program name), runs the command and writes
/// the rendering to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                2
            } else {
                let _ = out.write_all(text.as_bytes());
                0
            };
        }
    };
    let format = cli.output_format();
    if format == Format::Dot && !commands::has_dot(&cli.command) {
        let _ = writeln!(err, "error: this command has no Graphviz output");
        return 2;
    }
    match commands::execute(&cli) {
        Ok(report) => {
            let text = match format {
                Format::Json => report.to_json(),
                Format::Table => report.table.clone(),
                Format::Dot => report.dot.clone().unwrap_or_default(),
            };
            let _ = out.write_all(text.as_bytes());
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            1
        }
    }
}

//! The `mfo` command line.
//!
//! Exit codes: 0 on success or help, 1 on usage errors (bad flags or
//! unparsable input), 2 on errors raised by the engines, budget errors
//! included. Data goes to stdout, diagnostics to stderr.

pub mod args;
mod commands;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;
use mfo_lab::{write_csv, write_json_lines, Record};

use crate::args::{Cli, Format};

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Module(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Module(m) => write!(f, "error: {m}"),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Module(_) => 2,
        }
    }
}

macro_rules! module_error {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> CliError {
                CliError::Module(e.to_string())
            }
        }
    )*};
}

module_error!(mfo_core::CoreError, mfo_logic::LogicError, mfo_stats::StatsError, mfo_lab::LabError);

/// Records plus their plain-text rendering, one line each.
#[derive(Debug, Default)]
pub struct Output {
    pub records: Vec<Record>,
    pub lines: Vec<String>,
}

impl Output {
    pub(crate) fn push(&mut self, record: Record, line: impl Into<String>) {
        self.records.push(record);
        self.lines.push(line.into());
    }
}

/// Parses `argv` (program name first), runs the command and writes its
/// output. Returns the process exit code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(err, "{}", e.render());
                    1
                }
            };
        }
    };
    match commands::execute(&cli.command) {
        Ok(output) => match emit(&output, cli.format, out) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: writing output: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "{e}");
            e.exit_code()
        }
    }
}

fn emit(output: &Output, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Text => {
            for line in &output.lines {
                writeln!(out, "{line}")?;
            }
            Ok(())
        }
        Format::Json => write_json_lines(out, &output.records),
        Format::Csv => write_csv(out, &output.records).map_err(std::io::Error::other),
    }
}

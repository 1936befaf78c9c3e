//! `deformd`: verification runs, datasets and plots for the deformed
//! exterior derivative.

pub mod commands;
pub mod config;
pub mod expr;
pub mod formats;
pub mod output;
pub mod random;
pub mod suite;
pub mod svg;

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Parser;

use config::{Cli, Command, Format, RunConfig};
use output::{render, Output, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] deformd_core::Error),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

/// What a subcommand produced.
#[derive(Debug)]
pub struct Run {
    pub output: Output,
    pub plot: Option<String>,
    /// Side files, e.g. exported spectra.
    pub files: Vec<(PathBuf, String)>,
    /// Set when a check inside a data command failed.
    pub failure: Option<Report>,
}

impl Run {
    pub fn new(output: Output) -> Self {
        Self {
            output,
            plot: None,
            files: Vec::new(),
            failure: None,
        }
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses `args` (program name first) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("deformd: {e}");
            2
        }
    }
}

pub fn execute(command: &Command) -> Result<i32, CliError> {
    let config = RunConfig::from_command(command)?;
    let mut result = commands::dispatch(&config)?;
    if let Output::Report(r) = &result.output {
        if !r.passed() && result.failure.is_none() {
            result.failure = Some(r.failures());
        }
    }
    let default_format = if config.subcommand == "verify-all" { Format::Json } else { Format::Csv };
    let format = config.params.format.unwrap_or(default_format);
    let text = render(&result.output, &config, format);
    match &config.params.out {
        Some(path) => write_file(path, &text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })?;
        }
    }
    if config.params.plot {
        if let Some(svg) = &result.plot {
            let path = match &config.params.out {
                Some(p) => p.with_extension("svg"),
                None => PathBuf::from(format!("deformd-{}.svg", config.subcommand)),
            };
            write_file(&path, svg)?;
        }
    }
    for (path, text) in &result.files {
        write_file(path, text)?;
    }
    match result.failure {
        Some(report) => {
            let already_shown = config.params.out.is_none()
                && format == Format::Json
                && matches!(result.output, Output::Report(_));
            if !already_shown {
                eprint!("{}", report.to_json());
            }
            Ok(1)
        }
        None => Ok(0),
    }
}

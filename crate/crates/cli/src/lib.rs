//! File-based front end over `hcs-core`: set and driver file formats, run
//! manifests, the `hcs` subcommands and pipelines.

pub mod args;
pub mod commands;
pub mod error;
pub mod format;
pub mod manifest;
pub mod paths;
pub mod pipeline;

use std::io::Write;

use clap::error::ErrorKind as ClapErrorKind;
use clap::Parser;

use crate::args::{Cli, Command};
use crate::commands::{Ctx, Output, Report};
use crate::error::{CliError, Result};
use crate::paths::Workspace;

pub fn execute(ctx: &Ctx, command: &Command) -> Result<Report> {
    match command {
        Command::Gen1(a) => commands::gen1(ctx, a),
        Command::Gen2(a) => commands::gen2(ctx, a),
        Command::Bound(a) => commands::bound(ctx, a),
        Command::Enumerate(a) => commands::enumerate(ctx, a),
        Command::Verify(a) => commands::verify_cmd(ctx, a),
        Command::SacTrace(a) => commands::sac_trace(ctx, a),
        Command::Simulate(a) => commands::simulate(ctx, a),
        Command::Compare(a) => commands::compare(ctx, a),
        Command::Pipeline(a) => pipeline::run(ctx, a),
    }
}

/// Parses `argv` (program name first), runs it and prints to the given
/// streams. Returns the process exit code.
pub fn run<O: Write, E: Write>(argv: &[String], stdout: &mut O, stderr: &mut E) -> u8 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), ClapErrorKind::DisplayHelp | ClapErrorKind::DisplayVersion) => {
            let _ = write!(stdout, "{e}");
            return 0;
        }
        Err(e) => {
            let err = CliError::usage(e.to_string().trim_end());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.kind.exit_code();
        }
    };
    let ctx = Ctx {
        ws: Workspace::from_env(cli.dir.as_deref()),
        argv: argv.get(1..).unwrap_or_default().to_vec(),
        human: cli.human,
    };
    match execute(&ctx, &cli.command) {
        Ok(report) => {
            match report.output {
                Output::Summary { json, human } => {
                    let _ = if ctx.human {
                        writeln!(stdout, "{human}")
                    } else {
                        writeln!(stdout, "{json}")
                    };
                }
                Output::Raw(text) => {
                    let _ = write!(stdout, "{text}");
                }
            }
            match report.failure {
                Some(err) => {
                    let _ = writeln!(stderr, "{}", err.to_json());
                    err.kind.exit_code()
                }
                None => 0,
            }
        }
        Err(err) => {
            let _ = writeln!(stderr, "{}", err.to_json());
            err.kind.exit_code()
        }
    }
}

// Copyright 2026 The rcv-truncation Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! The `rcvtrunc` command-line tool.
//!
//! Exit codes: 0 success, 1 output error, 2 unreadable or malformed input,
//! 3 invalid argument, 4 empty corpus.

pub mod args;
mod commands;
mod corpus;
pub mod error;
pub mod input;
pub mod manifest;
pub mod render;

use std::ffi::OsString;
use std::io::Write;

use clap::Parser;
use rcv_truncation::Execution;

use crate::args::{Cli, Command};
use crate::commands::Context;
use crate::error::{CliError, EXIT_INVALID, EXIT_OK};
use crate::manifest::RunManifest;

/// Parses `argv` (program name first), runs the command and returns the
/// process exit code. Errors go to `stderr`.
pub fn run<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(stderr, "{}", e.render());
                return EXIT_INVALID;
            }
            let _ = write!(stdout, "{}", e.render());
            return EXIT_OK;
        }
    };
    let arguments = argv
        .iter()
        .skip(1)
        .map(|a| a.to_string_lossy().into_owned())
        .collect();
    match execute(&cli, arguments, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, arguments: Vec<String>, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut manifest = RunManifest::start(arguments);
    let mut ctx = Context {
        execution: if cli.sequential {
            Execution::Sequential
        } else {
            Execution::default()
        },
        manifest: &mut manifest,
        stdout,
    };
    match &cli.command {
        Command::Tabulate(a) => commands::tabulate_cmd(a, &mut ctx)?,
        Command::Sweep(a) => commands::sweep_cmd(a, &mut ctx)?,
        Command::Condorcet(a) => commands::condorcet_cmd(a, &mut ctx)?,
        Command::Sample(a) => commands::sample_cmd(a, &mut ctx)?,
        Command::Corpus(a) => corpus::corpus_cmd(a, &mut ctx)?,
    }
    let manifest = manifest.finish();
    let json = render::to_json(&serde_json::to_value(&manifest).expect("manifest serializes"));
    let targets = cli.manifest.iter().cloned().chain(match &cli.command {
        Command::Corpus(a) => Some(a.out_dir.join("manifest.json")),
        _ => None,
    });
    for path in targets {
        std::fs::write(&path, &json).map_err(|e| CliError::output(&path, e))?;
    }
    Ok(())
}

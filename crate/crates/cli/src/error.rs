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

use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_EMPTY_CORPUS: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    /// An input file is missing, unreadable or malformed.
    #[error("{}: {message}", path.display())]
    Input { path: PathBuf, message: String },
    #[error("{0}")]
    Invalid(String),
    #[error("{0}")]
    EmptyCorpus(String),
    #[error("{}: {source}", path.display())]
    Output { path: PathBuf, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => EXIT_PARSE,
            CliError::Invalid(_) => EXIT_INVALID,
            CliError::EmptyCorpus(_) => EXIT_EMPTY_CORPUS,
            CliError::Output { .. } => EXIT_IO,
        }
    }

    pub fn input(path: &Path, message: impl ToString) -> Self {
        CliError::Input {
            path: path.to_owned(),
            message: message.to_string(),
        }
    }

    pub fn invalid(message: impl ToString) -> Self {
        CliError::Invalid(message.to_string())
    }

    pub fn output(path: &Path, source: io::Error) -> Self {
        CliError::Output {
            path: path.to_owned(),
            source,
        }
    }
}

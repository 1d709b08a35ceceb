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

//! Ballot file formats and ballot cleaning.
//!
//! Three inputs are supported:
//!
//! * canonical profile CSV, one row per ballot class (`count,rank1,...`);
//! * ballot-image CSV, one row per voter, `;` separating overvoted marks;
//! * BLT, the usual interchange format for STV ballot data.
//!
//! Both CSV flavours accept an optional first line `candidates,<name>,...`
//! fixing the roster and its order. Without it the roster is every name seen
//! in the file, sorted.

mod blt;
mod images;
mod policy;
mod profile_csv;

use thiserror::Error;

use crate::profile::{validate_roster, ProfileError};

pub use blt::{parse_blt, write_blt, ParsedBlt};
pub use images::{parse_ballot_images_csv, write_ballot_images_csv};
pub use policy::{
    normalize_ballot, DuplicatePolicy, NormalizationPolicy, OvervotePolicy, RawBallot,
    SkipCounting, SkipPolicy,
};
pub use profile_csv::{parse_profile_csv, write_profile_csv};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IngestError {
    #[error("input is not valid UTF-8")]
    Encoding,
    #[error("line {line}: {message}")]
    Csv { line: u64, message: String },
    #[error("line {line}: unexpected header {found:?}")]
    Header { line: u64, found: String },
    #[error("line {line}: invalid ballot count {value:?}")]
    BadCount { line: u64, value: String },
    #[error("line {line}: empty ranking followed by a named candidate")]
    Gap { line: u64 },
    #[error("line {line}: more than {max} rankings")]
    TooManyRankings { line: u64, max: usize },
    #[error("line {line}: candidate {name:?} ranked twice")]
    RepeatedCandidate { line: u64, name: String },
    #[error("line {row}: unknown candidate {mark:?}")]
    UnknownCandidate { mark: String, row: u64 },
    #[error("profile has no ballots")]
    EmptyProfile,
    #[error("candidate name {0:?} cannot be written in this format")]
    UnsupportedName(String),
    #[error("line {line}: malformed BLT header")]
    BltHeader { line: u64 },
    #[error("line {line}: invalid token {token:?}")]
    BltToken { line: u64, token: String },
    #[error("line {line}: candidate index {index} outside 1..={candidates}")]
    BltIndex {
        line: u64,
        index: usize,
        candidates: usize,
    },
    #[error("line {line}: ballot data not terminated by 0")]
    BltMissingTerminator { line: u64 },
    #[error("file ends after {found} of {expected} candidate names")]
    BltTruncated { expected: usize, found: usize },
    #[error("line {line}: {source}")]
    Profile { line: u64, source: ProfileError },
}

impl IngestError {
    /// Line number the error refers to, when there is one.
    pub fn line(&self) -> Option<u64> {
        use IngestError::*;
        match self {
            Csv { line, .. }
            | Header { line, .. }
            | BadCount { line, .. }
            | Gap { line }
            | TooManyRankings { line, .. }
            | RepeatedCandidate { line, .. }
            | BltHeader { line }
            | BltToken { line, .. }
            | BltIndex { line, .. }
            | BltMissingTerminator { line }
            | Profile { line, .. } => Some(*line),
            UnknownCandidate { row, .. } => Some(*row),
            Encoding | EmptyProfile | UnsupportedName(_) | BltTruncated { .. } => None,
        }
    }
}

/// Line-numbered CSV records with quoting disabled.
fn csv_records(bytes: &[u8]) -> Result<Vec<(u64, Vec<String>)>, IngestError> {
    std::str::from_utf8(bytes).map_err(|_| IngestError::Encoding)?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .quoting(false)
        .trim(csv::Trim::All)
        .from_reader(bytes);
    let mut out = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| IngestError::Csv {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let fields: Vec<String> = record.iter().map(str::to_owned).collect();
        if fields.len() == 1 && fields[0].is_empty() {
            continue;
        }
        out.push((line, fields));
    }
    Ok(out)
}

const ROSTER_TAG: &str = "candidates";

/// Splits off a leading `candidates,...` record.
fn declared_roster(
    records: &mut Vec<(u64, Vec<String>)>,
) -> Result<Option<Vec<String>>, IngestError> {
    match records.first() {
        Some((line, fields)) if fields[0] == ROSTER_TAG => {
            let line = *line;
            let names: Vec<String> = fields[1..]
                .iter()
                .filter(|f| !f.is_empty())
                .cloned()
                .collect();
            records.remove(0);
            validate_roster(&names).map_err(|source| IngestError::Profile { line, source })?;
            Ok(Some(names))
        }
        _ => Ok(None),
    }
}

fn check_writable(name: &str, forbidden: &[char]) -> Result<(), IngestError> {
    if name.contains(forbidden) || name.trim() != name {
        return Err(IngestError::UnsupportedName(name.to_owned()));
    }
    Ok(())
}

#[cfg(test)]
pub(crate) const TABLE1_CSV: &str = "\
count,rank1,rank2,rank3,rank4
57,A,B,,
26,A,D,,
51,A,D,C,B
137,B,C,A,
2,B,C,D,
38,C,A,D,
16,C,B,D,
53,C,D,A,B
72,D,A,B,
15,D,A,C,B
33,D,B,A,C
";

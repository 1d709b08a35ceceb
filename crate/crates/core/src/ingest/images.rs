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

//! Ballot-image CSV: one row per voter, one column per rank position. An
//! empty cell is a skipped ranking and `A;B` marks an overvote. A header row
//! `rank1,...,rankK` is optional; when present it fixes the ballot depth.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{
    check_writable, csv_records, declared_roster, normalize_ballot, IngestError,
    NormalizationPolicy, RawBallot, ROSTER_TAG,
};
use crate::profile::{CandidateId, PreferenceProfile};

const OVERVOTE_SEPARATOR: char = ';';

pub fn parse_ballot_images_csv(
    bytes: &[u8],
    policy: &NormalizationPolicy,
) -> Result<PreferenceProfile, IngestError> {
    let mut records = csv_records(bytes)?;
    let declared = declared_roster(&mut records)?;
    let depth = match records.first() {
        Some((_, fields)) if is_rank_header(fields) => {
            let depth = fields.len();
            records.remove(0);
            Some(depth)
        }
        _ => None,
    };
    if records.is_empty() {
        return Err(IngestError::EmptyProfile);
    }

    let rows: Vec<(u64, Vec<Vec<String>>)> = records
        .into_iter()
        .map(|(line, fields)| {
            if let Some(max) = depth.filter(|&d| fields.len() > d) {
                return Err(IngestError::TooManyRankings { line, max });
            }
            let slots = fields
                .iter()
                .map(|cell| {
                    cell.split(OVERVOTE_SEPARATOR)
                        .map(str::trim)
                        .filter(|m| !m.is_empty())
                        .map(str::to_owned)
                        .collect()
                })
                .collect();
            Ok((line, slots))
        })
        .collect::<Result<_, _>>()?;

    let roster: Vec<String> = match declared {
        Some(r) => r,
        None => rows
            .iter()
            .flat_map(|(_, slots)| slots.iter().flatten().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    if roster.is_empty() {
        // Every cell blank and no declared roster: nothing to rank.
        return Err(IngestError::EmptyProfile);
    }

    let mut ballots = Vec::with_capacity(rows.len());
    for (line, slots) in rows {
        let slots = slots
            .into_iter()
            .map(|marks| {
                marks
                    .into_iter()
                    .map(|mark| {
                        roster
                            .iter()
                            .position(|r| *r == mark)
                            .map(CandidateId::new)
                            .ok_or(IngestError::UnknownCandidate { mark, row: line })
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ballots.push((normalize_ballot(&RawBallot::new(slots), policy), 1));
    }
    PreferenceProfile::new(roster, ballots)
        .map_err(|source| IngestError::Profile { line: 0, source })
}

fn is_rank_header(fields: &[String]) -> bool {
    fields
        .iter()
        .enumerate()
        .all(|(i, f)| *f == format!("rank{}", i + 1))
}

/// One row per voter, with a roster line and a rank header.
pub fn write_ballot_images_csv(profile: &PreferenceProfile) -> Result<String, IngestError> {
    for name in profile.roster() {
        check_writable(name, &[',', OVERVOTE_SEPARATOR])?;
    }
    let depth = profile
        .classes()
        .iter()
        .map(|c| c.ranking.len())
        .max()
        .unwrap_or(0)
        // A blank ballot needs a separator to stay a non-empty line.
        .max(2);
    let mut out = String::from(ROSTER_TAG);
    for name in profile.roster() {
        let _ = write!(out, ",{name}");
    }
    out.push('\n');
    let header: Vec<String> = (1..=depth).map(|k| format!("rank{k}")).collect();
    out.push_str(&header.join(","));
    out.push('\n');
    for ballot in profile.expand() {
        let cells: Vec<&str> = (0..depth)
            .map(|k| ballot.ranking().get(k).map_or("", |c| profile.name(*c)))
            .collect();
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    Ok(out)
}

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

//! `count,rank1,...,rankK` profile files.

use std::collections::BTreeSet;
use std::fmt::Write;

use super::{check_writable, csv_records, declared_roster, IngestError, ROSTER_TAG};
use crate::profile::{CandidateId, NormalizedBallot, PreferenceProfile};

pub fn parse_profile_csv(bytes: &[u8]) -> Result<PreferenceProfile, IngestError> {
    let mut records = csv_records(bytes)?;
    let declared = declared_roster(&mut records)?;
    let mut records = records.into_iter();
    let (header_line, header) = records.next().ok_or(IngestError::EmptyProfile)?;
    let depth = header_depth(&header).ok_or_else(|| IngestError::Header {
        line: header_line,
        found: header.join(","),
    })?;

    let mut rows: Vec<(u64, u64, Vec<String>)> = Vec::new();
    for (line, fields) in records {
        if fields.len() > depth + 1 {
            return Err(IngestError::TooManyRankings { line, max: depth });
        }
        let count = fields[0]
            .parse::<u64>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| IngestError::BadCount {
                line,
                value: fields[0].clone(),
            })?;
        let names = &fields[1..];
        let len = names.iter().take_while(|n| !n.is_empty()).count();
        if names[len..].iter().any(|n| !n.is_empty()) {
            return Err(IngestError::Gap { line });
        }
        let ranking = names[..len].to_vec();
        let mut seen = BTreeSet::new();
        if let Some(dup) = ranking.iter().find(|n| !seen.insert(n.as_str())) {
            return Err(IngestError::RepeatedCandidate {
                line,
                name: dup.clone(),
            });
        }
        rows.push((line, count, ranking));
    }
    if rows.is_empty() {
        return Err(IngestError::EmptyProfile);
    }

    let roster = match declared {
        Some(r) => r,
        None => rows
            .iter()
            .flat_map(|(_, _, r)| r.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect(),
    };
    let mut ballots = Vec::with_capacity(rows.len());
    for (line, count, names) in rows {
        let ids = names
            .into_iter()
            .map(|name| {
                roster
                    .iter()
                    .position(|r| *r == name)
                    .map(CandidateId::new)
                    .ok_or(IngestError::UnknownCandidate {
                        mark: name,
                        row: line,
                    })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let ballot = NormalizedBallot::new(ids).expect("repeats rejected above");
        ballots.push((ballot, count));
    }
    PreferenceProfile::new(roster, ballots)
        .map_err(|source| IngestError::Profile { line: 0, source })
}

/// `K` for a `count,rank1,...,rankK` header.
fn header_depth(header: &[String]) -> Option<usize> {
    if header.first().map(String::as_str) != Some("count") {
        return None;
    }
    header[1..]
        .iter()
        .enumerate()
        .all(|(i, h)| *h == format!("rank{}", i + 1))
        .then_some(header.len() - 1)
}

/// Writes the canonical form: roster line, header, one row per ballot class.
pub fn write_profile_csv(profile: &PreferenceProfile) -> Result<String, IngestError> {
    for name in profile.roster() {
        check_writable(name, &[','])?;
    }
    let depth = profile
        .classes()
        .iter()
        .map(|c| c.ranking.len())
        .max()
        .unwrap_or(0)
        .max(1);
    let mut out = String::new();
    out.push_str(ROSTER_TAG);
    for name in profile.roster() {
        let _ = write!(out, ",{name}");
    }
    out.push_str("\ncount");
    for k in 1..=depth {
        let _ = write!(out, ",rank{k}");
    }
    out.push('\n');
    for class in profile.classes() {
        let _ = write!(out, "{}", class.count);
        for k in 0..depth {
            out.push(',');
            if let Some(c) = class.ranking.ranking().get(k) {
                out.push_str(profile.name(*c));
            }
        }
        out.push('\n');
    }
    Ok(out)
}

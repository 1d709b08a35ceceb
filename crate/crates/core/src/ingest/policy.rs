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

use serde::{Deserialize, Serialize};

use crate::profile::{CandidateId, NormalizedBallot};

/// A voter's marks per rank position before cleaning. An empty slot is a
/// skipped ranking; a slot with several candidates is an overvote.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawBallot {
    pub slots: Vec<Vec<CandidateId>>,
}

impl RawBallot {
    pub fn new(slots: Vec<Vec<CandidateId>>) -> Self {
        RawBallot { slots }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OvervotePolicy {
    /// Keep only the rankings before the overvoted position.
    #[default]
    TruncateAtOvervote,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipPolicy {
    /// Close up empty positions.
    #[default]
    IgnoreSkips,
    /// Discard everything after the second skipped position.
    StopAfterTwoSkips,
}

/// How skipped positions add up under [`SkipPolicy::StopAfterTwoSkips`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipCounting {
    #[default]
    Consecutive,
    Cumulative,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DuplicatePolicy {
    /// Drop repeat marks for an already-ranked candidate and keep reading.
    #[default]
    KeepFirstOccurrence,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default, rename_all = "kebab-case")]
pub struct NormalizationPolicy {
    pub overvote: OvervotePolicy,
    pub skips: SkipPolicy,
    pub skip_counting: SkipCounting,
    pub duplicates: DuplicatePolicy,
}

impl NormalizationPolicy {
    pub fn stop_after_two_skips() -> Self {
        NormalizationPolicy {
            skips: SkipPolicy::StopAfterTwoSkips,
            ..Self::default()
        }
    }
}

pub fn normalize_ballot(raw: &RawBallot, policy: &NormalizationPolicy) -> NormalizedBallot {
    let mut ranking: Vec<CandidateId> = Vec::new();
    let mut consecutive = 0usize;
    let mut total = 0usize;
    for slot in &raw.slots {
        let mut marks = slot.clone();
        marks.sort_unstable();
        marks.dedup();
        match marks.as_slice() {
            [] => {
                consecutive += 1;
                total += 1;
                if policy.skips == SkipPolicy::StopAfterTwoSkips {
                    let skipped = match policy.skip_counting {
                        SkipCounting::Consecutive => consecutive,
                        SkipCounting::Cumulative => total,
                    };
                    if skipped >= 2 {
                        break;
                    }
                }
            }
            [single] => {
                consecutive = 0;
                match policy.duplicates {
                    DuplicatePolicy::KeepFirstOccurrence => {
                        if !ranking.contains(single) {
                            ranking.push(*single);
                        }
                    }
                }
            }
            _ => match policy.overvote {
                OvervotePolicy::TruncateAtOvervote => break,
            },
        }
    }
    NormalizedBallot::new(ranking).expect("duplicates removed above")
}

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

//! Single-winner instant-runoff tabulation.
//!
//! Each round counts every ballot for its highest-ranked continuing
//! candidate. A candidate holding more than half of the round's
//! non-exhausted ballots wins; otherwise exactly one candidate with the
//! fewest votes is eliminated and the count repeats.
//!
//! Ties for elimination are broken by looking back through earlier rounds,
//! most recent first, keeping only the tied candidates that had the fewest
//! votes there. If the tie survives every earlier round, the lowest roster
//! index is eliminated.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::profile::{CandidateId, PreferenceProfile, ProfileError, TruncationLevel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round_index: usize,
    /// Votes held by each continuing candidate.
    pub tallies: BTreeMap<CandidateId, u64>,
    pub eliminated: Option<CandidateId>,
    /// Ballots with no continuing candidate ranked.
    pub exhausted_total: u64,
    pub tie_break_applied: bool,
}

impl RoundRecord {
    /// Ballots still counting toward some candidate in this round.
    pub fn active_total(&self) -> u64 {
        self.tallies.values().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TabulationResult {
    pub winner: CandidateId,
    pub rounds: Vec<RoundRecord>,
    pub tl_used: TruncationLevel,
}

impl TabulationResult {
    pub fn final_round(&self) -> &RoundRecord {
        self.rounds.last().expect("tabulation always has a round")
    }
}

/// Tabulates `profile` with every ballot cut to `tl` rankings.
pub fn tabulate(
    profile: &PreferenceProfile,
    tl: TruncationLevel,
) -> Result<TabulationResult, ProfileError> {
    profile.check_level(tl)?;
    let count = Count::run(profile, tl.get(), true);
    let rounds = count.records;
    Ok(TabulationResult {
        winner: count.winner,
        rounds,
        tl_used: tl,
    })
}

/// Winner only; skips building round records.
pub(crate) fn winner_at(profile: &PreferenceProfile, tl: usize) -> CandidateId {
    Count::run(profile, tl, false).winner
}

struct Count {
    winner: CandidateId,
    records: Vec<RoundRecord>,
}

impl Count {
    fn run(profile: &PreferenceProfile, tl: usize, keep_records: bool) -> Count {
        let n = profile.candidates();
        let classes = profile.classes();
        let voters = profile.voters();
        let mut continuing = vec![true; n];
        let mut remaining = n;
        let mut cursor = vec![0usize; classes.len()];
        // Dense tallies of every round so far, for tie-breaking.
        let mut history: Vec<Vec<u64>> = Vec::new();
        let mut records = Vec::new();

        loop {
            let mut tallies = vec![0u64; n];
            let mut exhausted = 0u64;
            for (class, pos) in classes.iter().zip(cursor.iter_mut()) {
                let ranking = class.ranking.ranking();
                let depth = tl.min(ranking.len());
                while *pos < depth && !continuing[ranking[*pos].index()] {
                    *pos += 1;
                }
                if *pos < depth {
                    tallies[ranking[*pos].index()] += class.count;
                } else {
                    exhausted += class.count;
                }
            }
            let active = voters - exhausted;

            let mut decided = None;
            if remaining == 1 {
                decided = continuing.iter().position(|&c| c);
            } else if let Some(leader) = (0..n)
                .filter(|&c| continuing[c])
                .find(|&c| 2 * tallies[c] > active)
            {
                decided = Some(leader);
            }

            let (eliminated, tie_break_applied) = match decided {
                Some(_) => (None, false),
                None => {
                    let low = (0..n)
                        .filter(|&c| continuing[c])
                        .map(|c| tallies[c])
                        .min()
                        .expect("at least two continuing candidates");
                    let tied: Vec<usize> = (0..n)
                        .filter(|&c| continuing[c] && tallies[c] == low)
                        .collect();
                    let tie = tied.len() > 1;
                    (Some(break_tie(tied, &history)), tie)
                }
            };

            if keep_records {
                records.push(RoundRecord {
                    round_index: history.len() + 1,
                    tallies: (0..n)
                        .filter(|&c| continuing[c])
                        .map(|c| (CandidateId::new(c), tallies[c]))
                        .collect(),
                    eliminated: eliminated.map(CandidateId::new),
                    exhausted_total: exhausted,
                    tie_break_applied,
                });
            }

            if let Some(w) = decided {
                return Count {
                    winner: CandidateId::new(w),
                    records,
                };
            }
            let e = eliminated.expect("no winner implies an elimination");
            continuing[e] = false;
            remaining -= 1;
            history.push(tallies);
        }
    }
}

/// Picks which of the `tied` candidates to eliminate. `earlier` holds the
/// tallies of all previous rounds, oldest first.
fn break_tie(mut tied: Vec<usize>, earlier: &[Vec<u64>]) -> usize {
    for round in earlier.iter().rev() {
        if tied.len() == 1 {
            break;
        }
        let low = tied.iter().map(|&c| round[c]).min().unwrap_or(0);
        tied.retain(|&c| round[c] == low);
    }
    // `tied` is in ascending roster order.
    tied[0]
}

/// The candidate with the most first-choice votes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PluralityOutcome {
    pub winner: CandidateId,
    pub votes: u64,
    pub tie_break_applied: bool,
}

/// Most first-choice votes wins. A tie at the top goes to the candidate that
/// tabulation at `tl = 1` would leave standing, which is the highest roster
/// index among the tied leaders.
pub fn plurality_winner(profile: &PreferenceProfile) -> PluralityOutcome {
    let tallies = first_choice_tallies(profile);
    let votes = *tallies.iter().max().expect("roster is non-empty");
    let leaders: Vec<usize> = (0..tallies.len())
        .filter(|&c| tallies[c] == votes)
        .collect();
    PluralityOutcome {
        winner: CandidateId::new(*leaders.last().unwrap()),
        votes,
        tie_break_applied: leaders.len() > 1,
    }
}

/// True when some candidate holds more than half of all first choices.
pub fn has_first_round_majority(profile: &PreferenceProfile) -> bool {
    let voters = profile.voters();
    first_choice_tallies(profile)
        .into_iter()
        .any(|t| 2 * t > voters)
}

fn first_choice_tallies(profile: &PreferenceProfile) -> Vec<u64> {
    let mut tallies = vec![0u64; profile.candidates()];
    for class in profile.classes() {
        if let Some(c) = class.ranking.first() {
            tallies[c.index()] += class.count;
        }
    }
    tallies
}

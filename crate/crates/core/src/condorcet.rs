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

//! Head-to-head comparisons under the weak order model: every ranked
//! candidate is preferred to every unranked one, and unranked candidates are
//! tied with each other.

use serde::{Deserialize, Serialize};

use crate::profile::{CandidateId, PreferenceProfile, ProfileError, TruncationLevel};

/// `prefer(i, j)` is the number of voters ranking `i` above `j`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairwiseMatrix {
    candidates: usize,
    cells: Vec<u64>,
}

impl PairwiseMatrix {
    pub fn candidates(&self) -> usize {
        self.candidates
    }

    pub fn prefer(&self, i: CandidateId, j: CandidateId) -> u64 {
        self.cells[i.index() * self.candidates + j.index()]
    }

    /// True when strictly more voters prefer `i` to `j` than `j` to `i`.
    pub fn beats(&self, i: CandidateId, j: CandidateId) -> bool {
        self.prefer(i, j) > self.prefer(j, i)
    }

    /// Row-major copy of the matrix.
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        self.cells
            .chunks(self.candidates.max(1))
            .map(<[u64]>::to_vec)
            .collect()
    }
}

pub fn pairwise_matrix(
    profile: &PreferenceProfile,
    tl: TruncationLevel,
) -> Result<PairwiseMatrix, ProfileError> {
    profile.check_level(tl)?;
    let n = profile.candidates();
    let mut cells = vec![0u64; n * n];
    let mut position = vec![usize::MAX; n];
    for class in profile.classes() {
        let ranked = &class.ranking.ranking()[..tl.get().min(class.ranking.len())];
        for (p, c) in ranked.iter().enumerate() {
            position[c.index()] = p;
        }
        for (p, winner) in ranked.iter().enumerate() {
            let row = &mut cells[winner.index() * n..(winner.index() + 1) * n];
            for (other, cell) in row.iter_mut().enumerate() {
                if position[other] > p {
                    *cell += class.count;
                }
            }
        }
        for c in ranked {
            position[c.index()] = usize::MAX;
        }
    }
    Ok(PairwiseMatrix {
        candidates: n,
        cells,
    })
}

/// The candidate beating every other candidate head to head, if any.
/// A pairwise tie is not a win.
pub fn condorcet_winner(
    profile: &PreferenceProfile,
    tl: TruncationLevel,
) -> Result<Option<CandidateId>, ProfileError> {
    Ok(winner_of(&pairwise_matrix(profile, tl)?))
}

pub fn winner_of(matrix: &PairwiseMatrix) -> Option<CandidateId> {
    let n = matrix.candidates();
    (0..n).map(CandidateId::new).find(|&c| {
        (0..n)
            .map(CandidateId::new)
            .filter(|&x| x != c)
            .all(|x| matrix.beats(c, x))
    })
}

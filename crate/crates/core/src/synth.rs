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

//! Random preference profiles for fixtures, property tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::profile::{NormalizedBallot, PreferenceProfile};

/// Roster `c1..cn`.
pub fn roster(candidates: usize) -> Vec<String> {
    (1..=candidates).map(|i| format!("c{i}")).collect()
}

/// Impartial culture with partial ballots: every voter ranks a uniformly
/// random permutation, cut to a uniformly random length in `0..=n`.
pub fn impartial_partial<R: Rng + ?Sized>(
    rng: &mut R,
    candidates: usize,
    voters: usize,
) -> PreferenceProfile {
    let mut perm: Vec<usize> = (0..candidates).collect();
    let ballots: Vec<_> = (0..voters)
        .map(|_| {
            perm.shuffle(rng);
            let len = rng.random_range(0..=candidates);
            (
                NormalizedBallot::from_indices(&perm[..len]).expect("permutation prefix"),
                1,
            )
        })
        .collect();
    PreferenceProfile::new(roster(candidates), ballots).expect("at least one voter")
}

/// A profile with a few factions. Each faction shares a base ordering; each
/// voter swaps a couple of adjacent candidates and stops at a random depth
/// skewed toward short ballots. Produces the close multi-round races that
/// truncation can affect.
pub fn factional<R: Rng + ?Sized>(
    rng: &mut R,
    candidates: usize,
    voters: usize,
    factions: usize,
) -> PreferenceProfile {
    let bases: Vec<Vec<usize>> = (0..factions.max(1))
        .map(|_| {
            let mut b: Vec<usize> = (0..candidates).collect();
            b.shuffle(rng);
            b
        })
        .collect();
    let weights: Vec<u32> = bases.iter().map(|_| rng.random_range(5..15)).collect();
    let total: u32 = weights.iter().sum();
    let ballots: Vec<_> = (0..voters)
        .map(|_| {
            let mut pick = rng.random_range(0..total);
            let mut f = 0;
            while pick >= weights[f] {
                pick -= weights[f];
                f += 1;
            }
            let mut ranking = bases[f].clone();
            for _ in 0..2 {
                if candidates > 1 {
                    let i = rng.random_range(0..candidates - 1);
                    ranking.swap(i, i + 1);
                }
            }
            let depth = 1 + rng
                .random_range(0..candidates)
                .min(rng.random_range(0..candidates));
            ranking.truncate(depth);
            (
                NormalizedBallot::from_indices(&ranking).expect("permutation prefix"),
                1,
            )
        })
        .collect();
    PreferenceProfile::new(roster(candidates), ballots).expect("at least one voter")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resampling::run_rng;

    #[test]
    fn shapes() {
        let mut rng = run_rng(1, 0);
        let p = impartial_partial(&mut rng, 5, 40);
        assert_eq!((p.candidates(), p.voters()), (5, 40));
        let q = factional(&mut rng, 7, 300, 3);
        assert_eq!((q.candidates(), q.voters()), (7, 300));
        assert!(q.classes().iter().all(|c| !c.ranking.is_empty()));
    }
}

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

//! Brute-force reference implementations used by the acceptance suite.
//! They work voter by voter on plain index lists and share no code with the
//! library.

use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Round {
    pub tallies: BTreeMap<usize, u64>,
    pub eliminated: Option<usize>,
    pub exhausted: u64,
    pub tie_break: bool,
}

/// Instant runoff on `ballots` cut to `tl` rankings. Returns the winner and
/// every round.
///
/// A round counts each ballot for its first continuing candidate. A sole
/// survivor wins; so does anyone with more than half of the non-exhausted
/// ballots. Otherwise one lowest-tally candidate goes: among several, look
/// back through earlier rounds (latest first) and keep only those with the
/// fewest votes there, and if that never leaves one, take the lowest index.
pub fn instant_runoff(n: usize, ballots: &[Vec<usize>], tl: usize) -> (usize, Vec<Round>) {
    let cut: Vec<&[usize]> = ballots.iter().map(|b| &b[..tl.min(b.len())]).collect();
    let mut continuing = vec![true; n];
    let mut history: Vec<Vec<u64>> = Vec::new();
    let mut rounds = Vec::new();
    loop {
        let mut tally = vec![0u64; n];
        let mut exhausted = 0;
        for b in &cut {
            match b.iter().find(|&&c| continuing[c]) {
                Some(&c) => tally[c] += 1,
                None => exhausted += 1,
            }
        }
        let alive: Vec<usize> = (0..n).filter(|&c| continuing[c]).collect();
        let active: u64 = alive.iter().map(|&c| tally[c]).sum();
        let tallies = alive.iter().map(|&c| (c, tally[c])).collect();
        let majority = alive.iter().copied().find(|&c| 2 * tally[c] > active);
        if alive.len() == 1 || majority.is_some() {
            rounds.push(Round {
                tallies,
                eliminated: None,
                exhausted,
                tie_break: false,
            });
            return (majority.unwrap_or(alive[0]), rounds);
        }
        let low = alive.iter().map(|&c| tally[c]).min().unwrap();
        let mut tied: Vec<usize> = alive.iter().copied().filter(|&c| tally[c] == low).collect();
        let tie_break = tied.len() > 1;
        for earlier in history.iter().rev() {
            if tied.len() == 1 {
                break;
            }
            let m = tied.iter().map(|&c| earlier[c]).min().unwrap();
            tied.retain(|&c| earlier[c] == m);
        }
        let loser = tied[0];
        rounds.push(Round {
            tallies,
            eliminated: Some(loser),
            exhausted,
            tie_break,
        });
        continuing[loser] = false;
        history.push(tally);
    }
}

#[allow(clippy::needless_range_loop)]
/// `m[i][j]`: voters ranking `i` and either not ranking `j` or ranking it lower.
pub fn pairwise(n: usize, ballots: &[Vec<usize>], tl: usize) -> Vec<Vec<u64>> {
    let mut m = vec![vec![0u64; n]; n];
    for b in ballots {
        let b = &b[..tl.min(b.len())];
        let pos = |c: usize| b.iter().position(|&x| x == c);
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if let Some(pi) = pos(i) {
                    if pos(j).map_or(true, |pj| pi < pj) {
                        m[i][j] += 1;
                    }
                }
            }
        }
    }
    m
}

pub fn condorcet(m: &[Vec<u64>]) -> Option<usize> {
    let n = m.len();
    (0..n).find(|&c| (0..n).all(|x| x == c || m[c][x] > m[x][c]))
}

/// Every strict ranking of a subset of `0..n`, the empty one included.
pub fn ballot_types(n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..n {
        let mut next = Vec::new();
        for prefix in &frontier {
            for c in 0..n {
                if !prefix.contains(&c) {
                    let mut b: Vec<usize> = prefix.clone();
                    b.push(c);
                    next.push(b);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Calls `f` on every multiset of exactly `size` items drawn from `types`.
pub fn for_each_multiset(types: &[Vec<usize>], size: usize, f: &mut dyn FnMut(&[Vec<usize>])) {
    fn go(
        types: &[Vec<usize>],
        start: usize,
        left: usize,
        acc: &mut Vec<Vec<usize>>,
        f: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        if left == 0 {
            f(acc);
            return;
        }
        for t in start..types.len() {
            acc.push(types[t].clone());
            go(types, t, left - 1, acc, f);
            acc.pop();
        }
    }
    go(types, 0, size, &mut Vec::new(), f);
}

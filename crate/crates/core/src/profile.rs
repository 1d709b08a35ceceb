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

//! Election data model: candidates, normalized ballots and count-compressed
//! preference profiles.
//!
//! A [`PreferenceProfile`] is immutable once built. Ballot classes are kept in
//! a canonical order (sorted by ranking) with identical rankings merged, so two
//! profiles describing the same multiset of ballots compare equal.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building or transforming a profile.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProfileError {
    #[error("the candidate roster is empty")]
    EmptyRoster,
    #[error("candidate name at roster position {0} is empty")]
    EmptyName(usize),
    #[error("candidate name {0:?} appears more than once in the roster")]
    DuplicateName(String),
    #[error("candidate index {index} is outside the roster of {candidates}")]
    CandidateOutOfRange { index: usize, candidates: usize },
    #[error("candidate index {0} is ranked twice on one ballot")]
    DuplicateOnBallot(usize),
    #[error("ballot class has a zero count")]
    ZeroCount,
    #[error("profile has no voters")]
    NoVoters,
    #[error("truncation level {tl} is outside 1..={candidates}")]
    InvalidTruncation { tl: usize, candidates: usize },
}

/// Position of a candidate in the election roster.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CandidateId(usize);

impl CandidateId {
    pub const fn new(index: usize) -> Self {
        CandidateId(index)
    }

    pub const fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A strict partial ranking: distinct candidates, most preferred first.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct NormalizedBallot(Vec<CandidateId>);

impl NormalizedBallot {
    /// Builds a ballot, rejecting repeated candidates.
    pub fn new(ranking: Vec<CandidateId>) -> Result<Self, ProfileError> {
        let mut seen = HashSet::with_capacity(ranking.len());
        for c in &ranking {
            if !seen.insert(*c) {
                return Err(ProfileError::DuplicateOnBallot(c.index()));
            }
        }
        Ok(NormalizedBallot(ranking))
    }

    /// Convenience constructor from raw roster indices.
    pub fn from_indices(indices: &[usize]) -> Result<Self, ProfileError> {
        Self::new(indices.iter().copied().map(CandidateId).collect())
    }

    pub fn empty() -> Self {
        NormalizedBallot(Vec::new())
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> Option<CandidateId> {
        self.0.first().copied()
    }

    /// The first `tl` entries of the ranking.
    pub fn truncated(&self, tl: usize) -> NormalizedBallot {
        NormalizedBallot(self.0[..tl.min(self.0.len())].to_vec())
    }
}

/// Maximum number of candidates a voter may rank. Always within `1..=n`
/// for the profile it was validated against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TruncationLevel(usize);

impl TruncationLevel {
    pub fn new(tl: usize, candidates: usize) -> Result<Self, ProfileError> {
        if tl == 0 || tl > candidates {
            return Err(ProfileError::InvalidTruncation { tl, candidates });
        }
        Ok(TruncationLevel(tl))
    }

    pub const fn get(self) -> usize {
        self.0
    }
}

/// A ballot ranking together with the number of voters who cast it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallotClass {
    pub ranking: NormalizedBallot,
    pub count: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PreferenceProfile {
    roster: Vec<String>,
    classes: Vec<BallotClass>,
    voters: u64,
}

impl PreferenceProfile {
    /// Builds a profile from a roster and `(ballot, count)` pairs. Identical
    /// ballots are merged.
    pub fn new<I>(roster: Vec<String>, ballots: I) -> Result<Self, ProfileError>
    where
        I: IntoIterator<Item = (NormalizedBallot, u64)>,
    {
        validate_roster(&roster)?;
        let n = roster.len();
        let mut merged: BTreeMap<NormalizedBallot, u64> = BTreeMap::new();
        for (ballot, count) in ballots {
            if count == 0 {
                return Err(ProfileError::ZeroCount);
            }
            if let Some(bad) = ballot.ranking().iter().find(|c| c.index() >= n) {
                return Err(ProfileError::CandidateOutOfRange {
                    index: bad.index(),
                    candidates: n,
                });
            }
            *merged.entry(ballot).or_insert(0) += count;
        }
        Self::from_merged(roster, merged)
    }

    fn from_merged(
        roster: Vec<String>,
        merged: BTreeMap<NormalizedBallot, u64>,
    ) -> Result<Self, ProfileError> {
        let voters: u64 = merged.values().sum();
        if voters == 0 {
            return Err(ProfileError::NoVoters);
        }
        let classes = merged
            .into_iter()
            .map(|(ranking, count)| BallotClass { ranking, count })
            .collect();
        Ok(PreferenceProfile {
            roster,
            classes,
            voters,
        })
    }

    pub fn roster(&self) -> &[String] {
        &self.roster
    }

    /// Number of candidates, `n`.
    pub fn candidates(&self) -> usize {
        self.roster.len()
    }

    /// Total number of voters, `V`.
    pub fn voters(&self) -> u64 {
        self.voters
    }

    pub fn classes(&self) -> &[BallotClass] {
        &self.classes
    }

    pub fn name(&self, id: CandidateId) -> &str {
        &self.roster[id.index()]
    }

    pub fn candidate_by_name(&self, name: &str) -> Option<CandidateId> {
        self.roster.iter().position(|r| r == name).map(CandidateId)
    }

    pub fn candidate_ids(&self) -> impl Iterator<Item = CandidateId> + '_ {
        (0..self.roster.len()).map(CandidateId)
    }

    /// Validates `tl` against this profile's candidate count.
    pub fn truncation_level(&self, tl: usize) -> Result<TruncationLevel, ProfileError> {
        TruncationLevel::new(tl, self.candidates())
    }

    /// The profile with every ballot cut to its first `tl` rankings; ballots
    /// that become identical are merged.
    pub fn truncate(&self, tl: TruncationLevel) -> Result<PreferenceProfile, ProfileError> {
        self.check_level(tl)?;
        let mut merged: BTreeMap<NormalizedBallot, u64> = BTreeMap::new();
        for class in &self.classes {
            *merged.entry(class.ranking.truncated(tl.get())).or_insert(0) += class.count;
        }
        Self::from_merged(self.roster.clone(), merged)
    }

    pub(crate) fn check_level(&self, tl: TruncationLevel) -> Result<(), ProfileError> {
        if tl.get() > self.candidates() {
            return Err(ProfileError::InvalidTruncation {
                tl: tl.get(),
                candidates: self.candidates(),
            });
        }
        Ok(())
    }

    pub fn stats(&self) -> ProfileStats {
        let mut length_histogram = BTreeMap::new();
        for class in &self.classes {
            *length_histogram.entry(class.ranking.len()).or_insert(0) += class.count;
        }
        ProfileStats {
            candidates: self.candidates(),
            voters: self.voters,
            length_histogram,
        }
    }

    /// Iterates over one ballot per voter, in class order.
    pub fn expand(&self) -> impl Iterator<Item = &NormalizedBallot> + '_ {
        self.classes
            .iter()
            .flat_map(|c| std::iter::repeat(&c.ranking).take(c.count as usize))
    }
}

pub(crate) fn validate_roster(roster: &[String]) -> Result<(), ProfileError> {
    if roster.is_empty() {
        return Err(ProfileError::EmptyRoster);
    }
    let mut seen = HashSet::with_capacity(roster.len());
    for (i, name) in roster.iter().enumerate() {
        if name.trim().is_empty() {
            return Err(ProfileError::EmptyName(i));
        }
        if !seen.insert(name.as_str()) {
            return Err(ProfileError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

/// Candidate count, voter count and ballots by ranking length.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileStats {
    pub candidates: usize,
    pub voters: u64,
    pub length_histogram: BTreeMap<usize, u64>,
}

pub fn truncate_profile(
    profile: &PreferenceProfile,
    tl: TruncationLevel,
) -> Result<PreferenceProfile, ProfileError> {
    profile.truncate(tl)
}

pub fn profile_stats(profile: &PreferenceProfile) -> ProfileStats {
    profile.stats()
}


#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn table1_stats() {
        let stats = table1().stats();
        assert_eq!(stats.candidates, 4);
        assert_eq!(stats.voters, 500);
        assert_eq!(
            stats.length_histogram,
            BTreeMap::from([(2, 83), (3, 265), (4, 152)])
        );
    }

    #[test]
    fn empty_rankings_only() {
        let p =
            PreferenceProfile::new(names(&["A", "B"]), [(NormalizedBallot::empty(), 5)]).unwrap();
        let stats = p.stats();
        assert_eq!((stats.candidates, stats.voters), (2, 5));
        assert_eq!(stats.length_histogram, BTreeMap::from([(0, 5)]));
    }

    #[test]
    fn single_ballot() {
        let p = PreferenceProfile::new(
            names(&["A"]),
            [(NormalizedBallot::from_indices(&[0]).unwrap(), 1)],
        )
        .unwrap();
        assert_eq!(p.stats().voters, 1);
    }

    #[test]
    fn truncate_to_first_choices() {
        let p = table1();
        let t1 = p.truncate(p.truncation_level(1).unwrap()).unwrap();
        let got: Vec<(Vec<usize>, u64)> = t1
            .classes()
            .iter()
            .map(|c| {
                (
                    c.ranking.ranking().iter().map(|x| x.index()).collect(),
                    c.count,
                )
            })
            .collect();
        assert_eq!(
            got,
            vec![
                (vec![0], 134),
                (vec![1], 139),
                (vec![2], 107),
                (vec![3], 120)
            ]
        );
    }

    #[test]
    fn truncate_at_two_keeps_second_choice() {
        let p = table1();
        let t2 = p.truncate(p.truncation_level(2).unwrap()).unwrap();
        // The 51-voter A>D>C>B class merges with the 26-voter A>D class.
        let ad = NormalizedBallot::from_indices(&[0, 3]).unwrap();
        let class = t2.classes().iter().find(|c| c.ranking == ad).unwrap();
        assert_eq!(class.count, 77);
        assert_eq!(t2.voters(), 500);
        assert!(t2.classes().iter().all(|c| c.ranking.len() <= 2));
    }

    #[test]
    fn truncate_at_n_is_identity() {
        let p = table1();
        assert_eq!(p.truncate(p.truncation_level(4).unwrap()).unwrap(), p);
    }

    #[test]
    fn invalid_levels() {
        let p = table1();
        assert_eq!(
            p.truncation_level(0),
            Err(ProfileError::InvalidTruncation {
                tl: 0,
                candidates: 4
            })
        );
        assert!(p.truncation_level(5).is_err());
        let foreign = TruncationLevel::new(6, 9).unwrap();
        assert!(p.truncate(foreign).is_err());
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            PreferenceProfile::new(vec![], std::iter::empty()),
            Err(ProfileError::EmptyRoster)
        );
        assert_eq!(
            PreferenceProfile::new(names(&["A", "A"]), [(NormalizedBallot::empty(), 1)]),
            Err(ProfileError::DuplicateName("A".into()))
        );
        assert_eq!(
            PreferenceProfile::new(names(&["A", " "]), [(NormalizedBallot::empty(), 1)]),
            Err(ProfileError::EmptyName(1))
        );
        assert_eq!(
            PreferenceProfile::new(
                names(&["A"]),
                [(NormalizedBallot::from_indices(&[1]).unwrap(), 1)]
            ),
            Err(ProfileError::CandidateOutOfRange {
                index: 1,
                candidates: 1
            })
        );
        assert_eq!(
            PreferenceProfile::new(names(&["A"]), [(NormalizedBallot::empty(), 0)]),
            Err(ProfileError::ZeroCount)
        );
        assert_eq!(
            PreferenceProfile::new(names(&["A"]), std::iter::empty()),
            Err(ProfileError::NoVoters)
        );
        assert_eq!(
            NormalizedBallot::from_indices(&[0, 1, 0]),
            Err(ProfileError::DuplicateOnBallot(0))
        );
    }

    #[test]
    fn merging_is_order_independent() {
        let ab = NormalizedBallot::from_indices(&[0, 1]).unwrap();
        let b = NormalizedBallot::from_indices(&[1]).unwrap();
        let p = PreferenceProfile::new(
            names(&["A", "B"]),
            [(ab.clone(), 3), (b.clone(), 1), (ab.clone(), 2)],
        )
        .unwrap();
        let q = PreferenceProfile::new(names(&["A", "B"]), [(b, 1), (ab, 5)]).unwrap();
        assert_eq!(p, q);
        assert_eq!(p.classes().len(), 2);
    }

    fn arb_profile() -> impl Strategy<Value = PreferenceProfile> {
        (1usize..=6).prop_flat_map(|n| {
            let ballot = Just((0..n).collect::<Vec<_>>())
                .prop_shuffle()
                .prop_flat_map(move |perm| (Just(perm), 0..=n))
                .prop_map(|(perm, len)| NormalizedBallot::from_indices(&perm[..len]).unwrap());
            prop::collection::vec((ballot, 1u64..20), 1..12).prop_map(move |ballots| {
                let roster = (0..n).map(|i| format!("c{i}")).collect();
                PreferenceProfile::new(roster, ballots).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn truncation_composes(p in arb_profile(), j in 1usize..=6, k in 1usize..=6) {
            let n = p.candidates();
            let (j, k) = (j.min(n), k.min(n));
            let lvl = |t| TruncationLevel::new(t, n).unwrap();
            let twice = p.truncate(lvl(j)).unwrap().truncate(lvl(k)).unwrap();
            let once = p.truncate(lvl(j.min(k))).unwrap();
            prop_assert_eq!(twice, once);
        }

        #[test]
        fn truncation_preserves_voters_and_roster(p in arb_profile(), t in 1usize..=6) {
            let t = t.min(p.candidates());
            let q = p.truncate(p.truncation_level(t).unwrap()).unwrap();
            prop_assert_eq!(q.voters(), p.voters());
            prop_assert_eq!(q.roster(), p.roster());
        }
    }
}

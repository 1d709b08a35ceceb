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

//! Winner behaviour of one election across every truncation level, and
//! aggregation of those sweeps over a corpus of elections.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::condorcet::{pairwise_matrix, winner_of};
use crate::exec::{map_slice, Execution};
use crate::profile::{CandidateId, PreferenceProfile, TruncationLevel};
use crate::rcv::winner_at;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("a truncation sweep needs at least two candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("the election has no Condorcet winner")]
    NoCondorcetWinner,
    #[error("the corpus is empty")]
    EmptyCorpus,
}

/// Which Condorcet winner the RCV winners are compared against.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CondorcetReference {
    /// The Condorcet winner of the untruncated profile.
    #[default]
    FullProfile,
    /// The Condorcet winner recomputed on each truncated profile.
    PerLevel,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TruncationSweep {
    pub candidates: usize,
    /// `winners[tl]` for every `tl` in `1..=n`.
    pub winners: BTreeMap<usize, CandidateId>,
    /// Distinct winners over `tl` in `1..n`.
    pub distinct_all: usize,
    /// Distinct winners over `tl` in `2..n` (over `1..n` when `n < 3`).
    pub distinct_from2: usize,
    /// Condorcet winner of the untruncated profile.
    pub cw: Option<CandidateId>,
    pub reference: CondorcetReference,
    /// Levels at which the reference Condorcet winner is the RCV winner.
    pub cw_wins_at: BTreeSet<usize>,
    /// Whether some level's Condorcet winner exists at all (per-level mode).
    pub cw_exists: bool,
}

impl TruncationSweep {
    /// The RCV winner with no truncation.
    pub fn untruncated_winner(&self) -> CandidateId {
        self.winners[&self.candidates]
    }

    pub fn is_condorcet_useable(&self) -> bool {
        self.cw_exists && !self.cw_wins_at.is_empty()
    }

    pub fn cw_nonmonotonic(&self) -> Result<bool, AnalysisError> {
        if !self.cw_exists {
            return Err(AnalysisError::NoCondorcetWinner);
        }
        Ok(has_gap(&self.cw_wins_at))
    }
}

pub fn sweep(profile: &PreferenceProfile) -> Result<TruncationSweep, AnalysisError> {
    sweep_with(profile, CondorcetReference::FullProfile)
}

pub fn sweep_with(
    profile: &PreferenceProfile,
    reference: CondorcetReference,
) -> Result<TruncationSweep, AnalysisError> {
    let n = profile.candidates();
    if n < 2 {
        return Err(AnalysisError::TooFewCandidates(n));
    }
    let winners: BTreeMap<usize, CandidateId> =
        (1..=n).map(|tl| (tl, winner_at(profile, tl))).collect();
    let cw_at = |tl: usize| {
        let level = TruncationLevel::new(tl, n).expect("level within 1..=n");
        winner_of(&pairwise_matrix(profile, level).expect("level valid for profile"))
    };
    let cw = cw_at(n);
    let (cw_exists, cw_wins_at) = match reference {
        CondorcetReference::FullProfile => (
            cw.is_some(),
            winners
                .iter()
                .filter(|(_, w)| Some(**w) == cw)
                .map(|(tl, _)| *tl)
                .collect(),
        ),
        CondorcetReference::PerLevel => {
            let per_level: Vec<(usize, Option<CandidateId>)> =
                (1..=n).map(|tl| (tl, cw_at(tl))).collect();
            (
                per_level.iter().any(|(_, c)| c.is_some()),
                per_level
                    .iter()
                    .filter(|(tl, c)| c.is_some() && *c == Some(winners[tl]))
                    .map(|(tl, _)| *tl)
                    .collect(),
            )
        }
    };
    Ok(TruncationSweep {
        candidates: n,
        distinct_all: distinct_winners(&winners, 1, n - 1),
        distinct_from2: if n >= 3 {
            distinct_winners(&winners, 2, n - 1)
        } else {
            distinct_winners(&winners, 1, n - 1)
        },
        winners,
        cw,
        reference,
        cw_wins_at,
        cw_exists,
    })
}

fn distinct_winners(winners: &BTreeMap<usize, CandidateId>, from: usize, to: usize) -> usize {
    winners
        .range(from..=to)
        .map(|(_, w)| *w)
        .collect::<BTreeSet<_>>()
        .len()
}

/// True when the set holds some `i < k` but misses a `j` between them.
pub fn has_gap(levels: &BTreeSet<usize>) -> bool {
    match (levels.first(), levels.last()) {
        (Some(lo), Some(hi)) => hi - lo + 1 > levels.len(),
        _ => false,
    }
}

/// Whether truncating at `tl` could change the outcome, i.e. `tl < n - 1`.
pub fn useable_at(profile: &PreferenceProfile, tl: usize) -> bool {
    useable(profile.candidates(), tl)
}

pub(crate) fn useable(candidates: usize, tl: usize) -> bool {
    tl + 1 < candidates
}

pub fn is_condorcet_useable(profile: &PreferenceProfile) -> Result<bool, AnalysisError> {
    Ok(sweep(profile)?.is_condorcet_useable())
}

pub fn cw_nonmonotonic(profile: &PreferenceProfile) -> Result<bool, AnalysisError> {
    sweep(profile)?.cw_nonmonotonic()
}

/// Sweeps many elections, in input order.
pub fn sweep_all(
    profiles: &[PreferenceProfile],
    reference: CondorcetReference,
    execution: Execution,
) -> Vec<Result<TruncationSweep, AnalysisError>> {
    map_slice(profiles, execution, |p| sweep_with(p, reference))
}

/// Descriptive tags attached to a corpus election.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElectionTags {
    pub source: Option<String>,
    /// `Some(true)` for elections that were single-winner in reality.
    pub single_winner: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub id: String,
    pub tags: ElectionTags,
    pub sweep: TruncationSweep,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusFilter {
    #[default]
    All,
    /// Only elections tagged single-winner.
    SingleWinner,
    /// Ignore `tl = 1`: rows start at 2 and the headline histogram counts
    /// winners over `2..n`.
    FromTl2,
}

/// One column of the winner-agreement table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AgreementRow {
    pub tl: usize,
    pub useable: usize,
    pub agree: usize,
    pub percent: Option<f64>,
}

/// One column of the Condorcet table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondorcetRow {
    pub tl: usize,
    pub condorcet_useable: usize,
    pub cw_wins: usize,
    pub percent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CondorcetSummary {
    pub no_condorcet_winner: usize,
    pub cw_never_wins: usize,
    pub condorcet_useable: usize,
    pub rows: Vec<CondorcetRow>,
}

/// `n -> (k -> elections with k distinct winners)`.
pub type HistogramByN = BTreeMap<usize, BTreeMap<usize, usize>>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub filter: CorpusFilter,
    pub elections: usize,
    pub agreement: Vec<AgreementRow>,
    /// Histogram used for the headline figure; depends on the filter.
    pub distinct_winners_by_n: HistogramByN,
    pub distinct_all_by_n: HistogramByN,
    pub distinct_from2_by_n: HistogramByN,
    pub condorcet: CondorcetSummary,
    pub nonmonotonic: Vec<String>,
    /// Three-candidate elections whose `2..n` range is the single level 2.
    pub from_tl2_single_level: Vec<String>,
}

pub fn corpus_aggregate(
    entries: &[CorpusEntry],
    filter: CorpusFilter,
) -> Result<CorpusReport, AnalysisError> {
    let selected: Vec<&CorpusEntry> = entries
        .iter()
        .filter(|e| filter != CorpusFilter::SingleWinner || e.tags.single_winner == Some(true))
        .collect();
    if selected.is_empty() {
        return Err(AnalysisError::EmptyCorpus);
    }
    let first_tl = if filter == CorpusFilter::FromTl2 {
        2
    } else {
        1
    };
    let max_n = selected
        .iter()
        .map(|e| e.sweep.candidates)
        .max()
        .unwrap_or(0);
    let levels = first_tl..max_n.saturating_sub(1);

    let agreement = levels
        .clone()
        .map(|tl| {
            let pool: Vec<_> = selected
                .iter()
                .filter(|e| useable(e.sweep.candidates, tl))
                .collect();
            let agree = pool
                .iter()
                .filter(|e| e.sweep.winners[&tl] == e.sweep.untruncated_winner())
                .count();
            AgreementRow {
                tl,
                useable: pool.len(),
                agree,
                percent: percent(agree, pool.len()),
            }
        })
        .collect();

    let c_useable: Vec<_> = selected
        .iter()
        .filter(|e| e.sweep.is_condorcet_useable())
        .collect();
    let condorcet = CondorcetSummary {
        no_condorcet_winner: selected.iter().filter(|e| !e.sweep.cw_exists).count(),
        cw_never_wins: selected
            .iter()
            .filter(|e| e.sweep.cw_exists && e.sweep.cw_wins_at.is_empty())
            .count(),
        condorcet_useable: c_useable.len(),
        rows: levels
            .map(|tl| {
                let pool: Vec<_> = c_useable
                    .iter()
                    .filter(|e| useable(e.sweep.candidates, tl))
                    .collect();
                let wins = pool
                    .iter()
                    .filter(|e| e.sweep.cw_wins_at.contains(&tl))
                    .count();
                CondorcetRow {
                    tl,
                    condorcet_useable: pool.len(),
                    cw_wins: wins,
                    percent: percent(wins, pool.len()),
                }
            })
            .collect(),
    };

    let histogram = |pick: fn(&TruncationSweep) -> usize| {
        let mut h = HistogramByN::new();
        for e in &selected {
            *h.entry(e.sweep.candidates)
                .or_default()
                .entry(pick(&e.sweep))
                .or_insert(0) += 1;
        }
        h
    };
    let distinct_all_by_n = histogram(|s| s.distinct_all);
    let distinct_from2_by_n = histogram(|s| s.distinct_from2);

    Ok(CorpusReport {
        filter,
        elections: selected.len(),
        agreement,
        distinct_winners_by_n: if filter == CorpusFilter::FromTl2 {
            distinct_from2_by_n.clone()
        } else {
            distinct_all_by_n.clone()
        },
        distinct_all_by_n,
        distinct_from2_by_n,
        condorcet,
        nonmonotonic: selected
            .iter()
            .filter(|e| e.sweep.cw_nonmonotonic().unwrap_or(false))
            .map(|e| e.id.clone())
            .collect(),
        from_tl2_single_level: selected
            .iter()
            .filter(|e| e.sweep.candidates == 3)
            .map(|e| e.id.clone())
            .collect(),
    })
}

/// Percentage rounded to one decimal place; `None` for an empty pool.
pub fn percent(part: usize, whole: usize) -> Option<f64> {
    (whole > 0).then(|| (1000.0 * part as f64 / whole as f64).round() / 10.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::fixtures::{names, table1};
    use crate::profile::NormalizedBallot;

    fn id(i: usize) -> CandidateId {
        CandidateId::new(i)
    }

    fn profile(n: usize, rows: &[(u64, &[usize])]) -> PreferenceProfile {
        let roster = (0..n)
            .map(|i| ((b'A' + i as u8) as char).to_string())
            .collect();
        PreferenceProfile::new(
            roster,
            rows.iter()
                .map(|(c, r)| (NormalizedBallot::from_indices(r).unwrap(), *c)),
        )
        .unwrap()
    }

    fn entry(name: &str, p: &PreferenceProfile, single: bool) -> CorpusEntry {
        CorpusEntry {
            id: name.into(),
            tags: ElectionTags {
                source: None,
                single_winner: Some(single),
            },
            sweep: sweep(p).unwrap(),
        }
    }

    #[test]
    fn table1_sweep() {
        let s = sweep(&table1()).unwrap();
        assert_eq!(
            s.winners,
            BTreeMap::from([(1, id(1)), (2, id(3)), (3, id(0)), (4, id(0))])
        );
        assert_eq!(s.distinct_all, 3);
        assert_eq!(s.distinct_from2, 2);
        assert_eq!(s.cw, Some(id(0)));
        assert_eq!(s.cw_wins_at, BTreeSet::from([3, 4]));
        assert!(s.is_condorcet_useable());
        assert_eq!(s.cw_nonmonotonic(), Ok(false));
    }

    #[test]
    fn majority_candidate_wins_everywhere() {
        let s = sweep(&profile(4, &[(6, &[2, 0]), (2, &[0, 1]), (2, &[3])])).unwrap();
        assert!(s.winners.values().all(|&w| w == id(2)));
        assert_eq!(s.distinct_all, 1);
    }

    #[test]
    fn one_candidate_is_rejected() {
        let p = PreferenceProfile::new(names(&["A"]), [(NormalizedBallot::empty(), 1)]).unwrap();
        assert_eq!(sweep(&p), Err(AnalysisError::TooFewCandidates(1)));
    }

    #[test]
    fn useable_levels() {
        let five = profile(5, &[(1, &[0])]);
        let four = profile(4, &[(1, &[0])]);
        assert!(useable_at(&five, 3));
        assert!(!useable_at(&four, 3));
        assert!(!useable_at(&four, 4));
    }

    #[test]
    fn condorcet_useability() {
        assert_eq!(is_condorcet_useable(&table1()), Ok(true));
        let cycle = profile(3, &[(1, &[0, 1]), (1, &[1, 2]), (1, &[2, 0])]);
        assert_eq!(is_condorcet_useable(&cycle), Ok(false));
        assert_eq!(
            cw_nonmonotonic(&cycle),
            Err(AnalysisError::NoCondorcetWinner)
        );
        // Found by brute-force search over random 4-candidate profiles with at
        // most 10 voters: A is the Condorcet winner yet D wins at every level.
        let never = profile(4, &[(1, &[0, 3, 1]), (1, &[2, 1, 0]), (1, &[3, 0])]);
        let s = sweep(&never).unwrap();
        assert_eq!(s.cw, Some(id(0)));
        assert!(s.winners.values().all(|&w| w == id(3)));
        assert!(!s.is_condorcet_useable());
    }

    #[test]
    fn gap_patterns() {
        assert!(has_gap(&BTreeSet::from([1, 3])));
        assert!(!has_gap(&BTreeSet::from([3, 4])));
        assert!(!has_gap(&BTreeSet::new()));
        assert!(!has_gap(&BTreeSet::from([2])));
    }

    #[test]
    fn per_level_reference() {
        let s = sweep_with(&table1(), CondorcetReference::PerLevel).unwrap();
        // No Condorcet winner exists at tl = 2, and A is the winner at 3 and 4.
        assert!(s.cw_wins_at.contains(&3) && s.cw_wins_at.contains(&4));
        assert!(!s.cw_wins_at.contains(&2));
    }

    #[test]
    fn single_fixture_corpus() {
        let report = corpus_aggregate(&[entry("t1", &table1(), false)], CorpusFilter::All).unwrap();
        assert_eq!(report.agreement.len(), 2);
        assert_eq!(
            report.agreement[0],
            AgreementRow {
                tl: 1,
                useable: 1,
                agree: 0,
                percent: Some(0.0)
            }
        );
        assert_eq!(
            report.agreement[1],
            AgreementRow {
                tl: 2,
                useable: 1,
                agree: 0,
                percent: Some(0.0)
            }
        );
        assert_eq!(
            report.distinct_all_by_n,
            BTreeMap::from([(4, BTreeMap::from([(3, 1)]))])
        );
        assert_eq!(report.condorcet.condorcet_useable, 1);
        assert_eq!(report.condorcet.rows[0].cw_wins, 0);
        assert!(report.nonmonotonic.is_empty());
    }

    #[test]
    fn majority_corpus_always_agrees() {
        let p = profile(5, &[(6, &[1, 0]), (2, &[0]), (2, &[3, 4])]);
        let report = corpus_aggregate(
            &[entry("a", &p, true), entry("b", &p, true)],
            CorpusFilter::All,
        )
        .unwrap();
        assert!(report
            .agreement
            .iter()
            .all(|r| r.percent == Some(100.0) && r.useable == 2));
    }

    #[test]
    fn filters() {
        let entries = [entry("t1", &table1(), false)];
        assert_eq!(
            corpus_aggregate(&entries, CorpusFilter::SingleWinner),
            Err(AnalysisError::EmptyCorpus)
        );
        assert_eq!(
            corpus_aggregate(&[], CorpusFilter::All),
            Err(AnalysisError::EmptyCorpus)
        );
        let r = corpus_aggregate(&entries, CorpusFilter::FromTl2).unwrap();
        assert_eq!(
            r.agreement.iter().map(|a| a.tl).collect::<Vec<_>>(),
            vec![2]
        );
        assert_eq!(
            r.distinct_winners_by_n,
            BTreeMap::from([(4, BTreeMap::from([(2, 1)]))])
        );
    }

    #[test]
    fn rounding() {
        assert_eq!(percent(1, 3), Some(33.3));
        assert_eq!(percent(2, 3), Some(66.7));
        assert_eq!(percent(0, 0), None);
    }
}

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

//! Bootstrap resampling of ballots.
//!
//! Each run draws `min(sample_size_cap, V)` ballots with replacement from the
//! election and counts how many different RCV winners the resulting
//! pseudoprofile produces as the truncation level varies.
//!
//! # Reproducibility
//!
//! Run `i` uses `ChaCha8Rng::seed_from_u64(seed)` switched to stream `i`
//! (`rand_chacha` 0.9, pinned by `Cargo.lock`). A run's draws depend only on
//! `(seed, i)`, never on scheduling, so sequential and parallel execution
//! produce identical reports.
//!
//! Ballots are drawn at the class level: the class counts of a pseudoprofile
//! follow a multinomial distribution, sampled as a chain of conditional
//! binomials in canonical class order. This matches drawing ballots one at a
//! time in distribution while costing one binomial draw per class.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exec::{map_indexed, Execution};
use crate::profile::{PreferenceProfile, ProfileError};
use crate::rcv::winner_at;

pub const DEFAULT_RUNS: usize = 1000;
pub const DEFAULT_SAMPLE_SIZE_CAP: u64 = 1001;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SamplingError {
    #[error("runs must be at least 1")]
    ZeroRuns,
    #[error("sample size must be at least 1")]
    ZeroSampleSize,
    #[error("resampling needs at least two candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("no sampling reports to aggregate")]
    EmptyInput,
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Truncation levels over which distinct winners are counted.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WinnerRange {
    /// `1..n`
    #[default]
    AllLevels,
    /// `2..n`, falling back to `1..n` when `n < 3`.
    FromTl2,
}

impl WinnerRange {
    fn levels(self, candidates: usize) -> std::ops::Range<usize> {
        match self {
            WinnerRange::FromTl2 if candidates >= 3 => 2..candidates,
            _ => 1..candidates,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct SamplingConfig {
    pub runs: usize,
    pub sample_size_cap: u64,
    pub seed: u64,
    pub range: WinnerRange,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            runs: DEFAULT_RUNS,
            sample_size_cap: DEFAULT_SAMPLE_SIZE_CAP,
            seed: 0,
            range: WinnerRange::AllLevels,
        }
    }
}

impl SamplingConfig {
    pub fn validate(&self) -> Result<(), SamplingError> {
        if self.runs == 0 {
            return Err(SamplingError::ZeroRuns);
        }
        if self.sample_size_cap == 0 {
            return Err(SamplingError::ZeroSampleSize);
        }
        Ok(())
    }

    pub fn sample_size(&self, profile: &PreferenceProfile) -> u64 {
        self.sample_size_cap.min(profile.voters())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingReport {
    pub seed: u64,
    pub runs: usize,
    pub sample_size: u64,
    pub candidates: usize,
    pub range: WinnerRange,
    pub per_run_distinct: Vec<usize>,
    pub max_distinct: usize,
    /// `k -> runs with k distinct winners`.
    pub histogram: BTreeMap<usize, usize>,
}

impl SamplingReport {
    fn from_counts(
        config: &SamplingConfig,
        sample_size: u64,
        candidates: usize,
        per_run_distinct: Vec<usize>,
    ) -> Self {
        let mut histogram = BTreeMap::new();
        for &k in &per_run_distinct {
            *histogram.entry(k).or_insert(0) += 1;
        }
        SamplingReport {
            seed: config.seed,
            runs: config.runs,
            sample_size,
            candidates,
            range: config.range,
            max_distinct: per_run_distinct.iter().copied().max().unwrap_or(0),
            per_run_distinct,
            histogram,
        }
    }
}

/// The random stream for run `run` of an experiment seeded with `seed`.
pub fn run_rng(seed: u64, run: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(run as u64);
    rng
}

/// Draws `sample_size` ballots with replacement, each uniformly among the
/// profile's `V` ballots.
pub fn sample_pseudoprofile<R: Rng + ?Sized>(
    profile: &PreferenceProfile,
    sample_size: u64,
    rng: &mut R,
) -> Result<PreferenceProfile, SamplingError> {
    if sample_size == 0 {
        return Err(SamplingError::ZeroSampleSize);
    }
    let classes = profile.classes();
    let mut left_weight = profile.voters();
    let mut left_draws = sample_size;
    let mut drawn = Vec::new();
    for (i, class) in classes.iter().enumerate() {
        if left_draws == 0 {
            break;
        }
        let k = if i + 1 == classes.len() || class.count == left_weight {
            left_draws
        } else {
            let p = class.count as f64 / left_weight as f64;
            Binomial::new(left_draws, p)
                .expect("probability within [0, 1]")
                .sample(rng)
        };
        if k > 0 {
            drawn.push((class.ranking.clone(), k));
        }
        left_draws -= k;
        left_weight -= class.count;
    }
    Ok(PreferenceProfile::new(profile.roster().to_vec(), drawn)?)
}

/// The pseudoprofile used by run `run` of `config`.
pub fn pseudoprofile_for_run(
    profile: &PreferenceProfile,
    config: &SamplingConfig,
    run: usize,
) -> Result<PreferenceProfile, SamplingError> {
    sample_pseudoprofile(
        profile,
        config.sample_size(profile),
        &mut run_rng(config.seed, run),
    )
}

/// Distinct RCV winners of `profile` over the given levels.
pub fn distinct_winners(profile: &PreferenceProfile, range: WinnerRange) -> usize {
    range
        .levels(profile.candidates())
        .map(|tl| winner_at(profile, tl))
        .collect::<BTreeSet<_>>()
        .len()
}

pub fn run_experiment(
    profile: &PreferenceProfile,
    config: &SamplingConfig,
) -> Result<SamplingReport, SamplingError> {
    run_experiment_with(profile, config, Execution::default())
}

pub fn run_experiment_with(
    profile: &PreferenceProfile,
    config: &SamplingConfig,
    execution: Execution,
) -> Result<SamplingReport, SamplingError> {
    let [report] = run_ranges(profile, config, [config.range], execution)?;
    Ok(report)
}

/// Runs the experiment once and reports it for both winner ranges. Both
/// reports see the same pseudoprofiles.
pub fn run_experiment_both_ranges(
    profile: &PreferenceProfile,
    config: &SamplingConfig,
    execution: Execution,
) -> Result<(SamplingReport, SamplingReport), SamplingError> {
    let [all, from2] = run_ranges(
        profile,
        config,
        [WinnerRange::AllLevels, WinnerRange::FromTl2],
        execution,
    )?;
    Ok((all, from2))
}

fn run_ranges<const K: usize>(
    profile: &PreferenceProfile,
    config: &SamplingConfig,
    ranges: [WinnerRange; K],
    execution: Execution,
) -> Result<[SamplingReport; K], SamplingError> {
    config.validate()?;
    let n = profile.candidates();
    if n < 2 {
        return Err(SamplingError::TooFewCandidates(n));
    }
    let sample_size = config.sample_size(profile);
    let per_run: Vec<[usize; K]> = map_indexed(config.runs, execution, |run| {
        let pseudo = pseudoprofile_for_run(profile, config, run)
            .expect("sample size and roster already validated");
        let winners: Vec<_> = (1..n).map(|tl| winner_at(&pseudo, tl)).collect();
        ranges.map(|range| {
            range
                .levels(n)
                .map(|tl| winners[tl - 1])
                .collect::<BTreeSet<_>>()
                .len()
        })
    });
    Ok(std::array::from_fn(|k| {
        let cfg = SamplingConfig {
            range: ranges[k],
            ..config.clone()
        };
        SamplingReport::from_counts(&cfg, sample_size, n, per_run.iter().map(|r| r[k]).collect())
    }))
}

/// Per-election maxima across a corpus of sampling reports.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaxDistinctTable {
    /// `n -> (max distinct -> elections)`.
    pub by_n: BTreeMap<usize, BTreeMap<usize, usize>>,
    /// `max distinct -> elections`, all `n` together.
    pub overall: BTreeMap<usize, usize>,
    pub mean_max: f64,
}

pub fn max_distinct_over_corpus(
    reports: &[SamplingReport],
) -> Result<MaxDistinctTable, SamplingError> {
    if reports.is_empty() {
        return Err(SamplingError::EmptyInput);
    }
    let mut by_n: BTreeMap<usize, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut overall = BTreeMap::new();
    for r in reports {
        *by_n
            .entry(r.candidates)
            .or_default()
            .entry(r.max_distinct)
            .or_insert(0) += 1;
        *overall.entry(r.max_distinct).or_insert(0) += 1;
    }
    let total: usize = reports.iter().map(|r| r.max_distinct).sum();
    Ok(MaxDistinctTable {
        by_n,
        overall,
        mean_max: total as f64 / reports.len() as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::fixtures::{names, table1};
    use crate::profile::NormalizedBallot;

    fn config(runs: usize, seed: u64) -> SamplingConfig {
        SamplingConfig {
            runs,
            seed,
            ..SamplingConfig::default()
        }
    }

    fn report(candidates: usize, max_distinct: usize) -> SamplingReport {
        SamplingReport {
            seed: 0,
            runs: 1,
            sample_size: 1,
            candidates,
            range: WinnerRange::AllLevels,
            per_run_distinct: vec![max_distinct],
            max_distinct,
            histogram: BTreeMap::from([(max_distinct, 1)]),
        }
    }

    #[test]
    fn point_mass_resamples_to_itself() {
        let ab = NormalizedBallot::from_indices(&[0, 1]).unwrap();
        let p = PreferenceProfile::new(names(&["A", "B"]), [(ab, 7)]).unwrap();
        let q = sample_pseudoprofile(&p, 7, &mut run_rng(3, 0)).unwrap();
        assert_eq!(q, p);
    }

    #[test]
    fn fixed_seed_is_bit_identical() {
        let p = table1();
        let a = sample_pseudoprofile(&p, 500, &mut run_rng(11, 4)).unwrap();
        let b = sample_pseudoprofile(&p, 500, &mut run_rng(11, 4)).unwrap();
        assert_eq!(a, b);
        let c = sample_pseudoprofile(&p, 500, &mut run_rng(11, 5)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sample_size_and_roster() {
        let p = table1();
        for size in [1, 17, 500, 2000] {
            let q = sample_pseudoprofile(&p, size, &mut run_rng(1, size as usize)).unwrap();
            assert_eq!(q.voters(), size);
            assert_eq!(q.roster(), p.roster());
        }
        assert_eq!(
            sample_pseudoprofile(&p, 0, &mut run_rng(1, 0)),
            Err(SamplingError::ZeroSampleSize)
        );
    }

    #[test]
    fn small_electorate_uses_every_voter_count() {
        let p = table1();
        let cfg = config(20, 5);
        assert_eq!(cfg.sample_size(&p), 500);
        for run in 0..cfg.runs {
            assert_eq!(pseudoprofile_for_run(&p, &cfg, run).unwrap().voters(), 500);
        }
        let capped = SamplingConfig {
            sample_size_cap: 120,
            ..cfg
        };
        assert_eq!(pseudoprofile_for_run(&p, &capped, 3).unwrap().voters(), 120);
    }

    #[test]
    fn majority_profile_single_run() {
        let a = NormalizedBallot::from_indices(&[0]).unwrap();
        let p = PreferenceProfile::new(names(&["A", "B", "C"]), [(a, 9)]).unwrap();
        let r = run_experiment(&p, &config(1, 0)).unwrap();
        assert_eq!(r.histogram, BTreeMap::from([(1, 1)]));
        assert_eq!(r.max_distinct, 1);
    }

    #[test]
    fn sequential_matches_parallel() {
        let p = table1();
        let cfg = config(64, 99);
        let seq = run_experiment_with(&p, &cfg, Execution::Sequential).unwrap();
        let par = run_experiment_with(&p, &cfg, Execution::Parallel).unwrap();
        assert_eq!(seq, par);
        assert!(seq.max_distinct <= 3);
        assert_eq!(seq.histogram.values().sum::<usize>(), 64);
    }

    #[test]
    fn both_ranges_share_pseudoprofiles() {
        let p = table1();
        let cfg = config(40, 8);
        let (all, from2) = run_experiment_both_ranges(&p, &cfg, Execution::default()).unwrap();
        assert_eq!(all, run_experiment(&p, &cfg).unwrap());
        let from2_cfg = SamplingConfig {
            range: WinnerRange::FromTl2,
            ..cfg
        };
        assert_eq!(from2, run_experiment(&p, &from2_cfg).unwrap());
        for (a, b) in all.per_run_distinct.iter().zip(&from2.per_run_distinct) {
            assert!(b <= a);
        }
    }

    #[test]
    fn config_errors() {
        let p = table1();
        assert_eq!(
            run_experiment(&p, &config(0, 0)),
            Err(SamplingError::ZeroRuns)
        );
        let one = PreferenceProfile::new(names(&["A"]), [(NormalizedBallot::empty(), 2)]).unwrap();
        assert_eq!(
            run_experiment(&one, &config(1, 0)),
            Err(SamplingError::TooFewCandidates(1))
        );
    }

    #[test]
    fn corpus_maxima() {
        let t = max_distinct_over_corpus(&[report(4, 3)]).unwrap();
        assert_eq!(t.overall, BTreeMap::from([(3, 1)]));
        let t = max_distinct_over_corpus(&[report(4, 1), report(5, 2)]).unwrap();
        assert_eq!(t.overall, BTreeMap::from([(1, 1), (2, 1)]));
        assert_eq!(t.by_n[&5], BTreeMap::from([(2, 1)]));
        assert_eq!(t.mean_max, 1.5);
        assert_eq!(
            max_distinct_over_corpus(&[]),
            Err(SamplingError::EmptyInput)
        );
    }
}

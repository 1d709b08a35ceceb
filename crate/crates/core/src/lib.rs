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

//! Ranked-choice (instant-runoff) tabulation under ballot truncation.
//!
//! * [`profile`]: candidates, ballots and count-compressed profiles.
//! * [`ingest`]: profile CSV, ballot-image CSV and BLT parsing, plus the
//!   overvote/skip/duplicate cleaning rules.
//! * [`rcv`]: round-by-round instant-runoff tabulation.
//! * [`condorcet`]: weak-order pairwise matrices and Condorcet winners.
//! * [`truncation`]: winners across every truncation level, and corpus
//!   summaries built from them.
//! * [`resampling`]: seeded bootstrap pseudoprofiles and the distinct-winner
//!   statistics over them.
//!
//! With the default `parallel` feature, corpus sweeps and resampling runs
//! are spread over a rayon pool; see [`exec::Execution`].

pub mod condorcet;
pub mod exec;
pub mod ingest;
pub mod profile;
pub mod rcv;
pub mod resampling;
pub mod synth;
pub mod truncation;

pub use condorcet::{condorcet_winner, pairwise_matrix, PairwiseMatrix};
pub use exec::Execution;
pub use profile::{
    profile_stats, truncate_profile, BallotClass, CandidateId, NormalizedBallot, PreferenceProfile,
    ProfileError, ProfileStats, TruncationLevel,
};
pub use rcv::{
    has_first_round_majority, plurality_winner, tabulate, PluralityOutcome, RoundRecord,
    TabulationResult,
};
pub use resampling::{
    max_distinct_over_corpus, run_experiment, sample_pseudoprofile, SamplingConfig, SamplingReport,
};
pub use truncation::{corpus_aggregate, sweep, CorpusReport, TruncationSweep};

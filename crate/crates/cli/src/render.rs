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

//! Text, JSON and CSV renderings of single-election results.
//!
//! JSON objects are `serde_json` maps, which keep keys sorted, so output is
//! byte-stable for a given input.

use std::collections::BTreeMap;
use std::fmt::Write;

use rcv_truncation::resampling::{SamplingReport, WinnerRange};
use rcv_truncation::truncation::{CondorcetReference, TruncationSweep};
use rcv_truncation::{PairwiseMatrix, PreferenceProfile, TabulationResult};
use serde_json::{json, Value};

pub fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub fn tabulation_json(profile: &PreferenceProfile, result: &TabulationResult) -> Value {
    let rounds: Vec<Value> = result
        .rounds
        .iter()
        .map(|r| {
            let tallies: BTreeMap<&str, u64> = r
                .tallies
                .iter()
                .map(|(c, v)| (profile.name(*c), *v))
                .collect();
            json!({
                "round_index": r.round_index,
                "tallies": tallies,
                "eliminated": r.eliminated.map(|c| profile.name(c)),
                "exhausted_total": r.exhausted_total,
                "tie_break_applied": r.tie_break_applied,
            })
        })
        .collect();
    json!({
        "candidates": profile.roster(),
        "voters": profile.voters(),
        "tl_used": result.tl_used.get(),
        "rounds": rounds,
        "winner": profile.name(result.winner),
    })
}

/// One line per round, then `winner: X`.
pub fn tabulation_text(profile: &PreferenceProfile, result: &TabulationResult) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} ballots, {} candidates, truncation level {}",
        profile.voters(),
        profile.candidates(),
        result.tl_used.get()
    );
    for r in &result.rounds {
        let tallies: Vec<String> = r
            .tallies
            .iter()
            .map(|(c, v)| format!("{} {v}", profile.name(*c)))
            .collect();
        let _ = write!(
            out,
            "round {}: {}; exhausted {}",
            r.round_index,
            tallies.join(", "),
            r.exhausted_total
        );
        if let Some(c) = r.eliminated {
            let _ = write!(out, "; {} eliminated", profile.name(c));
            if r.tie_break_applied {
                out.push_str(" (tie-break)");
            }
        }
        out.push('\n');
    }
    let _ = writeln!(out, "winner: {}", profile.name(result.winner));
    out
}

/// Wide table: one row per round, one column per candidate.
pub fn tabulation_csv(profile: &PreferenceProfile, result: &TabulationResult) -> String {
    let mut out = String::from("round");
    for name in profile.roster() {
        let _ = write!(out, ",{name}");
    }
    out.push_str(",exhausted,eliminated,tie_break\n");
    for r in &result.rounds {
        let _ = write!(out, "{}", r.round_index);
        for c in profile.candidate_ids() {
            out.push(',');
            if let Some(v) = r.tallies.get(&c) {
                let _ = write!(out, "{v}");
            }
        }
        let _ = writeln!(
            out,
            ",{},{},{}",
            r.exhausted_total,
            r.eliminated.map_or("", |c| profile.name(c)),
            r.tie_break_applied
        );
    }
    out
}

fn reference_name(reference: CondorcetReference) -> &'static str {
    match reference {
        CondorcetReference::FullProfile => "full-profile",
        CondorcetReference::PerLevel => "per-level",
    }
}

pub fn sweep_json(profile: &PreferenceProfile, sweep: &TruncationSweep) -> Value {
    let winners: BTreeMap<String, &str> = sweep
        .winners
        .iter()
        .map(|(tl, c)| (tl.to_string(), profile.name(*c)))
        .collect();
    json!({
        "candidates": profile.roster(),
        "winners": winners,
        "distinct_all": sweep.distinct_all,
        "distinct_from2": sweep.distinct_from2,
        "reference": reference_name(sweep.reference),
        "cw": sweep.cw.map(|c| profile.name(c)),
        "cw_wins_at": sweep.cw_wins_at,
        "condorcet_useable": sweep.is_condorcet_useable(),
        "cw_nonmonotonic": sweep.cw_nonmonotonic().ok(),
    })
}

pub fn sweep_text(profile: &PreferenceProfile, sweep: &TruncationSweep) -> String {
    let mut out = String::new();
    for (tl, c) in &sweep.winners {
        let _ = writeln!(out, "tl {tl}: {}", profile.name(*c));
    }
    let n = sweep.candidates;
    let _ = writeln!(
        out,
        "distinct winners over 1..{}: {}",
        n - 1,
        sweep.distinct_all
    );
    let _ = writeln!(
        out,
        "distinct winners over 2..{}: {}",
        n - 1,
        sweep.distinct_from2
    );
    match sweep.cw {
        Some(c) => {
            let levels: Vec<String> = sweep.cw_wins_at.iter().map(usize::to_string).collect();
            let at = if levels.is_empty() {
                "none".to_owned()
            } else {
                levels.join(", ")
            };
            let _ = writeln!(
                out,
                "condorcet winner: {} (RCV winner at tl {at})",
                profile.name(c)
            );
        }
        None if sweep.reference == CondorcetReference::PerLevel => {
            let levels: Vec<String> = sweep.cw_wins_at.iter().map(usize::to_string).collect();
            let _ = writeln!(
                out,
                "per-level condorcet winner elected at tl: {}",
                levels.join(", ")
            );
        }
        None => out.push_str("condorcet winner: none\n"),
    }
    out
}

pub fn sweep_csv(profile: &PreferenceProfile, sweep: &TruncationSweep) -> String {
    let mut out = String::from("tl,winner,cw_wins\n");
    for (tl, c) in &sweep.winners {
        let _ = writeln!(
            out,
            "{tl},{},{}",
            profile.name(*c),
            sweep.cw_wins_at.contains(tl)
        );
    }
    out
}

pub fn matrix_json(profile: &PreferenceProfile, tl: usize, matrix: &PairwiseMatrix) -> Value {
    let mut rows = serde_json::Map::new();
    for i in profile.candidate_ids() {
        let row: BTreeMap<&str, u64> = profile
            .candidate_ids()
            .filter(|&j| j != i)
            .map(|j| (profile.name(j), matrix.prefer(i, j)))
            .collect();
        rows.insert(profile.name(i).to_owned(), json!(row));
    }
    json!({
        "candidates": profile.roster(),
        "tl": tl,
        "matrix": rows,
        "condorcet_winner": rcv_truncation::condorcet::winner_of(matrix).map(|c| profile.name(c)),
    })
}

/// Row candidate over column candidate.
pub fn matrix_text(profile: &PreferenceProfile, tl: usize, matrix: &PairwiseMatrix) -> String {
    let width = profile
        .roster()
        .iter()
        .map(String::len)
        .max()
        .unwrap_or(1)
        .max(
            matrix
                .to_rows()
                .iter()
                .flatten()
                .max()
                .map_or(1, |v| v.to_string().len()),
        );
    let mut out = format!("pairwise preferences at truncation level {tl} (row over column)\n");
    let _ = write!(out, "{:width$}", "");
    for name in profile.roster() {
        let _ = write!(out, " {name:>width$}");
    }
    out.push('\n');
    for i in profile.candidate_ids() {
        let _ = write!(out, "{:width$}", profile.name(i));
        for j in profile.candidate_ids() {
            if i == j {
                let _ = write!(out, " {:>width$}", "-");
            } else {
                let _ = write!(out, " {:>width$}", matrix.prefer(i, j));
            }
        }
        out.push('\n');
    }
    match rcv_truncation::condorcet::winner_of(matrix) {
        Some(c) => {
            let _ = writeln!(out, "condorcet winner: {}", profile.name(c));
        }
        None => out.push_str("condorcet winner: none\n"),
    }
    out
}

pub fn matrix_csv(profile: &PreferenceProfile, matrix: &PairwiseMatrix) -> String {
    let mut out = String::from("candidate,over,votes\n");
    for i in profile.candidate_ids() {
        for j in profile.candidate_ids().filter(|&j| j != i) {
            let _ = writeln!(
                out,
                "{},{},{}",
                profile.name(i),
                profile.name(j),
                matrix.prefer(i, j)
            );
        }
    }
    out
}

pub fn range_name(range: WinnerRange) -> &'static str {
    match range {
        WinnerRange::AllLevels => "all-levels",
        WinnerRange::FromTl2 => "from-tl2",
    }
}

pub fn sampling_json(report: &SamplingReport, cap: u64) -> Value {
    json!({
        "seed": report.seed,
        "runs": report.runs,
        "sample_size_cap": cap,
        "sample_size": report.sample_size,
        "candidates": report.candidates,
        "range": range_name(report.range),
        "max_distinct": report.max_distinct,
        "histogram": report.histogram,
        "per_run_distinct": report.per_run_distinct,
    })
}

pub fn sampling_text(report: &SamplingReport) -> String {
    let mut out = format!(
        "{} runs of {} ballots, seed {}, winners over {}\n",
        report.runs,
        report.sample_size,
        report.seed,
        range_name(report.range)
    );
    for (k, runs) in &report.histogram {
        let _ = writeln!(out, "{k} distinct winners: {runs} runs");
    }
    let _ = writeln!(out, "max distinct winners: {}", report.max_distinct);
    out
}

pub fn sampling_csv(report: &SamplingReport) -> String {
    let mut out = String::from("run,distinct_winners\n");
    for (run, k) in report.per_run_distinct.iter().enumerate() {
        let _ = writeln!(out, "{run},{k}");
    }
    out
}

/// `value` with one decimal, or empty for a missing percentage.
pub fn percent_cell(value: Option<f64>) -> String {
    value.map_or_else(String::new, |v| format!("{v:.1}"))
}

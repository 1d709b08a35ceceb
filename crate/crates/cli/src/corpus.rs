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

//! The `corpus` command: sweep every election in a directory, aggregate,
//! resample, and write the report files.
//!
//! | file | contents |
//! |---|---|
//! | `table4.csv` | winner agreement with the untruncated winner, per `tl` |
//! | `table6.csv` | Condorcet winner elected, per `tl` |
//! | `nonmonotonic.csv` | elections whose Condorcet winner wins, loses, then wins again |
//! | `corpus_report.json` | the aggregate plus every election's sweep |
//! | `sampling.json` | per-election resampling results and the max-distinct tables |
//! | `figure*.csv` | long-format histograms, with `--emit-plot-data` |
//! | `manifest.json` | inputs, digests, settings, timestamps |

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rcv_truncation::resampling::{
    max_distinct_over_corpus, run_experiment_both_ranges, MaxDistinctTable,
};
use rcv_truncation::truncation::{
    corpus_aggregate, sweep_all, AnalysisError, CorpusEntry, CorpusFilter, CorpusReport,
    ElectionTags,
};
use rcv_truncation::PreferenceProfile;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::args::{CorpusArgs, Filter, InputFormat};
use crate::commands::{reference, Context};
use crate::error::CliError;
use crate::input::{load_profile, resolve_policy, resolve_sampling, InputFile, LoadedProfile};
use crate::render::{self, percent_cell, to_json};

const METADATA_FILE: &str = "metadata.csv";

#[derive(Debug, Deserialize)]
struct MetadataRow {
    file: String,
    #[serde(default)]
    source: Option<String>,
    #[serde(default)]
    single_winner: Option<String>,
}

fn parse_flag(path: &Path, value: &str) -> Result<Option<bool>, CliError> {
    match value.trim().to_ascii_lowercase().as_str() {
        "" => Ok(None),
        "true" | "yes" | "1" => Ok(Some(true)),
        "false" | "no" | "0" => Ok(Some(false)),
        other => Err(CliError::input(
            path,
            format!("single_winner: expected true or false, got {other:?}"),
        )),
    }
}

fn read_metadata(file: &InputFile) -> Result<BTreeMap<String, ElectionTags>, CliError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(file.bytes.as_slice());
    let mut tags = BTreeMap::new();
    for (i, row) in reader.deserialize::<MetadataRow>().enumerate() {
        let row = row.map_err(|e| CliError::input(&file.path, e))?;
        let line = i + 2;
        let entry = ElectionTags {
            source: row.source.filter(|s| !s.is_empty()),
            single_winner: parse_flag(&file.path, row.single_winner.as_deref().unwrap_or(""))?,
        };
        if tags.insert(row.file.clone(), entry).is_some() {
            return Err(CliError::input(
                &file.path,
                format!("line {line}: {:?} listed twice", row.file),
            ));
        }
    }
    Ok(tags)
}

/// Election files in `dir`, sorted by name.
fn election_files(dir: &Path, metadata: Option<&Path>) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir).map_err(|e| CliError::input(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| CliError::input(dir, e))?.path();
        let is_election = path.is_file()
            && path
                .extension()
                .and_then(|e| e.to_str())
                .is_some_and(|e| e.eq_ignore_ascii_case("csv") || e.eq_ignore_ascii_case("blt"));
        let is_metadata = path.file_name().is_some_and(|n| n == METADATA_FILE)
            || metadata.is_some_and(|m| same_file(m, &path));
        if is_election && !is_metadata {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn file_id(path: &Path) -> String {
    path.file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default()
}

fn filter(f: Filter) -> CorpusFilter {
    match f {
        Filter::All => CorpusFilter::All,
        Filter::SingleWinner => CorpusFilter::SingleWinner,
        Filter::FromTl2 => CorpusFilter::FromTl2,
    }
}

struct Written<'a> {
    dir: &'a Path,
    names: Vec<String>,
}

impl Written<'_> {
    fn write(&mut self, name: &str, contents: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, contents).map_err(|e| CliError::output(&path, e))?;
        self.names.push(name.to_owned());
        Ok(())
    }
}

pub(crate) fn corpus_cmd(args: &CorpusArgs, ctx: &mut Context<'_>) -> Result<(), CliError> {
    let (policy, policy_file) = resolve_policy(args.policy.as_deref())?;
    let (config, config_file) = resolve_sampling(&args.sampling, false)?;
    for f in policy_file.iter().chain(&config_file) {
        ctx.manifest.add_input(f);
    }

    let metadata_path = args.metadata.clone().or_else(|| {
        let default = args.dir.join(METADATA_FILE);
        default.is_file().then_some(default)
    });
    let mut tags = match &metadata_path {
        Some(path) => {
            let file = InputFile::read(path)?;
            ctx.manifest.add_input(&file);
            read_metadata(&file)?
        }
        None => BTreeMap::new(),
    };

    let files = election_files(&args.dir, metadata_path.as_deref())?;
    if files.is_empty() {
        return Err(CliError::EmptyCorpus(format!(
            "{}: no election files (*.csv, *.blt)",
            args.dir.display()
        )));
    }
    let loaded: Vec<LoadedProfile> = files
        .iter()
        .map(|f| load_profile(f, InputFormat::Auto, &policy))
        .collect::<Result<_, _>>()?;
    for l in &loaded {
        ctx.manifest.add_input(&l.file);
    }
    let ids: Vec<String> = files.iter().map(|f| file_id(f)).collect();
    if let Some(unknown) = tags.keys().find(|k| !ids.contains(k)) {
        let path = metadata_path.as_deref().unwrap_or(&args.dir);
        return Err(CliError::input(
            path,
            format!(
                "{unknown:?} is not an election file in {}",
                args.dir.display()
            ),
        ));
    }

    let profiles: Vec<PreferenceProfile> = loaded.iter().map(|l| l.profile.clone()).collect();
    let reference = reference(args.reference);
    let sweeps = sweep_all(&profiles, reference, ctx.execution);
    let mut entries = Vec::with_capacity(sweeps.len());
    for ((sweep, id), l) in sweeps.into_iter().zip(&ids).zip(&loaded) {
        let sweep = sweep.map_err(|e| CliError::input(&l.file.path, e))?;
        entries.push(CorpusEntry {
            id: id.clone(),
            tags: tags.remove(id).unwrap_or_default(),
            sweep,
        });
    }

    let filter = filter(args.filter);
    let report = corpus_aggregate(&entries, filter).map_err(|e| match e {
        AnalysisError::EmptyCorpus => CliError::EmptyCorpus(format!(
            "{}: no elections left after the {:?} filter",
            args.dir.display(),
            args.filter
        )),
        other => CliError::invalid(other),
    })?;
    let selected: Vec<usize> = entries
        .iter()
        .enumerate()
        .filter(|(_, e)| filter != CorpusFilter::SingleWinner || e.tags.single_winner == Some(true))
        .map(|(i, _)| i)
        .collect();

    std::fs::create_dir_all(&args.out_dir).map_err(|e| CliError::output(&args.out_dir, e))?;
    let mut out = Written {
        dir: &args.out_dir,
        names: Vec::new(),
    };
    out.write("table4.csv", &table4(&report))?;
    out.write("table6.csv", &table6(&report))?;
    out.write("nonmonotonic.csv", &nonmonotonic(&report))?;
    out.write(
        "corpus_report.json",
        &to_json(&report_json(&report, &entries, &selected, &profiles)),
    )?;
    if args.emit_plot_data {
        out.write(
            "figure1_top.csv",
            &histogram_csv("distinct_winners", &report.distinct_all_by_n),
        )?;
        out.write(
            "figure1_bottom.csv",
            &histogram_csv("distinct_winners", &report.distinct_from2_by_n),
        )?;
    }

    if !args.no_sampling {
        let mut all = Vec::with_capacity(selected.len());
        let mut from2 = Vec::with_capacity(selected.len());
        let mut per_election = serde_json::Map::new();
        for &i in &selected {
            let (a, b) = run_experiment_both_ranges(&profiles[i], &config, ctx.execution)
                .map_err(|e| CliError::input(&loaded[i].file.path, e))?;
            per_election.insert(
                ids[i].clone(),
                json!({
                    "candidates": a.candidates,
                    "sample_size": a.sample_size,
                    "all_levels": { "max_distinct": a.max_distinct, "histogram": a.histogram },
                    "from_tl2": { "max_distinct": b.max_distinct, "histogram": b.histogram },
                }),
            );
            all.push(a);
            from2.push(b);
        }
        let table_all = max_distinct_over_corpus(&all).expect("selection is non-empty");
        let table_from2 = max_distinct_over_corpus(&from2).expect("selection is non-empty");
        let sampling = json!({
            "config": {
                "runs": config.runs,
                "sample_size_cap": config.sample_size_cap,
                "seed": config.seed,
            },
            "elections": per_election,
            "max_distinct_all_levels": max_table_json(&table_all),
            "max_distinct_from_tl2": max_table_json(&table_from2),
        });
        out.write("sampling.json", &to_json(&sampling))?;
        if args.emit_plot_data {
            out.write(
                "figure3.csv",
                &histogram_csv("max_distinct_winners", &table_all.by_n),
            )?;
            out.write(
                "figure4.csv",
                &histogram_csv("max_distinct_winners", &table_from2.by_n),
            )?;
        }
    }

    ctx.manifest.settings = json!({
        "dir": args.dir.to_string_lossy(),
        "filter": report.filter,
        "reference": reference,
        "policy": policy,
        "sampling": if args.no_sampling { Value::Null } else { json!(config) },
        "outputs": out.names,
    });
    let mut summary = format!(
        "{} elections ({} selected), wrote {} files to {}\n",
        entries.len(),
        report.elections,
        out.names.len(),
        args.out_dir.display()
    );
    for row in &report.agreement {
        summary.push_str(&format!(
            "tl {}: untruncated winner elected in {}/{} ({}%)\n",
            row.tl,
            row.agree,
            row.useable,
            percent_cell(row.percent)
        ));
    }
    ctx.emit(&summary)
}

fn table4(report: &CorpusReport) -> String {
    let mut out = String::from("tl,useable,agree,percent\n");
    for r in &report.agreement {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.tl,
            r.useable,
            r.agree,
            percent_cell(r.percent)
        ));
    }
    out
}

fn table6(report: &CorpusReport) -> String {
    let mut out = String::from("tl,condorcet_useable,cw_wins,percent\n");
    for r in &report.condorcet.rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.tl,
            r.condorcet_useable,
            r.cw_wins,
            percent_cell(r.percent)
        ));
    }
    out
}

fn nonmonotonic(report: &CorpusReport) -> String {
    let mut out = String::from("election\n");
    for id in &report.nonmonotonic {
        out.push_str(id);
        out.push('\n');
    }
    out
}

/// Long format: `n,<value>,elections`.
fn histogram_csv(value: &str, histogram: &BTreeMap<usize, BTreeMap<usize, usize>>) -> String {
    let mut out = format!("n,{value},elections\n");
    for (n, row) in histogram {
        for (k, count) in row {
            out.push_str(&format!("{n},{k},{count}\n"));
        }
    }
    out
}

fn max_table_json(table: &MaxDistinctTable) -> Value {
    json!({
        "by_n": table.by_n,
        "overall": table.overall,
        "mean_max": (table.mean_max * 1000.0).round() / 1000.0,
    })
}

fn report_json(
    report: &CorpusReport,
    entries: &[CorpusEntry],
    selected: &[usize],
    profiles: &[PreferenceProfile],
) -> Value {
    let mut value = json!(report);
    let elections: serde_json::Map<String, Value> = selected
        .iter()
        .map(|&i| {
            let mut sweep = render::sweep_json(&profiles[i], &entries[i].sweep);
            sweep["voters"] = json!(profiles[i].voters());
            sweep["source"] = json!(entries[i].tags.source);
            sweep["single_winner"] = json!(entries[i].tags.single_winner);
            (entries[i].id.clone(), sweep)
        })
        .collect();
    value["sweeps"] = Value::Object(elections);
    value
}

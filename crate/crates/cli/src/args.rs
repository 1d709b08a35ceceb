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

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Environment variable naming the default ballot-cleaning policy file.
pub const POLICY_ENV: &str = "RCVTRUNC_POLICY_FILE";

#[derive(Debug, Parser)]
#[command(
    name = "rcvtrunc",
    version,
    about = "Instant-runoff tabulation under ballot truncation"
)]
pub struct Cli {
    /// Also write a run manifest (inputs, digests, settings) to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,

    /// Run resampling and corpus sweeps on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Round-by-round instant-runoff count at one truncation level.
    Tabulate(TabulateArgs),
    /// Winners at every truncation level.
    Sweep(SweepArgs),
    /// Pairwise matrix and Condorcet winner.
    Condorcet(CondorcetArgs),
    /// Bootstrap pseudoprofiles and count distinct winners.
    Sample(SampleArgs),
    /// Sweep and resample a directory of elections.
    Corpus(CorpusArgs),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    /// `.blt` by extension, otherwise profile CSV if a `count` header is present, else ballot images.
    #[default]
    Auto,
    Csv,
    Images,
    Blt,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Reference {
    #[default]
    FullProfile,
    PerLevel,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
pub enum Filter {
    #[default]
    All,
    SingleWinner,
    FromTl2,
}

#[derive(Debug, Args)]
pub struct ProfileInput {
    #[arg(long, value_name = "PATH")]
    pub profile: PathBuf,

    #[arg(long, value_enum, default_value_t)]
    pub format: InputFormat,

    /// `ignore-skips`, `stop-after-two-skips`, `stop-after-two-skips-cumulative`, or a TOML file.
    #[arg(long, env = POLICY_ENV, value_name = "NAME|PATH")]
    pub policy: Option<String>,
}

#[derive(Debug, Args)]
pub struct TabulateArgs {
    #[command(flatten)]
    pub input: ProfileInput,

    /// Truncation level; defaults to the number of candidates.
    #[arg(long)]
    pub tl: Option<usize>,

    #[arg(long, value_enum, default_value_t)]
    pub out: OutputFormat,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: ProfileInput,

    #[arg(long, value_enum, default_value_t)]
    pub reference: Reference,

    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
}

#[derive(Debug, Args)]
pub struct CondorcetArgs {
    #[command(flatten)]
    pub input: ProfileInput,

    /// Truncation level; defaults to the number of candidates.
    #[arg(long)]
    pub tl: Option<usize>,

    #[arg(long, value_enum, default_value_t)]
    pub out: OutputFormat,
}

#[derive(Debug, Clone, Args)]
pub struct SamplingArgs {
    /// TOML file with `runs`, `sample_size_cap`, `seed` and `range`.
    #[arg(long, value_name = "PATH")]
    pub config: Option<PathBuf>,

    #[arg(long)]
    pub runs: Option<usize>,

    #[arg(long)]
    pub seed: Option<u64>,

    /// Largest pseudoprofile size.
    #[arg(long)]
    pub cap: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub input: ProfileInput,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    /// Count winners over truncation levels 2..n-1 only.
    #[arg(long)]
    pub from_tl2: bool,

    #[arg(long, value_enum, default_value = "json")]
    pub out: OutputFormat,
}

#[derive(Debug, Args)]
pub struct CorpusArgs {
    #[arg(long, value_name = "DIR")]
    pub dir: PathBuf,

    /// Side file with `file,source,single_winner` columns; defaults to `<dir>/metadata.csv` when present.
    #[arg(long, value_name = "PATH")]
    pub metadata: Option<PathBuf>,

    #[arg(long, value_name = "DIR")]
    pub out_dir: PathBuf,

    #[arg(long, value_enum, default_value_t)]
    pub filter: Filter,

    #[arg(long, value_enum, default_value_t)]
    pub reference: Reference,

    #[arg(long, env = POLICY_ENV, value_name = "NAME|PATH")]
    pub policy: Option<String>,

    #[command(flatten)]
    pub sampling: SamplingArgs,

    /// Skip the resampling experiment.
    #[arg(long)]
    pub no_sampling: bool,

    /// Also write long-format CSV for each figure.
    #[arg(long)]
    pub emit_plot_data: bool,
}

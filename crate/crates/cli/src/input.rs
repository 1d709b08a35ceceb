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

//! Reading profiles, cleaning policies and sampling configs from disk.

use std::path::{Path, PathBuf};

use rcv_truncation::ingest::{
    parse_ballot_images_csv, parse_blt, parse_profile_csv, NormalizationPolicy, SkipCounting,
    SkipPolicy,
};
use rcv_truncation::resampling::{SamplingConfig, WinnerRange};
use rcv_truncation::PreferenceProfile;
use sha2::{Digest, Sha256};

use crate::args::{InputFormat, SamplingArgs};
use crate::error::CliError;

/// A file read from disk with its SHA-256 digest.
#[derive(Debug, Clone)]
pub struct InputFile {
    pub path: PathBuf,
    pub bytes: Vec<u8>,
    pub sha256: String,
}

impl InputFile {
    pub fn read(path: &Path) -> Result<Self, CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::input(path, e))?;
        let sha256 = hex::encode(Sha256::digest(&bytes));
        Ok(InputFile {
            path: path.to_owned(),
            bytes,
            sha256,
        })
    }
}

#[derive(Debug, Clone)]
pub struct LoadedProfile {
    pub file: InputFile,
    pub format: InputFormat,
    pub profile: PreferenceProfile,
}

pub fn load_profile(
    path: &Path,
    format: InputFormat,
    policy: &NormalizationPolicy,
) -> Result<LoadedProfile, CliError> {
    let file = InputFile::read(path)?;
    let format = match format {
        InputFormat::Auto => detect_format(path, &file.bytes),
        f => f,
    };
    let parsed = match format {
        InputFormat::Csv => parse_profile_csv(&file.bytes),
        InputFormat::Images => parse_ballot_images_csv(&file.bytes, policy),
        InputFormat::Blt => parse_blt(&file.bytes).map(|b| b.profile),
        InputFormat::Auto => unreachable!("format resolved above"),
    };
    let profile = parsed.map_err(|e| CliError::input(path, e))?;
    Ok(LoadedProfile {
        file,
        format,
        profile,
    })
}

/// `.blt` files by extension; CSV files by whether a `count` header is present.
pub fn detect_format(path: &Path, bytes: &[u8]) -> InputFormat {
    if path
        .extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("blt"))
    {
        return InputFormat::Blt;
    }
    let text = String::from_utf8_lossy(bytes);
    let header = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with("candidates,"));
    match header {
        Some(h) if h == "count" || h.starts_with("count,") => InputFormat::Csv,
        _ => InputFormat::Images,
    }
}

pub const POLICY_NAMES: [&str; 3] = [
    "ignore-skips",
    "stop-after-two-skips",
    "stop-after-two-skips-cumulative",
];

/// Resolves `--policy`: a built-in name, or a TOML file.
pub fn resolve_policy(
    value: Option<&str>,
) -> Result<(NormalizationPolicy, Option<InputFile>), CliError> {
    let Some(value) = value.filter(|s| !s.is_empty()) else {
        return Ok((NormalizationPolicy::default(), None));
    };
    let named = match value {
        "ignore-skips" => Some(NormalizationPolicy::default()),
        "stop-after-two-skips" => Some(NormalizationPolicy::stop_after_two_skips()),
        "stop-after-two-skips-cumulative" => Some(NormalizationPolicy {
            skips: SkipPolicy::StopAfterTwoSkips,
            skip_counting: SkipCounting::Cumulative,
            ..NormalizationPolicy::default()
        }),
        _ => None,
    };
    if let Some(policy) = named {
        return Ok((policy, None));
    }
    let path = Path::new(value);
    if !value.contains(['.', '/', '\\']) && !path.exists() {
        return Err(CliError::invalid(format!(
            "unknown policy {value:?}; expected one of {} or a TOML file",
            POLICY_NAMES.join(", ")
        )));
    }
    let file = InputFile::read(path)?;
    let policy = parse_toml(&file)?;
    Ok((policy, Some(file)))
}

/// Builds a sampling config from an optional TOML file overlaid with flags.
pub fn resolve_sampling(
    args: &SamplingArgs,
    from_tl2: bool,
) -> Result<(SamplingConfig, Option<InputFile>), CliError> {
    let (mut config, file) = match &args.config {
        Some(path) => {
            let file = InputFile::read(path)?;
            (parse_toml::<SamplingConfig>(&file)?, Some(file))
        }
        None => (SamplingConfig::default(), None),
    };
    if let Some(runs) = args.runs {
        config.runs = runs;
    }
    if let Some(seed) = args.seed {
        config.seed = seed;
    }
    if let Some(cap) = args.cap {
        config.sample_size_cap = cap;
    }
    if from_tl2 {
        config.range = WinnerRange::FromTl2;
    }
    config.validate().map_err(CliError::invalid)?;
    Ok((config, file))
}

fn parse_toml<T: serde::de::DeserializeOwned>(file: &InputFile) -> Result<T, CliError> {
    let text = std::str::from_utf8(&file.bytes)
        .map_err(|_| CliError::input(&file.path, "not valid UTF-8"))?;
    toml::from_str(text).map_err(|e| CliError::input(&file.path, e.to_string().trim_end()))
}

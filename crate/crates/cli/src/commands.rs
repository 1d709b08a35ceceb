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

use std::io::Write;

use rcv_truncation::resampling::run_experiment_with;
use rcv_truncation::truncation::{sweep_with, CondorcetReference};
use rcv_truncation::{pairwise_matrix, tabulate, Execution, TruncationLevel};
use serde_json::json;

use crate::args::{
    CondorcetArgs, OutputFormat, ProfileInput, Reference, SampleArgs, SweepArgs, TabulateArgs,
};
use crate::error::CliError;
use crate::input::{load_profile, resolve_policy, resolve_sampling, LoadedProfile};
use crate::manifest::RunManifest;
use crate::render;

pub(crate) struct Context<'a> {
    pub execution: Execution,
    pub manifest: &'a mut RunManifest,
    pub stdout: &'a mut dyn Write,
}

impl Context<'_> {
    pub fn emit(&mut self, text: &str) -> Result<(), CliError> {
        self.stdout
            .write_all(text.as_bytes())
            .map_err(|e| CliError::output(std::path::Path::new("<stdout>"), e))
    }
}

fn load(input: &ProfileInput, ctx: &mut Context<'_>) -> Result<LoadedProfile, CliError> {
    let (policy, policy_file) = resolve_policy(input.policy.as_deref())?;
    if let Some(f) = &policy_file {
        ctx.manifest.add_input(f);
    }
    let loaded = load_profile(&input.profile, input.format, &policy)?;
    ctx.manifest.add_input(&loaded.file);
    ctx.manifest.settings = json!({
        "format": format!("{:?}", loaded.format).to_lowercase(),
        "policy": policy,
    });
    Ok(loaded)
}

fn level(loaded: &LoadedProfile, tl: Option<usize>) -> Result<TruncationLevel, CliError> {
    let n = loaded.profile.candidates();
    let tl = tl.unwrap_or(n);
    loaded.profile.truncation_level(tl).map_err(|_| {
        CliError::invalid(format!(
            "truncation level {tl} is outside 1..={n} for {}",
            loaded.file.path.display()
        ))
    })
}

pub(crate) fn reference(r: Reference) -> CondorcetReference {
    match r {
        Reference::FullProfile => CondorcetReference::FullProfile,
        Reference::PerLevel => CondorcetReference::PerLevel,
    }
}

pub(crate) fn tabulate_cmd(args: &TabulateArgs, ctx: &mut Context<'_>) -> Result<(), CliError> {
    let loaded = load(&args.input, ctx)?;
    let tl = level(&loaded, args.tl)?;
    let p = &loaded.profile;
    let result = tabulate(p, tl).expect("level validated against this profile");
    let text = match args.out {
        OutputFormat::Text => render::tabulation_text(p, &result),
        OutputFormat::Json => render::to_json(&render::tabulation_json(p, &result)),
        OutputFormat::Csv => render::tabulation_csv(p, &result),
    };
    ctx.emit(&text)
}

pub(crate) fn sweep_cmd(args: &SweepArgs, ctx: &mut Context<'_>) -> Result<(), CliError> {
    let loaded = load(&args.input, ctx)?;
    let p = &loaded.profile;
    let sweep = sweep_with(p, reference(args.reference)).map_err(CliError::invalid)?;
    let text = match args.out {
        OutputFormat::Text => render::sweep_text(p, &sweep),
        OutputFormat::Json => render::to_json(&render::sweep_json(p, &sweep)),
        OutputFormat::Csv => render::sweep_csv(p, &sweep),
    };
    ctx.emit(&text)
}

pub(crate) fn condorcet_cmd(args: &CondorcetArgs, ctx: &mut Context<'_>) -> Result<(), CliError> {
    let loaded = load(&args.input, ctx)?;
    let tl = level(&loaded, args.tl)?;
    let p = &loaded.profile;
    let matrix = pairwise_matrix(p, tl).expect("level validated against this profile");
    let text = match args.out {
        OutputFormat::Text => render::matrix_text(p, tl.get(), &matrix),
        OutputFormat::Json => render::to_json(&render::matrix_json(p, tl.get(), &matrix)),
        OutputFormat::Csv => render::matrix_csv(p, &matrix),
    };
    ctx.emit(&text)
}

pub(crate) fn sample_cmd(args: &SampleArgs, ctx: &mut Context<'_>) -> Result<(), CliError> {
    let loaded = load(&args.input, ctx)?;
    let (config, config_file) = resolve_sampling(&args.sampling, args.from_tl2)?;
    if let Some(f) = &config_file {
        ctx.manifest.add_input(f);
    }
    ctx.manifest.settings["sampling"] = json!(config);
    let report =
        run_experiment_with(&loaded.profile, &config, ctx.execution).map_err(CliError::invalid)?;
    let text = match args.out {
        OutputFormat::Text => render::sampling_text(&report),
        OutputFormat::Json => {
            render::to_json(&render::sampling_json(&report, config.sample_size_cap))
        }
        OutputFormat::Csv => render::sampling_csv(&report),
    };
    ctx.emit(&text)
}

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

//! Run manifests: enough to repeat a run and check its inputs are unchanged.
//! Timestamps live only here, so every other output stays byte-stable.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::Serialize;
use serde_json::Value;

use crate::input::InputFile;

#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    /// Arguments as given, program name excluded.
    pub arguments: Vec<String>,
    /// Input path to SHA-256 of its contents.
    pub inputs: BTreeMap<String, String>,
    /// Effective ballot-cleaning policy, sampling config and other settings.
    pub settings: Value,
    pub started_unix: u64,
    pub finished_unix: u64,
}

impl RunManifest {
    pub fn start(arguments: Vec<String>) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            arguments,
            inputs: BTreeMap::new(),
            settings: Value::Null,
            started_unix: unix_now(),
            finished_unix: 0,
        }
    }

    pub fn add_input(&mut self, file: &InputFile) {
        self.inputs.insert(display(&file.path), file.sha256.clone());
    }

    pub fn finish(mut self) -> Self {
        self.finished_unix = unix_now();
        self
    }
}

fn display(path: &Path) -> String {
    path.to_string_lossy().into_owned()
}

fn unix_now() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_secs())
}

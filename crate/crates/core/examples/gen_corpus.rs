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

//! Regenerates the bundled synthetic corpus:
//!
//! ```text
//! cargo run -p rcv-truncation --example gen_corpus -- fixtures/corpus
//! ```
//!
//! Elections are written as profile CSV or BLT, alternating, and listed in
//! `metadata.csv`. The two hand-built fixtures are copied in separately.

use std::fmt::Write as _;
use std::path::PathBuf;

use rand::Rng;
use rcv_truncation::ingest::{write_blt, write_profile_csv};
use rcv_truncation::resampling::run_rng;
use rcv_truncation::synth::{factional, impartial_partial};

const SEED: u64 = 20_260_101;
const ELECTIONS: usize = 24;

fn main() -> std::io::Result<()> {
    let dir: PathBuf = std::env::args_os()
        .nth(1)
        .map_or_else(|| "fixtures/corpus".into(), PathBuf::from);
    std::fs::create_dir_all(&dir)?;
    let mut metadata = String::from("file,source,single_winner\n");
    for i in 0..ELECTIONS {
        let mut rng = run_rng(SEED, i);
        let n = 3 + i % 6;
        let voters = rng.random_range(40..2500);
        let (profile, source) = if i % 4 == 3 {
            (
                impartial_partial(&mut rng, n, voters),
                "synthetic-impartial",
            )
        } else {
            let factions = rng.random_range(2..=4);
            (
                factional(&mut rng, n, voters, factions),
                "synthetic-factional",
            )
        };
        let single_winner = i % 5 != 4;
        let name = if i % 2 == 0 {
            let name = format!("e{i:02}_n{n}.csv");
            std::fs::write(
                dir.join(&name),
                write_profile_csv(&profile).expect("synthetic names"),
            )?;
            name
        } else {
            let name = format!("e{i:02}_n{n}.blt");
            let seats = if single_winner { 1 } else { 2 };
            let text = write_blt(&profile, seats, &format!("synthetic election {i}"))
                .expect("synthetic names");
            std::fs::write(dir.join(&name), text)?;
            name
        };
        let _ = writeln!(metadata, "{name},{source},{single_winner}");
    }
    metadata.push_str("table1.csv,worked-example,true\n");
    metadata.push_str("berkeley_like.csv,near-tie,true\n");
    std::fs::write(dir.join("metadata.csv"), metadata)
}

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

//! Distribution check for the class-level sampler: over many draws from the
//! worked-example profile, class frequencies follow the class weights.

use rcv_truncation::ingest::parse_profile_csv;
use rcv_truncation::resampling::{pseudoprofile_for_run, SamplingConfig};

const TABLE1: &str = "count,rank1,rank2,rank3,rank4
57,A,B,,
26,A,D,,
51,A,D,C,B
137,B,C,A,
2,B,C,D,
38,C,A,D,
16,C,B,D,
53,C,D,A,B
72,D,A,B,
15,D,A,C,B
33,D,B,A,C
";

/// Upper 0.1% point of chi-square with 10 degrees of freedom.
const CHI2_999_DF10: f64 = 29.588;

#[test]
fn class_counts_pass_chi_square() {
    let profile = parse_profile_csv(TABLE1.as_bytes()).unwrap();
    let config = SamplingConfig {
        runs: 1000,
        sample_size_cap: 500,
        seed: 2024,
        ..SamplingConfig::default()
    };
    let classes = profile.classes();
    let mut observed = vec![0u64; classes.len()];
    for run in 0..config.runs {
        let pseudo = pseudoprofile_for_run(&profile, &config, run).unwrap();
        assert_eq!(pseudo.voters(), 500);
        for c in pseudo.classes() {
            let k = classes
                .iter()
                .position(|o| o.ranking == c.ranking)
                .expect("sampled ballot exists");
            observed[k] += c.count;
        }
    }
    let draws = (config.runs * 500) as f64;
    let chi2: f64 = classes
        .iter()
        .zip(&observed)
        .map(|(c, &o)| {
            let e = draws * c.count as f64 / profile.voters() as f64;
            (o as f64 - e).powi(2) / e
        })
        .sum();
    assert_eq!(classes.len() - 1, 10);
    assert!(
        chi2 < CHI2_999_DF10,
        "chi-square {chi2:.3} over {CHI2_999_DF10}"
    );
}

#[test]
fn per_draw_means_match_weights() {
    let profile = parse_profile_csv(TABLE1.as_bytes()).unwrap();
    let config = SamplingConfig {
        runs: 400,
        seed: 99,
        ..SamplingConfig::default()
    };
    let classes = profile.classes();
    let mut totals = vec![0u64; classes.len()];
    for run in 0..config.runs {
        for c in pseudoprofile_for_run(&profile, &config, run)
            .unwrap()
            .classes()
        {
            let k = classes.iter().position(|o| o.ranking == c.ranking).unwrap();
            totals[k] += c.count;
        }
    }
    for (c, t) in classes.iter().zip(totals) {
        let mean = t as f64 / config.runs as f64;
        let sd =
            (c.count as f64 * (1.0 - c.count as f64 / 500.0)).sqrt() / (config.runs as f64).sqrt();
        assert!(
            (mean - c.count as f64).abs() < 5.0 * sd.max(0.05),
            "{:?}: mean {mean}",
            c.ranking
        );
    }
}

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

//! Sequential vs parallel execution of the data-parallel workloads:
//! resampling runs of one election, and truncation sweeps over a corpus.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rcv_truncation::exec::Execution;
use rcv_truncation::resampling::{run_experiment_with, run_rng, SamplingConfig};
use rcv_truncation::synth::factional;
use rcv_truncation::truncation::{sweep_all, CondorcetReference};
use rcv_truncation::{tabulate, PreferenceProfile};

const STRATEGIES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn resampling(c: &mut Criterion) {
    let mut group = c.benchmark_group("run_experiment");
    group.sample_size(10);
    for (candidates, voters) in [(4, 500), (7, 20_000)] {
        let profile = factional(&mut run_rng(7, candidates), candidates, voters, 4);
        let config = SamplingConfig {
            runs: 1000,
            seed: 42,
            ..SamplingConfig::default()
        };
        for (label, execution) in STRATEGIES {
            group.bench_with_input(
                BenchmarkId::new(label, format!("n{candidates}_v{voters}")),
                &profile,
                |b, p| b.iter(|| run_experiment_with(black_box(p), &config, execution).unwrap()),
            );
        }
    }
    group.finish();
}

fn corpus_sweep(c: &mut Criterion) {
    let corpus: Vec<PreferenceProfile> = (0..200)
        .map(|i| factional(&mut run_rng(11, i), 3 + i % 8, 2000, 3 + i % 3))
        .collect();
    let mut group = c.benchmark_group("sweep_all");
    group.sample_size(10);
    for (label, execution) in STRATEGIES {
        group.bench_function(label, |b| {
            b.iter(|| {
                sweep_all(
                    black_box(&corpus),
                    CondorcetReference::FullProfile,
                    execution,
                )
            })
        });
    }
    group.finish();
}

fn single_tabulation(c: &mut Criterion) {
    let profile = factional(&mut run_rng(3, 0), 10, 50_000, 5);
    let tl = profile.truncation_level(10).unwrap();
    c.bench_function("tabulate_n10_v50000", |b| {
        b.iter(|| tabulate(black_box(&profile), tl).unwrap())
    });
}

criterion_group!(benches, resampling, corpus_sweep, single_tabulation);
criterion_main!(benches);

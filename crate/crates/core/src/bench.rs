//! Wall-clock scaling runs over random trees.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;

use crate::error::OracleError;
use crate::interdiction::solve_mcspit;
use crate::oracle::{generate_instance, GeneratorConfig, TreeShape};
use crate::riovspt::solve_riovspt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Riovspt,
    Mcspit,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchRecord {
    pub n: usize,
    pub algorithm: Algorithm,
    pub trials: usize,
    /// Seconds.
    pub t_avg: f64,
    pub t_max: f64,
    pub t_min: f64,
}

impl BenchRecord {
    fn from_samples(n: usize, algorithm: Algorithm, samples: &[f64]) -> Self {
        let total: f64 = samples.iter().sum();
        BenchRecord {
            n,
            algorithm,
            trials: samples.len(),
            t_avg: total / samples.len() as f64,
            t_max: samples.iter().copied().fold(f64::MIN, f64::max),
            t_min: samples.iter().copied().fold(f64::MAX, f64::min),
        }
    }
}

/// Configuration used for a bench trial: a random-attachment tree with wide
/// integer ranges.
pub fn bench_config(n: usize, seed: u64) -> GeneratorConfig {
    GeneratorConfig {
        weight_range: 0..=1000,
        slack_range: 0..=500,
        cost_range: 1..=1000,
        ..GeneratorConfig::new(n, seed).with_shape(TreeShape::RandomAttachment)
    }
}

/// Times both solvers on `trials` fresh instances per size. Instance
/// generation is not timed.
pub fn run_bench(sizes: &[usize], trials: usize, seed: u64) -> Result<Vec<BenchRecord>, OracleError> {
    let trials = trials.max(1);
    let mut records = Vec::with_capacity(sizes.len() * 2);
    for &n in sizes {
        let mut riovspt = Vec::with_capacity(trials);
        let mut mcspit = Vec::with_capacity(trials);
        // untimed warm-up
        let warm = generate_instance(&bench_config(n, seed))?;
        solve_riovspt(&warm)?;
        solve_mcspit(&warm)?;
        for trial in 0..trials {
            let instance = generate_instance(&bench_config(n, seed.wrapping_add(trial as u64 + 1)))?;
            let start = Instant::now();
            solve_riovspt(&instance)?;
            riovspt.push(start.elapsed().as_secs_f64());
            let start = Instant::now();
            solve_mcspit(&instance)?;
            mcspit.push(start.elapsed().as_secs_f64());
        }
        records.push(BenchRecord::from_samples(n, Algorithm::Riovspt, &riovspt));
        records.push(BenchRecord::from_samples(n, Algorithm::Mcspit, &mcspit));
    }
    Ok(records)
}

pub fn format_table(records: &[BenchRecord]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>8}  {:<9}  {:>6}  {:>12}  {:>12}  {:>12}",
        "n", "algorithm", "trials", "t_avg (s)", "t_max (s)", "t_min (s)"
    );
    for r in records {
        let name = match r.algorithm {
            Algorithm::Riovspt => "riovspt",
            Algorithm::Mcspit => "mcspit",
        };
        let _ = writeln!(
            out,
            "{:>8}  {:<9}  {:>6}  {:>12.6}  {:>12.6}  {:>12.6}",
            r.n, name, r.trials, r.t_avg, r.t_max, r.t_min
        );
    }
    out
}

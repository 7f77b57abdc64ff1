//! Throughput measurement for the sparse wedge kernel.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::coeff::Ring;
use crate::error::{Error, Result};
use crate::random::{random_multivector, trial_rng};

pub const MAX_BENCH_GENERATORS: usize = 30;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchReport {
    pub generators: usize,
    pub density: f64,
    pub reps: usize,
    pub seed: u64,
    pub ring: Ring,
    pub terms_a: usize,
    pub terms_b: usize,
    pub result_terms: Option<usize>,
    pub elapsed_ms: Option<f64>,
    pub wedges_per_second: Option<f64>,
}

/// Times `reps` wedges of two random multivectors with about
/// `density · 2^generators` terms each.
pub fn bench_wedge(
    generators: usize,
    density: f64,
    reps: usize,
    seed: u64,
    ring: Ring,
) -> Result<BenchReport> {
    if generators > MAX_BENCH_GENERATORS {
        return Err(Error::InvalidSize(format!(
            "{generators} generators exceeds {MAX_BENCH_GENERATORS}"
        )));
    }
    if !(0.0..=1.0).contains(&density) {
        return Err(Error::InvalidSize(format!(
            "density {density} outside [0, 1]"
        )));
    }
    let terms = ((density * (1u64 << generators) as f64).round() as usize).max(1);
    let mut rng = trial_rng(seed, "bench", generators, 0);
    let a = random_multivector(&mut rng, generators, ring, terms);
    let b = random_multivector(&mut rng, generators, ring, terms);
    let mut report = BenchReport {
        generators,
        density,
        reps,
        seed,
        ring,
        terms_a: a.len(),
        terms_b: b.len(),
        result_terms: None,
        elapsed_ms: None,
        wedges_per_second: None,
    };
    if reps == 0 {
        return Ok(report);
    }
    let started = Instant::now();
    let mut last = None;
    for _ in 0..reps {
        last = Some(a.wedge(&b)?);
    }
    let secs = started.elapsed().as_secs_f64().max(1e-9);
    report.result_terms = last.map(|p| p.len());
    report.elapsed_ms = Some(secs * 1e3);
    report.wedges_per_second = Some(reps as f64 / secs);
    Ok(report)
}

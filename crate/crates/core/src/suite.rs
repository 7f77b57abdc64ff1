//! Batch orchestration of every identity check for a range of sizes.

use std::time::Instant;

use rayon::prelude::*;

use crate::coeff::Ring;
use crate::error::{Error, Result};
use crate::identities::{
    verify_al, verify_anticommutation, verify_cayley_hamilton_generic, verify_free_basis,
    verify_structure_identity, verify_trace_vanishing, Convention,
};
use crate::matrix::GrassmannMatrix;
use crate::multilinear::{
    equivariance_check, proposition_check, standard_identity_check, wedge_of_maps_check,
};
use crate::report::CheckReport;

/// Sizes above this need `allow_large`.
pub const DESK_SCALE_N: usize = 4;
/// Hard ceiling on the suite size.
pub const MAX_SUITE_N: usize = 5;
/// Largest `a + b` the suite feeds to the wedge-of-maps check.
pub const SUITE_WEDGE_DEGREE: usize = 6;
/// Largest power the suite feeds to the randomized `X^a = S_a` check once
/// `2n` exceeds it.
pub const SUITE_PROPOSITION_DEGREE: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteConfig {
    pub n_max: usize,
    pub ring: Ring,
    pub seed: u64,
    /// Trials per randomized check.
    pub trials: usize,
    /// Trials per wedge-of-maps pair; each trial sums over `𝔖_{a+b}`.
    pub wedge_trials: usize,
    pub convention: Convention,
    pub allow_large: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 3,
            ring: Ring::Rational,
            seed: 0,
            trials: 100,
            wedge_trials: 5,
            convention: Convention::Left,
            allow_large: false,
        }
    }
}

impl SuiteConfig {
    /// Rejects configurations before any computation starts.
    pub fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::Config("n_max must be at least 1".into()));
        }
        if self.n_max > MAX_SUITE_N {
            return Err(Error::Config(format!(
                "n_max {} exceeds {MAX_SUITE_N}",
                self.n_max
            )));
        }
        if !self.ring.admits_division_up_to(2 * self.n_max as u64) {
            return Err(Error::Config(format!(
                "prime modulus {} must exceed 2·n_max = {}",
                self.ring.characteristic(),
                2 * self.n_max
            )));
        }
        if self.n_max > DESK_SCALE_N {
            if !self.allow_large {
                return Err(Error::Config(format!(
                    "n_max {} needs --allow-large",
                    self.n_max
                )));
            }
            if !matches!(self.ring, Ring::PrimeField(_)) {
                return Err(Error::Config(format!(
                    "n_max {} requires a prime-field ring",
                    self.n_max
                )));
            }
        }
        Ok(())
    }

    fn tasks(&self) -> Vec<Task> {
        let mut tasks = Vec::new();
        for n in 1..=self.n_max {
            tasks.extend([
                Task::Al(n),
                Task::TraceVanishing(n),
                Task::CayleyHamilton(n),
            ]);
            tasks.extend([Task::Structure(n), Task::Anticommutation(n)]);
            if self.ring == Ring::Rational {
                tasks.push(Task::FreeBasis(n));
            }
            tasks.push(Task::StandardIdentity(n));
            tasks.push(Task::Proposition(n, (2 * n).min(SUITE_PROPOSITION_DEGREE)));
            let max_ab = (2 * n).min(SUITE_WEDGE_DEGREE);
            for a in 1..max_ab {
                for b in 1..=max_ab - a {
                    tasks.push(Task::WedgeOfMaps(n, a, b));
                }
            }
            for map in [
                EquivariantMap::X,
                EquivariantMap::XCubed,
                EquivariantMap::TraceXCubed,
            ] {
                tasks.push(Task::Equivariance(n, map));
            }
        }
        tasks
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EquivariantMap {
    X,
    XCubed,
    TraceXCubed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Task {
    Al(usize),
    TraceVanishing(usize),
    CayleyHamilton(usize),
    Structure(usize),
    Anticommutation(usize),
    FreeBasis(usize),
    StandardIdentity(usize),
    Proposition(usize, usize),
    WedgeOfMaps(usize, usize, usize),
    Equivariance(usize, EquivariantMap),
}

impl Task {
    fn n(self) -> usize {
        match self {
            Task::Al(n)
            | Task::TraceVanishing(n)
            | Task::CayleyHamilton(n)
            | Task::Structure(n)
            | Task::Anticommutation(n)
            | Task::FreeBasis(n)
            | Task::StandardIdentity(n)
            | Task::Proposition(n, _)
            | Task::WedgeOfMaps(n, _, _)
            | Task::Equivariance(n, _) => n,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Task::Al(_) => "al",
            Task::TraceVanishing(_) => "trace_vanishing",
            Task::CayleyHamilton(_) => "cayley_hamilton",
            Task::Structure(_) => "structure_identity",
            Task::Anticommutation(_) => "anticommutation",
            Task::FreeBasis(_) => "free_basis",
            Task::StandardIdentity(_) => "standard_identity",
            Task::Proposition(..) => "proposition",
            Task::WedgeOfMaps(..) => "wedge_of_maps",
            Task::Equivariance(..) => "equivariance",
        }
    }

    fn run(self, cfg: &SuiteConfig) -> Result<CheckReport> {
        let (ring, seed, trials) = (cfg.ring, cfg.seed, cfg.trials);
        match self {
            Task::Al(n) => verify_al(n, ring),
            Task::TraceVanishing(n) => verify_trace_vanishing(n, n, ring),
            Task::CayleyHamilton(n) => verify_cayley_hamilton_generic(n, ring),
            Task::Structure(n) => verify_structure_identity(n, ring, cfg.convention),
            Task::Anticommutation(n) => verify_anticommutation(n, ring),
            Task::FreeBasis(n) => verify_free_basis(n, ring),
            Task::StandardIdentity(n) => standard_identity_check(n, ring, trials, seed),
            Task::Proposition(n, a_max) => proposition_check(n, a_max, ring, trials, seed),
            Task::WedgeOfMaps(n, a, b) => {
                wedge_of_maps_check(a, b, n, ring, cfg.wedge_trials, seed)
            }
            Task::Equivariance(n, map) => {
                let x = GrassmannMatrix::generic(n, ring)?;
                let (f, label) = match map {
                    EquivariantMap::X => (x, "X"),
                    EquivariantMap::XCubed => (x.power(3)?, "X^3"),
                    EquivariantMap::TraceXCubed => (
                        GrassmannMatrix::scalar_identity(n, &x.power(3)?.trace()),
                        "tr(X^3)I",
                    ),
                };
                let degree = if label == "X" { 1 } else { 3 };
                equivariance_check(&f, degree, label, ring, trials, seed)
            }
        }
    }
}

/// Runs every check for `n = 1..=n_max`. Checks run concurrently; the
/// output order is fixed by `(n, check)`. A check that aborts with an error
/// is reported as a failure.
pub fn run_suite(cfg: &SuiteConfig) -> Result<Vec<CheckReport>> {
    cfg.validate()?;
    let reports = cfg
        .tasks()
        .into_par_iter()
        .map(|task| {
            let started = Instant::now();
            task.run(cfg).unwrap_or_else(|err| {
                CheckReport::new(task.name(), task.n(), cfg.ring).errored(&err, started)
            })
        })
        .collect();
    Ok(reports)
}

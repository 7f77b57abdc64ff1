//! Acceptance suite: one line per criterion, non-zero exit if any fails.
//!
//! Runs as a plain binary (`harness = false`) so the summary is printed even
//! when the output of other test targets is captured.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use grassmann_core::multilinear::{staircase, wedge_of_maps_check};
use grassmann_core::newton::{cayley_hamilton, cayley_hamilton_check, newton_char_coeffs};
use grassmann_core::report::reports_to_json;
use grassmann_core::{
    equivariance_check, proposition_check, run_suite, standard_poly_eval, verify_al,
    verify_anticommutation, verify_free_basis, verify_structure_identity, verify_trace_vanishing,
    CheckReport, Convention, GrassmannMatrix, Multivector, Result, Ring, SuiteConfig,
};

const Q: Ring = Ring::Rational;
const SEED: u64 = 20_240_601;

fn gf101() -> Ring {
    Ring::prime_field(101).unwrap()
}

type Outcome = Result<(bool, String)>;
type Criterion = (&'static str, fn() -> Outcome);

fn require(report: &CheckReport, what: &mut Vec<String>) -> bool {
    if !report.pass {
        what.push(format!(
            "{} n={} failed: {:?}",
            report.check, report.n, report.witness
        ));
    }
    report.pass
}

fn summary(ok: bool, failures: Vec<String>, detail: String) -> (bool, String) {
    if ok {
        (true, detail)
    } else {
        (false, failures.join("; "))
    }
}

fn al_identity() -> Outcome {
    let mut failures = Vec::new();
    let started = Instant::now();
    let mut ok = true;
    for n in 1..=3 {
        ok &= require(&verify_al(n, Q)?, &mut failures);
    }
    let small = started.elapsed();
    let started = Instant::now();
    ok &= require(&verify_al(4, Q)?, &mut failures);
    let four = started.elapsed();
    if small >= Duration::from_secs(5) {
        ok = false;
        failures.push(format!("n ≤ 3 took {small:.2?}"));
    }
    if four >= Duration::from_secs(60) {
        ok = false;
        failures.push(format!("n = 4 took {four:.2?}"));
    }
    Ok(summary(
        ok,
        failures,
        format!("n ≤ 3 in {small:.2?}, n = 4 in {four:.2?}"),
    ))
}

fn sharpness() -> Outcome {
    let mut failures = Vec::new();
    for n in 2..=4 {
        if GrassmannMatrix::generic(n, Q)?.power(2 * n - 1)?.is_zero() {
            failures.push(format!("X^{} vanishes at n = {n}", 2 * n - 1));
        }
    }
    for n in 2..=3 {
        if standard_poly_eval(2 * n - 1, &staircase(n, Q))?.is_zero() {
            failures.push(format!(
                "S_{} vanishes on the staircase at n = {n}",
                2 * n - 1
            ));
        }
    }
    Ok(summary(
        failures.is_empty(),
        failures,
        "X^{2n−1} ≠ 0 for n = 2..4; staircase witness for n = 2, 3".into(),
    ))
}

fn trace_vanishing() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    for n in 1..=4 {
        ok &= require(&verify_trace_vanishing(n, n, Q)?, &mut failures);
    }
    Ok(summary(ok, failures, "tr(X^{2i}) = 0 for i ≤ n ≤ 4".into()))
}

fn cayley_hamilton_route() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let x = GrassmannMatrix::generic(n, Q)?;
        let x2 = x.power(2)?;
        let traces: Vec<Multivector> = x2.powers(n)?[1..]
            .iter()
            .map(GrassmannMatrix::trace)
            .collect();
        if !newton_char_coeffs(&traces)?
            .iter()
            .all(Multivector::is_zero)
        {
            ok = false;
            failures.push(format!("nonzero characteristic coefficient at n = {n}"));
        }
        ok &= require(&cayley_hamilton_check(&x2)?, &mut failures);
        let conclusion = &cayley_hamilton(&x2)?.powers[n];
        if conclusion != &x.power(2 * n)? {
            ok = false;
            failures.push(format!("(X^2)^{n} differs from X^{}", 2 * n));
        }
    }
    Ok(summary(
        ok,
        failures,
        "characteristic coefficients of X² vanish; (X²)^n identical to X^{2n}".into(),
    ))
}

fn proposition() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    for ring in [gf101(), Q] {
        for n in 1..=3 {
            ok &= require(
                &proposition_check(n, 2 * n, ring, 100, SEED)?,
                &mut failures,
            );
        }
    }
    Ok(summary(
        ok,
        failures,
        "100 tuples per (a, n), a ≤ 2n, n ≤ 3, over GF(101) and Q".into(),
    ))
}

fn wedge_of_maps() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    let mut pairs = 0;
    for ring in [gf101(), Q] {
        for n in 1..=3 {
            for a in 1..6 {
                for b in 1..=6 - a {
                    ok &= require(
                        &wedge_of_maps_check(a, b, n, ring, 10, SEED)?,
                        &mut failures,
                    );
                    pairs += 1;
                }
            }
        }
    }
    Ok(summary(
        ok,
        failures,
        format!("{pairs} (a, b, n, ring) cases, 10 inputs each"),
    ))
}

fn structure_identity() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    for n in 1..=3 {
        let r = verify_structure_identity(n, Q, Convention::Left)?;
        ok &= require(&r, &mut failures);
        if r.params.get("convention").and_then(|v| v.as_str()) != Some("left") {
            ok = false;
            failures.push(format!("convention not recorded at n = {n}"));
        }
    }
    Ok(summary(
        ok,
        failures,
        "n = 1..3 under the matrix-first convention (recorded as \"left\")".into(),
    ))
}

fn anticommutation() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    for n in 2..=3 {
        let r = verify_anticommutation(n, Q)?;
        ok &= require(&r, &mut failures);
        if r.stats.get("x_self_anticommutes") != Some(&false.into()) || r.notes.is_empty() {
            ok = false;
            failures.push(format!("X∧X exception not recorded at n = {n}"));
        }
    }
    Ok(summary(
        ok,
        failures,
        "distinct generators anticommute; X∧X ≠ 0 recorded".into(),
    ))
}

fn free_basis() -> Outcome {
    let mut failures = Vec::new();
    let mut ranks = Vec::new();
    for (n, expected) in [(1, 2), (2, 8), (3, 24)] {
        let r = verify_free_basis(n, Q)?;
        let rank = r.stats["rank"].as_u64().unwrap_or(0);
        ranks.push(rank);
        if !r.pass || rank != expected {
            failures.push(format!("n = {n}: rank {rank}, expected {expected}"));
        }
    }
    Ok(summary(
        failures.is_empty(),
        failures,
        format!("ranks {ranks:?}"),
    ))
}

fn equivariance() -> Outcome {
    let mut failures = Vec::new();
    let mut ok = true;
    for n in 2..=3 {
        let x = GrassmannMatrix::generic(n, Q)?;
        let x3 = x.power(3)?;
        let tr3 = GrassmannMatrix::scalar_identity(n, &x3.trace());
        for (f, degree, label) in [(&x, 1, "X"), (&x3, 3, "X^3"), (&tr3, 3, "tr(X^3)I")] {
            ok &= require(
                &equivariance_check(f, degree, label, Q, 100, SEED)?,
                &mut failures,
            );
        }
    }
    Ok(summary(
        ok,
        failures,
        "100 trials each for X, X³, tr(X³)·I at n = 2, 3".into(),
    ))
}

fn determinism() -> Outcome {
    let cfg = SuiteConfig {
        seed: SEED,
        ..SuiteConfig::default()
    };
    let first = reports_to_json(&run_suite(&cfg)?, false);
    let second = reports_to_json(&run_suite(&cfg)?, false);
    let ok = first == second;
    Ok((ok, format!("{} bytes, identical = {ok}", first.len())))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("AL identity", al_identity),
        ("sharpness witness", sharpness),
        ("trace vanishing", trace_vanishing),
        ("Cayley–Hamilton route", cayley_hamilton_route),
        ("proposition equivalence", proposition),
        ("wedge of maps", wedge_of_maps),
        ("structure identity", structure_identity),
        ("anticommutation", anticommutation),
        ("free basis", free_basis),
        ("equivariance", equivariance),
        ("determinism", determinism),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        all &= pass;
        println!(
            "criterion {:>2} {:<24} {}  ({:.2?})  {detail}",
            i + 1,
            name,
            if pass { "PASS" } else { "FAIL" },
            started.elapsed()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

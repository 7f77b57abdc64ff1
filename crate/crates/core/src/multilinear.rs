//! Grassmann matrices as antisymmetric multilinear maps on concrete matrices.
//!
//! A homogeneous degree-`k` element `F` of `⋀M_n^* ⊗ M_n` is evaluated on
//! `(v_1, …, v_k)` blade by blade: the canonical blade `x_{i_1}∧…∧x_{i_k}`
//! contributes `det[x_{i_a}(v_b)]`, where `x_{h·n+k}(v)` is entry `(h, k)` of
//! `v`. Under this identification `X^a` is the standard polynomial `S_a`.

use std::collections::HashMap;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;

use crate::blade::Blade;
use crate::coeff::{Coefficient, Ring};
use crate::concrete::ConcreteMatrix;
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::GrassmannMatrix;
use crate::random::{random_invertible, random_tuple, trial_rng};
use crate::report::{CheckReport, Witness};

/// Largest degree accepted by [`standard_poly_eval`].
pub const MAX_STANDARD_DEGREE: usize = 12;

/// Largest `a + b` accepted by [`wedge_of_maps_check`].
pub const MAX_WEDGE_DEGREE: usize = 8;

/// A permutation of `{0, …, h−1}` with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    images: Vec<usize>,
    odd: bool,
}

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Permutation> {
        let h = images.len();
        let mut seen = vec![false; h];
        for &i in &images {
            if i >= h || std::mem::replace(&mut seen[i], true) {
                return Err(Error::InvalidSize(format!(
                    "{images:?} is not a permutation"
                )));
            }
        }
        let inversions = (0..h)
            .flat_map(|p| (p + 1..h).map(move |q| (p, q)))
            .filter(|&(p, q)| images[p] > images[q])
            .count();
        Ok(Permutation {
            images,
            odd: inversions % 2 == 1,
        })
    }

    /// All permutations of `{0, …, h−1}` in lexicographic order.
    pub fn all(h: usize) -> impl Iterator<Item = Permutation> {
        (0..h)
            .permutations(h)
            .map(|p| Permutation::new(p).expect("valid permutation"))
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_odd(&self) -> bool {
        self.odd
    }

    pub fn sign(&self) -> i8 {
        if self.odd {
            -1
        } else {
            1
        }
    }
}

fn check_args(args: &[ConcreteMatrix]) -> Result<()> {
    if let Some(first) = args.first() {
        for a in args {
            first.check_compatible(a)?;
        }
    }
    Ok(())
}

/// `S_h(v_1, …, v_h) = Σ_σ ε_σ v_{σ(1)} ⋯ v_{σ(h)}`.
///
/// Grouping permutations by their first image gives
/// `S(U) = Σ_{i∈U} (−1)^{#{j∈U : j<i}} v_i · S(U∖{i})` over index subsets
/// `U`, so the sum is evaluated with `h·2^{h−1}` matrix products instead of
/// enumerating all `h!` orderings.
pub fn standard_poly_eval(h: usize, args: &[ConcreteMatrix]) -> Result<ConcreteMatrix> {
    if h == 0 || h > MAX_STANDARD_DEGREE {
        return Err(Error::InvalidSize(format!(
            "standard polynomial degree {h} outside 1..={MAX_STANDARD_DEGREE}"
        )));
    }
    if args.len() != h {
        return Err(Error::Arity(format!(
            "S_{h} takes {h} arguments, got {}",
            args.len()
        )));
    }
    check_args(args)?;
    let (n, ring) = (args[0].n(), args[0].ring());
    let mut table: Vec<Option<ConcreteMatrix>> = vec![None; 1 << h];
    table[0] = Some(ConcreteMatrix::identity(n, ring));
    let mut by_size: Vec<usize> = (1..1usize << h).collect();
    by_size.sort_by_key(|u| u.count_ones());
    for u in by_size {
        let mut acc = ConcreteMatrix::zero(n, ring);
        for (rank, i) in (0..h).filter(|i| u & (1 << i) != 0).enumerate() {
            let rest = table[u & !(1 << i)]
                .as_ref()
                .expect("smaller subsets come first");
            let term = args[i].mul_unchecked(rest);
            acc = if rank % 2 == 1 {
                acc.sub(&term)?
            } else {
                acc.add(&term)?
            };
        }
        table[u] = Some(acc);
    }
    Ok(table.pop().flatten().expect("full subset computed"))
}

/// Evaluates a homogeneous degree-`k` Grassmann matrix on `k` concrete
/// matrices of the same size.
pub fn evaluate_map(f: &GrassmannMatrix, args: &[ConcreteMatrix]) -> Result<ConcreteMatrix> {
    let k = args.len();
    let n = f.n();
    if f.generators() != n * n {
        return Err(Error::DimensionMismatch(format!(
            "map on {}×{} matrices needs {} generators, has {}",
            n,
            n,
            n * n,
            f.generators()
        )));
    }
    if !f.is_homogeneous_of(k) {
        return Err(Error::Arity(format!(
            "map is not homogeneous of degree {k}"
        )));
    }
    check_args(args)?;
    let ring = f.ring();
    if let Some(a) = args.first() {
        if a.n() != n {
            return Err(Error::DimensionMismatch(format!(
                "arguments are {0}×{0}, map is {n}×{n}",
                a.n()
            )));
        }
        if a.ring() != ring {
            return Err(Error::RingMismatch {
                left: ring,
                right: a.ring(),
            });
        }
    }
    let mut dets: HashMap<Blade, Coefficient> = HashMap::new();
    let mut entries = Vec::with_capacity(n * n);
    for e in f.entries() {
        let mut acc = Coefficient::zero(ring);
        for (blade, c) in e.terms() {
            let d = dets
                .entry(*blade)
                .or_insert_with(|| blade_value(ring, *blade, args));
            acc += &(c * &*d);
        }
        entries.push(acc);
    }
    ConcreteMatrix::from_entries(n, ring, entries)
}

/// `det[x_{i_a}(v_b)]` for the canonical blade `x_{i_1}∧…∧x_{i_k}`.
fn blade_value(ring: Ring, blade: Blade, args: &[ConcreteMatrix]) -> Coefficient {
    let rows = blade
        .indices()
        .map(|idx| args.iter().map(|v| v.coordinate(idx).clone()).collect())
        .collect();
    linalg::determinant(ring, rows)
}

/// The staircase `e_11, e_12, e_22, e_23, …, e_nn` of `2n − 1` matrix units,
/// on which `S_{2n−1}` does not vanish.
pub fn staircase(n: usize, ring: Ring) -> Vec<ConcreteMatrix> {
    (0..2 * n - 1)
        .map(|s| ConcreteMatrix::unit(n, ring, s / 2, s.div_ceil(2)))
        .collect()
}

/// How to evaluate the wedge of two antisymmetric functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeMethod {
    /// Sum over all of `𝔖_{h+k}` divided by `h!·k!`.
    Literal,
    /// Sum over `(h, k)`-shuffles only.
    Shuffle,
}

type MapFn<'a> = dyn Fn(&[ConcreteMatrix]) -> Result<ConcreteMatrix> + Sync + 'a;

/// `(G ∧ H)(v_1, …, v_{h+k})` for antisymmetric `G` of arity `h` and `H` of
/// arity `k`.
pub fn wedge_of_functions(
    h: usize,
    k: usize,
    g: &MapFn<'_>,
    hf: &MapFn<'_>,
    args: &[ConcreteMatrix],
    method: WedgeMethod,
) -> Result<ConcreteMatrix> {
    if args.len() != h + k {
        return Err(Error::Arity(format!(
            "wedge of arities {h} and {k} takes {} arguments",
            h + k
        )));
    }
    check_args(args)?;
    let (n, ring) = (args[0].n(), args[0].ring());
    let pick = |ix: &[usize]| ix.iter().map(|&i| args[i].clone()).collect::<Vec<_>>();
    let mut acc = ConcreteMatrix::zero(n, ring);
    match method {
        WedgeMethod::Literal => {
            let mut g_cache: HashMap<Vec<usize>, ConcreteMatrix> = HashMap::new();
            let mut h_cache: HashMap<Vec<usize>, ConcreteMatrix> = HashMap::new();
            for sigma in Permutation::all(h + k) {
                let (left, right) = sigma.images().split_at(h);
                if !g_cache.contains_key(left) {
                    g_cache.insert(left.to_vec(), g(&pick(left))?);
                }
                if !h_cache.contains_key(right) {
                    h_cache.insert(right.to_vec(), hf(&pick(right))?);
                }
                let term = g_cache[left].mul_unchecked(&h_cache[right]);
                acc = if sigma.is_odd() {
                    acc.sub(&term)?
                } else {
                    acc.add(&term)?
                };
            }
            let norm = factorial(h) * factorial(k);
            let entries = acc
                .entries()
                .iter()
                .map(|c| c.divide_by_integer(norm))
                .collect::<Result<Vec<_>>>()?;
            ConcreteMatrix::from_entries(n, ring, entries)
        }
        WedgeMethod::Shuffle => {
            for left in (0..h + k).combinations(h) {
                let right: Vec<usize> = (0..h + k).filter(|i| !left.contains(i)).collect();
                let sigma = Permutation::new(left.iter().chain(&right).copied().collect())?;
                let term = g(&pick(&left))?.mul_unchecked(&hf(&pick(&right))?);
                acc = if sigma.is_odd() {
                    acc.sub(&term)?
                } else {
                    acc.add(&term)?
                };
            }
            Ok(acc)
        }
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Runs `trials` independent trials in parallel and reports the first
/// failing one in trial order.
fn first_failure<F>(trials: usize, f: F) -> Result<Option<(usize, String)>>
where
    F: Fn(usize) -> Result<Option<String>> + Sync,
{
    let outcomes = (0..trials)
        .into_par_iter()
        .map(&f)
        .collect::<Result<Vec<_>>>()?;
    Ok(outcomes
        .into_iter()
        .enumerate()
        .find_map(|(t, o)| o.map(|msg| (t, msg))))
}

/// `evaluate_map(X^a, ·) = S_a` on random tuples for every `1 ≤ a ≤ a_max`.
pub fn proposition_check(
    n: usize,
    a_max: usize,
    ring: Ring,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("proposition", n, ring)
        .param("a_max", a_max)
        .param("seed", seed)
        .param("trials", trials);
    let powers = GrassmannMatrix::generic(n, ring)?.powers(a_max)?;
    let mut witness = None;
    let mut mismatches = 0usize;
    for (a, xa) in powers.iter().enumerate().skip(1) {
        report.observe_terms(xa.max_terms());
        let failure = first_failure(trials, |t| {
            let mut rng = trial_rng(seed, "proposition", n * 100 + a, t);
            let args = random_tuple(&mut rng, a, n, ring);
            let symbolic = evaluate_map(xa, &args)?;
            let direct = standard_poly_eval(a, &args)?;
            Ok((symbolic != direct).then(|| format!("X^{a} and S_{a} disagree")))
        })?;
        if let Some((t, msg)) = failure {
            mismatches += 1;
            witness.get_or_insert(Witness::trial(msg, t));
        }
    }
    report.stat("mismatched_degrees", mismatches);
    report.stat("evaluations", trials * a_max);
    Ok(report.finish(witness.is_none(), witness, started))
}

/// `S_{2n}` vanishes on random tuples and `S_{2n−1}` does not vanish on the
/// staircase tuple.
pub fn standard_identity_check(
    n: usize,
    ring: Ring,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("standard_identity", n, ring)
        .param("seed", seed)
        .param("trials", trials);
    let stair = standard_poly_eval(2 * n - 1, &staircase(n, ring))?;
    report.stat("staircase_nonzero", !stair.is_zero());
    let failure = first_failure(trials, |t| {
        let mut rng = trial_rng(seed, "standard_identity", n, t);
        let args = random_tuple(&mut rng, 2 * n, n, ring);
        Ok((!standard_poly_eval(2 * n, &args)?.is_zero())
            .then(|| format!("S_{} is nonzero", 2 * n)))
    })?;
    let witness = match failure {
        Some((t, msg)) => Some(Witness::trial(msg, t)),
        None if stair.is_zero() => Some(Witness::message(format!(
            "S_{} vanishes on the staircase",
            2 * n - 1
        ))),
        None => None,
    };
    Ok(report.finish(witness.is_none(), witness, started))
}

/// The normalized wedge of `S_a` and `S_b` agrees with `S_{a+b}` and with
/// `evaluate_map(X^{a+b}, ·)`; the shuffle form agrees with the literal one.
pub fn wedge_of_maps_check(
    a: usize,
    b: usize,
    n: usize,
    ring: Ring,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let started = Instant::now();
    if a == 0 || b == 0 || a + b > MAX_WEDGE_DEGREE {
        return Err(Error::InvalidSize(format!(
            "degrees ({a}, {b}) outside 1 ≤ a, b and a + b ≤ {MAX_WEDGE_DEGREE}"
        )));
    }
    let mut report = CheckReport::new("wedge_of_maps", n, ring)
        .param("a", a)
        .param("b", b)
        .param("seed", seed)
        .param("trials", trials);
    let xab = GrassmannMatrix::generic(n, ring)?.power(a + b)?;
    report.observe_terms(xab.max_terms());
    let sa = |v: &[ConcreteMatrix]| standard_poly_eval(a, v);
    let sb = |v: &[ConcreteMatrix]| standard_poly_eval(b, v);
    let failure = first_failure(trials, |t| {
        let mut rng = trial_rng(seed, "wedge_of_maps", n * 100 + a * 10 + b, t);
        let args = random_tuple(&mut rng, a + b, n, ring);
        let literal = wedge_of_functions(a, b, &sa, &sb, &args, WedgeMethod::Literal)?;
        let shuffle = wedge_of_functions(a, b, &sa, &sb, &args, WedgeMethod::Shuffle)?;
        let s_ab = standard_poly_eval(a + b, &args)?;
        let symbolic = evaluate_map(&xab, &args)?;
        Ok(if literal != s_ab {
            Some(format!("S_{a}∧S_{b} differs from S_{}", a + b))
        } else if shuffle != literal {
            Some("shuffle and literal wedge differ".to_string())
        } else if symbolic != s_ab {
            Some(format!("X^{} differs from S_{}", a + b, a + b))
        } else {
            None
        })
    })?;
    let witness = failure.map(|(t, msg)| Witness::trial(msg, t));
    Ok(report.finish(witness.is_none(), witness, started))
}

/// Randomized check of `F(g v_1 g⁻¹, …) = g F(v_1, …) g⁻¹`.
pub fn equivariance_check(
    f: &GrassmannMatrix,
    degree: usize,
    label: &str,
    ring: Ring,
    trials: usize,
    seed: u64,
) -> Result<CheckReport> {
    let started = Instant::now();
    let n = f.n();
    let k = degree;
    if !f.is_homogeneous_of(k) {
        return Err(Error::Arity(format!(
            "{label} is not homogeneous of degree {k}"
        )));
    }
    let mut report = CheckReport::new("equivariance", n, ring)
        .param("map", label)
        .param("degree", k)
        .param("seed", seed)
        .param("trials", trials);
    report.observe_terms(f.max_terms());
    let failure = first_failure(trials, |t| {
        let mut rng = trial_rng(seed, &format!("equivariance:{label}"), n, t);
        let (g, g_inv) = random_invertible(&mut rng, n, ring)?;
        let args = random_tuple(&mut rng, k, n, ring);
        let conj = args
            .iter()
            .map(|v| v.conjugate(&g, &g_inv))
            .collect::<Result<Vec<_>>>()?;
        let lhs = evaluate_map(f, &conj)?;
        let rhs = evaluate_map(f, &args)?.conjugate(&g, &g_inv)?;
        Ok((lhs != rhs).then(|| format!("{label} is not equivariant")))
    })?;
    let witness = failure.map(|(t, msg)| Witness::trial(msg, t));
    Ok(report.finish(witness.is_none(), witness, started))
}

//! Seeded sampling of coefficients and matrices for randomized checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::blade::Blade;
use crate::coeff::{Coefficient, Ring};
use crate::concrete::ConcreteMatrix;
use crate::error::{Error, Result};
use crate::multivector::Multivector;

/// Attempts before giving up on drawing an invertible matrix.
pub const MAX_RESAMPLES: usize = 32;

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Independent, reproducible stream for one trial of one check.
pub fn trial_rng(seed: u64, tag: &str, n: usize, trial: usize) -> ChaCha8Rng {
    // FNV-1a over the tag keeps the derivation stable across toolchains
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in tag.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    let mixed = splitmix(seed ^ splitmix(h ^ splitmix(n as u64 ^ splitmix(trial as u64))));
    ChaCha8Rng::seed_from_u64(mixed)
}

pub fn random_coefficient<R: Rng>(rng: &mut R, ring: Ring) -> Coefficient {
    match ring {
        Ring::PrimeField(p) => Coefficient::from_i64(ring, rng.gen_range(0..p) as i64),
        Ring::Integer => Coefficient::from_i64(ring, rng.gen_range(-9..=9)),
        Ring::Rational => {
            let num = rng.gen_range(-9..=9);
            let den = rng.gen_range(1..=4);
            Coefficient::from_ratio(ring, num, den).expect("nonzero denominator")
        }
    }
}

pub fn random_matrix<R: Rng>(rng: &mut R, n: usize, ring: Ring) -> ConcreteMatrix {
    let entries = (0..n * n).map(|_| random_coefficient(rng, ring)).collect();
    ConcreteMatrix::from_entries(n, ring, entries).expect("shape and ring are consistent")
}

pub fn random_tuple<R: Rng>(rng: &mut R, k: usize, n: usize, ring: Ring) -> Vec<ConcreteMatrix> {
    (0..k).map(|_| random_matrix(rng, n, ring)).collect()
}

/// A random invertible `g` with its inverse. Over the integers `g` is a
/// product of random unitriangular factors, hence unimodular.
pub fn random_invertible<R: Rng>(
    rng: &mut R,
    n: usize,
    ring: Ring,
) -> Result<(ConcreteMatrix, ConcreteMatrix)> {
    if ring == Ring::Integer {
        let mut lower = ConcreteMatrix::identity(n, ring).entries().to_vec();
        let mut upper = lower.clone();
        for i in 0..n {
            for j in 0..i {
                lower[i * n + j] = random_coefficient(rng, ring);
                upper[j * n + i] = random_coefficient(rng, ring);
            }
        }
        let g = ConcreteMatrix::from_entries(n, ring, lower)?
            .mul(&ConcreteMatrix::from_entries(n, ring, upper)?)?;
        let inv = g.inverse()?;
        return Ok((g, inv));
    }
    for _ in 0..MAX_RESAMPLES {
        let g = random_matrix(rng, n, ring);
        if g.determinant().is_zero() {
            continue;
        }
        let inv = g.inverse()?;
        return Ok((g, inv));
    }
    Err(Error::Randomness(format!(
        "no invertible {n}×{n} matrix after {MAX_RESAMPLES} draws"
    )))
}

/// Random multivector on `generators` generators with `terms` random blades.
pub fn random_multivector<R: Rng>(
    rng: &mut R,
    generators: usize,
    ring: Ring,
    terms: usize,
) -> Multivector {
    let mask = if generators >= 64 {
        u64::MAX
    } else {
        (1u64 << generators) - 1
    };
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            (
                Blade::from_bits(rng.gen::<u64>() & mask),
                random_coefficient(rng, ring),
            )
        })
        .collect();
    Multivector::from_terms(generators, ring, ts).expect("blades lie within the generator range")
}

/// Random homogeneous multivector of degree `d`.
pub fn random_homogeneous<R: Rng>(
    rng: &mut R,
    generators: usize,
    ring: Ring,
    d: usize,
    terms: usize,
) -> Multivector {
    let ts: Vec<_> = (0..terms)
        .map(|_| {
            let idx = rand::seq::index::sample(rng, generators, d.min(generators));
            let blade = Blade::from_indices(&idx.into_vec()).expect("distinct indices");
            (blade, random_coefficient(rng, ring))
        })
        .collect();
    Multivector::from_terms(generators, ring, ts).expect("blades lie within the generator range")
}

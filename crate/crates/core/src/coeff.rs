//! Exact scalar arithmetic over the three supported coefficient rings.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Largest admissible prime modulus. Keeping `p < 2^32` lets a product of two
/// residues fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// Ring descriptor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum Ring {
    #[default]
    Rational,
    Integer,
    PrimeField(u64),
}

impl Ring {
    /// Builds `GF(p)`, rejecting composite or oversized moduli.
    pub fn prime_field(p: u64) -> Result<Ring> {
        if p > MAX_PRIME {
            return Err(Error::Config(format!(
                "prime modulus {p} exceeds {MAX_PRIME}"
            )));
        }
        if !is_prime(p) {
            return Err(Error::Config(format!("{p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn is_field(self) -> bool {
        !matches!(self, Ring::Integer)
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Ring::PrimeField(p) => p,
            _ => 0,
        }
    }

    /// True when every integer `1..=k` is invertible or exactly divisible in
    /// this ring's Newton pipeline, i.e. the characteristic is 0 or exceeds `k`.
    pub fn admits_division_up_to(self, k: u64) -> bool {
        match self {
            Ring::PrimeField(p) => p > k,
            _ => true,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Rational => f.write_str("rational"),
            Ring::Integer => f.write_str("integer"),
            Ring::PrimeField(p) => write!(f, "gf:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        match s.trim() {
            "rational" => Ok(Ring::Rational),
            "integer" => Ok(Ring::Integer),
            other => {
                let p = other
                    .strip_prefix("gf:")
                    .ok_or_else(|| Error::Parse(format!("unknown ring `{other}`")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime modulus `{p}`")))?;
                Ring::prime_field(p)
            }
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Ring {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact scalar tagged with its ring.
///
/// Rationals are kept in lowest terms with a positive denominator and
/// prime-field values are canonical residues in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Coefficient {
    Rational(Rational),
    Integer(BigInt),
    Prime { value: u64, modulus: u64 },
}

impl Coefficient {
    pub fn zero(ring: Ring) -> Coefficient {
        Coefficient::from_i64(ring, 0)
    }

    pub fn one(ring: Ring) -> Coefficient {
        Coefficient::from_i64(ring, 1)
    }

    pub fn from_i64(ring: Ring, v: i64) -> Coefficient {
        match ring {
            Ring::Rational => Coefficient::Rational(Rational::from_integer(v)),
            Ring::Integer => Coefficient::Integer(BigInt::from(v)),
            Ring::PrimeField(p) => Coefficient::Prime {
                value: v.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    pub fn from_bigint(ring: Ring, v: BigInt) -> Coefficient {
        match ring {
            Ring::Rational => Coefficient::Rational(Rational::from_bigint(v)),
            Ring::Integer => Coefficient::Integer(v),
            Ring::PrimeField(p) => Coefficient::Prime {
                value: v
                    .mod_floor(&BigInt::from(p))
                    .to_u64()
                    .expect("residue fits"),
                modulus: p,
            },
        }
    }

    /// Builds `num/den`. Over the integers `den` must divide `num`.
    pub fn from_ratio(ring: Ring, num: i64, den: i64) -> Result<Coefficient> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        match ring {
            Ring::Rational => Ok(Coefficient::Rational(Rational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            _ => Coefficient::from_i64(ring, num)
                .try_mul(&Coefficient::from_i64(ring, den).inverse()?),
        }
    }

    pub fn ring(&self) -> Ring {
        match self {
            Coefficient::Rational(_) => Ring::Rational,
            Coefficient::Integer(_) => Ring::Integer,
            Coefficient::Prime { modulus, .. } => Ring::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_zero(),
            Coefficient::Integer(i) => i.is_zero(),
            Coefficient::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_one(),
            Coefficient::Integer(i) => i.is_one(),
            Coefficient::Prime { value, .. } => *value == 1,
        }
    }

    fn check_ring(&self, other: &Coefficient) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::RingMismatch {
                left: self.ring(),
                right: other.ring(),
            })
        }
    }

    pub fn try_add(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        Ok(self * other)
    }

    pub fn inverse(&self) -> Result<Coefficient> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match self {
            Coefficient::Rational(r) => Ok(Coefficient::Rational(r.recip())),
            Coefficient::Integer(i) => {
                if i.abs().is_one() {
                    Ok(self.clone())
                } else {
                    Err(Error::NotAUnit(i.to_string()))
                }
            }
            Coefficient::Prime { value, modulus } => Ok(Coefficient::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            }),
        }
    }

    /// `self / other` where `other` is invertible (or, over the integers,
    /// divides `self` exactly).
    pub fn try_div(&self, other: &Coefficient) -> Result<Coefficient> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match (self, other) {
            (Coefficient::Integer(a), Coefficient::Integer(b)) => {
                let (q, r) = a.div_rem(b);
                if r.is_zero() {
                    Ok(Coefficient::Integer(q))
                } else {
                    Err(Error::NotDivisible {
                        value: a.to_string(),
                        divisor: b.abs().to_u64().unwrap_or(u64::MAX),
                    })
                }
            }
            _ => Ok(self * &other.inverse()?),
        }
    }

    /// Exact `self / k` for a positive machine integer.
    pub fn divide_by_integer(&self, k: u64) -> Result<Coefficient> {
        if k == 0 {
            return Err(Error::DivisionByZero);
        }
        match self {
            Coefficient::Rational(r) => Ok(Coefficient::Rational(r.div_integer(k))),
            Coefficient::Integer(i) => {
                let (q, rem) = i.div_rem(&BigInt::from(k));
                if rem.is_zero() {
                    Ok(Coefficient::Integer(q))
                } else {
                    Err(Error::NotDivisible {
                        value: i.to_string(),
                        divisor: k,
                    })
                }
            }
            Coefficient::Prime { value, modulus } => {
                if k.is_multiple_of(*modulus) {
                    return Err(Error::Characteristic {
                        modulus: *modulus,
                        divisor: k,
                    });
                }
                let inv = pow_mod(k % modulus, modulus - 2, *modulus);
                Ok(Coefficient::Prime {
                    value: value * inv % modulus,
                    modulus: *modulus,
                })
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Coefficient {
        let mut base = self.clone();
        let mut acc = Coefficient::one(self.ring());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Parses an exact string (`"-3"`, `"5/6"`) into the given ring.
    pub fn parse(ring: Ring, s: &str) -> Result<Coefficient> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad coefficient `{s}`"));
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let num: BigInt = num.parse().map_err(|_| bad())?;
        let Some(den) = den else {
            return Ok(Coefficient::from_bigint(ring, num));
        };
        let den: BigInt = den.parse().map_err(|_| bad())?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match ring {
            Ring::Rational => Ok(Coefficient::Rational(Rational::new(num, den))),
            _ => Coefficient::from_bigint(ring, num).try_div(&Coefficient::from_bigint(ring, den)),
        }
    }

    /// Sign for text dumps: `-` for negative rationals/integers, `+` otherwise.
    pub fn is_negative(&self) -> bool {
        match self {
            Coefficient::Rational(r) => r.is_negative(),
            Coefficient::Integer(i) => i.is_negative(),
            Coefficient::Prime { .. } => false,
        }
    }

    pub fn abs(&self) -> Coefficient {
        match self {
            Coefficient::Rational(r) => Coefficient::Rational(r.abs()),
            Coefficient::Integer(i) => Coefficient::Integer(i.abs()),
            Coefficient::Prime { .. } => self.clone(),
        }
    }
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficient::Rational(r) => write!(f, "{r}"),
            Coefficient::Integer(i) => write!(f, "{i}"),
            Coefficient::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

// The operator impls assume both operands share a ring; the `try_*` methods
// are the checked entry points. Containers validate rings once on entry.

fn mismatch(a: &Coefficient, b: &Coefficient) -> ! {
    panic!("ring mismatch: {} vs {}", a.ring(), b.ring())
}

impl Add for &Coefficient {
    type Output = Coefficient;

    fn add(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a + b),
            (Coefficient::Integer(a), Coefficient::Integer(b)) => Coefficient::Integer(a + b),
            (
                Coefficient::Prime {
                    value: a,
                    modulus: p,
                },
                Coefficient::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Coefficient::Prime {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Sub for &Coefficient {
    type Output = Coefficient;

    fn sub(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a - b),
            (Coefficient::Integer(a), Coefficient::Integer(b)) => Coefficient::Integer(a - b),
            (
                Coefficient::Prime {
                    value: a,
                    modulus: p,
                },
                Coefficient::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Coefficient::Prime {
                value: (a + p - b) % p,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Mul for &Coefficient {
    type Output = Coefficient;

    fn mul(self, rhs: &Coefficient) -> Coefficient {
        match (self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => Coefficient::Rational(a * b),
            (Coefficient::Integer(a), Coefficient::Integer(b)) => Coefficient::Integer(a * b),
            (
                Coefficient::Prime {
                    value: a,
                    modulus: p,
                },
                Coefficient::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Coefficient::Prime {
                value: a * b % p,
                modulus: *p,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        match self {
            Coefficient::Rational(a) => Coefficient::Rational(-a),
            Coefficient::Integer(a) => Coefficient::Integer(-a),
            Coefficient::Prime { value, modulus } => Coefficient::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Coefficient {
    type Output = Coefficient;

    fn neg(self) -> Coefficient {
        -&self
    }
}

impl AddAssign<&Coefficient> for Coefficient {
    fn add_assign(&mut self, rhs: &Coefficient) {
        match (&mut *self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => *a = &*a + b,
            (Coefficient::Integer(a), Coefficient::Integer(b)) => *a += b,
            _ => *self = &*self + rhs,
        }
    }
}

impl SubAssign<&Coefficient> for Coefficient {
    fn sub_assign(&mut self, rhs: &Coefficient) {
        match (&mut *self, rhs) {
            (Coefficient::Rational(a), Coefficient::Rational(b)) => *a = &*a - b,
            (Coefficient::Integer(a), Coefficient::Integer(b)) => *a -= b,
            _ => *self = &*self - rhs,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Coefficient {
        Coefficient::from_ratio(Ring::Rational, n, d).unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q(1, 2).try_add(&q(1, 3)).unwrap(), q(5, 6));
        assert_eq!(q(5, 6).to_string(), "5/6");
    }

    #[test]
    fn prime_wraparound() {
        let r = Ring::prime_field(101).unwrap();
        let s = Coefficient::from_i64(r, 100)
            .try_add(&Coefficient::one(r))
            .unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn prime_inverse_matches_brute_force() {
        let r = Ring::prime_field(7).unwrap();
        let brute = (1..7).find(|k| 3 * k % 7 == 1).unwrap();
        assert_eq!(
            Coefficient::from_i64(r, 3).inverse().unwrap(),
            Coefficient::from_i64(r, brute)
        );
        assert_eq!(brute, 5);
    }

    #[test]
    fn mixed_rings_rejected() {
        let r = Ring::prime_field(7).unwrap();
        let err = Coefficient::one(r)
            .try_add(&Coefficient::one(Ring::Rational))
            .unwrap_err();
        assert!(matches!(err, Error::RingMismatch { .. }));
    }

    #[test]
    fn inverse_errors() {
        assert_eq!(
            Coefficient::zero(Ring::Rational).inverse(),
            Err(Error::DivisionByZero)
        );
        assert!(matches!(
            Coefficient::from_i64(Ring::Integer, 2).inverse(),
            Err(Error::NotAUnit(_))
        ));
        assert_eq!(
            Coefficient::from_i64(Ring::Integer, -1).inverse().unwrap(),
            Coefficient::from_i64(Ring::Integer, -1)
        );
    }

    #[test]
    fn divide_by_integer_cases() {
        assert_eq!(
            Coefficient::from_i64(Ring::Rational, 3)
                .divide_by_integer(2)
                .unwrap(),
            q(3, 2)
        );
        assert_eq!(
            Coefficient::from_i64(Ring::Integer, 6)
                .divide_by_integer(3)
                .unwrap(),
            Coefficient::from_i64(Ring::Integer, 2)
        );
        assert!(matches!(
            Coefficient::from_i64(Ring::Integer, 7).divide_by_integer(3),
            Err(Error::NotDivisible { .. })
        ));
        let gf5 = Ring::prime_field(5).unwrap();
        assert_eq!(
            Coefficient::one(gf5).divide_by_integer(5),
            Err(Error::Characteristic {
                modulus: 5,
                divisor: 5
            })
        );
    }

    #[test]
    fn ring_descriptor_strings() {
        for s in ["rational", "integer", "gf:101"] {
            assert_eq!(s.parse::<Ring>().unwrap().to_string(), s);
        }
        assert!("gf:100".parse::<Ring>().is_err());
        assert!("real".parse::<Ring>().is_err());
        assert_eq!(
            serde_json::to_string(&Ring::Rational).unwrap(),
            "\"rational\""
        );
    }

    #[test]
    fn parse_and_normalise() {
        let c = Coefficient::parse(Ring::Rational, "4/-6").unwrap();
        assert_eq!(c.to_string(), "-2/3");
        let gf = Ring::prime_field(7).unwrap();
        assert_eq!(Coefficient::parse(gf, "-1").unwrap().to_string(), "6");
        assert_eq!(Coefficient::parse(gf, "1/3").unwrap().to_string(), "5");
        assert!(Coefficient::parse(Ring::Integer, "1/3").is_err());
        assert_eq!(
            Coefficient::parse(Ring::Integer, "6/3")
                .unwrap()
                .to_string(),
            "2"
        );
    }
}

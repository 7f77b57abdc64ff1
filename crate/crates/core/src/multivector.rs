//! Sparse multivectors: finite exact linear combinations of blades.

use std::cmp::Ordering;
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use serde::{Deserialize, Serialize};

use crate::blade::{Blade, MAX_GENERATORS};
use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_TERMS: usize = 1 << 26;

static MAX_TERMS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_TERMS);

/// Current per-multivector term cap.
pub fn max_terms() -> usize {
    MAX_TERMS.load(AtomicOrdering::Relaxed)
}

/// Sets the per-multivector term cap; products that would exceed it fail with
/// [`Error::TermCapExceeded`].
pub fn set_max_terms(cap: usize) {
    MAX_TERMS.store(cap.max(1), AtomicOrdering::Relaxed);
}

/// An element of the exterior algebra on `generators` anticommuting
/// generators, with terms kept sorted in canonical blade order and no zero
/// coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multivector {
    generators: usize,
    ring: Ring,
    terms: Vec<(Blade, Coefficient)>,
}

/// JSON form of a single term.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub blade: Vec<usize>,
    pub coeff: String,
}

impl Multivector {
    pub fn zero(generators: usize, ring: Ring) -> Multivector {
        assert!(
            generators <= MAX_GENERATORS,
            "too many generators: {generators}"
        );
        Multivector {
            generators,
            ring,
            terms: Vec::new(),
        }
    }

    pub fn scalar(generators: usize, c: Coefficient) -> Multivector {
        let mut mv = Multivector::zero(generators, c.ring());
        if !c.is_zero() {
            mv.terms.push((Blade::SCALAR, c));
        }
        mv
    }

    pub fn one(generators: usize, ring: Ring) -> Multivector {
        Multivector::scalar(generators, Coefficient::one(ring))
    }

    /// The degree-1 element `x_i`.
    pub fn generator(generators: usize, ring: Ring, i: usize) -> Result<Multivector> {
        Multivector::monomial(generators, Blade::generator(i), Coefficient::one(ring))
    }

    pub fn monomial(generators: usize, blade: Blade, c: Coefficient) -> Result<Multivector> {
        Multivector::from_terms(generators, c.ring(), [(blade, c)])
    }

    /// Builds a multivector from arbitrary terms, summing duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(generators: usize, ring: Ring, terms: I) -> Result<Multivector>
    where
        I: IntoIterator<Item = (Blade, Coefficient)>,
    {
        if generators > MAX_GENERATORS {
            return Err(Error::InvalidSize(format!(
                "{generators} generators exceeds {MAX_GENERATORS}"
            )));
        }
        let mut acc = Accumulator::default();
        for (blade, c) in terms {
            if blade.span() > generators {
                return Err(Error::InvalidSize(format!(
                    "{blade} outside {generators} generators"
                )));
            }
            if c.ring() != ring {
                return Err(Error::RingMismatch {
                    left: ring,
                    right: c.ring(),
                });
            }
            acc.add(blade, c, false);
        }
        acc.finish(generators, ring)
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn terms(&self) -> &[(Blade, Coefficient)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> Option<&Coefficient> {
        self.terms
            .binary_search_by(|(b, _)| b.cmp(&blade))
            .ok()
            .map(|i| &self.terms[i].1)
    }

    pub fn first_term(&self) -> Option<&(Blade, Coefficient)> {
        self.terms.first()
    }

    pub(crate) fn check_compatible(&self, other: &Multivector) -> Result<()> {
        if self.generators != other.generators {
            return Err(Error::GeneratorMismatch {
                left: self.generators,
                right: other.generators,
            });
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Multivector, negate_other: bool) -> Multivector {
        let mut terms = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            let ord = match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => Ordering::Less,
                (None, Some(_)) => Ordering::Greater,
                (Some((x, _)), Some((y, _))) => x.cmp(y),
            };
            match ord {
                Ordering::Less => terms.push(a.next().unwrap().clone()),
                Ordering::Greater => {
                    let (blade, c) = b.next().unwrap();
                    terms.push((*blade, if negate_other { -c } else { c.clone() }));
                }
                Ordering::Equal => {
                    let (blade, x) = a.next().unwrap();
                    let (_, y) = b.next().unwrap();
                    let c = if negate_other { x - y } else { x + y };
                    if !c.is_zero() {
                        terms.push((*blade, c));
                    }
                }
            }
        }
        Multivector {
            generators: self.generators,
            ring: self.ring,
            terms,
        }
    }

    pub fn neg(&self) -> Multivector {
        Multivector {
            generators: self.generators,
            ring: self.ring,
            terms: self.terms.iter().map(|(b, c)| (*b, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<Multivector> {
        if c.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: c.ring(),
            });
        }
        let terms = self
            .terms
            .iter()
            .map(|(b, x)| (*b, x * c))
            .filter(|(_, x)| !x.is_zero())
            .collect();
        Ok(Multivector {
            generators: self.generators,
            ring: self.ring,
            terms,
        })
    }

    /// Exact division of every coefficient by `k`.
    pub fn divide_by_integer(&self, k: u64) -> Result<Multivector> {
        // the precondition depends on the ring, not on the value
        Coefficient::one(self.ring).divide_by_integer(k)?;
        let terms = self
            .terms
            .iter()
            .map(|(b, x)| Ok((*b, x.divide_by_integer(k)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Multivector {
            generators: self.generators,
            ring: self.ring,
            terms,
        })
    }

    /// Exterior product `self ∧ other`.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_compatible(other)?;
        let mut acc = Accumulator::default();
        acc.add_wedge(self, other)?;
        acc.finish(self.generators, self.ring)
    }

    /// `Σ a_i ∧ b_i` accumulated in one pass.
    pub fn sum_of_wedges<'a, I>(generators: usize, ring: Ring, pairs: I) -> Result<Multivector>
    where
        I: IntoIterator<Item = (&'a Multivector, &'a Multivector)>,
    {
        let mut acc = Accumulator::default();
        for (a, b) in pairs {
            for x in [a, b] {
                if x.generators != generators || x.ring != ring {
                    return Err(if x.ring != ring {
                        Error::RingMismatch {
                            left: ring,
                            right: x.ring,
                        }
                    } else {
                        Error::GeneratorMismatch {
                            left: generators,
                            right: x.generators,
                        }
                    });
                }
            }
            acc.add_wedge(a, b)?;
        }
        acc.finish(generators, ring)
    }

    /// Keeps exactly the degree-`d` terms.
    pub fn grade_project(&self, d: usize) -> Multivector {
        Multivector {
            generators: self.generators,
            ring: self.ring,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| b.degree() == d)
                .cloned()
                .collect(),
        }
    }

    /// True iff every stored blade has even degree (vacuously true for 0).
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(b, _)| b.degree() % 2 == 0)
    }

    /// True iff every stored blade has degree `d` (vacuously true for 0).
    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.terms.iter().all(|(b, _)| b.degree() == d)
    }

    /// The common degree of all terms, or `None` for zero or mixed degree.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let d = self.terms.first()?.0.degree();
        self.is_homogeneous_of(d).then_some(d)
    }

    pub fn to_json_terms(&self) -> Vec<TermJson> {
        self.terms
            .iter()
            .map(|(b, c)| TermJson {
                blade: b.indices().collect(),
                coeff: c.to_string(),
            })
            .collect()
    }

    pub fn from_json_terms(
        generators: usize,
        ring: Ring,
        terms: &[TermJson],
    ) -> Result<Multivector> {
        let parsed = terms
            .iter()
            .map(|t| {
                let blade = Blade::from_indices(&t.blade)
                    .ok_or_else(|| Error::Parse(format!("bad blade {:?}", t.blade)))?;
                Ok((blade, Coefficient::parse(ring, &t.coeff)?))
            })
            .collect::<Result<Vec<_>>>()?;
        Multivector::from_terms(generators, ring, parsed)
    }
}

/// One term per line as `<sign><coeff> * x[i1^i2^...]`, canonical order.
impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (blade, c) in &self.terms {
            let sign = if c.is_negative() { '-' } else { '+' };
            writeln!(f, "{sign}{} * {blade}", c.abs())?;
        }
        Ok(())
    }
}

#[derive(Default)]
pub(crate) struct Accumulator {
    map: HashMap<Blade, Coefficient>,
}

impl Accumulator {
    #[inline]
    fn add(&mut self, blade: Blade, c: Coefficient, negate: bool) {
        match self.map.entry(blade) {
            Entry::Occupied(mut e) => {
                if negate {
                    *e.get_mut() -= &c;
                } else {
                    *e.get_mut() += &c;
                }
            }
            Entry::Vacant(e) => {
                e.insert(if negate { -c } else { c });
            }
        }
    }

    fn add_wedge(&mut self, a: &Multivector, b: &Multivector) -> Result<()> {
        let cap = max_terms();
        for (ba, ca) in &a.terms {
            for (bb, cb) in &b.terms {
                if let Some((blade, negative)) = ba.wedge(*bb) {
                    self.add(blade, ca * cb, negative);
                }
            }
            if self.map.len() > cap {
                return Err(Error::TermCapExceeded {
                    count: self.map.len(),
                    cap,
                });
            }
        }
        Ok(())
    }

    fn finish(self, generators: usize, ring: Ring) -> Result<Multivector> {
        let mut terms: Vec<_> = self.map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let cap = max_terms();
        if terms.len() > cap {
            return Err(Error::TermCapExceeded {
                count: terms.len(),
                cap,
            });
        }
        terms.sort_unstable_by_key(|t| t.0);
        Ok(Multivector {
            generators,
            ring,
            terms,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Ring = Ring::Rational;

    fn x(i: usize) -> Multivector {
        Multivector::generator(4, Q, i).unwrap()
    }

    fn blade(ix: &[usize]) -> Blade {
        Blade::from_indices(ix).unwrap()
    }

    fn int(v: i64) -> Coefficient {
        Coefficient::from_i64(Q, v)
    }

    #[test]
    fn degree_one_antisymmetry() {
        let x12 = Multivector::monomial(4, blade(&[1, 2]), int(1)).unwrap();
        assert_eq!(x(1).wedge(&x(2)).unwrap(), x12);
        assert_eq!(x(2).wedge(&x(1)).unwrap(), x12.neg());
    }

    #[test]
    fn square_of_one_plus_generator() {
        let a = Multivector::one(4, Q).add(&x(1)).unwrap();
        let expected = Multivector::one(4, Q)
            .add(&x(1).scale(&int(2)).unwrap())
            .unwrap();
        assert_eq!(a.wedge(&a).unwrap(), expected);
    }

    #[test]
    fn shared_generator_vanishes() {
        let a = Multivector::monomial(4, blade(&[1, 2]), int(1)).unwrap();
        let b = Multivector::monomial(4, blade(&[2, 3]), int(1)).unwrap();
        assert!(a.wedge(&b).unwrap().is_zero());
    }

    #[test]
    fn grade_projection() {
        let a = Multivector::from_terms(
            4,
            Q,
            [
                (Blade::SCALAR, int(1)),
                (blade(&[1]), int(1)),
                (blade(&[1, 2]), int(1)),
            ],
        )
        .unwrap();
        assert_eq!(a.grade_project(1), x(1));
        let x12 = Multivector::monomial(4, blade(&[1, 2]), int(1)).unwrap();
        assert!(x12.grade_project(0).is_zero());
        assert_eq!(x12.grade_project(2), x12);
        let total = (0..=4)
            .map(|d| a.grade_project(d))
            .fold(Multivector::zero(4, Q), |s, p| s.add(&p).unwrap());
        assert_eq!(total, a);
    }

    #[test]
    fn parity() {
        let a = Multivector::one(4, Q)
            .add(&Multivector::monomial(4, blade(&[1, 2]), int(1)).unwrap())
            .unwrap();
        assert!(a.is_even());
        assert!(!x(1).is_even());
        assert!(Multivector::zero(4, Q).is_even());
    }

    #[test]
    fn mismatches_are_errors() {
        let gf = Ring::prime_field(7).unwrap();
        let a = Multivector::one(4, gf);
        assert!(matches!(x(0).wedge(&a), Err(Error::RingMismatch { .. })));
        let b = Multivector::one(5, Q);
        assert!(matches!(x(0).add(&b), Err(Error::GeneratorMismatch { .. })));
        assert!(Multivector::monomial(2, blade(&[3]), int(1)).is_err());
    }

    #[test]
    fn text_dump() {
        let a = Multivector::from_terms(
            4,
            Q,
            [
                (blade(&[0, 3]), Coefficient::from_ratio(Q, -5, 6).unwrap()),
                (Blade::SCALAR, int(2)),
            ],
        )
        .unwrap();
        assert_eq!(a.to_string(), "+2 * x[]\n-5/6 * x[0^3]\n");
        assert_eq!(Multivector::zero(4, Q).to_string(), "");
    }

    #[test]
    fn json_terms() {
        let a = x(1).wedge(&x(3)).unwrap().scale(&int(-2)).unwrap();
        let json = serde_json::to_string(&a.to_json_terms()).unwrap();
        assert_eq!(json, r#"[{"blade":[1,3],"coeff":"-2"}]"#);
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(Multivector::from_json_terms(4, Q, &back).unwrap(), a);
    }

    #[test]
    fn divide_by_integer_over_gf() {
        let gf = Ring::prime_field(5).unwrap();
        let a = Multivector::one(2, gf);
        assert!(matches!(
            a.divide_by_integer(5),
            Err(Error::Characteristic { .. })
        ));
        assert_eq!(
            a.divide_by_integer(2).unwrap(),
            Multivector::scalar(2, Coefficient::from_i64(gf, 3))
        );
    }
}

//! Square matrices with exterior-algebra entries.

use std::fmt;

use rayon::prelude::*;

use crate::blade::Blade;
use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};
use crate::multivector::Multivector;

/// An `n × n` matrix over the exterior algebra on `generators` generators,
/// stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrassmannMatrix {
    n: usize,
    generators: usize,
    ring: Ring,
    entries: Vec<Multivector>,
}

/// Location and leading term of the first nonzero entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NonzeroEntry {
    pub row: usize,
    pub col: usize,
    pub blade: Blade,
    pub coeff: Coefficient,
}

/// Generator index of the coordinate `x_{hk}` on `n × n` matrices.
pub fn coordinate_index(n: usize, h: usize, k: usize) -> usize {
    h * n + k
}

impl GrassmannMatrix {
    pub fn zero(n: usize, generators: usize, ring: Ring) -> GrassmannMatrix {
        GrassmannMatrix {
            n,
            generators,
            ring,
            entries: vec![Multivector::zero(generators, ring); n * n],
        }
    }

    pub fn identity(n: usize, generators: usize, ring: Ring) -> GrassmannMatrix {
        GrassmannMatrix::scalar_identity(n, &Multivector::one(generators, ring))
    }

    /// `s · I` for a multivector `s`.
    pub fn scalar_identity(n: usize, s: &Multivector) -> GrassmannMatrix {
        let mut m = GrassmannMatrix::zero(n, s.generators(), s.ring());
        for i in 0..n {
            m.entries[i * n + i] = s.clone();
        }
        m
    }

    /// The generic matrix `X` whose `(h, k)` entry is the generator
    /// `x_{h·n+k}` over `n²` generators.
    pub fn generic(n: usize, ring: Ring) -> Result<GrassmannMatrix> {
        if n == 0 {
            return Err(Error::InvalidSize("matrix size must be at least 1".into()));
        }
        let m = n * n;
        let entries = (0..m)
            .map(|idx| Multivector::generator(m, ring, idx))
            .collect::<Result<Vec<_>>>()
            .map_err(|_| Error::InvalidSize(format!("n = {n} needs {m} generators")))?;
        Ok(GrassmannMatrix {
            n,
            generators: m,
            ring,
            entries,
        })
    }

    pub fn from_entries(n: usize, entries: Vec<Multivector>) -> Result<GrassmannMatrix> {
        if entries.len() != n * n || n == 0 {
            return Err(Error::InvalidSize(format!(
                "{} entries for a {n}×{n} matrix",
                entries.len()
            )));
        }
        let (generators, ring) = (entries[0].generators(), entries[0].ring());
        for e in &entries {
            e.check_compatible(&entries[0])?;
        }
        Ok(GrassmannMatrix {
            n,
            generators,
            ring,
            entries,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &Multivector {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[Multivector] {
        &self.entries
    }

    fn check_compatible(&self, other: &GrassmannMatrix) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch(format!(
                "{}×{0} vs {}×{1}",
                self.n, other.n
            )));
        }
        if self.ring != other.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: other.ring,
            });
        }
        if self.generators != other.generators {
            return Err(Error::GeneratorMismatch {
                left: self.generators,
                right: other.generators,
            });
        }
        Ok(())
    }

    fn zip_with(
        &self,
        other: &GrassmannMatrix,
        f: impl Fn(&Multivector, &Multivector) -> Result<Multivector>,
    ) -> Result<GrassmannMatrix> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_entries(entries))
    }

    fn with_entries(&self, entries: Vec<Multivector>) -> GrassmannMatrix {
        GrassmannMatrix {
            n: self.n,
            generators: self.generators,
            ring: self.ring,
            entries,
        }
    }

    fn map(&self, f: impl Fn(&Multivector) -> Result<Multivector>) -> Result<GrassmannMatrix> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(self.with_entries(entries))
    }

    pub fn add(&self, other: &GrassmannMatrix) -> Result<GrassmannMatrix> {
        self.zip_with(other, Multivector::add)
    }

    pub fn sub(&self, other: &GrassmannMatrix) -> Result<GrassmannMatrix> {
        self.zip_with(other, Multivector::sub)
    }

    pub fn neg(&self) -> GrassmannMatrix {
        self.with_entries(self.entries.iter().map(Multivector::neg).collect())
    }

    pub fn scale(&self, c: &Coefficient) -> Result<GrassmannMatrix> {
        self.map(|e| e.scale(c))
    }

    /// Entrywise `M ∧ s` (matrix factor on the left).
    pub fn wedge_scalar_right(&self, s: &Multivector) -> Result<GrassmannMatrix> {
        self.map(|e| e.wedge(s))
    }

    /// Entrywise `s ∧ M` (scalar factor on the left).
    pub fn wedge_scalar_left(&self, s: &Multivector) -> Result<GrassmannMatrix> {
        self.map(|e| s.wedge(e))
    }

    /// Matrix product with entries `Σ_k A(i,k) ∧ B(k,j)`; output entries are
    /// computed in parallel.
    pub fn mul(&self, other: &GrassmannMatrix) -> Result<GrassmannMatrix> {
        self.check_compatible(other)?;
        let n = self.n;
        let entries = (0..n * n)
            .into_par_iter()
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                Multivector::sum_of_wedges(
                    self.generators,
                    self.ring,
                    (0..n).map(|k| (self.entry(i, k), other.entry(k, j))),
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.with_entries(entries))
    }

    /// `A^k` by iterated right multiplication; `A^0 = I`.
    pub fn power(&self, k: usize) -> Result<GrassmannMatrix> {
        Ok(self.powers(k)?.pop().expect("powers is nonempty"))
    }

    /// `[A^0, A^1, …, A^k]`.
    pub fn powers(&self, k: usize) -> Result<Vec<GrassmannMatrix>> {
        let mut out = Vec::with_capacity(k + 1);
        out.push(GrassmannMatrix::identity(
            self.n,
            self.generators,
            self.ring,
        ));
        for _ in 0..k {
            let next = out.last().unwrap().mul(self)?;
            out.push(next);
        }
        Ok(out)
    }

    pub fn trace(&self) -> Multivector {
        (0..self.n).fold(Multivector::zero(self.generators, self.ring), |acc, i| {
            acc.add(self.entry(i, i))
                .expect("entries share ring and generators")
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Multivector::is_zero)
    }

    pub fn is_even(&self) -> bool {
        self.entries.iter().all(Multivector::is_even)
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.entries.iter().all(|e| e.is_homogeneous_of(d))
    }

    /// Row-major first nonzero entry with its leading blade.
    pub fn first_nonzero(&self) -> Option<NonzeroEntry> {
        self.entries.iter().enumerate().find_map(|(idx, e)| {
            e.first_term().map(|(blade, coeff)| NonzeroEntry {
                row: idx / self.n,
                col: idx % self.n,
                blade: *blade,
                coeff: coeff.clone(),
            })
        })
    }

    /// Largest entry term count.
    pub fn max_terms(&self) -> usize {
        self.entries.iter().map(Multivector::len).max().unwrap_or(0)
    }

    pub fn total_terms(&self) -> usize {
        self.entries.iter().map(Multivector::len).sum()
    }
}

/// Dump with an `entry (i,j):` header per cell.
impl fmt::Display for GrassmannMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                writeln!(f, "entry ({i},{j}):")?;
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Ring = Ring::Rational;

    #[test]
    fn generic_layout_is_row_major() {
        let x = GrassmannMatrix::generic(2, Q).unwrap();
        for (idx, (h, k)) in [(0, 0), (0, 1), (1, 0), (1, 1)].into_iter().enumerate() {
            let e = x.entry(h, k);
            assert_eq!(e.len(), 1);
            assert_eq!(e.terms()[0].0, Blade::generator(idx));
            assert!(e.terms()[0].1.is_one());
        }
        assert!(x.is_homogeneous_of(1));
        assert!(matches!(
            GrassmannMatrix::generic(0, Q),
            Err(Error::InvalidSize(_))
        ));
    }

    #[test]
    fn one_by_one_square_vanishes() {
        let x = GrassmannMatrix::generic(1, Q).unwrap();
        assert!(x.mul(&x).unwrap().is_zero());
        assert!(!x.is_zero());
    }

    #[test]
    fn identity_is_neutral() {
        let x = GrassmannMatrix::generic(2, Q).unwrap();
        let i = GrassmannMatrix::identity(2, 4, Q);
        assert_eq!(i.mul(&x).unwrap(), x);
        assert_eq!(x.mul(&i).unwrap(), x);
        assert_eq!(x.power(0).unwrap(), i);
    }

    #[test]
    fn square_top_left_entry() {
        // x00∧x00 + x01∧x10 = x1∧x2
        let x = GrassmannMatrix::generic(2, Q).unwrap();
        let x2 = x.mul(&x).unwrap();
        let expected = Multivector::monomial(
            4,
            Blade::from_indices(&[1, 2]).unwrap(),
            Coefficient::one(Q),
        )
        .unwrap();
        assert_eq!(x2.entry(0, 0), &expected);
    }

    #[test]
    fn trace_of_generic() {
        let x = GrassmannMatrix::generic(3, Q).unwrap();
        let t = x.trace();
        assert_eq!(t.len(), 3);
        assert!(t.is_homogeneous_of(1));
        assert!(x.mul(&x).unwrap().trace().is_zero());
    }

    #[test]
    fn dump_has_entry_headers() {
        let x = GrassmannMatrix::generic(1, Q).unwrap();
        assert_eq!(x.to_string(), "entry (0,0):\n+1 * x[0]\n");
    }

    #[test]
    fn first_nonzero_is_row_major() {
        let mut entries = vec![Multivector::zero(4, Q); 4];
        entries[2] = Multivector::generator(4, Q, 3).unwrap();
        entries[3] = Multivector::generator(4, Q, 0).unwrap();
        let m = GrassmannMatrix::from_entries(2, entries).unwrap();
        let w = m.first_nonzero().unwrap();
        assert_eq!((w.row, w.col, w.blade), (1, 0, Blade::generator(3)));
    }
}

//! Matrices with plain (degree-0) coefficients.

use serde::{Deserialize, Serialize};

use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConcreteMatrix {
    n: usize,
    ring: Ring,
    entries: Vec<Coefficient>,
}

/// File form: `{"n": 2, "matrices": [[["1","0"],["0","1/2"]], ...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub matrices: Vec<Vec<Vec<String>>>,
}

impl MatrixFile {
    pub fn parse(&self, ring: Ring) -> Result<Vec<ConcreteMatrix>> {
        self.matrices
            .iter()
            .map(|rows| {
                if rows.len() != self.n || rows.iter().any(|r| r.len() != self.n) {
                    return Err(Error::DimensionMismatch(format!(
                        "expected {0}×{0} matrices",
                        self.n
                    )));
                }
                let entries = rows
                    .iter()
                    .flatten()
                    .map(|s| Coefficient::parse(ring, s))
                    .collect::<Result<Vec<_>>>()?;
                Ok(ConcreteMatrix {
                    n: self.n,
                    ring,
                    entries,
                })
            })
            .collect()
    }

    pub fn from_matrices(n: usize, matrices: &[ConcreteMatrix]) -> MatrixFile {
        MatrixFile {
            n,
            matrices: matrices.iter().map(ConcreteMatrix::to_strings).collect(),
        }
    }
}

impl ConcreteMatrix {
    pub fn zero(n: usize, ring: Ring) -> ConcreteMatrix {
        ConcreteMatrix {
            n,
            ring,
            entries: vec![Coefficient::zero(ring); n * n],
        }
    }

    pub fn identity(n: usize, ring: Ring) -> ConcreteMatrix {
        let mut m = ConcreteMatrix::zero(n, ring);
        for i in 0..n {
            m.entries[i * n + i] = Coefficient::one(ring);
        }
        m
    }

    /// The matrix unit `e_{ij}`.
    pub fn unit(n: usize, ring: Ring, i: usize, j: usize) -> ConcreteMatrix {
        let mut m = ConcreteMatrix::zero(n, ring);
        m.entries[i * n + j] = Coefficient::one(ring);
        m
    }

    pub fn from_entries(n: usize, ring: Ring, entries: Vec<Coefficient>) -> Result<ConcreteMatrix> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for {n}×{n}",
                entries.len()
            )));
        }
        if let Some(c) = entries.iter().find(|c| c.ring() != ring) {
            return Err(Error::RingMismatch {
                left: ring,
                right: c.ring(),
            });
        }
        Ok(ConcreteMatrix { n, ring, entries })
    }

    pub fn from_i64(n: usize, ring: Ring, values: &[i64]) -> Result<ConcreteMatrix> {
        ConcreteMatrix::from_entries(
            n,
            ring,
            values
                .iter()
                .map(|&v| Coefficient::from_i64(ring, v))
                .collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn entry(&self, i: usize, j: usize) -> &Coefficient {
        &self.entries[i * self.n + j]
    }

    /// Coordinate `x_idx` in row-major order.
    pub fn coordinate(&self, idx: usize) -> &Coefficient {
        &self.entries[idx]
    }

    pub fn entries(&self) -> &[Coefficient] {
        &self.entries
    }

    pub fn rows(&self) -> Vec<Vec<Coefficient>> {
        self.entries.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.entries
            .chunks(self.n)
            .map(|r| r.iter().map(|c| c.to_string()).collect())
            .collect()
    }

    pub(crate) fn check_compatible(&self, other: &ConcreteMatrix) -> Result<()> {
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
        Ok(())
    }

    pub fn mul(&self, other: &ConcreteMatrix) -> Result<ConcreteMatrix> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &ConcreteMatrix) -> ConcreteMatrix {
        let n = self.n;
        let mut out = ConcreteMatrix::zero(n, self.ring);
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let t = a * &other.entries[k * n + j];
                    out.entries[i * n + j] += &t;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &ConcreteMatrix) -> Result<ConcreteMatrix> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &ConcreteMatrix) -> Result<ConcreteMatrix> {
        self.check_compatible(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(
        &self,
        other: &ConcreteMatrix,
        f: impl Fn(&Coefficient, &Coefficient) -> Coefficient,
    ) -> ConcreteMatrix {
        ConcreteMatrix {
            n: self.n,
            ring: self.ring,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coefficient) -> Result<ConcreteMatrix> {
        if c.ring() != self.ring {
            return Err(Error::RingMismatch {
                left: self.ring,
                right: c.ring(),
            });
        }
        Ok(ConcreteMatrix {
            n: self.n,
            ring: self.ring,
            entries: self.entries.iter().map(|x| x * c).collect(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Coefficient::is_zero)
    }

    pub fn trace(&self) -> Coefficient {
        (0..self.n).fold(Coefficient::zero(self.ring), |acc, i| {
            &acc + self.entry(i, i)
        })
    }

    pub fn determinant(&self) -> Coefficient {
        linalg::determinant(self.ring, self.rows())
    }

    /// Exact inverse by Gauss–Jordan elimination. Over the integers the
    /// inverse is computed over the rationals and must come out integral.
    pub fn inverse(&self) -> Result<ConcreteMatrix> {
        if self.ring == Ring::Integer {
            let lifted = ConcreteMatrix {
                n: self.n,
                ring: Ring::Rational,
                entries: self
                    .entries
                    .iter()
                    .map(|c| Coefficient::parse(Ring::Rational, &c.to_string()))
                    .collect::<Result<Vec<_>>>()?,
            };
            let inv = lifted.inverse()?;
            let entries = inv
                .entries
                .iter()
                .map(|c| {
                    Coefficient::parse(Ring::Integer, &c.to_string()).map_err(|_| {
                        Error::NotAUnit(format!("matrix with determinant {}", self.determinant()))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            return Ok(ConcreteMatrix {
                n: self.n,
                ring: Ring::Integer,
                entries,
            });
        }
        let n = self.n;
        let ring = self.ring;
        let mut a = self.rows();
        let mut inv = ConcreteMatrix::identity(n, ring).rows();
        for col in 0..n {
            let p = (col..n)
                .find(|&r| !a[r][col].is_zero())
                .ok_or(Error::DivisionByZero)?;
            a.swap(p, col);
            inv.swap(p, col);
            let pinv = a[col][col].inverse()?;
            for j in 0..n {
                a[col][j] = &a[col][j] * &pinv;
                inv[col][j] = &inv[col][j] * &pinv;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let t = &f * &a[col][j];
                    a[r][j] -= &t;
                    let t = &f * &inv[col][j];
                    inv[r][j] -= &t;
                }
            }
        }
        Ok(ConcreteMatrix {
            n,
            ring,
            entries: inv.into_iter().flatten().collect(),
        })
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate(&self, g: &ConcreteMatrix, g_inv: &ConcreteMatrix) -> Result<ConcreteMatrix> {
        g.mul(self)?.mul(g_inv)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Ring = Ring::Rational;

    #[test]
    fn inverse_round_trip() {
        let g = ConcreteMatrix::from_i64(3, Q, &[2, 1, 0, 1, 3, 1, 0, 1, 4]).unwrap();
        let gi = g.inverse().unwrap();
        assert_eq!(g.mul(&gi).unwrap(), ConcreteMatrix::identity(3, Q));
        let singular = ConcreteMatrix::from_i64(2, Q, &[1, 2, 2, 4]).unwrap();
        assert!(singular.inverse().is_err());
    }

    #[test]
    fn integer_inverse_needs_unimodular() {
        let z = Ring::Integer;
        let g = ConcreteMatrix::from_i64(2, z, &[2, 3, 3, 5]).unwrap();
        assert_eq!(
            g.mul(&g.inverse().unwrap()).unwrap(),
            ConcreteMatrix::identity(2, z)
        );
        assert!(ConcreteMatrix::from_i64(2, z, &[2, 0, 0, 1])
            .unwrap()
            .inverse()
            .is_err());
    }

    #[test]
    fn matrix_file_parses() {
        let json = r#"{"n": 2, "matrices": [[["1","0"],["0","1/2"]]]}"#;
        let file: MatrixFile = serde_json::from_str(json).unwrap();
        let ms = file.parse(Q).unwrap();
        assert_eq!(ms[0].entry(1, 1).to_string(), "1/2");
        assert_eq!(MatrixFile::from_matrices(2, &ms), file);
        let bad: MatrixFile = serde_json::from_str(r#"{"n": 2, "matrices": [[["1"]]]}"#).unwrap();
        assert!(bad.parse(Q).is_err());
    }
}

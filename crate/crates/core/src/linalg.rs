//! Exact elimination: determinants and ranks over the coefficient rings.

use std::collections::BTreeMap;

use crate::coeff::{Coefficient, Ring};
use crate::error::{Error, Result};

/// Determinant of a square matrix given as rows.
///
/// Integer matrices use fraction-free (Bareiss) elimination; fields use plain
/// Gaussian elimination. The empty matrix has determinant 1.
pub fn determinant(ring: Ring, mut rows: Vec<Vec<Coefficient>>) -> Coefficient {
    let k = rows.len();
    debug_assert!(rows.iter().all(|r| r.len() == k));
    if k == 0 {
        return Coefficient::one(ring);
    }
    if ring == Ring::Integer {
        return bareiss(ring, rows);
    }
    let mut det = Coefficient::one(ring);
    for col in 0..k {
        let Some(p) = (col..k).find(|&r| !rows[r][col].is_zero()) else {
            return Coefficient::zero(ring);
        };
        if p != col {
            rows.swap(p, col);
            det = -det;
        }
        let pivot = rows[col][col].clone();
        det = &det * &pivot;
        let inv = pivot.inverse().expect("nonzero field element");
        let (top, bottom) = rows.split_at_mut(col + 1);
        let pivot_row = &top[col];
        for row in bottom.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = &row[col] * &inv;
            for c in col..k {
                let t = &factor * &pivot_row[c];
                row[c] -= &t;
            }
        }
    }
    det
}

fn bareiss(ring: Ring, mut rows: Vec<Vec<Coefficient>>) -> Coefficient {
    let k = rows.len();
    let mut sign = false;
    let mut prev = Coefficient::one(ring);
    for col in 0..k - 1 {
        let Some(p) = (col..k).find(|&r| !rows[r][col].is_zero()) else {
            return Coefficient::zero(ring);
        };
        if p != col {
            rows.swap(p, col);
            sign = !sign;
        }
        for i in col + 1..k {
            for j in col + 1..k {
                let num = &(&rows[i][j] * &rows[col][col]) - &(&rows[i][col] * &rows[col][j]);
                rows[i][j] = num.try_div(&prev).expect("Bareiss division is exact");
            }
            rows[i][col] = Coefficient::zero(ring);
        }
        prev = rows[col][col].clone();
    }
    let det = rows[k - 1][k - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// A sparse vector keyed by coordinate index.
pub type SparseVector = BTreeMap<u64, Coefficient>;

/// Rank of a set of sparse vectors over a field, by incremental row echelon
/// reduction.
pub fn rank(ring: Ring, vectors: impl IntoIterator<Item = SparseVector>) -> Result<usize> {
    if !ring.is_field() {
        return Err(Error::Config(format!("rank needs a field, got {ring}")));
    }
    // pivot column -> reduced row whose smallest key is that column, leading 1
    let mut pivots: BTreeMap<u64, SparseVector> = BTreeMap::new();
    for mut v in vectors {
        v.retain(|_, c| !c.is_zero());
        while let Some((&lead, c)) = v.iter().next() {
            if let Some(p) = pivots.get(&lead) {
                let factor = c.clone();
                for (key, pc) in p {
                    let t = &factor * pc;
                    let e = v.entry(*key).or_insert_with(|| Coefficient::zero(ring));
                    *e -= &t;
                    if e.is_zero() {
                        v.remove(key);
                    }
                }
            } else {
                let inv = c.inverse()?;
                for x in v.values_mut() {
                    *x = &*x * &inv;
                }
                pivots.insert(lead, v);
                break;
            }
        }
    }
    Ok(pivots.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(ring: Ring, data: &[&[i64]]) -> Vec<Vec<Coefficient>> {
        data.iter()
            .map(|r| r.iter().map(|&v| Coefficient::from_i64(ring, v)).collect())
            .collect()
    }

    #[test]
    fn determinant_all_rings_agree() {
        let data: &[&[i64]] = &[&[2, -1, 3], &[0, 4, 1], &[5, 2, -2]];
        // Leibniz by hand: 2(-8-2) - (-1)(0-5) + 3(0-20) = -20 - 5 - 60 = -85
        assert_eq!(
            determinant(Ring::Integer, rows(Ring::Integer, data)).to_string(),
            "-85"
        );
        assert_eq!(
            determinant(Ring::Rational, rows(Ring::Rational, data)).to_string(),
            "-85"
        );
        let gf = Ring::prime_field(101).unwrap();
        assert_eq!(determinant(gf, rows(gf, data)).to_string(), "16");
    }

    #[test]
    fn determinant_needs_pivot_swap() {
        let data: &[&[i64]] = &[&[0, 1], &[1, 0]];
        assert_eq!(
            determinant(Ring::Integer, rows(Ring::Integer, data)).to_string(),
            "-1"
        );
        assert_eq!(
            determinant(Ring::Rational, rows(Ring::Rational, data)).to_string(),
            "-1"
        );
        let singular: &[&[i64]] = &[&[1, 2], &[2, 4]];
        assert!(determinant(Ring::Integer, rows(Ring::Integer, singular)).is_zero());
        assert!(determinant(Ring::Integer, vec![]).is_one());
    }

    #[test]
    fn rank_of_dependent_set() {
        let q = Ring::Rational;
        let v = |pairs: &[(u64, i64)]| -> SparseVector {
            pairs
                .iter()
                .map(|&(k, c)| (k, Coefficient::from_i64(q, c)))
                .collect()
        };
        let vs = vec![
            v(&[(0, 1), (5, 2)]),
            v(&[(5, 1), (9, 1)]),
            v(&[(0, 1), (5, 3), (9, 1)]),
            v(&[]),
        ];
        assert_eq!(rank(q, vs).unwrap(), 2);
        assert!(rank(Ring::Integer, vec![]).is_err());
    }
}

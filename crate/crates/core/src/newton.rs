//! Newton's identities and Cayley–Hamilton over the even (commutative)
//! subalgebra.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::matrix::GrassmannMatrix;
use crate::multivector::Multivector;
use crate::report::{CheckReport, Witness};

/// Converts power sums `p_1, …, p_n` into elementary symmetric functions
/// `e_1, …, e_n` via `k·e_k = Σ_{i=1}^{k} (−1)^{i−1} e_{k−i} p_i`.
///
/// The inputs must be even so that they commute.
pub fn newton_char_coeffs(power_traces: &[Multivector]) -> Result<Vec<Multivector>> {
    let Some(first) = power_traces.first() else {
        return Ok(Vec::new());
    };
    let (m, ring) = (first.generators(), first.ring());
    for (i, p) in power_traces.iter().enumerate() {
        p.check_compatible(first)?;
        if !p.is_even() {
            return Err(Error::CommutativityViolation(format!(
                "power trace p_{} has odd terms",
                i + 1
            )));
        }
    }
    let mut e = vec![Multivector::one(m, ring)];
    for k in 1..=power_traces.len() {
        let mut acc = Multivector::zero(m, ring);
        for i in 1..=k {
            let t = e[k - i].wedge(&power_traces[i - 1])?;
            acc = if i % 2 == 1 {
                acc.add(&t)?
            } else {
                acc.sub(&t)?
            };
        }
        e.push(acc.divide_by_integer(k as u64)?);
    }
    e.remove(0);
    Ok(e)
}

/// Result of evaluating the characteristic polynomial of `A` at `A`.
#[derive(Debug, Clone)]
pub struct CayleyHamilton {
    pub power_traces: Vec<Multivector>,
    pub char_coeffs: Vec<Multivector>,
    /// `A^0, …, A^n`.
    pub powers: Vec<GrassmannMatrix>,
    /// `Σ_k (−1)^k e_k A^{n−k}`.
    pub residual: GrassmannMatrix,
}

/// Computes `A^n − e_1 A^{n−1} + … + (−1)^n e_n I` with `e_k` from the
/// power traces of `A`. Entries of `A` must be even.
pub fn cayley_hamilton(a: &GrassmannMatrix) -> Result<CayleyHamilton> {
    if !a.is_even() {
        return Err(Error::CommutativityViolation(
            "matrix has odd entries".into(),
        ));
    }
    let n = a.n();
    let powers = a.powers(n)?;
    let power_traces: Vec<_> = powers[1..].iter().map(GrassmannMatrix::trace).collect();
    let char_coeffs = newton_char_coeffs(&power_traces)?;
    let mut residual = powers[n].clone();
    for (k, e) in char_coeffs.iter().enumerate() {
        let k = k + 1;
        let term = powers[n - k].wedge_scalar_left(e)?;
        residual = if k % 2 == 1 {
            residual.sub(&term)?
        } else {
            residual.add(&term)?
        };
    }
    Ok(CayleyHamilton {
        power_traces,
        char_coeffs,
        powers,
        residual,
    })
}

/// Report form of [`cayley_hamilton`]; passes iff the residual vanishes.
pub fn cayley_hamilton_check(a: &GrassmannMatrix) -> Result<CheckReport> {
    let started = Instant::now();
    let mut report = CheckReport::new("cayley_hamilton", a.n(), a.ring());
    let ch = cayley_hamilton(a)?;
    for p in &ch.powers {
        report.observe_terms(p.max_terms());
    }
    report.stat(
        "char_coeffs_zero",
        ch.char_coeffs.iter().all(Multivector::is_zero),
    );
    report.stat(
        "power_traces_zero",
        ch.power_traces.iter().all(Multivector::is_zero),
    );
    let witness = ch
        .residual
        .first_nonzero()
        .map(|e| Witness::nonzero("nonzero Cayley–Hamilton residual", &e));
    Ok(report.finish(witness.is_none(), witness, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::blade::Blade;
    use crate::coeff::{Coefficient, Ring};

    const Q: Ring = Ring::Rational;

    fn scalar(v: i64) -> Multivector {
        Multivector::scalar(4, Coefficient::from_i64(Q, v))
    }

    #[test]
    fn zero_power_sums_give_zero_coefficients() {
        let e = newton_char_coeffs(&vec![Multivector::zero(4, Q); 3]).unwrap();
        assert!(e.iter().all(Multivector::is_zero));
    }

    #[test]
    fn two_by_two_newton_by_hand() {
        // e1 = t, e2 = (t^2 - s)/2 with t = 3, s = 5
        let e = newton_char_coeffs(&[scalar(3), scalar(5)]).unwrap();
        assert_eq!(e[0], scalar(3));
        assert_eq!(e[1], scalar(2));
    }

    #[test]
    fn two_by_two_newton_with_even_grassmann_elements() {
        let t = Multivector::monomial(
            4,
            Blade::from_indices(&[0, 1]).unwrap(),
            Coefficient::one(Q),
        )
        .unwrap();
        let s = Multivector::monomial(
            4,
            Blade::from_indices(&[2, 3]).unwrap(),
            Coefficient::one(Q),
        )
        .unwrap();
        let e = newton_char_coeffs(&[t.clone(), s.clone()]).unwrap();
        assert_eq!(e[0], t);
        let expected = t
            .wedge(&t)
            .unwrap()
            .sub(&s)
            .unwrap()
            .divide_by_integer(2)
            .unwrap();
        assert_eq!(e[1], expected);
        assert_eq!(
            e[1],
            s.scale(&Coefficient::from_ratio(Q, -1, 2).unwrap())
                .unwrap()
        );
    }

    #[test]
    fn odd_power_trace_rejected() {
        let odd = Multivector::generator(4, Q, 0).unwrap();
        assert!(matches!(
            newton_char_coeffs(&[odd]),
            Err(Error::CommutativityViolation(_))
        ));
        let x = GrassmannMatrix::generic(2, Q).unwrap();
        assert!(matches!(
            cayley_hamilton_check(&x),
            Err(Error::CommutativityViolation(_))
        ));
    }

    #[test]
    fn classical_diagonal_matrix() {
        let a = GrassmannMatrix::from_entries(2, vec![scalar(2), scalar(0), scalar(0), scalar(7)])
            .unwrap();
        let r = cayley_hamilton_check(&a).unwrap();
        assert!(r.pass);
        let ch = cayley_hamilton(&a).unwrap();
        assert_eq!(ch.char_coeffs, vec![scalar(9), scalar(14)]);
    }

    #[test]
    fn gf_characteristic_too_small() {
        let gf = Ring::prime_field(2).unwrap();
        let one = Multivector::one(0, gf);
        let err = newton_char_coeffs(&[one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::Characteristic { .. }));
    }
}

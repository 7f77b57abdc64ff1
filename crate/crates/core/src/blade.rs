//! Basis monomials of the exterior algebra, encoded as generator bitsets.

use std::cmp::Ordering;
use std::fmt;

/// Maximum number of generators a [`Blade`] can address.
pub const MAX_GENERATORS: usize = 64;

/// A wedge of distinct generators in increasing index order.
///
/// Bit `i` is set iff generator `x_i` is a factor. Blades order by degree
/// first and then by bitset value; this is the canonical term order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Blade(u64);

/// Result of wedging two blades.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WedgeSign {
    Zero,
    Positive,
    Negative,
}

impl Blade {
    pub const SCALAR: Blade = Blade(0);

    pub fn from_bits(bits: u64) -> Blade {
        Blade(bits)
    }

    pub fn generator(i: usize) -> Blade {
        assert!(i < MAX_GENERATORS, "generator index {i} out of range");
        Blade(1 << i)
    }

    /// Builds a blade from a set of distinct indices (any order). Returns
    /// `None` on a repeated or out-of-range index.
    pub fn from_indices(indices: &[usize]) -> Option<Blade> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= MAX_GENERATORS || bits & (1 << i) != 0 {
                return None;
            }
            bits |= 1 << i;
        }
        Some(Blade(bits))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Highest generator index plus one (0 for the scalar blade).
    pub fn span(self) -> usize {
        MAX_GENERATORS - self.0.leading_zeros() as usize
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(i)
        })
    }

    /// Sign of `self ∧ other` relative to the merged canonical blade: the
    /// parity of pairs `(i, j)` with `i ∈ self`, `j ∈ other`, `i > j`.
    pub fn wedge_sign(self, other: Blade) -> WedgeSign {
        if self.0 & other.0 != 0 {
            return WedgeSign::Zero;
        }
        let mut crossings = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            // generators of `self` strictly above j
            crossings += (self.0 & (!0u64 << j << 1)).count_ones();
            rest &= rest - 1;
        }
        if crossings & 1 == 0 {
            WedgeSign::Positive
        } else {
            WedgeSign::Negative
        }
    }

    /// Merged blade and sign flag (`true` = negative), or `None` if the
    /// blades share a generator.
    #[inline]
    pub fn wedge(self, other: Blade) -> Option<(Blade, bool)> {
        match self.wedge_sign(other) {
            WedgeSign::Zero => None,
            WedgeSign::Positive => Some((Blade(self.0 | other.0), false)),
            WedgeSign::Negative => Some((Blade(self.0 | other.0), true)),
        }
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then(self.0.cmp(&other.0))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Renders as `x[i1^i2^...]`; the scalar blade is `x[]`.
impl fmt::Display for Blade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("x[")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str("^")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(ix: &[usize]) -> Blade {
        Blade::from_indices(ix).unwrap()
    }

    #[test]
    fn adjacent_transposition() {
        assert_eq!(b(&[2]).wedge_sign(b(&[1])), WedgeSign::Negative);
        assert_eq!(b(&[1]).wedge_sign(b(&[2])), WedgeSign::Positive);
    }

    #[test]
    fn one_crossing() {
        assert_eq!(b(&[1, 3]).wedge_sign(b(&[2])), WedgeSign::Negative);
        assert_eq!(b(&[1, 3]).wedge(b(&[2])), Some((b(&[1, 2, 3]), true)));
    }

    #[test]
    fn repeated_generator() {
        assert_eq!(b(&[1]).wedge_sign(b(&[1])), WedgeSign::Zero);
    }

    #[test]
    fn canonical_order_is_degree_then_bits() {
        let mut v = vec![b(&[0, 1]), b(&[3]), Blade::SCALAR, b(&[0]), b(&[0, 2])];
        v.sort();
        assert_eq!(
            v,
            vec![Blade::SCALAR, b(&[0]), b(&[3]), b(&[0, 1]), b(&[0, 2])]
        );
    }

    #[test]
    fn display_and_indices() {
        assert_eq!(b(&[4, 0, 2]).to_string(), "x[0^2^4]");
        assert_eq!(Blade::SCALAR.to_string(), "x[]");
        assert_eq!(b(&[5, 1]).indices().collect::<Vec<_>>(), vec![1, 5]);
        assert_eq!(b(&[5, 1]).span(), 6);
        assert!(Blade::from_indices(&[1, 1]).is_none());
    }

    #[test]
    fn top_generator_sign() {
        assert_eq!(b(&[63]).wedge_sign(b(&[0])), WedgeSign::Negative);
        assert_eq!(b(&[0]).wedge_sign(b(&[63])), WedgeSign::Positive);
    }
}

use std::cmp::Ordering;
use std::fmt;

/// Most variables a polynomial may range over.
pub const MAX_VARS: usize = 128;

/// A multilinear monomial: a set of variable indices, stored as a bitmask.
///
/// Ordered by degree, then lexicographically by the sorted index list.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(i: usize) -> Self {
        assert!(i < MAX_VARS, "variable index {i} beyond {MAX_VARS}");
        Monomial(1u128 << i)
    }

    pub fn from_vars<I: IntoIterator<Item = usize>>(vars: I) -> Self {
        vars.into_iter().fold(Monomial::ONE, |m, v| m.times(Monomial::var(v)))
    }

    pub fn from_mask(mask: u128) -> Self {
        Monomial(mask)
    }

    pub fn mask(self) -> u128 {
        self.0
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Product with `x_i^2 = x_i`.
    #[inline]
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    pub fn contains(self, var: usize) -> bool {
        var < MAX_VARS && (self.0 >> var) & 1 == 1
    }

    /// Highest variable index plus one, or 0 for the constant monomial.
    pub fn span(self) -> usize {
        MAX_VARS - self.0.leading_zeros() as usize
    }

    pub fn vars(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(v)
        })
    }

    pub fn is_satisfied(self, x: &[bool]) -> bool {
        self.vars().all(|v| x[v])
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // smallest index in the symmetric difference is ours
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            return f.write_str("1");
        }
        for (i, v) in self.vars().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "x_{}", v + 1)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_is_degree_then_lex() {
        let mut ms = vec![
            Monomial::from_vars([1, 2]),
            Monomial::from_vars([0, 3]),
            Monomial::var(2),
            Monomial::ONE,
            Monomial::from_vars([0, 2]),
            Monomial::var(0),
        ];
        ms.sort();
        let shown: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(shown, ["1", "x_1", "x_3", "x_1 * x_3", "x_1 * x_4", "x_2 * x_3"]);
    }

    #[test]
    fn multilinear_product() {
        let x1 = Monomial::var(0);
        assert_eq!(x1.times(x1), x1);
        assert_eq!(Monomial::from_vars([0, 5]).span(), 6);
        assert_eq!(Monomial::from_vars([4, 1]).vars().collect::<Vec<_>>(), [1, 4]);
    }
}

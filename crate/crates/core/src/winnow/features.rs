use crate::bits::check_len;
use crate::error::{invalid, Result};
use crate::poly::{Monomial, MAX_VARS};

/// All monomials of degree `0..=d` over `n` variables, in (degree, lex) order.
/// Feature 0 is the constant monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FeatureMap {
    n: usize,
    d: usize,
    monomials: Vec<Monomial>,
}

/// `Σ_{i=0}^{d} C(n, i)`.
pub fn feature_count(n: usize, d: usize) -> u128 {
    let mut total = 0u128;
    let mut binom = 1u128;
    for i in 0..=d.min(n) {
        total += binom;
        binom = binom * (n - i) as u128 / (i + 1) as u128;
    }
    total
}

/// Cap on the expanded dimension.
pub const MAX_FEATURES: u128 = 1 << 24;

impl FeatureMap {
    pub fn new(n: usize, d: usize) -> Result<Self> {
        if n > MAX_VARS {
            return Err(invalid(format!("at most {MAX_VARS} variables, got {n}")));
        }
        let count = feature_count(n, d);
        if count > MAX_FEATURES {
            return Err(invalid(format!("{count} features exceeds the cap of {MAX_FEATURES}")));
        }
        let mut monomials = Vec::with_capacity(count as usize);
        let mut current: Vec<usize> = Vec::new();
        for deg in 0..=d.min(n) {
            combinations(n, deg, 0, &mut current, &mut monomials);
        }
        Ok(Self { n, d, monomials })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// `N`.
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    /// Feature `j` is the product of `x` over monomial `j`.
    pub fn expand(&self, x: &[bool]) -> Result<Vec<bool>> {
        check_len(x, self.n)?;
        Ok(self.monomials.iter().map(|m| m.is_satisfied(x)).collect())
    }

    /// Indices of the features equal to 1 on `x`.
    pub fn active(&self, x: &[bool]) -> Vec<usize> {
        (0..self.monomials.len()).filter(|&j| self.monomials[j].is_satisfied(x)).collect()
    }
}

fn combinations(n: usize, left: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Monomial>) {
    if left == 0 {
        out.push(Monomial::from_vars(current.iter().copied()));
        return;
    }
    for v in start..=n - left {
        current.push(v);
        combinations(n, left - 1, v + 1, current, out);
        current.pop();
    }
}

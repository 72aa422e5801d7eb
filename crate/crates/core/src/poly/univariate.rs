use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::sparse::{Coeff, Poly};

/// Dense univariate polynomial, `coeffs[i]` multiplying `y^i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly<C> {
    coeffs: Vec<C>,
}

impl<C: Coeff> UniPoly<C> {
    pub fn new(mut coeffs: Vec<C>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: C) -> Self {
        Self::new(vec![c])
    }

    /// `y`.
    pub fn identity() -> Self {
        Self::new(vec![C::zero(), C::one()])
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval(&self, y: &C) -> C {
        self.coeffs
            .iter()
            .rev()
            .fold(C::zero(), |acc, c| acc * y.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(C::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(C::zero);
                a + b
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn scale(&self, c: &C) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![C::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a.clone() * b.clone();
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(C::one()), |acc, _| acc.mul(self))
    }

    /// `q(a·y + b)`.
    pub fn compose_affine(&self, a: &C, b: &C) -> Self {
        let inner = Self::new(vec![b.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::new(Vec::new()), |acc, c| acc.mul(&inner).add(&Self::constant(c.clone())))
    }

    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                let mut k = C::zero();
                for _ in 0..i {
                    k += C::one();
                }
                c.clone() * k
            })
            .collect();
        Self::new(coeffs)
    }
}

impl UniPoly<BigInt> {
    pub fn to_rational(&self) -> UniPoly<BigRational> {
        UniPoly::new(self.coeffs.iter().cloned().map(BigRational::from_integer).collect())
    }
}

impl<C: Coeff> fmt::Display for UniPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else if first { "" } else { "+" };
            let mag = c.abs();
            let shown = if mag.is_one() && i > 0 { String::new() } else { mag.to_string() };
            match i {
                0 => write!(f, "{sign}{mag}")?,
                1 => write!(f, "{sign}{shown}y")?,
                _ => write!(f, "{sign}{shown}y^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Chebyshev polynomial of the first kind, `C_0 = 1`, `C_1 = y`,
/// `C_{d+1} = 2y·C_d − C_{d−1}`.
pub fn chebyshev(d: usize) -> UniPoly<BigInt> {
    let two_y = UniPoly::new(vec![BigInt::zero(), BigInt::from(2)]);
    let mut prev = UniPoly::constant(BigInt::one());
    if d == 0 {
        return prev;
    }
    let mut cur = UniPoly::identity();
    for _ in 1..d {
        let next = two_y.mul(&cur).add(&prev.scale(&BigInt::from(-1)));
        prev = cur;
        cur = next;
    }
    cur
}

/// `q(A(x))`, expanded by Horner's rule and kept multilinear.
pub fn compose_univariate<C: Coeff>(q: &UniPoly<C>, arg: &Poly<C>) -> Poly<C> {
    let n = arg.n();
    let mut acc = Poly::zero(n);
    for c in q.coeffs().iter().rev() {
        acc = acc.mul(arg).expect("same ambient");
        acc.add_term(super::Monomial::ONE, c.clone());
    }
    acc
}

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{NumAssign, Signed};

use super::monomial::{Monomial, MAX_VARS};
use crate::bits::check_len;
use crate::error::{invalid, Error, Result};

/// Coefficient ring for [`Poly`]: exact integers or exact rationals.
pub trait Coeff: Clone + fmt::Debug + fmt::Display + NumAssign + Signed + FromStr {}

impl Coeff for BigInt {}
impl Coeff for BigRational {}

/// Sparse multilinear polynomial over `{0,1}^n` with exact coefficients.
///
/// Products are reduced with `x_i^2 = x_i`, which leaves every value on the
/// cube unchanged. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<C> {
    n: usize,
    terms: BTreeMap<Monomial, C>,
}

/// Rational-coefficient polynomial.
pub type SparsePoly = Poly<BigRational>;
/// Integer-coefficient polynomial.
pub type IntPoly = Poly<BigInt>;

fn check_ambient(n: usize) -> Result<()> {
    if n > MAX_VARS {
        Err(invalid(format!("polynomials support at most {MAX_VARS} variables, got {n}")))
    } else {
        Ok(())
    }
}

impl<C: Coeff> Poly<C> {
    pub fn zero(n: usize) -> Self {
        check_ambient(n).expect("ambient dimension");
        Self { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: C) -> Self {
        let mut p = Self::zero(n);
        p.add_term(Monomial::ONE, c);
        p
    }

    pub fn one(n: usize) -> Self {
        Self::constant(n, C::one())
    }

    /// The variable `x_{i+1}`.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(Error::VariableOutOfRange { index: i, n });
        }
        let mut p = Self::zero(n);
        p.add_term(Monomial::var(i), C::one());
        Ok(p)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(n: usize, terms: I) -> Result<Self> {
        check_ambient(n)?;
        let mut p = Self { n, terms: BTreeMap::new() };
        for (m, c) in terms {
            if m.span() > n {
                return Err(Error::VariableOutOfRange { index: m.span() - 1, n });
            }
            p.add_term(m, c);
        }
        Ok(p)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Terms in canonical (degree, lex) order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: Monomial) -> C {
        self.terms.get(&m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coeff(Monomial::ONE)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest stored monomial degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Sum of absolute values of all coefficients, constant included.
    pub fn weight(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.abs())
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.n == other.n {
            Ok(())
        } else {
            Err(Error::AmbientMismatch(self.n, other.n))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            terms: self.terms.iter().map(|(m, a)| (*m, a.clone() * c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut out = Self::zero(self.n);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.times(*mb), a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(self.n);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base).expect("same ambient");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("same ambient");
            }
        }
        result
    }

    /// In-place `self += c · other`.
    pub fn add_scaled(&mut self, other: &Self, c: &C) -> Result<()> {
        self.same_ambient(other)?;
        for (m, a) in &other.terms {
            self.add_term(*m, a.clone() * c.clone());
        }
        Ok(())
    }

    pub fn eval(&self, x: &[bool]) -> Result<C> {
        check_len(x, self.n)?;
        Ok(self
            .terms
            .iter()
            .filter(|(m, _)| m.is_satisfied(x))
            .fold(C::zero(), |acc, (_, c)| acc + c.clone()))
    }

    /// Values on all of `{0,1}^n`, indexed in lexicographic order.
    ///
    /// Uses the subset-sum transform, `n · 2^n` additions.
    pub fn cube_values(&self) -> Vec<C> {
        let n = self.n;
        assert!(n < 32, "cube of dimension {n} is too large");
        let mut vals = vec![C::zero(); 1 << n];
        for (m, c) in &self.terms {
            vals[lex_slot(*m, n)] += c.clone();
        }
        for b in 0..n {
            let bit = 1usize << b;
            for idx in 0..vals.len() {
                if idx & bit != 0 {
                    let lower = vals[idx ^ bit].clone();
                    vals[idx] += lower;
                }
            }
        }
        vals
    }

    /// Re-embeds into a larger ambient space.
    pub fn with_ambient(&self, n: usize) -> Result<Self> {
        check_ambient(n)?;
        if let Some(m) = self.terms.keys().find(|m| m.span() > n) {
            return Err(Error::VariableOutOfRange { index: m.span() - 1, n });
        }
        Ok(Self { n, terms: self.terms.clone() })
    }

    /// Renames variable `i` to `map[i]`, landing in ambient dimension `n`.
    pub fn rename(&self, map: &[usize], n: usize) -> Result<Self> {
        if map.len() != self.n {
            return Err(Error::AmbientMismatch(map.len(), self.n));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial::from_vars(m.vars().map(|v| map[v])), c.clone()));
        Self::from_terms(n, terms)
    }

    /// Substitutes `images[i]` for `x_{i+1}`. All images share one ambient space.
    pub fn substitute(&self, images: &[Poly<C>]) -> Result<Self> {
        if images.len() != self.n {
            return Err(Error::AmbientMismatch(images.len(), self.n));
        }
        let target_n = images.first().map_or(0, |p| p.n);
        for p in images {
            if p.n != target_n {
                return Err(Error::AmbientMismatch(p.n, target_n));
            }
        }
        let mut out = Self::zero(target_n);
        for (m, c) in &self.terms {
            let mut prod = Self::constant(target_n, c.clone());
            for v in m.vars() {
                prod = prod.mul(&images[v])?;
            }
            for (pm, pc) in prod.terms {
                out.add_term(pm, pc);
            }
        }
        Ok(out)
    }

    /// Parses the text form written by `Display`.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut p = Self::zero(n);
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line == "0" {
                continue;
            }
            let mut parts = line.split('*').map(str::trim);
            let coeff_text = parts.next().unwrap_or_default();
            let coeff_text = coeff_text.strip_prefix('+').unwrap_or(coeff_text);
            let c = C::from_str(coeff_text)
                .map_err(|_| Error::Parse(format!("bad coefficient in {line:?}")))?;
            let mut m = Monomial::ONE;
            for var in parts {
                let idx: usize = var
                    .strip_prefix("x_")
                    .and_then(|s| s.parse().ok())
                    .filter(|&i| i >= 1 && i <= n)
                    .ok_or_else(|| Error::Parse(format!("bad variable {var:?} in {line:?}")))?;
                m = m.times(Monomial::var(idx - 1));
            }
            p.add_term(m, c);
        }
        Ok(p)
    }
}

/// Position of a monomial's indicator point in the lexicographic cube order.
pub(crate) fn lex_slot(m: Monomial, n: usize) -> usize {
    m.vars().fold(0usize, |acc, v| acc | 1 << (n - 1 - v))
}

impl Poly<BigInt> {
    /// Divides every coefficient by `g`, which must divide them all.
    pub(crate) fn scale_down(&self, g: &BigInt) -> Self {
        Self { n: self.n, terms: self.terms.iter().map(|(m, a)| (*m, a / g)).collect() }
    }

    pub fn to_rational(&self) -> SparsePoly {
        SparsePoly {
            n: self.n,
            terms: self.terms.iter().map(|(m, c)| (*m, BigRational::from_integer(c.clone()))).collect(),
        }
    }

    /// Signs (−1, 0, +1) on the whole cube in lexicographic order.
    ///
    /// Runs in `i128` when the weight allows it, since every partial sum is
    /// bounded by the weight.
    pub fn cube_signs(&self) -> Vec<i8> {
        use num_traits::ToPrimitive;
        let n = self.n;
        assert!(n < 32, "cube of dimension {n} is too large");
        let small = self.weight().bits() < 126;
        if !small {
            return self.cube_values().iter().map(|v| v.signum().to_i8().unwrap()).collect();
        }
        let mut vals = vec![0i128; 1 << n];
        for (m, c) in &self.terms {
            vals[lex_slot(*m, n)] += c.to_i128().expect("fits by weight");
        }
        for b in 0..n {
            let bit = 1usize << b;
            for idx in 0..vals.len() {
                if idx & bit != 0 {
                    vals[idx] += vals[idx ^ bit];
                }
            }
        }
        vals.iter().map(|v| v.signum() as i8).collect()
    }
}

impl Poly<BigRational> {
    /// `Some` when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            terms.insert(*m, c.to_integer());
        }
        Some(IntPoly { n: self.n, terms })
    }
}

impl<C: Coeff> fmt::Display for Poly<C> {
    /// One term per line, `±coeff * x_i * x_j`, canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return writeln!(f, "0");
        }
        for (m, c) in &self.terms {
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}", c.abs())?;
            for v in m.vars() {
                write!(f, " * x_{}", v + 1)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl<C: Coeff> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[n={}]{{", self.n)?;
        for (i, (m, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            write!(f, "{sign}{}·{m}", c.abs())?;
        }
        f.write_str("}")
    }
}

/// `log₂` of a positive integer, accurate to about 1e-12.
pub fn log2_big(x: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    assert!(x.is_positive(), "log2 of non-positive value");
    let bits = x.bits();
    if bits <= 64 {
        return x.to_f64().unwrap().log2();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().log2() + shift as f64
}

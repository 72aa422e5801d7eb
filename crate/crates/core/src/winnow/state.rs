use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::boolean::Label;
use crate::error::{invalid, Error, Result};

/// How prediction sums are evaluated.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    /// Exact rational comparison. A float pass decides clear cases first.
    #[default]
    Exact,
    /// Plain `f64` sums, no exact fallback.
    Float,
}

/// Exponents beyond this would overflow an `f64` power of alpha.
const FLOAT_EXPONENT_CAP: i64 = 600;

/// Balanced Winnow over `N` features.
///
/// Every weight pair starts at `(1, 1)` and each update multiplies one side by
/// `alpha` and divides the other, so the pair is always `(alpha^c, alpha^-c)`
/// for an integer counter `c`. Only the counters are stored.
#[derive(Clone, Debug)]
pub struct WinnowState {
    alpha: BigRational,
    theta: BigRational,
    arithmetic: Arithmetic,
    exponents: Vec<i64>,
    mistakes: u64,
    // gaps[c] = alpha^c - alpha^-c for c >= 0
    gaps: Vec<BigRational>,
    gaps_f: Vec<f64>,
    theta_f: f64,
    max_exponent: i64,
}

impl WinnowState {
    pub fn new(num_features: usize, alpha: BigRational, theta: BigRational, arithmetic: Arithmetic) -> Result<Self> {
        if alpha <= BigRational::one() {
            return Err(invalid(format!("promotion factor must exceed 1, got {alpha}")));
        }
        if !theta.is_positive() {
            return Err(invalid(format!("threshold must be positive, got {theta}")));
        }
        let theta_f = ratio_to_f64(&theta);
        let mut state = Self {
            alpha,
            theta,
            arithmetic,
            exponents: vec![0; num_features],
            mistakes: 0,
            gaps: vec![BigRational::zero()],
            gaps_f: vec![0.0],
            theta_f,
            max_exponent: 0,
        };
        state.extend_gaps(1);
        Ok(state)
    }

    pub fn num_features(&self) -> usize {
        self.exponents.len()
    }

    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    pub fn theta(&self) -> &BigRational {
        &self.theta
    }

    pub fn arithmetic(&self) -> Arithmetic {
        self.arithmetic
    }

    pub fn mistakes(&self) -> u64 {
        self.mistakes
    }

    pub fn exponent(&self, j: usize) -> i64 {
        self.exponents[j]
    }

    /// `(w+_j, w-_j)`.
    pub fn weights(&self, j: usize) -> (BigRational, BigRational) {
        let c = self.exponents[j];
        let up = pow_ratio(&self.alpha, c.unsigned_abs());
        let down = up.recip();
        if c >= 0 {
            (up, down)
        } else {
            (down, up)
        }
    }

    /// `w+_j - w-_j`.
    pub fn net_weight(&self, j: usize) -> BigRational {
        self.gap(self.exponents[j])
    }

    fn gap(&self, c: i64) -> BigRational {
        let g = &self.gaps[c.unsigned_abs() as usize];
        if c < 0 {
            -g.clone()
        } else {
            g.clone()
        }
    }

    pub(crate) fn gap_f(&self, c: i64) -> f64 {
        let g = self.gaps_f[c.unsigned_abs() as usize];
        if c < 0 {
            -g
        } else {
            g
        }
    }

    pub(crate) fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    fn extend_gaps(&mut self, upto: usize) {
        while self.gaps.len() <= upto {
            let c = self.gaps.len() as u64;
            let up = pow_ratio(&self.alpha, c);
            let g = &up - up.recip();
            self.gaps_f.push(ratio_to_f64(&g));
            self.gaps.push(g);
        }
    }

    /// Exact `Σ (w+_j - w-_j) z_j`.
    pub fn score(&self, z: &[bool]) -> Result<BigRational> {
        self.check(z)?;
        Ok(self.exact_score(active(z)))
    }

    fn exact_score(&self, active: impl Iterator<Item = usize>) -> BigRational {
        let mut s = BigRational::zero();
        for j in active {
            let c = self.exponents[j];
            if c > 0 {
                s += &self.gaps[c as usize];
            } else if c < 0 {
                s -= &self.gaps[(-c) as usize];
            }
        }
        s
    }

    /// `+1` iff the score reaches `theta`.
    pub fn predict(&self, z: &[bool]) -> Result<Label> {
        self.check(z)?;
        Ok(self.predict_active(&active(z).collect::<Vec<_>>()))
    }

    pub(crate) fn predict_active(&self, active: &[usize]) -> Label {
        let mut s = 0.0;
        let mut mass = 0.0;
        for &j in active {
            let g = self.gap_f(self.exponents[j]);
            s += g;
            mass += g.abs();
        }
        self.decide(s, mass, || active.iter().copied())
    }

    /// Decision from a float score `s` with absolute mass `mass`, deferring
    /// to the exact sum over `active` when the float result is too close.
    pub(crate) fn decide<I, F>(&self, s: f64, mass: f64, active: F) -> Label
    where
        I: Iterator<Item = usize>,
        F: FnOnce() -> I,
    {
        if self.arithmetic == Arithmetic::Float {
            return Label::from_bool(s >= self.theta_f);
        }
        let margin = 1e-9 * (mass + self.theta_f);
        if self.max_exponent <= FLOAT_EXPONENT_CAP && (s - self.theta_f).abs() > margin {
            return Label::from_bool(s >= self.theta_f);
        }
        Label::from_bool(self.exact_score(active()) >= self.theta)
    }

    /// Predicts on `z` and, on a mistake, promotes or demotes every active
    /// feature. Returns whether a mistake was made.
    pub fn update(&mut self, z: &[bool], truth: Label) -> Result<bool> {
        self.check(z)?;
        let act: Vec<usize> = active(z).collect();
        Ok(self.update_active(&act, truth))
    }

    pub(crate) fn update_active(&mut self, active: &[usize], truth: Label) -> bool {
        if self.predict_active(active) == truth {
            return false;
        }
        let step = truth.value();
        for &j in active {
            self.exponents[j] += step;
            self.max_exponent = self.max_exponent.max(self.exponents[j].abs());
        }
        self.extend_gaps(self.max_exponent as usize);
        self.mistakes += 1;
        true
    }

    fn check(&self, z: &[bool]) -> Result<()> {
        if z.len() != self.exponents.len() {
            return Err(Error::DimensionMismatch { expected: self.exponents.len(), got: z.len() });
        }
        Ok(())
    }
}

fn active(z: &[bool]) -> impl Iterator<Item = usize> + '_ {
    z.iter().enumerate().filter(|(_, &b)| b).map(|(j, _)| j)
}

fn pow_ratio(base: &BigRational, e: u64) -> BigRational {
    num_traits::pow(base.clone(), e as usize)
}

pub(crate) fn ratio_to_f64(r: &BigRational) -> f64 {
    let (a, sa) = top_bits(r.numer());
    let (b, sb) = top_bits(r.denom());
    a / b * 2f64.powi((sa - sb) as i32)
}

// x ~ mantissa * 2^shift with the mantissa exact in an f64
fn top_bits(x: &BigInt) -> (f64, i64) {
    let shift = (x.bits() as i64 - 60).max(0);
    ((x >> shift as usize).to_f64().unwrap_or(0.0), shift)
}

pub(crate) fn ratio_from_int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

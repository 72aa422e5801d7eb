//! Learning sparse parities from labelled examples: GF(2) elimination, the
//! plain consistent-parity learner, and the restriction learner that keeps
//! only a random set of columns so its hypothesis stays sparse.

mod gf2;

pub use gf2::{gf2_eliminate, gf2_solve, satisfies, Echelon, GF2Matrix};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::{format_bits, parse_bits};
use crate::boolean::{Label, ParityFunction};
use crate::error::{invalid, Error, Result};
use crate::rng::SeedSplitter;

/// Examples `(x, label)` with the equations `Σ_{i: x_i = 1} a_i = [label = -1]`
/// kept packed alongside.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledSample {
    n: usize,
    examples: Vec<(Vec<bool>, Label)>,
    matrix: GF2Matrix,
    rhs: Vec<bool>,
}

impl LabeledSample {
    pub fn new(n: usize, examples: Vec<(Vec<bool>, Label)>) -> Result<Self> {
        let rows: Vec<Vec<bool>> = examples.iter().map(|(x, _)| x.clone()).collect();
        let matrix = GF2Matrix::from_rows(n, &rows)?;
        let rhs = examples.iter().map(|(_, y)| *y == Label::Neg).collect();
        Ok(Self { n, examples, matrix, rhs })
    }

    /// `m` uniform examples labelled by `oracle`.
    pub fn draw<R: Rng, F: Fn(&[bool]) -> Label>(n: usize, m: usize, oracle: F, rng: &mut R) -> Result<Self> {
        let examples = (0..m)
            .map(|_| {
                let x: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
                let y = oracle(&x);
                (x, y)
            })
            .collect();
        Self::new(n, examples)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }

    pub fn examples(&self) -> &[(Vec<bool>, Label)] {
        &self.examples
    }

    pub fn matrix(&self) -> &GF2Matrix {
        &self.matrix
    }

    pub fn rhs(&self) -> &[bool] {
        &self.rhs
    }

    /// One example per line: `bits label`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (x, y) in &self.examples {
            out.push_str(&format!("{} {}\n", format_bits(x), y.value()));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut examples = Vec::new();
        for (no, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || Error::Parse(format!("line {}: expected `bits label`, got {line:?}", no + 1));
            let mut parts = line.split_whitespace();
            let (Some(bits), Some(label), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad());
            };
            let x = parse_bits(bits)?;
            let y = match label {
                "1" | "+1" => Label::Pos,
                "-1" => Label::Neg,
                _ => return Err(bad()),
            };
            examples.push((x, y));
        }
        let n = examples.first().map_or(0, |(x, _)| x.len());
        Self::new(n, examples)
    }
}

/// A parity hypothesis with the number of restriction trials it took.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityHypothesis {
    pub coefficients: Vec<bool>,
    pub trials: u64,
}

impl ParityHypothesis {
    pub fn n(&self) -> usize {
        self.coefficients.len()
    }

    pub fn weight(&self) -> usize {
        self.coefficients.iter().filter(|&&a| a).count()
    }

    /// 0-based support.
    pub fn support(&self) -> Vec<usize> {
        (0..self.coefficients.len()).filter(|&i| self.coefficients[i]).collect()
    }

    pub fn to_parity(&self) -> ParityFunction {
        ParityFunction::new(self.n(), self.support()).expect("support within range")
    }

    pub fn eval(&self, x: &[bool]) -> Label {
        let odd = self.coefficients.iter().zip(x).filter(|(a, b)| **a && **b).count() % 2 == 1;
        Label::from_bool(!odd)
    }
}

/// `ceil(n^(1 - 1/k))`: the smallest `l` with `l^k >= n^(k-1)`.
pub fn restricted_width(n: usize, k: usize) -> Result<usize> {
    if k == 0 || k > n {
        return Err(invalid(format!("need 1 <= k <= n, got k = {k}, n = {n}")));
    }
    let target = BigInt::from(n).pow(k as u32 - 1);
    let mut ell = ((n as f64).powf(1.0 - 1.0 / k as f64).floor() as usize).saturating_sub(1).max(1);
    while BigInt::from(ell).pow(k as u32) < target {
        ell += 1;
    }
    while ell > 1 && BigInt::from(ell - 1).pow(k as u32) >= target {
        ell -= 1;
    }
    Ok(ell)
}

/// Sample size for a consistent learner over hypotheses of weight at most
/// `restricted_width(n, k)`: `ceil((l log2 n + log2(1/delta)) / eps)`.
pub fn occam_sample_size(n: usize, k: usize, eps: f64, delta: f64) -> Result<usize> {
    if !(eps > 0.0 && eps <= 1.0) || !(delta > 0.0 && delta <= 1.0) {
        return Err(invalid(format!("eps and delta must lie in (0, 1], got {eps} and {delta}")));
    }
    let ell = restricted_width(n, k)?;
    let bits = ell as f64 * (n as f64).log2() + (1.0 / delta).log2();
    Ok((bits / eps).ceil() as usize)
}

/// Chance that `l` columns kept uniformly from `n` contain a fixed set of
/// `k`: `Π_{i=1..k} (l - k + i) / (n - k + i)`.
pub fn trial_success_probability(n: usize, k: usize, ell: usize) -> Result<BigRational> {
    if k > ell || ell > n {
        return Err(invalid(format!("need k <= l <= n, got k = {k}, l = {ell}, n = {n}")));
    }
    let mut p = BigRational::one();
    for i in 1..=k {
        p *= BigRational::new(BigInt::from(ell - k + i), BigInt::from(n - k + i));
    }
    Ok(p)
}

/// Solve over all `n` columns.
pub fn standard_parity_learner(sample: &LabeledSample) -> Result<Option<ParityHypothesis>> {
    let sol = gf2_solve(sample.matrix(), sample.rhs())?;
    Ok(sol.map(|coefficients| ParityHypothesis { coefficients, trials: 1 }))
}

/// The columns a restriction trial keeps, ascending.
pub fn kept_columns(n: usize, ell: usize, seed: u64) -> Vec<usize> {
    let mut rng = SeedSplitter::new(seed).rng(0);
    let mut cols = sample(&mut rng, n, ell).into_vec();
    cols.sort_unstable();
    cols
}

/// One restriction trial: force all but `l = restricted_width(n, k)` random
/// coefficients to zero and solve for the rest. `None` means the restricted
/// system is inconsistent.
pub fn learn_parity_trial(sample: &LabeledSample, k: usize, seed: u64) -> Result<Option<ParityHypothesis>> {
    let ell = restricted_width(sample.n(), k)?;
    trial_with_columns(sample, &kept_columns(sample.n(), ell, seed))
}

pub(crate) fn trial_with_columns(sample: &LabeledSample, cols: &[usize]) -> Result<Option<ParityHypothesis>> {
    if sample.is_empty() {
        return Err(invalid("empty sample"));
    }
    let restricted = sample.matrix().select_columns(cols);
    let Some(sol) = gf2_solve(&restricted, sample.rhs())? else { return Ok(None) };
    let mut coefficients = vec![false; sample.n()];
    for (t, &c) in cols.iter().enumerate() {
        coefficients[c] = sol[t];
    }
    Ok(Some(ParityHypothesis { coefficients, trials: 1 }))
}

/// Settings for a full learning run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParityTask {
    pub n: usize,
    pub k: usize,
    pub eps: f64,
    pub delta: f64,
    pub seed: u64,
    /// Defaults to `100 n`.
    pub max_trials: Option<u64>,
}

impl ParityTask {
    pub fn max_trials(&self) -> u64 {
        self.max_trials.unwrap_or(100 * self.n as u64)
    }
}

/// Everything a full run produced.
#[derive(Clone, Debug)]
pub struct ParityRun {
    pub ell: usize,
    pub sample: LabeledSample,
    pub hypothesis: ParityHypothesis,
    /// Whether the wide case handed off to the plain learner.
    pub used_standard: bool,
}

/// Draws one sample of Occam size from `oracle`, then repeats restriction
/// trials with fresh column choices until one is consistent. When the kept
/// width is at least `n / 2` the plain learner is used directly.
pub fn learn_parity<F: Fn(&[bool]) -> Label>(oracle: F, task: &ParityTask) -> Result<ParityRun> {
    let ParityTask { n, k, eps, delta, seed, .. } = *task;
    let ell = restricted_width(n, k)?;
    let m = occam_sample_size(n, k, eps, delta)?;
    let seeds = SeedSplitter::new(seed);
    let sample = LabeledSample::draw(n, m, oracle, &mut seeds.rng(0))?;
    if 2 * ell >= n {
        let hypothesis = standard_parity_learner(&sample)?.ok_or(Error::TrialsExhausted(1))?;
        return Ok(ParityRun { ell, sample, hypothesis, used_standard: true });
    }
    let max_trials = task.max_trials();
    for t in 1..=max_trials {
        if let Some(mut h) = learn_parity_trial(&sample, k, seeds.child(t))? {
            h.trials = t;
            return Ok(ParityRun { ell, sample, hypothesis: h, used_standard: false });
        }
    }
    Err(Error::TrialsExhausted(max_trials as usize))
}

/// Fraction of `examples` fresh uniform points where `h` and `target` differ.
pub fn holdout_error(h: &ParityHypothesis, target: &ParityFunction, examples: usize, seed: u64) -> f64 {
    if examples == 0 {
        return 0.0;
    }
    let mut rng = SeedSplitter::new(seed).rng(1);
    let n = h.n();
    let wrong = (0..examples)
        .filter(|_| {
            let x: Vec<bool> = (0..n).map(|_| rng.gen()).collect();
            h.eval(&x) != target.eval(&x).expect("dimension checked")
        })
        .count();
    wrong as f64 / examples as f64
}

/// Run report, variables 1-based.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParityReport {
    pub n: usize,
    pub k: usize,
    pub ell: usize,
    pub m: usize,
    pub trials_used: u64,
    pub success_prob_exact: String,
    pub success_freq: f64,
    pub hypothesis_support: Vec<usize>,
    pub holdout_error: f64,
    pub standard_weight: Option<usize>,
}

impl ParityReport {
    /// Builds the report; `success_freq` is `successes / trials` from
    /// `frequency` when given, else one success over the trials used.
    pub fn new(
        run: &ParityRun,
        k: usize,
        frequency: Option<(u64, u64)>,
        holdout_error: f64,
    ) -> Result<Self> {
        let n = run.sample.n();
        let exact = trial_success_probability(n, k, run.ell.min(n))?;
        let (hits, total) = frequency.unwrap_or((1, run.hypothesis.trials));
        let standard_weight = standard_parity_learner(&run.sample)?.map(|h| h.weight());
        Ok(Self {
            n,
            k,
            ell: run.ell,
            m: run.sample.len(),
            trials_used: run.hypothesis.trials,
            success_prob_exact: exact.to_string(),
            success_freq: if total == 0 { 0.0 } else { hits as f64 / total as f64 },
            hypothesis_support: run.hypothesis.support().iter().map(|i| i + 1).collect(),
            holdout_error,
            standard_weight,
        })
    }
}

/// Successful trials out of `trials`, trial `t` using restriction seed
/// `child(t)` of `seed`.
pub fn success_frequency(sample: &LabeledSample, k: usize, trials: u64, seed: u64) -> Result<u64> {
    use rayon::prelude::*;
    let seeds = SeedSplitter::new(seed);
    (1..=trials)
        .into_par_iter()
        .map(|t| learn_parity_trial(sample, k, seeds.child(t)).map(|h| h.is_some() as u64))
        .sum()
}

#[cfg(test)]
mod tests;

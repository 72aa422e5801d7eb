//! Online learners in the mistake-bound model: Balanced Winnow over monomial
//! features, plus baselines, teachers and mistake accounting.

mod baseline;
mod features;
mod state;

pub use baseline::{HalvingLearner, ListLearner, HALVING_MAX_K, HALVING_MAX_N};
pub use features::{feature_count, FeatureMap, MAX_FEATURES};
pub use state::{Arithmetic, WinnowState};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::{check_len, exhaustion_limit, point};
use crate::boolean::{Concept, Label};
use crate::error::{invalid, Error, Result};
use crate::poly::{lex_slot, log2_big, SparsePoly};
use crate::ptf::{compose_degree_bound, main_block_length};
use crate::rng::SeedSplitter;
use state::ratio_from_int;

/// Learner parameters. `theta = None` means the feature count `N`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub d: usize,
    #[serde(with = "ratio_text")]
    pub alpha: BigRational,
    #[serde(default, with = "opt_ratio_text", skip_serializing_if = "Option::is_none")]
    pub theta: Option<BigRational>,
    #[serde(default)]
    pub arithmetic: Arithmetic,
}

impl LearnerConfig {
    /// Balanced Winnow defaults: `alpha = 3/2`, `theta = N`.
    pub fn balanced(d: usize) -> Self {
        Self { d, alpha: BigRational::new(3.into(), 2.into()), theta: None, arithmetic: Arithmetic::Exact }
    }

    pub fn theta_for(&self, num_features: usize) -> BigRational {
        self.theta.clone().unwrap_or_else(|| ratio_from_int(num_features))
    }
}

/// The configuration for learning length-`k` lists over `n` variables: the
/// degree of the main construction at that length.
pub fn expanded_winnow_for_list(k: usize, n: usize) -> Result<LearnerConfig> {
    if k == 0 {
        return Err(invalid("list length must be at least 1"));
    }
    let d = if k == 1 { 1 } else { compose_degree_bound(k, main_block_length(k)) };
    // degrees above n add no monomials
    Ok(LearnerConfig::balanced(d.min(n.max(1))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Teacher {
    /// Uniform random examples.
    Iid,
    /// Always the lexicographically first input the learner gets wrong.
    Adversarial,
}

/// A learner that sees examples over the original `n` variables.
pub trait OnlineLearner {
    fn n(&self) -> usize;

    fn predict(&self, x: &[bool]) -> Label;

    /// Predicts, updates on a mistake, and reports whether it erred.
    fn observe(&mut self, x: &[bool], truth: Label) -> bool;

    /// Lexicographically first index where the prediction differs from
    /// `labels`, which lists the target over the whole cube.
    fn first_error(&self, labels: &[Label]) -> Option<usize> {
        let n = self.n();
        labels.iter().enumerate().find(|(i, &y)| self.predict(&point(*i as u64, n)) != y).map(|(i, _)| i)
    }
}

/// Winnow over the monomials of degree at most `d`.
#[derive(Clone, Debug)]
pub struct ExpandedWinnow {
    features: FeatureMap,
    state: WinnowState,
}

impl ExpandedWinnow {
    pub fn new(n: usize, config: &LearnerConfig) -> Result<Self> {
        let features = FeatureMap::new(n, config.d)?;
        let theta = config.theta_for(features.len());
        let state = WinnowState::new(features.len(), config.alpha.clone(), theta, config.arithmetic)?;
        Ok(Self { features, state })
    }

    pub fn features(&self) -> &FeatureMap {
        &self.features
    }

    pub fn state(&self) -> &WinnowState {
        &self.state
    }

    /// The current hypothesis as a polynomial whose sign (with zero read as
    /// `+1`) is the prediction: `Σ (w+_j - w-_j) m_j - theta`.
    pub fn hypothesis_poly(&self) -> SparsePoly {
        let n = self.features.n();
        let mut p = SparsePoly::constant(n, -self.state.theta().clone());
        for (j, &m) in self.features.monomials().iter().enumerate() {
            let w = self.state.net_weight(j);
            if !w.is_zero() {
                p.add_term(m, w);
            }
        }
        p
    }

    /// Float scores over the whole cube by a subset-sum transform, with the
    /// matching absolute masses for the exactness check.
    fn cube_scores(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.features.n();
        let size = 1usize << n;
        let mut score = vec![0.0f64; size];
        let mut mass = vec![0.0f64; size];
        for (j, &m) in self.features.monomials().iter().enumerate() {
            let g = self.state.gap_f(self.state.exponents()[j]);
            let slot = lex_slot(m, n);
            score[slot] += g;
            mass[slot] += g.abs();
        }
        for bit in 0..n {
            let step = 1usize << bit;
            for arr in [&mut score, &mut mass] {
                for chunk in arr.chunks_mut(step << 1) {
                    let (lo, hi) = chunk.split_at_mut(step);
                    for (h, l) in hi.iter_mut().zip(lo.iter()) {
                        *h += *l;
                    }
                }
            }
        }
        (score, mass)
    }
}

impl OnlineLearner for ExpandedWinnow {
    fn n(&self) -> usize {
        self.features.n()
    }

    fn predict(&self, x: &[bool]) -> Label {
        self.state.predict_active(&self.features.active(x))
    }

    fn observe(&mut self, x: &[bool], truth: Label) -> bool {
        let active = self.features.active(x);
        self.state.update_active(&active, truth)
    }

    fn first_error(&self, labels: &[Label]) -> Option<usize> {
        let n = self.features.n();
        let (score, mass) = self.cube_scores();
        (0..labels.len()).find(|&i| {
            let predicted = self.state.decide(score[i], mass[i], || self.features.active(&point(i as u64, n)).into_iter());
            predicted != labels[i]
        })
    }
}

/// Outcome of one online run, with everything needed to reproduce it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MistakeRecord {
    pub learner: String,
    pub n: usize,
    pub d: usize,
    pub num_features: usize,
    pub alpha: String,
    pub theta: String,
    pub teacher: Teacher,
    pub seed: u64,
    pub max_trials: u64,
    pub trials: u64,
    pub mistakes: u64,
    pub mistake_trials: Vec<u64>,
    /// `None` when the cube is too large to check.
    pub final_consistent: Option<bool>,
    /// Weight of the target's threshold polynomial without its constant term.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_weight: Option<String>,
    /// The same plus the absolute constant term.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_weight_with_threshold: Option<String>,
}

pub const RECORD_CSV_HEADER: &str =
    "learner,n,d,num_features,alpha,theta,teacher,seed,max_trials,trials,mistakes,final_consistent";

impl MistakeRecord {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }

    pub fn csv_row(&self) -> String {
        let consistent = match self.final_consistent {
            Some(b) => b.to_string(),
            None => "unknown".to_string(),
        };
        let teacher = match self.teacher {
            Teacher::Iid => "iid",
            Teacher::Adversarial => "adversarial",
        };
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{}",
            self.learner,
            self.n,
            self.d,
            self.num_features,
            self.alpha,
            self.theta,
            teacher,
            self.seed,
            self.max_trials,
            self.trials,
            self.mistakes,
            consistent
        )
    }

    /// Attach the weight of a threshold polynomial representing the target.
    pub fn with_target(mut self, target: &crate::poly::IntPoly) -> Self {
        let total = target.weight();
        let constant = target.constant_term().abs();
        self.target_weight = Some((&total - &constant).to_string());
        self.target_weight_with_threshold = Some(total.to_string());
        self
    }
}

/// Counts from a run, before learner metadata is attached.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunCounts {
    pub trials: u64,
    pub mistakes: u64,
    pub mistake_trials: Vec<u64>,
    pub final_consistent: Option<bool>,
}

/// The target's labels over the whole cube, in lexicographic order.
pub fn cube_labels(concept: &Concept) -> Result<Vec<Label>> {
    let n = concept.n();
    let limit = exhaustion_limit();
    if n > limit {
        return Err(Error::ExhaustionLimit { n, limit });
    }
    Ok((0..1u64 << n).into_par_iter().map(|i| Label::from_bool(concept.eval_unchecked(&point(i, n)) > 0)).collect())
}

/// Drives any learner against a teacher.
pub fn run_learner<L: OnlineLearner>(
    learner: &mut L,
    concept: &Concept,
    teacher: Teacher,
    max_trials: u64,
    seed: u64,
) -> Result<RunCounts> {
    let n = concept.n();
    if learner.n() != n {
        return Err(Error::DimensionMismatch { expected: n, got: learner.n() });
    }
    let mut counts = RunCounts { trials: 0, mistakes: 0, mistake_trials: Vec::new(), final_consistent: None };
    match teacher {
        Teacher::Adversarial => {
            let labels = cube_labels(concept)?;
            loop {
                let Some(i) = learner.first_error(&labels) else {
                    counts.final_consistent = Some(true);
                    break;
                };
                if counts.trials >= max_trials {
                    counts.final_consistent = Some(false);
                    break;
                }
                counts.trials += 1;
                let erred = learner.observe(&point(i as u64, n), labels[i]);
                debug_assert!(erred);
                if erred {
                    counts.mistakes += 1;
                    counts.mistake_trials.push(counts.trials);
                }
            }
        }
        Teacher::Iid => {
            let mut rng = SeedSplitter::new(seed).rng(0);
            let mut x = vec![false; n];
            while counts.trials < max_trials {
                for b in x.iter_mut() {
                    *b = rng.gen();
                }
                check_len(&x, n)?;
                counts.trials += 1;
                let truth = Label::from_bool(concept.eval_unchecked(&x) > 0);
                if learner.observe(&x, truth) {
                    counts.mistakes += 1;
                    counts.mistake_trials.push(counts.trials);
                }
            }
            if n <= exhaustion_limit() {
                let labels = cube_labels(concept)?;
                counts.final_consistent = Some(learner.first_error(&labels).is_none());
            }
        }
    }
    Ok(counts)
}

/// Expanded Winnow on `concept` under `teacher`.
pub fn run_online(
    concept: &Concept,
    config: &LearnerConfig,
    teacher: Teacher,
    max_trials: u64,
    seed: u64,
) -> Result<MistakeRecord> {
    let mut learner = ExpandedWinnow::new(concept.n(), config)?;
    let counts = run_learner(&mut learner, concept, teacher, max_trials, seed)?;
    Ok(winnow_record(&learner, counts, teacher, max_trials, seed))
}

/// Record for a finished Winnow run.
pub fn winnow_record(
    learner: &ExpandedWinnow,
    counts: RunCounts,
    teacher: Teacher,
    max_trials: u64,
    seed: u64,
) -> MistakeRecord {
    let fm = learner.features();
    let name = if fm.d() == 1 { "winnow" } else { "expanded_winnow" };
    MistakeRecord {
        learner: name.to_string(),
        n: fm.n(),
        d: fm.d(),
        num_features: fm.len(),
        alpha: learner.state().alpha().to_string(),
        theta: learner.state().theta().to_string(),
        teacher,
        seed,
        max_trials,
        trials: counts.trials,
        mistakes: counts.mistakes,
        mistake_trials: counts.mistake_trials,
        final_consistent: counts.final_consistent,
        target_weight: None,
        target_weight_with_threshold: None,
    }
}

/// `mistakes / (W^2 · d · log2 N)`, computed in log space so huge `W` is fine.
pub fn envelope_ratio(mistakes: u64, weight: &BigInt, d: usize, num_features: usize) -> f64 {
    let log_n = (num_features as f64).log2();
    if mistakes == 0 {
        return 0.0;
    }
    let log_denominator = 2.0 * log2_big(weight) + (d as f64).log2() + log_n.log2();
    ((mistakes as f64).log2() - log_denominator).exp2()
}

mod ratio_text {
    use num_rational::BigRational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        text.trim().parse().map_err(|_| D::Error::custom(format!("bad rational {text:?}")))
    }
}

mod opt_ratio_text {
    use num_rational::BigRational;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(r) => super::ratio_text::serialize(r, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<BigRational>, D::Error> {
        super::ratio_text::deserialize(d).map(Some)
    }
}

#[cfg(test)]
mod tests;

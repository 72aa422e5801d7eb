use super::*;
use crate::boolean::random_parity;
use num_traits::ToPrimitive;

fn parity_sample(n: usize, k: usize, m: usize, seed: u64) -> (ParityFunction, LabeledSample) {
    let target = random_parity(k, n, seed).unwrap();
    let mut rng = SeedSplitter::new(seed).rng(5);
    let t = target.clone();
    let sample = LabeledSample::draw(n, m, move |x| t.eval(x).unwrap(), &mut rng).unwrap();
    (target, sample)
}

#[test]
fn widths() {
    assert_eq!(restricted_width(128, 3).unwrap(), 26);
    assert_eq!(restricted_width(100, 1).unwrap(), 1);
    assert_eq!(restricted_width(64, 2).unwrap(), 8);
    assert_eq!(restricted_width(65, 2).unwrap(), 9);
    assert_eq!(restricted_width(10, 10).unwrap(), 8);
    assert!(restricted_width(4, 5).is_err());
    for n in 1..200 {
        for k in 1..=n.min(6) {
            let l = restricted_width(n, k).unwrap();
            assert_eq!(l, ((n as f64).powf(1.0 - 1.0 / k as f64) - 1e-9).ceil().max(1.0) as usize, "{n} {k}");
        }
    }
}

#[test]
fn occam_sizes() {
    assert_eq!(occam_sample_size(128, 3, 0.1, 0.1).unwrap(), 1854);
    assert_eq!(occam_sample_size(2, 1, 1.0, 0.5).unwrap(), 2);
    let a = occam_sample_size(128, 3, 0.05, 0.1).unwrap();
    let b = occam_sample_size(128, 3, 0.1, 0.1).unwrap();
    assert!(a.abs_diff(2 * b) <= 1);
    assert!(occam_sample_size(128, 3, 0.0, 0.1).is_err());
    assert!(occam_sample_size(128, 3, 0.1, 1.5).is_err());
}

#[test]
fn exact_success_probabilities() {
    let p = trial_success_probability(128, 3, 26).unwrap();
    assert_eq!(p, BigRational::new(15600.into(), 2048256.into()));
    assert!(p.to_f64().unwrap() >= 1.0 / 256.0);
    assert_eq!(trial_success_probability(10, 0, 4).unwrap(), BigRational::one());
    assert_eq!(trial_success_probability(10, 3, 10).unwrap(), BigRational::one());
    assert_eq!(trial_success_probability(50, 1, 1).unwrap(), BigRational::new(1.into(), 50.into()));
    assert!(trial_success_probability(10, 4, 3).is_err());
}

#[test]
fn sample_text_round_trip() {
    let (_, sample) = parity_sample(9, 2, 20, 3);
    let text = sample.to_text();
    assert_eq!(text.lines().next().unwrap().len(), 9 + 1 + if sample.examples()[0].1 == Label::Neg { 2 } else { 1 });
    assert_eq!(LabeledSample::parse(&text).unwrap(), sample);
    assert!(LabeledSample::parse("0101 2\n").is_err());
    assert!(LabeledSample::parse("0101\n").is_err());
    assert!(LabeledSample::parse("0101 1\n011 -1\n").is_err());
}

#[test]
fn standard_learner_is_consistent() {
    for seed in 0..20 {
        let (_, sample) = parity_sample(30, 4, 25, seed);
        let h = standard_parity_learner(&sample).unwrap().expect("target is feasible");
        assert!(sample.examples().iter().all(|(x, y)| h.eval(x) == *y));
        assert!(h.weight() <= 25.min(30));
    }
}

#[test]
fn trial_succeeds_when_support_is_kept() {
    let (target, sample) = parity_sample(128, 3, 1854, 1);
    let mut kept_hits = 0;
    for seed in 0..3000 {
        let cols = kept_columns(128, 26, seed);
        let h = trial_with_columns(&sample, &cols).unwrap();
        if target.support().iter().all(|v| cols.contains(v)) {
            kept_hits += 1;
            let found = h.as_ref().expect("restricted system keeps the target");
            assert!(satisfies(sample.matrix(), sample.rhs(), &found.coefficients));
        }
        if let Some(h) = h {
            assert!(h.weight() <= 26);
        }
    }
    assert!(kept_hits > 0);
}

#[test]
fn dropped_support_usually_fails() {
    let (target, sample) = parity_sample(128, 3, 1854, 2);
    let mut dropped = 0;
    let mut failed = 0;
    for seed in 0..500 {
        let cols = kept_columns(128, 26, seed);
        if target.support().iter().all(|v| cols.contains(v)) {
            continue;
        }
        dropped += 1;
        failed += trial_with_columns(&sample, &cols).unwrap().is_none() as usize;
    }
    assert!(failed as f64 >= 0.99 * dropped as f64);
}

#[test]
fn learns_singletons() {
    for seed in 0..5 {
        let target = random_parity(1, 40, seed).unwrap();
        let t = target.clone();
        let task = ParityTask { n: 40, k: 1, eps: 0.1, delta: 0.1, seed, max_trials: None };
        let run = learn_parity(move |x| t.eval(x).unwrap(), &task).unwrap();
        assert!(!run.used_standard);
        assert_eq!(run.hypothesis.support(), target.support());
        assert!(run.hypothesis.trials <= task.max_trials());
    }
}

#[test]
fn wide_case_uses_standard_learner() {
    let target = random_parity(4, 12, 0).unwrap();
    let t = target.clone();
    let task = ParityTask { n: 12, k: 4, eps: 0.1, delta: 0.1, seed: 0, max_trials: None };
    let run = learn_parity(move |x| t.eval(x).unwrap(), &task).unwrap();
    assert!(run.used_standard);
    assert!(run.sample.examples().iter().all(|(x, y)| run.hypothesis.eval(x) == *y));
}

#[test]
fn exhausted_trials_are_an_error() {
    // labels from a dense parity cannot be fit with 26 kept columns
    let target = random_parity(100, 128, 0).unwrap();
    let task = ParityTask { n: 128, k: 3, eps: 0.1, delta: 0.1, seed: 0, max_trials: Some(5) };
    let err = learn_parity(move |x| target.eval(x).unwrap(), &task).unwrap_err();
    assert!(matches!(err, Error::TrialsExhausted(5)));
}

#[test]
fn report_fields() {
    let target = random_parity(3, 64, 4).unwrap();
    let t = target.clone();
    let task = ParityTask { n: 64, k: 3, eps: 0.2, delta: 0.1, seed: 4, max_trials: None };
    let run = learn_parity(move |x| t.eval(x).unwrap(), &task).unwrap();
    let err = holdout_error(&run.hypothesis, &target, 2000, 4);
    let report = ParityReport::new(&run, 3, None, err).unwrap();
    assert_eq!(report.ell, 16);
    assert_eq!(report.m, occam_sample_size(64, 3, 0.2, 0.1).unwrap());
    assert_eq!(report.success_freq, 1.0 / run.hypothesis.trials as f64);
    let json = serde_json::to_string(&report).unwrap();
    assert_eq!(serde_json::from_str::<ParityReport>(&json).unwrap(), report);
}

#[test]
fn frequency_is_deterministic() {
    let (_, sample) = parity_sample(64, 2, 300, 8);
    let a = success_frequency(&sample, 2, 400, 1).unwrap();
    assert_eq!(a, success_frequency(&sample, 2, 400, 1).unwrap());
    let p = trial_success_probability(64, 2, 8).unwrap().to_f64().unwrap();
    let sd = (400.0 * p * (1.0 - p)).sqrt();
    assert!((a as f64 - 400.0 * p).abs() <= 4.0 * sd + 1.0);
}

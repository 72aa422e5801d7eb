use super::*;
use crate::boolean::{random_decision_list, DecisionList, Literal};
use crate::ptf::main_ptf;

fn list_concept(k: usize, n: usize, seed: u64) -> Concept {
    random_decision_list(k, n, seed).unwrap().into()
}

#[test]
fn config_for_lists() {
    assert_eq!(expanded_winnow_for_list(1, 10).unwrap().d, 1);
    let k8 = expanded_winnow_for_list(8, 20).unwrap();
    let list = random_decision_list(8, 8, 3).unwrap();
    assert_eq!(k8.d, main_ptf(&list).unwrap().degree());
    assert_eq!(k8, expanded_winnow_for_list(8, 20).unwrap());
    assert_eq!(k8.alpha.to_string(), "3/2");
    assert!(expanded_winnow_for_list(0, 4).is_err());
}

#[test]
fn constant_target_needs_few_mistakes() {
    for default in [Label::Neg, Label::Pos] {
        let concept: Concept = DecisionList::new(10, vec![], default).unwrap().into();
        let cfg = expanded_winnow_for_list(1, 10).unwrap();
        let rec = run_online(&concept, &cfg, Teacher::Adversarial, 10_000, 0).unwrap();
        assert_eq!(rec.final_consistent, Some(true));
        assert!(rec.mistakes <= 12, "{} mistakes", rec.mistakes);
    }
}

#[test]
fn adversarial_runs_reach_consistency() {
    for seed in 0..4 {
        let concept = list_concept(4, 10, seed);
        let cfg = expanded_winnow_for_list(4, 10).unwrap();
        let rec = run_online(&concept, &cfg, Teacher::Adversarial, 1_000_000, seed).unwrap();
        assert_eq!(rec.final_consistent, Some(true));
        assert_eq!(rec.trials, rec.mistakes);
        assert_eq!(rec.mistake_trials, (1..=rec.mistakes).collect::<Vec<_>>());
    }
}

#[test]
fn fast_scan_matches_direct_predictions() {
    let concept = list_concept(3, 7, 11);
    let labels = cube_labels(&concept).unwrap();
    let mut learner = ExpandedWinnow::new(7, &LearnerConfig::balanced(2)).unwrap();
    for _ in 0..40 {
        let slow = (0..labels.len()).find(|&i| learner.predict(&point(i as u64, 7)) != labels[i]);
        assert_eq!(learner.first_error(&labels), slow);
        let Some(i) = slow else { break };
        learner.observe(&point(i as u64, 7), labels[i]);
    }
}

#[test]
fn hypothesis_is_a_low_degree_threshold() {
    let concept = list_concept(4, 8, 5);
    let cfg = LearnerConfig::balanced(2);
    let mut learner = ExpandedWinnow::new(8, &cfg).unwrap();
    run_learner(&mut learner, &concept, Teacher::Iid, 300, 9).unwrap();
    let p = learner.hypothesis_poly();
    assert!(p.degree() <= 2);
    for x in crate::bits::cube(8) {
        let v = p.eval(&x).unwrap();
        let by_poly = Label::from_bool(!v.is_negative());
        assert_eq!(by_poly, learner.predict(&x));
    }
}

#[test]
fn iid_learns_single_variable() {
    let concept: Concept = DecisionList::new(12, vec![(Literal::pos(0), Label::Pos)], Label::Neg).unwrap().into();
    let rec = run_online(&concept, &LearnerConfig::balanced(1), Teacher::Iid, 10_000, 1).unwrap();
    assert_eq!(rec.final_consistent, Some(true));
    assert_eq!(rec.trials, 10_000);
}

#[test]
fn runs_are_deterministic() {
    let concept = list_concept(3, 8, 2);
    let cfg = LearnerConfig::balanced(2);
    for teacher in [Teacher::Iid, Teacher::Adversarial] {
        let a = run_online(&concept, &cfg, teacher, 500, 77).unwrap();
        let b = run_online(&concept, &cfg, teacher, 500, 77).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
    let parity: Concept = crate::boolean::ParityFunction::new(8, vec![0, 3]).unwrap().into();
    let a = run_online(&parity, &cfg, Teacher::Iid, 500, 1).unwrap();
    let b = run_online(&parity, &cfg, Teacher::Iid, 500, 2).unwrap();
    assert_ne!(a.mistake_trials, b.mistake_trials);
}

#[test]
fn float_mode_runs() {
    let concept = list_concept(3, 8, 4);
    let cfg = LearnerConfig { arithmetic: Arithmetic::Float, ..LearnerConfig::balanced(2) };
    let rec = run_online(&concept, &cfg, Teacher::Adversarial, 100_000, 0).unwrap();
    assert_eq!(rec.final_consistent, Some(true));
}

#[test]
fn adversarial_teacher_respects_limit() {
    std::env::remove_var(crate::bits::EXHAUSTION_LIMIT_ENV);
    let concept = list_concept(2, 30, 0);
    let err = run_online(&concept, &LearnerConfig::balanced(1), Teacher::Adversarial, 10, 0).unwrap_err();
    assert!(matches!(err, Error::ExhaustionLimit { .. }));
}

#[test]
fn record_serialization() {
    let concept = list_concept(2, 6, 1);
    let list = random_decision_list(2, 6, 1).unwrap();
    let rec = run_online(&concept, &LearnerConfig::balanced(2), Teacher::Adversarial, 1000, 0)
        .unwrap()
        .with_target(&main_ptf(&list).unwrap().poly);
    let back: MistakeRecord = serde_json::from_str(&rec.to_json()).unwrap();
    assert_eq!(back, rec);
    assert_eq!(rec.theta, "22");
    assert!(rec.csv_row().starts_with("expanded_winnow,6,2,22,3/2,22,adversarial,0,1000,"));
    assert_eq!(RECORD_CSV_HEADER.split(',').count(), rec.csv_row().split(',').count());
    let cfg: LearnerConfig = serde_json::from_str(r#"{"d":3,"alpha":"2","theta":"7/2"}"#).unwrap();
    assert_eq!(cfg.theta_for(100).to_string(), "7/2");
}

#[test]
fn envelope_ratio_in_log_space() {
    let w = BigInt::from(2).pow(600);
    assert_eq!(envelope_ratio(0, &w, 2, 16), 0.0);
    let r = envelope_ratio(8, &BigInt::from(2), 2, 16);
    assert!((r - 8.0 / (4.0 * 2.0 * 4.0)).abs() < 1e-12);
    assert!(envelope_ratio(1000, &w, 2, 16) < 1e-300 || envelope_ratio(1000, &w, 2, 16) == 0.0);
}

#[test]
fn baselines_learn_small_lists() {
    for seed in 0..3 {
        let concept = list_concept(3, 6, seed);
        let mut list = ListLearner::new(6);
        let counts = run_learner(&mut list, &concept, Teacher::Adversarial, 10_000, 0).unwrap();
        assert_eq!(counts.final_consistent, Some(true));
        let mut halving = HalvingLearner::new(6, 3).unwrap();
        let start = halving.version_space();
        let counts = run_learner(&mut halving, &concept, Teacher::Adversarial, 10_000, 0).unwrap();
        assert_eq!(counts.final_consistent, Some(true));
        assert!(counts.mistakes as f64 <= (start as f64).log2());
    }
    assert!(HalvingLearner::new(9, 2).is_err());
}

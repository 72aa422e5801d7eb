//! Seeded generators for test and experiment concepts.

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{
    Conjunction, DecisionList, DecisionTree, Label, Literal, ParityFunction, RDecisionList,
    TreeNode,
};
use crate::error::{invalid, Result};
use crate::rng::stream_rng;

fn label(rng: &mut ChaCha8Rng) -> Label {
    Label::from_bool(rng.gen())
}

/// Length-`k` list over `k` distinct variables of `{x_1..x_n}`, uniform signs and labels.
pub fn random_decision_list(k: usize, n: usize, seed: u64) -> Result<DecisionList> {
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = stream_rng(seed, 0);
    let vars = sample(&mut rng, n, k).into_vec();
    let items = vars
        .into_iter()
        .map(|v| (Literal { var: v, negated: rng.gen() }, label(&mut rng)))
        .collect();
    let default = label(&mut rng);
    DecisionList::new(n, items, default)
}

/// Parity over `k` distinct variables chosen uniformly.
pub fn random_parity(k: usize, n: usize, seed: u64) -> Result<ParityFunction> {
    if k > n {
        return Err(invalid(format!("k = {k} exceeds n = {n}")));
    }
    let mut rng = stream_rng(seed, 1);
    ParityFunction::new(n, sample(&mut rng, n, k).into_vec())
}

/// Length-`k` r-decision list; each condition has between 1 and `r` literals.
pub fn random_rdl(k: usize, n: usize, r: usize, seed: u64) -> Result<RDecisionList> {
    if r == 0 || r > n {
        return Err(invalid(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    let mut rng = stream_rng(seed, 2);
    let mut items = Vec::with_capacity(k);
    for _ in 0..k {
        let width = rng.gen_range(1..=r);
        let lits = sample(&mut rng, n, width)
            .into_iter()
            .map(|v| Literal { var: v, negated: rng.gen() })
            .collect();
        items.push((Conjunction::new(lits)?, label(&mut rng)));
    }
    let default = label(&mut rng);
    RDecisionList::new(n, r, items, default)
}

/// Random tree with between 1 and `max_leaves` leaves (fewer if `n` runs out).
pub fn random_tree(n: usize, max_leaves: usize, seed: u64) -> Result<DecisionTree> {
    if max_leaves == 0 {
        return Err(invalid("a tree needs at least one leaf"));
    }
    let mut rng = stream_rng(seed, 3);
    let leaves = rng.gen_range(1..=max_leaves);
    let mut avail: Vec<usize> = (0..n).collect();
    let root = grow(&mut rng, &mut avail, leaves);
    DecisionTree::new(n, root)
}

fn grow(rng: &mut ChaCha8Rng, avail: &mut Vec<usize>, leaves: usize) -> TreeNode {
    if leaves <= 1 || avail.is_empty() {
        return TreeNode::Leaf(label(rng));
    }
    let pick = rng.gen_range(0..avail.len());
    let var = avail.swap_remove(pick);
    let left = rng.gen_range(1..leaves);
    let zero = grow(rng, avail, left);
    let one = grow(rng, avail, leaves - left);
    avail.push(var);
    TreeNode::split(var, zero, one)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_and_distinct() {
        assert!(random_decision_list(0, 5, 0).unwrap().is_empty());
        assert_eq!(random_decision_list(3, 8, 7), random_decision_list(3, 8, 7));
        for seed in 1..=1000 {
            let l = random_decision_list(3, 8, seed).unwrap();
            let mut vars: Vec<usize> = l.items().iter().map(|(lit, _)| lit.var).collect();
            vars.sort_unstable();
            vars.dedup();
            assert_eq!(vars.len(), 3);
        }
        assert!(random_decision_list(9, 8, 0).is_err());
        assert!(random_parity(9, 8, 0).is_err());
        assert_eq!(random_parity(3, 128, 5).unwrap().k(), 3);
    }

    #[test]
    fn trees_respect_budget() {
        for seed in 0..100 {
            let t = random_tree(10, 16, seed).unwrap();
            assert!(t.size() <= 16);
        }
    }

    #[test]
    fn rdl_widths() {
        let l = random_rdl(6, 8, 3, 11).unwrap();
        assert_eq!(l.len(), 6);
        assert!(l.max_width() <= 3);
    }
}

use std::collections::HashSet;

use crate::bits::point;
use crate::boolean::{Label, Literal};
use crate::error::{invalid, Result};

use super::OnlineLearner;

/// Online decision-list learner by levels: every candidate rule starts at
/// level 0, prediction uses the first firing rule at the lowest level, and a
/// mistake pushes each wrong rule at that level down one.
#[derive(Clone, Debug)]
pub struct ListLearner {
    n: usize,
    // `None` is the always-firing rule
    rules: Vec<(Option<Literal>, Label)>,
    levels: Vec<u32>,
}

impl ListLearner {
    pub fn new(n: usize) -> Self {
        let mut rules = Vec::with_capacity(4 * n + 2);
        for var in 0..n {
            for lit in [Literal::pos(var), Literal::neg(var)] {
                for b in [Label::Neg, Label::Pos] {
                    rules.push((Some(lit), b));
                }
            }
        }
        rules.push((None, Label::Neg));
        rules.push((None, Label::Pos));
        let levels = vec![0; rules.len()];
        Self { n, rules, levels }
    }

    fn fires(&self, r: usize, x: &[bool]) -> bool {
        self.rules[r].0.map_or(true, |l| l.fires(x))
    }

    fn lowest_firing_level(&self, x: &[bool]) -> u32 {
        (0..self.rules.len()).filter(|&r| self.fires(r, x)).map(|r| self.levels[r]).min().unwrap_or(0)
    }
}

impl OnlineLearner for ListLearner {
    fn n(&self) -> usize {
        self.n
    }

    fn predict(&self, x: &[bool]) -> Label {
        let level = self.lowest_firing_level(x);
        (0..self.rules.len())
            .find(|&r| self.levels[r] == level && self.fires(r, x))
            .map(|r| self.rules[r].1)
            .unwrap_or(Label::Neg)
    }

    fn observe(&mut self, x: &[bool], truth: Label) -> bool {
        if self.predict(x) == truth {
            return false;
        }
        let level = self.lowest_firing_level(x);
        for r in 0..self.rules.len() {
            if self.levels[r] == level && self.rules[r].1 != truth && self.fires(r, x) {
                self.levels[r] += 1;
            }
        }
        true
    }
}

pub const HALVING_MAX_K: usize = 3;
pub const HALVING_MAX_N: usize = 8;

/// The halving algorithm over every decision list of length at most `k`,
/// each kept as its truth table.
#[derive(Clone, Debug)]
pub struct HalvingLearner {
    n: usize,
    tables: Vec<[u64; 4]>,
}

impl HalvingLearner {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if n > HALVING_MAX_N || k > HALVING_MAX_K {
            return Err(invalid(format!(
                "halving is only run for k <= {HALVING_MAX_K} and n <= {HALVING_MAX_N}, got k = {k}, n = {n}"
            )));
        }
        let mut seen = HashSet::new();
        let points: Vec<Vec<bool>> = (0..1u64 << n).map(|i| point(i, n)).collect();
        enumerate(&points, n, k, &mut Vec::new(), &mut seen);
        let mut tables: Vec<[u64; 4]> = seen.into_iter().collect();
        tables.sort_unstable();
        Ok(Self { n, tables })
    }

    /// Hypotheses still consistent with every mistake so far.
    pub fn version_space(&self) -> usize {
        self.tables.len()
    }
}

fn bit(table: &[u64; 4], i: usize) -> bool {
    table[i >> 6] >> (i & 63) & 1 == 1
}

fn enumerate(points: &[Vec<bool>], n: usize, k: usize, prefix: &mut Vec<(Literal, Label)>, out: &mut HashSet<[u64; 4]>) {
    for default in [Label::Neg, Label::Pos] {
        let mut table = [0u64; 4];
        for (i, x) in points.iter().enumerate() {
            let y = prefix.iter().find(|(l, _)| l.fires(x)).map_or(default, |(_, b)| *b);
            if y == Label::Pos {
                table[i >> 6] |= 1 << (i & 63);
            }
        }
        out.insert(table);
    }
    if prefix.len() == k {
        return;
    }
    for var in 0..n {
        if prefix.iter().any(|(l, _)| l.var == var) {
            continue;
        }
        for lit in [Literal::pos(var), Literal::neg(var)] {
            for b in [Label::Neg, Label::Pos] {
                prefix.push((lit, b));
                enumerate(points, n, k, prefix, out);
                prefix.pop();
            }
        }
    }
}

impl OnlineLearner for HalvingLearner {
    fn n(&self) -> usize {
        self.n
    }

    /// Majority vote; ties go to `-1`.
    fn predict(&self, x: &[bool]) -> Label {
        let i = crate::bits::lex_index(x) as usize;
        let pos = self.tables.iter().filter(|t| bit(t, i)).count();
        Label::from_bool(2 * pos > self.tables.len())
    }

    fn observe(&mut self, x: &[bool], truth: Label) -> bool {
        if self.predict(x) == truth {
            return false;
        }
        let i = crate::bits::lex_index(x) as usize;
        self.tables.retain(|t| bit(t, i) == (truth == Label::Pos));
        true
    }
}

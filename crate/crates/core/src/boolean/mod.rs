//! Concept classes over `{0,1}^n`: decision lists and their variants,
//! decision trees, and parities.
//!
//! Variables are 0-based internally and printed 1-based (`x_1` is index 0).

mod convert;
mod json;
mod random;

pub use convert::{split_blocks, tree_rank, tree_to_rdl, Blocks};
pub use json::Concept;
pub use random::{random_decision_list, random_parity, random_rdl, random_tree};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::check_len;
use crate::error::{invalid, Error, Result};

/// A ±1 output value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Label {
    Neg,
    Pos,
}

impl Label {
    pub fn value(self) -> i64 {
        match self {
            Label::Neg => -1,
            Label::Pos => 1,
        }
    }

    /// `(-1)^i`.
    pub fn alternating(i: usize) -> Label {
        if i % 2 == 0 {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    pub fn from_bool(positive: bool) -> Label {
        if positive {
            Label::Pos
        } else {
            Label::Neg
        }
    }

    pub fn flip(self) -> Label {
        match self {
            Label::Neg => Label::Pos,
            Label::Pos => Label::Neg,
        }
    }
}

impl TryFrom<i64> for Label {
    type Error = Error;

    fn try_from(v: i64) -> Result<Label> {
        match v {
            1 => Ok(Label::Pos),
            -1 => Ok(Label::Neg),
            other => Err(Error::Parse(format!("label must be -1 or 1, got {other}"))),
        }
    }
}

impl From<Label> for i64 {
    fn from(l: Label) -> i64 {
        l.value()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Neg => "-1",
            Label::Pos => "+1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: usize) -> Self {
        Self { var, negated: false }
    }

    pub fn neg(var: usize) -> Self {
        Self { var, negated: true }
    }

    #[inline]
    pub fn fires(&self, x: &[bool]) -> bool {
        x[self.var] != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "!x_{}", self.var + 1)
        } else {
            write!(f, "x_{}", self.var + 1)
        }
    }
}

fn check_var(var: usize, n: usize) -> Result<()> {
    if var < n {
        Ok(())
    } else {
        Err(Error::VariableOutOfRange { index: var, n })
    }
}

/// Conjunction of literals over distinct variables. The empty conjunction is true.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Conjunction {
    literals: Vec<Literal>,
}

impl Conjunction {
    pub fn new(mut literals: Vec<Literal>) -> Result<Self> {
        literals.sort();
        for w in literals.windows(2) {
            if w[0].var == w[1].var {
                return Err(Error::RepeatedVariable(w[0].var));
            }
        }
        Ok(Self { literals })
    }

    pub fn literals(&self) -> &[Literal] {
        &self.literals
    }

    pub fn width(&self) -> usize {
        self.literals.len()
    }

    pub fn eval(&self, x: &[bool]) -> bool {
        self.literals.iter().all(|l| l.fires(x))
    }

    /// `literal ∧ self`, or an error if `literal`'s variable already occurs.
    pub fn with(&self, literal: Literal) -> Result<Self> {
        let mut lits = self.literals.clone();
        lits.push(literal);
        Self::new(lits)
    }
}

impl fmt::Display for Conjunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.literals.is_empty() {
            return f.write_str("true");
        }
        for (i, l) in self.literals.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// `(ℓ_1,b_1),…,(ℓ_k,b_k),b_{k+1}`: the first firing literal decides.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionList {
    n: usize,
    items: Vec<(Literal, Label)>,
    default: Label,
}

impl DecisionList {
    pub fn new(n: usize, items: Vec<(Literal, Label)>, default: Label) -> Result<Self> {
        for (l, _) in &items {
            check_var(l.var, n)?;
        }
        Ok(Self { n, items, default })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Length `k`.
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(Literal, Label)] {
        &self.items
    }

    pub fn default_label(&self) -> Label {
        self.default
    }

    pub fn eval(&self, x: &[bool]) -> Result<Label> {
        check_len(x, self.n)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> Label {
        self.items
            .iter()
            .find(|(l, _)| l.fires(x))
            .map_or(self.default, |&(_, b)| b)
    }

    /// The same list viewed as an r-decision list with width-1 conditions.
    pub fn to_rdl(&self) -> RDecisionList {
        let items = self
            .items
            .iter()
            .map(|&(l, b)| (Conjunction { literals: vec![l] }, b))
            .collect();
        RDecisionList { n: self.n, r: 1, items, default: self.default }
    }
}

/// ODDMAXBIT_n = `(x_1,−1),(x_2,+1),…,(x_n,(−1)^n),(−1)^{n+1}`.
pub fn oddmaxbit(n: usize) -> Result<DecisionList> {
    if n == 0 {
        return Err(invalid("oddmaxbit requires n >= 1"));
    }
    let items = (0..n).map(|i| (Literal::pos(i), Label::alternating(i + 1))).collect();
    DecisionList::new(n, items, Label::alternating(n + 1))
}

/// A decision list whose fall-off value is 0. Output range `{−1, 0, +1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModifiedDecisionList {
    n: usize,
    items: Vec<(Literal, Label)>,
}

impl ModifiedDecisionList {
    pub fn new(n: usize, items: Vec<(Literal, Label)>) -> Result<Self> {
        for (l, _) in &items {
            check_var(l.var, n)?;
        }
        Ok(Self { n, items })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(Literal, Label)] {
        &self.items
    }

    pub fn eval(&self, x: &[bool]) -> Result<i64> {
        check_len(x, self.n)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> i64 {
        self.items
            .iter()
            .find(|(l, _)| l.fires(x))
            .map_or(0, |&(_, b)| b.value())
    }
}

/// Decision list over conjunctions of at most `r` literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RDecisionList {
    n: usize,
    r: usize,
    items: Vec<(Conjunction, Label)>,
    default: Label,
}

impl RDecisionList {
    pub fn new(n: usize, r: usize, items: Vec<(Conjunction, Label)>, default: Label) -> Result<Self> {
        for (c, _) in &items {
            if c.width() > r {
                return Err(invalid(format!("conjunction {c} wider than r = {r}")));
            }
            for l in c.literals() {
                check_var(l.var, n)?;
            }
        }
        Ok(Self { n, r, items, default })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[(Conjunction, Label)] {
        &self.items
    }

    pub fn default_label(&self) -> Label {
        self.default
    }

    /// Widest conjunction actually present.
    pub fn max_width(&self) -> usize {
        self.items.iter().map(|(c, _)| c.width()).max().unwrap_or(0)
    }

    pub fn eval(&self, x: &[bool]) -> Result<Label> {
        check_len(x, self.n)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> Label {
        self.items
            .iter()
            .find(|(c, _)| c.eval(x))
            .map_or(self.default, |(_, b)| *b)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TreeNode {
    Leaf(Label),
    Split { var: usize, zero: Box<TreeNode>, one: Box<TreeNode> },
}

impl TreeNode {
    pub fn split(var: usize, zero: TreeNode, one: TreeNode) -> TreeNode {
        TreeNode::Split { var, zero: Box::new(zero), one: Box::new(one) }
    }

    fn leaves(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 1,
            TreeNode::Split { zero, one, .. } => zero.leaves() + one.leaves(),
        }
    }

    fn depth(&self) -> usize {
        match self {
            TreeNode::Leaf(_) => 0,
            TreeNode::Split { zero, one, .. } => 1 + zero.depth().max(one.depth()),
        }
    }

    fn validate(&self, n: usize, path: &mut Vec<usize>) -> Result<()> {
        if let TreeNode::Split { var, zero, one } = self {
            check_var(*var, n)?;
            if path.contains(var) {
                return Err(Error::RepeatedVariable(*var));
            }
            path.push(*var);
            zero.validate(n, path)?;
            one.validate(n, path)?;
            path.pop();
        }
        Ok(())
    }

    fn eval(&self, x: &[bool]) -> Label {
        let mut node = self;
        loop {
            match node {
                TreeNode::Leaf(b) => return *b,
                TreeNode::Split { var, zero, one } => {
                    node = if x[*var] { one } else { zero };
                }
            }
        }
    }
}

/// Binary decision tree; no variable repeats on a root-to-leaf path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecisionTree {
    n: usize,
    root: TreeNode,
}

impl DecisionTree {
    pub fn new(n: usize, root: TreeNode) -> Result<Self> {
        root.validate(n, &mut Vec::new())?;
        Ok(Self { n, root })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn root(&self) -> &TreeNode {
        &self.root
    }

    /// Size = number of leaves.
    pub fn size(&self) -> usize {
        self.root.leaves()
    }

    pub fn depth(&self) -> usize {
        self.root.depth()
    }

    pub fn eval(&self, x: &[bool]) -> Result<Label> {
        check_len(x, self.n)?;
        Ok(self.root.eval(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> Label {
        self.root.eval(x)
    }
}

/// χ_S: +1 when an even number of support variables are set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParityFunction {
    n: usize,
    support: Vec<usize>,
}

impl ParityFunction {
    pub fn new(n: usize, mut support: Vec<usize>) -> Result<Self> {
        support.sort_unstable();
        support.dedup();
        for &v in &support {
            check_var(v, n)?;
        }
        Ok(Self { n, support })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `|S|`.
    pub fn k(&self) -> usize {
        self.support.len()
    }

    pub fn eval(&self, x: &[bool]) -> Result<Label> {
        check_len(x, self.n)?;
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> Label {
        let odd = self.support.iter().filter(|&&v| x[v]).count() % 2 == 1;
        Label::from_bool(!odd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::{cube, parse_bits};

    fn bits(s: &str) -> Vec<bool> {
        parse_bits(s).unwrap()
    }

    #[test]
    fn decision_list_first_firing_wins() {
        let l = DecisionList::new(
            2,
            vec![(Literal::pos(0), Label::Pos), (Literal::pos(1), Label::Neg)],
            Label::Pos,
        )
        .unwrap();
        assert_eq!(l.eval(&bits("01")).unwrap(), Label::Neg);
        assert_eq!(l.eval(&bits("11")).unwrap(), Label::Pos);
        assert_eq!(l.eval(&bits("00")).unwrap(), Label::Pos);
        assert!(l.eval(&bits("0")).is_err());
    }

    #[test]
    fn empty_list_returns_default() {
        let l = DecisionList::new(3, vec![], Label::Neg).unwrap();
        for x in cube(3) {
            assert_eq!(l.eval(&x).unwrap(), Label::Neg);
        }
    }

    #[test]
    fn oddmaxbit_shape() {
        let one = oddmaxbit(1).unwrap();
        assert_eq!(one.items(), &[(Literal::pos(0), Label::Neg)]);
        assert_eq!(one.default_label(), Label::Pos);
        let two = oddmaxbit(2).unwrap();
        assert_eq!(two.items(), &[(Literal::pos(0), Label::Neg), (Literal::pos(1), Label::Pos)]);
        assert_eq!(two.default_label(), Label::Neg);
        let four = oddmaxbit(4).unwrap();
        assert_eq!(four.eval(&bits("0010")).unwrap(), Label::Neg);
        assert_eq!(four.eval(&bits("0000")).unwrap(), Label::Neg);
        assert!(oddmaxbit(0).is_err());
    }

    #[test]
    fn oddmaxbit_is_sign_of_first_set_bit() {
        for n in 1..=16 {
            let l = oddmaxbit(n).unwrap();
            for x in cube(n) {
                let expected = match x.iter().position(|&b| b) {
                    Some(i) => Label::alternating(i + 1),
                    None => Label::alternating(n + 1),
                };
                assert_eq!(l.eval(&x).unwrap(), expected);
            }
        }
    }

    #[test]
    fn modified_list_falls_off_to_zero() {
        let f = ModifiedDecisionList::new(
            2,
            vec![(Literal::pos(0), Label::Pos), (Literal::pos(1), Label::Neg)],
        )
        .unwrap();
        assert_eq!(f.eval(&bits("00")).unwrap(), 0);
        assert_eq!(f.eval(&bits("11")).unwrap(), 1);
        assert_eq!(f.eval(&bits("01")).unwrap(), -1);
        let g = ModifiedDecisionList::new(1, vec![(Literal::neg(0), Label::Neg)]).unwrap();
        assert_eq!(g.eval(&bits("0")).unwrap(), -1);
        assert_eq!(g.eval(&bits("1")).unwrap(), 0);
    }

    #[test]
    fn parity_and_tree() {
        let p = ParityFunction::new(4, vec![0, 2]).unwrap();
        assert_eq!(p.eval(&bits("1010")).unwrap(), Label::Pos);
        assert_eq!(p.eval(&bits("1000")).unwrap(), Label::Neg);
        let t = DecisionTree::new(
            3,
            TreeNode::split(0, TreeNode::Leaf(Label::Neg), TreeNode::Leaf(Label::Pos)),
        )
        .unwrap();
        assert_eq!(t.eval(&bits("100")).unwrap(), Label::Pos);
        assert_eq!(t.eval(&bits("011")).unwrap(), Label::Neg);
        assert_eq!(t.size(), 2);
    }

    #[test]
    fn rejects_malformed_concepts() {
        assert!(DecisionList::new(2, vec![(Literal::pos(2), Label::Pos)], Label::Pos).is_err());
        assert!(Conjunction::new(vec![Literal::pos(1), Literal::neg(1)]).is_err());
        let repeated = TreeNode::split(
            0,
            TreeNode::split(0, TreeNode::Leaf(Label::Pos), TreeNode::Leaf(Label::Neg)),
            TreeNode::Leaf(Label::Pos),
        );
        assert_eq!(DecisionTree::new(2, repeated), Err(Error::RepeatedVariable(0)));
        let c = Conjunction::new(vec![Literal::pos(0), Literal::pos(1)]).unwrap();
        assert!(RDecisionList::new(2, 1, vec![(c, Label::Pos)], Label::Neg).is_err());
    }

    #[test]
    fn rdl_eval() {
        let c = Conjunction::new(vec![Literal::pos(0), Literal::neg(1)]).unwrap();
        let l = RDecisionList::new(3, 2, vec![(c, Label::Neg)], Label::Pos).unwrap();
        assert_eq!(l.eval(&bits("100")).unwrap(), Label::Neg);
        assert_eq!(l.eval(&bits("110")).unwrap(), Label::Pos);
    }
}

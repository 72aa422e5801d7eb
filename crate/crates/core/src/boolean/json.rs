//! Canonical JSON for concepts. Variables are written 1-based:
//! `{"kind": "decision_list", "n": 3, "items": [[1, false, 1], ...], "default": -1}`.

use serde::{Deserialize, Serialize};

use super::{
    Conjunction, DecisionList, DecisionTree, Label, Literal, ModifiedDecisionList, ParityFunction,
    RDecisionList, TreeNode,
};
use crate::error::{Error, Result};

/// Any concept this crate can represent, evaluate and serialize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Concept {
    DecisionList(DecisionList),
    ModifiedDecisionList(ModifiedDecisionList),
    RDecisionList(RDecisionList),
    DecisionTree(DecisionTree),
    Parity(ParityFunction),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum Wire {
    DecisionList { n: usize, items: Vec<(usize, bool, Label)>, default: Label },
    ModifiedDecisionList { n: usize, items: Vec<(usize, bool, Label)> },
    RDecisionList { n: usize, r: usize, items: Vec<(Vec<(usize, bool)>, Label)>, default: Label },
    DecisionTree { n: usize, root: WireNode },
    Parity { n: usize, support: Vec<usize> },
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum WireNode {
    Leaf { leaf: Label },
    Split { var: usize, zero: Box<WireNode>, one: Box<WireNode> },
}

fn lit_to_wire(l: &Literal) -> (usize, bool) {
    (l.var + 1, l.negated)
}

fn lit_from_wire(var: usize, negated: bool) -> Result<Literal> {
    if var == 0 {
        return Err(Error::Parse("variables are numbered from 1".into()));
    }
    Ok(Literal { var: var - 1, negated })
}

fn items_to_wire(items: &[(Literal, Label)]) -> Vec<(usize, bool, Label)> {
    items.iter().map(|(l, b)| (l.var + 1, l.negated, *b)).collect()
}

fn items_from_wire(items: Vec<(usize, bool, Label)>) -> Result<Vec<(Literal, Label)>> {
    items
        .into_iter()
        .map(|(v, neg, b)| Ok((lit_from_wire(v, neg)?, b)))
        .collect()
}

fn node_to_wire(node: &TreeNode) -> WireNode {
    match node {
        TreeNode::Leaf(b) => WireNode::Leaf { leaf: *b },
        TreeNode::Split { var, zero, one } => WireNode::Split {
            var: var + 1,
            zero: Box::new(node_to_wire(zero)),
            one: Box::new(node_to_wire(one)),
        },
    }
}

fn node_from_wire(node: WireNode) -> Result<TreeNode> {
    Ok(match node {
        WireNode::Leaf { leaf } => TreeNode::Leaf(leaf),
        WireNode::Split { var, zero, one } => TreeNode::split(
            lit_from_wire(var, false)?.var,
            node_from_wire(*zero)?,
            node_from_wire(*one)?,
        ),
    })
}

impl Concept {
    pub fn n(&self) -> usize {
        match self {
            Concept::DecisionList(c) => c.n(),
            Concept::ModifiedDecisionList(c) => c.n(),
            Concept::RDecisionList(c) => c.n(),
            Concept::DecisionTree(c) => c.n(),
            Concept::Parity(c) => c.n(),
        }
    }

    /// Value on `x`: ±1 for every kind, with 0 for a modified list falling off.
    pub fn eval(&self, x: &[bool]) -> Result<i64> {
        Ok(match self {
            Concept::DecisionList(c) => c.eval(x)?.value(),
            Concept::ModifiedDecisionList(c) => c.eval(x)?,
            Concept::RDecisionList(c) => c.eval(x)?.value(),
            Concept::DecisionTree(c) => c.eval(x)?.value(),
            Concept::Parity(c) => c.eval(x)?.value(),
        })
    }

    pub(crate) fn eval_unchecked(&self, x: &[bool]) -> i64 {
        match self {
            Concept::DecisionList(c) => c.eval_unchecked(x).value(),
            Concept::ModifiedDecisionList(c) => c.eval_unchecked(x),
            Concept::RDecisionList(c) => c.eval_unchecked(x).value(),
            Concept::DecisionTree(c) => c.eval_unchecked(x).value(),
            Concept::Parity(c) => c.eval_unchecked(x).value(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_wire()).expect("concept serialization is infallible")
    }

    pub fn from_json(s: &str) -> Result<Concept> {
        let wire: Wire = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Concept::from_wire(wire)
    }

    fn to_wire(&self) -> Wire {
        match self {
            Concept::DecisionList(c) => Wire::DecisionList {
                n: c.n(),
                items: items_to_wire(c.items()),
                default: c.default_label(),
            },
            Concept::ModifiedDecisionList(c) => {
                Wire::ModifiedDecisionList { n: c.n(), items: items_to_wire(c.items()) }
            }
            Concept::RDecisionList(c) => Wire::RDecisionList {
                n: c.n(),
                r: c.r(),
                items: c
                    .items()
                    .iter()
                    .map(|(conj, b)| (conj.literals().iter().map(lit_to_wire).collect(), *b))
                    .collect(),
                default: c.default_label(),
            },
            Concept::DecisionTree(c) => Wire::DecisionTree { n: c.n(), root: node_to_wire(c.root()) },
            Concept::Parity(c) => Wire::Parity {
                n: c.n(),
                support: c.support().iter().map(|v| v + 1).collect(),
            },
        }
    }

    fn from_wire(wire: Wire) -> Result<Concept> {
        Ok(match wire {
            Wire::DecisionList { n, items, default } => {
                Concept::DecisionList(DecisionList::new(n, items_from_wire(items)?, default)?)
            }
            Wire::ModifiedDecisionList { n, items } => {
                Concept::ModifiedDecisionList(ModifiedDecisionList::new(n, items_from_wire(items)?)?)
            }
            Wire::RDecisionList { n, r, items, default } => {
                let items = items
                    .into_iter()
                    .map(|(lits, b)| {
                        let lits = lits
                            .into_iter()
                            .map(|(v, neg)| lit_from_wire(v, neg))
                            .collect::<Result<Vec<_>>>()?;
                        Ok((Conjunction::new(lits)?, b))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Concept::RDecisionList(RDecisionList::new(n, r, items, default)?)
            }
            Wire::DecisionTree { n, root } => {
                Concept::DecisionTree(DecisionTree::new(n, node_from_wire(root)?)?)
            }
            Wire::Parity { n, support } => {
                let support = support
                    .into_iter()
                    .map(|v| lit_from_wire(v, false).map(|l| l.var))
                    .collect::<Result<Vec<_>>>()?;
                Concept::Parity(ParityFunction::new(n, support)?)
            }
        })
    }
}

impl From<DecisionList> for Concept {
    fn from(c: DecisionList) -> Self {
        Concept::DecisionList(c)
    }
}

impl From<ModifiedDecisionList> for Concept {
    fn from(c: ModifiedDecisionList) -> Self {
        Concept::ModifiedDecisionList(c)
    }
}

impl From<RDecisionList> for Concept {
    fn from(c: RDecisionList) -> Self {
        Concept::RDecisionList(c)
    }
}

impl From<DecisionTree> for Concept {
    fn from(c: DecisionTree) -> Self {
        Concept::DecisionTree(c)
    }
}

impl From<ParityFunction> for Concept {
    fn from(c: ParityFunction) -> Self {
        Concept::Parity(c)
    }
}

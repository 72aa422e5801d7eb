use num_bigint::BigInt;

use super::{
    Conjunction, DecisionList, DecisionTree, Label, Literal, ModifiedDecisionList, RDecisionList,
    TreeNode,
};
use crate::error::{invalid, Result};

/// A decision list cut into consecutive modified decision lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Blocks {
    /// Nominal block length; the last block may be shorter.
    pub h: usize,
    pub blocks: Vec<ModifiedDecisionList>,
    pub default: Label,
}

impl Blocks {
    /// `Σ_i base^{K−i+1} f_i(x) + b_{k+1}` with `K` blocks.
    pub fn weighted_sum(&self, x: &[bool], base: u32) -> BigInt {
        let count = self.blocks.len();
        let mut total = BigInt::from(self.default.value());
        for (i, f) in self.blocks.iter().enumerate() {
            let exp = (count - i) as u32;
            total += BigInt::from(base).pow(exp) * f.eval_unchecked(x);
        }
        total
    }

    /// Evaluates the list through its block decomposition.
    pub fn eval(&self, x: &[bool], base: u32) -> Label {
        let s = self.weighted_sum(x, base);
        Label::from_bool(s > BigInt::from(0))
    }
}

/// Splits `list` into `⌈k/h⌉` consecutive blocks of length `h` (last may be short).
pub fn split_blocks(list: &DecisionList, h: usize) -> Result<Blocks> {
    if h == 0 {
        return Err(invalid("block length h must be at least 1"));
    }
    let blocks = list
        .items()
        .chunks(h)
        .map(|chunk| ModifiedDecisionList::new(list.n(), chunk.to_vec()))
        .collect::<Result<Vec<_>>>()?;
    Ok(Blocks { h, blocks, default: list.default_label() })
}

/// Rank: 0 at a leaf; `max(r0, r1)` if the children differ, else `r0 + 1`.
pub fn tree_rank(tree: &DecisionTree) -> usize {
    node_rank(tree.root())
}

fn node_rank(node: &TreeNode) -> usize {
    match node {
        TreeNode::Leaf(_) => 0,
        TreeNode::Split { zero, one, .. } => {
            let (r0, r1) = (node_rank(zero), node_rank(one));
            if r0 == r1 {
                r0 + 1
            } else {
                r0.max(r1)
            }
        }
    }
}

/// Converts a tree into an equivalent r-decision list with `r = rank(T)`.
///
/// At each split the child of smaller rank (the 0-child on ties) is listed
/// first with every condition prefixed by the literal that leads to it, closed
/// off by that child's default; the other child's list follows unchanged.
/// The result has exactly `s − 1` items.
pub fn tree_to_rdl(tree: &DecisionTree) -> Result<RDecisionList> {
    let (items, default) = rdl_items(tree.root())?;
    RDecisionList::new(tree.n(), tree_rank(tree), items, default)
}

fn rdl_items(node: &TreeNode) -> Result<(Vec<(Conjunction, Label)>, Label)> {
    match node {
        TreeNode::Leaf(b) => Ok((Vec::new(), *b)),
        TreeNode::Split { var, zero, one } => {
            let (first, lit, second) = if node_rank(zero) <= node_rank(one) {
                (zero, Literal::neg(*var), one)
            } else {
                (one, Literal::pos(*var), zero)
            };
            let (first_items, first_default) = rdl_items(first)?;
            let mut items = first_items
                .into_iter()
                .map(|(c, b)| Ok((c.with(lit)?, b)))
                .collect::<Result<Vec<_>>>()?;
            items.push((Conjunction::new(vec![lit])?, first_default));
            let (rest, default) = rdl_items(second)?;
            items.extend(rest);
            Ok((items, default))
        }
    }
}

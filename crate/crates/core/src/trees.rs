//! Weakly decreasing binary plane trees and the in-order bijections onto
//! words.
//!
//! `fast = P ∘ S_R⁻¹` and `slow = P ∘ S_L⁻¹`, where `P` is the postorder
//! reading and `S_R⁻¹`, `S_L⁻¹` rebuild the unique tree of class R (no vertex
//! shares its label with its left child) or L (no vertex shares its label
//! with its right child) whose in-order reading is the given word.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sorters::SortVariant;
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum PlaneTree {
    #[default]
    Empty,
    Node {
        label: u8,
        left: Box<PlaneTree>,
        right: Box<PlaneTree>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TreeClass {
    L,
    R,
}

impl TreeClass {
    pub fn for_variant(v: SortVariant) -> TreeClass {
        match v {
            SortVariant::Fast => TreeClass::R,
            SortVariant::Slow => TreeClass::L,
        }
    }
}

impl PlaneTree {
    pub fn leaf(label: u8) -> Self {
        PlaneTree::node(label, PlaneTree::Empty, PlaneTree::Empty)
    }

    pub fn node(label: u8, left: PlaneTree, right: PlaneTree) -> Self {
        PlaneTree::Node {
            label,
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, PlaneTree::Empty)
    }

    pub fn label(&self) -> Option<u8> {
        match self {
            PlaneTree::Empty => None,
            PlaneTree::Node { label, .. } => Some(*label),
        }
    }

    pub fn size(&self) -> usize {
        match self {
            PlaneTree::Empty => 0,
            PlaneTree::Node { left, right, .. } => 1 + left.size() + right.size(),
        }
    }

    fn in_order_into(&self, out: &mut Vec<u8>) {
        if let PlaneTree::Node { label, left, right } = self {
            left.in_order_into(out);
            out.push(*label);
            right.in_order_into(out);
        }
    }

    fn postorder_into(&self, out: &mut Vec<u8>) {
        if let PlaneTree::Node { label, left, right } = self {
            left.postorder_into(out);
            right.postorder_into(out);
            out.push(*label);
        }
    }

    /// Every child label is at most its parent's.
    pub fn is_weakly_decreasing(&self) -> bool {
        match self {
            PlaneTree::Empty => true,
            PlaneTree::Node { label, left, right } => [left, right].iter().all(|c| {
                c.label().is_none_or(|l| l <= *label) && c.is_weakly_decreasing()
            }),
        }
    }
}

/// The in-order reading `S(t)`.
pub fn in_order(t: &PlaneTree) -> Word {
    let mut out = Vec::with_capacity(t.size());
    t.in_order_into(&mut out);
    Word::from_raw(out)
}

/// The postorder reading `P(t)`.
pub fn postorder(t: &PlaneTree) -> Word {
    let mut out = Vec::with_capacity(t.size());
    t.postorder_into(&mut out);
    Word::from_raw(out)
}

fn inverse(w: &[u8], class: TreeClass) -> PlaneTree {
    let Some(&n) = w.iter().max() else {
        return PlaneTree::Empty;
    };
    let split = match class {
        TreeClass::R => w.iter().position(|&x| x == n),
        TreeClass::L => w.iter().rposition(|&x| x == n),
    }
    .expect("maximum is present");
    PlaneTree::node(
        n,
        inverse(&w[..split], class),
        inverse(&w[split + 1..], class),
    )
}

/// Splits at the first copy of the largest letter, so equal labels only
/// ever hang to the right.
pub fn s_r_inverse(w: &Word) -> PlaneTree {
    inverse(w, TreeClass::R)
}

/// Splits at the last copy of the largest letter, so equal labels only
/// ever hang to the left.
pub fn s_l_inverse(w: &Word) -> PlaneTree {
    inverse(w, TreeClass::L)
}

pub fn s_inverse(w: &Word, class: TreeClass) -> PlaneTree {
    inverse(w, class)
}

/// Weakly decreasing, plus the class restriction on equal-label children.
pub fn in_class(t: &PlaneTree, class: TreeClass) -> bool {
    match t {
        PlaneTree::Empty => true,
        PlaneTree::Node { label, left, right } => {
            let forbidden_side = match class {
                TreeClass::R => left,
                TreeClass::L => right,
            };
            if forbidden_side.label() == Some(*label) {
                return false;
            }
            [left, right]
                .iter()
                .all(|c| c.label().is_none_or(|l| l <= *label) && in_class(c, class))
        }
    }
}

/// `fast` or `slow` computed through the tree correspondence.
pub fn sort_via_trees(w: &Word, variant: SortVariant) -> Word {
    postorder(&s_inverse(w, TreeClass::for_variant(variant)))
}

/// `(label left right)` with `.` for the empty tree.
impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneTree::Empty => f.write_str("."),
            PlaneTree::Node { label, left, right } => write!(f, "({label} {left} {right})"),
        }
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let tokens: Vec<String> = s
            .replace('(', " ( ")
            .replace(')', " ) ")
            .split_whitespace()
            .map(str::to_owned)
            .collect();
        let mut pos = 0;
        let tree = parse_tree(&tokens, &mut pos)?;
        if pos != tokens.len() {
            return Err(Error::parse("tree", "trailing input"));
        }
        Ok(tree)
    }
}

fn parse_tree(tokens: &[String], pos: &mut usize) -> Result<PlaneTree> {
    let tok = tokens
        .get(*pos)
        .ok_or_else(|| Error::parse("tree", "unexpected end of input"))?;
    *pos += 1;
    match tok.as_str() {
        "." => Ok(PlaneTree::Empty),
        "(" => {
            let label_tok = tokens
                .get(*pos)
                .ok_or_else(|| Error::parse("tree", "missing label"))?;
            let label: u8 = label_tok
                .parse()
                .map_err(|e| Error::parse("tree", format!("label {label_tok:?}: {e}")))?;
            if label == 0 {
                return Err(Error::parse("tree", "labels must be positive"));
            }
            *pos += 1;
            let left = parse_tree(tokens, pos)?;
            let right = parse_tree(tokens, pos)?;
            if tokens.get(*pos).map(String::as_str) != Some(")") {
                return Err(Error::parse("tree", "expected ')'"));
            }
            *pos += 1;
            Ok(PlaneTree::node(label, left, right))
        }
        other => Err(Error::parse("tree", format!("unexpected token {other:?}"))),
    }
}

//! Explicit preimage trees from a configuration and a spawned tuple.
//!
//! Leaves are attached right to left. A point that starts a hook hangs below
//! the hook's northeast endpoint; any other point `ℓ` hangs below the point
//! whose height is, in the spawned tree of the color class of `ℓ + 1`, the
//! parent of the latest earlier point of that class. For `slow` the tree is
//! then fixed up by swinging equal-label right children to the left.

use std::collections::HashMap;

use super::{enumerate_vhc, induced_coloring, Coloring, HookConfig, VhcFilter};
use crate::error::{Error, Limits, Result};
use crate::sorters::SortVariant;
use crate::trees::{in_order, PlaneTree};
use crate::word::Word;

/// All decreasing binary trees on `labels` whose postorder reading is
/// increasing, one per unlabeled shape: `C_n` of them.
pub fn increasing_postorder_trees(labels: &[u8]) -> Vec<PlaneTree> {
    let mut sorted = labels.to_vec();
    sorted.sort_unstable();
    trees_on_sorted(&sorted)
}

fn trees_on_sorted(labels: &[u8]) -> Vec<PlaneTree> {
    let Some((&root, rest)) = labels.split_last() else {
        return vec![PlaneTree::Empty];
    };
    let mut out = Vec::new();
    for k in 0..=rest.len() {
        let lefts = trees_on_sorted(&rest[..k]);
        let rights = trees_on_sorted(&rest[k..]);
        for l in &lefts {
            for r in &rights {
                out.push(PlaneTree::node(root, l.clone(), r.clone()));
            }
        }
    }
    out
}

/// Odometer over the per-class tree choices. Yields `C_{q^H}` tuples.
#[derive(Debug, Clone)]
pub struct SpawnTuples {
    choices: Vec<Vec<PlaneTree>>,
    digits: Vec<usize>,
    done: bool,
}

impl Iterator for SpawnTuples {
    type Item = Vec<PlaneTree>;

    fn next(&mut self) -> Option<Vec<PlaneTree>> {
        if self.done {
            return None;
        }
        let tuple = self
            .choices
            .iter()
            .zip(&self.digits)
            .map(|(c, &d)| c[d].clone())
            .collect();
        self.done = true;
        for (d, c) in self.digits.iter_mut().zip(&self.choices).rev() {
            *d += 1;
            if *d < c.len() {
                self.done = false;
                break;
            }
            *d = 0;
        }
        Some(tuple)
    }
}

/// Height sets `X_r(H)` of each color class.
fn class_heights(w: &[u8], coloring: &Coloring, k: usize) -> Vec<Vec<u8>> {
    coloring
        .classes(w, k)
        .into_iter()
        .map(|class| class.into_iter().map(|p| p.height).collect())
        .collect()
}

pub fn spawn_tuples(w: &Word, h: &HookConfig) -> Result<SpawnTuples> {
    let coloring = induced_coloring(w, h)?;
    let choices: Vec<Vec<PlaneTree>> = class_heights(w, &coloring, h.len())
        .iter()
        .map(|x| increasing_postorder_trees(x))
        .collect();
    Ok(SpawnTuples {
        digits: vec![0; choices.len()],
        choices,
        done: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

/// Parent height and side of every non-root label of a spawned tree.
fn parent_map(t: &PlaneTree, out: &mut HashMap<u8, (u8, Side)>) {
    if let PlaneTree::Node { label, left, right } = t {
        for (child, side) in [(left, Side::Left), (right, Side::Right)] {
            if let Some(c) = child.label() {
                out.insert(c, (*label, side));
            }
            parent_map(child, out);
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    label: u8,
    left: Option<usize>,
    right: Option<usize>,
}

fn to_tree(arena: &[Slot], i: usize) -> PlaneTree {
    let s = arena[i];
    PlaneTree::node(
        s.label,
        s.left.map_or(PlaneTree::Empty, |l| to_tree(arena, l)),
        s.right.map_or(PlaneTree::Empty, |r| to_tree(arena, r)),
    )
}

fn attach(arena: &mut [Slot], parent: usize, child: usize, side: Side) -> Result<()> {
    let slot = &mut arena[parent];
    let place = match side {
        Side::Left => &mut slot.left,
        Side::Right => &mut slot.right,
    };
    if place.is_some() {
        return Err(Error::Contract(format!(
            "point {} already has a {side:?} child",
            parent + 1
        )));
    }
    *place = Some(child);
    Ok(())
}

fn build_one(
    w: &[u8],
    h: &HookConfig,
    coloring: &Coloring,
    tuple: &[PlaneTree],
    variant: SortVariant,
) -> Result<PlaneTree> {
    let m = w.len();
    if m == 0 {
        return Ok(PlaneTree::Empty);
    }
    let k = h.len();
    let mut ne_of_sw = vec![None; m];
    for hook in h.hooks() {
        ne_of_sw[hook.sw.index - 1] = Some(hook.ne.index - 1);
    }
    let colors: Vec<usize> = coloring.colors().to_vec();
    // point of each height within each class
    let mut point_of: Vec<HashMap<u8, usize>> = vec![HashMap::new(); k + 1];
    for (p, &c) in colors.iter().enumerate() {
        point_of[c].insert(w[p], p);
    }
    let parents: Vec<HashMap<u8, (u8, Side)>> = tuple
        .iter()
        .map(|t| {
            let mut map = HashMap::new();
            parent_map(t, &mut map);
            map
        })
        .collect();

    let mut arena: Vec<Slot> = w
        .iter()
        .map(|&label| Slot {
            label,
            left: None,
            right: None,
        })
        .collect();
    for l in (0..m - 1).rev() {
        if let Some(j) = ne_of_sw[l] {
            let side = if arena[j].right.is_none() && arena[j].left.is_none() {
                Side::Right
            } else {
                Side::Left
            };
            attach(&mut arena, j, l, side)?;
        } else {
            let r = colors[l + 1];
            let u = (0..=l).rev().find(|&u| colors[u] == r).ok_or_else(|| {
                Error::Contract(format!("no earlier point shares the color of point {}", l + 2))
            })?;
            let &(parent_height, side) = parents[r].get(&w[u]).ok_or_else(|| {
                Error::Contract(format!("height {} is a root of its spawned tree", w[u]))
            })?;
            let v = point_of[r][&parent_height];
            if v <= l {
                return Err(Error::Contract(format!(
                    "attachment target {} lies left of point {}",
                    v + 1,
                    l + 1
                )));
            }
            attach(&mut arena, v, l, side)?;
        }
    }
    if variant == SortVariant::Slow {
        for d in 0..m {
            if let Some(c) = arena[d].right {
                if arena[c].label == arena[d].label {
                    if arena[d].left.is_some() {
                        return Err(Error::Contract(format!(
                            "cannot swing the right child of point {}",
                            d + 1
                        )));
                    }
                    arena[d].left = Some(c);
                    arena[d].right = None;
                }
            }
        }
    }
    Ok(to_tree(&arena, m - 1))
}

/// One tree per spawned tuple of `h`; each has postorder `w`.
pub fn build_preimage_trees(w: &Word, h: &HookConfig, variant: SortVariant) -> Result<Vec<PlaneTree>> {
    let filter = VhcFilter::for_variant(variant);
    if !h.is_valid(w) || !h.passes(filter) {
        return Err(Error::Contract(format!(
            "configuration is not in the {filter} family of {w}"
        )));
    }
    let coloring = induced_coloring(w, h)?;
    spawn_tuples(w, h)?
        .map(|tuple| build_one(w, h, &coloring, &tuple, variant))
        .collect()
}

/// In-order readings of every constructed tree over the whole family, in
/// construction order; duplicates are kept so callers can detect them.
pub fn preimages_via_trees(w: &Word, variant: SortVariant, limits: &Limits) -> Result<Vec<Word>> {
    let mut out = Vec::new();
    for h in enumerate_vhc(w, VhcFilter::for_variant(variant), limits)? {
        for t in build_preimage_trees(w, &h, variant)? {
            out.push(in_order(&t));
        }
    }
    Ok(out)
}

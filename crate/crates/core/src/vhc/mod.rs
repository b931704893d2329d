//! Valid hook configurations on the plot of a word, and the preimage counts
//! they produce.
//!
//! A configuration is a set of hooks `(i, w_i) → (j, w_j)` with `i < j` and
//! `w_i ≤ w_j`, one per southwest endpoint, such that every weak descent top
//! starts a hook, every northeast endpoint closes both a descent hook and a
//! small hook, and the open intervals `(i, j)` form a laminar family. The
//! families `H_R(w)` and `H_L(w)` count `fast` and `slow` preimages:
//! `|fast⁻¹(w)| = Σ_{H ∈ H_R(w)} C_{q^H}` and likewise for `slow` with `H_L`.

mod coloring;
mod construct;

pub use coloring::{catalan, catalan_product, induced_coloring, induced_composition, Coloring, Composition};
pub use construct::{
    build_preimage_trees, increasing_postorder_trees, preimages_via_trees, spawn_tuples,
    SpawnTuples,
};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::ser::SerializeTuple;
use serde::{Serialize, Serializer};

use crate::error::{Error, Limits, Result};
use crate::sorters::{sort, SortVariant};
use crate::word::{check_space, content, MultisetPermutations, Word};

/// A point `(index, height)` of the plot; `index` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PlotPoint {
    pub index: usize,
    pub height: u8,
}

impl PlotPoint {
    pub fn of(w: &[u8], index: usize) -> PlotPoint {
        PlotPoint {
            index,
            height: w[index - 1],
        }
    }
}

impl Serialize for PlotPoint {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut t = serializer.serialize_tuple(2)?;
        t.serialize_element(&self.index)?;
        t.serialize_element(&self.height)?;
        t.end()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Hook {
    pub sw: PlotPoint,
    pub ne: PlotPoint,
}

impl Hook {
    /// The hook between 1-based positions `i < j` of `w`, if legal.
    pub fn between(w: &[u8], i: usize, j: usize) -> Result<Hook> {
        if !(1 <= i && i < j && j <= w.len()) {
            return Err(Error::domain(format!("no hook from {i} to {j} in a word of length {}", w.len())));
        }
        let hook = Hook {
            sw: PlotPoint::of(w, i),
            ne: PlotPoint::of(w, j),
        };
        if hook.sw.height > hook.ne.height {
            return Err(Error::domain(format!(
                "hook from {i} to {j} would point downward"
            )));
        }
        Ok(hook)
    }

    pub fn is_horizontal(&self) -> bool {
        self.sw.height == self.ne.height
    }

    pub fn is_small(&self) -> bool {
        self.ne.index == self.sw.index + 1
    }

    /// A point strictly inside the horizontal span and not higher than the
    /// hook sees it when looking up; a point level with the horizontal part
    /// counts as below it. Endpoints are never below their hook.
    pub fn lies_above(&self, p: PlotPoint) -> bool {
        self.sw.index < p.index && p.index < self.ne.index && p.height <= self.ne.height
    }
}

/// Hooks in increasing order of southwest endpoint.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct HookConfig {
    hooks: Vec<Hook>,
}

/// The four defining conditions, checked separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VhcCondition {
    /// Southwest indices strictly increase.
    IncreasingSouthwest,
    /// Every descent top starts a hook.
    DescentTopsCovered,
    /// Every northeast endpoint closes a descent hook and a small hook.
    NortheastSupported,
    /// Hook intervals are pairwise nested or disjoint.
    Laminar,
}

impl VhcCondition {
    pub const ALL: [VhcCondition; 4] = [
        VhcCondition::IncreasingSouthwest,
        VhcCondition::DescentTopsCovered,
        VhcCondition::NortheastSupported,
        VhcCondition::Laminar,
    ];
}

/// Which sub-family of valid configurations to enumerate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VhcFilter {
    All,
    /// At most two hooks share a northeast endpoint.
    Binary,
    /// Binary, and every horizontal hook is small. Counts `fast` preimages.
    R,
    /// Binary, and no small horizontal hook shares its northeast endpoint.
    /// Counts `slow` preimages.
    L,
}

impl VhcFilter {
    pub fn for_variant(v: SortVariant) -> VhcFilter {
        match v {
            SortVariant::Fast => VhcFilter::R,
            SortVariant::Slow => VhcFilter::L,
        }
    }

    fn is_binary(self) -> bool {
        !matches!(self, VhcFilter::All)
    }
}

impl fmt::Display for VhcFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VhcFilter::All => "all",
            VhcFilter::Binary => "binary",
            VhcFilter::R => "R",
            VhcFilter::L => "L",
        })
    }
}

impl FromStr for VhcFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "ALL" => Ok(VhcFilter::All),
            "binary" | "BINARY" => Ok(VhcFilter::Binary),
            "R" | "r" => Ok(VhcFilter::R),
            "L" | "l" => Ok(VhcFilter::L),
            _ => Err(Error::parse("hook filter", format!("{s:?} (expected all, binary, R or L)"))),
        }
    }
}

impl HookConfig {
    /// Sorts the hooks by southwest endpoint. Legality of each hook is the
    /// caller's responsibility; use [`HookConfig::is_valid`] to check the rest.
    pub fn new(mut hooks: Vec<Hook>) -> Self {
        hooks.sort();
        HookConfig { hooks }
    }

    /// Builds a configuration from 1-based `(sw, ne)` index pairs.
    pub fn from_pairs(w: &[u8], pairs: &[(usize, usize)]) -> Result<Self> {
        let hooks = pairs
            .iter()
            .map(|&(i, j)| Hook::between(w, i, j))
            .collect::<Result<Vec<_>>>()?;
        Ok(HookConfig::new(hooks))
    }

    pub fn hooks(&self) -> &[Hook] {
        &self.hooks
    }

    pub fn len(&self) -> usize {
        self.hooks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hooks.is_empty()
    }

    fn incoming_count(&self, ne_index: usize) -> usize {
        self.hooks.iter().filter(|h| h.ne.index == ne_index).count()
    }

    pub fn satisfies(&self, w: &[u8], cond: VhcCondition) -> bool {
        let hooks = &self.hooks;
        match cond {
            VhcCondition::IncreasingSouthwest => {
                hooks.windows(2).all(|p| p[0].sw.index < p[1].sw.index)
            }
            VhcCondition::DescentTopsCovered => descent_tops(w)
                .iter()
                .all(|d| hooks.iter().any(|h| h.sw == *d)),
            VhcCondition::NortheastSupported => hooks.iter().all(|h| {
                let ne = h.ne;
                let closing = || hooks.iter().filter(move |g| g.ne == ne);
                closing().any(|g| is_descent(w, g.sw.index)) && closing().any(|g| g.is_small())
            }),
            VhcCondition::Laminar => hooks.iter().all(|a| {
                hooks.iter().all(|b| {
                    // open real intervals cross iff a.sw < b.sw < a.ne < b.ne
                    !(a.sw.index < b.sw.index
                        && b.sw.index < a.ne.index
                        && a.ne.index < b.ne.index)
                })
            }),
        }
    }

    /// All four conditions, plus legality of every hook against `w`.
    pub fn is_valid(&self, w: &[u8]) -> bool {
        self.hooks.iter().all(|h| {
            h.sw.index >= 1
                && h.sw.index < h.ne.index
                && h.ne.index <= w.len()
                && PlotPoint::of(w, h.sw.index) == h.sw
                && PlotPoint::of(w, h.ne.index) == h.ne
                && h.sw.height <= h.ne.height
        }) && VhcCondition::ALL.iter().all(|&c| self.satisfies(w, c))
    }

    pub fn is_binary(&self) -> bool {
        self.hooks.iter().all(|h| self.incoming_count(h.ne.index) <= 2)
    }

    /// Membership in the filtered family, assuming validity.
    pub fn passes(&self, filter: VhcFilter) -> bool {
        match filter {
            VhcFilter::All => true,
            VhcFilter::Binary => self.is_binary(),
            VhcFilter::R => {
                self.is_binary()
                    && self.hooks.iter().all(|h| !h.is_horizontal() || h.is_small())
            }
            VhcFilter::L => {
                self.is_binary()
                    && self.hooks.iter().all(|h| {
                        !(h.is_horizontal() && h.is_small()) || self.incoming_count(h.ne.index) == 1
                    })
            }
        }
    }
}

fn is_descent(w: &[u8], index: usize) -> bool {
    index >= 1 && index < w.len() && w[index - 1] >= w[index]
}

/// Points `(d, w_d)` with `w_d ≥ w_{d+1}`.
pub fn descent_tops(w: &[u8]) -> Vec<PlotPoint> {
    (1..w.len())
        .filter(|&d| is_descent(w, d))
        .map(|d| PlotPoint::of(w, d))
        .collect()
}

/// Depth-first search over southwest endpoints, left to right.
struct Search<'a> {
    w: &'a [u8],
    filter: VhcFilter,
    descent: Vec<bool>,
    /// Number of hooks already ending at each 0-based point.
    into: Vec<u8>,
    has_small: Vec<bool>,
    has_descent: Vec<bool>,
    /// 0-based `(sw, ne)` pairs.
    hooks: Vec<(usize, usize)>,
}

impl<'a> Search<'a> {
    fn new(w: &'a [u8], filter: VhcFilter) -> Self {
        let m = w.len();
        Search {
            w,
            filter,
            descent: (0..m).map(|i| i + 1 < m && w[i] >= w[i + 1]).collect(),
            into: vec![0; m],
            has_small: vec![false; m],
            has_descent: vec![false; m],
            hooks: Vec::with_capacity(m),
        }
    }

    /// Every hook into `p` has its southwest endpoint left of `p`, so once
    /// the scan reaches `p` its northeast obligations are settled.
    fn settled(&self, p: usize) -> bool {
        self.into[p] == 0 || (self.has_small[p] && self.has_descent[p])
    }

    fn run(&mut self, i: usize, emit: &mut dyn FnMut(&[(usize, usize)])) {
        let m = self.w.len();
        if m == 0 {
            emit(&self.hooks);
            return;
        }
        if i >= 1 && !self.settled(i) {
            return;
        }
        if i + 1 >= m {
            emit(&self.hooks);
            return;
        }
        if !self.descent[i] {
            self.run(i + 1, emit);
        }
        let w = self.w;
        let mut interior_max = 0u8;
        for j in i + 1..m {
            if j > i + 1 {
                interior_max = interior_max.max(w[j - 1]);
            }
            if w[j] < w[i] || interior_max > w[j] {
                continue;
            }
            if !self.allowed(i, j) {
                continue;
            }
            let small = j == i + 1;
            let (old_small, old_descent) = (self.has_small[j], self.has_descent[j]);
            self.into[j] += 1;
            self.has_small[j] |= small;
            self.has_descent[j] |= self.descent[i];
            self.hooks.push((i, j));
            self.run(i + 1, emit);
            self.hooks.pop();
            self.into[j] -= 1;
            self.has_small[j] = old_small;
            self.has_descent[j] = old_descent;
        }
    }

    fn allowed(&self, i: usize, j: usize) -> bool {
        let w = self.w;
        if self
            .hooks
            .iter()
            .any(|&(a, b)| a < i && i < b && b < j)
        {
            return false;
        }
        if self.filter.is_binary() && self.into[j] >= 2 {
            return false;
        }
        let horizontal = w[i] == w[j];
        let small = j == i + 1;
        match self.filter {
            VhcFilter::R if horizontal && !small => false,
            // the small hook into j is always the last one decided
            VhcFilter::L if horizontal && small && self.into[j] > 0 => false,
            _ => true,
        }
    }
}

fn to_config(w: &[u8], pairs: &[(usize, usize)]) -> HookConfig {
    HookConfig {
        hooks: pairs
            .iter()
            .map(|&(i, j)| Hook {
                sw: PlotPoint::of(w, i + 1),
                ne: PlotPoint::of(w, j + 1),
            })
            .collect(),
    }
}

fn check_vhc_len(w: &[u8], limits: &Limits) -> Result<()> {
    Limits::check(
        "word length for hook configurations",
        w.len() as u128,
        limits.max_vhc_len as u128,
    )
}

/// Calls `f` on every configuration in the family, in no particular order.
pub fn for_each_vhc(
    w: &Word,
    filter: VhcFilter,
    limits: &Limits,
    mut f: impl FnMut(&HookConfig),
) -> Result<()> {
    check_vhc_len(w, limits)?;
    let mut search = Search::new(w, filter);
    search.run(0, &mut |pairs| f(&to_config(w, pairs)));
    Ok(())
}

/// Every configuration in the family, ordered lexicographically by their
/// `(sw, ne)` sequences.
pub fn enumerate_vhc(w: &Word, filter: VhcFilter, limits: &Limits) -> Result<Vec<HookConfig>> {
    let mut out = Vec::new();
    for_each_vhc(w, filter, limits, |h| out.push(h.clone()))?;
    out.sort();
    Ok(out)
}

/// Preimage count by summing Catalan products over `H_R(w)` (fast) or
/// `H_L(w)` (slow).
pub fn count_preimages(w: &Word, variant: SortVariant, limits: &Limits) -> Result<BigUint> {
    let mut total = BigUint::zero();
    let mut colors = Vec::new();
    for_each_vhc(w, VhcFilter::for_variant(variant), limits, |h| {
        coloring::color_points(w, h.hooks(), &mut colors);
        let mut sizes = vec![0usize; h.len() + 1];
        for &c in &colors {
            sizes[c] += 1;
        }
        total += sizes.iter().map(|&q| catalan(q)).product::<BigUint>();
    })?;
    Ok(total)
}

/// `{u ∈ W_content(w) : sort(u) = w}` by exhaustion, in lexicographic order.
pub fn brute_preimages(w: &Word, variant: SortVariant, limits: &Limits) -> Result<Vec<Word>> {
    let c = content(w);
    check_space(&c, limits)?;
    let mut out = Vec::new();
    let mut buf = Vec::with_capacity(w.len());
    let mut stack = Vec::with_capacity(w.len());
    for u in MultisetPermutations::new(&c) {
        crate::sorters::stack_sort_into(&u, variant, &mut buf, &mut stack);
        if buf[..] == w[..] {
            out.push(u);
        }
    }
    debug_assert!(out.iter().all(|u| sort(u, variant) == *w));
    Ok(out)
}

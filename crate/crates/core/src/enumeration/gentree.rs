use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::word::Word;

/// How a node's label determines its children's labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SuccessionRule {
    /// A finite table `label -> child labels`.
    Explicit(BTreeMap<u64, Vec<u64>>),
    /// `(m) -> (ell+1)(ell+2)…(ell+m)`.
    FussCatalan { ell: u64 },
}

impl SuccessionRule {
    pub fn fibonacci() -> Self {
        SuccessionRule::Explicit(BTreeMap::from([(1, vec![2]), (2, vec![1, 2])]))
    }

    pub fn children(&self, label: u64) -> Result<Vec<u64>> {
        match self {
            SuccessionRule::Explicit(table) => table
                .get(&label)
                .cloned()
                .ok_or_else(|| Error::domain(format!("succession rule has no entry for label {label}"))),
            SuccessionRule::FussCatalan { ell } => Ok((1..=label).map(|i| ell + i).collect()),
        }
    }

    /// The axiom conventionally paired with a named rule.
    pub fn default_axiom(&self) -> Option<u64> {
        match self {
            SuccessionRule::FussCatalan { ell } => Some(ell + 1),
            SuccessionRule::Explicit(_) if *self == Self::fibonacci() => Some(2),
            SuccessionRule::Explicit(_) => None,
        }
    }
}

impl fmt::Display for SuccessionRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SuccessionRule::FussCatalan { ell } => write!(f, "fuss:{ell}"),
            SuccessionRule::Explicit(table) => {
                let parts: Vec<String> = table
                    .iter()
                    .map(|(k, v)| {
                        let v: Vec<String> = v.iter().map(|x| x.to_string()).collect();
                        format!("{k}->{}", v.join(","))
                    })
                    .collect();
                write!(f, "{}", parts.join(";"))
            }
        }
    }
}

/// Accepts `fibonacci`, `catalan`, `fuss:ELL`, or an inline table such as
/// `1->2;2->1,2` (an empty right side means no children).
impl FromStr for SuccessionRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |d: &str| Error::parse("succession rule", format!("{s:?}: {d}"));
        match s.to_ascii_lowercase().as_str() {
            "fibonacci" => return Ok(Self::fibonacci()),
            "catalan" => return Ok(SuccessionRule::FussCatalan { ell: 1 }),
            _ => {}
        }
        if let Some(ell) = s.strip_prefix("fuss:") {
            let ell: u64 = ell.trim().parse().map_err(|_| bad("ell must be a positive integer"))?;
            if ell == 0 {
                return Err(bad("ell must be a positive integer"));
            }
            return Ok(SuccessionRule::FussCatalan { ell });
        }
        let mut table = BTreeMap::new();
        for entry in s.split(';').map(str::trim).filter(|e| !e.is_empty()) {
            let (lhs, rhs) = entry.split_once("->").ok_or_else(|| bad("expected LABEL->CHILDREN"))?;
            let label: u64 = lhs.trim().parse().map_err(|_| bad("label must be an integer"))?;
            let kids = rhs
                .split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad("child labels must be integers"))?;
            if table.insert(label, kids).is_some() {
                return Err(bad("label listed twice"));
            }
        }
        if table.is_empty() {
            return Err(bad("no entries"));
        }
        Ok(SuccessionRule::Explicit(table))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenTreeSpec {
    pub axiom: u64,
    pub rule: SuccessionRule,
}

impl GenTreeSpec {
    pub fn fibonacci() -> Self {
        GenTreeSpec {
            axiom: 2,
            rule: SuccessionRule::fibonacci(),
        }
    }

    pub fn fuss_catalan(ell: u64) -> Self {
        GenTreeSpec {
            axiom: ell + 1,
            rule: SuccessionRule::FussCatalan { ell },
        }
    }
}

/// Node counts of levels `1..=depth`, tracking only how many nodes carry
/// each label.
pub fn generating_tree_level_counts(spec: &GenTreeSpec, depth: usize) -> Result<Vec<BigUint>> {
    if depth == 0 {
        return Err(Error::domain("depth must be at least 1"));
    }
    let mut level: BTreeMap<u64, BigUint> = BTreeMap::from([(spec.axiom, BigUint::one())]);
    let mut out = Vec::with_capacity(depth);
    for d in 1..=depth {
        out.push(level.values().sum());
        if d == depth {
            break;
        }
        let mut next: BTreeMap<u64, BigUint> = BTreeMap::new();
        for (&label, mult) in &level {
            for kid in spec.rule.children(label)? {
                *next.entry(kid).or_default() += mult;
            }
        }
        level = next;
    }
    Ok(out)
}

/// Positions `j` (1-based, up to `len + 1`) where a new largest letter may
/// be inserted into `w` without creating `231`: no `α < j ≤ β` with
/// `w_α > w_β`.
fn insertion_sites(w: &[u8]) -> Vec<usize> {
    let len = w.len();
    // min of each suffix
    let mut suffix_min = vec![u8::MAX; len + 1];
    for i in (0..len).rev() {
        suffix_min[i] = suffix_min[i + 1].min(w[i]);
    }
    let mut prefix_max = 0u8;
    let mut sites = Vec::new();
    for j in 1..=len + 1 {
        if prefix_max <= suffix_min[j - 1] {
            sites.push(j);
        }
        if j <= len {
            prefix_max = prefix_max.max(w[j - 1]);
        }
    }
    sites
}

/// Number of children of a uniform `{231, 221}`-avoider in the insertion
/// tree.
pub fn uniform_avoider_label(w: &Word) -> u64 {
    insertion_sites(w).len() as u64
}

/// Children of `w`: insert a first copy of the new maximum at each legal
/// site, then append the remaining `ell − 1` copies.
pub fn uniform_avoider_children(w: &Word, ell: usize) -> Vec<Word> {
    let n = w.max_letter() + 1;
    insertion_sites(w)
        .into_iter()
        .map(|j| {
            let mut v = Vec::with_capacity(w.len() + ell);
            v.extend_from_slice(&w[..j - 1]);
            v.push(n);
            v.extend_from_slice(&w[j - 1..]);
            v.extend(std::iter::repeat_n(n, ell - 1));
            Word::from_raw(v)
        })
        .collect()
}

/// Levels `1..=depth` of the insertion tree, each in generation order.
pub fn uniform_avoider_levels(ell: usize, depth: usize) -> Result<Vec<Vec<Word>>> {
    if ell == 0 || depth == 0 {
        return Err(Error::domain("ell and depth must be at least 1"));
    }
    let mut levels = vec![vec![Word::from_raw(vec![1; ell])]];
    while levels.len() < depth {
        let next = levels
            .last()
            .unwrap()
            .iter()
            .flat_map(|w| uniform_avoider_children(w, ell))
            .collect();
        levels.push(next);
    }
    Ok(levels)
}

//! Counting sortable words.
//!
//! `M(c)` counts the `fast`-sortable (231-avoiding) words of content `c` and
//! `N(c)` the `slow`-sortable ({231, 221}-avoiding) ones. Both are computed
//! by memoized recurrences; brute-force counters over `W_c` are exposed for
//! cross-checking.

mod gentree;
mod memo;

pub use gentree::{
    generating_tree_level_counts, uniform_avoider_children, uniform_avoider_label,
    uniform_avoider_levels, GenTreeSpec, SuccessionRule,
};
pub use memo::SortableCounter;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Limits, Result};
use crate::sorters::{distance_with, SortVariant};
use crate::word::{avoids_all, check_space, compositions, ContentVector, MultisetPermutations, Pattern};

/// `M(c)` with a fresh memo table.
pub fn count_fast_sortable(c: &ContentVector) -> BigUint {
    SortableCounter::new().fast(c)
}

/// `N(c)` with a fresh memo table. Zero entries are dropped first.
pub fn count_slow_sortable(c: &ContentVector) -> BigUint {
    SortableCounter::new().slow(c)
}

/// `binom(n, k)`, computed multiplicatively.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The `(ell + 1)`-Catalan number `binom((ell+1)n, n) / (ell·n + 1)`.
pub fn fuss_catalan(ell: u64, n: u64) -> BigUint {
    binomial((ell + 1) * n, n) / (ell * n + 1)
}

/// `|{w ∈ W_c : w avoids every pattern}|` by exhaustion.
pub fn brute_count_avoiders(c: &ContentVector, patterns: &[Pattern], limits: &Limits) -> Result<u128> {
    check_space(c, limits)?;
    Ok(MultisetPermutations::new(c)
        .filter(|w| avoids_all(w, patterns))
        .count() as u128)
}

/// `|{w ∈ W_c : ⟨w⟩ ≤ t}|` by exhaustion.
pub fn count_t_sortable(c: &ContentVector, t: usize, variant: SortVariant, limits: &Limits) -> Result<u128> {
    check_space(c, limits)?;
    let (mut a, mut b, mut s) = (Vec::new(), Vec::new(), Vec::new());
    Ok(MultisetPermutations::new(c)
        .filter(|w| distance_with(w, variant, &mut a, &mut b, &mut s) <= t)
        .count() as u128)
}

/// One row of the sortable-word table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortableRow {
    pub content: ContentVector,
    pub fast: BigUint,
    pub slow: BigUint,
}

/// `M` and `N` for every content vector with positive entries and total at
/// most `max_total`, ordered by total and then lexicographically.
pub fn sortable_table(counter: &SortableCounter, max_total: usize) -> Vec<SortableRow> {
    (1..=max_total)
        .flat_map(compositions)
        .map(|c| SortableRow {
            fast: counter.fast(&c),
            slow: counter.slow(&c),
            content: c,
        })
        .collect()
}

/// `c,M,N` lines with a header; the content vector is space-separated.
pub fn sortable_table_csv(rows: &[SortableRow]) -> String {
    let mut out = String::from("c,M,N\n");
    for r in rows {
        let c: Vec<String> = r.content.counts().iter().map(|x| x.to_string()).collect();
        out.push_str(&format!("{},{},{}\n", c.join(" "), r.fast, r.slow));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Word;

    fn c(v: &[usize]) -> ContentVector {
        ContentVector::new(v.to_vec())
    }

    fn pats(ps: &[&str]) -> Vec<Word> {
        ps.iter().map(|p| p.parse().unwrap()).collect()
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(count_fast_sortable(&c(&[2, 2])), 6u32.into());
        assert_eq!(count_fast_sortable(&c(&[7])), 1u32.into());
        assert_eq!(count_fast_sortable(&c(&[1, 1, 1])), 5u32.into());
        assert_eq!(count_fast_sortable(&c(&[])), 1u32.into());
        assert_eq!(count_fast_sortable(&c(&[0, 2])), 1u32.into());
        assert_eq!(count_slow_sortable(&c(&[3, 5])), 4u32.into());
        assert_eq!(count_slow_sortable(&c(&[2, 2, 2])), 12u32.into());
        assert_eq!(count_slow_sortable(&c(&[1, 1, 1])), 5u32.into());
        assert_eq!(count_slow_sortable(&c(&[])), 1u32.into());
        assert_eq!(count_slow_sortable(&c(&[2, 0, 2])), 3u32.into());
    }

    #[test]
    fn fuss_catalan_values() {
        for n in 0..8 {
            assert_eq!(fuss_catalan(1, n), crate::vhc::catalan(n as usize));
        }
        assert_eq!(fuss_catalan(2, 2), 3u32.into());
        assert_eq!(fuss_catalan(2, 4), 55u32.into());
        let firsts: Vec<u32> = (1..=4).map(|n| fuss_catalan(2, n).try_into().unwrap()).collect();
        assert_eq!(firsts, [1, 3, 12, 55]);
        assert_eq!(binomial(3, 5), 0u32.into());
        assert_eq!(binomial(40, 20).to_string(), "137846528820");
    }

    #[test]
    fn brute_examples() {
        let l = Limits::default();
        assert_eq!(brute_count_avoiders(&c(&[2, 2]), &pats(&["231", "221"]), &l).unwrap(), 3);
        assert_eq!(brute_count_avoiders(&c(&[2, 2]), &pats(&["231"]), &l).unwrap(), 6);
        assert_eq!(brute_count_avoiders(&c(&[1, 1, 1]), &pats(&["231"]), &l).unwrap(), 5);
    }

    #[test]
    fn t_sortable_examples() {
        let l = Limits::default();
        let cv = c(&[2, 1, 2]);
        assert_eq!(count_t_sortable(&cv, 0, SortVariant::Fast, &l).unwrap(), 1);
        assert_eq!(
            count_t_sortable(&cv, 1, SortVariant::Fast, &l).unwrap(),
            brute_count_avoiders(&cv, &pats(&["231"]), &l).unwrap()
        );
        assert_eq!(
            count_t_sortable(&cv, 1, SortVariant::Slow, &l).unwrap(),
            brute_count_avoiders(&cv, &pats(&["231", "221"]), &l).unwrap()
        );
        assert_eq!(count_t_sortable(&cv, 3, SortVariant::Slow, &l).unwrap(), 30);
    }

    #[test]
    fn csv_table() {
        let counter = SortableCounter::new();
        let rows = sortable_table(&counter, 2);
        let csv = sortable_table_csv(&rows);
        assert_eq!(csv, "c,M,N\n1,1,1\n1 1,2,2\n2,1,1\n");
    }
}

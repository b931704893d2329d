mod common;

use proptest::prelude::*;

use common::{configuration_invariants, normalized_upto, w};
use stacksort::sorters::{phi_asc, phi_des, psi, sort_permutation, sort_via_stack};
use stacksort::vhc::{count_preimages, enumerate_vhc};
use stacksort::word::{content, contains_pattern};
use stacksort::{ContentVector, Limits, SortVariant, SortableCounter, VhcFilter, Word};

fn word_strategy(max_len: usize, max_letter: u8) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=max_letter, 0..=max_len).prop_map(|v| Word::new(v).unwrap())
}

fn content_strategy(max_len: usize, max_entry: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(1..=max_entry, 1..=max_len)
}

proptest! {
    #[test]
    fn sorting_preserves_content(word in word_strategy(14, 6)) {
        for v in SortVariant::BOTH {
            prop_assert_eq!(content(&sort_via_stack(&word, v)), content(&word));
        }
    }

    #[test]
    fn sorting_reduces_to_permutations(word in word_strategy(12, 5)) {
        let c = content(&word);
        let fast = psi(&c, &sort_permutation(&phi_des(&word).unwrap()).unwrap()).unwrap();
        let slow = psi(&c, &sort_permutation(&phi_asc(&word).unwrap()).unwrap()).unwrap();
        prop_assert_eq!(fast, sort_via_stack(&word, SortVariant::Fast));
        prop_assert_eq!(slow, sort_via_stack(&word, SortVariant::Slow));
    }

    #[test]
    fn ascending_image_is_closed(word in word_strategy(12, 5)) {
        let c = content(&word);
        let p = sort_permutation(&phi_asc(&word).unwrap()).unwrap();
        let back = psi(&c, &p).unwrap();
        prop_assert_eq!(phi_asc(&back).unwrap(), p);
    }

    #[test]
    fn fast_sortable_iff_avoids_231(word in word_strategy(10, 4)) {
        let sorted = sort_via_stack(&word, SortVariant::Fast).is_identity();
        prop_assert_eq!(sorted, !contains_pattern(&word, &w("231")));
        let sorted = sort_via_stack(&word, SortVariant::Slow).is_identity();
        let avoids = !contains_pattern(&word, &w("231")) && !contains_pattern(&word, &w("221"));
        prop_assert_eq!(sorted, avoids);
    }

    #[test]
    fn m_is_symmetric(mut c in content_strategy(5, 4), seed in any::<u64>()) {
        let counter = SortableCounter::new();
        let base = counter.fast(&ContentVector::new(c.clone()));
        // a deterministic shuffle driven by the seed
        let mut s = seed;
        for i in (1..c.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            c.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert_eq!(counter.fast(&ContentVector::new(c)), base);
    }

    #[test]
    fn n_ignores_last_entry(mut c in content_strategy(5, 4), a in 1usize..8, b in 1usize..8) {
        let counter = SortableCounter::new();
        c.push(a);
        let x = counter.slow(&ContentVector::new(c.clone()));
        *c.last_mut().unwrap() = b;
        prop_assert_eq!(counter.slow(&ContentVector::new(c)), x);
    }

    #[test]
    fn m_dominates_n(c in content_strategy(5, 4)) {
        let counter = SortableCounter::new();
        let cv = ContentVector::new(c.clone());
        let (m, n) = (counter.fast(&cv), counter.slow(&cv));
        prop_assert!(m >= n);
        prop_assert_eq!(m == n, c[1..].iter().all(|&x| x == 1));
    }

    #[test]
    fn random_configurations_are_well_formed(word in word_strategy(9, 4)) {
        let l = Limits::default();
        for f in [VhcFilter::All, VhcFilter::Binary, VhcFilter::R, VhcFilter::L] {
            for h in enumerate_vhc(&word, f, &l).unwrap() {
                prop_assert!(h.passes(f));
                if let Err(e) = configuration_invariants(&word, &h) {
                    return Err(TestCaseError::fail(e));
                }
            }
        }
    }
}

#[test]
fn configuration_invariants_exhaustive() {
    let l = Limits::default();
    for word in normalized_upto(6) {
        for f in [VhcFilter::All, VhcFilter::Binary, VhcFilter::R, VhcFilter::L] {
            for h in enumerate_vhc(&word, f, &l).unwrap() {
                configuration_invariants(&word, &h).unwrap();
            }
        }
    }
}

#[test]
fn descending_image_is_not_closed() {
    // two equal letters sharing the stack under fast break the reduction
    let word = w("221");
    let c = content(&word);
    let p = sort_permutation(&phi_des(&word).unwrap()).unwrap();
    let back = psi(&c, &p).unwrap();
    assert_ne!(phi_des(&back).unwrap(), p);
}

#[test]
fn identity_preimages_are_the_sortable_words() {
    let l = Limits::default();
    for word in ["1", "11", "112", "1223", "111222"] {
        let word = w(word);
        for v in SortVariant::BOTH {
            let n = count_preimages(&word, v, &l).unwrap();
            let expected = if v == SortVariant::Fast {
                SortableCounter::new().fast(&content(&word))
            } else {
                SortableCounter::new().slow(&content(&word))
            };
            assert_eq!(n, expected, "{word} {v}");
        }
    }
}

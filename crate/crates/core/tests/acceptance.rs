//! Acceptance runner: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;

use common::{configuration_invariants, ensure, normalized_upto, w};
use stacksort::enumeration::{
    binomial, brute_count_avoiders, generating_tree_level_counts, uniform_avoider_levels,
    GenTreeSpec, SortableCounter,
};
use stacksort::explorer::{distance_census, fertility_demo, scan_conjectures, ScanConfig};
use stacksort::sorters::{
    distance, make_eta, make_rho, phi_asc, phi_des, psi, sort_permutation, sort_recursive,
    sort_via_stack,
};
use stacksort::trees::sort_via_trees;
use stacksort::vhc::{
    brute_preimages, catalan_product, count_preimages, enumerate_vhc, induced_composition,
    preimages_via_trees,
};
use stacksort::word::{compositions, content, enumerate_words};
use stacksort::{fuss_catalan, ContentVector, Limits, SortVariant, VhcFilter, Word};

type Outcome = Result<(), String>;

fn limits() -> Limits {
    Limits::default()
}

fn c(v: &[usize]) -> ContentVector {
    ContentVector::new(v.to_vec())
}

fn pats(ps: &[&str]) -> Vec<Word> {
    ps.iter().map(|p| w(p)).collect()
}

fn small_corpus() -> Vec<Word> {
    normalized_upto(6).collect()
}

fn preimage_counts_match_brute_force() -> Outcome {
    let corpus = small_corpus();
    ensure!(corpus.len() == 5316, "corpus has {} words", corpus.len());
    corpus.par_iter().try_for_each(|word| {
        for v in SortVariant::BOTH {
            let counted = count_preimages(word, v, &limits()).map_err(|e| e.to_string())?;
            let brute = brute_preimages(word, v, &limits()).map_err(|e| e.to_string())?;
            ensure!(
                counted == BigUint::from(brute.len()),
                "{word} {v}: counted {counted}, brute force {}",
                brute.len()
            );
        }
        Ok(())
    })
}

fn trees_rebuild_preimages() -> Outcome {
    small_corpus().par_iter().try_for_each(|word| {
        for v in SortVariant::BOTH {
            let mut built = preimages_via_trees(word, v, &limits()).map_err(|e| e.to_string())?;
            let n = built.len();
            built.sort();
            built.dedup();
            ensure!(built.len() == n, "{word} {v}: duplicate trees");
            let brute = brute_preimages(word, v, &limits()).map_err(|e| e.to_string())?;
            ensure!(built == brute, "{word} {v}: {built:?} vs {brute:?}");
        }
        Ok(())
    })
}

fn exceptional_census() -> Outcome {
    let cfg = ScanConfig::default();
    for m in 1..=9 {
        let census = distance_census(m, &cfg).map_err(|e| e.to_string())?;
        let n = census.exceptional.len();
        let gap2 = census.gap_histogram().get(&2).copied().unwrap_or(0);
        match m {
            ..=6 => ensure!(n == 0, "E_{m} has {n} words"),
            7 => {
                let got: Vec<Word> = census.exceptional.iter().map(|p| p.word.clone()).collect();
                let want: Vec<Word> = ["3662451", "3664251", "6362451", "6364251"].map(w).to_vec();
                ensure!(got == want, "E_7 = {got:?}");
            }
            8 => ensure!(n == 172, "|E_8| = {n}"),
            _ => ensure!(n == 5001, "|E_9| = {n}"),
        }
        if m < 9 {
            ensure!(gap2 == 0, "{gap2} gap-2 words at length {m}");
        } else {
            ensure!(gap2 == 72, "{gap2} gap-2 words at length 9");
        }
    }
    Ok(())
}

fn worst_case_families() -> Outcome {
    for n in 3..=8 {
        let eta = make_eta(n).map_err(|e| e.to_string())?;
        let (f, s) = (distance(&eta, SortVariant::Fast), distance(&eta, SortVariant::Slow));
        ensure!(f == 2 * n - 2 && s == n, "eta_{n}: fast {f}, slow {s}");
    }
    let vectors: Vec<ContentVector> = (1..=8).flat_map(compositions).collect();
    vectors.par_iter().try_for_each(|cv| {
        let n = cv.len();
        let tail = cv.tail_sum();
        let rho = make_rho(cv).map_err(|e| e.to_string())?;
        let (f, s) = (distance(&rho, SortVariant::Fast), distance(&rho, SortVariant::Slow));
        ensure!(f == n - 1 && s == tail, "rho{cv}: fast {f}, slow {s}");
        for word in enumerate_words(cv, &limits()).map_err(|e| e.to_string())? {
            let (f, s) = (distance(&word, SortVariant::Fast), distance(&word, SortVariant::Slow));
            ensure!(f < n.max(1) && s <= tail, "{word}: fast {f}, slow {s}");
        }
        Ok(())
    })
}

fn fertility_numbers() -> Outcome {
    for m in 1..=4 {
        let r = fertility_demo(m, &limits()).map_err(|e| e.to_string())?;
        ensure!(r.all_agree, "m={m}: {:?}", r.rows);
        ensure!(r.rows.iter().all(|row| row.brute.is_some()), "m={m}: brute leg skipped");
    }
    let word = w("3211456");
    let hs = enumerate_vhc(&word, VhcFilter::R, &limits()).map_err(|e| e.to_string())?;
    let mut contributions: Vec<BigUint> = hs
        .iter()
        .map(|h| catalan_product(&induced_composition(&word, h).unwrap()))
        .collect();
    contributions.sort();
    let want: Vec<BigUint> = [1u32, 2, 2, 2].map(BigUint::from).to_vec();
    ensure!(contributions == want, "contributions {contributions:?}");
    Ok(())
}

/// `M(c1,c2,c3)` as an alternating sum of binomials.
fn m3_closed_form(c1: u64, c2: u64, c3: u64) -> BigUint {
    let s = c1 + c2 + c3;
    let below = |k: u64| (0..k).map(|r| binomial(s, r)).sum::<BigUint>();
    BigUint::from(2u32).pow(s as u32) - below(c1) - below(c2) - below(c3)
}

fn permutations_of(v: &[usize]) -> BTreeSet<Vec<usize>> {
    if v.len() <= 1 {
        return BTreeSet::from([v.to_vec()]);
    }
    let mut out = BTreeSet::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in permutations_of(&rest) {
            p.insert(0, x);
            out.insert(p);
        }
    }
    out
}

fn recurrences_match_avoiders() -> Outcome {
    let counter = SortableCounter::new();
    let fast_pats = pats(&["231"]);
    let slow_pats = pats(&["231", "221"]);
    // positive compositions, plus vectors with zero entries of length ≤ 4
    let mut vectors: Vec<ContentVector> = (0..=8).flat_map(compositions).collect();
    for len in 2..=4u32 {
        for code in 0..9usize.pow(len) {
            let v: Vec<usize> = (0..len).map(|i| code / 9usize.pow(i) % 9).collect();
            if v.contains(&0) && v.iter().sum::<usize>() <= 8 {
                vectors.push(ContentVector::new(v));
            }
        }
    }
    vectors.par_iter().try_for_each(|cv| {
        let m = counter.fast(cv);
        let n = counter.slow(cv);
        let bm = brute_count_avoiders(cv, &fast_pats, &limits()).map_err(|e| e.to_string())?;
        let bn = brute_count_avoiders(cv, &slow_pats, &limits()).map_err(|e| e.to_string())?;
        ensure!(m == BigUint::from(bm), "M{cv} = {m}, brute {bm}");
        ensure!(n == BigUint::from(bn), "N{cv} = {n}, brute {bn}");
        Ok::<(), String>(())
    })?;

    for a in 0..=4u64 {
        for b in 0..=4u64 {
            let (ua, ub) = (a as usize, b as usize);
            let m2 = counter.fast(&c(&[ua, ub]));
            ensure!(m2 == binomial(a + b, a), "M({a},{b}) = {m2}");
            if a >= 1 && b >= 1 {
                let n2 = counter.slow(&c(&[ua, ub]));
                ensure!(n2 == BigUint::from(a + 1), "N({a},{b}) = {n2}");
            }
            for d in 0..=4u64 {
                let v = [ua, ub, d as usize];
                let m3 = counter.fast(&c(&v));
                ensure!(m3 == m3_closed_form(a, b, d), "M{v:?} = {m3}");
                if a >= 1 && b >= 1 && d >= 1 {
                    let n3 = counter.slow(&c(&v));
                    let want = (a + 1) * (a + 2 * b + 2) / 2;
                    ensure!(n3 == BigUint::from(want), "N{v:?} = {n3}, want {want}");
                }
            }
        }
    }

    for cv in (1..=7).flat_map(compositions) {
        let base = counter.fast(&cv);
        for p in permutations_of(cv.counts()) {
            let other = counter.fast(&ContentVector::new(p.clone()));
            ensure!(other == base, "M{cv} = {base} but M{p:?} = {other}");
        }
    }

    for cv in (1..=6).flat_map(compositions) {
        let mut v = cv.counts().to_vec();
        v.push(1);
        let base = counter.slow(&ContentVector::new(v.clone()));
        for last in 2..=6 {
            *v.last_mut().unwrap() = last;
            let got = counter.slow(&ContentVector::new(v.clone()));
            ensure!(got == base, "N{v:?} = {got}, with last 1 it is {base}");
        }
    }

    for cv in (1..=8).flat_map(compositions) {
        let (m, n) = (counter.fast(&cv), counter.slow(&cv));
        let ones = cv.counts().iter().skip(1).all(|&x| x == 1);
        ensure!(m >= n, "M{cv} = {m} < N = {n}");
        ensure!((m == n) == ones, "M{cv} = {m}, N = {n}");
    }
    Ok(())
}

fn fuss_catalan_counts() -> Outcome {
    let counter = SortableCounter::new();
    let slow_pats = pats(&["231", "221"]);
    for ell in 1..=3usize {
        let spec = GenTreeSpec::fuss_catalan(ell as u64);
        let levels = generating_tree_level_counts(&spec, 4).map_err(|e| e.to_string())?;
        let objects = uniform_avoider_levels(ell, 4).map_err(|e| e.to_string())?;
        for n in 1..=4usize {
            let cv = ContentVector::uniform(ell, n);
            let f = fuss_catalan(ell as u64, n as u64);
            let rec = counter.slow(&cv);
            let brute = brute_count_avoiders(&cv, &slow_pats, &limits()).map_err(|e| e.to_string())?;
            let tree = &levels[n - 1];
            let direct = objects[n - 1].len();
            ensure!(
                rec == f && *tree == f && BigUint::from(brute) == f && BigUint::from(direct) == f,
                "ell={ell} n={n}: formula {f}, recurrence {rec}, tree {tree}, objects {direct}, brute {brute}"
            );
        }
    }
    ensure!(fuss_catalan(2, 4) == BigUint::from(55u32), "fuss_catalan(2,4)");
    Ok(())
}

fn operators_agree() -> Outcome {
    let corpus: Vec<Word> = normalized_upto(7).collect();
    corpus.par_iter().try_for_each(|word| {
        for v in SortVariant::BOTH {
            let a = sort_via_stack(word, v);
            let b = sort_recursive(word, v);
            let t = sort_via_trees(word, v);
            ensure!(a == b && b == t, "{word} {v}: stack {a}, recursive {b}, trees {t}");
        }
        let cv = content(word);
        let s = |p: &Word| sort_permutation(p).unwrap();
        let fast = psi(&cv, &s(&phi_des(word).unwrap())).unwrap();
        ensure!(fast == sort_via_stack(word, SortVariant::Fast), "{word}: fast reduction");
        let mut perm = phi_asc(word).unwrap();
        let mut cur = word.clone();
        for k in 1..=cv.tail_sum().max(1) {
            perm = s(&perm);
            cur = sort_via_stack(&cur, SortVariant::Slow);
            let via = psi(&cv, &perm).unwrap();
            ensure!(via == cur, "{word}: slow reduction fails at k={k}");
        }
        Ok(())
    })
}

fn conjecture_scan() -> Outcome {
    let r = scan_conjectures(9, &ScanConfig::default()).map_err(|e| e.to_string())?;
    ensure!(r.gap_bound.holds, "gap bound: {:?}", r.gap_bound.first_counterexample);
    ensure!(r.doubling_bound.holds, "doubling bound: {:?}", r.doubling_bound.first_counterexample);
    let ratios: Vec<&str> = r.lengths[6..9].iter().map(|l| l.ratio.decimal.as_str()).collect();
    ensure!(ratios == ["0.000085", "0.000315", "0.000706"], "ratios {ratios:?}");
    ensure!(r.ratios_increasing, "ratios not increasing");
    Ok(())
}

fn structural_properties() -> Outcome {
    let corpus = small_corpus();
    corpus.par_iter().try_for_each(|word| {
        for f in [VhcFilter::All, VhcFilter::R, VhcFilter::L] {
            for h in enumerate_vhc(word, f, &limits()).map_err(|e| e.to_string())? {
                configuration_invariants(word, &h)?;
            }
        }
        for v in SortVariant::BOTH {
            let out = sort_via_stack(word, v);
            ensure!(content(&out) == content(word), "{word} {v}: content changed");
        }
        Ok(())
    })
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("preimage counts equal brute force, length <= 6", preimage_counts_match_brute_force),
        ("tree construction rebuilds every preimage once", trees_rebuild_preimages),
        ("exceptional-word census up to length 9", exceptional_census),
        ("eta and rho distances and worst-case bounds", worst_case_families),
        ("fertility of xi and xi' words", fertility_numbers),
        ("M and N recurrences, closed forms, symmetry", recurrences_match_avoiders),
        ("Fuss-Catalan counts by five methods", fuss_catalan_counts),
        ("stack, recursive and tree sorting agree", operators_agree),
        ("conjectured distance bounds up to length 9", conjecture_scan),
        ("coloring and configuration invariants", structural_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(format!("panicked: {:?}", p.downcast_ref::<String>())));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

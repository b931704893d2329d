//! Exhaustive experiment drivers.
//!
//! Scans over normalized words are split by content vector and run on a
//! rayon pool; partial results are merged in the lexicographic order of the
//! content vectors, so the thread count never changes a report.

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{
    brute_count_avoiders, fuss_catalan, generating_tree_level_counts, uniform_avoider_levels,
    GenTreeSpec, SortableCounter,
};
use crate::error::{Error, Limits, Result};
use crate::sorters::{distance, distance_with, make_eta, Distance, SortVariant};
use crate::vhc::{brute_preimages, count_preimages, enumerate_vhc, preimages_via_trees, VhcFilter};
use crate::word::{
    check_space, compositions, contains_pattern, fubini, ContentVector, MultisetPermutations, Word,
};

/// Big integers serialize as JSON numbers when they fit in `u64` and as
/// decimal strings otherwise.
pub mod bigint_serde {
    use num_bigint::BigUint;
    use serde::ser::SerializeSeq;
    use serde::Serializer;

    pub fn one<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        match u64::try_from(v) {
            Ok(x) => s.serialize_u64(x),
            Err(_) => s.serialize_str(&v.to_string()),
        }
    }

    pub fn opt<S: Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => one(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn many<S: Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
        struct Item<'a>(&'a BigUint);
        impl serde::Serialize for Item<'_> {
            fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                one(self.0, s)
            }
        }
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for x in v {
            seq.serialize_element(&Item(x))?;
        }
        seq.end()
    }
}

/// Witness lists in reports are cut off after this many entries.
pub const WITNESS_CAP: usize = 1000;

/// Limits plus the parallelism degree for scans (`0` means rayon's default).
#[derive(Debug, Clone, Copy, Default)]
pub struct ScanConfig {
    pub limits: Limits,
    pub jobs: usize,
}

impl ScanConfig {
    pub fn new(limits: Limits, jobs: usize) -> Self {
        ScanConfig { limits, jobs }
    }

    fn run<T: Send>(&self, f: impl FnOnce() -> T + Send) -> Result<T> {
        if self.jobs == 0 {
            return Ok(f());
        }
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(self.jobs)
            .build()
            .map_err(|e| Error::domain(format!("cannot start thread pool: {e}")))?;
        Ok(pool.install(f))
    }
}

/// A report together with its wall-clock time.
#[derive(Debug, Clone, Serialize)]
pub struct Timed<T> {
    #[serde(flatten)]
    pub report: T,
    pub elapsed_ms: u64,
}

pub fn timed<T>(f: impl FnOnce() -> Result<T>) -> Result<Timed<T>> {
    let start = Instant::now();
    let report = f()?;
    Ok(Timed {
        report,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// `num/den` rounded half-up to six decimals.
pub fn ratio_6dp(num: u128, den: u128) -> String {
    assert!(den > 0);
    let scaled = (num * 2_000_000 + den) / (2 * den);
    format!("{}.{:06}", scaled / 1_000_000, scaled % 1_000_000)
}

/// An exact ratio and its six-place rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ratio {
    pub numerator: u128,
    pub denominator: u128,
    pub decimal: String,
}

impl Ratio {
    pub fn new(numerator: u128, denominator: u128) -> Self {
        Ratio {
            numerator,
            denominator,
            decimal: ratio_6dp(numerator, denominator),
        }
    }

    /// `self < other`, compared exactly.
    pub fn less_than(&self, other: &Ratio) -> bool {
        self.numerator * other.denominator < other.numerator * self.denominator
    }
}

/// A word with both distances.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DistancePair {
    pub word: Word,
    pub fast: Distance,
    pub slow: Distance,
}

impl DistancePair {
    pub fn gap(&self) -> i64 {
        self.fast as i64 - self.slow as i64
    }
}

/// Both distances of every normalized word of length `m`.
#[derive(Debug, Clone)]
pub struct DistanceCensus {
    pub m: usize,
    pub total: u128,
    /// `(fast, slow)` → number of words.
    pub joint: BTreeMap<(Distance, Distance), u128>,
    /// The words with `fast > slow`, sorted.
    pub exceptional: Vec<DistancePair>,
}

impl DistanceCensus {
    pub fn gap_histogram(&self) -> BTreeMap<i64, u128> {
        let mut out = BTreeMap::new();
        for (&(f, s), &n) in &self.joint {
            *out.entry(f as i64 - s as i64).or_default() += n;
        }
        out
    }
}

struct Partial {
    total: u128,
    joint: BTreeMap<(Distance, Distance), u128>,
    exceptional: Vec<DistancePair>,
}

fn census_of_content(c: &ContentVector) -> Partial {
    let (mut a, mut b, mut s) = (Vec::new(), Vec::new(), Vec::new());
    let mut p = Partial {
        total: 0,
        joint: BTreeMap::new(),
        exceptional: Vec::new(),
    };
    for w in MultisetPermutations::new(c) {
        let fast = distance_with(&w, SortVariant::Fast, &mut a, &mut b, &mut s);
        let slow = distance_with(&w, SortVariant::Slow, &mut a, &mut b, &mut s);
        p.total += 1;
        *p.joint.entry((fast, slow)).or_default() += 1;
        if fast > slow {
            p.exceptional.push(DistancePair { word: w, fast, slow });
        }
    }
    p
}

fn check_normalized_len(m: usize, limits: &Limits) -> Result<()> {
    if m > limits.max_normalized_len {
        return Err(Error::SizeLimit {
            what: "normalized word length",
            actual: m as u128,
            limit: limits.max_normalized_len as u128,
        });
    }
    Ok(())
}

pub fn distance_census(m: usize, cfg: &ScanConfig) -> Result<DistanceCensus> {
    check_normalized_len(m, &cfg.limits)?;
    let parts = compositions(m);
    for c in &parts {
        check_space(c, &cfg.limits)?;
    }
    let partials: Vec<Partial> = cfg.run(|| parts.par_iter().map(census_of_content).collect())?;
    let mut census = DistanceCensus {
        m,
        total: 0,
        joint: BTreeMap::new(),
        exceptional: Vec::new(),
    };
    for p in partials {
        census.total += p.total;
        for (k, n) in p.joint {
            *census.joint.entry(k).or_default() += n;
        }
        census.exceptional.extend(p.exceptional);
    }
    census.exceptional.sort();
    debug_assert_eq!(census.total, fubini(m));
    Ok(census)
}

fn truncated<T: Clone>(items: &[T]) -> (Vec<T>, bool) {
    (items.iter().take(WITNESS_CAP).cloned().collect(), items.len() > WITNESS_CAP)
}

#[derive(Debug, Clone, Serialize)]
pub struct ExceptionalReport {
    pub m: usize,
    pub normalized_words: u128,
    pub exceptional: u128,
    pub ratio: Ratio,
    pub witnesses: Vec<Word>,
    pub truncated: bool,
}

/// The words of length `m` that slow sorts in strictly fewer passes than
/// fast does.
pub fn find_exceptional(m: usize, cfg: &ScanConfig) -> Result<ExceptionalReport> {
    let census = distance_census(m, cfg)?;
    Ok(exceptional_report(&census))
}

fn exceptional_report(census: &DistanceCensus) -> ExceptionalReport {
    let words: Vec<Word> = census.exceptional.iter().map(|p| p.word.clone()).collect();
    let (witnesses, truncated) = truncated(&words);
    let n = census.exceptional.len() as u128;
    ExceptionalReport {
        m: census.m,
        normalized_words: census.total,
        exceptional: n,
        ratio: Ratio::new(n, census.total),
        witnesses,
        truncated,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GapBucket {
    pub gap: i64,
    pub count: u128,
}

#[derive(Debug, Clone, Serialize)]
pub struct GapCensusReport {
    pub m: usize,
    pub gap: i64,
    pub count: u128,
    pub normalized_words: u128,
    pub histogram: Vec<GapBucket>,
}

impl GapCensusReport {
    pub fn histogram_csv(&self) -> String {
        let mut out = String::from("gap,count\n");
        for b in &self.histogram {
            out.push_str(&format!("{},{}\n", b.gap, b.count));
        }
        out
    }
}

/// Number of normalized words of length `m` whose fast distance exceeds
/// the slow one by exactly `gap`, with the full gap histogram.
pub fn gap_census(m: usize, gap: i64, cfg: &ScanConfig) -> Result<GapCensusReport> {
    let census = distance_census(m, cfg)?;
    let hist = census.gap_histogram();
    Ok(GapCensusReport {
        m,
        gap,
        count: hist.get(&gap).copied().unwrap_or(0),
        normalized_words: census.total,
        histogram: hist
            .into_iter()
            .map(|(gap, count)| GapBucket { gap, count })
            .collect(),
    })
}

/// Outcome of checking one inequality over the exceptional words.
#[derive(Debug, Clone, Serialize)]
pub struct BoundCheck {
    pub statement: &'static str,
    pub checked: u128,
    pub holds: bool,
    pub first_counterexample: Option<DistancePair>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LengthRow {
    pub m: usize,
    pub normalized_words: u128,
    pub exceptional: u128,
    pub ratio: Ratio,
    pub max_gap: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct EtaRow {
    pub n: usize,
    pub length: usize,
    pub fast: Distance,
    pub slow: Distance,
    pub gap_bound_tight: bool,
    pub doubling_bound_tight: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub max_m: usize,
    pub lengths: Vec<LengthRow>,
    pub gap_bound: BoundCheck,
    pub doubling_bound: BoundCheck,
    /// Whether the exceptional ratio strictly increases from length 7 on.
    pub ratios_increasing: bool,
    pub eta_family: Vec<EtaRow>,
}

/// `2(fast − slow) ≤ m − 5`.
fn gap_bound_ok(p: &DistancePair) -> bool {
    2 * p.gap() + 5 <= p.word.len() as i64
}

/// `fast ≤ 2·slow − 2`.
fn doubling_bound_ok(p: &DistancePair) -> bool {
    p.fast as i64 <= 2 * p.slow as i64 - 2
}

/// The two conjectured inequalities are about exceptional words only; both
/// fail trivially elsewhere (the identity has both distances 0).
pub fn scan_conjectures(max_m: usize, cfg: &ScanConfig) -> Result<ConjectureReport> {
    let mut lengths = Vec::new();
    let mut gap_bound = BoundCheck {
        statement: "fast - slow <= (m - 5) / 2",
        checked: 0,
        holds: true,
        first_counterexample: None,
    };
    let mut doubling_bound = BoundCheck {
        statement: "fast <= 2 * slow - 2",
        ..gap_bound.clone()
    };
    for m in 1..=max_m {
        let census = distance_census(m, cfg)?;
        for (check, ok) in [
            (&mut gap_bound, gap_bound_ok as fn(&DistancePair) -> bool),
            (&mut doubling_bound, doubling_bound_ok),
        ] {
            check.checked += census.exceptional.len() as u128;
            if check.first_counterexample.is_none() {
                if let Some(bad) = census.exceptional.iter().find(|p| !ok(p)) {
                    check.holds = false;
                    check.first_counterexample = Some(bad.clone());
                }
            }
        }
        let n = census.exceptional.len() as u128;
        lengths.push(LengthRow {
            m,
            normalized_words: census.total,
            exceptional: n,
            ratio: Ratio::new(n, census.total),
            max_gap: census.gap_histogram().keys().next_back().copied().unwrap_or(0),
        });
    }
    let nonzero: Vec<&Ratio> = lengths
        .iter()
        .filter(|r| r.m >= 7)
        .map(|r| &r.ratio)
        .collect();
    let ratios_increasing = nonzero.windows(2).all(|w| w[0].less_than(w[1]));
    Ok(ConjectureReport {
        max_m,
        lengths,
        gap_bound,
        doubling_bound,
        ratios_increasing,
        eta_family: eta_family(3..=8)?,
    })
}

pub fn eta_family(ns: impl IntoIterator<Item = usize>) -> Result<Vec<EtaRow>> {
    ns.into_iter()
        .map(|n| {
            let word = make_eta(n)?;
            let p = DistancePair {
                fast: distance(&word, SortVariant::Fast),
                slow: distance(&word, SortVariant::Slow),
                word,
            };
            Ok(EtaRow {
                n,
                length: p.word.len(),
                fast: p.fast,
                slow: p.slow,
                gap_bound_tight: 2 * p.gap() + 5 == p.word.len() as i64,
                doubling_bound_tight: p.fast + 2 == 2 * p.slow,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternClaimReport {
    pub m: usize,
    pub checked: u128,
    pub violators: u128,
    pub witnesses: Vec<Word>,
    pub truncated: bool,
}

/// Checks that every exceptional word of length `m` contains an
/// exceptional word of length 7 as a pattern.
pub fn verify_exceptional_pattern_claim(m: usize, cfg: &ScanConfig) -> Result<PatternClaimReport> {
    let base: Vec<Word> = distance_census(7, cfg)?
        .exceptional
        .into_iter()
        .map(|p| p.word)
        .collect();
    let members = distance_census(m, cfg)?.exceptional;
    let bad: Vec<Word> = cfg.run(|| {
        members
            .par_iter()
            .filter(|p| !base.iter().any(|b| contains_pattern(&p.word, b)))
            .map(|p| p.word.clone())
            .collect()
    })?;
    let (witnesses, truncated) = truncated(&bad);
    Ok(PatternClaimReport {
        m,
        checked: members.len() as u128,
        violators: bad.len() as u128,
        witnesses,
        truncated,
    })
}

/// `m (m−1) … 2 1 (m+1) … (2m)`.
pub fn make_xi(m: usize) -> Result<Word> {
    if m == 0 || 2 * m > u8::MAX as usize {
        return Err(Error::domain(format!("xi_m needs 1 <= m <= 127, got {m}")));
    }
    let m = m as u8;
    let mut v: Vec<u8> = (1..=m).rev().collect();
    v.extend(m + 1..=2 * m);
    Word::new(v)
}

/// `ξ_m` with a second `1` next to the first.
pub fn make_xi_prime(m: usize) -> Result<Word> {
    let mut v = make_xi(m)?.into_letters();
    v.insert(m, 1);
    Word::new(v)
}

#[derive(Debug, Clone, Serialize)]
pub struct FertilityRow {
    pub name: String,
    pub word: Word,
    pub map: SortVariant,
    pub expected: u128,
    #[serde(serialize_with = "bigint_serde::one")]
    pub vhc: BigUint,
    pub brute: Option<u128>,
    pub trees: Option<u128>,
    /// Whether the tree construction produced pairwise distinct words.
    pub trees_distinct: Option<bool>,
}

impl FertilityRow {
    pub fn agrees(&self) -> bool {
        let e = BigUint::from(self.expected);
        self.vhc == e
            && self.brute.is_none_or(|b| b == self.expected)
            && self.trees.is_none_or(|t| t == self.expected)
            && self.trees_distinct.unwrap_or(true)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FertilityReport {
    pub m: usize,
    pub rows: Vec<FertilityRow>,
    pub all_agree: bool,
}

/// Largest `m` for which the brute-force and tree legs run.
pub const FERTILITY_BRUTE_MAX: usize = 4;

fn fertility_row(name: &str, word: Word, map: SortVariant, expected: u128, full: bool, limits: &Limits) -> Result<FertilityRow> {
    let vhc = count_preimages(&word, map, limits)?;
    let (brute, trees, distinct) = if full {
        let brute = brute_preimages(&word, map, limits)?;
        let mut built = preimages_via_trees(&word, map, limits)?;
        let n = built.len();
        built.sort();
        built.dedup();
        let distinct = built.len() == n && built == brute;
        (Some(brute.len() as u128), Some(n as u128), Some(distinct))
    } else {
        (None, None, None)
    };
    Ok(FertilityRow {
        name: name.to_string(),
        word,
        map,
        expected,
        vhc,
        brute,
        trees,
        trees_distinct: distinct,
    })
}

/// Fertilities of `ξ_m` (expected `2m`) and `ξ′_m` (expected `2m + 1`)
/// under both maps, with the small cases `21` and `1` alongside.
pub fn fertility_demo(m: usize, limits: &Limits) -> Result<FertilityReport> {
    let full = m <= FERTILITY_BRUTE_MAX;
    let cases = [
        ("xi", make_xi(m)?, 2 * m as u128),
        ("xi_prime", make_xi_prime(m)?, 2 * m as u128 + 1),
        ("descent", "21".parse()?, 0),
        ("single", "1".parse()?, 1),
    ];
    let mut rows = Vec::new();
    for (name, word, expected) in cases {
        for map in SortVariant::BOTH {
            rows.push(fertility_row(name, word.clone(), map, expected, full, limits)?);
        }
    }
    Ok(FertilityReport {
        m,
        all_agree: rows.iter().all(FertilityRow::agrees),
        rows,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformFertilityRow {
    pub n: usize,
    pub words: u128,
    #[serde(serialize_with = "bigint_serde::many")]
    pub fast_values: Vec<BigUint>,
    #[serde(serialize_with = "bigint_serde::many")]
    pub slow_values: Vec<BigUint>,
    pub uniquely_sorted_fast: u128,
    pub uniquely_sorted_slow: u128,
}

/// Sets of fertility values attained by `ell`-uniform words on `1..=n`,
/// for each `n` up to `max_n`. Exploratory; nothing is asserted.
pub fn uniform_fertility_scan(ell: usize, max_n: usize, cfg: &ScanConfig) -> Result<Vec<UniformFertilityRow>> {
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let c = ContentVector::uniform(ell, n);
        check_space(&c, &cfg.limits)?;
        if c.total() > cfg.limits.max_vhc_len {
            return Err(Error::SizeLimit {
                what: "hook configuration word length",
                actual: c.total() as u128,
                limit: cfg.limits.max_vhc_len as u128,
            });
        }
        let words: Vec<Word> = MultisetPermutations::new(&c).collect();
        let limits = cfg.limits;
        let counts: Vec<(BigUint, BigUint)> = cfg.run(|| {
            words
                .par_iter()
                .map(|w| {
                    (
                        count_preimages(w, SortVariant::Fast, &limits).expect("length checked"),
                        count_preimages(w, SortVariant::Slow, &limits).expect("length checked"),
                    )
                })
                .collect()
        })?;
        let one = BigUint::from(1u32);
        let mut fast_values: Vec<BigUint> = counts.iter().map(|p| p.0.clone()).collect();
        let mut slow_values: Vec<BigUint> = counts.iter().map(|p| p.1.clone()).collect();
        let uniquely_sorted_fast = fast_values.iter().filter(|v| **v == one).count() as u128;
        let uniquely_sorted_slow = slow_values.iter().filter(|v| **v == one).count() as u128;
        for v in [&mut fast_values, &mut slow_values] {
            v.sort();
            v.dedup();
        }
        rows.push(UniformFertilityRow {
            n,
            words: words.len() as u128,
            fast_values,
            slow_values,
            uniquely_sorted_fast,
            uniquely_sorted_slow,
        });
    }
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct UniformReport {
    pub ell: usize,
    pub n: usize,
    #[serde(serialize_with = "bigint_serde::one")]
    pub fuss_catalan: BigUint,
    #[serde(serialize_with = "bigint_serde::opt")]
    pub recurrence: Option<BigUint>,
    #[serde(serialize_with = "bigint_serde::opt")]
    pub generating_tree: Option<BigUint>,
    pub insertion_tree: Option<u128>,
    pub brute: Option<u128>,
    pub consistent: bool,
}

/// The number of `ell`-uniform `{231, 221}`-avoiders on `1..=n`, with
/// optional cross-checks by every other counting method.
pub fn uniform_report(ell: usize, n: usize, check: bool, limits: &Limits) -> Result<UniformReport> {
    if ell == 0 {
        return Err(Error::domain("ell must be at least 1"));
    }
    let value = fuss_catalan(ell as u64, n as u64);
    let mut report = UniformReport {
        ell,
        n,
        fuss_catalan: value.clone(),
        recurrence: None,
        generating_tree: None,
        insertion_tree: None,
        brute: None,
        consistent: true,
    };
    if !check {
        return Ok(report);
    }
    let c = ContentVector::uniform(ell, n);
    let recurrence = SortableCounter::new().slow(&c);
    let pats: Vec<Word> = vec!["231".parse()?, "221".parse()?];
    let brute = brute_count_avoiders(&c, &pats, limits)?;
    let (tree, insertion) = if n == 0 {
        (BigUint::from(1u32), 1u128)
    } else {
        Limits::check("insertion tree size", value.clone().try_into().unwrap_or(u128::MAX), limits.max_space)?;
        let spec = GenTreeSpec::fuss_catalan(ell as u64);
        let tree = generating_tree_level_counts(&spec, n)?.pop().unwrap();
        let insertion = uniform_avoider_levels(ell, n)?.pop().unwrap().len() as u128;
        (tree, insertion)
    };
    report.consistent = recurrence == value
        && tree == value
        && BigUint::from(insertion) == value
        && BigUint::from(brute) == value;
    report.recurrence = Some(recurrence);
    report.generating_tree = Some(tree);
    report.insertion_tree = Some(insertion);
    report.brute = Some(brute);
    Ok(report)
}

/// Sizes of `H_R`, `H_L`, and the binary family of `w`, used by the CLI.
pub fn family_sizes(w: &Word, limits: &Limits) -> Result<BTreeMap<String, usize>> {
    let mut out = BTreeMap::new();
    for f in [VhcFilter::All, VhcFilter::Binary, VhcFilter::R, VhcFilter::L] {
        out.insert(f.to_string(), enumerate_vhc(w, f, limits)?.len());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::is_normalized;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn cfg() -> ScanConfig {
        ScanConfig::default()
    }

    #[test]
    fn ratio_rendering() {
        assert_eq!(ratio_6dp(4, 47293), "0.000085");
        assert_eq!(ratio_6dp(172, 545835), "0.000315");
        assert_eq!(ratio_6dp(5001, 7087261), "0.000706");
        assert_eq!(ratio_6dp(1, 2), "0.500000");
        assert_eq!(ratio_6dp(3, 3), "1.000000");
        assert_eq!(ratio_6dp(0, 5), "0.000000");
        assert!(Ratio::new(1, 3).less_than(&Ratio::new(1, 2)));
    }

    #[test]
    fn exceptional_words_of_length_seven() {
        let r = find_exceptional(7, &cfg()).unwrap();
        assert_eq!(r.witnesses, ["3662451", "3664251", "6362451", "6364251"].map(w));
        assert_eq!(r.normalized_words, 47293);
        assert_eq!(r.ratio.decimal, "0.000085");
        assert!(!r.truncated);
        for m in 0..=6 {
            assert_eq!(find_exceptional(m, &cfg()).unwrap().exceptional, 0, "m={m}");
        }
    }

    #[test]
    fn exceptional_members_recompute() {
        let census = distance_census(7, &cfg()).unwrap();
        for p in &census.exceptional {
            assert!(is_normalized(&p.word) && p.word.len() == 7);
            assert_eq!(distance(&p.word, SortVariant::Fast), p.fast);
            assert_eq!(distance(&p.word, SortVariant::Slow), p.slow);
            assert!(p.fast > p.slow);
        }
    }

    #[test]
    fn gap_census_small() {
        let r = gap_census(7, 1, &cfg()).unwrap();
        assert_eq!(r.count, 4);
        assert_eq!(r.histogram.iter().map(|b| b.count).sum::<u128>(), r.normalized_words);
        assert_eq!(gap_census(7, 2, &cfg()).unwrap().count, 0);
        assert!(r.histogram_csv().starts_with("gap,count\n"));
    }

    #[test]
    fn thread_count_does_not_change_reports() {
        let a = serde_json::to_string(&gap_census(6, 0, &ScanConfig::new(Limits::default(), 1)).unwrap()).unwrap();
        let b = serde_json::to_string(&gap_census(6, 0, &ScanConfig::new(Limits::default(), 3)).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn limits_are_enforced() {
        let tight = ScanConfig::new(Limits { max_normalized_len: 5, ..Limits::default() }, 0);
        assert!(matches!(find_exceptional(6, &tight), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn conjectures_up_to_seven() {
        let r = scan_conjectures(7, &cfg()).unwrap();
        assert!(r.gap_bound.holds && r.doubling_bound.holds);
        assert_eq!(r.gap_bound.checked, 4);
        assert_eq!(r.lengths[6].ratio.decimal, "0.000085");
        for row in &r.eta_family {
            assert_eq!(row.fast, 2 * row.n - 2);
            assert_eq!(row.slow, row.n);
            assert!(row.gap_bound_tight && row.doubling_bound_tight);
        }
    }

    #[test]
    fn pattern_claim_trivial_at_seven() {
        let r = verify_exceptional_pattern_claim(7, &cfg()).unwrap();
        assert_eq!((r.checked, r.violators), (4, 0));
    }

    #[test]
    fn xi_words() {
        assert_eq!(make_xi(1).unwrap(), w("12"));
        assert_eq!(make_xi(3).unwrap(), w("321456"));
        assert_eq!(make_xi_prime(3).unwrap(), w("3211456"));
        assert!(make_xi(0).is_err());
    }

    #[test]
    fn fertility_small() {
        for m in 1..=3 {
            let r = fertility_demo(m, &Limits::default()).unwrap();
            assert!(r.all_agree, "{r:?}");
        }
    }

    #[test]
    fn uniform_checks() {
        let r = uniform_report(2, 2, true, &Limits::default()).unwrap();
        assert_eq!(r.fuss_catalan, 3u32.into());
        assert!(r.consistent);
        assert!(uniform_report(3, 0, true, &Limits::default()).unwrap().consistent);
    }

    #[test]
    fn uniform_scan_runs() {
        let rows = uniform_fertility_scan(2, 3, &cfg()).unwrap();
        assert_eq!(rows.iter().map(|r| r.words).collect::<Vec<_>>(), [1, 6, 90]);
        // 11 has exactly the one preimage 11
        assert_eq!(rows[0].fast_values, [BigUint::from(1u32)]);
    }
}

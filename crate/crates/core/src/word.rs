//! Words over the positive integers, content vectors, and the exhaustive
//! word-space enumerators the rest of the crate uses as oracles.

use std::fmt;
use std::ops::Deref;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Limits, Result};

/// A finite word with letters in `1..=255`. The empty word is ε.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<u8>);

/// A word used as a pattern.
pub type Pattern = Word;

impl Word {
    pub fn new(letters: Vec<u8>) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::domain("letters must be positive"));
        }
        Ok(Word(letters))
    }

    /// Builds a word from letters already known to be positive.
    pub(crate) fn from_raw(letters: Vec<u8>) -> Self {
        debug_assert!(!letters.contains(&0));
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u8> {
        self.0
    }

    pub fn max_letter(&self) -> u8 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_identity(&self) -> bool {
        is_nondecreasing(&self.0)
    }

    pub fn is_permutation(&self) -> bool {
        let m = self.0.len();
        let mut seen = vec![false; m + 1];
        for &x in &self.0 {
            let x = x as usize;
            if x > m || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        true
    }
}

impl Deref for Word {
    type Target = [u8];

    fn deref(&self) -> &[u8] {
        &self.0
    }
}

impl TryFrom<&[u8]> for Word {
    type Error = Error;

    fn try_from(letters: &[u8]) -> Result<Self> {
        Word::new(letters.to_vec())
    }
}

/// Digit-string form when every letter is at most 9, space-separated
/// otherwise. ε prints as `ε`.
impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        if self.0.iter().all(|&x| x <= 9) {
            for &x in &self.0 {
                write!(f, "{x}")?;
            }
        } else {
            for (i, &x) in self.0.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts whitespace- or comma-separated positive integers, or a compact
    /// digit string such as `3662451`. `ε` and the empty string give ε.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" {
            return Ok(Word::empty());
        }
        let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
        let letters = if separated {
            s.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<u8>()
                        .map_err(|e| Error::parse("word", format!("letter {t:?}: {e}")))
                })
                .collect::<Result<Vec<_>>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::parse("word", format!("unexpected character {c:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        if letters.contains(&0) {
            return Err(Error::parse("word", "letters must be positive"));
        }
        Ok(Word(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Letter multiplicities `(c_1, …, c_n)`. Zero entries are allowed when
/// supplied by a caller; [`content`] never produces a trailing zero.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ContentVector(Vec<usize>);

impl ContentVector {
    pub fn new(counts: Vec<usize>) -> Self {
        ContentVector(counts)
    }

    /// The `n`-fold uniform vector `(ell, …, ell)`.
    pub fn uniform(ell: usize, n: usize) -> Self {
        ContentVector(vec![ell; n])
    }

    pub fn counts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length of every word in `W_c`.
    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn all_positive(&self) -> bool {
        self.0.iter().all(|&c| c > 0)
    }

    /// Drops zero entries; the result indexes the normalized relabeling.
    pub fn strip_zeros(&self) -> ContentVector {
        ContentVector(self.0.iter().copied().filter(|&c| c > 0).collect())
    }

    /// `c_2 + … + c_n`, the slow-sorting worst case.
    pub fn tail_sum(&self) -> usize {
        self.0.iter().skip(1).sum()
    }

    /// `|W_c|` as a multinomial coefficient, or `None` on overflow.
    pub fn space_size(&self) -> Option<u128> {
        let mut acc: u128 = 1;
        let mut placed: u128 = 0;
        for &c in &self.0 {
            for k in 1..=c as u128 {
                placed += 1;
                acc = acc.checked_mul(placed)? / k;
            }
        }
        Some(acc)
    }
}

impl fmt::Display for ContentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl fmt::Debug for ContentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for ContentVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let counts = inner
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|e| Error::parse("content vector", format!("entry {t:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ContentVector(counts))
    }
}

impl From<Vec<usize>> for ContentVector {
    fn from(v: Vec<usize>) -> Self {
        ContentVector(v)
    }
}

impl<const N: usize> From<[usize; N]> for ContentVector {
    fn from(v: [usize; N]) -> Self {
        ContentVector(v.to_vec())
    }
}

pub(crate) fn is_nondecreasing(letters: &[u8]) -> bool {
    letters.windows(2).all(|p| p[0] <= p[1])
}

pub fn content(w: &[u8]) -> ContentVector {
    let n = w.iter().copied().max().unwrap_or(0) as usize;
    let mut counts = vec![0; n];
    for &x in w {
        counts[x as usize - 1] += 1;
    }
    ContentVector(counts)
}

/// `Id_c`, the nondecreasing word of content `c`.
pub fn identity(c: &ContentVector) -> Word {
    let mut letters = Vec::with_capacity(c.total());
    for (i, &k) in c.counts().iter().enumerate() {
        letters.extend(std::iter::repeat_n(i as u8 + 1, k));
    }
    Word(letters)
}

/// True iff every value `1..=max(w)` occurs in `w`.
pub fn is_normalized(w: &[u8]) -> bool {
    content(w).all_positive()
}

/// Order-isomorphic containment, equalities included: `3422155` contains
/// `211` (via `322`) but `1122` does not contain `221`.
pub fn contains_pattern(w: &[u8], p: &[u8]) -> bool {
    fn extend(w: &[u8], p: &[u8], start: usize, chosen: &mut Vec<u8>) -> bool {
        let a = chosen.len();
        if a == p.len() {
            return true;
        }
        let remaining = p.len() - a;
        if w.len() < start + remaining {
            return false;
        }
        for i in start..=w.len() - remaining {
            let x = w[i];
            if chosen
                .iter()
                .zip(p)
                .all(|(&y, &q)| y.cmp(&x) == q.cmp(&p[a]))
            {
                chosen.push(x);
                if extend(w, p, i + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    extend(w, p, 0, &mut Vec::with_capacity(p.len()))
}

/// True iff `w` avoids every pattern in `patterns`.
pub fn avoids_all(w: &[u8], patterns: &[Pattern]) -> bool {
    patterns.iter().all(|p| !contains_pattern(w, p))
}

/// Lexicographic successor among rearrangements of the same letters.
pub(crate) fn next_permutation(v: &mut [u8]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every word of a fixed content, in lexicographic order.
#[derive(Debug, Clone)]
pub struct MultisetPermutations {
    current: Option<Vec<u8>>,
}

impl MultisetPermutations {
    pub(crate) fn new(c: &ContentVector) -> Self {
        MultisetPermutations {
            current: Some(identity(c).into_letters()),
        }
    }
}

impl Iterator for MultisetPermutations {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.as_mut()?;
        let out = Word(cur.clone());
        if !next_permutation(cur) {
            self.current = None;
        }
        Some(out)
    }
}

/// Checks `c` against the configured limits.
pub(crate) fn check_space(c: &ContentVector, limits: &Limits) -> Result<u128> {
    Limits::check("word length", c.total() as u128, limits.max_word_len as u128)?;
    let size = c.space_size().unwrap_or(u128::MAX);
    Limits::check("|W_c|", size, limits.max_space)?;
    Ok(size)
}

/// Streams `W_c` in lexicographic order.
pub fn enumerate_words(c: &ContentVector, limits: &Limits) -> Result<MultisetPermutations> {
    if c.len() > u8::MAX as usize {
        return Err(Error::domain("too many letter values"));
    }
    check_space(c, limits)?;
    Ok(MultisetPermutations::new(c))
}

/// Every normalized word of a fixed length, in lexicographic order.
#[derive(Debug, Clone)]
pub struct NormalizedWords {
    m: usize,
    current: Option<Vec<u8>>,
}

/// Letters still owed by a prefix: values below its maximum that are absent.
fn missing_after(prefix: &[u8]) -> usize {
    let max = prefix.iter().copied().max().unwrap_or(0) as usize;
    let mut seen = [false; 256];
    let mut distinct = 0;
    for &x in prefix {
        if !seen[x as usize] {
            seen[x as usize] = true;
            distinct += 1;
        }
    }
    max - distinct
}

impl NormalizedWords {
    fn new(m: usize) -> Self {
        NormalizedWords {
            m,
            current: Some(vec![1; m]),
        }
    }

    /// Fills `w[from..]` with the lexicographically least normalized completion.
    fn complete(w: &mut Vec<u8>, from: usize, m: usize) {
        w.truncate(from);
        while w.len() < m {
            let remaining = m - w.len() - 1;
            let v = (1..=m as u8)
                .find(|&v| {
                    w.push(v);
                    let ok = missing_after(w) <= remaining;
                    w.pop();
                    ok
                })
                .expect("a normalized completion always exists");
            w.push(v);
        }
    }

    fn advance(w: &mut Vec<u8>, m: usize) -> bool {
        for k in (0..m).rev() {
            let remaining = m - k - 1;
            let old = w[k];
            for v in old + 1..=m as u8 {
                w[k] = v;
                if missing_after(&w[..=k]) <= remaining {
                    Self::complete(w, k + 1, m);
                    return true;
                }
            }
            w[k] = old;
        }
        false
    }
}

impl Iterator for NormalizedWords {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let m = self.m;
        let cur = self.current.as_mut()?;
        let out = Word(cur.clone());
        if m == 0 || !Self::advance(cur, m) {
            self.current = None;
        }
        Some(out)
    }
}

/// Streams the normalized words of length `m`; there are Fubini(m) of them.
pub fn enumerate_normalized(m: usize, limits: &Limits) -> Result<NormalizedWords> {
    Limits::check(
        "normalized word length",
        m as u128,
        limits.max_normalized_len as u128,
    )?;
    Ok(NormalizedWords::new(m))
}

/// Compositions of `m` (content vectors with positive entries summing to
/// `m`), in lexicographic order. `m = 0` gives the single empty vector.
pub fn compositions(m: usize) -> Vec<ContentVector> {
    fn rec(m: usize, prefix: &mut Vec<usize>, out: &mut Vec<ContentVector>) {
        if m == 0 {
            out.push(ContentVector(prefix.clone()));
            return;
        }
        for first in 1..=m {
            prefix.push(first);
            rec(m - first, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::new(), &mut out);
    out
}

/// Ordered set partition (Fubini) numbers: `|NW_m|`.
pub fn fubini(m: usize) -> u128 {
    // a(m) = sum_{k=1}^{m} binom(m, k) a(m - k)
    let mut a = vec![1u128];
    for n in 1..=m {
        let mut binom: u128 = 1;
        let mut sum = 0;
        for k in 1..=n {
            binom = binom * (n - k + 1) as u128 / k as u128;
            sum += binom * a[n - k];
        }
        a.push(sum);
    }
    a[m]
}

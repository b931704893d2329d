//! The `fast` and `slow` stack-sorting operators on words.
//!
//! Both are implemented twice: a recursive version that follows the
//! max-letter decomposition literally (used as the reference in tests) and a
//! linear-time stack machine that every scan in the crate runs on.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{content, identity, is_nondecreasing, ContentVector, Word};

/// Which stacking convention to use for equal letters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SortVariant {
    /// A letter may sit on a copy of itself.
    Fast,
    /// A letter forces an equal letter out of the stack.
    Slow,
}

impl SortVariant {
    pub const BOTH: [SortVariant; 2] = [SortVariant::Fast, SortVariant::Slow];
}

impl fmt::Display for SortVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SortVariant::Fast => "fast",
            SortVariant::Slow => "slow",
        })
    }
}

impl FromStr for SortVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "fast" => Ok(SortVariant::Fast),
            "slow" => Ok(SortVariant::Slow),
            _ => Err(Error::parse("sort variant", format!("{s:?} (expected fast or slow)"))),
        }
    }
}

/// Number of sorting passes needed to reach the identity word.
pub type Distance = usize;

/// Runs one pass of the stack machine over `src`.
///
/// `out` and `stack` are scratch buffers; `out` is overwritten with the result.
pub fn stack_sort_into(src: &[u8], variant: SortVariant, out: &mut Vec<u8>, stack: &mut Vec<u8>) {
    out.clear();
    stack.clear();
    for &x in src {
        match variant {
            SortVariant::Fast => {
                while let Some(&top) = stack.last() {
                    if top < x {
                        out.push(top);
                        stack.pop();
                    } else {
                        break;
                    }
                }
            }
            SortVariant::Slow => {
                while let Some(&top) = stack.last() {
                    if top <= x {
                        out.push(top);
                        stack.pop();
                    } else {
                        break;
                    }
                }
            }
        }
        stack.push(x);
    }
    while let Some(top) = stack.pop() {
        out.push(top);
    }
}

pub fn sort_via_stack(w: &Word, variant: SortVariant) -> Word {
    let mut out = Vec::with_capacity(w.len());
    stack_sort_into(w, variant, &mut out, &mut Vec::with_capacity(w.len()));
    Word::from_raw(out)
}

pub fn sort(w: &Word, variant: SortVariant) -> Word {
    sort_via_stack(w, variant)
}

/// Splits `w` around every copy of its largest letter: `A_1 n A_2 … n A_{k+1}`.
fn split_at_max(w: &[u8]) -> (u8, Vec<&[u8]>) {
    let n = w.iter().copied().max().unwrap_or(0);
    (n, w.split(|&x| x == n).collect())
}

fn fast_rec(w: &[u8], out: &mut Vec<u8>) {
    if w.is_empty() {
        return;
    }
    let (n, parts) = split_at_max(w);
    for part in &parts {
        fast_rec(part, out);
    }
    out.extend(std::iter::repeat_n(n, parts.len() - 1));
}

fn slow_rec(w: &[u8], out: &mut Vec<u8>) {
    if w.is_empty() {
        return;
    }
    let (n, parts) = split_at_max(w);
    // slow(A_1) slow(A_2) n slow(A_3) n … n slow(A_{k+1}) n
    for (i, part) in parts.iter().enumerate() {
        slow_rec(part, out);
        if i >= 1 {
            out.push(n);
        }
    }
}

/// `fast` by its recursive definition.
pub fn sort_fast(w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    fast_rec(w, &mut out);
    Word::from_raw(out)
}

/// `slow` by its recursive definition.
pub fn sort_slow(w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    slow_rec(w, &mut out);
    Word::from_raw(out)
}

pub fn sort_recursive(w: &Word, variant: SortVariant) -> Word {
    match variant {
        SortVariant::Fast => sort_fast(w),
        SortVariant::Slow => sort_slow(w),
    }
}

/// West's stack-sorting map `s`. Any word with distinct letters is
/// accepted, so `4162` is fine; repeated letters are a domain error.
pub fn sort_permutation(p: &Word) -> Result<Word> {
    let mut seen = [false; 256];
    for &x in p.iter() {
        if std::mem::replace(&mut seen[x as usize], true) {
            return Err(Error::domain(format!("{p} has a repeated letter")));
        }
    }
    Ok(sort_via_stack(p, SortVariant::Fast))
}

fn check_letters_fit(c: &ContentVector) -> Result<()> {
    if c.total() > u8::MAX as usize {
        return Err(Error::domain("word too long to encode as a permutation"));
    }
    Ok(())
}

fn phi(w: &Word, ascending: bool) -> Result<Word> {
    let c = content(w);
    check_letters_fit(&c)?;
    // next[i] is the next value handed to letter i+1
    let mut offset = 0usize;
    let mut next: Vec<usize> = c
        .counts()
        .iter()
        .map(|&k| {
            let start = if ascending { offset + 1 } else { offset + k };
            offset += k;
            start
        })
        .collect();
    let letters = w
        .iter()
        .map(|&x| {
            let slot = &mut next[x as usize - 1];
            let v = *slot as u8;
            if ascending {
                *slot += 1;
            } else {
                *slot -= 1;
            }
            v
        })
        .collect();
    Ok(Word::from_raw(letters))
}

/// Replaces the `i`s by `p_i+1, …, p_i+c_i` left to right.
pub fn phi_asc(w: &Word) -> Result<Word> {
    phi(w, true)
}

/// Replaces the `i`s by `p_i+c_i, …, p_i+1` left to right.
pub fn phi_des(w: &Word) -> Result<Word> {
    phi(w, false)
}

/// Collapses the block `p_i+1..=p_i+c_i` of a permutation to the letter `i`.
pub fn psi(c: &ContentVector, p: &Word) -> Result<Word> {
    if p.len() != c.total() {
        return Err(Error::domain(format!(
            "permutation of length {} does not match content {c}",
            p.len()
        )));
    }
    if !p.is_permutation() {
        return Err(Error::domain(format!("{p} is not a permutation")));
    }
    let mut letter_of = vec![0u8; p.len() + 1];
    let mut v = 1;
    for (i, &k) in c.counts().iter().enumerate() {
        for _ in 0..k {
            letter_of[v] = i as u8 + 1;
            v += 1;
        }
    }
    Ok(Word::from_raw(
        p.iter().map(|&x| letter_of[x as usize]).collect(),
    ))
}

/// Minimal number of passes to reach the identity, on a raw letter slice.
///
/// Scratch buffers are passed in so scans can reuse them.
pub fn distance_with(
    w: &[u8],
    variant: SortVariant,
    cur: &mut Vec<u8>,
    next: &mut Vec<u8>,
    stack: &mut Vec<u8>,
) -> Distance {
    cur.clear();
    cur.extend_from_slice(w);
    // passes never exceed the count of letters above the smallest one
    let bound = w.len();
    let mut k = 0;
    while !is_nondecreasing(cur) {
        assert!(k <= bound, "sorting failed to converge on {w:?}");
        stack_sort_into(cur, variant, next, stack);
        std::mem::swap(cur, next);
        k += 1;
    }
    k
}

pub fn distance(w: &Word, variant: SortVariant) -> Distance {
    let c = content(w);
    let k = distance_with(
        w,
        variant,
        &mut Vec::new(),
        &mut Vec::new(),
        &mut Vec::new(),
    );
    assert!(
        k <= c.tail_sum(),
        "distance {k} of {w} exceeds the worst-case bound"
    );
    k
}

/// The chain `w, sort(w), sort²(w), …` through `steps` passes.
pub fn iterate(w: &Word, variant: SortVariant, steps: usize) -> Vec<Word> {
    let mut chain = vec![w.clone()];
    for _ in 0..steps {
        let next = sort(chain.last().unwrap(), variant);
        chain.push(next);
    }
    chain
}

/// The chain from `w` until the identity is reached (inclusive).
pub fn chain_to_identity(w: &Word, variant: SortVariant) -> Vec<Word> {
    iterate(w, variant, distance(w, variant))
}

/// `2^{c_2} 3^{c_3} … n^{c_n} 1^{c_1}`, the worst case for both maps.
pub fn make_rho(c: &ContentVector) -> Result<Word> {
    if !c.all_positive() {
        return Err(Error::domain(format!("rho needs positive entries, got {c}")));
    }
    let mut id = identity(c).into_letters();
    id.rotate_left(c.counts().first().copied().unwrap_or(0));
    Ok(Word::from_raw(id))
}

/// `3 5 … (2n−3) (2n) (2n) 2 4 … (2n−2) (2n−1) 1`, which slow sorts in `n`
/// passes while fast needs `2n − 2`.
pub fn make_eta(n: usize) -> Result<Word> {
    if n < 3 {
        return Err(Error::domain(format!("eta_n needs n >= 3, got {n}")));
    }
    if 2 * n > u8::MAX as usize {
        return Err(Error::domain("eta_n letters do not fit"));
    }
    let n = n as u8;
    let mut v: Vec<u8> = (1..n - 1).map(|i| 2 * i + 1).collect();
    v.extend([2 * n, 2 * n]);
    v.extend((1..n).map(|i| 2 * i));
    v.extend([2 * n - 1, 1]);
    Ok(Word::from_raw(v))
}

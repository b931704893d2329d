use std::collections::HashMap;
use std::fs;
use std::path::Path;
use std::sync::RwLock;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::word::ContentVector;

/// Memoized evaluator for the `M` and `N` recurrences.
///
/// Lookups take a shared lock; inserts take the exclusive lock briefly, so
/// one counter can be shared across threads.
#[derive(Debug, Default)]
pub struct SortableCounter {
    fast: RwLock<HashMap<Vec<usize>, BigUint>>,
    slow: RwLock<HashMap<Vec<usize>, BigUint>>,
}

fn lookup(table: &RwLock<HashMap<Vec<usize>, BigUint>>, key: &[usize]) -> Option<BigUint> {
    table.read().unwrap().get(key).cloned()
}

fn store(table: &RwLock<HashMap<Vec<usize>, BigUint>>, key: &[usize], value: &BigUint) {
    table.write().unwrap().insert(key.to_vec(), value.clone());
}

impl SortableCounter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `M(c)`: zeros are kept, since the recurrence itself produces them.
    pub fn fast(&self, c: &ContentVector) -> BigUint {
        self.m(c.counts())
    }

    /// `N(c)`: zeros are dropped first, which relabels without changing
    /// which words avoid 231 and 221.
    pub fn slow(&self, c: &ContentVector) -> BigUint {
        self.n(c.strip_zeros().counts())
    }

    fn m(&self, c: &[usize]) -> BigUint {
        if c.len() <= 1 {
            return BigUint::one();
        }
        if let Some(v) = lookup(&self.fast, c) {
            return v;
        }
        let rest = &c[2..];
        let value = if c[1] == 0 {
            let mut key = vec![c[0]];
            key.extend_from_slice(rest);
            self.m(&key)
        } else {
            let mut merged = vec![c[0] + c[1]];
            merged.extend_from_slice(rest);
            let mut total = self.m(&merged);
            let mut key = vec![0, c[1] - 1];
            key.extend_from_slice(rest);
            for r in 1..=c[0] {
                key[0] = r;
                total += self.m(&key);
            }
            total
        };
        store(&self.fast, c, &value);
        value
    }

    fn n(&self, c: &[usize]) -> BigUint {
        debug_assert!(c.iter().all(|&x| x > 0));
        let n = c.len();
        if n <= 1 {
            return BigUint::one();
        }
        if let Some(v) = lookup(&self.slow, c) {
            return v;
        }
        // the value does not depend on c_n
        let head = &c[..n - 1];
        let mut total = self.n(head) * 2u32;
        for i in 1..=n.saturating_sub(2) {
            total += self.n(&c[..i]) * self.n(&c[i..n - 1]);
        }
        for i in 1..n {
            let ci = c[i - 1];
            for k in 1..ci {
                let mut left = c[..i - 1].to_vec();
                left.push(k);
                let mut right = vec![ci - k];
                right.extend_from_slice(&c[i..n - 1]);
                total += self.n(&left) * self.n(&right);
            }
        }
        store(&self.slow, c, &total);
        total
    }

    pub fn cached_entries(&self) -> usize {
        self.fast.read().unwrap().len() + self.slow.read().unwrap().len()
    }

    /// Writes the memo tables as `M 1,2,3 <value>` / `N …` lines, sorted.
    pub fn save(&self, path: &Path) -> std::io::Result<()> {
        let mut lines = Vec::new();
        for (tag, table) in [("M", &self.fast), ("N", &self.slow)] {
            for (k, v) in table.read().unwrap().iter() {
                let key: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                lines.push(format!("{tag} {} {v}", key.join(",")));
            }
        }
        lines.sort();
        let mut text = lines.join("\n");
        text.push('\n');
        fs::write(path, text)
    }

    /// Loads a file written by [`SortableCounter::save`]. A missing file
    /// gives an empty counter.
    pub fn load(path: &Path) -> Result<Self> {
        let counter = SortableCounter::new();
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(counter),
            Err(e) => return Err(Error::parse("memo cache", e.to_string())),
        };
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let bad = || Error::parse("memo cache", format!("line {}: {line:?}", lineno + 1));
            let mut parts = line.split_whitespace();
            let (Some(tag), Some(key), Some(value), None) =
                (parts.next(), parts.next(), parts.next(), parts.next())
            else {
                return Err(bad());
            };
            let key = key
                .split(',')
                .map(|x| x.parse::<usize>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| bad())?;
            let value: BigUint = value.parse().map_err(|_| bad())?;
            let table = match tag {
                "M" => &counter.fast,
                "N" => &counter.slow,
                _ => return Err(bad()),
            };
            table.write().unwrap().insert(key, value);
        }
        Ok(counter)
    }
}

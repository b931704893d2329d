//! Checks shared by the acceptance runner and the property suite.

#![allow(dead_code)]

use stacksort::vhc::{induced_coloring, HookConfig, VhcCondition};
use stacksort::word::enumerate_normalized;
use stacksort::{Limits, Word};

pub fn w(s: &str) -> Word {
    s.parse().unwrap()
}

/// Every normalized word of length `1..=max`.
pub fn normalized_upto(max: usize) -> impl Iterator<Item = Word> {
    (1..=max).flat_map(|m| enumerate_normalized(m, &Limits::default()).unwrap())
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}
#[allow(unused_imports)]
pub(crate) use ensure;

/// Structural facts every enumerated configuration must satisfy.
pub fn configuration_invariants(word: &Word, h: &HookConfig) -> Result<(), String> {
    for cond in VhcCondition::ALL {
        ensure!(h.satisfies(word, cond), "{word}: {h:?} breaks {cond:?}");
    }
    let hooks = h.hooks();
    for pair in hooks.windows(2) {
        ensure!(pair[0].sw.index < pair[1].sw.index, "{word}: repeated southwest endpoint");
    }
    for k in hooks {
        for i in k.sw.index + 1..k.ne.index {
            ensure!(word[i - 1] <= k.ne.height, "{word}: hook {k:?} passes below point {i}");
        }
    }
    // a vertical segment may not pierce another hook's horizontal part
    for a in hooks {
        for b in hooks {
            let pierces = a.sw.index < b.sw.index
                && b.sw.index < a.ne.index
                && b.sw.height < a.ne.height
                && a.ne.height < b.ne.height;
            ensure!(!pierces, "{word}: {a:?} and {b:?} cross");
        }
    }

    let coloring = induced_coloring(word, h).map_err(|e| e.to_string())?;
    let classes = coloring.classes(word, h.len());
    for (r, class) in classes.iter().enumerate() {
        for pair in class.windows(2) {
            ensure!(
                pair[0].height < pair[1].height,
                "{word}: class {r} is not strictly increasing"
            );
        }
    }
    for k in hooks {
        let c = coloring.color_of(k.ne.index);
        ensure!(classes[c].len() == 1, "{word}: northeast endpoint {} shares its color", k.ne.index);
    }
    Ok(())
}

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use super::{Hook, HookConfig, PlotPoint};
use crate::error::{Error, Result};
use crate::word::Word;

/// Colors of the plot points: `0` is the sky, `r ≥ 1` is the hook `H_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Coloring {
    colors: Vec<usize>,
}

impl Coloring {
    /// Color of the point at 1-based `index`.
    pub fn color_of(&self, index: usize) -> usize {
        self.colors[index - 1]
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Points of each color class `Q_0, …, Q_k`, left to right.
    pub fn classes(&self, w: &[u8], hook_count: usize) -> Vec<Vec<PlotPoint>> {
        let mut classes = vec![Vec::new(); hook_count + 1];
        for (i, &c) in self.colors.iter().enumerate() {
            classes[c].push(PlotPoint::of(w, i + 1));
        }
        classes
    }
}

/// `(q_0, …, q_k)`: sizes of the color classes, `q_0` counting sky points.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// Each point takes the color of the hook with the rightmost southwest
/// endpoint among those lying above it or ending at it.
pub(crate) fn color_points(w: &[u8], hooks: &[Hook], out: &mut Vec<usize>) {
    out.clear();
    out.extend((1..=w.len()).map(|i| {
        let p = PlotPoint::of(w, i);
        hooks
            .iter()
            .enumerate()
            .rev()
            .find(|(_, h)| h.ne.index == i || h.lies_above(p))
            .map_or(0, |(r, _)| r + 1)
    }));
}

pub fn induced_coloring(w: &Word, h: &HookConfig) -> Result<Coloring> {
    if !h.is_valid(w) {
        return Err(Error::Contract(format!(
            "not a valid hook configuration of {w}"
        )));
    }
    let mut colors = Vec::with_capacity(w.len());
    color_points(w, h.hooks(), &mut colors);
    Ok(Coloring { colors })
}

pub fn induced_composition(w: &Word, h: &HookConfig) -> Result<Composition> {
    let coloring = induced_coloring(w, h)?;
    let mut parts = vec![0; h.len() + 1];
    for &c in coloring.colors() {
        parts[c] += 1;
    }
    Ok(Composition(parts))
}

/// `C_n = binom(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigUint {
    // C_{k+1} = C_k · 2(2k+1) / (k+2)
    let mut c = BigUint::one();
    for k in 0..n {
        c = c * (2 * (2 * k + 1)) / (k + 2);
    }
    c
}

/// `C_q = Π C_{q_t}`.
pub fn catalan_product(q: &Composition) -> BigUint {
    q.parts().iter().map(|&p| catalan(p)).product()
}

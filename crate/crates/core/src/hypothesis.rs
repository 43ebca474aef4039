//! Exact degree-hypothesis checks. All comparisons are integer-only.

use serde::{Deserialize, Serialize};

use crate::graph::{ColoredBipartiteGraph, OrientedBipartiteGraph, Vertex};

/// Comparison used for the color-degree threshold `(3k + 8) / 5`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ThresholdMode {
    /// `5·d^c ≥ 3k + 8`.
    #[default]
    AtLeast,
    /// `5·d^c > 3k + 8`.
    Strict,
}

/// Result of a hypothesis check. `Fail` names the first violator in side order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", content = "vertex", rename_all = "kebab-case")]
pub enum HypothesisCheck {
    Pass,
    Fail(Vertex),
}

impl HypothesisCheck {
    pub fn passed(&self) -> bool {
        matches!(self, HypothesisCheck::Pass)
    }
}

#[inline]
pub fn meets_out_degree_threshold(out_degree: usize, opposite: usize) -> bool {
    3 * out_degree >= opposite
}

#[inline]
pub fn meets_color_degree_threshold(color_degree: usize, opposite: usize, mode: ThresholdMode) -> bool {
    let lhs = 5 * color_degree;
    let rhs = 3 * opposite + 8;
    match mode {
        ThresholdMode::AtLeast => lhs >= rhs,
        ThresholdMode::Strict => lhs > rhs,
    }
}

/// Smallest integer color degree meeting the threshold, i.e. `⌈(3k + 8) / 5⌉`
/// (one more under strict mode when `3k + 8` is divisible by 5).
pub fn color_degree_needed(opposite: usize, mode: ThresholdMode) -> usize {
    (0..).find(|&d| meets_color_degree_threshold(d, opposite, mode)).unwrap()
}

/// Checks `3·d⁺(u) ≥ n` on side A and `3·d⁺(v) ≥ m` on side B.
pub fn check_thm9_hypothesis(d: &OrientedBipartiteGraph) -> HypothesisCheck {
    for v in d.vertices() {
        let opposite = d.side_len(v.side.opposite());
        let deg = d.out_degree(v).expect("vertex from iterator");
        if !meets_out_degree_threshold(deg, opposite) {
            return HypothesisCheck::Fail(v);
        }
    }
    HypothesisCheck::Pass
}

/// Checks `5·d^c(u) ≥ 3n + 8` on side A and `5·d^c(v) ≥ 3m + 8` on side B
/// (`>` in strict mode).
pub fn check_thm10_hypothesis(g: &ColoredBipartiteGraph, mode: ThresholdMode) -> HypothesisCheck {
    for v in g.vertices() {
        let opposite = g.side_len(v.side.opposite());
        let deg = g.color_degree(v).expect("vertex from iterator");
        if !meets_color_degree_threshold(deg, opposite, mode) {
            return HypothesisCheck::Fail(v);
        }
    }
    HypothesisCheck::Pass
}

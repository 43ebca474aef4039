//! Certificate-producing search for directed and rainbow 4-cycles, and the
//! matching certificate checkers.
//!
//! Both finders return the lexicographically least witness `(a1, a2, b1, b2)`
//! with `a1 < a2`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::first_common;
use crate::graph::{
    ColoredBipartiteGraph, DirectedC4Certificate, OrientedBipartiteGraph, RainbowC4Certificate,
    Vertex,
};

/// Why a certificate was rejected. Only the first failed check is reported.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Rejection {
    /// Repeated vertex on one side.
    Degenerate,
    OutOfRange,
    MissingArc { tail: Vertex, head: Vertex },
    MissingEdge { a: usize, b: usize },
    ColorMismatch { a: usize, b: usize, recorded: u64, actual: u64 },
    NotRainbow,
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Degenerate => write!(f, "degenerate cycle (repeated vertex)"),
            Rejection::OutOfRange => write!(f, "vertex out of range"),
            Rejection::MissingArc { tail, head } => write!(f, "missing arc {tail} -> {head}"),
            Rejection::MissingEdge { a, b } => write!(f, "missing edge a{a} b{b}"),
            Rejection::ColorMismatch { a, b, recorded, actual } => write!(
                f,
                "edge a{a} b{b} has color {actual}, certificate records {recorded}"
            ),
            Rejection::NotRainbow => write!(f, "cycle colors are not pairwise distinct"),
        }
    }
}

/// Finds a directed 4-cycle `a1 -> b1 -> a2 -> b2 -> a1`.
///
/// A cycle through `a1 < a2` exists iff `N+(a1) ∩ N-(a2)` and
/// `N+(a2) ∩ N-(a1)` are both nonempty; the least elements give `b1`, `b2`.
pub fn find_directed_c4(d: &OrientedBipartiteGraph) -> Option<DirectedC4Certificate> {
    let out = d.a_out_rows();
    let inn = d.a_in_rows();
    for a1 in 0..d.m() {
        let out1 = out.row(a1);
        let in1 = inn.row(a1);
        for a2 in a1 + 1..d.m() {
            let Some(b1) = first_common(out1, inn.row(a2)) else { continue };
            let Some(b2) = first_common(out.row(a2), in1) else { continue };
            return Some(DirectedC4Certificate { a1, a2, b1, b2 });
        }
    }
    None
}

/// Finds a 4-cycle whose four edge colors are pairwise distinct by scanning
/// every candidate quadruple in lexicographic order.
pub fn find_rainbow_c4_exhaustive(g: &ColoredBipartiteGraph) -> Option<RainbowC4Certificate> {
    let (m, n) = (g.m(), g.n());
    let mut common: Vec<(usize, u64, u64)> = Vec::with_capacity(n);
    for a1 in 0..m {
        for a2 in a1 + 1..m {
            common.clear();
            common.extend((0..n).filter_map(|b| Some((b, g.color(a1, b)?, g.color(a2, b)?))));
            for &(b1, c11, c21) in &common {
                if c11 == c21 {
                    continue;
                }
                for &(b2, c12, c22) in &common {
                    if b2 == b1 {
                        continue;
                    }
                    let cert = RainbowC4Certificate { a1, a2, b1, b2, colors: [c11, c21, c22, c12] };
                    if cert.is_rainbow() {
                        return Some(cert);
                    }
                }
            }
        }
    }
    None
}

/// Accepts iff the four arcs `a1 -> b1 -> a2 -> b2 -> a1` exist with distinct vertices per side.
pub fn verify_directed_c4(
    d: &OrientedBipartiteGraph,
    cert: &DirectedC4Certificate,
) -> Result<(), Rejection> {
    let DirectedC4Certificate { a1, a2, b1, b2 } = *cert;
    if a1 == a2 || b1 == b2 {
        return Err(Rejection::Degenerate);
    }
    if a1.max(a2) >= d.m() || b1.max(b2) >= d.n() {
        return Err(Rejection::OutOfRange);
    }
    let steps = [
        (Vertex::a(a1), Vertex::b(b1)),
        (Vertex::b(b1), Vertex::a(a2)),
        (Vertex::a(a2), Vertex::b(b2)),
        (Vertex::b(b2), Vertex::a(a1)),
    ];
    for (tail, head) in steps {
        if !d.has_arc(tail, head) {
            return Err(Rejection::MissingArc { tail, head });
        }
    }
    Ok(())
}

/// Accepts iff the four edges exist, the recorded colors match `g`, and they are pairwise distinct.
pub fn verify_rainbow_c4(
    g: &ColoredBipartiteGraph,
    cert: &RainbowC4Certificate,
) -> Result<(), Rejection> {
    let RainbowC4Certificate { a1, a2, b1, b2, colors } = *cert;
    if a1 == a2 || b1 == b2 {
        return Err(Rejection::Degenerate);
    }
    if a1.max(a2) >= g.m() || b1.max(b2) >= g.n() {
        return Err(Rejection::OutOfRange);
    }
    let pairs = [(a1, b1), (a2, b1), (a2, b2), (a1, b2)];
    for (&(a, b), &recorded) in pairs.iter().zip(&colors) {
        let actual = g.color(a, b).ok_or(Rejection::MissingEdge { a, b })?;
        if actual != recorded {
            return Err(Rejection::ColorMismatch { a, b, recorded, actual });
        }
    }
    if !cert.is_rainbow() {
        return Err(Rejection::NotRainbow);
    }
    Ok(())
}

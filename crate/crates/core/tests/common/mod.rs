//! Deliberately naive reference implementations, independent of the library's search paths.
#![allow(dead_code)]

use bipartite_c4::{
    gen_dstar, ColoredBipartiteGraph, Direction, OrientedBipartiteGraph,
};
use itertools::Itertools;

pub fn arc(d: &OrientedBipartiteGraph, a: usize, b: usize, dir: Direction) -> bool {
    d.direction(a, b) == Some(dir)
}

/// Scans every ordered quadruple (a1, a2, b1, b2).
pub fn naive_directed_c4(d: &OrientedBipartiteGraph) -> Option<(usize, usize, usize, usize)> {
    for a1 in 0..d.m() {
        for a2 in 0..d.m() {
            for b1 in 0..d.n() {
                for b2 in 0..d.n() {
                    if a1 == a2 || b1 == b2 {
                        continue;
                    }
                    if arc(d, a1, b1, Direction::AtoB)
                        && arc(d, a2, b1, Direction::BtoA)
                        && arc(d, a2, b2, Direction::AtoB)
                        && arc(d, a1, b2, Direction::BtoA)
                    {
                        return Some((a1, a2, b1, b2));
                    }
                }
            }
        }
    }
    None
}

pub fn naive_rainbow_c4(g: &ColoredBipartiteGraph) -> Option<(usize, usize, usize, usize)> {
    for a1 in 0..g.m() {
        for a2 in 0..g.m() {
            for b1 in 0..g.n() {
                for b2 in 0..g.n() {
                    if a1 == a2 || b1 == b2 {
                        continue;
                    }
                    let cs = [g.color(a1, b1), g.color(a2, b1), g.color(a2, b2), g.color(a1, b2)];
                    if cs.iter().any(|c| c.is_none()) {
                        continue;
                    }
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| cs[i] != cs[j]));
                    if distinct {
                        return Some((a1, a2, b1, b2));
                    }
                }
            }
        }
    }
    None
}

pub fn naive_out_degree_ok(d: &OrientedBipartiteGraph) -> bool {
    let (m, n) = (d.m(), d.n());
    let a_ok = (0..m).all(|a| 3 * (0..n).filter(|&b| arc(d, a, b, Direction::AtoB)).count() >= n);
    let b_ok = (0..n).all(|b| 3 * (0..m).filter(|&a| arc(d, a, b, Direction::BtoA)).count() >= m);
    a_ok && b_ok
}

/// Searches all side-preserving relabelings for one mapping `d` onto `gen_dstar(m, n)`.
pub fn isomorphic_to_dstar(d: &OrientedBipartiteGraph) -> bool {
    let (m, n) = (d.m(), d.n());
    let Ok(target) = gen_dstar(m, n) else { return false };
    if target.arc_count() != d.arc_count() {
        return false;
    }
    for pa in (0..m).permutations(m) {
        for pb in (0..n).permutations(n) {
            let same = (0..m).all(|a| (0..n).all(|b| d.direction(a, b) == target.direction(pa[a], pb[b])));
            if same {
                return true;
            }
        }
    }
    false
}

/// Decodes the base-3 numeral `index` over pairs `a·n + b` (most significant first).
pub fn decode_orientation(m: usize, n: usize, mut index: u64) -> OrientedBipartiteGraph {
    let cells = m * n;
    let mut digits = vec![0u8; cells];
    for slot in digits.iter_mut().rev() {
        *slot = (index % 3) as u8;
        index /= 3;
    }
    let arcs: Vec<_> = digits
        .iter()
        .enumerate()
        .filter_map(|(cell, &dg)| match dg {
            1 => Some((cell / n, cell % n, Direction::AtoB)),
            2 => Some((cell / n, cell % n, Direction::BtoA)),
            _ => None,
        })
        .collect();
    OrientedBipartiteGraph::from_arcs(m, n, &arcs).unwrap()
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct BruteCounts {
    pub examined: u64,
    pub satisfied: u64,
    pub with_cycle: u64,
    pub extremal: u64,
    pub counterexamples: u64,
}

/// Full unpruned enumeration with the naive predicates.
pub fn brute_force_out_degree(m: usize, n: usize) -> BruteCounts {
    let mut c = BruteCounts::default();
    for index in 0..3u64.pow((m * n) as u32) {
        c.examined += 1;
        let d = decode_orientation(m, n, index);
        if !naive_out_degree_ok(&d) {
            continue;
        }
        c.satisfied += 1;
        if naive_directed_c4(&d).is_some() {
            c.with_cycle += 1;
        } else if isomorphic_to_dstar(&d) {
            c.extremal += 1;
        } else {
            c.counterexamples += 1;
        }
    }
    c
}

use bipartite_c4::Color;
use rand::Rng;

/// Colored graph biased towards reductions that survive to an orientation:
/// `a0` and `b0` see distinct colors, inner edges mostly reuse one of them.
pub fn reduction_friendly<R: Rng>(m: usize, n: usize, rng: &mut R) -> ColoredBipartiteGraph {
    let mut edges = vec![(0, 0, 1 as Color)];
    edges.extend((1..n).map(|b| (0, b, 100 + b as Color)));
    edges.extend((1..m).map(|a| (a, 0, 200 + a as Color)));
    for a in 1..m {
        for b in 1..n {
            let c = match rng.gen_range(0..20) {
                0..=3 => 1,
                4..=10 => 100 + b as Color,
                11..=17 => 200 + a as Color,
                18 => rng.gen_range(1..=4),
                _ => continue,
            };
            edges.push((a, b, c));
        }
    }
    ColoredBipartiteGraph::from_edges(m, n, &edges).unwrap()
}

/// An 8×8 colored graph whose reduction at `(a0, b0)` is `D*(6, 6)` with
/// blocks `{0,1}, {2,3}, {4,5}` on both sides.
///
/// `C(a0 b_j) = 10 + j`, `C(a_i b0) = 20 + i`, `C(a0 b0) = 1`. Inside
/// `A1 × B1 = {a1..a6} × {b1..b6}` the block arcs reuse the matching outer
/// color and the remaining pairs carry color 1. `a7` and `b7` only touch the
/// fixed edge's endpoints.
pub fn extremal_fixture() -> ColoredBipartiteGraph {
    let block = |p: usize| (p - 1) / 2;
    let mut edges = vec![(0, 0, 1 as Color)];
    edges.extend((1..8).map(|b| (0, b, 10 + b as Color)));
    edges.extend((1..8).map(|a| (a, 0, 20 + a as Color)));
    for a in 1..7 {
        for b in 1..7 {
            let c = if block(a) == block(b) {
                10 + b as Color
            } else if block(a) == (block(b) + 1) % 3 {
                20 + a as Color
            } else {
                1
            };
            edges.push((a, b, c));
        }
    }
    ColoredBipartiteGraph::from_edges(8, 8, &edges).unwrap()
}

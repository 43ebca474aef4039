//! Oriented and edge-colored bipartite graphs.
//!
//! Vertices are addressed per side with 0-based indices. Side `A` has `m`
//! vertices and side `B` has `n`. Oriented graphs keep four packed bit rows
//! per vertex pair of sides (out/in for each side) so cycle detection can work
//! by word-wise intersection.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::error::GraphError;

pub type Color = u64;

/// One of the two parts of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl From<Side> for u8 {
    fn from(side: Side) -> u8 {
        match side {
            Side::A => 0,
            Side::B => 1,
        }
    }
}

impl TryFrom<u8> for Side {
    type Error = String;

    fn try_from(value: u8) -> Result<Self, Self::Error> {
        match value {
            0 => Ok(Side::A),
            1 => Ok(Side::B),
            other => Err(format!("side must be 0 or 1, got {other}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub side: Side,
    pub index: usize,
}

impl Vertex {
    pub fn a(index: usize) -> Self {
        Vertex { side: Side::A, index }
    }

    pub fn b(index: usize) -> Self {
        Vertex { side: Side::B, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.side {
            Side::A => write!(f, "a{}", self.index),
            Side::B => write!(f, "b{}", self.index),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Direction {
    AtoB,
    BtoA,
}

/// An arc given by its side-A endpoint, side-B endpoint and direction.
pub type Arc = (usize, usize, Direction);

/// A colored edge given by its side-A endpoint, side-B endpoint and color.
pub type ColoredEdge = (usize, usize, Color);

/// A broken structural invariant found by [`validate_arcs`] or [`validate_edges`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation", rename_all = "kebab-case")]
pub enum Violation {
    OutOfRange { a: usize, b: usize, m: usize, n: usize },
    /// Both orientations present on one pair.
    Digon { a: usize, b: usize },
    DuplicateArc { a: usize, b: usize },
    DuplicateEdge { a: usize, b: usize },
    /// Colors are positive integers; 0 is rejected.
    ZeroColor { a: usize, b: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OutOfRange { a, b, m, n } => {
                write!(f, "pair ({a},{b}) out of range for sides ({m},{n})")
            }
            Violation::Digon { a, b } => write!(f, "digon on pair ({a},{b})"),
            Violation::DuplicateArc { a, b } => write!(f, "duplicate arc on pair ({a},{b})"),
            Violation::DuplicateEdge { a, b } => write!(f, "duplicate edge on pair ({a},{b})"),
            Violation::ZeroColor { a, b } => write!(f, "edge ({a},{b}) has color 0"),
        }
    }
}

/// Checks an arc list against the oriented-bipartite invariants, reporting every violation.
pub fn validate_arcs(m: usize, n: usize, arcs: &[Arc]) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen: BTreeSet<(usize, usize, Direction)> = BTreeSet::new();
    let mut digons: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b, dir) in arcs {
        if a >= m || b >= n {
            violations.push(Violation::OutOfRange { a, b, m, n });
            continue;
        }
        if !seen.insert((a, b, dir)) {
            violations.push(Violation::DuplicateArc { a, b });
            continue;
        }
        let reverse = match dir {
            Direction::AtoB => Direction::BtoA,
            Direction::BtoA => Direction::AtoB,
        };
        if seen.contains(&(a, b, reverse)) && digons.insert((a, b)) {
            violations.push(Violation::Digon { a, b });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// Checks a colored edge list, reporting every violation.
pub fn validate_edges(m: usize, n: usize, edges: &[ColoredEdge]) -> Result<(), Vec<Violation>> {
    let mut violations = Vec::new();
    let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(a, b, color) in edges {
        if a >= m || b >= n {
            violations.push(Violation::OutOfRange { a, b, m, n });
            continue;
        }
        if color == 0 {
            violations.push(Violation::ZeroColor { a, b });
        }
        if !seen.insert((a, b)) {
            violations.push(Violation::DuplicateEdge { a, b });
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

/// An oriented bipartite graph `D[A,B]`.
///
/// Immutable once built. Each unordered pair carries at most one arc.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedBipartiteGraph {
    m: usize,
    n: usize,
    // a_out[a] has bit b when a -> b; a_in[a] has bit b when b -> a.
    a_out: BitMatrix,
    a_in: BitMatrix,
    // b_out[b] has bit a when b -> a; b_in[b] has bit a when a -> b.
    b_out: BitMatrix,
    b_in: BitMatrix,
}

impl OrientedBipartiteGraph {
    /// A graph with no arcs.
    pub fn empty(m: usize, n: usize) -> Self {
        OrientedBipartiteGraph {
            m,
            n,
            a_out: BitMatrix::new(m, n),
            a_in: BitMatrix::new(m, n),
            b_out: BitMatrix::new(n, m),
            b_in: BitMatrix::new(n, m),
        }
    }

    pub fn from_arcs(m: usize, n: usize, arcs: &[Arc]) -> Result<Self, GraphError> {
        validate_arcs(m, n, arcs).map_err(GraphError::Invalid)?;
        let mut g = Self::empty(m, n);
        for &(a, b, dir) in arcs {
            g.set(a, b, dir);
        }
        Ok(g)
    }

    /// Builder-side insertion. Callers must guarantee the pair is free.
    pub(crate) fn set(&mut self, a: usize, b: usize, dir: Direction) {
        debug_assert!(self.direction(a, b).is_none());
        match dir {
            Direction::AtoB => {
                self.a_out.insert(a, b);
                self.b_in.insert(b, a);
            }
            Direction::BtoA => {
                self.b_out.insert(b, a);
                self.a_in.insert(a, b);
            }
        }
    }

    /// Removes whatever arc sits on pair `(a, b)`.
    pub fn remove_arc(&mut self, a: usize, b: usize) {
        self.a_out.remove(a, b);
        self.b_in.remove(b, a);
        self.b_out.remove(b, a);
        self.a_in.remove(a, b);
    }

    /// Adds an arc on a free pair, failing on an occupied one.
    pub fn add_arc(&mut self, a: usize, b: usize, dir: Direction) -> Result<(), GraphError> {
        if a >= self.m || b >= self.n {
            return Err(GraphError::Invalid(vec![Violation::OutOfRange {
                a,
                b,
                m: self.m,
                n: self.n,
            }]));
        }
        match self.direction(a, b) {
            None => {
                self.set(a, b, dir);
                Ok(())
            }
            Some(existing) if existing == dir => {
                Err(GraphError::Invalid(vec![Violation::DuplicateArc { a, b }]))
            }
            Some(_) => Err(GraphError::Invalid(vec![Violation::Digon { a, b }])),
        }
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::A => self.m,
            Side::B => self.n,
        }
    }

    pub fn direction(&self, a: usize, b: usize) -> Option<Direction> {
        if self.a_out.contains(a, b) {
            Some(Direction::AtoB)
        } else if self.a_in.contains(a, b) {
            Some(Direction::BtoA)
        } else {
            None
        }
    }

    pub fn has_arc(&self, tail: Vertex, head: Vertex) -> bool {
        match (tail.side, head.side) {
            (Side::A, Side::B) if tail.index < self.m && head.index < self.n => {
                self.a_out.contains(tail.index, head.index)
            }
            (Side::B, Side::A) if tail.index < self.n && head.index < self.m => {
                self.b_out.contains(tail.index, head.index)
            }
            _ => false,
        }
    }

    pub fn arc_count(&self) -> usize {
        self.a_out.count_all() + self.b_out.count_all()
    }

    /// All arcs sorted by `(a, b)`.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut out = Vec::with_capacity(self.arc_count());
        for a in 0..self.m {
            for b in 0..self.n {
                if let Some(d) = self.direction(a, b) {
                    out.push((a, b, d));
                }
            }
        }
        out
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v.index < self.side_len(v.side) {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    pub fn out_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(match v.side {
            Side::A => self.a_out.row_count(v.index),
            Side::B => self.b_out.row_count(v.index),
        })
    }

    pub fn in_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        self.check(v)?;
        Ok(match v.side {
            Side::A => self.a_in.row_count(v.index),
            Side::B => self.b_in.row_count(v.index),
        })
    }

    /// Out-neighbors on the opposite side, increasing.
    pub fn out_neighbors(&self, v: Vertex) -> Result<Vec<usize>, GraphError> {
        self.check(v)?;
        Ok(match v.side {
            Side::A => self.a_out.row_iter(v.index).collect(),
            Side::B => self.b_out.row_iter(v.index).collect(),
        })
    }

    pub fn in_neighbors(&self, v: Vertex) -> Result<Vec<usize>, GraphError> {
        self.check(v)?;
        Ok(match v.side {
            Side::A => self.a_in.row_iter(v.index).collect(),
            Side::B => self.b_in.row_iter(v.index).collect(),
        })
    }

    /// Vertices in side order: all of A, then all of B.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.m).map(Vertex::a).chain((0..self.n).map(Vertex::b))
    }

    /// Re-checks the stored arcs against every invariant.
    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        let mut violations = Vec::new();
        for a in 0..self.m {
            for b in 0..self.n {
                let fwd = self.a_out.contains(a, b);
                let bwd = self.a_in.contains(a, b);
                if fwd && bwd {
                    violations.push(Violation::Digon { a, b });
                }
            }
        }
        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }

    pub(crate) fn a_out_rows(&self) -> &BitMatrix {
        &self.a_out
    }

    pub(crate) fn a_in_rows(&self) -> &BitMatrix {
        &self.a_in
    }
}

impl fmt::Debug for OrientedBipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrientedBipartiteGraph")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("arcs", &self.arcs())
            .finish()
    }
}

/// An edge-colored bipartite graph `G^c`.
///
/// Stored densely: `colors[a * n + b]` is the edge color, 0 meaning no edge.
#[derive(Clone, PartialEq, Eq)]
pub struct ColoredBipartiteGraph {
    m: usize,
    n: usize,
    colors: Vec<Color>,
}

impl ColoredBipartiteGraph {
    pub fn empty(m: usize, n: usize) -> Self {
        ColoredBipartiteGraph { m, n, colors: vec![0; m * n] }
    }

    pub fn from_edges(m: usize, n: usize, edges: &[ColoredEdge]) -> Result<Self, GraphError> {
        validate_edges(m, n, edges).map_err(GraphError::Invalid)?;
        let mut g = Self::empty(m, n);
        for &(a, b, c) in edges {
            g.colors[a * n + b] = c;
        }
        Ok(g)
    }

    /// Sets or overwrites the color of pair `(a, b)`.
    pub(crate) fn put(&mut self, a: usize, b: usize, color: Color) {
        debug_assert!(color > 0);
        self.colors[a * self.n + b] = color;
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn side_len(&self, side: Side) -> usize {
        match side {
            Side::A => self.m,
            Side::B => self.n,
        }
    }

    /// Color of the edge `ab`, if present. Out-of-range pairs have no edge.
    #[inline]
    pub fn color(&self, a: usize, b: usize) -> Option<Color> {
        if a >= self.m || b >= self.n {
            return None;
        }
        match self.colors[a * self.n + b] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.colors.iter().filter(|&&c| c != 0).count()
    }

    pub fn edges(&self) -> Vec<ColoredEdge> {
        let mut out = Vec::new();
        for a in 0..self.m {
            for b in 0..self.n {
                if let Some(c) = self.color(a, b) {
                    out.push((a, b, c));
                }
            }
        }
        out
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.m).map(Vertex::a).chain((0..self.n).map(Vertex::b))
    }

    /// Color of the edge between `v` and opposite-side vertex `w`.
    #[inline]
    pub fn color_between(&self, v: Vertex, w: usize) -> Option<Color> {
        match v.side {
            Side::A => self.color(v.index, w),
            Side::B => self.color(w, v.index),
        }
    }

    fn check(&self, v: Vertex) -> Result<(), GraphError> {
        if v.index < self.side_len(v.side) {
            Ok(())
        } else {
            Err(GraphError::InvalidVertex(v))
        }
    }

    /// Neighbors of `v` on the opposite side paired with edge colors, increasing index.
    pub fn incident(&self, v: Vertex) -> Result<Vec<(usize, Color)>, GraphError> {
        self.check(v)?;
        let other = self.side_len(v.side.opposite());
        Ok((0..other)
            .filter_map(|w| self.color_between(v, w).map(|c| (w, c)))
            .collect())
    }

    pub fn degree(&self, v: Vertex) -> Result<usize, GraphError> {
        Ok(self.incident(v)?.len())
    }

    /// Number of distinct colors on edges at `v`.
    pub fn color_degree(&self, v: Vertex) -> Result<usize, GraphError> {
        let colors: BTreeSet<Color> = self.incident(v)?.into_iter().map(|(_, c)| c).collect();
        Ok(colors.len())
    }

    /// A color neighborhood set of `v`: neighbors whose edge colors to `v` are
    /// pairwise distinct, one per color class, so its length equals the color
    /// degree.
    ///
    /// Neighbors are scanned in increasing index order and the first neighbor
    /// seen with each new color is kept. When `must_include` is given it is
    /// placed first and its color class is represented by it.
    pub fn color_neighborhood(
        &self,
        v: Vertex,
        must_include: Option<usize>,
    ) -> Result<Vec<usize>, GraphError> {
        let incident = self.incident(v)?;
        let mut used: BTreeSet<Color> = BTreeSet::new();
        let mut out = Vec::new();
        if let Some(w) = must_include {
            let c = self
                .color_between(v, w)
                .ok_or(GraphError::NotAdjacent { v, w })?;
            used.insert(c);
            out.push(w);
        }
        for (w, c) in incident {
            if used.insert(c) {
                out.push(w);
            }
        }
        Ok(out)
    }

    /// Colored subgraph induced on the listed vertices, relabeled by list position.
    pub fn induced(&self, a_list: &[usize], b_list: &[usize]) -> ColoredBipartiteGraph {
        let mut sub = ColoredBipartiteGraph::empty(a_list.len(), b_list.len());
        for (i, &a) in a_list.iter().enumerate() {
            for (j, &b) in b_list.iter().enumerate() {
                if let Some(c) = self.color(a, b) {
                    sub.put(i, j, c);
                }
            }
        }
        sub
    }

    pub fn validate(&self) -> Result<(), Vec<Violation>> {
        // Dense storage cannot hold duplicates or out-of-range pairs.
        Ok(())
    }
}

impl fmt::Debug for ColoredBipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ColoredBipartiteGraph")
            .field("m", &self.m)
            .field("n", &self.n)
            .field("edges", &self.edges())
            .finish()
    }
}

/// Witness for a directed 4-cycle `a1 -> b1 -> a2 -> b2 -> a1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct DirectedC4Certificate {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
}

/// Witness for a rainbow 4-cycle `a1 - b1 - a2 - b2 - a1`.
///
/// `colors` are listed in cycle order: `a1b1`, `b1a2`, `a2b2`, `b2a1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RainbowC4Certificate {
    pub a1: usize,
    pub a2: usize,
    pub b1: usize,
    pub b2: usize,
    pub colors: [Color; 4],
}

impl RainbowC4Certificate {
    /// Reads the colors of cycle `a1 - b1 - a2 - b2` out of `g`, if all four edges exist.
    pub fn from_cycle(
        g: &ColoredBipartiteGraph,
        a1: usize,
        b1: usize,
        a2: usize,
        b2: usize,
    ) -> Option<Self> {
        Some(RainbowC4Certificate {
            a1,
            a2,
            b1,
            b2,
            colors: [g.color(a1, b1)?, g.color(a2, b1)?, g.color(a2, b2)?, g.color(a1, b2)?],
        })
    }

    pub fn is_rainbow(&self) -> bool {
        let c = &self.colors;
        (0..4).all(|i| (i + 1..4).all(|j| c[i] != c[j]))
    }
}

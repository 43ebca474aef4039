//! Deterministic constructions and seeded random instance generators.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64(seed)`: a generator
//! call is a pure function of its arguments, seed included, on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::ConstructionError;
use crate::graph::{Color, ColoredBipartiteGraph, Direction, OrientedBipartiteGraph, Vertex};
use crate::hypothesis::{
    check_thm10_hypothesis, check_thm9_hypothesis, meets_color_degree_threshold,
    meets_out_degree_threshold, HypothesisCheck, ThresholdMode,
};

/// Fresh samples drawn before a hypothesis-enforcing generator gives up.
pub const ATTEMPT_BUDGET: u32 = 100;

/// The pseudo-random stream behind every generator in this crate.
pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The extremal orientation `D*(m, n)`.
///
/// Side A is cut into contiguous blocks `M0, M1, M2` of size `m/3` and side B
/// into `N0, N1, N2` of size `n/3`. Arcs are all of `Mi -> Ni` and
/// `Ni -> M(i+1 mod 3)`, so the graph has `2mn/3` arcs and every vertex has
/// out-degree exactly a third of the opposite side.
pub fn gen_dstar(m: usize, n: usize) -> Result<OrientedBipartiteGraph, ConstructionError> {
    if m == 0 || n == 0 || m % 3 != 0 || n % 3 != 0 {
        return Err(ConstructionError::Divisibility { m, n });
    }
    let (bm, bn) = (m / 3, n / 3);
    let mut d = OrientedBipartiteGraph::empty(m, n);
    for i in 0..3 {
        let next = (i + 1) % 3;
        for b in i * bn..(i + 1) * bn {
            for a in i * bm..(i + 1) * bm {
                d.set(a, b, Direction::AtoB);
            }
            for a in next * bm..(next + 1) * bm {
                d.set(a, b, Direction::BtoA);
            }
        }
    }
    Ok(d)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PaddingResult {
    pub padded: OrientedBipartiteGraph,
    /// New side-A vertices, indexed `m'..m'+added_a` in `padded`.
    pub added_a: usize,
    /// New side-B vertices, indexed `n'..n'+added_b` in `padded`.
    pub added_b: usize,
}

/// Pads both sides up to the next multiple of 3.
///
/// Every new side-A vertex gets an arc to every original side-B vertex and
/// every new side-B vertex an arc to every original side-A vertex. New
/// vertices receive no arcs, so no directed cycle passes through them.
pub fn pad_to_multiple_of_three(d: &OrientedBipartiteGraph) -> PaddingResult {
    let (m, n) = (d.m(), d.n());
    let (pm, pn) = (m.div_ceil(3) * 3, n.div_ceil(3) * 3);
    let mut padded = OrientedBipartiteGraph::empty(pm, pn);
    for (a, b, dir) in d.arcs() {
        padded.set(a, b, dir);
    }
    for a in m..pm {
        for b in 0..n {
            padded.set(a, b, Direction::AtoB);
        }
    }
    for b in n..pn {
        for a in 0..m {
            padded.set(a, b, Direction::BtoA);
        }
    }
    PaddingResult { padded, added_a: pm - m, added_b: pn - n }
}

/// `K_{n,n}` with `C(a_i, b_j) = ((i + j) mod n) + 1`, a proper `n`-edge-coloring.
pub fn gen_proper_coloring_complete(n: usize) -> ColoredBipartiteGraph {
    let mut g = ColoredBipartiteGraph::empty(n, n);
    for a in 0..n {
        for b in 0..n {
            g.put(a, b, ((a + b) % n) as Color + 1);
        }
    }
    g
}

/// Probabilities that an A–B pair gets no arc, an `A -> B` arc, or a `B -> A` arc.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ArcProfile {
    pub none: f64,
    pub a_to_b: f64,
    pub b_to_a: f64,
}

impl ArcProfile {
    pub const UNIFORM: ArcProfile = ArcProfile { none: 1.0 / 3.0, a_to_b: 1.0 / 3.0, b_to_a: 1.0 / 3.0 };

    pub fn new(none: f64, a_to_b: f64, b_to_a: f64) -> Result<Self, ConstructionError> {
        let p = ArcProfile { none, a_to_b, b_to_a };
        p.validate()?;
        Ok(p)
    }

    fn validate(&self) -> Result<(), ConstructionError> {
        let parts = [self.none, self.a_to_b, self.b_to_a];
        let ok = parts.iter().all(|p| p.is_finite() && *p >= 0.0)
            && (parts.iter().sum::<f64>() - 1.0).abs() <= 1e-9;
        if ok {
            Ok(())
        } else {
            Err(ConstructionError::BadProfile(self.none, self.a_to_b, self.b_to_a))
        }
    }
}

fn sample_oriented<R: Rng>(m: usize, n: usize, profile: &ArcProfile, rng: &mut R) -> OrientedBipartiteGraph {
    let mut d = OrientedBipartiteGraph::empty(m, n);
    for a in 0..m {
        for b in 0..n {
            let x: f64 = rng.gen();
            if x < profile.none {
                continue;
            }
            let dir = if x < profile.none + profile.a_to_b { Direction::AtoB } else { Direction::BtoA };
            d.set(a, b, dir);
        }
    }
    d
}

/// Gives every vertex below the out-degree threshold new arcs toward
/// uniformly chosen non-adjacent opposite vertices. Existing arcs are kept.
fn repair_out_degrees<R: Rng>(d: &mut OrientedBipartiteGraph, rng: &mut R) {
    let (m, n) = (d.m(), d.n());
    for a in 0..m {
        let mut free: Vec<usize> = (0..n).filter(|&b| d.direction(a, b).is_none()).collect();
        let mut deg = d.out_degree(Vertex::a(a)).unwrap();
        while !meets_out_degree_threshold(deg, n) && !free.is_empty() {
            let k = rng.gen_range(0..free.len());
            let b = free.swap_remove(k);
            d.set(a, b, Direction::AtoB);
            deg += 1;
        }
    }
    for b in 0..n {
        let mut free: Vec<usize> = (0..m).filter(|&a| d.direction(a, b).is_none()).collect();
        let mut deg = d.out_degree(Vertex::b(b)).unwrap();
        while !meets_out_degree_threshold(deg, m) && !free.is_empty() {
            let k = rng.gen_range(0..free.len());
            let a = free.swap_remove(k);
            d.set(a, b, Direction::BtoA);
            deg += 1;
        }
    }
}

/// Random orientation: each pair independently gets no arc, `A -> B` or
/// `B -> A` according to `profile`.
///
/// With `enforce_thm9`, each sample is repaired so every vertex reaches
/// `3·d⁺ ≥` opposite side size; if a sample cannot be repaired a fresh one is
/// drawn, up to [`ATTEMPT_BUDGET`] samples.
pub fn gen_random_oriented(
    m: usize,
    n: usize,
    profile: ArcProfile,
    seed: u64,
    enforce_thm9: bool,
) -> Result<OrientedBipartiteGraph, ConstructionError> {
    profile.validate()?;
    let mut rng = rng_from_seed(seed);
    if !enforce_thm9 {
        return Ok(sample_oriented(m, n, &profile, &mut rng));
    }
    let mut last = Vertex::a(0);
    for _ in 0..ATTEMPT_BUDGET {
        let mut d = sample_oriented(m, n, &profile, &mut rng);
        repair_out_degrees(&mut d, &mut rng);
        match check_thm9_hypothesis(&d) {
            HypothesisCheck::Pass => return Ok(d),
            HypothesisCheck::Fail(v) => last = v,
        }
    }
    Err(ConstructionError::GenerationFailed { seed, attempts: ATTEMPT_BUDGET, vertex: last })
}

/// Parameters for [`gen_random_colored`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ColoredParams {
    pub m: usize,
    pub n: usize,
    pub edge_prob: f64,
    pub palette: u64,
    /// Resample until the color-degree hypothesis holds.
    pub enforce_thm10: bool,
    /// Samples drawn before giving up when enforcing.
    pub attempts: u32,
}

impl ColoredParams {
    pub fn new(m: usize, n: usize, edge_prob: f64, palette: u64, enforce_thm10: bool) -> Self {
        ColoredParams { m, n, edge_prob, palette, enforce_thm10, attempts: ATTEMPT_BUDGET }
    }
}

fn sample_colored<R: Rng>(p: &ColoredParams, rng: &mut R) -> ColoredBipartiteGraph {
    let mut g = ColoredBipartiteGraph::empty(p.m, p.n);
    for a in 0..p.m {
        sample_colored_row(&mut g, a, p, rng);
    }
    g
}

fn sample_colored_row<R: Rng>(g: &mut ColoredBipartiteGraph, a: usize, p: &ColoredParams, rng: &mut R) {
    for b in 0..p.n {
        let keep = rng.gen_bool(p.edge_prob);
        let color = rng.gen_range(1..=p.palette);
        if keep {
            g.put(a, b, color);
        }
    }
}

/// Draws one sample, abandoning it as soon as a finished side-A row misses
/// the color-degree threshold. Accepted samples are distributed exactly as
/// full samples conditioned on the hypothesis.
fn sample_colored_enforced<R: Rng>(p: &ColoredParams, rng: &mut R) -> Result<ColoredBipartiteGraph, Vertex> {
    let mut g = ColoredBipartiteGraph::empty(p.m, p.n);
    for a in 0..p.m {
        sample_colored_row(&mut g, a, p, rng);
        let v = Vertex::a(a);
        if !meets_color_degree_threshold(g.color_degree(v).unwrap(), p.n, ThresholdMode::AtLeast) {
            return Err(v);
        }
    }
    match check_thm10_hypothesis(&g, ThresholdMode::AtLeast) {
        HypothesisCheck::Pass => Ok(g),
        HypothesisCheck::Fail(v) => Err(v),
    }
}

/// Random colored graph: each pair kept with probability `edge_prob`, colors
/// uniform over `1..=palette`.
///
/// With `enforce_thm10`, samples are rejected until
/// `5·d^c ≥ 3·(opposite side) + 8` holds everywhere, for at most
/// `params.attempts` samples.
pub fn gen_random_colored(params: ColoredParams, seed: u64) -> Result<ColoredBipartiteGraph, ConstructionError> {
    if !(0.0..=1.0).contains(&params.edge_prob) {
        return Err(ConstructionError::BadEdgeProbability(params.edge_prob));
    }
    if params.palette == 0 {
        return Err(ConstructionError::EmptyPalette);
    }
    let mut rng = rng_from_seed(seed);
    if !params.enforce_thm10 {
        return Ok(sample_colored(&params, &mut rng));
    }
    let mut last = Vertex::a(0);
    for _ in 0..params.attempts.max(1) {
        match sample_colored_enforced(&params, &mut rng) {
            Ok(g) => return Ok(g),
            Err(v) => last = v,
        }
    }
    Err(ConstructionError::GenerationFailed { seed, attempts: params.attempts.max(1), vertex: last })
}

/// Applies independent uniformly random permutations to both sides.
pub fn relabel_randomly<R: Rng>(d: &OrientedBipartiteGraph, rng: &mut R) -> OrientedBipartiteGraph {
    let mut pa: Vec<usize> = (0..d.m()).collect();
    let mut pb: Vec<usize> = (0..d.n()).collect();
    pa.shuffle(rng);
    pb.shuffle(rng);
    let mut out = OrientedBipartiteGraph::empty(d.m(), d.n());
    for (a, b, dir) in d.arcs() {
        out.set(pa[a], pb[b], dir);
    }
    out
}

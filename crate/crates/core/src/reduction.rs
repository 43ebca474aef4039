//! Turning a rainbow-4-cycle question into a directed-4-cycle question.
//!
//! Fix an edge `xy` of color `c0`. Take `B1` from a color neighborhood of `x`
//! (excluding `y`) and `A1` from one of `y` (excluding `x`), truncated to
//! `r - 1` and `s - 1` vertices where `r = ⌈(3n + 8)/5⌉` and
//! `s = ⌈(3m + 8)/5⌉`. An edge `x_i y_j` between them whose color is neither
//! `c0` nor shared by `x y_j` and `y x_i` must carry `C(x y_j)` or `C(y x_i)`,
//! else `x y_j x_i y` is already rainbow. It is oriented `x_i -> y_j` in the
//! first case and `y_j -> x_i` in the second. A directed 4-cycle in that
//! orientation is a rainbow 4-cycle in the colored graph.

use serde::{Deserialize, Serialize};

use crate::detect::{find_directed_c4, find_rainbow_c4_exhaustive, verify_directed_c4, Rejection};
use crate::dstar::{is_dstar, BlockDecomposition};
use crate::error::ReductionError;
use crate::graph::{
    Color, ColoredBipartiteGraph, DirectedC4Certificate, Direction, OrientedBipartiteGraph,
    RainbowC4Certificate, Vertex,
};
use crate::hypothesis::{check_thm10_hypothesis, color_degree_needed, HypothesisCheck, ThresholdMode};

/// Which coloring rule produced an arc of the auxiliary orientation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcRule {
    /// `C(x_i y_j) = C(x y_j)`; arc `x_i -> y_j`.
    AgreesWithX,
    /// `C(x_i y_j) = C(y x_i)`; arc `y_j -> x_i`.
    AgreesWithY,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SkipReason {
    /// The edge has the color of `xy`.
    ColorIsC0,
    /// `C(x y_j) = C(y x_i)`, so neither rule applies.
    EndpointColorsEqual,
}

/// An arc of the auxiliary orientation, in positions of `A1` / `B1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenancedArc {
    pub a: usize,
    pub b: usize,
    pub direction: Direction,
    pub rule: ArcRule,
    pub color: Color,
}

/// An edge of `G[A1, B1]` that received no arc, in original vertex ids.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedEdge {
    pub a: usize,
    pub b: usize,
    pub color: Color,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionContext {
    pub x: usize,
    pub y: usize,
    pub c0: Color,
    pub s: usize,
    pub r: usize,
    /// `s - 1` side-A vertices with distinct colors to `y`, `x` excluded.
    pub a1: Vec<usize>,
    /// `r - 1` side-B vertices with distinct colors to `x`, `y` excluded.
    pub b1: Vec<usize>,
    /// The auxiliary orientation on `(A1, B1)`, indexed by list position.
    pub d: OrientedBipartiteGraph,
    pub arcs: Vec<ProvenancedArc>,
    pub skipped: Vec<SkippedEdge>,
    /// `G[A1, B1]`, indexed by list position.
    pub sub: ColoredBipartiteGraph,
}

impl ReductionContext {
    pub fn provenance(&self, a: usize, b: usize) -> Option<ArcRule> {
        self.arcs.iter().find(|arc| arc.a == a && arc.b == b).map(|arc| arc.rule)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum ReductionOutcome {
    Context(Box<ReductionContext>),
    /// An edge of `G[A1, B1]` matched neither rule: `x y_j x_i y` is rainbow.
    EarlyRainbow { certificate: RainbowC4Certificate },
}

/// Builds the auxiliary orientation for edge `xy`.
///
/// Requires `d^c(x) ≥ r` and `d^c(y) ≥ s` so the truncated neighborhoods exist.
pub fn build_reduction(
    g: &ColoredBipartiteGraph,
    x: usize,
    y: usize,
) -> Result<ReductionOutcome, ReductionError> {
    let s = color_degree_needed(g.m(), ThresholdMode::AtLeast);
    let r = color_degree_needed(g.n(), ThresholdMode::AtLeast);
    build_reduction_sized(g, x, y, s, r)
}

/// [`build_reduction`] with caller-chosen neighborhood sizes: `A1` gets
/// `s - 1` vertices and `B1` gets `r - 1`.
pub fn build_reduction_sized(
    g: &ColoredBipartiteGraph,
    x: usize,
    y: usize,
    s: usize,
    r: usize,
) -> Result<ReductionOutcome, ReductionError> {
    let (vx, vy) = (Vertex::a(x), Vertex::b(y));
    let x_degree = g.color_degree(vx)?;
    let y_degree = g.color_degree(vy)?;
    let c0 = g.color(x, y).ok_or(ReductionError::MissingEdge { x, y })?;
    let (s, r) = (s.max(1), r.max(1));
    if x_degree < r {
        return Err(ReductionError::HypothesisTooWeak { vertex: vx, have: x_degree, need: r });
    }
    if y_degree < s {
        return Err(ReductionError::HypothesisTooWeak { vertex: vy, have: y_degree, need: s });
    }

    let a1: Vec<usize> = g.color_neighborhood(vy, Some(x))?.into_iter().skip(1).take(s - 1).collect();
    let b1: Vec<usize> = g.color_neighborhood(vx, Some(y))?.into_iter().skip(1).take(r - 1).collect();
    let sub = g.induced(&a1, &b1);

    let mut d = OrientedBipartiteGraph::empty(a1.len(), b1.len());
    let mut arcs = Vec::new();
    let mut skipped = Vec::new();
    for (i, &xi) in a1.iter().enumerate() {
        let y_xi = g.color(xi, y).expect("A1 lies in the neighborhood of y");
        for (j, &yj) in b1.iter().enumerate() {
            let Some(c) = g.color(xi, yj) else { continue };
            let x_yj = g.color(x, yj).expect("B1 lies in the neighborhood of x");
            let reason = if c == c0 {
                Some(SkipReason::ColorIsC0)
            } else if x_yj == y_xi {
                Some(SkipReason::EndpointColorsEqual)
            } else {
                None
            };
            if let Some(reason) = reason {
                skipped.push(SkippedEdge { a: xi, b: yj, color: c, reason });
                continue;
            }
            let (direction, rule) = if c == x_yj {
                (Direction::AtoB, ArcRule::AgreesWithX)
            } else if c == y_xi {
                (Direction::BtoA, ArcRule::AgreesWithY)
            } else {
                let certificate = RainbowC4Certificate { a1: x, b1: yj, a2: xi, b2: y, colors: [x_yj, c, y_xi, c0] };
                debug_assert!(certificate.is_rainbow());
                return Ok(ReductionOutcome::EarlyRainbow { certificate });
            };
            d.set(i, j, direction);
            arcs.push(ProvenancedArc { a: i, b: j, direction, rule, color: c });
        }
    }

    Ok(ReductionOutcome::Context(Box::new(ReductionContext { x, y, c0, s, r, a1, b1, d, arcs, skipped, sub })))
}

/// Maps a directed 4-cycle of the auxiliary orientation back to a rainbow
/// 4-cycle of the colored graph.
pub fn lift_directed_c4(
    ctx: &ReductionContext,
    dc4: &DirectedC4Certificate,
) -> Result<RainbowC4Certificate, ReductionError> {
    verify_directed_c4(&ctx.d, dc4).map_err(ReductionError::InvalidCertificate)?;
    let local = RainbowC4Certificate::from_cycle(&ctx.sub, dc4.a1, dc4.b1, dc4.a2, dc4.b2).ok_or(
        ReductionError::InvalidCertificate(Rejection::MissingEdge { a: ctx.a1[dc4.a1], b: ctx.b1[dc4.b1] }),
    )?;
    let cert = RainbowC4Certificate {
        a1: ctx.a1[dc4.a1],
        a2: ctx.a1[dc4.a2],
        b1: ctx.b1[dc4.b1],
        b2: ctx.b1[dc4.b2],
        colors: local.colors,
    };
    if cert.is_rainbow() {
        Ok(cert)
    } else {
        Err(ReductionError::LiftNotRainbow(cert))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EscapeRoute {
    /// A directed 3-path of the extremal orientation closed by a fresh-colored edge.
    ProofScheme,
    /// The scheme found nothing; the certificate came from exhaustive search.
    ExhaustiveFallback,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeOutcome {
    pub certificate: RainbowC4Certificate,
    pub route: EscapeRoute,
}

/// Finds a rainbow 4-cycle when the auxiliary orientation is extremal.
///
/// Every directed path `u -> v' -> u' -> v` with `u ∈ M_i`, `v' ∈ N_i`,
/// `u' ∈ M_(i+1)`, `v ∈ N_(i+1)` is tried; the pair `u v` carries no arc, so an
/// edge `uv` of `G` whose color avoids the three path colors closes a rainbow
/// cycle `u' v u v'`.
pub fn extremal_escape(
    g: &ColoredBipartiteGraph,
    ctx: &ReductionContext,
    blocks: &BlockDecomposition,
) -> Result<EscapeOutcome, ReductionError> {
    if !blocks.matches(&ctx.d) {
        return Err(ReductionError::BlocksMismatch);
    }
    let sub = &ctx.sub;
    for i in 0..3 {
        let next = (i + 1) % 3;
        for &u in &blocks.a_blocks[i] {
            for &vp in &blocks.b_blocks[i] {
                let c1 = sub.color(u, vp).expect("arc M_i -> N_i");
                for &up in &blocks.a_blocks[next] {
                    let c2 = sub.color(up, vp).expect("arc N_i -> M_i+1");
                    for &v in &blocks.b_blocks[next] {
                        let c3 = sub.color(up, v).expect("arc M_i+1 -> N_i+1");
                        let Some(c4) = sub.color(u, v) else { continue };
                        let local = RainbowC4Certificate { a1: up, b1: v, a2: u, b2: vp, colors: [c3, c4, c1, c2] };
                        if local.is_rainbow() {
                            let certificate = RainbowC4Certificate {
                                a1: ctx.a1[up],
                                b1: ctx.b1[v],
                                a2: ctx.a1[u],
                                b2: ctx.b1[vp],
                                colors: local.colors,
                            };
                            return Ok(EscapeOutcome { certificate, route: EscapeRoute::ProofScheme });
                        }
                    }
                }
            }
        }
    }
    find_rainbow_c4_exhaustive(g)
        .map(|certificate| EscapeOutcome { certificate, route: EscapeRoute::ExhaustiveFallback })
        .ok_or(ReductionError::CounterexampleFound)
}

/// The step of the guided search that produced a certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProofBranch {
    EarlyRainbow,
    LiftedDirectedC4,
    ExtremalEscape,
    /// Extremal orientation, but the escape scheme failed and exhaustive search was used.
    ExtremalFallback,
    /// Orientation neither had a directed 4-cycle nor was extremal; exhaustive search was used.
    NonExtremalFallback,
}

impl ProofBranch {
    /// True for branches the argument rules out under the hypothesis.
    pub fn is_diagnostic(self) -> bool {
        matches!(self, ProofBranch::ExtremalFallback | ProofBranch::NonExtremalFallback)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum GuidedOutcome {
    Found { certificate: RainbowC4Certificate, branch: ProofBranch, x: usize, y: usize },
    HypothesisViolation { vertex: Vertex },
    /// The hypothesis holds and no rainbow 4-cycle exists.
    Counterexample { x: usize, y: usize },
}

/// Rainbow 4-cycle search following the reduction, on the least edge `xy`.
pub fn find_rainbow_c4_guided(
    g: &ColoredBipartiteGraph,
    mode: ThresholdMode,
) -> Result<GuidedOutcome, ReductionError> {
    if let HypothesisCheck::Fail(vertex) = check_thm10_hypothesis(g, mode) {
        return Ok(GuidedOutcome::HypothesisViolation { vertex });
    }
    // Only the graph with no vertices passes the check without edges.
    let &(x, y, _) = g.edges().first().ok_or(ReductionError::NoEdges)?;
    let found = |certificate, branch| Ok(GuidedOutcome::Found { certificate, branch, x, y });
    let ctx = match build_reduction(g, x, y)? {
        ReductionOutcome::EarlyRainbow { certificate } => return found(certificate, ProofBranch::EarlyRainbow),
        ReductionOutcome::Context(ctx) => ctx,
    };
    if let Some(dc4) = find_directed_c4(&ctx.d) {
        return found(lift_directed_c4(&ctx, &dc4)?, ProofBranch::LiftedDirectedC4);
    }
    if let Some(blocks) = is_dstar(&ctx.d) {
        return match extremal_escape(g, &ctx, &blocks) {
            Ok(EscapeOutcome { certificate, route: EscapeRoute::ProofScheme }) => {
                found(certificate, ProofBranch::ExtremalEscape)
            }
            Ok(EscapeOutcome { certificate, route: EscapeRoute::ExhaustiveFallback }) => {
                found(certificate, ProofBranch::ExtremalFallback)
            }
            Err(ReductionError::CounterexampleFound) => Ok(GuidedOutcome::Counterexample { x, y }),
            Err(e) => Err(e),
        };
    }
    match find_rainbow_c4_exhaustive(g) {
        Some(certificate) => found(certificate, ProofBranch::NonExtremalFallback),
        None => Ok(GuidedOutcome::Counterexample { x, y }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_dstar, gen_proper_coloring_complete};
    use crate::detect::verify_rainbow_c4;

    /// Four vertices x=a0, x1=a1, y=b0, y1=b1 with C(xy)=1, C(xy1)=2, C(yx1)=3.
    fn square(c11: Color) -> ColoredBipartiteGraph {
        ColoredBipartiteGraph::from_edges(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 3), (1, 1, c11)]).unwrap()
    }

    // With m = n = 2 the thresholds are s = r = ⌈14/5⌉ = 3 and x, y have color
    // degree 2, so the square examples go through a relaxed builder.
    fn build_small(g: &ColoredBipartiteGraph) -> ReductionOutcome {
        build_reduction_sized(g, 0, 0, 2, 2).unwrap()
    }

    #[test]
    fn unmatched_inner_color_is_early_rainbow() {
        let g = square(4);
        match build_small(&g) {
            ReductionOutcome::EarlyRainbow { certificate } => {
                assert_eq!(certificate, RainbowC4Certificate { a1: 0, b1: 1, a2: 1, b2: 0, colors: [2, 4, 3, 1] });
                assert_eq!(verify_rainbow_c4(&g, &certificate), Ok(()));
            }
            other => panic!("expected early rainbow, got {other:?}"),
        }
    }

    #[test]
    fn color_of_x_yj_gives_forward_arc() {
        let ReductionOutcome::Context(ctx) = build_small(&square(2)) else { panic!() };
        assert_eq!(ctx.d.arcs(), vec![(0, 0, Direction::AtoB)]);
        assert_eq!(ctx.provenance(0, 0), Some(ArcRule::AgreesWithX));
        assert!(ctx.skipped.is_empty());
    }

    #[test]
    fn color_of_y_xi_gives_backward_arc() {
        let ReductionOutcome::Context(ctx) = build_small(&square(3)) else { panic!() };
        assert_eq!(ctx.d.arcs(), vec![(0, 0, Direction::BtoA)]);
        assert_eq!(ctx.provenance(0, 0), Some(ArcRule::AgreesWithY));
    }

    #[test]
    fn color_c0_is_skipped() {
        let ReductionOutcome::Context(ctx) = build_small(&square(1)) else { panic!() };
        assert_eq!(ctx.d.arc_count(), 0);
        assert_eq!(ctx.skipped, vec![SkippedEdge { a: 1, b: 1, color: 1, reason: SkipReason::ColorIsC0 }]);
    }

    #[test]
    fn equal_endpoint_colors_are_skipped() {
        let g = ColoredBipartiteGraph::from_edges(2, 2, &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 5)]).unwrap();
        let ReductionOutcome::Context(ctx) = build_small(&g) else { panic!() };
        assert_eq!(ctx.skipped[0].reason, SkipReason::EndpointColorsEqual);
    }

    #[test]
    fn weak_color_degree_is_an_error() {
        let g = square(4);
        assert_eq!(
            build_reduction(&g, 0, 0),
            Err(ReductionError::HypothesisTooWeak { vertex: Vertex::a(0), have: 2, need: 3 })
        );
        assert_eq!(build_reduction(&g, 0, 5), Err(ReductionError::Graph(crate::GraphError::InvalidVertex(Vertex::b(5)))));
        let sparse = ColoredBipartiteGraph::from_edges(2, 2, &[(0, 1, 1)]).unwrap();
        assert_eq!(build_reduction(&sparse, 0, 0), Err(ReductionError::MissingEdge { x: 0, y: 0 }));
    }

    #[test]
    fn lift_rejects_absent_arcs() {
        let ReductionOutcome::Context(ctx) = build_small(&square(2)) else { panic!() };
        let bogus = DirectedC4Certificate { a1: 0, a2: 0, b1: 0, b2: 0 };
        assert!(matches!(lift_directed_c4(&ctx, &bogus), Err(ReductionError::InvalidCertificate(_))));
    }

    #[test]
    fn lift_rejects_forged_orientation() {
        // x=a0, y=b0; every edge inside A1 x B1 has color c0, so D has no arcs.
        let mut edges = vec![(0, 0, 1)];
        for j in 1..4 {
            edges.push((0, j, 10 + j as Color));
            edges.push((j, 0, 20 + j as Color));
            for i in 1..4 {
                edges.push((i, j, 1));
            }
        }
        let g = ColoredBipartiteGraph::from_edges(4, 4, &edges).unwrap();
        let ReductionOutcome::Context(mut ctx) = build_reduction(&g, 0, 0).unwrap() else { panic!() };
        assert_eq!((ctx.a1.len(), ctx.b1.len(), ctx.d.arc_count()), (3, 3, 0));
        assert_eq!(ctx.skipped.len(), 9);
        ctx.d = gen_dstar(3, 3).unwrap();
        let forged = DirectedC4Certificate { a1: 0, a2: 1, b1: 0, b2: 1 };
        assert!(matches!(lift_directed_c4(&ctx, &forged), Err(ReductionError::InvalidCertificate(_))));
    }

    fn distinct_complete(k: usize) -> ColoredBipartiteGraph {
        let edges: Vec<_> = (0..k).flat_map(|a| (0..k).map(move |b| (a, b, (a * k + b + 1) as Color))).collect();
        ColoredBipartiteGraph::from_edges(k, k, &edges).unwrap()
    }

    #[test]
    fn guided_on_proper_k33_reports_violation() {
        let outcome = find_rainbow_c4_guided(&gen_proper_coloring_complete(3), ThresholdMode::AtLeast).unwrap();
        assert_eq!(outcome, GuidedOutcome::HypothesisViolation { vertex: Vertex::a(0) });
    }

    #[test]
    fn guided_on_distinct_k14() {
        let g = distinct_complete(14);
        let GuidedOutcome::Found { certificate, branch, .. } = find_rainbow_c4_guided(&g, ThresholdMode::AtLeast).unwrap()
        else {
            panic!()
        };
        assert_eq!(branch, ProofBranch::EarlyRainbow);
        assert_eq!(verify_rainbow_c4(&g, &certificate), Ok(()));
    }

    #[test]
    fn guided_on_edgeless_graphs() {
        let g = ColoredBipartiteGraph::empty(3, 3);
        assert_eq!(
            find_rainbow_c4_guided(&g, ThresholdMode::AtLeast),
            Ok(GuidedOutcome::HypothesisViolation { vertex: Vertex::a(0) })
        );
        let g = ColoredBipartiteGraph::empty(0, 0);
        assert_eq!(find_rainbow_c4_guided(&g, ThresholdMode::AtLeast), Err(ReductionError::NoEdges));
    }

    #[test]
    fn guided_strict_mode_at_boundary() {
        let g = distinct_complete(4);
        assert!(matches!(find_rainbow_c4_guided(&g, ThresholdMode::AtLeast), Ok(GuidedOutcome::Found { .. })));
        assert!(matches!(
            find_rainbow_c4_guided(&g, ThresholdMode::Strict),
            Ok(GuidedOutcome::HypothesisViolation { .. })
        ));
    }
}

mod common;

use bipartite_c4::constructions::rng_from_seed;
use bipartite_c4::reduction::EscapeRoute;
use bipartite_c4::{
    build_reduction, extremal_escape, find_rainbow_c4_exhaustive, gen_random_colored, is_dstar,
    lift_directed_c4, verify_rainbow_c4, ColoredBipartiteGraph, ColoredParams, DirectedC4Certificate,
    Direction, ReductionContext, ReductionOutcome, Vertex,
};
use bipartite_c4::reduction::ArcRule;
use common::{extremal_fixture, reduction_friendly};
use proptest::prelude::*;
use rand::seq::SliceRandom;

fn context(g: &ColoredBipartiteGraph) -> Option<ReductionContext> {
    let &(x, y, _) = g.edges().first()?;
    match build_reduction(g, x, y) {
        Ok(ReductionOutcome::Context(ctx)) => Some(*ctx),
        _ => None,
    }
}

fn all_directed_c4s(ctx: &ReductionContext) -> Vec<DirectedC4Certificate> {
    let d = &ctx.d;
    let mut out = Vec::new();
    for a1 in 0..d.m() {
        for a2 in 0..d.m() {
            for b1 in 0..d.n() {
                for b2 in 0..d.n() {
                    let cycle = a1 != a2
                        && b1 != b2
                        && d.direction(a1, b1) == Some(Direction::AtoB)
                        && d.direction(a2, b1) == Some(Direction::BtoA)
                        && d.direction(a2, b2) == Some(Direction::AtoB)
                        && d.direction(a1, b2) == Some(Direction::BtoA);
                    if cycle {
                        out.push(DirectedC4Certificate { a1, a2, b1, b2 });
                    }
                }
            }
        }
    }
    out
}

fn check_arc_contract(g: &ColoredBipartiteGraph, ctx: &ReductionContext) -> Result<(), TestCaseError> {
    prop_assert!(ctx.d.validate().is_ok());
    prop_assert_eq!(ctx.arcs.len(), ctx.d.arc_count());
    for arc in &ctx.arcs {
        let (xi, yj) = (ctx.a1[arc.a], ctx.b1[arc.b]);
        let c = g.color(xi, yj).unwrap();
        prop_assert_eq!(c, arc.color);
        prop_assert_eq!(ctx.d.direction(arc.a, arc.b), Some(arc.direction));
        match arc.direction {
            // Tail in A1: the color is the one x sends to the head.
            Direction::AtoB => {
                prop_assert_eq!(arc.rule, ArcRule::AgreesWithX);
                prop_assert_eq!(c, g.color(ctx.x, yj).unwrap());
            }
            // Tail in B1: the color is the one y sends to the head.
            Direction::BtoA => {
                prop_assert_eq!(arc.rule, ArcRule::AgreesWithY);
                prop_assert_eq!(c, g.color(xi, ctx.y).unwrap());
            }
        }
        prop_assert_eq!(ctx.provenance(arc.a, arc.b), Some(arc.rule));
    }
    Ok(())
}

fn relabeled_fixture(seed: u64) -> ColoredBipartiteGraph {
    let mut rng = rng_from_seed(seed);
    let g = extremal_fixture();
    // Shuffle the inner vertices of each side, keep a0/b0 (the chosen edge) and a7/b7 in place.
    let mut pa: Vec<usize> = (1..7).collect();
    let mut pb: Vec<usize> = (1..7).collect();
    pa.shuffle(&mut rng);
    pb.shuffle(&mut rng);
    let map_a = |a: usize| if (1..7).contains(&a) { pa[a - 1] } else { a };
    let map_b = |b: usize| if (1..7).contains(&b) { pb[b - 1] } else { b };
    let mut palette: Vec<u64> = (1..=60).collect();
    palette.shuffle(&mut rng);
    let edges: Vec<_> = g.edges().into_iter().map(|(a, b, c)| (map_a(a), map_b(b), palette[c as usize])).collect();
    ColoredBipartiteGraph::from_edges(8, 8, &edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn arcs_follow_the_coloring_rules(m in 3usize..9, n in 3usize..9, seed in any::<u64>()) {
        let g = reduction_friendly(m, n, &mut rng_from_seed(seed));
        if let Some(ctx) = context(&g) {
            check_arc_contract(&g, &ctx)?;
        }
    }

    #[test]
    fn every_directed_c4_lifts_to_a_rainbow_c4(m in 3usize..9, n in 3usize..9, seed in any::<u64>()) {
        let g = reduction_friendly(m, n, &mut rng_from_seed(seed));
        if let Some(ctx) = context(&g) {
            for dc4 in all_directed_c4s(&ctx) {
                let cert = lift_directed_c4(&ctx, &dc4).unwrap();
                prop_assert_eq!(verify_rainbow_c4(&g, &cert), Ok(()));
            }
        }
    }

    #[test]
    fn plain_random_graphs_obey_the_same_contracts(m in 2usize..8, n in 2usize..8, palette in 2u64..12, seed in any::<u64>()) {
        let g = gen_random_colored(ColoredParams::new(m, n, 0.9, palette, false), seed).unwrap();
        if let Some(ctx) = context(&g) {
            check_arc_contract(&g, &ctx)?;
            for dc4 in all_directed_c4s(&ctx) {
                prop_assert!(lift_directed_c4(&ctx, &dc4).is_ok());
            }
        }
    }

    #[test]
    fn extremal_three_paths_are_rainbow(seed in any::<u64>()) {
        let g = relabeled_fixture(seed);
        let ctx = context(&g).expect("fixture survives to an orientation");
        let blocks = is_dstar(&ctx.d).expect("fixture orientation is extremal");
        let d = &ctx.d;
        let sub = &ctx.sub;
        // u -> v' -> u' -> v and v -> u -> v' -> u', in local positions.
        for u in 0..d.m() {
            for vp in d.out_neighbors(Vertex::a(u)).unwrap() {
                for up in d.out_neighbors(Vertex::b(vp)).unwrap() {
                    for v in d.out_neighbors(Vertex::a(up)).unwrap() {
                        let cs = [sub.color(u, vp), sub.color(up, vp), sub.color(up, v)];
                        prop_assert!(cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2]);
                    }
                }
            }
        }
        for v in 0..d.n() {
            for u in d.out_neighbors(Vertex::b(v)).unwrap() {
                for vp in d.out_neighbors(Vertex::a(u)).unwrap() {
                    for up in d.out_neighbors(Vertex::b(vp)).unwrap() {
                        let cs = [sub.color(u, v), sub.color(u, vp), sub.color(up, vp)];
                        prop_assert!(cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2]);
                    }
                }
            }
        }
        let escape = extremal_escape(&g, &ctx, &blocks).unwrap();
        prop_assert_eq!(escape.route, EscapeRoute::ProofScheme);
        prop_assert_eq!(verify_rainbow_c4(&g, &escape.certificate), Ok(()));
    }
}

#[test]
fn fixture_reduces_to_the_canonical_extremal_orientation() {
    let g = extremal_fixture();
    let ctx = context(&g).unwrap();
    assert_eq!((ctx.x, ctx.y, ctx.c0, ctx.s, ctx.r), (0, 0, 1, 7, 7));
    assert_eq!(ctx.a1, vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(ctx.b1, vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(ctx.d, bipartite_c4::gen_dstar(6, 6).unwrap());
    assert_eq!(ctx.skipped.len(), 12);
    let blocks = is_dstar(&ctx.d).unwrap();
    let escape = extremal_escape(&g, &ctx, &blocks).unwrap();
    assert_eq!(escape.route, EscapeRoute::ProofScheme);
    assert_eq!(verify_rainbow_c4(&g, &escape.certificate), Ok(()));
    assert!(find_rainbow_c4_exhaustive(&g).is_some());
}

#[test]
fn escape_refuses_blocks_for_another_orientation() {
    let g = extremal_fixture();
    let ctx = context(&g).unwrap();
    let mut blocks = is_dstar(&ctx.d).unwrap();
    blocks.a_blocks.swap(0, 1);
    assert!(extremal_escape(&g, &ctx, &blocks).is_err());
}

#[test]
fn friendly_generator_exercises_lifts() {
    let (mut contexts, mut lifts) = (0, 0);
    for seed in 0..2000 {
        let mut rng = rng_from_seed(seed);
        let g = reduction_friendly(4 + (seed % 5) as usize, 4 + (seed / 5 % 5) as usize, &mut rng);
        if let Some(ctx) = context(&g) {
            contexts += 1;
            lifts += all_directed_c4s(&ctx).len();
        }
    }
    println!("contexts {contexts}, lifts {lifts}");
    assert!(contexts > 100 && lifts > 100);
}

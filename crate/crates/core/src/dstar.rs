//! Recognition of the extremal orientation `D*(m, n)` up to side-preserving relabeling.

use serde::{Deserialize, Serialize};

use crate::graph::{OrientedBipartiteGraph, Vertex};

/// Block structure witnessing that an orientation is a relabeled `D*(m, n)`:
/// arcs are exactly `a_blocks[i] -> b_blocks[i]` and `b_blocks[i] -> a_blocks[i+1 mod 3]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    pub a_blocks: [Vec<usize>; 3],
    pub b_blocks: [Vec<usize>; 3],
}

impl BlockDecomposition {
    /// True iff the blocks partition both sides into equal thirds and the arc
    /// set of `d` is exactly the block pattern.
    pub fn matches(&self, d: &OrientedBipartiteGraph) -> bool {
        let (m, n) = (d.m(), d.n());
        if m % 3 != 0 || n % 3 != 0 || m == 0 || n == 0 {
            return false;
        }
        if !partitions(&self.a_blocks, m) || !partitions(&self.b_blocks, n) {
            return false;
        }
        if d.arc_count() != 2 * m * n / 3 {
            return false;
        }
        (0..3).all(|i| {
            let next = (i + 1) % 3;
            self.b_blocks[i].iter().all(|&b| {
                self.a_blocks[i].iter().all(|&a| d.has_arc(Vertex::a(a), Vertex::b(b)))
                    && self.a_blocks[next].iter().all(|&a| d.has_arc(Vertex::b(b), Vertex::a(a)))
            })
        })
    }
}

fn partitions(blocks: &[Vec<usize>; 3], size: usize) -> bool {
    let mut seen = vec![false; size];
    for block in blocks {
        if block.len() * 3 != size {
            return false;
        }
        for &v in block {
            if v >= size || std::mem::replace(&mut seen[v], true) {
                return false;
            }
        }
    }
    true
}

fn union_of_out<F: Fn(usize) -> Vec<usize>>(from: &[usize], size: usize, out: F) -> Vec<usize> {
    let mut mark = vec![false; size];
    for &v in from {
        for w in out(v) {
            mark[w] = true;
        }
    }
    (0..size).filter(|&w| mark[w]).collect()
}

/// Returns the block decomposition if `d` is a side-preserving relabeling of `D*(m, n)`.
///
/// Starting from `a0`, blocks are grown by following out-neighborhoods:
/// `N0 = N⁺(a0)`, `M1 = N⁺(N0)`, `N1 = N⁺(M1)`, `M2 = N⁺(N1)`, `N2 = N⁺(M2)`,
/// `M0 = N⁺(N2)`. The candidate is accepted only if it matches `d` exactly.
pub fn is_dstar(d: &OrientedBipartiteGraph) -> Option<BlockDecomposition> {
    let (m, n) = (d.m(), d.n());
    if m < 3 || n < 3 || m % 3 != 0 || n % 3 != 0 || d.arc_count() != 2 * m * n / 3 {
        return None;
    }
    let out_a = |a: usize| d.out_neighbors(Vertex::a(a)).unwrap();
    let out_b = |b: usize| d.out_neighbors(Vertex::b(b)).unwrap();
    let n0 = out_a(0);
    let m1 = union_of_out(&n0, m, out_b);
    let n1 = union_of_out(&m1, n, out_a);
    let m2 = union_of_out(&n1, m, out_b);
    let n2 = union_of_out(&m2, n, out_a);
    let m0 = union_of_out(&n2, m, out_b);
    let blocks = BlockDecomposition { a_blocks: [m0, m1, m2], b_blocks: [n0, n1, n2] };
    blocks.matches(d).then_some(blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gen_dstar, relabel_randomly, rng_from_seed};
    use crate::graph::Direction::{AtoB, BtoA};

    #[test]
    fn canonical_blocks_are_contiguous() {
        let blocks = is_dstar(&gen_dstar(6, 6).unwrap()).unwrap();
        assert_eq!(blocks.a_blocks, [vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert_eq!(blocks.b_blocks, [vec![0, 1], vec![2, 3], vec![4, 5]]);
        let blocks = is_dstar(&gen_dstar(3, 9).unwrap()).unwrap();
        assert_eq!(blocks.b_blocks[2], vec![6, 7, 8]);
    }

    #[test]
    fn missing_arc_is_rejected() {
        let mut d = gen_dstar(6, 6).unwrap();
        d.remove_arc(0, 0);
        assert_eq!(d.arc_count(), 23);
        assert_eq!(is_dstar(&d), None);
    }

    #[test]
    fn wrong_arc_with_right_count_is_rejected() {
        let mut d = gen_dstar(3, 3).unwrap();
        // Turn a0 -> b0 around: still 6 arcs, but now a digon-free non-hexagon.
        d.remove_arc(0, 0);
        d.add_arc(0, 0, BtoA).unwrap();
        assert_eq!(is_dstar(&d), None);
    }

    #[test]
    fn relabeled_copies_are_recognized() {
        let mut rng = rng_from_seed(5);
        for (m, n) in [(3, 3), (6, 3), (6, 9), (9, 6)] {
            let d = gen_dstar(m, n).unwrap();
            for _ in 0..20 {
                let r = relabel_randomly(&d, &mut rng);
                let blocks = is_dstar(&r).expect("relabeled D* must be recognized");
                assert!(blocks.matches(&r));
            }
        }
    }

    #[test]
    fn hexagon_is_recognized() {
        // a0 -> b1 -> a2 -> b0 -> a1 -> b2 -> a0
        let d = OrientedBipartiteGraph::from_arcs(
            3,
            3,
            &[(0, 1, AtoB), (2, 1, BtoA), (2, 0, AtoB), (1, 0, BtoA), (1, 2, AtoB), (0, 2, BtoA)],
        )
        .unwrap();
        let blocks = is_dstar(&d).unwrap();
        assert_eq!(blocks.a_blocks, [vec![0], vec![2], vec![1]]);
        assert_eq!(blocks.b_blocks, [vec![1], vec![0], vec![2]]);
    }

    #[test]
    fn non_multiples_are_rejected() {
        assert_eq!(is_dstar(&OrientedBipartiteGraph::empty(4, 3)), None);
        assert_eq!(is_dstar(&OrientedBipartiteGraph::empty(0, 0)), None);
    }
}

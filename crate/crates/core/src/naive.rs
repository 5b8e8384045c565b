//! Brute-force reference solvers.
//!
//! These deliberately avoid the pruned search paths in [`crate::domination`]
//! so the two can be compared exhaustively in tests and in the acceptance
//! sweep: plain size-increasing subset iteration, nothing else.

use itertools::Itertools;

use crate::bitset::VertexSet;
use crate::domination::{is_dominating, is_jk_set, DomKind, DomSolution};
use crate::graph::Graph;

/// Domination number by iterating subsets in size-then-lexicographic order.
/// Returns the same witness as the optimized solver: the lexicographically
/// least γ-set.
pub fn gamma_brute_force(g: &Graph) -> DomSolution {
    let n = g.vertex_count();
    assert!(n >= 1, "domination of the empty graph");
    for size in 1..=n {
        for combo in (0..n).combinations(size) {
            let s = VertexSet::from_members(n, combo);
            if is_dominating(g, &s) {
                return DomSolution {
                    size,
                    witness: s,
                    kind: DomKind::Plain,
                };
            }
        }
    }
    unreachable!("the full vertex set dominates");
}

/// `[j,k]`-domination number by the same subset iteration.
pub fn gamma_jk_brute_force(g: &Graph, j: usize, k: usize) -> DomSolution {
    let n = g.vertex_count();
    assert!(n >= 1, "domination of the empty graph");
    for size in 1..=n {
        for combo in (0..n).combinations(size) {
            let s = VertexSet::from_members(n, combo);
            if is_jk_set(g, &s, j, k) {
                return DomSolution {
                    size,
                    witness: s,
                    kind: DomKind::Range { j, k },
                };
            }
        }
    }
    unreachable!("the full vertex set is a [j,k]-set");
}

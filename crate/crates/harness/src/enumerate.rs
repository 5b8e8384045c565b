//! Isomorphism-deduped enumeration of small graphs.
//!
//! Two routes exist for cographs and they cross-check each other: the
//! mask enumerators iterate every labeled graph, filter, and dedup by
//! canonical code; the [`CographCatalog`] composes cographs bottom-up from
//! unions and joins of smaller ones, which reaches eight vertices where
//! the labeled-graph space is already out of range.

use std::collections::BTreeSet;
use std::fmt;

use domlab_core::canon::{canonical_code, CANON_MAX_VERTICES};
use domlab_core::cotree::find_induced_p4;
use domlab_core::graph::Graph;

/// Mask enumeration iterates `2^(n(n-1)/2)` labeled graphs.
pub const MASK_ENUM_MAX_VERTICES: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerateCap {
    pub n: usize,
    pub cap: usize,
}

impl fmt::Display for EnumerateCap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "enumeration supports at most {} vertices, got {}",
            self.cap, self.n
        )
    }
}

impl std::error::Error for EnumerateCap {}

pub fn graph_from_mask(n: usize, mask: u64) -> Graph {
    let mut g = Graph::new(n);
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> bit & 1 == 1 {
                g.add_edge(u, v);
            }
            bit += 1;
        }
    }
    g
}

fn enumerate_masks(n: usize, keep: impl Fn(&Graph) -> bool + Sync) -> Vec<Graph> {
    use rayon::prelude::*;
    let bits = n * (n - 1) / 2;
    let total = 1u64 << bits;
    // chunks are deduped locally in parallel and merged in mask order, so
    // the first-seen representative per class matches a sequential scan
    let chunk = 1u64 << 16;
    let starts: Vec<u64> = (0..total).step_by(chunk as usize).collect();
    let locals: Vec<Vec<(Vec<u8>, Graph)>> = starts
        .par_iter()
        .map(|&start| {
            let mut seen = BTreeSet::new();
            let mut found = Vec::new();
            for mask in start..(start + chunk).min(total) {
                let g = graph_from_mask(n, mask);
                if !keep(&g) {
                    continue;
                }
                let code = canonical_code(&g).expect("within canonical cap");
                if seen.insert(code.clone()) {
                    found.push((code, g));
                }
            }
            found
        })
        .collect();

    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for local in locals {
        for (code, g) in local {
            if seen.insert(code) {
                out.push(g);
            }
        }
    }
    out
}

/// One connected graph per isomorphism class, in first-seen mask order.
pub fn enumerate_connected_graphs(n: usize) -> Result<Vec<Graph>, EnumerateCap> {
    if n > MASK_ENUM_MAX_VERTICES {
        return Err(EnumerateCap {
            n,
            cap: MASK_ENUM_MAX_VERTICES,
        });
    }
    Ok(enumerate_masks(n, |g| g.is_connected()))
}

/// The connected stream filtered down to P4-free graphs. The filter runs
/// before canonicalization, so non-cographs never pay for a canonical form.
pub fn enumerate_connected_cographs(n: usize) -> Result<Vec<Graph>, EnumerateCap> {
    if n > MASK_ENUM_MAX_VERTICES {
        return Err(EnumerateCap {
            n,
            cap: MASK_ENUM_MAX_VERTICES,
        });
    }
    Ok(enumerate_masks(n, |g| {
        g.is_connected() && find_induced_p4(g).is_none()
    }))
}

/// Cographs on up to [`CANON_MAX_VERTICES`] vertices, one per isomorphism
/// class, built bottom-up: a disconnected cograph is a disjoint union of
/// at least two connected ones, and a connected cograph on two or more
/// vertices is a join of at least two graphs that are single vertices or
/// disconnected. Parts are drawn in non-decreasing (size, index) order so
/// each multiset is produced once; canonical codes dedup regardless.
pub struct CographCatalog {
    connected: Vec<Vec<Graph>>,
    disconnected: Vec<Vec<Graph>>,
}

impl CographCatalog {
    pub fn up_to(max_n: usize) -> Result<Self, EnumerateCap> {
        if max_n > CANON_MAX_VERTICES {
            return Err(EnumerateCap {
                n: max_n,
                cap: CANON_MAX_VERTICES,
            });
        }
        let mut connected: Vec<Vec<Graph>> = vec![Vec::new(); max_n + 1];
        let mut disconnected: Vec<Vec<Graph>> = vec![Vec::new(); max_n + 1];
        if max_n >= 1 {
            connected[1].push(Graph::new(1));
        }
        for n in 2..=max_n {
            // unions of connected parts
            let union_pool: Vec<&Graph> = (1..n).flat_map(|k| connected[k].iter()).collect();
            disconnected[n] = compose(&union_pool, n, false);
            // joins of parts that are K1 or disconnected
            let join_pool: Vec<&Graph> = (1..n)
                .flat_map(|k| {
                    if k == 1 {
                        connected[1].iter().collect::<Vec<_>>()
                    } else {
                        disconnected[k].iter().collect()
                    }
                })
                .collect();
            connected[n] = compose(&join_pool, n, true);
        }
        Ok(CographCatalog {
            connected,
            disconnected,
        })
    }

    pub fn max_n(&self) -> usize {
        self.connected.len() - 1
    }

    pub fn connected(&self, n: usize) -> &[Graph] {
        &self.connected[n]
    }

    pub fn disconnected(&self, n: usize) -> &[Graph] {
        &self.disconnected[n]
    }

    /// Connected and disconnected classes of order `n`.
    pub fn all(&self, n: usize) -> impl Iterator<Item = &Graph> {
        self.connected[n].iter().chain(self.disconnected[n].iter())
    }
}

fn compose(pool: &[&Graph], total: usize, join: bool) -> Vec<Graph> {
    let mut parts: Vec<usize> = Vec::new();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    compose_rec(pool, total, 0, &mut parts, join, &mut seen, &mut out);
    out.sort_by_key(|g| canonical_code(g).expect("within cap"));
    out
}

fn compose_rec(
    pool: &[&Graph],
    remaining: usize,
    min_idx: usize,
    parts: &mut Vec<usize>,
    join: bool,
    seen: &mut BTreeSet<Vec<u8>>,
    out: &mut Vec<Graph>,
) {
    if remaining == 0 {
        if parts.len() >= 2 {
            let refs: Vec<&Graph> = parts.iter().map(|&i| pool[i]).collect();
            let g = if join {
                Graph::join(&refs)
            } else {
                Graph::disjoint_union(&refs).0
            };
            let code = canonical_code(&g).expect("within cap");
            if seen.insert(code) {
                out.push(g);
            }
        }
        return;
    }
    for idx in min_idx..pool.len() {
        let size = pool[idx].vertex_count();
        if size > remaining {
            continue;
        }
        parts.push(idx);
        compose_rec(pool, remaining - size, idx, parts, join, seen, out);
        parts.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use domlab_core::canon::canonical_code_unchecked;
    use domlab_core::graph::Graph;
    use itertools_free::naive_class_count;

    /// Pairwise-isomorphism class counting that never touches canonical
    /// codes, as an independent check on the enumerators.
    mod itertools_free {
        use domlab_core::graph::Graph;

        fn isomorphic(a: &Graph, b: &Graph) -> bool {
            let n = a.vertex_count();
            if n != b.vertex_count() || a.edge_count() != b.edge_count() {
                return false;
            }
            let mut perm: Vec<usize> = (0..n).collect();
            permute(&mut perm, 0, &mut |p| {
                (0..n).all(|u| (0..n).all(|v| u == v || a.has_edge(u, v) == b.has_edge(p[u], p[v])))
            })
        }

        fn permute(
            perm: &mut Vec<usize>,
            at: usize,
            check: &mut impl FnMut(&[usize]) -> bool,
        ) -> bool {
            if at == perm.len() {
                return check(perm);
            }
            for i in at..perm.len() {
                perm.swap(at, i);
                if permute(perm, at + 1, check) {
                    perm.swap(at, i);
                    return true;
                }
                perm.swap(at, i);
            }
            false
        }

        pub fn naive_class_count(graphs: &[Graph]) -> usize {
            let mut reps: Vec<&Graph> = Vec::new();
            for g in graphs {
                if !reps.iter().any(|r| isomorphic(r, g)) {
                    reps.push(g);
                }
            }
            reps.len()
        }
    }

    #[test]
    fn connected_graph_counts() {
        assert_eq!(enumerate_connected_graphs(1).unwrap().len(), 1);
        assert_eq!(enumerate_connected_graphs(3).unwrap().len(), 2);
        assert_eq!(enumerate_connected_graphs(4).unwrap().len(), 6);
        assert_eq!(enumerate_connected_graphs(5).unwrap().len(), 21);
        assert_eq!(enumerate_connected_graphs(6).unwrap().len(), 112);
        assert!(enumerate_connected_graphs(8).is_err());
    }

    #[test]
    fn counts_match_the_pairwise_isomorphism_enumerator() {
        for n in 1..=5 {
            let bits = n * (n - 1) / 2;
            let labeled: Vec<Graph> = (0u64..1 << bits)
                .map(|m| graph_from_mask(n, m))
                .filter(|g| g.is_connected())
                .collect();
            assert_eq!(
                enumerate_connected_graphs(n).unwrap().len(),
                naive_class_count(&labeled),
                "n = {n}"
            );
        }
    }

    #[test]
    fn cograph_filter_counts() {
        let sizes: Vec<usize> = (1..=6)
            .map(|n| enumerate_connected_cographs(n).unwrap().len())
            .collect();
        assert_eq!(sizes, vec![1, 1, 2, 5, 12, 33]);

        // C4 passes the filter, P4 never appears
        let four = enumerate_connected_cographs(4).unwrap();
        let c4 = canonical_code_unchecked(&Graph::cycle(4));
        assert!(four.iter().any(|g| canonical_code_unchecked(g) == c4));
        let p4 = canonical_code_unchecked(&Graph::path(4));
        assert!(four.iter().all(|g| canonical_code_unchecked(g) != p4));
    }

    #[test]
    fn catalog_agrees_with_the_filter_route() {
        let catalog = CographCatalog::up_to(6).unwrap();
        for n in 1..=6 {
            let via_filter: BTreeSet<Vec<u8>> = enumerate_connected_cographs(n)
                .unwrap()
                .iter()
                .map(canonical_code_unchecked)
                .collect();
            let via_catalog: BTreeSet<Vec<u8>> = catalog
                .connected(n)
                .iter()
                .map(canonical_code_unchecked)
                .collect();
            assert_eq!(via_filter, via_catalog, "n = {n}");
        }
    }

    #[test]
    fn catalog_counts_to_eight() {
        let catalog = CographCatalog::up_to(8).unwrap();
        let connected: Vec<usize> = (1..=8).map(|n| catalog.connected(n).len()).collect();
        assert_eq!(connected, vec![1, 1, 2, 5, 12, 33, 90, 261]);
        // complementation swaps connected and disconnected classes on two
        // or more vertices, so the counts agree
        for n in 2..=8 {
            assert_eq!(catalog.connected(n).len(), catalog.disconnected(n).len());
            let connected_codes: BTreeSet<Vec<u8>> = catalog
                .connected(n)
                .iter()
                .map(|g| canonical_code_unchecked(&g.complement()))
                .collect();
            let disconnected_codes: BTreeSet<Vec<u8>> = catalog
                .disconnected(n)
                .iter()
                .map(canonical_code_unchecked)
                .collect();
            assert_eq!(connected_codes, disconnected_codes, "n = {n}");
        }
    }

    #[test]
    fn catalog_members_are_p4_free() {
        let catalog = CographCatalog::up_to(7).unwrap();
        for n in 1..=7 {
            for g in catalog.all(n) {
                assert_eq!(find_induced_p4(g), None);
            }
            for g in catalog.connected(n) {
                assert!(g.is_connected());
            }
            for g in catalog.disconnected(n) {
                assert!(!g.is_connected());
            }
        }
    }

    #[test]
    fn every_enumerated_graph_roundtrips_both_text_formats() {
        use domlab_core::codec::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
        let catalog = CographCatalog::up_to(8).unwrap();
        for n in 1..=8 {
            for g in catalog.all(n) {
                assert_eq!(&parse_graph6(&to_graph6(g)).unwrap(), g);
                assert_eq!(&parse_edge_list(&to_edge_list(g)).unwrap(), g);
            }
        }
        for g in enumerate_connected_graphs(6).unwrap() {
            assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
            assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }

    #[test]
    fn unbounded_jk_matches_gamma_on_seven_vertex_classes() {
        // the n <= 6 version runs over every labeled graph in the core
        // suite; both quantities are isomorphism-invariant, so class
        // representatives cover the seven-vertex case
        use domlab_core::domination::{gamma_exact, gamma_jk};
        for g in enumerate_connected_graphs(7).unwrap() {
            assert_eq!(gamma_jk(&g, 1, 7).size, gamma_exact(&g).size);
        }
    }
}

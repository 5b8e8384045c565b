//! Simple undirected graphs with one bitset row per vertex.
//!
//! Adjacency is kept symmetric and irreflexive by construction: the only
//! mutator is [`Graph::add_edge`], which writes both directions and rejects
//! self-loops. Everything downstream (solvers, products, labelings) relies
//! on those two invariants.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bitset::VertexSet;

#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    rows: Vec<VertexSet>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            rows: (0..n).map(|_| VertexSet::new(n)).collect(),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    /// Path `0 - 1 - .. - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Cycle `0 - 1 - .. - (n-1) - 0`; requires `n >= 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut g = Graph::path(n);
        g.add_edge(n - 1, 0);
        g
    }

    /// Star with center `0` and `n - 1` leaves.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::new(n);
        for v in 1..n {
            g.add_edge(0, v);
        }
        g
    }

    /// Adds the undirected edge `{u, v}`. Idempotent; panics on a self-loop
    /// or an out-of-range endpoint.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(
            u < self.n && v < self.n,
            "edge ({u},{v}) out of range for n={}",
            self.n
        );
        assert_ne!(u, v, "self-loop at vertex {u}");
        self.rows[u].insert(v);
        self.rows[v].insert(u);
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u].contains(v)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.rows[v].len()
    }

    /// Open neighborhood `N(v)`.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    /// Closed neighborhood `N[v] = {v} ∪ N(v)`.
    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex {v} out of range for n={}", self.n);
        let mut s = self.rows[v].clone();
        s.insert(v);
        s
    }

    pub fn vertices(&self) -> core::ops::Range<usize> {
        0..self.n
    }

    /// Complement: `u ~ v` iff `u != v` and not `u ~ v` here.
    pub fn complement(&self) -> Graph {
        let mut rows = Vec::with_capacity(self.n);
        for v in 0..self.n {
            let mut row = self.rows[v].clone();
            row.invert();
            row.remove(v);
            rows.push(row);
        }
        Graph { n: self.n, rows }
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Maximal connected vertex sets, ordered by smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::new(self.n);
        let mut components = Vec::new();
        for start in 0..self.n {
            if seen.contains(start) {
                continue;
            }
            let mut comp = VertexSet::singleton(self.n, start);
            let mut frontier = VertexSet::singleton(self.n, start);
            while let Some(v) = frontier.first() {
                frontier.remove(v);
                let mut fresh = self.rows[v].clone();
                fresh.subtract(&comp);
                comp.union_with(&fresh);
                frontier.union_with(&fresh);
            }
            seen.union_with(&comp);
            components.push(comp);
        }
        components
    }

    /// Subgraph induced by the nonempty set `sel`, re-indexed `0..|sel|-1` in
    /// ascending order of the original ids, together with the old-to-new id
    /// map.
    pub fn induced_subgraph(&self, sel: &VertexSet) -> (Graph, BTreeMap<usize, usize>) {
        assert!(!sel.is_empty(), "induced subgraph of the empty set");
        assert_eq!(
            sel.universe(),
            self.n,
            "selection built for a different graph"
        );
        let old_ids: Vec<usize> = sel.iter().collect();
        let map: BTreeMap<usize, usize> = old_ids
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let mut g = Graph::new(old_ids.len());
        for (new_u, &old_u) in old_ids.iter().enumerate() {
            for old_v in self.rows[old_u].intersection(sel).iter() {
                if old_v > old_u {
                    g.add_edge(new_u, map[&old_v]);
                }
            }
        }
        (g, map)
    }

    /// Relabels vertex `v` as `perm[v]`; `perm` must be a permutation of
    /// `0..n`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut g = Graph::new(self.n);
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    /// Disjoint union; part `i` occupies the id block starting at the `i`-th
    /// returned offset.
    pub fn disjoint_union(parts: &[&Graph]) -> (Graph, Vec<usize>) {
        let n: usize = parts.iter().map(|p| p.n).sum();
        let mut offsets = Vec::with_capacity(parts.len());
        let mut g = Graph::new(n);
        let mut base = 0;
        for part in parts {
            offsets.push(base);
            for u in 0..part.n {
                for v in part.rows[u].iter() {
                    if v > u {
                        g.add_edge(base + u, base + v);
                    }
                }
            }
            base += part.n;
        }
        (g, offsets)
    }

    /// Join: disjoint union plus every edge between distinct parts.
    pub fn join(parts: &[&Graph]) -> Graph {
        let (mut g, offsets) = Graph::disjoint_union(parts);
        for i in 0..parts.len() {
            for j in (i + 1)..parts.len() {
                for u in 0..parts[i].n {
                    for v in 0..parts[j].n {
                        g.add_edge(offsets[i] + u, offsets[j] + v);
                    }
                }
            }
        }
        g
    }

    /// Validates the representation invariants; used by tests and after
    /// parsing untrusted input.
    pub fn check_invariants(&self) {
        assert_eq!(self.rows.len(), self.n);
        for v in 0..self.n {
            assert_eq!(self.rows[v].universe(), self.n, "row width mismatch at {v}");
            assert!(!self.rows[v].contains(v), "self-loop at {v}");
            for u in self.rows[v].iter() {
                assert!(self.rows[u].contains(v), "asymmetric edge ({v},{u})");
            }
        }
    }
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "Graph(n={}", self.n)?;
        let mut first = true;
        for u in 0..self.n {
            for v in self.rows[u].iter() {
                if v > u {
                    if first {
                        write!(f, "; ")?;
                        first = false;
                    } else {
                        write!(f, " ")?;
                    }
                    write!(f, "{u}-{v}")?;
                }
            }
        }
        write!(f, ")")
    }
}

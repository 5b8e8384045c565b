//! Exact solvers for the domination number and `[j,k]`-domination, together
//! with the cell decomposition of a graph relative to an ordered dominating
//! set.
//!
//! Both solvers return deterministic witnesses: the size is established
//! first (branch-and-bound for plain domination, size-increasing search for
//! `[j,k]`), then the lexicographically least optimal set is reconstructed
//! by a depth-first scan over ascending vertex ids. Reproducible witnesses
//! keep downstream labeling runs and reports stable.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Polled by long-running solves; return true to abandon the search.
pub trait Cancel {
    fn is_cancelled(&self) -> bool;
}

/// The default budget: never gives up.
#[derive(Clone, Copy, Debug, Default)]
pub struct RunForever;

impl Cancel for RunForever {
    fn is_cancelled(&self) -> bool {
        false
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interrupted;

impl fmt::Display for Interrupted {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "solve cancelled before completion")
    }
}

impl core::error::Error for Interrupted {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomSolution {
    pub size: usize,
    pub witness: VertexSet,
    pub kind: DomKind,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomKind {
    Plain,
    Range { j: usize, k: usize },
}

/// `S` dominates `g` iff the closed neighborhoods of `S` cover every vertex.
pub fn is_dominating(g: &Graph, s: &VertexSet) -> bool {
    let mut covered = s.clone();
    for v in s.iter() {
        covered.union_with(g.neighbors(v));
    }
    covered.len() == g.vertex_count()
}

/// `S` is a `[j,k]`-set iff every vertex outside `S` has between `j` and `k`
/// neighbors in `S`.
pub fn is_jk_set(g: &Graph, s: &VertexSet, j: usize, k: usize) -> bool {
    g.vertices().all(|v| {
        if s.contains(v) {
            return true;
        }
        let d = g.neighbors(v).intersection(s).len();
        j <= d && d <= k
    })
}

struct Solver {
    n: usize,
    closed: Vec<VertexSet>,
}

impl Solver {
    fn new(g: &Graph) -> Self {
        let n = g.vertex_count();
        Solver {
            n,
            closed: (0..n).map(|v| g.closed_neighborhood(v)).collect(),
        }
    }

    fn poll(&self, cancel: &dyn Cancel) -> Result<(), Interrupted> {
        if cancel.is_cancelled() {
            return Err(Interrupted);
        }
        Ok(())
    }

    /// `ceil(uncovered / best-single-vertex-coverage)`; a valid lower bound
    /// on how many more vertices any dominating extension needs.
    fn cover_lower_bound(&self, covered: &VertexSet) -> usize {
        let uncovered = self.n - covered.len();
        if uncovered == 0 {
            return 0;
        }
        let max_cov = (0..self.n)
            .map(|v| self.closed[v].difference(covered).len())
            .max()
            .unwrap_or(0);
        debug_assert!(max_cov >= 1, "an uncovered vertex covers itself");
        uncovered.div_ceil(max_cov)
    }

    fn greedy_upper_bound(&self) -> usize {
        let mut covered = VertexSet::new(self.n);
        let mut size = 0;
        while covered.len() < self.n {
            let v = (0..self.n)
                .max_by_key(|&v| (self.closed[v].difference(&covered).len(), self.n - v))
                .expect("nonempty graph");
            covered.union_with(&self.closed[v]);
            size += 1;
        }
        size
    }

    /// Branch-and-bound for the domination number. Branches on an uncovered
    /// vertex with the smallest closed neighborhood (ties to the smallest
    /// id), trying each member of that neighborhood as its dominator in
    /// ascending order.
    fn gamma_size(&mut self, cancel: &dyn Cancel) -> Result<usize, Interrupted> {
        let mut best = self.greedy_upper_bound();
        self.branch(&VertexSet::new(self.n), 0, &mut best, cancel)?;
        Ok(best)
    }

    fn branch(
        &mut self,
        covered: &VertexSet,
        size: usize,
        best: &mut usize,
        cancel: &dyn Cancel,
    ) -> Result<(), Interrupted> {
        self.poll(cancel)?;
        if covered.len() == self.n {
            if size < *best {
                *best = size;
            }
            return Ok(());
        }
        if size + self.cover_lower_bound(covered) >= *best {
            return Ok(());
        }
        let pivot = (0..self.n)
            .filter(|&v| !covered.contains(v))
            .min_by_key(|&v| (self.closed[v].len(), v))
            .expect("uncovered vertex exists");
        for v in self.closed[pivot].clone().iter() {
            let next = covered.union(&self.closed[v]);
            self.branch(&next, size + 1, best, cancel)?;
        }
        Ok(())
    }

    /// Lexicographically least dominating set of size at most `target`,
    /// scanning extensions in ascending vertex order.
    fn lex_min_dominating(
        &mut self,
        target: usize,
        cancel: &dyn Cancel,
    ) -> Result<Option<Vec<usize>>, Interrupted> {
        let mut chosen = Vec::new();
        self.lex_dom_dfs(&VertexSet::new(self.n), 0, target, &mut chosen, cancel)
    }

    fn lex_dom_dfs(
        &mut self,
        covered: &VertexSet,
        next: usize,
        remaining: usize,
        chosen: &mut Vec<usize>,
        cancel: &dyn Cancel,
    ) -> Result<Option<Vec<usize>>, Interrupted> {
        self.poll(cancel)?;
        if covered.len() == self.n {
            return Ok(Some(chosen.clone()));
        }
        if remaining == 0 || self.cover_lower_bound(covered) > remaining {
            return Ok(None);
        }
        for v in next..self.n {
            if self.orphan_below(covered, v) {
                // some uncovered vertex has no potential dominator >= v
                break;
            }
            let with_v = covered.union(&self.closed[v]);
            chosen.push(v);
            if let Some(found) = self.lex_dom_dfs(&with_v, v + 1, remaining - 1, chosen, cancel)? {
                return Ok(Some(found));
            }
            chosen.pop();
        }
        Ok(None)
    }

    /// True when some uncovered vertex cannot be dominated by any vertex
    /// with id `>= v`, so no extension drawn from `{v, ..}` can work.
    fn orphan_below(&self, covered: &VertexSet, v: usize) -> bool {
        (0..self.n).any(|w| !covered.contains(w) && !self.closed[w].iter().any(|x| x >= v))
    }

    /// Every dominating set of size exactly `size`, in ascending
    /// lexicographic order.
    fn enumerate_dominating(&mut self, size: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.enum_dfs(&VertexSet::new(self.n), 0, size, &mut chosen, &mut out);
        out
    }

    fn enum_dfs(
        &mut self,
        covered: &VertexSet,
        next: usize,
        size: usize,
        chosen: &mut Vec<usize>,
        out: &mut Vec<VertexSet>,
    ) {
        if chosen.len() == size {
            if covered.len() == self.n {
                out.push(VertexSet::from_members(self.n, chosen.iter().copied()));
            }
            return;
        }
        let remaining = size - chosen.len();
        if self.cover_lower_bound(covered) > remaining {
            return;
        }
        for v in next..self.n {
            if self.orphan_below(covered, v) {
                break;
            }
            let with_v = covered.union(&self.closed[v]);
            chosen.push(v);
            self.enum_dfs(&with_v, v + 1, size, chosen, out);
            chosen.pop();
        }
    }
}

/// Exact domination number with the lexicographically least γ-set as
/// witness.
pub fn gamma_exact(g: &Graph) -> DomSolution {
    gamma_exact_cancellable(g, &RunForever).expect("RunForever never cancels")
}

pub fn gamma_exact_cancellable(g: &Graph, cancel: &dyn Cancel) -> Result<DomSolution, Interrupted> {
    assert!(g.vertex_count() >= 1, "domination of the empty graph");
    let mut solver = Solver::new(g);
    let size = solver.gamma_size(cancel)?;
    let witness = solver
        .lex_min_dominating(size, cancel)?
        .expect("a dominating set of the optimal size exists");
    Ok(DomSolution {
        size,
        witness: VertexSet::from_members(g.vertex_count(), witness),
        kind: DomKind::Plain,
    })
}

/// Enumeration guard: all minimum dominating sets are listed only up to
/// this many vertices.
pub const ENUMERATION_MAX_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationGuard {
    pub n: usize,
}

impl fmt::Display for EnumerationGuard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "minimum-set enumeration supports at most {ENUMERATION_MAX_VERTICES} vertices, got {}",
            self.n
        )
    }
}

impl core::error::Error for EnumerationGuard {}

/// All dominating sets of size γ(g), ascending lexicographic order.
pub fn enumerate_min_dominating_sets(g: &Graph) -> Result<Vec<VertexSet>, EnumerationGuard> {
    let n = g.vertex_count();
    if n > ENUMERATION_MAX_VERTICES {
        return Err(EnumerationGuard { n });
    }
    let mut solver = Solver::new(g);
    let size = solver.gamma_size(&RunForever).expect("no cancel");
    Ok(solver.enumerate_dominating(size))
}

struct JkSolver<'a> {
    g: &'a Graph,
    n: usize,
    j: usize,
    k: usize,
}

impl JkSolver<'_> {
    /// Lexicographically least `[j,k]`-set of size exactly `target`.
    fn lex_min(&self, target: usize) -> Option<Vec<usize>> {
        let mut chosen = Vec::new();
        self.dfs(&mut chosen, 0, target)
    }

    fn enumerate(&self, target: usize) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        self.enum_dfs(&mut chosen, 0, target, &mut out);
        out
    }

    fn feasible(&self, chosen: &[usize], next: usize, remaining: usize) -> bool {
        // vertices below `next` can no longer join the set, so their
        // neighbor counts are constrained now
        for w in 0..next {
            if chosen.contains(&w) {
                continue;
            }
            let row = self.g.neighbors(w);
            let have = chosen.iter().filter(|&&c| row.contains(c)).count();
            if have > self.k {
                return false;
            }
            let future = (next..self.n).filter(|&c| row.contains(c)).count();
            if have + future.min(remaining) < self.j {
                return false;
            }
        }
        true
    }

    fn complete(&self, chosen: &[usize]) -> bool {
        let s = VertexSet::from_members(self.n, chosen.iter().copied());
        is_jk_set(self.g, &s, self.j, self.k)
    }

    fn dfs(&self, chosen: &mut Vec<usize>, next: usize, target: usize) -> Option<Vec<usize>> {
        if chosen.len() == target {
            return self.complete(chosen).then(|| chosen.clone());
        }
        let remaining = target - chosen.len();
        if self.n - next < remaining {
            return None;
        }
        for v in next..self.n {
            chosen.push(v);
            if self.feasible(chosen, v + 1, remaining - 1) {
                if let Some(found) = self.dfs(chosen, v + 1, target) {
                    return Some(found);
                }
            }
            chosen.pop();
        }
        None
    }

    fn enum_dfs(
        &self,
        chosen: &mut Vec<usize>,
        next: usize,
        target: usize,
        out: &mut Vec<VertexSet>,
    ) {
        if chosen.len() == target {
            if self.complete(chosen) {
                out.push(VertexSet::from_members(self.n, chosen.iter().copied()));
            }
            return;
        }
        let remaining = target - chosen.len();
        if self.n - next < remaining {
            return;
        }
        for v in next..self.n {
            chosen.push(v);
            if self.feasible(chosen, v + 1, remaining - 1) {
                self.enum_dfs(chosen, v + 1, target, out);
            }
            chosen.pop();
        }
    }
}

/// Minimum `[j,k]`-set by size-increasing search. The whole vertex set is a
/// `[j,k]`-set vacuously, so the search always terminates by size `n`.
pub fn gamma_jk(g: &Graph, j: usize, k: usize) -> DomSolution {
    assert!(j >= 1 && k >= j, "need 1 <= j <= k");
    let n = g.vertex_count();
    assert!(n >= 1, "domination of the empty graph");
    let solver = JkSolver { g, n, j, k };
    for size in 1..=n {
        if let Some(found) = solver.lex_min(size) {
            return DomSolution {
                size,
                witness: VertexSet::from_members(n, found),
                kind: DomKind::Range { j, k },
            };
        }
    }
    unreachable!("the full vertex set is a [j,k]-set");
}

/// All `[j,k]`-sets of minimum size, ascending lexicographic order.
pub fn enumerate_min_jk_sets(
    g: &Graph,
    j: usize,
    k: usize,
) -> Result<Vec<VertexSet>, EnumerationGuard> {
    let n = g.vertex_count();
    if n > ENUMERATION_MAX_VERTICES {
        return Err(EnumerationGuard { n });
    }
    let size = gamma_jk(g, j, k).size;
    let solver = JkSolver { g, n, j, k };
    Ok(solver.enumerate(size))
}

/// How a vertex relates to the ordered dominating set of a
/// [`CellPartition`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexClass {
    /// The `i`-th member of the dominating set itself.
    Member(usize),
    /// Private neighbor: adjacent to exactly the `i`-th member.
    Private(usize),
    /// Shared neighbor: adjacent to exactly the listed members (sorted,
    /// at least two).
    Shared(Vec<usize>),
}

/// The decomposition of `V(G)` induced by an ordered dominating set
/// `Γ = [v_1, .., v_k]` (cell indices are 0-based in code): private sets
/// `P_i`, shared sets `P_S`, and cells `Q_i = {v_i} ∪ P_i`. `Γ` together
/// with the private and shared sets partitions the vertex set.
#[derive(Clone, Debug)]
pub struct CellPartition {
    gamma_set: Vec<usize>,
    class: Vec<VertexClass>,
    private: Vec<VertexSet>,
    shared: BTreeMap<Vec<usize>, VertexSet>,
    cells: Vec<VertexSet>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CellPartitionError {
    OutOfRange {
        vertex: usize,
    },
    Duplicate {
        vertex: usize,
    },
    /// The given set does not dominate; names a witness vertex.
    NotDominating {
        uncovered: usize,
    },
}

impl fmt::Display for CellPartitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CellPartitionError::OutOfRange { vertex } => {
                write!(f, "dominating-set vertex {vertex} out of range")
            }
            CellPartitionError::Duplicate { vertex } => {
                write!(f, "dominating-set vertex {vertex} listed twice")
            }
            CellPartitionError::NotDominating { uncovered } => {
                write!(f, "set does not dominate: vertex {uncovered} uncovered")
            }
        }
    }
}

impl core::error::Error for CellPartitionError {}

pub fn cell_partition(g: &Graph, gamma_set: &[usize]) -> Result<CellPartition, CellPartitionError> {
    let n = g.vertex_count();
    let k = gamma_set.len();
    let mut member_of = BTreeMap::new();
    for (i, &v) in gamma_set.iter().enumerate() {
        if v >= n {
            return Err(CellPartitionError::OutOfRange { vertex: v });
        }
        if member_of.insert(v, i).is_some() {
            return Err(CellPartitionError::Duplicate { vertex: v });
        }
    }

    let mut class = Vec::with_capacity(n);
    let mut private: Vec<VertexSet> = (0..k).map(|_| VertexSet::new(n)).collect();
    let mut shared: BTreeMap<Vec<usize>, VertexSet> = BTreeMap::new();
    for v in 0..n {
        if let Some(&i) = member_of.get(&v) {
            class.push(VertexClass::Member(i));
            continue;
        }
        let hits: Vec<usize> = gamma_set
            .iter()
            .enumerate()
            .filter(|&(_, &m)| g.has_edge(v, m))
            .map(|(i, _)| i)
            .collect();
        match hits.len() {
            0 => return Err(CellPartitionError::NotDominating { uncovered: v }),
            1 => {
                private[hits[0]].insert(v);
                class.push(VertexClass::Private(hits[0]));
            }
            _ => {
                shared
                    .entry(hits.clone())
                    .or_insert_with(|| VertexSet::new(n))
                    .insert(v);
                class.push(VertexClass::Shared(hits));
            }
        }
    }

    let cells = (0..k)
        .map(|i| {
            let mut c = private[i].clone();
            c.insert(gamma_set[i]);
            c
        })
        .collect();

    Ok(CellPartition {
        gamma_set: gamma_set.to_vec(),
        class,
        private,
        shared,
        cells,
    })
}

impl CellPartition {
    pub fn k(&self) -> usize {
        self.gamma_set.len()
    }

    pub fn gamma_set(&self) -> &[usize] {
        &self.gamma_set
    }

    /// Width of the underlying vertex universe.
    pub fn universe(&self) -> usize {
        self.class.len()
    }

    pub fn member(&self, i: usize) -> usize {
        self.gamma_set[i]
    }

    pub fn private(&self, i: usize) -> &VertexSet {
        &self.private[i]
    }

    /// `Q_i = {v_i} ∪ P_i`.
    pub fn cell(&self, i: usize) -> &VertexSet {
        &self.cells[i]
    }

    /// Nonempty shared classes, keyed by sorted index sets of size two or
    /// more.
    pub fn shared_classes(&self) -> impl Iterator<Item = (&[usize], &VertexSet)> {
        self.shared.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn shared(&self, indices: &[usize]) -> Option<&VertexSet> {
        self.shared.get(indices)
    }

    pub fn class_of(&self, v: usize) -> &VertexClass {
        &self.class[v]
    }

    /// True when no vertex sees three or more members, i.e. the dominating
    /// set is a `[1,2]`-set.
    pub fn is_one_two(&self) -> bool {
        self.shared.keys().all(|s| s.len() == 2)
    }

    /// Chamber of `Q_I`: the cells of `I` plus every shared class drawn
    /// entirely from `I`.
    pub fn chamber(&self, indices: &[usize]) -> VertexSet {
        let mut out = VertexSet::new(self.universe());
        for &i in indices {
            assert!(
                i < self.k(),
                "cell index {i} out of range for k={}",
                self.k()
            );
            out.union_with(&self.cells[i]);
        }
        for (key, members) in &self.shared {
            if key.iter().all(|i| indices.contains(i)) {
                out.union_with(members);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn is_dominating_examples() {
        let k3 = Graph::complete(3);
        assert!(is_dominating(&k3, &VertexSet::singleton(3, 0)));

        let c4 = Graph::cycle(4);
        assert!(!is_dominating(&c4, &VertexSet::singleton(4, 0)));

        assert!(is_dominating(&c4, &VertexSet::full(4)));
    }

    #[test]
    fn gamma_exact_examples() {
        for n in 1..=8 {
            assert_eq!(gamma_exact(&Graph::complete(n)).size, 1);
        }

        let c4 = gamma_exact(&Graph::cycle(4));
        assert_eq!(c4.size, 2);
        assert!(is_dominating(&Graph::cycle(4), &c4.witness));
        assert_eq!(c4.witness.to_vec(), vec![0, 1]);

        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]);
        assert_eq!(gamma_exact(&two_k2).size, 2);
    }

    #[test]
    fn witness_is_lexicographically_least() {
        // star with center 2: the only γ-set is {2}; the lex scan must
        // reach past 0 and 1 to find it
        let g = Graph::from_edges(4, &[(2, 0), (2, 1), (2, 3)]);
        assert_eq!(gamma_exact(&g).witness.to_vec(), vec![2]);
    }

    #[test]
    fn enumerate_examples() {
        let k3 = Graph::complete(3);
        let sets = enumerate_min_dominating_sets(&k3).unwrap();
        assert_eq!(
            sets,
            vec![
                VertexSet::singleton(3, 0),
                VertexSet::singleton(3, 1),
                VertexSet::singleton(3, 2)
            ]
        );

        let p3 = Graph::path(3);
        assert_eq!(
            enumerate_min_dominating_sets(&p3).unwrap(),
            vec![VertexSet::singleton(3, 1)]
        );

        // brute force: which 2-subsets dominate C4
        let c4 = Graph::cycle(4);
        let mut expected = Vec::new();
        for u in 0..4 {
            for v in (u + 1)..4 {
                let s = VertexSet::from_members(4, [u, v]);
                if is_dominating(&c4, &s) {
                    expected.push(s);
                }
            }
        }
        let got = enumerate_min_dominating_sets(&c4).unwrap();
        assert_eq!(got, expected);
        assert!(got.contains(&VertexSet::from_members(4, [0, 2])));
        assert!(got.contains(&VertexSet::from_members(4, [0, 1])));
    }

    #[test]
    fn enumeration_guard() {
        assert_eq!(
            enumerate_min_dominating_sets(&Graph::new(21)),
            Err(EnumerationGuard { n: 21 })
        );
    }

    #[test]
    fn gamma_jk_examples() {
        // star K_{1,3}: the center alone is a [1,2]-set
        let star = Graph::star(4);
        let sol = gamma_jk(&star, 1, 2);
        assert_eq!(sol.size, 1);
        assert_eq!(sol.witness.to_vec(), vec![0]);
        assert_eq!(sol.kind, DomKind::Range { j: 1, k: 2 });

        let c4 = gamma_jk(&Graph::cycle(4), 1, 2);
        assert_eq!(c4.size, 2);
        assert!(is_jk_set(&Graph::cycle(4), &c4.witness, 1, 2));

        let k1 = gamma_jk(&Graph::new(1), 1, 2);
        assert_eq!(k1.size, 1);
        assert_eq!(k1.witness.to_vec(), vec![0]);
    }

    #[test]
    fn jk_monotone_versus_gamma() {
        // γ_[1,2] >= γ always; equal on these cographs
        for g in [Graph::cycle(4), Graph::complete(5), Graph::star(5)] {
            let plain = gamma_exact(&g).size;
            let jk = gamma_jk(&g, 1, 2).size;
            assert!(jk >= plain);
            assert_eq!(jk, plain);
        }
        // P5 is not a cograph; monotonicity still holds
        let p5 = Graph::path(5);
        assert!(gamma_jk(&p5, 1, 2).size >= gamma_exact(&p5).size);
    }

    #[test]
    fn enumerate_min_jk_sets_matches_filter() {
        let c4 = Graph::cycle(4);
        let all = enumerate_min_jk_sets(&c4, 1, 2).unwrap();
        let expected: Vec<VertexSet> = enumerate_min_dominating_sets(&c4)
            .unwrap()
            .into_iter()
            .filter(|s| is_jk_set(&c4, s, 1, 2))
            .collect();
        assert_eq!(all, expected);
    }

    #[test]
    fn cell_partition_examples() {
        // C4 with Γ = [0,2]: no privates, one shared class {1,3}
        let c4 = Graph::cycle(4);
        let cp = cell_partition(&c4, &[0, 2]).unwrap();
        assert_eq!(cp.k(), 2);
        assert!(cp.private(0).is_empty());
        assert!(cp.private(1).is_empty());
        assert_eq!(cp.shared(&[0, 1]).unwrap().to_vec(), vec![1, 3]);
        assert_eq!(cp.cell(0).to_vec(), vec![0]);
        assert_eq!(cp.cell(1).to_vec(), vec![2]);
        assert!(cp.is_one_two());

        // P3 with Γ = [1]
        let p3 = Graph::path(3);
        let cp = cell_partition(&p3, &[1]).unwrap();
        assert_eq!(cp.private(0).to_vec(), vec![0, 2]);
        assert_eq!(cp.cell(0).to_vec(), vec![0, 1, 2]);
        assert_eq!(cp.shared_classes().count(), 0);

        // K4 with Γ = [0]
        let cp = cell_partition(&Graph::complete(4), &[0]).unwrap();
        assert_eq!(cp.private(0).to_vec(), vec![1, 2, 3]);
    }

    #[test]
    fn cell_partition_rejects_bad_input() {
        let c4 = Graph::cycle(4);
        assert!(matches!(
            cell_partition(&c4, &[0]),
            Err(CellPartitionError::NotDominating { uncovered: 2 })
        ));
        assert!(matches!(
            cell_partition(&c4, &[0, 0]),
            Err(CellPartitionError::Duplicate { vertex: 0 })
        ));
        assert!(matches!(
            cell_partition(&c4, &[9]),
            Err(CellPartitionError::OutOfRange { vertex: 9 })
        ));
    }

    #[test]
    fn partition_covers_everything_exactly_once() {
        let g = Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (3, 5)]);
        let gamma = gamma_exact(&g).witness.to_vec();
        let cp = cell_partition(&g, &gamma).unwrap();
        let mut seen = VertexSet::from_members(6, gamma.iter().copied());
        for i in 0..cp.k() {
            assert!(!seen.intersects(cp.private(i)));
            seen.union_with(cp.private(i));
        }
        for (_, members) in cp.shared_classes() {
            assert!(!seen.intersects(members));
            seen.union_with(members);
        }
        assert_eq!(seen, VertexSet::full(6));
    }

    #[test]
    fn chamber_examples() {
        let c4 = Graph::cycle(4);
        let cp = cell_partition(&c4, &[0, 2]).unwrap();
        assert_eq!(cp.chamber(&[0, 1]), VertexSet::full(4));
        assert_eq!(cp.chamber(&[0]).to_vec(), vec![0]);
        assert!(cp.chamber(&[]).is_empty());
    }

    #[test]
    fn degenerate_k1() {
        let k1 = Graph::new(1);
        assert_eq!(gamma_exact(&k1).size, 1);
        assert_eq!(gamma_jk(&k1, 1, 2).size, 1);
        let cp = cell_partition(&k1, &[0]).unwrap();
        assert_eq!(cp.k(), 1);
        assert!(cp.private(0).is_empty());
        assert_eq!(cp.shared_classes().count(), 0);
    }

    #[test]
    fn cancellation_interrupts_the_solve() {
        struct Immediately;
        impl Cancel for Immediately {
            fn is_cancelled(&self) -> bool {
                true
            }
        }
        let g = Graph::cycle(12);
        assert_eq!(
            gamma_exact_cancellable(&g, &Immediately).err(),
            Some(Interrupted)
        );
        assert!(gamma_exact_cancellable(&g, &RunForever).is_ok());
    }
}

//! Cograph recognition and cotrees.
//!
//! A cograph is a graph with no induced path on four vertices; equivalently
//! a graph built from single vertices by disjoint unions and joins. The
//! cotree records that construction: a leaf per vertex, with internal union
//! and join nodes strictly alternating. Recognition runs the textbook
//! complement-components recursion, which at desk scale is preferable to
//! linear-time modular decomposition for auditability.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::bitset::VertexSet;
use crate::graph::Graph;

/// Four vertices inducing exactly the path `a - b - c - d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct P4Witness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl P4Witness {
    /// Checks the six-pair adjacency pattern directly against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        let P4Witness { a, b, c, d } = *self;
        let distinct = a != b && a != c && a != d && b != c && b != d && c != d;
        distinct
            && g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(a, d)
            && !g.has_edge(b, d)
    }
}

impl fmt::Display for P4Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// Scans ordered 4-tuples in lexicographic order and returns the first
/// induced P4, so the witness is deterministic.
pub fn find_induced_p4(g: &Graph) -> Option<P4Witness> {
    let n = g.vertex_count();
    for a in 0..n {
        for b in 0..n {
            if b == a || !g.has_edge(a, b) {
                continue;
            }
            for c in 0..n {
                if c == a || c == b || !g.has_edge(b, c) || g.has_edge(a, c) {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if g.has_edge(c, d) && !g.has_edge(a, d) && !g.has_edge(b, d) {
                        return Some(P4Witness { a, b, c, d });
                    }
                }
            }
        }
    }
    None
}

/// Parse tree witnessing cograph membership. Leaves carry vertex ids of the
/// source graph; union and join nodes have at least two children and never
/// a child of their own kind. Children are ordered by smallest leaf id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cotree {
    Leaf(usize),
    Union(Vec<Cotree>),
    Join(Vec<Cotree>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CotreeError {
    /// A composite node has fewer than two children.
    Arity,
    /// A union child of a union node or a join child of a join node.
    Alternation,
    /// Leaves are not exactly `{0, .., n-1}`.
    LeafSet,
    /// Unbalanced or malformed term text.
    TermSyntax { offset: usize },
}

impl fmt::Display for CotreeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CotreeError::Arity => write!(f, "union/join node needs at least two children"),
            CotreeError::Alternation => write!(f, "union under union or join under join"),
            CotreeError::LeafSet => write!(f, "leaves must be exactly 0..n-1 without repeats"),
            CotreeError::TermSyntax { offset } => {
                write!(f, "malformed cotree term at byte {offset}")
            }
        }
    }
}

impl core::error::Error for CotreeError {}

impl Cotree {
    pub fn min_leaf(&self) -> usize {
        match self {
            Cotree::Leaf(v) => *v,
            Cotree::Union(children) | Cotree::Join(children) => children
                .iter()
                .map(|c| c.min_leaf())
                .min()
                .expect("children"),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            Cotree::Leaf(_) => 1,
            Cotree::Union(children) | Cotree::Join(children) => {
                children.iter().map(|c| c.leaf_count()).sum()
            }
        }
    }

    fn collect_leaves(&self, out: &mut Vec<usize>) {
        match self {
            Cotree::Leaf(v) => out.push(*v),
            Cotree::Union(children) | Cotree::Join(children) => {
                for c in children {
                    c.collect_leaves(out);
                }
            }
        }
    }

    pub fn leaves(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    /// Validates arity, alternation, and the leaf bijection; returns the
    /// vertex count on success.
    pub fn validate(&self) -> Result<usize, CotreeError> {
        self.validate_node()?;
        let mut leaves = self.leaves();
        leaves.sort_unstable();
        let n = leaves.len();
        if leaves.iter().enumerate().any(|(i, &v)| i != v) {
            return Err(CotreeError::LeafSet);
        }
        Ok(n)
    }

    fn validate_node(&self) -> Result<(), CotreeError> {
        let children = match self {
            Cotree::Leaf(_) => return Ok(()),
            Cotree::Union(children) | Cotree::Join(children) => children,
        };
        if children.len() < 2 {
            return Err(CotreeError::Arity);
        }
        let own_union = matches!(self, Cotree::Union(_));
        for c in children {
            let child_union = matches!(c, Cotree::Union(_));
            if !matches!(c, Cotree::Leaf(_)) && child_union == own_union {
                return Err(CotreeError::Alternation);
            }
            c.validate_node()?;
        }
        Ok(())
    }

    /// Term rendering, e.g. `J(U(0,1),U(2,3))`.
    pub fn to_term(&self) -> String {
        let mut out = String::new();
        self.write_term(&mut out);
        out
    }

    fn write_term(&self, out: &mut String) {
        use core::fmt::Write;
        match self {
            Cotree::Leaf(v) => {
                let _ = write!(out, "{v}");
            }
            Cotree::Union(children) | Cotree::Join(children) => {
                out.push(if matches!(self, Cotree::Union(_)) {
                    'U'
                } else {
                    'J'
                });
                out.push('(');
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    c.write_term(out);
                }
                out.push(')');
            }
        }
    }

    /// Parses the term format accepted by test fixtures and reports.
    pub fn parse_term(text: &str) -> Result<Cotree, CotreeError> {
        let bytes = text.trim().as_bytes();
        let (tree, used) = parse_node(bytes, 0)?;
        if used != bytes.len() {
            return Err(CotreeError::TermSyntax { offset: used });
        }
        tree.validate()?;
        Ok(tree)
    }
}

fn parse_node(bytes: &[u8], at: usize) -> Result<(Cotree, usize), CotreeError> {
    match bytes.get(at) {
        Some(b'U') | Some(b'J') => {
            let is_union = bytes[at] == b'U';
            if bytes.get(at + 1) != Some(&b'(') {
                return Err(CotreeError::TermSyntax { offset: at + 1 });
            }
            let mut children = Vec::new();
            let mut pos = at + 2;
            loop {
                let (child, next) = parse_node(bytes, pos)?;
                children.push(child);
                match bytes.get(next) {
                    Some(b',') => pos = next + 1,
                    Some(b')') => {
                        let node = if is_union {
                            Cotree::Union(children)
                        } else {
                            Cotree::Join(children)
                        };
                        return Ok((node, next + 1));
                    }
                    _ => return Err(CotreeError::TermSyntax { offset: next }),
                }
            }
        }
        Some(b) if b.is_ascii_digit() => {
            let mut end = at;
            while bytes.get(end).is_some_and(|b| b.is_ascii_digit()) {
                end += 1;
            }
            let text = core::str::from_utf8(&bytes[at..end]).expect("digits");
            let v: usize = text
                .parse()
                .map_err(|_| CotreeError::TermSyntax { offset: at })?;
            Ok((Cotree::Leaf(v), end))
        }
        _ => Err(CotreeError::TermSyntax { offset: at }),
    }
}

/// Builds the cotree of `g`, or returns an induced P4 when `g` is not a
/// cograph.
///
/// Recursion: a disconnected graph is the union of its components; a graph
/// with disconnected complement is the join of the complement components;
/// a single vertex is a leaf. A connected, co-connected graph on two or
/// more vertices always contains an induced P4.
pub fn build_cotree(g: &Graph) -> Result<Cotree, P4Witness> {
    let n = g.vertex_count();
    assert!(n > 0, "cotree of the empty graph");
    if n == 1 {
        return Ok(Cotree::Leaf(0));
    }

    let components = g.connected_components();
    if components.len() > 1 {
        return assemble(g, &components, false);
    }
    let co_components = g.complement().connected_components();
    if co_components.len() > 1 {
        return assemble(g, &co_components, true);
    }
    Err(find_induced_p4(g).expect("connected co-connected graph on >=2 vertices has an induced P4"))
}

fn assemble(g: &Graph, parts: &[VertexSet], join: bool) -> Result<Cotree, P4Witness> {
    let mut children = Vec::with_capacity(parts.len());
    for part in parts {
        let (sub, map) = g.induced_subgraph(part);
        let inverse: Vec<usize> = {
            let mut inv = vec![0; map.len()];
            for (&old, &new) in &map {
                inv[new] = old;
            }
            inv
        };
        let child = match build_cotree(&sub) {
            Ok(t) => relabel(t, &inverse),
            Err(w) => {
                return Err(P4Witness {
                    a: inverse[w.a],
                    b: inverse[w.b],
                    c: inverse[w.c],
                    d: inverse[w.d],
                })
            }
        };
        children.push(child);
    }
    children.sort_by_key(|c| c.min_leaf());
    Ok(if join {
        Cotree::Join(children)
    } else {
        Cotree::Union(children)
    })
}

fn relabel(tree: Cotree, inverse: &[usize]) -> Cotree {
    match tree {
        Cotree::Leaf(v) => Cotree::Leaf(inverse[v]),
        Cotree::Union(children) => {
            Cotree::Union(children.into_iter().map(|c| relabel(c, inverse)).collect())
        }
        Cotree::Join(children) => {
            Cotree::Join(children.into_iter().map(|c| relabel(c, inverse)).collect())
        }
    }
}

/// Evaluates the union/join semantics back into a graph. Panics if the tree
/// violates the leaf bijection; use [`Cotree::validate`] on untrusted trees.
pub fn eval_cotree(tree: &Cotree) -> Graph {
    let n = tree.validate().expect("normalized cotree");
    let mut g = Graph::new(n);
    eval_into(tree, &mut g);
    g
}

fn eval_into(tree: &Cotree, g: &mut Graph) {
    match tree {
        Cotree::Leaf(_) => {}
        Cotree::Union(children) => {
            for c in children {
                eval_into(c, g);
            }
        }
        Cotree::Join(children) => {
            for c in children {
                eval_into(c, g);
            }
            for i in 0..children.len() {
                let left = children[i].leaves();
                for child in &children[(i + 1)..] {
                    for &u in &left {
                        for &v in &child.leaves() {
                            g.add_edge(u, v);
                        }
                    }
                }
            }
        }
    }
}

/// Domination number by dynamic programming over the cotree: a leaf costs
/// one, a union sums its children, and a join is `min(2, min over children)`.
/// Independent of the branch-and-bound solver, so the two cross-check each
/// other.
pub fn gamma_cotree(tree: &Cotree) -> usize {
    match tree {
        Cotree::Leaf(_) => 1,
        Cotree::Union(children) => children.iter().map(gamma_cotree).sum(),
        Cotree::Join(children) => {
            let best = children.iter().map(gamma_cotree).min().expect("children");
            best.min(2)
        }
    }
}

/// Samples a cograph on `n` vertices by evaluating a random cotree shape:
/// composite nodes split their leaf budget by a uniformly random composition
/// with at least two parts, kinds alternate down the tree, and the root kind
/// is a fair coin. Deterministic in `seed`. The distribution is not uniform
/// over unlabeled cographs; this is a fuzzing source, not a sampler.
pub fn random_cograph(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "random cograph needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let root_join = rng.random_bool(0.5);
    let tree = random_shape(&mut rng, n, root_join);
    eval_cotree(&tree)
}

/// Like [`random_cograph`] but the root is forced to a join so the result
/// is connected.
pub fn random_connected_cograph(n: usize, seed: u64) -> Graph {
    assert!(n >= 1, "random cograph needs at least one vertex");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tree = random_shape(&mut rng, n, true);
    eval_cotree(&tree)
}

fn random_shape(rng: &mut ChaCha8Rng, n: usize, join: bool) -> Cotree {
    if n == 1 {
        return Cotree::Leaf(0);
    }
    let parts = random_composition(rng, n);
    let mut children = Vec::with_capacity(parts.len());
    let mut next_leaf = 0;
    for part in parts {
        let mut child = random_shape(rng, part, !join);
        child = shift_leaves(child, next_leaf);
        next_leaf += part;
        children.push(child);
    }
    if join {
        Cotree::Join(children)
    } else {
        Cotree::Union(children)
    }
}

fn shift_leaves(tree: Cotree, offset: usize) -> Cotree {
    match tree {
        Cotree::Leaf(v) => Cotree::Leaf(v + offset),
        Cotree::Union(children) => Cotree::Union(
            children
                .into_iter()
                .map(|c| shift_leaves(c, offset))
                .collect(),
        ),
        Cotree::Join(children) => Cotree::Join(
            children
                .into_iter()
                .map(|c| shift_leaves(c, offset))
                .collect(),
        ),
    }
}

/// Uniform over compositions of `n` into at least two parts: each of the
/// `n-1` gaps is cut by a fair coin, rejecting the all-uncut draw.
fn random_composition(rng: &mut ChaCha8Rng, n: usize) -> Vec<usize> {
    debug_assert!(n >= 2);
    loop {
        let mut parts = Vec::new();
        let mut run = 1;
        let mut any_cut = false;
        for _ in 0..(n - 1) {
            if rng.random_bool(0.5) {
                parts.push(run);
                run = 1;
                any_cut = true;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        if any_cut {
            return parts;
        }
    }
}

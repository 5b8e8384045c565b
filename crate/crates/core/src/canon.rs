//! Brute-force canonical forms for graphs on up to eight vertices.
//!
//! The code of a graph is the lexicographically smallest upper-triangle bit
//! string over all vertex permutations, so two graphs receive equal codes
//! exactly when they are isomorphic. Factorial cost is acceptable at the
//! enumeration cap; larger graphs are still usable everywhere else in the
//! crate, just not for isomorphism-deduped enumeration.

use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

/// Largest vertex count accepted by [`canonical_code`].
pub const CANON_MAX_VERTICES: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TooManyVertices {
    pub n: usize,
}

impl fmt::Display for TooManyVertices {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "canonical form supports at most {CANON_MAX_VERTICES} vertices, got {}",
            self.n
        )
    }
}

impl core::error::Error for TooManyVertices {}

/// Canonical byte string: `[n]` followed by the minimal upper-triangle bits
/// (column-major, MSB-first). Equal codes iff isomorphic.
///
/// The minimum is found by growing the permutation one vertex at a time;
/// placing the `d`-th vertex fixes the next `d` bits of the string, so any
/// prefix already above the best-known code prunes its whole subtree.
pub fn canonical_code(g: &Graph) -> Result<Vec<u8>, TooManyVertices> {
    let n = g.vertex_count();
    if n > CANON_MAX_VERTICES {
        return Err(TooManyVertices { n });
    }
    // Single-word adjacency rows; n <= 8 so every row fits in a u64.
    let mut adj = [0u64; CANON_MAX_VERTICES];
    for (u, row) in adj.iter_mut().enumerate().take(n) {
        for v in g.neighbors(u).iter() {
            *row |= 1 << v;
        }
    }

    let nbits = n.saturating_sub(1) * n / 2;
    let mut search = Search {
        adj: &adj[..n],
        n,
        nbits,
        perm: Vec::with_capacity(n),
        best: u32::MAX,
    };
    search.place(0, 0);
    let best = if n <= 1 { 0 } else { search.best };

    let mut code = Vec::with_capacity(1 + nbits.div_ceil(8));
    code.push(n as u8);
    let mut remaining = nbits;
    while remaining > 0 {
        let take = remaining.min(8);
        // highest-order chunk first
        let shift = remaining - take;
        let byte = ((best >> shift) as u8) << (8 - take);
        code.push(byte);
        remaining -= take;
    }
    Ok(code)
}

struct Search<'a> {
    adj: &'a [u64],
    n: usize,
    nbits: usize,
    perm: Vec<usize>,
    best: u32,
}

impl Search<'_> {
    fn place(&mut self, prefix: u32, prefix_len: usize) {
        let depth = self.perm.len();
        if depth == self.n {
            if prefix < self.best {
                self.best = prefix;
            }
            return;
        }
        for v in 0..self.n {
            if self.perm.contains(&v) {
                continue;
            }
            let mut column = 0u32;
            for &placed in &self.perm {
                column = (column << 1) | ((self.adj[v] >> placed) & 1) as u32;
            }
            let next = (prefix << depth) | column;
            let next_len = prefix_len + depth;
            if next > self.best >> (self.nbits - next_len) {
                continue;
            }
            self.perm.push(v);
            self.place(next, next_len);
            self.perm.pop();
        }
    }
}

/// Convenience wrapper for callers that already know `n` is within the cap.
pub fn canonical_code_unchecked(g: &Graph) -> Vec<u8> {
    canonical_code(g).expect("graph within canonical-form cap")
}

//! Cartesian products `G □ H`, their fibers, and vertical domination.
//!
//! Product vertex `(g, h)` gets id `h * n_G + g`, matching the picture of
//! `G` on the x-axis and `H` on the y-axis: the `G`-fiber at height `h` is
//! a contiguous id block, which keeps fiber slicing cheap and dumps
//! readable.

use alloc::vec::Vec;
use core::fmt;

use crate::bitset::VertexSet;
use crate::domination::CellPartition;
use crate::graph::Graph;

/// Default refusal threshold for product construction, in product vertices.
/// A knob, not a hard constant; see [`ProductGraph::with_cap`].
pub const DEFAULT_PRODUCT_CAP: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ProductTooLarge {
    pub n_g: usize,
    pub n_h: usize,
    pub cap: usize,
}

impl fmt::Display for ProductTooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "product of {} x {} vertices exceeds the cap of {}",
            self.n_g, self.n_h, self.cap
        )
    }
}

impl core::error::Error for ProductTooLarge {}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    g: Graph,
    h: Graph,
    prod: Graph,
}

impl ProductGraph {
    pub fn new(g: &Graph, h: &Graph) -> Result<Self, ProductTooLarge> {
        Self::with_cap(g, h, DEFAULT_PRODUCT_CAP)
    }

    /// Builds `G □ H`: `(g1,h1) ~ (g2,h2)` iff the coordinates agree in one
    /// factor and are adjacent in the other.
    pub fn with_cap(g: &Graph, h: &Graph, cap: usize) -> Result<Self, ProductTooLarge> {
        let (n_g, n_h) = (g.vertex_count(), h.vertex_count());
        assert!(n_g >= 1 && n_h >= 1, "product factors must be nonempty");
        if n_g.saturating_mul(n_h) > cap {
            return Err(ProductTooLarge { n_g, n_h, cap });
        }
        let mut prod = Graph::new(n_g * n_h);
        for hv in 0..n_h {
            for gv in 0..n_g {
                let id = hv * n_g + gv;
                for gw in g.neighbors(gv).iter() {
                    if gw > gv {
                        prod.add_edge(id, hv * n_g + gw);
                    }
                }
                for hw in h.neighbors(hv).iter() {
                    if hw > hv {
                        prod.add_edge(id, hw * n_g + gv);
                    }
                }
            }
        }
        Ok(ProductGraph {
            g: g.clone(),
            h: h.clone(),
            prod,
        })
    }

    pub fn factor_g(&self) -> &Graph {
        &self.g
    }

    pub fn factor_h(&self) -> &Graph {
        &self.h
    }

    /// The product itself.
    pub fn graph(&self) -> &Graph {
        &self.prod
    }

    pub fn vertex_count(&self) -> usize {
        self.prod.vertex_count()
    }

    pub fn encode(&self, g: usize, h: usize) -> usize {
        debug_assert!(g < self.g.vertex_count() && h < self.h.vertex_count());
        h * self.g.vertex_count() + g
    }

    pub fn decode(&self, id: usize) -> (usize, usize) {
        let n_g = self.g.vertex_count();
        (id % n_g, id / n_g)
    }

    /// `D^h`: the slice of `D` living in the fiber at height `h`, as
    /// `G`-vertex ids.
    pub fn fiber_slice(&self, d: &VertexSet, h: usize) -> VertexSet {
        assert!(h < self.h.vertex_count(), "fiber height {h} out of range");
        let n_g = self.g.vertex_count();
        let mut out = VertexSet::new(n_g);
        for gv in 0..n_g {
            if d.contains(self.encode(gv, h)) {
                out.insert(gv);
            }
        }
        out
    }

    /// A vertex `(g, h)` is vertically dominated when its own column meets
    /// `D` within the closed `H`-neighborhood of `h`.
    pub fn vertex_vertically_dominated(&self, d: &VertexSet, g: usize, h: usize) -> bool {
        if d.contains(self.encode(g, h)) {
            return true;
        }
        self.h
            .neighbors(h)
            .iter()
            .any(|h2| d.contains(self.encode(g, h2)))
    }

    /// Cell `Q_i` at height `h` is vertically dominated when
    /// `(Q_i × N_H[h]) ∩ D` is nonempty.
    pub fn cell_vertically_dominated(
        &self,
        d: &VertexSet,
        cells: &CellPartition,
        i: usize,
        h: usize,
    ) -> bool {
        cells
            .cell(i)
            .iter()
            .any(|g| self.vertex_vertically_dominated(d, g, h))
    }
}

/// Per-fiber summary of a dominating set `D`: the slice `D^h` and the index
/// set `I^h` of vertically undominated cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberStatus {
    pub h: usize,
    /// `D ∩ G^h`, as `G`-vertex ids.
    pub dom_slice: VertexSet,
    /// `I^h`, ascending cell indices.
    pub undominated: Vec<usize>,
}

impl FiberStatus {
    /// `ℓ_h = |I^h|`.
    pub fn ell(&self) -> usize {
        self.undominated.len()
    }

    pub fn is_undominated(&self, cell: usize) -> bool {
        self.undominated.binary_search(&cell).is_ok()
    }
}

/// Computes the fiber statuses of `d` for every height, relative to the
/// cell partition of the `G` factor.
pub fn vertical_status(
    product: &ProductGraph,
    d: &VertexSet,
    cells: &CellPartition,
) -> Vec<FiberStatus> {
    assert_eq!(
        cells.universe(),
        product.factor_g().vertex_count(),
        "cell partition built for a different factor"
    );
    (0..product.factor_h().vertex_count())
        .map(|h| FiberStatus {
            h,
            dom_slice: product.fiber_slice(d, h),
            undominated: (0..cells.k())
                .filter(|&i| !product.cell_vertically_dominated(d, cells, i, h))
                .collect(),
        })
        .collect()
}

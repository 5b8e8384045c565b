//! Exact domination machinery for small graphs.
//!
//! The crate provides the algorithmic substrate for a desk-scale graph
//! domination laboratory:
//!
//! - [`graph`]: simple undirected graphs backed by multi-word bitset rows,
//!   with the elementary operations (complement, components, induced
//!   subgraphs) everything else is built from;
//! - [`codec`]: graph6 and edge-list text formats;
//! - [`canon`]: brute-force canonical forms for isomorphism-deduped
//!   enumeration of graphs on up to eight vertices;
//! - [`cotree`]: cograph recognition, cotrees, and a cotree-based
//!   domination oracle;
//! - [`domination`]: exact solvers for the domination number and the
//!   `[j,k]`-domination number, enumeration of minimum solutions, and the
//!   cell/chamber decomposition relative to a fixed dominating set;
//! - [`product`]: Cartesian products, fibers, and vertical domination;
//! - [`labeling`]: the dominating-set labeling pipeline over a product
//!   (provisional labels, two refinements, free-vertex relabeling), its
//!   counting certificate, and structural claim audits;
//! - [`naive`]: independent brute-force reference solvers used to
//!   cross-check the optimized paths.
//!
//! The crate is `no_std` (it requires `alloc`); IO, file formats on disk,
//! and the sweep/CLI harness live in the companion `domlab` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod bitset;
pub mod canon;
pub mod codec;
pub mod cotree;
pub mod domination;
pub mod graph;
pub mod labeling;
pub mod naive;
pub mod product;

pub use bitset::VertexSet;
pub use cotree::{Cotree, P4Witness};
pub use domination::{CellPartition, DomSolution};
pub use graph::Graph;
pub use labeling::{Certificate, LabelState};
pub use product::{FiberStatus, ProductGraph};

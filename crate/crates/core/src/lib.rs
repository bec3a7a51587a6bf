//! Exact construction of cells, faces and degeneracies inside finitely
//! computable categories.
//!
//! A [`kernel::Context`] supplies terminal objects, finite products, pushouts
//! and coproducts. From an interval object with two endpoints the wedge
//! construction ([`wedge`]) builds a tower of cells `F_0, F_1, ...` whose face
//! and degeneracy morphisms ([`cells`]) are checked against the cosimplicial
//! identities. On top of the tower sit homotopy and convexity checks
//! ([`homotopy`]), nerve homology ([`homology`]) and cell complexes
//! ([`complexes`]).
//!
//! Two backends ship with the crate: finite sets ([`finset`]) and finite
//! simplicial sets truncated at a fixed dimension ([`sset`]).

pub mod cells;
pub mod complexes;
pub mod delta;
pub mod error;
pub mod finset;
pub mod homology;
pub mod homotopy;
pub mod kernel;
pub mod snf;
pub mod sset;
pub mod wedge;

pub use error::{CellError, Result};
pub use kernel::{BackendTag, Context, SearchOptions};

/// Default number of candidate assignments a single search may explore.
pub const DEFAULT_BUDGET: u64 = 5_000_000;

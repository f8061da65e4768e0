//! FSPP: a fine-grained qualitative point-position calculus.
//!
//! The calculus relates a referent point to an (origin, relatum) pair on
//! a polar grid of `m` orientation sectors and `n` distance bands whose
//! widths grow geometrically. General relations are bit sets of grid
//! cells plus three special flags; reasoning runs through
//! distance/orientation-interval (DOI) propagation, rasterized back onto
//! the grid.
//!
//! Module map:
//! - [`doi`]: interval geometry and the DOI composition case analysis
//! - [`calculus`]: granularity, distance system, classification
//! - [`relation`]: bit-array relations with set algebra
//! - [`grid`]: cylindrical grids, Pavlidis contour tracing, fill
//! - [`reasoning`]: relation composition, unary transformations,
//!   conceptual neighborhood
//! - [`csp`]: ternary constraint networks

pub mod calculus;
pub mod csp;
pub mod doi;
pub mod error;
pub mod grid;
pub mod reasoning;
pub mod relation;

pub use calculus::{
    classify, Classification, CellIndex, Granularity, Point, SpecialRel,
};
pub use csp::{Network, Triple};
pub use doi::{Doi, PolarVector};
pub use error::{FsppError, Result};
pub use grid::{BoolGrid, Connectivity};
pub use reasoning::{compose, compose_bordered, expand, neighbors, unary, UnaryOp};
pub use relation::FsppRelation;

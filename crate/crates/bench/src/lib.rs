//! Shared fixtures for the criterion benches.

use fspp::calculus::{CellIndex, Granularity};
use fspp::relation::FsppRelation;

pub fn g18() -> Granularity {
    Granularity::new(18, 20, 0.10, 1.25).expect("valid granularity")
}

/// A filled rectangular block of grid cells, the typical shape of a
/// rasterized composition result.
pub fn block(g: &Granularity, dists: (usize, usize), orients: (usize, usize)) -> FsppRelation {
    let mut cells = Vec::new();
    for d in dists.0..=dists.1 {
        for o in orients.0..=orients.1 {
            cells.push(CellIndex::new(d, o % g.m_orient()));
        }
    }
    FsppRelation::from_cells(g, &cells).expect("cells in range")
}

//! Cylindrical boolean-grid machinery: neighborhoods, border extraction,
//! Pavlidis contour tracing, connected components and hole filling.
//!
//! The grid is a cylinder: the orientation axis wraps modulo `m`, the
//! distance axis is bounded and out-of-range distance counts as
//! permanently inactive. In the planar-image reading used below, distance
//! is the x axis and orientation the y axis (wrapping vertically), so the
//! canonical initial trace direction "increasing distance" has left =
//! decreasing orientation.

use crate::calculus::CellIndex;
use crate::error::{FsppError, Result};
use std::collections::BTreeSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connectivity {
    Four,
    Eight,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoolGrid {
    m: usize,
    n: usize,
    cells: Vec<bool>, // indexed orient + dist * m, matching bit_index
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Dir {
    North, // decreasing orientation
    East,  // increasing distance
    South, // increasing orientation
    West,  // decreasing distance
}

impl Dir {
    fn left(self) -> Dir {
        match self {
            Dir::North => Dir::West,
            Dir::West => Dir::South,
            Dir::South => Dir::East,
            Dir::East => Dir::North,
        }
    }

    fn right(self) -> Dir {
        match self {
            Dir::North => Dir::East,
            Dir::East => Dir::South,
            Dir::South => Dir::West,
            Dir::West => Dir::North,
        }
    }

    /// (delta distance, delta orientation)
    fn step(self) -> (isize, isize) {
        match self {
            Dir::North => (0, -1),
            Dir::East => (1, 0),
            Dir::South => (0, 1),
            Dir::West => (-1, 0),
        }
    }
}

impl BoolGrid {
    pub fn new(m_orient: usize, n_dist: usize) -> Self {
        assert!(m_orient >= 1 && n_dist >= 1);
        Self {
            m: m_orient,
            n: n_dist,
            cells: vec![false; m_orient * n_dist],
        }
    }

    pub fn m_orient(&self) -> usize {
        self.m
    }

    pub fn n_dist(&self) -> usize {
        self.n
    }

    fn idx(&self, c: CellIndex) -> usize {
        c.orient + c.dist * self.m
    }

    pub fn get(&self, c: CellIndex) -> bool {
        self.cells[self.idx(c)]
    }

    pub fn set(&mut self, c: CellIndex, v: bool) {
        let i = self.idx(c);
        self.cells[i] = v;
    }

    /// Resolves signed coordinates: orientation wraps, out-of-range
    /// distance is no cell.
    fn at(&self, dist: isize, orient: isize) -> Option<CellIndex> {
        if dist < 0 || dist >= self.n as isize {
            return None;
        }
        let o = orient.rem_euclid(self.m as isize) as usize;
        Some(CellIndex::new(dist as usize, o))
    }

    fn active_at(&self, dist: isize, orient: isize) -> bool {
        self.at(dist, orient).map_or(false, |c| self.get(c))
    }

    pub fn active_cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        (0..self.n).flat_map(move |d| {
            (0..self.m).filter_map(move |o| {
                let c = CellIndex::new(d, o);
                if self.get(c) {
                    Some(c)
                } else {
                    None
                }
            })
        })
    }

    pub fn count(&self) -> usize {
        self.cells.iter().filter(|&&b| b).count()
    }

    fn check(&self, c: CellIndex) -> Result<()> {
        if c.dist >= self.n || c.orient >= self.m {
            return Err(FsppError::IndexOutOfRange {
                dist: c.dist,
                orient: c.orient,
                n_dist: self.n,
                m_orient: self.m,
            });
        }
        Ok(())
    }

    /// Moore neighborhood in P1..P8 order (top-left, then clockwise),
    /// with orientation wrap and distance clipping.
    pub fn moore_neighbors(&self, c: CellIndex) -> Result<Vec<CellIndex>> {
        self.check(c)?;
        let (d, o) = (c.dist as isize, c.orient as isize);
        let offsets = [
            (-1, -1),
            (0, -1),
            (1, -1),
            (1, 0),
            (1, 1),
            (0, 1),
            (-1, 1),
            (-1, 0),
        ];
        Ok(offsets
            .iter()
            .filter_map(|&(dd, doo)| self.at(d + dd, o + doo))
            .collect())
    }

    /// Edge-sharing subset of the Moore neighborhood (P2, P4, P6, P8).
    pub fn four_neighbors(&self, c: CellIndex) -> Result<Vec<CellIndex>> {
        self.check(c)?;
        let (d, o) = (c.dist as isize, c.orient as isize);
        let offsets = [(0, -1), (1, 0), (0, 1), (-1, 0)];
        Ok(offsets
            .iter()
            .filter_map(|&(dd, doo)| self.at(d + dd, o + doo))
            .collect())
    }

    fn neighbors(&self, c: CellIndex, conn: Connectivity) -> Vec<CellIndex> {
        match conn {
            Connectivity::Four => self.four_neighbors(c).expect("checked"),
            Connectivity::Eight => self.moore_neighbors(c).expect("checked"),
        }
    }

    fn is_border(&self, c: CellIndex, conn: Connectivity) -> bool {
        if !self.get(c) {
            return false;
        }
        let (d, o) = (c.dist as isize, c.orient as isize);
        let offsets: &[(isize, isize)] = match conn {
            Connectivity::Eight => &[
                (-1, -1),
                (0, -1),
                (1, -1),
                (1, 0),
                (1, 1),
                (0, 1),
                (-1, 1),
                (-1, 0),
            ],
            Connectivity::Four => &[(0, -1), (1, 0), (0, 1), (-1, 0)],
        };
        offsets
            .iter()
            .any(|&(dd, doo)| !self.active_at(d + dd, o + doo))
    }

    /// Brute-force border scan; the oracle the tracer is checked against.
    pub fn border_cells(&self, conn: Connectivity) -> BTreeSet<CellIndex> {
        self.active_cells()
            .filter(|&c| self.is_border(c, conn))
            .collect()
    }

    /// Maximal connected sets of active cells, ordered by their minimal
    /// bit index.
    pub fn connected_components(&self, conn: Connectivity) -> Vec<BTreeSet<CellIndex>> {
        let mut seen = vec![false; self.cells.len()];
        let mut components = Vec::new();
        for d in 0..self.n {
            for o in 0..self.m {
                let c = CellIndex::new(d, o);
                if !self.get(c) || seen[self.idx(c)] {
                    continue;
                }
                let mut comp = BTreeSet::new();
                let mut stack = vec![c];
                seen[self.idx(c)] = true;
                while let Some(cur) = stack.pop() {
                    comp.insert(cur);
                    for nb in self.neighbors(cur, conn) {
                        if self.get(nb) && !seen[self.idx(nb)] {
                            seen[self.idx(nb)] = true;
                            stack.push(nb);
                        }
                    }
                }
                components.push(comp);
            }
        }
        components
    }

    /// Deterministic Pavlidis start for the component containing `seed`:
    /// the minimal (dist, orient) active cell whose left neighbor under
    /// the canonical initial direction (increasing distance, left =
    /// decreasing orientation) is inactive.
    pub fn find_start(&self, seed: CellIndex) -> Result<CellIndex> {
        self.check(seed)?;
        if !self.get(seed) {
            return Err(FsppError::EmptyComponent);
        }
        let comp = self.component_of(seed, Connectivity::Eight);
        comp.iter()
            .copied()
            .find(|&c| !self.active_at(c.dist as isize, c.orient as isize - 1))
            .ok_or_else(|| {
                FsppError::InvalidStart(
                    "component has no cell with an inactive left neighbor".to_string(),
                )
            })
    }

    fn component_of(&self, seed: CellIndex, conn: Connectivity) -> BTreeSet<CellIndex> {
        let mut comp = BTreeSet::new();
        let mut stack = vec![seed];
        comp.insert(seed);
        while let Some(cur) = stack.pop() {
            for nb in self.neighbors(cur, conn) {
                if self.get(nb) && comp.insert(nb) {
                    stack.push(nb);
                }
            }
        }
        comp
    }

    /// Single Pavlidis contour pass from `start` facing `dir`.
    fn trace_contour(&self, start: CellIndex, conn: Connectivity, dir0: Dir) -> Vec<CellIndex> {
        let mut contour = vec![start];
        let mut current = start;
        let mut dir = dir0;
        let mut right_turns = 0u32;
        // each cell can be entered at most once per direction
        let cap = 4 * self.cells.len() + 4;
        for _ in 0..cap {
            let (d, o) = (current.dist as isize, current.orient as isize);
            let (fd, fo) = dir.step();
            let (ld, lo) = dir.left().step();
            let (rd, ro) = dir.right().step();
            let p1 = (d + fd + ld, o + fo + lo);
            let p2 = (d + fd, o + fo);
            let p3 = (d + fd + rd, o + fo + ro);
            let p4 = (d + rd, o + ro);

            let p1_ok = self.active_at(p1.0, p1.1)
                && (conn == Connectivity::Eight || self.active_at(p2.0, p2.1));
            if p1_ok {
                if conn == Connectivity::Four {
                    contour.push(self.at(p2.0, p2.1).unwrap());
                }
                current = self.at(p1.0, p1.1).unwrap();
                dir = dir.left();
                right_turns = 0;
                if current == start {
                    break;
                }
                contour.push(current);
                continue;
            }
            if self.active_at(p2.0, p2.1) {
                current = self.at(p2.0, p2.1).unwrap();
                right_turns = 0;
                if current == start {
                    break;
                }
                contour.push(current);
                continue;
            }
            let p3_ok = self.active_at(p3.0, p3.1)
                && (conn == Connectivity::Eight || self.active_at(p4.0, p4.1));
            if p3_ok {
                if conn == Connectivity::Four {
                    contour.push(self.at(p4.0, p4.1).unwrap());
                }
                current = self.at(p3.0, p3.1).unwrap();
                right_turns = 0;
                if current == start {
                    break;
                }
                contour.push(current);
                continue;
            }
            dir = dir.right();
            right_turns += 1;
            if right_turns == 3 {
                break;
            }
        }
        contour
    }

    /// A direction whose left neighbor of `c` is inactive, if any.
    fn startable_dir(&self, c: CellIndex) -> Option<Dir> {
        let (d, o) = (c.dist as isize, c.orient as isize);
        [Dir::East, Dir::South, Dir::West, Dir::North]
            .into_iter()
            .find(|dir| {
                let (ld, lo) = dir.left().step();
                !self.active_at(d + ld, o + lo)
            })
    }

    /// Ordered border traversal of the connected component containing
    /// `start`. Traces the contour reachable from `start`, then any
    /// remaining contours of the component (interior holes), so that the
    /// visited set equals the brute-force border of the component.
    ///
    /// `start` must be active; the canonical start restriction (inactive
    /// left neighbor in some direction) is relaxed only for cells where no
    /// such direction exists (diagonal-only border cells), which are
    /// appended directly.
    pub fn trace_pavlidis(
        &self,
        start: CellIndex,
        conn: Connectivity,
    ) -> Result<Vec<CellIndex>> {
        self.check(start)?;
        if !self.get(start) {
            return Err(FsppError::InvalidStart("start cell is inactive".to_string()));
        }
        let comp_conn = match conn {
            Connectivity::Eight => Connectivity::Eight,
            Connectivity::Four => Connectivity::Four,
        };
        let component = self.component_of(start, comp_conn);
        let border: BTreeSet<CellIndex> = component
            .iter()
            .copied()
            .filter(|&c| self.is_border(c, conn))
            .collect();

        let mut result: Vec<CellIndex> = Vec::new();
        let mut covered: BTreeSet<CellIndex> = BTreeSet::new();

        let mut queue: Vec<CellIndex> = vec![start];
        loop {
            let next = match queue.pop() {
                Some(c) => c,
                None => match border.iter().copied().find(|c| !covered.contains(c)) {
                    Some(c) => c,
                    None => break,
                },
            };
            if covered.contains(&next) {
                continue;
            }
            match self.startable_dir(next) {
                Some(dir) => {
                    for c in self.trace_contour(next, conn, dir) {
                        // In the 4-connected variant the inserted P2/P4
                        // cells keep the path edge-connected; ones that
                        // only touch white diagonally are path glue, not
                        // border cells.
                        if conn == Connectivity::Four && !self.is_border(c, conn) {
                            continue;
                        }
                        if covered.insert(c) {
                            result.push(c);
                        }
                    }
                }
                None => {
                    // no inactive edge neighbor in any direction: the cell
                    // borders white only diagonally
                    covered.insert(next);
                    result.push(next);
                }
            }
        }
        Ok(result)
    }

    /// Activates every inactive cell that cannot reach the outer distance
    /// edges through inactive cells (4-connectivity). Active cells are
    /// unchanged.
    pub fn fill(&self) -> BoolGrid {
        let mut outside = vec![false; self.cells.len()];
        let mut stack = Vec::new();
        for o in 0..self.m {
            for d in [0, self.n - 1] {
                let c = CellIndex::new(d, o);
                if !self.get(c) && !outside[self.idx(c)] {
                    outside[self.idx(c)] = true;
                    stack.push(c);
                }
            }
        }
        while let Some(cur) = stack.pop() {
            for nb in self.four_neighbors(cur).expect("in range") {
                if !self.get(nb) && !outside[self.idx(nb)] {
                    outside[self.idx(nb)] = true;
                    stack.push(nb);
                }
            }
        }
        let mut out = self.clone();
        for d in 0..self.n {
            for o in 0..self.m {
                let c = CellIndex::new(d, o);
                if !self.get(c) && !outside[self.idx(c)] {
                    out.set(c, true);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_from(cells: &[(usize, usize)], m: usize, n: usize) -> BoolGrid {
        let mut g = BoolGrid::new(m, n);
        for &(d, o) in cells {
            g.set(CellIndex::new(d, o), true);
        }
        g
    }

    #[test]
    fn moore_neighbor_counts() {
        let g = BoolGrid::new(8, 6);
        assert_eq!(g.moore_neighbors(CellIndex::new(3, 3)).unwrap().len(), 8);
        // distance edge clips a whole ring side
        assert_eq!(g.moore_neighbors(CellIndex::new(0, 3)).unwrap().len(), 5);
        // orientation wraps
        let nbs = g.moore_neighbors(CellIndex::new(3, 7)).unwrap();
        assert!(nbs.contains(&CellIndex::new(3, 0)));
        assert_eq!(nbs.len(), 8);
    }

    #[test]
    fn four_neighbor_counts() {
        let g = BoolGrid::new(8, 6);
        assert_eq!(g.four_neighbors(CellIndex::new(3, 3)).unwrap().len(), 4);
        assert_eq!(g.four_neighbors(CellIndex::new(0, 3)).unwrap().len(), 3);
        let nbs = g.four_neighbors(CellIndex::new(3, 0)).unwrap();
        assert!(nbs.contains(&CellIndex::new(3, 7)));
    }

    #[test]
    fn border_of_full_grid_is_distance_edges() {
        let mut g = BoolGrid::new(6, 5);
        for d in 0..5 {
            for o in 0..6 {
                g.set(CellIndex::new(d, o), true);
            }
        }
        let border = g.border_cells(Connectivity::Eight);
        // the cylinder has no orientation edge, only the two distance rims
        assert!(border.iter().all(|c| c.dist == 0 || c.dist == 4));
        assert_eq!(border.len(), 12);
    }

    #[test]
    fn border_single_cell_and_block_interior() {
        let g = grid_from(&[(2, 2)], 8, 6);
        assert_eq!(
            g.border_cells(Connectivity::Eight),
            [CellIndex::new(2, 2)].into_iter().collect()
        );
        let mut cells = Vec::new();
        for d in 1..4 {
            for o in 1..4 {
                cells.push((d, o));
            }
        }
        let g = grid_from(&cells, 8, 6);
        let border = g.border_cells(Connectivity::Eight);
        assert!(!border.contains(&CellIndex::new(2, 2)));
        assert_eq!(border.len(), 8);
    }

    #[test]
    fn trace_single_cell() {
        let g = grid_from(&[(2, 3)], 8, 6);
        let t = g.trace_pavlidis(CellIndex::new(2, 3), Connectivity::Eight).unwrap();
        assert_eq!(t, vec![CellIndex::new(2, 3)]);
    }

    #[test]
    fn trace_two_by_two_block() {
        let g = grid_from(&[(2, 2), (2, 3), (3, 2), (3, 3)], 8, 6);
        let t = g.trace_pavlidis(CellIndex::new(2, 2), Connectivity::Eight).unwrap();
        let set: BTreeSet<_> = t.iter().copied().collect();
        assert_eq!(set.len(), 4);
        assert_eq!(set, g.border_cells(Connectivity::Eight));
    }

    #[test]
    fn trace_thesis_perimeter() {
        // orientations 8..=11 x distances 14..=17 on an 18x20 cylinder
        let mut cells = Vec::new();
        for o in 8..=11 {
            for d in 14..=17 {
                cells.push((d, o));
            }
        }
        let g = grid_from(&cells, 18, 20);
        let t = g
            .trace_pavlidis(CellIndex::new(14, 8), Connectivity::Eight)
            .unwrap();
        let set: BTreeSet<_> = t.iter().copied().collect();
        let mut expected = BTreeSet::new();
        for d in 14..=17 {
            expected.insert(CellIndex::new(d, 8));
            expected.insert(CellIndex::new(d, 11));
        }
        for o in 9..=10 {
            expected.insert(CellIndex::new(14, o));
            expected.insert(CellIndex::new(17, o));
        }
        assert_eq!(set, expected);
    }

    #[test]
    fn trace_wrapping_component() {
        // block crossing the orientation seam
        let g = grid_from(&[(3, 7), (3, 0), (4, 7), (4, 0)], 8, 6);
        assert_eq!(g.connected_components(Connectivity::Eight).len(), 1);
        let t = g.trace_pavlidis(CellIndex::new(3, 7), Connectivity::Eight).unwrap();
        let set: BTreeSet<_> = t.iter().copied().collect();
        assert_eq!(set, g.border_cells(Connectivity::Eight));
    }

    #[test]
    fn trace_full_ring_fallback() {
        // a whole orientation ring: no cell has an inactive left neighbor
        let cells: Vec<(usize, usize)> = (0..8).map(|o| (3, o)).collect();
        let g = grid_from(&cells, 8, 6);
        assert!(g.find_start(CellIndex::new(3, 0)).is_err());
        let t = g.trace_pavlidis(CellIndex::new(3, 0), Connectivity::Eight).unwrap();
        let set: BTreeSet<_> = t.iter().copied().collect();
        assert_eq!(set, g.border_cells(Connectivity::Eight));
    }

    #[test]
    fn find_start_is_min_index() {
        let g = grid_from(&[(2, 2), (2, 3), (3, 2)], 8, 6);
        assert_eq!(g.find_start(CellIndex::new(3, 2)).unwrap(), CellIndex::new(2, 2));
        let empty = BoolGrid::new(8, 6);
        assert!(empty.find_start(CellIndex::new(0, 0)).is_err());
    }

    #[test]
    fn fill_basics() {
        // solid block unchanged
        let g = grid_from(&[(2, 2), (2, 3), (3, 2), (3, 3)], 8, 6);
        assert_eq!(g.fill(), g);
        // perimeter ring fills back to the solid block
        let mut ring = Vec::new();
        for o in 8..=11 {
            for d in 14..=17 {
                if o == 8 || o == 11 || d == 14 || d == 17 {
                    ring.push((d, o));
                }
            }
        }
        let g = grid_from(&ring, 18, 20);
        let filled = g.fill();
        for o in 8..=11 {
            for d in 14..=17 {
                assert!(filled.get(CellIndex::new(d, o)));
            }
        }
        assert_eq!(filled.count(), 16);
        // idempotent
        assert_eq!(filled.fill(), filled);
    }

    #[test]
    fn components_basics() {
        let g = BoolGrid::new(8, 6);
        assert!(g.connected_components(Connectivity::Eight).is_empty());
        let g = grid_from(&[(1, 1), (4, 5)], 8, 6);
        assert_eq!(g.connected_components(Connectivity::Eight).len(), 2);
        let g = grid_from(&[(2, 7), (2, 0)], 8, 6);
        assert_eq!(g.connected_components(Connectivity::Four).len(), 1);
    }
}

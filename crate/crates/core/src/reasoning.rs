//! Inference over general relations: composition through DOI interval
//! propagation, rasterization back onto the polar grid, unary
//! reference-frame transformations and the conceptual neighborhood.
//!
//! Atomic relations are exactly shaped like DOIs, so the composition of
//! two general relations is the union of the DOI compositions of their
//! atomic pairs, rasterized back onto the grid. The result is a weak
//! composition: a sound upper bound, computed on demand instead of from a
//! precomputed table.

use crate::calculus::{
    build_distance_system, cell_bounds, check_cell, CellIndex, Granularity, BOUNDARY_TOL,
};
use crate::doi::{compose as doi_compose, Doi, INF};
use crate::error::Result;
use crate::grid::{BoolGrid, Connectivity};
use crate::relation::FsppRelation;
use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;
use std::rc::Rc;

/// The six argument permutations of a ternary relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnaryOp {
    /// (A,B,C) -> (A,B,C)
    Id,
    /// (A,B,C) -> (B,A,C)
    Inv,
    /// (A,B,C) -> (A,C,B)
    Sc,
    /// (A,B,C) -> (C,A,B)
    Sci,
    /// (A,B,C) -> (B,C,A)
    Hm,
    /// (A,B,C) -> (C,B,A)
    Hmi,
}

/// How the inversion models the origin's unknown position behind the
/// relatum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InvExtent {
    /// An exact back-direction DOI (phi = pi, all distances).
    #[default]
    ExactBackDirection,
    /// The two back-border sector columns at all distances
    /// (quasi-partition reading), for comparison.
    BackBorderSectors,
}

/// The annulus sector of one atomic relation as a DOI. Sector bounds in
/// [0, 2pi) are mapped into the signed DOI convention; no sector
/// straddles the backward direction because the orientation count is
/// even.
pub fn cell_to_doi(g: &Granularity, c: CellIndex) -> Result<Doi> {
    let (r_lo, r_hi, mut a_lo, mut a_hi) = cell_bounds(g, c)?;
    if a_lo >= PI - BOUNDARY_TOL {
        a_lo -= 2.0 * PI;
        a_hi -= 2.0 * PI;
    }
    Doi::new(r_lo, r_hi, a_lo, a_hi)
}

/// Rasterizes a DOI onto the grid: the relation holds exactly the cells
/// whose closed annulus sector intersects the DOI's closed region. The
/// full DOI maps to all cells plus the sam flag (the referent can be at
/// the relatum).
pub fn doi_to_relation(g: &Granularity, d: &Doi) -> FsppRelation {
    if d.is_full() {
        let mut r = FsppRelation::empty(g);
        for c in all_cells(g) {
            r.set_cell(c, true).expect("cell in range");
        }
        r.set_sam(true);
        return r;
    }
    let ds = build_distance_system(g);
    let mut r = FsppRelation::empty(g);
    let span = d.phi_max() - d.phi_min();
    let arc_lo = d.phi_min().rem_euclid(2.0 * PI);
    let arc_hi = arc_lo + span;
    let w = g.sector_width();
    for i in 0..g.n_dist() {
        let lo = ds.inner_radius(i);
        let hi = ds.outer_radius(i);
        if d.r_min() > hi + BOUNDARY_TOL || d.r_max() < lo - BOUNDARY_TOL {
            continue;
        }
        for j in 0..g.m_orient() {
            let s_lo = w * j as f64;
            let s_hi = w * (j + 1) as f64;
            // closed intersection of two arcs on the circle
            let overlaps = |a: f64, b: f64| a <= arc_hi + BOUNDARY_TOL && arc_lo <= b + BOUNDARY_TOL;
            if overlaps(s_lo, s_hi)
                || overlaps(s_lo + 2.0 * PI, s_hi + 2.0 * PI)
                || overlaps(s_lo - 2.0 * PI, s_hi - 2.0 * PI)
            {
                r.set_cell(CellIndex::new(i, j), true).expect("cell in range");
            }
        }
    }
    r
}

fn all_cells(g: &Granularity) -> impl Iterator<Item = CellIndex> {
    let (m, n) = (g.m_orient(), g.n_dist());
    (0..n).flat_map(move |d| (0..m).map(move |o| CellIndex::new(d, o)))
}

/// Special-flag participation in composition: a special operand carries
/// no usable frame, so it contributes the universal relation, except that
/// two coinciding-triple operands stay coinciding.
fn compose_flags(r1: &FsppRelation, r2: &FsppRelation, out: &mut FsppRelation) {
    let g = out.granularity().clone();
    let r1_other = r1.dou() || r1.sam();
    let r2_other = r2.dou() || r2.sam();
    let r1_any = r1.has_special();
    let r2_any = r2.has_special();
    if r1.tri() && r2.tri() {
        out.set_tri(true);
    }
    let universal_needed = (r1_other && r2_any)
        || (r1_any && r2_other)
        || (r1_other && r2.cell_count() > 0)
        || (r1.cell_count() > 0 && r2_other)
        || (r1.tri() && r2.cell_count() > 0)
        || (r1.cell_count() > 0 && r2.tri());
    if universal_needed {
        out.union_with(&FsppRelation::universal(&g)).expect("same granularity");
    }
}

/// Cache key identifying a granularity by value (parameters are finite
/// and validated, so bit equality is exact equality).
type GranKey = (usize, usize, u64, u64);

fn gran_key(g: &Granularity) -> GranKey {
    (
        g.m_orient(),
        g.n_dist(),
        g.base_length().to_bits(),
        g.ratio().to_bits(),
    )
}

thread_local! {
    // atomic-pair composition results, shared across calls: the table of
    // all pairs is finite per granularity and composition is hot in
    // refinement sweeps
    static PAIR_CACHE: RefCell<HashMap<(GranKey, usize, usize), Rc<FsppRelation>>> =
        RefCell::new(HashMap::new());
}

fn composed_pair(g: &Granularity, a: CellIndex, b: CellIndex, r_cap: f64) -> Rc<FsppRelation> {
    let key = (
        gran_key(g),
        crate::calculus::bit_index(g, a).expect("valid cell"),
        crate::calculus::bit_index(g, b).expect("valid cell"),
    );
    PAIR_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&key) {
            return hit.clone();
        }
        let d1 = cell_to_doi(g, a).expect("valid cell");
        let d2 = cell_to_doi(g, b).expect("valid cell");
        let piece = Rc::new(doi_to_relation(g, &doi_compose(&d1, &d2, r_cap)));
        cache.borrow_mut().insert(key, piece.clone());
        piece
    })
}

/// Weak composition of two general relations: the union of the DOI
/// compositions of all atomic pairs. Pair results are cached per
/// granularity across calls.
pub fn compose(r1: &FsppRelation, r2: &FsppRelation) -> Result<FsppRelation> {
    compose_cells(r1, r2, None)
}

fn compose_cells(
    r1: &FsppRelation,
    r2: &FsppRelation,
    cells_override: Option<(&[CellIndex], &[CellIndex])>,
) -> Result<FsppRelation> {
    if r1.granularity() != r2.granularity() {
        return Err(crate::error::FsppError::GranularityMismatch);
    }
    let g = r1.granularity().clone();
    let ds = build_distance_system(&g);
    let r_cap = ds.r_cap();
    let mut out = FsppRelation::empty(&g);

    let (cells1, cells2): (Vec<CellIndex>, Vec<CellIndex>) = match cells_override {
        Some((a, b)) => (a.to_vec(), b.to_vec()),
        None => (r1.cells().collect(), r2.cells().collect()),
    };
    'outer: for &a in &cells1 {
        for &b in &cells2 {
            out.union_with(&composed_pair(&g, a, b, r_cap))?;
            // the union can only grow; once saturated, stop
            if out.is_universal_cells() {
                break 'outer;
            }
        }
    }
    compose_flags(r1, r2, &mut out);
    Ok(out)
}

/// Border-optimized composition: composes only the 8-border cells of each
/// operand, then fills enclosed holes in the result. Conjectured (and
/// differentially tested) to equal the full composition.
///
/// One case is not border-monotone and is scanned separately: an interior
/// pair can reach the reference point (its DOI composition promotes to
/// full) while no border pair does, because the radial overlap needed for
/// coincidence can hold strictly between the border rings. The scan runs
/// the cheap DOI case analysis over all pairs without rasterizing; only
/// border pairs pay for rasterization.
pub fn compose_bordered(r1: &FsppRelation, r2: &FsppRelation) -> Result<FsppRelation> {
    if r1.granularity() != r2.granularity() {
        return Err(crate::error::FsppError::GranularityMismatch);
    }
    let g = r1.granularity().clone();
    if let Some(full) = coincidence_scan(&g, r1, r2)? {
        let mut out = full;
        compose_flags(r1, r2, &mut out);
        return Ok(out);
    }
    let b1 = border_cells_of(r1)?;
    let b2 = border_cells_of(r2)?;
    let composed = compose_cells(r1, r2, Some((&b1, &b2)))?;
    let filled = relation_fill(&composed);
    let mut out = FsppRelation::from_grid(&g, &filled)?;
    out.set_dou(composed.dou());
    out.set_tri(composed.tri());
    out.set_sam(composed.sam());
    Ok(out)
}

/// Looks for any atomic pair whose DOI composition promotes to full. If
/// one exists the composition result is already the rasterized full DOI
/// (all cells plus sam) regardless of every other pair.
fn coincidence_scan(
    g: &Granularity,
    r1: &FsppRelation,
    r2: &FsppRelation,
) -> Result<Option<FsppRelation>> {
    let ds = build_distance_system(g);
    let r_cap = ds.r_cap();
    let d2s: Vec<Doi> = r2.cells().map(|c| cell_to_doi(g, c)).collect::<Result<_>>()?;
    for a in r1.cells() {
        let d1 = cell_to_doi(g, a)?;
        for d2 in &d2s {
            if doi_compose(&d1, d2, r_cap).is_full() {
                return Ok(Some(doi_to_relation(g, &Doi::full())));
            }
        }
    }
    Ok(None)
}

fn border_cells_of(r: &FsppRelation) -> Result<Vec<CellIndex>> {
    let grid = r.to_grid();
    Ok(grid.border_cells(Connectivity::Eight).into_iter().collect())
}

fn relation_fill(r: &FsppRelation) -> BoolGrid {
    r.to_grid().fill()
}

impl FsppRelation {
    /// Cell bits as a boolean cylinder grid (flags are dropped).
    pub fn to_grid(&self) -> BoolGrid {
        let g = self.granularity();
        let mut grid = BoolGrid::new(g.m_orient(), g.n_dist());
        for c in self.cells() {
            grid.set(c, true);
        }
        grid
    }

    pub fn from_grid(g: &Granularity, grid: &BoolGrid) -> Result<Self> {
        let mut r = FsppRelation::empty(g);
        for c in grid.active_cells() {
            r.set_cell(c, true)?;
        }
        Ok(r)
    }
}

/// The two sector columns bordering the backward direction, at all
/// distances. Used for the referent-at-origin flag images and the
/// quasi-partition inversion variant.
fn back_border_relation(g: &Granularity) -> FsppRelation {
    let m = g.m_orient();
    let mut r = FsppRelation::empty(g);
    for d in 0..g.n_dist() {
        r.set_cell(CellIndex::new(d, m / 2 - 1), true).expect("in range");
        r.set_cell(CellIndex::new(d, m / 2), true).expect("in range");
    }
    r
}

fn sc_relation(r: &FsppRelation) -> FsppRelation {
    let g = r.granularity().clone();
    let m = g.m_orient();
    let mut out = FsppRelation::empty(&g);
    for c in r.cells() {
        // Distance is preserved; the orientation fans out because the
        // origin's distance is unknown.
        if c.orient < m / 2 {
            for j in m / 2..=m / 2 + c.orient {
                out.set_cell(CellIndex::new(c.dist, j), true).expect("in range");
            }
        } else {
            for j in c.orient - m / 2..m / 2 {
                out.set_cell(CellIndex::new(c.dist, j), true).expect("in range");
            }
        }
    }
    // flag images under (A,B,C) -> (A,C,B)
    out.set_tri(r.tri());
    out.set_sam(r.sam());
    if r.dou() {
        // origin = relatum becomes referent = origin: behind, any distance
        out.union_with(&back_border_relation(&g)).expect("same granularity");
    }
    out
}

thread_local! {
    static INV_CACHE: RefCell<HashMap<(GranKey, usize), Rc<FsppRelation>>> =
        RefCell::new(HashMap::new());
}

fn inv_image(g: &Granularity, c: CellIndex, r_cap: f64) -> Rc<FsppRelation> {
    let key = (gran_key(g), crate::calculus::bit_index(g, c).expect("valid cell"));
    INV_CACHE.with(|cache| {
        if let Some(hit) = cache.borrow().get(&key) {
            return hit.clone();
        }
        let back = Doi::new(0.0, INF, PI, PI).expect("valid");
        let d2 = cell_to_doi(g, c).expect("valid cell");
        let piece = Rc::new(doi_to_relation(g, &doi_compose(&back, &d2, r_cap)));
        cache.borrow_mut().insert(key, piece.clone());
        piece
    })
}

fn inv_relation(r: &FsppRelation, extent: InvExtent) -> FsppRelation {
    let g = r.granularity().clone();
    let ds = build_distance_system(&g);
    let r_cap = ds.r_cap();
    let mut out = FsppRelation::empty(&g);
    match extent {
        InvExtent::ExactBackDirection => {
            // the origin lies exactly on the back border at unknown distance
            for c in r.cells() {
                out.union_with(&inv_image(&g, c, r_cap)).expect("same granularity");
                if out.is_universal_cells() {
                    break;
                }
            }
        }
        InvExtent::BackBorderSectors => {
            let t = back_border_relation(&g);
            let composed = compose(&t, &strip_flags(r)).expect("same granularity");
            out.union_with(&composed).expect("same granularity");
        }
    }
    // flag images under (A,B,C) -> (B,A,C)
    out.set_dou(r.dou());
    out.set_tri(r.tri());
    if r.sam() {
        // referent = relatum becomes referent = origin: behind, any distance
        out.union_with(&back_border_relation(&g)).expect("same granularity");
    }
    out
}

fn strip_flags(r: &FsppRelation) -> FsppRelation {
    let mut c = r.clone();
    c.set_dou(false);
    c.set_tri(false);
    c.set_sam(false);
    c
}

/// Applies a unary reference-frame transformation.
pub fn unary(op: UnaryOp, r: &FsppRelation) -> FsppRelation {
    unary_with(op, r, InvExtent::default())
}

/// Like [`unary`], with an explicit inversion extent.
pub fn unary_with(op: UnaryOp, r: &FsppRelation, extent: InvExtent) -> FsppRelation {
    match op {
        UnaryOp::Id => r.clone(),
        UnaryOp::Sc => sc_relation(r),
        UnaryOp::Inv => inv_relation(r, extent),
        UnaryOp::Sci => inv_relation(&sc_relation(r), extent),
        UnaryOp::Hm => sc_relation(&inv_relation(r, extent)),
        UnaryOp::Hmi => sc_relation(&inv_relation(&sc_relation(r), extent)),
    }
}

/// Conceptual neighbors of one atomic relation: same ring left/right
/// (wrapping) and same sector one band in/out (clipped).
pub fn neighbors(g: &Granularity, c: CellIndex) -> Result<Vec<CellIndex>> {
    check_cell(g, c)?;
    let m = g.m_orient();
    let mut out = vec![
        CellIndex::new(c.dist, (c.orient + 1) % m),
        CellIndex::new(c.dist, (c.orient + m - 1) % m),
    ];
    if c.dist > 0 {
        out.push(CellIndex::new(c.dist - 1, c.orient));
    }
    if c.dist + 1 < g.n_dist() {
        out.push(CellIndex::new(c.dist + 1, c.orient));
    }
    out.sort();
    Ok(out)
}

/// Expands a relation by the conceptual neighbors of its active cells.
/// Flags are unchanged.
pub fn expand(r: &FsppRelation) -> FsppRelation {
    let g = r.granularity().clone();
    let mut out = r.clone();
    for c in r.cells() {
        for nb in neighbors(&g, c).expect("valid cell") {
            out.set_cell(nb, true).expect("in range");
        }
    }
    out
}

//! Granularity configuration, the polar partition, and classification of
//! concrete point triples into atomic relations.
//!
//! The plane around the relatum is partitioned into `n_dist` concentric
//! distance bands (geometric growth, outermost band unbounded) and
//! `m_orient` orientation sectors of width `2pi/m`. Boundaries are shared
//! between neighboring cells (quasi-partition): a configuration exactly on
//! a boundary classifies into every bordering cell.

use crate::doi::INF;
use crate::error::{FsppError, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Absolute tolerance for boundary detection (meters / radians).
pub const BOUNDARY_TOL: f64 = 1e-9;

/// Polar-partition configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Granularity {
    m_orient: usize,
    n_dist: usize,
    base_length: f64,
    ratio: f64,
}

impl Granularity {
    pub fn new(m_orient: usize, n_dist: usize, base_length: f64, ratio: f64) -> Result<Self> {
        if m_orient < 4 || m_orient % 2 != 0 {
            return Err(FsppError::InvalidGranularity(format!(
                "orientation count must be even and >= 4, got {m_orient}"
            )));
        }
        if n_dist < 2 {
            return Err(FsppError::InvalidGranularity(format!(
                "distance band count must be >= 2, got {n_dist}"
            )));
        }
        if !(base_length > 0.0) {
            return Err(FsppError::InvalidGranularity(format!(
                "base length must be > 0, got {base_length}"
            )));
        }
        if !(ratio > 1.0) {
            return Err(FsppError::InvalidGranularity(format!(
                "growth ratio must be > 1, got {ratio}"
            )));
        }
        Ok(Self {
            m_orient,
            n_dist,
            base_length,
            ratio,
        })
    }

    pub fn m_orient(&self) -> usize {
        self.m_orient
    }

    pub fn n_dist(&self) -> usize {
        self.n_dist
    }

    pub fn base_length(&self) -> f64 {
        self.base_length
    }

    pub fn ratio(&self) -> f64 {
        self.ratio
    }

    pub fn cell_count(&self) -> usize {
        self.m_orient * self.n_dist
    }

    pub fn sector_width(&self) -> f64 {
        2.0 * PI / self.m_orient as f64
    }
}

/// The radial interval table derived from a granularity.
///
/// `delta[i]` is the width of band `i` and `delta_cum[i]` its outer
/// radius; the outermost entries are unbounded. The nominal (finite)
/// values of the last band are kept for reporting.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceSystem {
    delta: Vec<f64>,
    delta_cum: Vec<f64>,
    nominal_delta_last: f64,
    nominal_cum_last: f64,
}

/// Builds the distance system: band widths grow geometrically with
/// `delta_i = L * ratio^(i+1)`, the outermost band is unbounded.
pub fn build_distance_system(g: &Granularity) -> DistanceSystem {
    let n = g.n_dist;
    let mut delta = Vec::with_capacity(n);
    let mut delta_cum = Vec::with_capacity(n);
    let mut cum = 0.0;
    for i in 0..n {
        let width = g.base_length * g.ratio.powi(i as i32 + 1);
        if i + 1 == n {
            delta.push(INF);
            delta_cum.push(INF);
        } else {
            cum += width;
            delta.push(width);
            delta_cum.push(cum);
        }
    }
    let nominal_delta_last = g.base_length * g.ratio.powi(n as i32);
    DistanceSystem {
        delta,
        delta_cum,
        nominal_delta_last,
        nominal_cum_last: cum + nominal_delta_last,
    }
}

impl DistanceSystem {
    pub fn band_count(&self) -> usize {
        self.delta.len()
    }

    pub fn delta(&self, i: usize) -> f64 {
        self.delta[i]
    }

    /// Inner radius of band `i` (0 for the innermost band).
    pub fn inner_radius(&self, i: usize) -> f64 {
        if i == 0 {
            0.0
        } else {
            self.delta_cum[i - 1]
        }
    }

    /// Outer radius of band `i` (unbounded for the outermost band).
    pub fn outer_radius(&self, i: usize) -> f64 {
        self.delta_cum[i]
    }

    /// Largest finite outer radius.
    pub fn max_finite_radius(&self) -> f64 {
        self.delta_cum[self.delta_cum.len() - 2]
    }

    /// Cap used when unbounded radii enter interval arithmetic.
    pub fn r_cap(&self) -> f64 {
        8.0 * self.max_finite_radius()
    }

    /// Nominal width the outermost band would have were it finite.
    pub fn nominal_delta_last(&self) -> f64 {
        self.nominal_delta_last
    }

    /// Nominal outer radius the outermost band would have were it finite.
    pub fn nominal_cum_last(&self) -> f64 {
        self.nominal_cum_last
    }
}

/// One atomic relation: distance band `dist`, orientation sector `orient`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellIndex {
    pub dist: usize,
    pub orient: usize,
}

impl CellIndex {
    pub fn new(dist: usize, orient: usize) -> Self {
        Self { dist, orient }
    }
}

/// The three special base relations of ternary calculi.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpecialRel {
    /// origin = relatum, referent elsewhere
    Dou,
    /// all three points coincide
    Tri,
    /// referent = relatum, origin elsewhere
    Sam,
}

/// A point in the plane (meters).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn distance(&self, other: &Point) -> f64 {
        (other.x - self.x).hypot(other.y - self.y)
    }
}

/// Result of classifying a point triple: either a special relation or a
/// non-empty set of bordering cells (up to 4 at a ring/sector corner).
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub cells: Vec<CellIndex>,
    pub special: Option<SpecialRel>,
}

/// Relative radius |BC| / |AB|. Errors when origin and relatum coincide.
pub fn rel_radius(a: &Point, b: &Point, c: &Point) -> Result<f64> {
    let ab = a.distance(b);
    if ab == 0.0 {
        return Err(FsppError::DegeneratePoints(
            "origin equals relatum".to_string(),
        ));
    }
    Ok(b.distance(c) / ab)
}

/// Angle of BC minus angle of AB, normalized to [0, 2pi).
pub fn rel_angle(a: &Point, b: &Point, c: &Point) -> Result<f64> {
    if a == b {
        return Err(FsppError::DegeneratePoints(
            "origin equals relatum".to_string(),
        ));
    }
    if c == b {
        return Err(FsppError::DegeneratePoints(
            "referent equals relatum".to_string(),
        ));
    }
    let ref_dir = (b.y - a.y).atan2(b.x - a.x);
    let dir = (c.y - b.y).atan2(c.x - b.x);
    Ok((dir - ref_dir).rem_euclid(2.0 * PI))
}

/// Distance bands whose closed bounds contain `dist` (1 or 2 entries).
fn matching_bands(ds: &DistanceSystem, dist: f64) -> Vec<usize> {
    let mut out = Vec::with_capacity(2);
    for i in 0..ds.band_count() {
        let lo = ds.inner_radius(i);
        let hi = ds.outer_radius(i);
        if dist >= lo - BOUNDARY_TOL && dist <= hi + BOUNDARY_TOL {
            out.push(i);
        }
    }
    out
}

/// Orientation sectors whose closed bounds contain `phi` in [0, 2pi),
/// accounting for the 0/2pi wrap (1 or 2 entries).
fn matching_sectors(g: &Granularity, phi: f64) -> Vec<usize> {
    let w = g.sector_width();
    let m = g.m_orient;
    let mut out = Vec::with_capacity(2);
    for j in 0..m {
        let lo = w * j as f64;
        let hi = w * (j + 1) as f64;
        let inside = |p: f64| p >= lo - BOUNDARY_TOL && p <= hi + BOUNDARY_TOL;
        if inside(phi) || inside(phi + 2.0 * PI) || inside(phi - 2.0 * PI) {
            out.push(j);
        }
    }
    out
}

/// Classifies the triple (origin, relatum, referent) into special
/// relations or atomic cells. Total on finite inputs.
pub fn classify(g: &Granularity, a: &Point, b: &Point, c: &Point) -> Classification {
    if a == b {
        let special = if b == c { SpecialRel::Tri } else { SpecialRel::Dou };
        return Classification {
            cells: Vec::new(),
            special: Some(special),
        };
    }
    if c == b {
        return Classification {
            cells: Vec::new(),
            special: Some(SpecialRel::Sam),
        };
    }
    let ds = build_distance_system(g);
    let dist = b.distance(c);
    let phi = rel_angle(a, b, c).expect("non-degenerate by the checks above");
    let mut cells = Vec::with_capacity(4);
    for i in matching_bands(&ds, dist) {
        for &j in &matching_sectors(g, phi) {
            cells.push(CellIndex::new(i, j));
        }
    }
    cells.sort();
    Classification {
        cells,
        special: None,
    }
}

/// Closed acceptance bounds of one cell: (inner radius, outer radius,
/// start angle, end angle). The outermost band has an unbounded outer
/// radius.
pub fn cell_bounds(g: &Granularity, c: CellIndex) -> Result<(f64, f64, f64, f64)> {
    check_cell(g, c)?;
    let ds = build_distance_system(g);
    let w = g.sector_width();
    Ok((
        ds.inner_radius(c.dist),
        ds.outer_radius(c.dist),
        w * c.orient as f64,
        w * (c.orient + 1) as f64,
    ))
}

pub fn check_cell(g: &Granularity, c: CellIndex) -> Result<()> {
    if c.dist >= g.n_dist || c.orient >= g.m_orient {
        return Err(FsppError::IndexOutOfRange {
            dist: c.dist,
            orient: c.orient,
            n_dist: g.n_dist,
            m_orient: g.m_orient,
        });
    }
    Ok(())
}

/// Storage index of a cell: `orient + dist * m_orient`.
pub fn bit_index(g: &Granularity, c: CellIndex) -> Result<usize> {
    check_cell(g, c)?;
    Ok(c.orient + c.dist * g.m_orient)
}

/// Inverse of [`bit_index`].
pub fn cell_from_bit(g: &Granularity, bit: usize) -> Result<CellIndex> {
    if bit >= g.cell_count() {
        return Err(FsppError::IndexOutOfRange {
            dist: bit / g.m_orient,
            orient: bit % g.m_orient,
            n_dist: g.n_dist,
            m_orient: g.m_orient,
        });
    }
    Ok(CellIndex::new(bit / g.m_orient, bit % g.m_orient))
}

/// Deterministic pseudo-random referent from the open interior of a cell,
/// for a given origin/relatum pair.
pub fn sample_configuration(
    g: &Granularity,
    c: CellIndex,
    reference: (&Point, &Point),
    seed: u64,
) -> Result<Point> {
    check_cell(g, c)?;
    let (a, b) = reference;
    if a == b {
        return Err(FsppError::DegeneratePoints(
            "origin equals relatum".to_string(),
        ));
    }
    let ds = build_distance_system(g);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let inner = ds.inner_radius(c.dist);
    let outer = if ds.outer_radius(c.dist).is_finite() {
        ds.outer_radius(c.dist)
    } else {
        inner + ds.nominal_delta_last()
    };
    let margin_r = (outer - inner) * 0.05;
    let r = rng.gen_range(inner + margin_r..outer - margin_r);

    let w = g.sector_width();
    let lo = w * c.orient as f64;
    let margin_a = w * 0.05;
    let phi = rng.gen_range(lo + margin_a..lo + w - margin_a);

    let ref_dir = (b.y - a.y).atan2(b.x - a.x);
    let dir = ref_dir + phi;
    Ok(Point::new(b.x + r * dir.cos(), b.y + r * dir.sin()))
}

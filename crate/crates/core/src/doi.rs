//! Distance/orientation intervals (DOIs) and their composition.
//!
//! A DOI is an annulus sector anchored at a point with a reference
//! direction: all polar vectors `(r, phi)` with `r_min <= r <= r_max` and
//! `phi_min <= phi <= phi_max`. Composition chains two DOIs along a path
//! (the second is expressed relative to the direction of the first) and
//! yields a sound upper bound of the reachable set. The minimum/maximum
//! radius and angle of the result are found by a finite case analysis
//! rather than numeric optimization.
//!
//! Angle conventions: a non-full DOI satisfies `phi_max - phi_min <= pi`
//! with `-2pi <= phi_min <= pi` and `-pi <= phi_max <= pi`; windows that
//! cross the backward direction are stored with `phi_min < -pi`. The
//! special "full" DOI covers every direction with `r_min = 0` and stands
//! for "the goal can be at the reference point".

use crate::error::{FsppError, Result};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::f64::consts::PI;

/// Distinguished unbounded radius.
pub const INF: f64 = f64::INFINITY;

/// Tolerance for boundary comparisons on radii and angles.
const TOL: f64 = 1e-9;

/// A polar vector with `r >= 0` and `phi` normalized to `(-pi, pi]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarVector {
    pub r: f64,
    pub phi: f64,
}

impl PolarVector {
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        if !(r >= 0.0) {
            return Err(FsppError::InvalidInterval(format!(
                "polar vector radius must be >= 0, got {r}"
            )));
        }
        Ok(Self {
            r,
            phi: normalize_signed(phi),
        })
    }

    pub fn from_cartesian(x: f64, y: f64) -> Self {
        let r = x.hypot(y);
        let phi = if r == 0.0 { 0.0 } else { normalize_signed(y.atan2(x)) };
        Self { r, phi }
    }

    pub fn to_cartesian(self) -> (f64, f64) {
        (self.r * self.phi.cos(), self.r * self.phi.sin())
    }

    /// Chains `self` with `next`, where `next` is expressed relative to the
    /// direction of `self`. This is the exact vector form of the path rule
    /// that DOI composition over-approximates.
    pub fn chain(self, next: PolarVector) -> PolarVector {
        let x = self.r * self.phi.cos() + next.r * (self.phi + next.phi).cos();
        let y = self.r * self.phi.sin() + next.r * (self.phi + next.phi).sin();
        PolarVector::from_cartesian(x, y)
    }
}

/// Normalizes an angle into `(-pi, pi]`.
pub fn normalize_signed(phi: f64) -> f64 {
    let mut a = phi.rem_euclid(2.0 * PI);
    if a > PI {
        a -= 2.0 * PI;
    }
    a
}

/// Length of the sum vector `v1 + rot(v2, phi1)` where `v1 = (r1, phi1)`
/// and `v2 = (r2, phi2)` is relative to the direction of `v1`.
pub fn r_sum(r1: f64, r2: f64, phi1: f64, phi2: f64) -> f64 {
    let y = r1 * phi1.sin() + r2 * (phi1 + phi2).sin();
    let x = r1 * phi1.cos() + r2 * (phi1 + phi2).cos();
    x.hypot(y)
}

/// Quadrant-correct direction of the same sum vector, in `(-pi, pi]`.
///
/// Errors when the sum is the zero vector, whose direction is undefined.
pub fn phi_sum(r1: f64, r2: f64, phi1: f64, phi2: f64) -> Result<f64> {
    let y = r1 * phi1.sin() + r2 * (phi1 + phi2).sin();
    let x = r1 * phi1.cos() + r2 * (phi1 + phi2).cos();
    if x.hypot(y) < TOL * (r1 + r2).max(1.0) {
        return Err(FsppError::UndefinedDirection);
    }
    Ok(normalize_signed(y.atan2(x)))
}

/// A distance/orientation interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Doi {
    r_min: f64,
    r_max: f64,
    phi_min: f64,
    phi_max: f64,
    is_full: bool,
}

impl Doi {
    /// Builds a validated non-full DOI.
    pub fn new(r_min: f64, r_max: f64, phi_min: f64, phi_max: f64) -> Result<Self> {
        if !(r_min >= 0.0) || r_min.is_nan() || r_max.is_nan() {
            return Err(FsppError::InvalidInterval(format!(
                "radius bounds must be >= 0, got [{r_min}, {r_max}]"
            )));
        }
        if r_min > r_max {
            return Err(FsppError::InvalidInterval(format!(
                "r_min {r_min} > r_max {r_max}"
            )));
        }
        if phi_min > phi_max {
            return Err(FsppError::InvalidInterval(format!(
                "phi_min {phi_min} > phi_max {phi_max}"
            )));
        }
        if phi_max - phi_min > PI + TOL {
            return Err(FsppError::InvalidInterval(format!(
                "angle span {} exceeds pi",
                phi_max - phi_min
            )));
        }
        if phi_min < -2.0 * PI - TOL || phi_min > PI + TOL || phi_max < -PI - TOL || phi_max > PI + TOL
        {
            return Err(FsppError::InvalidInterval(format!(
                "angle bounds [{phi_min}, {phi_max}] out of convention"
            )));
        }
        Ok(Self {
            r_min,
            r_max,
            phi_min,
            phi_max,
            is_full: false,
        })
    }

    /// The special DOI covering every direction with `r_min = 0`.
    pub fn full() -> Self {
        Self {
            r_min: 0.0,
            r_max: INF,
            phi_min: -PI,
            phi_max: PI,
            is_full: true,
        }
    }

    pub fn r_min(&self) -> f64 {
        self.r_min
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn phi_min(&self) -> f64 {
        self.phi_min
    }

    pub fn phi_max(&self) -> f64 {
        self.phi_max
    }

    pub fn is_full(&self) -> bool {
        self.is_full
    }

    /// Returns a copy with an unbounded `r_max` replaced by `cap`.
    pub fn capped(&self, cap: f64) -> Self {
        let mut d = *self;
        if d.r_max.is_infinite() {
            d.r_max = cap;
            d.r_min = d.r_min.min(cap);
        }
        d
    }

    /// True when the angle window reaches the backward direction (+-pi).
    fn covers_back(&self) -> bool {
        self.is_full || self.phi_min <= -PI + TOL || self.phi_max >= PI - TOL
    }

    /// Membership test. The probe angle is lifted into the window to
    /// account for windows stored with `phi_min < -pi`.
    pub fn contains(&self, v: PolarVector) -> bool {
        if self.is_full {
            return v.r >= 0.0;
        }
        let scale = self.r_max.max(1.0);
        let rtol = if scale.is_finite() { TOL * scale } else { TOL };
        if v.r < self.r_min - rtol || v.r > self.r_max + rtol {
            return false;
        }
        let in_window = |phi: f64| phi >= self.phi_min - TOL && phi <= self.phi_max + TOL;
        in_window(v.phi) || in_window(v.phi - 2.0 * PI) || in_window(v.phi + 2.0 * PI)
    }

    /// Deterministic pseudo-random member, uniform in `(r, phi)` space.
    pub fn sample(&self, seed: u64) -> PolarVector {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let upper = if self.r_max.is_finite() {
            self.r_max
        } else {
            self.r_min + 1000.0
        };
        let r = if upper > self.r_min {
            rng.gen_range(self.r_min..=upper)
        } else {
            self.r_min
        };
        let phi = if self.phi_max > self.phi_min {
            rng.gen_range(self.phi_min..=self.phi_max)
        } else {
            self.phi_min
        };
        PolarVector {
            r,
            phi: normalize_signed(phi),
        }
    }
}

/// Minimum radius of the composition, as the minimum over the applicable
/// geometric cases. Candidates whose side conditions fail are skipped.
/// Inputs must have finite radii (cap unbounded DOIs first).
pub fn compose_min_r(d1: &Doi, d2: &Doi) -> f64 {
    let (r1min, r1max) = (d1.r_min, d1.r_max);
    let (r2min, r2max) = (d2.r_min, d2.r_max);
    let (p2min, p2max) = (d2.phi_min, d2.phi_max);

    let mut cands = vec![
        r_sum(r1min, r2min, 0.0, p2min),
        r_sum(r1min, r2min, 0.0, p2max),
        r_sum(r1min, r2max, 0.0, p2min),
        r_sum(r1min, r2max, 0.0, p2max),
        r_sum(r1max, r2min, 0.0, p2min),
        r_sum(r1max, r2min, 0.0, p2max),
    ];

    // Opposing-direction gap cases: applicable only when the second
    // angle window reaches the backward direction.
    if d2.covers_back() {
        if r1min > r2max {
            cands.push(r1min - r2max);
        }
        if r2min > r1max {
            cands.push(r2min - r1max);
        }
    }

    // Perpendicular-foot cases on either radius endpoint.
    if p2max > PI / 2.0 {
        let foot = r1min * (PI - p2max).cos();
        if r2min < foot && foot < r2max {
            cands.push(r_sum(r1min, foot, 0.0, p2max));
        }
    }
    if p2min < -PI / 2.0 {
        let foot = r1min * (PI + p2min).cos();
        if r2min < foot && foot < r2max {
            cands.push(r_sum(r1min, foot, 0.0, p2min));
        }
    }
    {
        let proj = p2max.cos() * r2min;
        if proj + r1min < 0.0 && 0.0 < proj + r1max {
            cands.push(r_sum(-proj, r2min, 0.0, p2max));
        }
        let proj = p2min.cos() * r2min;
        if proj + r1min < 0.0 && 0.0 < proj + r1max {
            cands.push(r_sum(-proj, r2min, 0.0, p2min));
        }
    }

    cands.into_iter().fold(INF, f64::min).max(0.0)
}

/// Maximum radius of the composition. The straight-ahead case applies
/// only when the second angle window contains zero.
pub fn compose_max_r(d1: &Doi, d2: &Doi) -> f64 {
    let (r1min, r1max) = (d1.r_min, d1.r_max);
    let (r2min, r2max) = (d2.r_min, d2.r_max);
    let (p2min, p2max) = (d2.phi_min, d2.phi_max);

    let mut cands = vec![
        r_sum(r1max, r2min, 0.0, p2min),
        r_sum(r1max, r2min, 0.0, p2max),
        r_sum(r1max, r2max, 0.0, p2min),
        r_sum(r1max, r2max, 0.0, p2max),
        r_sum(r1min, r2max, 0.0, p2min),
        r_sum(r1min, r2max, 0.0, p2max),
    ];
    if p2min < 0.0 && 0.0 < p2max {
        cands.push(r_sum(r1max, r2max, 0.0, 0.0));
    }
    cands.into_iter().fold(0.0, f64::max)
}

/// Largest tangency parameter `u = r2/r1 <= 1` whose tangent direction
/// `sign * arccos(-u)` lies inside the second angle window (taken modulo
/// 2pi, since windows crossing the backward direction are stored with
/// `phi_min < -pi`). The arcsine deflection grows with `u`, so the
/// maximum admissible `u` gives the extreme.
fn tangent_u(u_lo: f64, u_hi: f64, p2min: f64, p2max: f64, positive: bool) -> Option<f64> {
    let (a_lo, a_hi) = ((-u_lo).acos(), (-u_hi).acos()); // in [pi/2, pi], increasing in u
    let seg = if positive { (a_lo, a_hi) } else { (-a_hi, -a_lo) };
    let mut best: Option<f64> = None;
    for shift in [-2.0 * PI, 0.0, 2.0 * PI] {
        let ilo = (seg.0 + shift).max(p2min);
        let ihi = (seg.1 + shift).min(p2max);
        if ilo <= ihi + TOL {
            let u1 = -(ilo - shift).cos();
            let u2 = -(ihi - shift).cos();
            let u = u1.max(u2).min(u_hi).max(u_lo);
            best = Some(best.map_or(u, |b: f64| b.max(u)));
        }
    }
    best
}

/// Angle bounds of the composition.
///
/// With the first vector rotated to angle zero, the sum direction is
/// `theta1 + F` where `F = arg(r1 + r2 e^(i phi2))`; the two parts range
/// independently, so the window is `[phi1_min + F_min, phi1_max + F_max]`.
/// `F` is monotone in `r2/r1` for fixed `phi2` and has interior extrema in
/// `phi2` only at tangency configurations (`cos phi2 = -r2/r1`, which
/// requires `r2 <= r1`), so its extremes are found at the box corners plus
/// the admissible tangency points. Corner values are unwrapped: when the
/// second vector dominates, the direction stays within `asin(r1/r2)` of
/// `phi2`, fixing the representative uniquely. Returns `None` when a
/// corner sum degenerates to the zero vector (direction unconstrained;
/// callers promote to full). The returned window may span more than pi,
/// which callers also promote to full.
pub fn compose_phi_bounds(d1: &Doi, d2: &Doi) -> Option<(f64, f64)> {
    let (r1min, r1max) = (d1.r_min, d1.r_max);
    let (r2min, r2max) = (d2.r_min, d2.r_max);
    let (p2min, p2max) = (d2.phi_min, d2.phi_max);

    let rel = |p2: f64, r1: f64, r2: f64| -> Option<f64> {
        let y = r2 * p2.sin();
        let x = r1 + r2 * p2.cos();
        if x.hypot(y) < TOL * (r1 + r2).max(1.0) {
            return None;
        }
        let mut f = y.atan2(x);
        if r2 > r1 {
            while f < p2 - PI {
                f += 2.0 * PI;
            }
            while f > p2 + PI {
                f -= 2.0 * PI;
            }
        }
        Some(f)
    };

    let mut lo = INF;
    let mut hi = -INF;
    for p2 in [p2min, p2max] {
        for (r1, r2) in [(r1min, r2min), (r1min, r2max), (r1max, r2min), (r1max, r2max)] {
            let f = rel(p2, r1, r2)?;
            lo = lo.min(f);
            hi = hi.max(f);
        }
    }
    // Tangency: `F = +-asin(u)` at `phi2 = +-arccos(-u)`, reachable only
    // when the second vector can be the shorter one.
    let u_lo = if r1max > 0.0 { (r2min / r1max).min(1.0) } else { INF };
    if u_lo <= 1.0 {
        let u_hi = if r1min > 0.0 { (r2max / r1min).min(1.0) } else { 1.0 };
        if let Some(u) = tangent_u(u_lo, u_hi, p2min, p2max, true) {
            hi = hi.max(u.asin());
        }
        if let Some(u) = tangent_u(u_lo, u_hi, p2min, p2max, false) {
            lo = lo.min(-u.asin());
        }
    }

    let mut out_lo = d1.phi_min + lo;
    let mut out_hi = d1.phi_max + hi;
    // Shift into the DOI convention: phi_max in (-pi, pi].
    while out_hi > PI + TOL {
        out_lo -= 2.0 * PI;
        out_hi -= 2.0 * PI;
    }
    while out_hi <= -PI {
        out_lo += 2.0 * PI;
        out_hi += 2.0 * PI;
    }
    Some((out_lo, out_hi))
}

/// Composes two DOIs along a path, yielding a sound upper bound of all
/// chained sum vectors. `r_cap` substitutes unbounded radii before the
/// case formulas are evaluated; composed maxima at or beyond the cap are
/// restored to unbounded.
pub fn compose(d1: &Doi, d2: &Doi, r_cap: f64) -> Doi {
    if d1.is_full || d2.is_full {
        return Doi::full();
    }
    let a = d1.capped(r_cap);
    let b = d2.capped(r_cap);

    // The goal can coincide with the reference point exactly when the
    // second vector may oppose the first and the radii overlap.
    let radial_overlap = a.r_min <= b.r_max + TOL && b.r_min <= a.r_max + TOL;
    if b.covers_back() && radial_overlap {
        return Doi::full();
    }

    let r_min = compose_min_r(&a, &b);
    let mut r_max = compose_max_r(&a, &b);
    // An unbounded operand makes the sum unbounded; near-opposing angles
    // would otherwise leave a finite difference bound after capping.
    if r_max >= r_cap || d1.r_max.is_infinite() || d2.r_max.is_infinite() {
        r_max = INF;
    }

    // The extremal sum angles approach phi1 + phi2 as an unbounded radius
    // grows, which a working cap misses by up to r_finite/r_cap radians.
    // Evaluate the angle candidates near the asymptote instead.
    const PHI_EVAL_CAP: f64 = 1e12;
    let ap = d1.capped(PHI_EVAL_CAP);
    let bp = d2.capped(PHI_EVAL_CAP);
    let (phi_min, phi_max) = match compose_phi_bounds(&ap, &bp) {
        Some(bounds) => bounds,
        None => return Doi::full(),
    };
    if phi_max - phi_min > PI + TOL {
        return Doi::full();
    }

    Doi {
        r_min: r_min.min(r_max),
        r_max,
        phi_min: phi_min.max(-2.0 * PI),
        phi_max: phi_max.min(PI),
        is_full: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn r_sum_basics() {
        assert_abs_diff_eq!(r_sum(1.0, 2.0, 0.0, 0.0), 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r_sum(1.0, 1.0, 0.0, PI), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(r_sum(3.0, 4.0, 0.0, PI / 2.0), 5.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_sum_is_quadrant_aware() {
        assert_abs_diff_eq!(phi_sum(1.0, 2.0, 0.0, 0.0).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            phi_sum(1.0, 1.0, 0.0, PI / 2.0).unwrap(),
            PI / 4.0,
            epsilon = 1e-12
        );
        // Sum vector (-1, 0) must come out at pi, not 0.
        assert_abs_diff_eq!(phi_sum(1.0, 2.0, 0.0, PI).unwrap(), PI, epsilon = 1e-12);
    }

    #[test]
    fn phi_sum_zero_vector_errors() {
        assert_eq!(
            phi_sum(1.0, 1.0, 0.0, PI),
            Err(FsppError::UndefinedDirection)
        );
    }

    fn point_doi(r: f64, phi: f64) -> Doi {
        Doi::new(r, r, phi, phi).unwrap()
    }

    #[test]
    fn min_r_collinear() {
        let d1 = point_doi(1.0, 0.0);
        let d2 = point_doi(2.0, 0.0);
        assert_abs_diff_eq!(compose_min_r(&d1, &d2), 3.0, epsilon = 1e-12);
    }

    #[test]
    fn min_r_opposing_gap() {
        let d1 = point_doi(2.0, 0.0);
        let d2 = point_doi(1.0, -PI);
        assert_abs_diff_eq!(compose_min_r(&d1, &d2), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn min_r_opposing_overlap_reaches_zero() {
        let d1 = Doi::new(1.0, 2.0, 0.0, 0.0).unwrap();
        let d2 = Doi::new(1.0, 2.0, -PI, -PI).unwrap();
        assert_abs_diff_eq!(compose_min_r(&d1, &d2), 0.0, epsilon = 1e-12);
    }

    #[test]
    fn max_r_cases() {
        let d1 = point_doi(1.0, 0.0);
        let d2 = point_doi(2.0, 0.0);
        assert_abs_diff_eq!(compose_max_r(&d1, &d2), 3.0, epsilon = 1e-12);

        let d1 = Doi::new(1.0, 2.0, 0.0, 0.0).unwrap();
        let d2 = Doi::new(1.0, 3.0, -PI / 4.0, PI / 4.0).unwrap();
        assert_abs_diff_eq!(compose_max_r(&d1, &d2), 5.0, epsilon = 1e-12);

        let d1 = point_doi(2.0, 0.0);
        let d2 = point_doi(1.0, PI / 2.0);
        assert_abs_diff_eq!(compose_max_r(&d1, &d2), 5f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn phi_bounds_degenerate() {
        let d1 = point_doi(1.0, 0.0);
        let d2 = point_doi(1.0, 0.0);
        let (lo, hi) = compose_phi_bounds(&d1, &d2).unwrap();
        assert_abs_diff_eq!(lo, 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(hi, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn phi_bounds_rotated_spread() {
        let d1 = Doi::new(1.0, 1.0, -PI / 8.0, PI / 8.0).unwrap();
        let d2 = point_doi(1.0, 0.0);
        let (lo, hi) = compose_phi_bounds(&d1, &d2).unwrap();
        assert_abs_diff_eq!(lo, -PI / 8.0, epsilon = 1e-9);
        assert_abs_diff_eq!(hi, PI / 8.0, epsilon = 1e-9);
    }

    #[test]
    fn phi_bounds_max_deflection() {
        let d1 = point_doi(2.0, 0.0);
        let d2 = Doi::new(1.0, 1.0, -PI / 2.0, PI / 2.0).unwrap();
        let (lo, hi) = compose_phi_bounds(&d1, &d2).unwrap();
        // Brute-force the true deflection over phi2 and check the bounds
        // enclose it tightly.
        let mut worst: f64 = 0.0;
        for k in 0..=2000 {
            let p2 = -PI / 2.0 + PI * k as f64 / 2000.0;
            let phi = phi_sum(2.0, 1.0, 0.0, p2).unwrap();
            worst = worst.max(phi.abs());
        }
        assert!(hi >= worst - 1e-9, "hi {hi} < worst {worst}");
        assert!(lo <= -worst + 1e-9, "lo {lo} > -worst {worst}");
        assert!(hi <= worst + 1e-6);
    }

    #[test]
    fn compose_exact_on_points() {
        let d1 = point_doi(1.0, 0.0);
        let d2 = point_doi(2.0, 0.0);
        let d3 = compose(&d1, &d2, 1e6);
        assert!(!d3.is_full());
        assert_abs_diff_eq!(d3.r_min(), 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d3.r_max(), 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d3.phi_min(), 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(d3.phi_max(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn compose_opposing_overlap_promotes_full() {
        let d1 = Doi::new(1.0, 2.0, 0.0, 0.0).unwrap();
        let d2 = Doi::new(1.0, 2.0, -PI, -PI).unwrap();
        assert!(compose(&d1, &d2, 1e6).is_full());
    }

    #[test]
    fn compose_full_absorbs() {
        let d1 = Doi::new(1.0, 2.0, 0.0, 0.5).unwrap();
        assert!(compose(&d1, &Doi::full(), 1e6).is_full());
        assert!(compose(&Doi::full(), &d1, 1e6).is_full());
    }

    #[test]
    fn contains_window_wrap() {
        let d = Doi::new(1.0, 2.0, -3.0 * PI / 2.0, -PI).unwrap();
        assert!(d.contains(PolarVector::new(1.5, PI / 2.0).unwrap()));
        assert!(d.contains(PolarVector::new(1.5, PI).unwrap()));
        assert!(!d.contains(PolarVector::new(1.5, 0.0).unwrap()));
    }

    #[test]
    fn contains_interior_and_full() {
        let d = Doi::new(1.0, 2.0, 0.0, PI / 2.0).unwrap();
        assert!(d.contains(PolarVector::new(1.5, PI / 4.0).unwrap()));
        assert!(Doi::full().contains(PolarVector::new(123.0, -2.0).unwrap()));
    }

    #[test]
    fn sample_is_contained() {
        let d = Doi::new(1.0, 2.0, 0.0, PI / 2.0).unwrap();
        for seed in 0..50 {
            assert!(d.contains(d.sample(seed)));
        }
        let degenerate = point_doi(1.0, 0.0);
        let v = degenerate.sample(3);
        assert_abs_diff_eq!(v.r, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v.phi, 0.0, epsilon = 1e-12);
        assert!(Doi::full().sample(7).r >= 0.0);
    }

    #[test]
    fn min_never_exceeds_max() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let d1 = random_doi(&mut rng);
            let d2 = random_doi(&mut rng);
            assert!(compose_min_r(&d1, &d2) <= compose_max_r(&d1, &d2) + 1e-9);
        }
    }

    pub(crate) fn random_doi(rng: &mut ChaCha8Rng) -> Doi {
        let r_min = rng.gen_range(0.0..5.0);
        let r_max = r_min + rng.gen_range(0.0..5.0);
        let span = rng.gen_range(0.0..PI);
        let hi = rng.gen_range(-PI..PI);
        Doi::new(r_min, r_max, hi - span, hi).unwrap()
    }
}

//! Seeded sampling suites that check the calculus against brute-force
//! geometry: composition and unary soundness over random point
//! configurations, DOI upper bounds, contour and fill oracles, the
//! bordered-composition equivalence and constraint-network soundness.
//!
//! Every suite is deterministic in its seed and reports a violation count
//! instead of panicking, so the CLI can turn results into exit codes and
//! tests can assert on them.

use fspp::calculus::{classify, CellIndex, Granularity, Point};
use fspp::doi::{self, Doi, PolarVector, INF};
use fspp::grid::{BoolGrid, Connectivity};
use fspp::reasoning::{compose, compose_bordered, doi_to_relation, unary, UnaryOp};
use fspp::relation::FsppRelation;
use fspp::{Network, Triple};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::fmt::Write as _;

/// Outcome of one suite: sample count, violations, and a few archived
/// counterexample descriptions.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub name: String,
    pub samples: usize,
    pub violations: usize,
    pub examples: Vec<String>,
}

impl SuiteReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            samples: 0,
            violations: 0,
            examples: Vec::new(),
        }
    }

    pub fn ok(&self) -> bool {
        self.violations == 0
    }

    fn record(&mut self, violated: bool, describe: impl FnOnce() -> String) {
        self.samples += 1;
        if violated {
            self.violations += 1;
            if self.examples.len() < 5 {
                self.examples.push(describe());
            }
        }
    }

    pub fn summary(&self) -> String {
        let mut s = format!(
            "{}: {} samples, {} violations -> {}",
            self.name,
            self.samples,
            self.violations,
            if self.ok() { "ok" } else { "FAIL" }
        );
        for e in &self.examples {
            let _ = write!(s, "\n  counterexample: {e}");
        }
        s
    }
}

const BOX_HALF: f64 = 10.0; // 20 m sampling box
const MARGIN: f64 = 1e-6;

fn sample_distinct_points(rng: &mut ChaCha8Rng, k: usize) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(k);
    while pts.len() < k {
        let p = Point::new(
            rng.gen_range(-BOX_HALF..BOX_HALF),
            rng.gen_range(-BOX_HALF..BOX_HALF),
        );
        if pts.iter().all(|q| q.distance(&p) > MARGIN) {
            pts.push(p);
        }
    }
    pts
}

fn classify_rel(g: &Granularity, a: &Point, b: &Point, c: &Point) -> FsppRelation {
    FsppRelation::from_classification(g, &classify(g, a, b, c)).expect("valid classification")
}

/// classify(A,B,D) must be contained in
/// compose(classify(A,B,C), classify(B,C,D)).
pub fn composition_soundness(g: &Granularity, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("composition-soundness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = sample_distinct_points(&mut rng, 4);
        let (a, b, c, d) = (&p[0], &p[1], &p[2], &p[3]);
        let composed = compose(&classify_rel(g, a, b, c), &classify_rel(g, b, c, d))
            .expect("same granularity");
        let truth = classify_rel(g, a, b, d);
        let sound = truth.is_subset(&composed).expect("same granularity");
        report.record(!sound, || format!("points {p:?}"));
    }
    report
}

fn permute(op: UnaryOp, p: &[Point]) -> (Point, Point, Point) {
    let (a, b, c) = (p[0], p[1], p[2]);
    match op {
        UnaryOp::Id => (a, b, c),
        UnaryOp::Inv => (b, a, c),
        UnaryOp::Sc => (a, c, b),
        UnaryOp::Sci => (c, a, b),
        UnaryOp::Hm => (b, c, a),
        UnaryOp::Hmi => (c, b, a),
    }
}

/// The classification of the permuted triple must be contained in the
/// unary image of the classification.
pub fn unary_soundness(g: &Granularity, op: UnaryOp, samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new(&format!("unary-soundness-{op:?}").to_lowercase());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let p = sample_distinct_points(&mut rng, 3);
        let image = unary(op, &classify_rel(g, &p[0], &p[1], &p[2]));
        let (x, y, z) = permute(op, &p);
        let truth = classify_rel(g, &x, &y, &z);
        let sound = truth.is_subset(&image).expect("same granularity");
        report.record(!sound, || format!("op {op:?}, points {p:?}"));
    }
    report
}

fn random_doi(rng: &mut ChaCha8Rng) -> Doi {
    let r1 = rng.gen_range(0.0..50.0);
    let r2 = rng.gen_range(0.0..50.0);
    let (r_min, r_max) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
    let r_max = if rng.gen_bool(0.1) { INF } else { r_max };
    let span = rng.gen_range(0.0..=std::f64::consts::PI);
    let phi_max = rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI);
    let phi_min = phi_max - span;
    Doi::new(r_min, r_max, phi_min, phi_max).expect("generated within invariants")
}

const DOI_R_CAP: f64 = 400.0; // 8x the largest finite generator radius

/// Every chained sample of a DOI pair lies inside the composed DOI, and
/// degenerate (point) DOIs compose to the exact vector sum.
pub fn doi_upper_bound(
    pairs: usize,
    samples_per_pair: usize,
    seed: u64,
) -> SuiteReport {
    let mut report = SuiteReport::new("doi-upper-bound");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for pair in 0..pairs {
        let d1 = random_doi(&mut rng);
        let d2 = random_doi(&mut rng);
        let composed = doi::compose(&d1, &d2, DOI_R_CAP);
        let mut bad: Option<PolarVector> = None;
        for s in 0..samples_per_pair {
            let v1 = d1.sample(seed ^ (pair as u64) << 20 ^ (s as u64) << 1);
            let v2 = d2.sample(seed ^ (pair as u64) << 20 ^ (s as u64) << 1 ^ 1);
            let chained = v1.chain(v2);
            if !composed.contains(chained) {
                bad = Some(chained);
                break;
            }
        }
        report.record(bad.is_some(), || {
            format!("d1 {d1:?}, d2 {d2:?}, escaped vector {bad:?}")
        });
    }
    // degenerate DOIs: the composition is the exact chained vector
    for i in 0..pairs.min(200) {
        let v1 = PolarVector::new(
            rng.gen_range(0.0..50.0),
            rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI),
        )
        .expect("valid");
        let v2 = PolarVector::new(
            rng.gen_range(0.0..50.0),
            rng.gen_range(-std::f64::consts::PI..=std::f64::consts::PI),
        )
        .expect("valid");
        let d1 = Doi::new(v1.r, v1.r, v1.phi, v1.phi).expect("point doi");
        let d2 = Doi::new(v2.r, v2.r, v2.phi, v2.phi).expect("point doi");
        let composed = doi::compose(&d1, &d2, DOI_R_CAP);
        let chained = v1.chain(v2);
        let exact = (composed.r_min() - chained.r).abs() < 1e-9
            && (composed.r_max() - chained.r).abs() < 1e-9
            && angle_close(composed.phi_min(), chained.phi)
            && angle_close(composed.phi_max(), chained.phi);
        report.record(!exact, || {
            format!("degenerate pair {i}: v1 {v1:?}, v2 {v2:?}, composed {composed:?}")
        });
    }
    report
}

fn angle_close(a: f64, b: f64) -> bool {
    let d = (a - b).rem_euclid(2.0 * std::f64::consts::PI);
    d < 1e-9 || d > 2.0 * std::f64::consts::PI - 1e-9
}

fn random_grid(rng: &mut ChaCha8Rng, m: usize, n: usize, density: f64) -> BoolGrid {
    let mut g = BoolGrid::new(m, n);
    for d in 0..n {
        for o in 0..m {
            if rng.gen_bool(density) {
                g.set(CellIndex::new(d, o), true);
            }
        }
    }
    g
}

fn structured_grids(m: usize, n: usize) -> Vec<BoolGrid> {
    let mut grids = Vec::new();
    let rect = |d0: usize, d1: usize, o0: usize, o1: usize| {
        let mut g = BoolGrid::new(m, n);
        for d in d0..=d1 {
            for o in o0..=o1 {
                g.set(CellIndex::new(d, o % m), true);
            }
        }
        g
    };
    grids.push(rect(14, 17, 8, 11)); // reference block
    grids.push(rect(0, 0, 0, 0)); // single cell on the rim
    grids.push(rect(0, n - 1, 3, 5)); // full-height slab
    grids.push(rect(2, 5, m - 2, m + 2)); // seam-crossing block
    // annulus: a ring sector with a hole
    let mut annulus = rect(3, 9, 2, 9);
    for d in 5..=7 {
        for o in 4..=7 {
            annulus.set(CellIndex::new(d, o), false);
        }
    }
    grids.push(annulus);
    // full orientation ring (no canonical start exists)
    let mut ring = BoolGrid::new(m, n);
    for o in 0..m {
        ring.set(CellIndex::new(4, o), true);
    }
    grids.push(ring);
    // plus shape: the center only borders white diagonally
    let mut plus = BoolGrid::new(m, n);
    for (d, o) in [(5, 5), (4, 5), (6, 5), (5, 4), (5, 6)] {
        plus.set(CellIndex::new(d, o), true);
    }
    grids.push(plus);
    grids
}

fn check_grid_contours(g: &BoolGrid, report: &mut SuiteReport) {
    for conn in [Connectivity::Eight, Connectivity::Four] {
        for comp in g.connected_components(conn) {
            let mut only = BoolGrid::new(g.m_orient(), g.n_dist());
            for &c in &comp {
                only.set(c, true);
            }
            let seed = *comp.iter().next().expect("nonempty component");
            let traced: BTreeSet<CellIndex> = only
                .trace_pavlidis(seed, conn)
                .expect("active start")
                .into_iter()
                .collect();
            let expected = only.border_cells(conn);
            report.record(traced != expected, || {
                format!(
                    "{conn:?} component at {seed:?}: traced {traced:?} vs border {expected:?}"
                )
            });
        }
    }
}

/// Pavlidis trace sets equal the brute-force border per component, for
/// both connectivities, on random and structured cylinder grids.
pub fn contour_oracle(grids: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("contour-oracle");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for g in structured_grids(18, 20) {
        check_grid_contours(&g, &mut report);
    }
    for _ in 0..grids {
        let g = random_grid(&mut rng, 18, 20, 0.3);
        check_grid_contours(&g, &mut report);
    }
    report
}

/// Filling the perimeter trace of a rasterized-DOI region reproduces the
/// region; fill is idempotent on random grids.
pub fn fill_reconstruction(samples: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("fill-reconstruction");
    let g18 = Granularity::new(18, 20, 0.10, 1.25).expect("valid");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut done = 0;
    while done < samples {
        let d = random_doi(&mut rng);
        let region = doi_to_relation(&g18, &d).to_grid();
        if region.count() == 0 {
            continue;
        }
        done += 1;
        for comp in region.connected_components(Connectivity::Eight) {
            let mut only = BoolGrid::new(region.m_orient(), region.n_dist());
            for &c in &comp {
                only.set(c, true);
            }
            let seed_cell = *comp.iter().next().expect("nonempty");
            let perimeter = only
                .trace_pavlidis(seed_cell, Connectivity::Eight)
                .expect("active start");
            let mut outline = BoolGrid::new(region.m_orient(), region.n_dist());
            for c in perimeter {
                outline.set(c, true);
            }
            let filled = outline.fill();
            report.record(filled != only, || format!("doi {d:?}, component {seed_cell:?}"));
            report.record(filled.fill() != filled, || {
                format!("fill not idempotent for doi {d:?}")
            });
        }
    }
    // idempotence on unconstrained random grids too
    for _ in 0..samples.min(100) {
        let g = random_grid(&mut rng, 18, 20, 0.3);
        let filled = g.fill();
        report.record(filled.fill() != filled, || "fill not idempotent".to_string());
    }
    report
}

fn random_connected_relation(rng: &mut ChaCha8Rng, g: &Granularity) -> FsppRelation {
    loop {
        let d = random_doi(rng);
        let r = doi_to_relation(g, &d);
        if r.cell_count() > 0 {
            return r;
        }
    }
}

/// compose_bordered agrees with compose on the reference demo inputs and
/// on random connected relation pairs.
pub fn bordered_equality(g: &Granularity, pairs: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("bordered-equality");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // the demo inputs: a (three cells) composed with the result of a o b
    if g.m_orient() == 18 && g.n_dist() == 20 {
        let a = FsppRelation::from_cells(
            g,
            &[CellIndex::new(3, 5), CellIndex::new(3, 6), CellIndex::new(4, 6)],
        )
        .expect("valid");
        let b = FsppRelation::from_cells(g, &[CellIndex::new(15, 4)]).expect("valid");
        let d = compose(&a, &b).expect("same granularity");
        let full = compose(&a, &d).expect("same granularity");
        let fast = compose_bordered(&a, &d).expect("same granularity");
        report.record(full != fast, || "demo inputs differ".to_string());
    }
    for i in 0..pairs {
        let r1 = random_connected_relation(&mut rng, g);
        let r2 = random_connected_relation(&mut rng, g);
        let full = compose(&r1, &r2).expect("same granularity");
        let fast = compose_bordered(&r1, &r2).expect("same granularity");
        report.record(full != fast, || {
            format!(
                "pair {i}: r1 cells {:?}, r2 cells {:?}",
                r1.cells().collect::<Vec<_>>(),
                r2.cells().collect::<Vec<_>>()
            )
        });
    }
    report
}

/// Ground-truth constraint networks stay consistent and retain the true
/// classification through unary closure and refinement.
pub fn csp_soundness(g: &Granularity, scenarios: usize, seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("csp-soundness");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let names = ["P0", "P1", "P2", "P3", "P4", "P5"];
    for i in 0..scenarios {
        let pts = sample_distinct_points(&mut rng, names.len());
        let mut net = Network::new(g);
        for w in 0..names.len() - 2 {
            let r = classify_rel(g, &pts[w], &pts[w + 1], &pts[w + 2]);
            net.add_constraint(Triple::new(names[w], names[w + 1], names[w + 2]), &r)
                .expect("same granularity");
        }
        net.unary_closure();
        net.refine();
        let mut bad = net.consistent() == false;
        let mut detail = String::new();
        if !bad {
            let idx = |n: &str| names.iter().position(|&x| x == n).expect("known name");
            for (t, r) in net.constraints() {
                let truth = classify_rel(
                    g,
                    &pts[idx(&t.origin)],
                    &pts[idx(&t.relatum)],
                    &pts[idx(&t.referent)],
                );
                if !truth.is_subset(r).expect("same granularity") {
                    bad = true;
                    detail = format!("truth lost for {t:?}");
                    break;
                }
            }
        } else {
            detail = "network inconsistent".to_string();
        }
        report.record(bad, || format!("scenario {i}: {detail}, points {pts:?}"));
    }
    report
}

/// The full oracle battery at CLI scale. `samples` scales the per-suite
/// counts; the acceptance criteria use their own fixed counts.
pub fn run_all(g: &Granularity, samples: usize, seed: u64) -> Vec<SuiteReport> {
    let mut reports = Vec::new();
    reports.push(composition_soundness(g, samples, seed));
    for op in [UnaryOp::Inv, UnaryOp::Sc, UnaryOp::Sci, UnaryOp::Hm, UnaryOp::Hmi] {
        reports.push(unary_soundness(g, op, samples, seed.wrapping_add(op as u64 + 1)));
    }
    reports.push(doi_upper_bound(samples.min(1000), 200, seed.wrapping_add(11)));
    reports.push(contour_oracle(samples.min(500), seed.wrapping_add(12)));
    reports.push(fill_reconstruction(samples.min(200), seed.wrapping_add(13)));
    reports.push(bordered_equality(g, samples.min(100), seed.wrapping_add(14)));
    reports.push(csp_soundness(g, samples.min(100), seed.wrapping_add(15)));
    reports
}

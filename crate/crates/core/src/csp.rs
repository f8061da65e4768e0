//! Ternary constraint networks over named points: relation storage with
//! implicit universal constraints, unary closure, composition-based
//! refinement and path propagation.
//!
//! The propagator is deliberately incomplete: path-style propagation does
//! not achieve full path consistency for calculi of this kind, and no
//! backtracking search is attempted. Empty relations signal
//! inconsistency; they are stored, not raised as errors.

use crate::error::{FsppError, Result};
use crate::calculus::Granularity;
use crate::reasoning::{compose, unary, UnaryOp};
use crate::relation::FsppRelation;
use std::collections::{BTreeMap, BTreeSet};

/// Ordered point triple (origin, relatum, referent).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub origin: String,
    pub relatum: String,
    pub referent: String,
}

impl Triple {
    pub fn new(
        origin: impl Into<String>,
        relatum: impl Into<String>,
        referent: impl Into<String>,
    ) -> Self {
        Self {
            origin: origin.into(),
            relatum: relatum.into(),
            referent: referent.into(),
        }
    }

    /// The triple whose relation is the image of this triple's relation
    /// under `op`.
    fn permuted(&self, op: UnaryOp) -> Triple {
        let (a, b, c) = (&self.origin, &self.relatum, &self.referent);
        let (x, y, z) = match op {
            UnaryOp::Id => (a, b, c),
            UnaryOp::Inv => (b, a, c),
            UnaryOp::Sc => (a, c, b),
            UnaryOp::Sci => (c, a, b),
            UnaryOp::Hm => (b, c, a),
            UnaryOp::Hmi => (c, b, a),
        };
        Triple::new(x.clone(), y.clone(), z.clone())
    }
}

const ALL_OPS: [UnaryOp; 6] = [
    UnaryOp::Id,
    UnaryOp::Inv,
    UnaryOp::Sc,
    UnaryOp::Sci,
    UnaryOp::Hm,
    UnaryOp::Hmi,
];

/// A ternary constraint network. Absent triples mean the universal
/// relation; stored relations all share the network granularity.
#[derive(Debug, Clone, PartialEq)]
pub struct Network {
    granularity: Granularity,
    constraints: BTreeMap<Triple, FsppRelation>,
}

impl Network {
    pub fn new(g: &Granularity) -> Self {
        Self {
            granularity: g.clone(),
            constraints: BTreeMap::new(),
        }
    }

    pub fn granularity(&self) -> &Granularity {
        &self.granularity
    }

    /// Point identifiers mentioned by any stored constraint.
    pub fn variables(&self) -> BTreeSet<&str> {
        self.constraints
            .keys()
            .flat_map(|t| {
                [
                    t.origin.as_str(),
                    t.relatum.as_str(),
                    t.referent.as_str(),
                ]
            })
            .collect()
    }

    pub fn constraints(&self) -> impl Iterator<Item = (&Triple, &FsppRelation)> {
        self.constraints.iter()
    }

    pub fn len(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constraints.is_empty()
    }

    /// The stored relation, or the implicit universal one.
    pub fn relation(&self, t: &Triple) -> FsppRelation {
        self.constraints
            .get(t)
            .cloned()
            .unwrap_or_else(|| FsppRelation::universal(&self.granularity))
    }

    /// Intersects `r` into the triple's relation (universal when absent).
    pub fn add_constraint(&mut self, t: Triple, r: &FsppRelation) -> Result<()> {
        if r.granularity() != &self.granularity {
            return Err(FsppError::GranularityMismatch);
        }
        let entry = self
            .constraints
            .entry(t)
            .or_insert_with(|| FsppRelation::universal(&self.granularity));
        *entry = entry.intersect(r).expect("same granularity");
        Ok(())
    }

    /// True iff no stored relation is empty.
    pub fn consistent(&self) -> bool {
        self.constraints.values().all(|r| !r.is_empty())
    }

    fn total_bits(&self) -> usize {
        self.constraints.values().map(|r| r.cell_count()).sum()
    }

    /// Intersects every stored triple's unary images into the permuted
    /// triples, iterated to fixpoint. Returns the number of sweeps.
    pub fn unary_closure(&mut self) -> usize {
        let mut sweeps = 0;
        loop {
            sweeps += 1;
            let before = self.clone();
            let keys: Vec<Triple> = self.constraints.keys().cloned().collect();
            for t in keys {
                let r = self.constraints[&t].clone();
                for op in ALL_OPS {
                    let image = unary(op, &r);
                    self.add_constraint(t.permuted(op), &image)
                        .expect("same granularity");
                }
            }
            if *self == before {
                return sweeps;
            }
        }
    }

    /// Composition-based tightening: for every chain (A,B,C) + (B,C,D),
    /// the relation on (A,B,D) is intersected with the weak composition.
    /// Iterated to fixpoint in deterministic lexicographic order. Returns
    /// the number of sweeps; terminates because relations only shrink.
    pub fn refine(&mut self) -> usize {
        // one sweep per shrunk bit at worst, plus the no-change sweep
        let bound = self.total_bits() + 2;
        let mut sweeps = 0;
        // relations repeat across sweeps once the network stabilizes
        type Key = ((Vec<u64>, u8), (Vec<u64>, u8));
        let mut memo: std::collections::HashMap<Key, FsppRelation> =
            std::collections::HashMap::new();
        loop {
            sweeps += 1;
            assert!(sweeps <= bound, "refine exceeded its termination bound");
            let before = self.clone();
            let keys: Vec<Triple> = self.constraints.keys().cloned().collect();
            for t1 in &keys {
                for t2 in &keys {
                    if t2.origin != t1.relatum || t2.relatum != t1.referent {
                        continue;
                    }
                    let r1 = &self.constraints[t1];
                    let r2 = &self.constraints[t2];
                    let key = (r1.fingerprint(), r2.fingerprint());
                    let composed = match memo.get(&key) {
                        Some(c) => c.clone(),
                        None => {
                            let c = compose(r1, r2).expect("same granularity");
                            memo.insert(key, c.clone());
                            c
                        }
                    };
                    let target =
                        Triple::new(t1.origin.clone(), t1.relatum.clone(), t2.referent.clone());
                    self.add_constraint(target, &composed)
                        .expect("same granularity");
                }
            }
            if *self == before {
                return sweeps;
            }
        }
    }

    /// Right-folded composition along `path`: the relations of the
    /// consecutive triples (p_i, p_{i+1}, p_{i+2}) are composed from the
    /// path end backward, yielding the relation of the final point with
    /// respect to the first reference pair. All consecutive triples must
    /// be stored.
    pub fn propagate_path(&self, path: &[&str]) -> Result<FsppRelation> {
        if path.len() < 3 {
            return Err(FsppError::InvalidPath(
                "path needs at least three points".to_string(),
            ));
        }
        let mut rels = Vec::new();
        for w in path.windows(3) {
            let t = Triple::new(w[0], w[1], w[2]);
            match self.constraints.get(&t) {
                Some(r) => rels.push(r.clone()),
                None => {
                    return Err(FsppError::MissingConstraint(
                        t.origin.clone(),
                        t.relatum.clone(),
                        t.referent.clone(),
                    ))
                }
            }
        }
        let mut acc = rels.pop().expect("at least one window");
        while let Some(r) = rels.pop() {
            acc = compose(&r, &acc)?;
        }
        Ok(acc)
    }
}

//! JSON codecs for relations and scenario files.
//!
//! A relation spec is any combination of an explicit cell list
//! `[[dist, orient], ...]`, a special-flag list and a hex-encoded bit
//! array in bit-index order (low byte first, low bit = bit index 0).
//! Scenario files bundle a granularity, optional concrete points, ternary
//! constraints and path queries.

use fspp::calculus::{bit_index, CellIndex, Granularity, Point};
use fspp::relation::FsppRelation;
use fspp::{FsppError, SpecialRel};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug)]
pub enum CodecError {
    /// Malformed JSON, with the parser's line and column.
    Json { line: usize, column: usize, message: String },
    /// Structurally valid JSON that violates the scenario rules.
    Invalid(String),
    Domain(FsppError),
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::Json { line, column, message } => {
                write!(f, "parse error at line {line}, column {column}: {message}")
            }
            CodecError::Invalid(msg) => write!(f, "invalid scenario: {msg}"),
            CodecError::Domain(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CodecError {}

impl From<serde_json::Error> for CodecError {
    fn from(e: serde_json::Error) -> Self {
        CodecError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

impl From<FsppError> for CodecError {
    fn from(e: FsppError) -> Self {
        CodecError::Domain(e)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
pub struct RelationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cells: Option<Vec<[usize; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flags: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hex: Option<String>,
}

fn flag_of(name: &str) -> Result<SpecialRel, CodecError> {
    match name {
        "dou" => Ok(SpecialRel::Dou),
        "tri" => Ok(SpecialRel::Tri),
        "sam" => Ok(SpecialRel::Sam),
        other => Err(CodecError::Invalid(format!("unknown special flag {other:?}"))),
    }
}

pub fn parse_relation(g: &Granularity, spec: &RelationSpec) -> Result<FsppRelation, CodecError> {
    let mut r = FsppRelation::empty(g);
    if let Some(cells) = &spec.cells {
        for &[dist, orient] in cells {
            r.set_cell(CellIndex::new(dist, orient), true)?;
        }
    }
    if let Some(hexstr) = &spec.hex {
        let bytes = hex::decode(hexstr)
            .map_err(|e| CodecError::Invalid(format!("bad hex relation: {e}")))?;
        let expected = (g.cell_count() + 7) / 8;
        if bytes.len() != expected {
            return Err(CodecError::Invalid(format!(
                "hex relation has {} bytes, granularity needs {}",
                bytes.len(),
                expected
            )));
        }
        for bit in 0..g.cell_count() {
            if bytes[bit / 8] >> (bit % 8) & 1 == 1 {
                let c = fspp::calculus::cell_from_bit(g, bit)?;
                r.set_cell(c, true)?;
            }
        }
        // bits beyond the grid must be zero
        for bit in g.cell_count()..bytes.len() * 8 {
            if bytes[bit / 8] >> (bit % 8) & 1 == 1 {
                return Err(CodecError::Invalid(
                    "hex relation sets bits beyond the grid".to_string(),
                ));
            }
        }
    }
    if let Some(flags) = &spec.flags {
        for f in flags {
            r.set_special(flag_of(f)?, true);
        }
    }
    Ok(r)
}

/// Canonical serialization: explicit cell list plus flags.
pub fn serialize_relation(r: &FsppRelation) -> RelationSpec {
    let cells: Vec<[usize; 2]> = r.cells().map(|c| [c.dist, c.orient]).collect();
    let mut flags = Vec::new();
    if r.dou() {
        flags.push("dou".to_string());
    }
    if r.tri() {
        flags.push("tri".to_string());
    }
    if r.sam() {
        flags.push("sam".to_string());
    }
    RelationSpec {
        cells: Some(cells),
        flags: if flags.is_empty() { None } else { Some(flags) },
        hex: None,
    }
}

/// Hex form of the bit array, low byte first.
pub fn relation_hex(r: &FsppRelation) -> String {
    let g = r.granularity();
    let mut bytes = vec![0u8; (g.cell_count() + 7) / 8];
    for c in r.cells() {
        let bit = bit_index(g, c).expect("cell in range");
        bytes[bit / 8] |= 1 << (bit % 8);
    }
    hex::encode(bytes)
}

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
pub struct GranularitySpec {
    #[serde(default = "default_orientations")]
    pub orientations: usize,
    #[serde(default = "default_distances")]
    pub distances: usize,
    #[serde(default = "default_base_length")]
    pub base_length: f64,
    #[serde(default = "default_ratio")]
    pub ratio: f64,
}

pub fn default_orientations() -> usize {
    18
}
pub fn default_distances() -> usize {
    20
}
pub fn default_base_length() -> f64 {
    0.10
}
pub fn default_ratio() -> f64 {
    1.25
}

impl GranularitySpec {
    pub fn build(&self) -> Result<Granularity, CodecError> {
        Ok(Granularity::new(
            self.orientations,
            self.distances,
            self.base_length,
            self.ratio,
        )?)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ConstraintSpec {
    pub origin: String,
    pub relatum: String,
    pub referent: String,
    pub relation: RelationSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum QuerySpec {
    /// Right-folded path propagation over the named points.
    Path { points: Vec<String> },
    /// The stored (or implicit universal) relation of one triple.
    Relation {
        origin: String,
        relatum: String,
        referent: String,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, Default, PartialEq)]
pub struct Scenario {
    #[serde(default)]
    pub granularity: GranularitySpec,
    /// Concrete coordinates; ids absent here are abstract points.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub points: BTreeMap<String, [f64; 2]>,
    #[serde(default)]
    pub constraints: Vec<ConstraintSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub queries: Vec<QuerySpec>,
}

impl Scenario {
    pub fn point(&self, id: &str) -> Option<Point> {
        self.points.get(id).map(|&[x, y]| Point::new(x, y))
    }
}

pub fn parse_scenario(bytes: &[u8]) -> Result<Scenario, CodecError> {
    let sc: Scenario = serde_json::from_slice(bytes)?;
    let g = sc.granularity.build()?;
    for c in &sc.constraints {
        parse_relation(&g, &c.relation)?;
    }
    for q in &sc.queries {
        if let QuerySpec::Path { points } = q {
            if points.len() < 3 {
                return Err(CodecError::Invalid(
                    "path query needs at least three points".to_string(),
                ));
            }
        }
    }
    Ok(sc)
}

pub fn serialize_scenario(sc: &Scenario) -> Vec<u8> {
    let mut out = serde_json::to_vec_pretty(sc).expect("serializable");
    out.push(b'\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn g() -> Granularity {
        Granularity::new(18, 20, 0.10, 1.25).unwrap()
    }

    #[test]
    fn empty_spec_is_empty_relation() {
        let r = parse_relation(&g(), &RelationSpec::default()).unwrap();
        assert!(r.is_empty());
    }

    #[test]
    fn all_ones_hex_is_universal_cells() {
        let gr = g();
        let n_bytes = (gr.cell_count() + 7) / 8;
        let mut bytes = vec![0xffu8; n_bytes];
        // clear the trailing padding bits
        for bit in gr.cell_count()..n_bytes * 8 {
            bytes[bit / 8] &= !(1 << (bit % 8));
        }
        let spec = RelationSpec {
            hex: Some(hex::encode(bytes)),
            ..Default::default()
        };
        let r = parse_relation(&gr, &spec).unwrap();
        assert_eq!(r.cell_count(), gr.cell_count());
        assert!(!r.has_special());
    }

    #[test]
    fn stray_padding_bits_are_rejected() {
        // 30 cells leave two padding bits in the last byte
        let gr = Granularity::new(6, 5, 0.10, 1.25).unwrap();
        let n_bytes = (gr.cell_count() + 7) / 8;
        assert!(n_bytes * 8 > gr.cell_count());
        let spec = RelationSpec {
            hex: Some(hex::encode(vec![0xffu8; n_bytes])),
            ..Default::default()
        };
        assert!(parse_relation(&gr, &spec).is_err());
    }

    #[test]
    fn round_trip_100_random_relations() {
        let gr = g();
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..100 {
            let mut r = FsppRelation::empty(&gr);
            for _ in 0..rng.gen_range(0..40) {
                let c = CellIndex::new(rng.gen_range(0..20), rng.gen_range(0..18));
                r.set_cell(c, true).unwrap();
            }
            r.set_dou(rng.gen_bool(0.2));
            r.set_tri(rng.gen_bool(0.2));
            r.set_sam(rng.gen_bool(0.2));

            let spec = serialize_relation(&r);
            let json = serde_json::to_vec(&spec).unwrap();
            let spec2: RelationSpec = serde_json::from_slice(&json).unwrap();
            assert_eq!(parse_relation(&gr, &spec2).unwrap(), r);

            // hex form round-trips the cells too
            let hex_spec = RelationSpec {
                hex: Some(relation_hex(&r)),
                ..Default::default()
            };
            let from_hex = parse_relation(&gr, &hex_spec).unwrap();
            assert_eq!(
                from_hex.cells().collect::<Vec<_>>(),
                r.cells().collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn scenario_round_trip() {
        let text = br#"{
            "granularity": {"orientations": 8, "distances": 5},
            "points": {"A": [0.0, 0.0], "B": [1.0, 0.0]},
            "constraints": [
                {"origin": "A", "relatum": "B", "referent": "C",
                 "relation": {"cells": [[1, 1], [2, 2]], "flags": ["sam"]}}
            ],
            "queries": [{"type": "path", "points": ["A", "B", "C"]}]
        }"#;
        let sc = parse_scenario(text).unwrap();
        assert_eq!(sc.granularity.orientations, 8);
        assert_eq!(sc.point("B"), Some(Point::new(1.0, 0.0)));
        let bytes = serialize_scenario(&sc);
        assert_eq!(parse_scenario(&bytes).unwrap(), sc);
    }

    #[test]
    fn parse_error_reports_position() {
        let err = parse_scenario(b"{\n  \"granularity\": nope\n}").unwrap_err();
        match err {
            CodecError::Json { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("expected a json error, got {other:?}"),
        }
    }

    #[test]
    fn bad_cell_is_domain_error() {
        let spec = RelationSpec {
            cells: Some(vec![[99, 0]]),
            ..Default::default()
        };
        assert!(matches!(
            parse_relation(&g(), &spec),
            Err(CodecError::Domain(_))
        ));
    }
}

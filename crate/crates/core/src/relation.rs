//! General relations as bit arrays over the polar grid plus the three
//! special-case flags.
//!
//! A general relation is a set of atomic relations: any subset of the
//! `m * n` grid cells together with the dou/tri/sam flags. The bits are
//! stored in `u64` words indexed by `bit_index` (orient + dist * m);
//! unused trailing storage bits are kept at zero so word-wise equality is
//! valid.

use crate::calculus::{
    bit_index, cell_from_bit, check_cell, CellIndex, Classification, Granularity, SpecialRel,
};
use crate::error::{FsppError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FsppRelation {
    granularity: Granularity,
    bits: Vec<u64>,
    dou: bool,
    tri: bool,
    sam: bool,
}

fn word_count(cells: usize) -> usize {
    (cells + 63) / 64
}

impl FsppRelation {
    /// The empty relation (no cells, no flags). Signals inconsistency.
    pub fn empty(g: &Granularity) -> Self {
        Self {
            granularity: g.clone(),
            bits: vec![0; word_count(g.cell_count())],
            dou: false,
            tri: false,
            sam: false,
        }
    }

    /// The universal relation: all cells and all three flags.
    pub fn universal(g: &Granularity) -> Self {
        let mut r = Self::empty(g);
        for w in &mut r.bits {
            *w = u64::MAX;
        }
        r.mask_trailing();
        r.dou = true;
        r.tri = true;
        r.sam = true;
        r
    }

    pub fn from_cells(g: &Granularity, cells: &[CellIndex]) -> Result<Self> {
        let mut r = Self::empty(g);
        for &c in cells {
            r.set_cell(c, true)?;
        }
        Ok(r)
    }

    /// The atomic relation(s) of a classification result as a relation.
    pub fn from_classification(g: &Granularity, c: &Classification) -> Result<Self> {
        let mut r = Self::from_cells(g, &c.cells)?;
        if let Some(s) = c.special {
            r.set_special(s, true);
        }
        Ok(r)
    }

    fn mask_trailing(&mut self) {
        let n = self.granularity.cell_count();
        let rem = n % 64;
        if rem != 0 {
            let last = self.bits.len() - 1;
            self.bits[last] &= (1u64 << rem) - 1;
        }
    }

    pub fn granularity(&self) -> &Granularity {
        &self.granularity
    }

    pub fn dou(&self) -> bool {
        self.dou
    }

    pub fn tri(&self) -> bool {
        self.tri
    }

    pub fn sam(&self) -> bool {
        self.sam
    }

    pub fn set_dou(&mut self, v: bool) {
        self.dou = v;
    }

    pub fn set_tri(&mut self, v: bool) {
        self.tri = v;
    }

    pub fn set_sam(&mut self, v: bool) {
        self.sam = v;
    }

    pub fn has_special(&self) -> bool {
        self.dou || self.tri || self.sam
    }

    pub fn set_special(&mut self, s: SpecialRel, v: bool) {
        match s {
            SpecialRel::Dou => self.dou = v,
            SpecialRel::Tri => self.tri = v,
            SpecialRel::Sam => self.sam = v,
        }
    }

    pub fn get_special(&self, s: SpecialRel) -> bool {
        match s {
            SpecialRel::Dou => self.dou,
            SpecialRel::Tri => self.tri,
            SpecialRel::Sam => self.sam,
        }
    }

    pub fn set_cell(&mut self, c: CellIndex, value: bool) -> Result<()> {
        let idx = bit_index(&self.granularity, c)?;
        if value {
            self.bits[idx / 64] |= 1u64 << (idx % 64);
        } else {
            self.bits[idx / 64] &= !(1u64 << (idx % 64));
        }
        Ok(())
    }

    pub fn get_cell(&self, c: CellIndex) -> Result<bool> {
        check_cell(&self.granularity, c)?;
        let idx = bit_index(&self.granularity, c)?;
        Ok(self.bits[idx / 64] >> (idx % 64) & 1 == 1)
    }

    /// Iterates active cells in ascending bit-index order.
    pub fn cells(&self) -> impl Iterator<Item = CellIndex> + '_ {
        let g = &self.granularity;
        (0..g.cell_count()).filter_map(move |bit| {
            if self.bits[bit / 64] >> (bit % 64) & 1 == 1 {
                Some(cell_from_bit(g, bit).expect("bit in range"))
            } else {
                None
            }
        })
    }

    /// Hashable identity of the cell bits and flags, for memo keys
    /// within one granularity.
    pub fn fingerprint(&self) -> (Vec<u64>, u8) {
        (
            self.bits.clone(),
            (self.dou as u8) | (self.tri as u8) << 1 | (self.sam as u8) << 2,
        )
    }

    /// True when every grid cell is set (flags not considered).
    pub fn is_universal_cells(&self) -> bool {
        self.cell_count() == self.granularity.cell_count()
    }

    pub fn cell_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        !self.has_special() && self.bits.iter().all(|&w| w == 0)
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.granularity != other.granularity {
            return Err(FsppError::GranularityMismatch);
        }
        Ok(())
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (w, o) in r.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        r.dou |= other.dou;
        r.tri |= other.tri;
        r.sam |= other.sam;
        Ok(r)
    }

    /// In-place union, for hot composition loops.
    pub fn union_with(&mut self, other: &Self) -> Result<()> {
        self.check_same(other)?;
        for (w, o) in self.bits.iter_mut().zip(&other.bits) {
            *w |= o;
        }
        self.dou |= other.dou;
        self.tri |= other.tri;
        self.sam |= other.sam;
        Ok(())
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (w, o) in r.bits.iter_mut().zip(&other.bits) {
            *w &= o;
        }
        r.dou &= other.dou;
        r.tri &= other.tri;
        r.sam &= other.sam;
        Ok(r)
    }

    pub fn complement(&self) -> Self {
        let mut r = self.clone();
        for w in &mut r.bits {
            *w = !*w;
        }
        r.mask_trailing();
        r.dou = !r.dou;
        r.tri = !r.tri;
        r.sam = !r.sam;
        r
    }

    pub fn difference(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut r = self.clone();
        for (w, o) in r.bits.iter_mut().zip(&other.bits) {
            *w &= !o;
        }
        r.dou &= !other.dou;
        r.tri &= !other.tri;
        r.sam &= !other.sam;
        Ok(r)
    }

    pub fn is_subset(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        let cells_ok = self.bits.iter().zip(&other.bits).all(|(w, o)| w & !o == 0);
        Ok(cells_ok
            && (!self.dou || other.dou)
            && (!self.tri || other.tri)
            && (!self.sam || other.sam))
    }
}

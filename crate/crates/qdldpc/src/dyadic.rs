//! Dyadic permutation matrices and the lifting of exponent matrices into
//! binary parity-check matrices.
//!
//! A DPM of size 2^ℓ is fully determined by the position of the single 1 in
//! its first row (its signature); as a permutation it maps row r to column
//! r XOR index. DPMs are never stored densely here — the XOR rule is the
//! implementation, and dense materialization exists only as a test oracle.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::gf2e::{FieldElement, FieldSpec};

/// A dyadic permutation matrix of size 2^ℓ × 2^ℓ, identified by its
/// signature index.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dpm {
    ell: u32,
    index: u32,
}

impl Dpm {
    pub fn new(ell: u32, index: u32) -> Result<Dpm> {
        if index >= (1 << ell) {
            return Err(Error::LabelOutOfRange { label: index, ell });
        }
        Ok(Dpm { ell, index })
    }

    pub fn ell(self) -> u32 {
        self.ell
    }

    pub fn index(self) -> u32 {
        self.index
    }

    pub fn size(self) -> u32 {
        1 << self.ell
    }
}

/// Column of the unique 1 in row `row`: row XOR index.
pub fn dpm_apply(d: Dpm, row: u32) -> Result<u32> {
    if row >= d.size() {
        return Err(Error::RowOutOfRange { row, size: d.size() });
    }
    Ok(row ^ d.index)
}

/// Product of two DPMs, again a DPM: indices XOR. Commutative, and every
/// DPM is its own inverse.
pub fn dpm_compose(d1: Dpm, d2: Dpm) -> Result<Dpm> {
    if d1.ell != d2.ell {
        return Err(Error::EllMismatch { left: d1.ell, right: d2.ell });
    }
    Ok(Dpm { ell: d1.ell, index: d1.index ^ d2.index })
}

/// A w×N grid of field elements, each selecting one DPM.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentMatrix {
    field: FieldSpec,
    width: usize,
    blocks: usize,
    entries: Vec<FieldElement>,
}

impl ExponentMatrix {
    pub fn new(field: FieldSpec, width: usize, blocks: usize, entries: Vec<FieldElement>) -> Result<Self> {
        if width == 0 || blocks == 0 {
            return Err(Error::EmptyMatrix);
        }
        if entries.len() != width * blocks {
            return Err(Error::DimensionMismatch { expected: width * blocks, got: entries.len() });
        }
        Ok(ExponentMatrix { field, width, blocks, entries })
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    /// Number of block-rows w.
    pub fn width(&self) -> usize {
        self.width
    }

    /// Number of block-columns N.
    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn entry(&self, block_row: usize, block_col: usize) -> FieldElement {
        self.entries[block_row * self.blocks + block_col]
    }

    pub fn row(&self, block_row: usize) -> &[FieldElement] {
        &self.entries[block_row * self.blocks..(block_row + 1) * self.blocks]
    }
}

#[derive(Debug, Clone)]
struct Packed {
    words_per_row: usize,
    words: Vec<u64>,
}

/// A binary matrix stored as sorted per-row column lists, with a bit-packed
/// view built lazily for dense linear algebra.
#[derive(Debug, Clone)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    row_support: Vec<Vec<u32>>,
    packed: OnceLock<Packed>,
}

impl PartialEq for BinaryMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.row_support == other.row_support
    }
}
impl Eq for BinaryMatrix {}

impl BinaryMatrix {
    /// Builds from per-row column support lists; indices must be strictly
    /// increasing within each row and in range.
    pub fn from_rows(cols: usize, row_support: Vec<Vec<u32>>) -> Result<Self> {
        if cols == 0 || row_support.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        for row in &row_support {
            for pair in row.windows(2) {
                if pair[0] >= pair[1] {
                    return Err(Error::Internal("row support not strictly increasing".into()));
                }
            }
            if let Some(&last) = row.last() {
                if last as usize >= cols {
                    return Err(Error::DimensionMismatch { expected: cols, got: last as usize + 1 });
                }
            }
        }
        let rows = row_support.len();
        Ok(BinaryMatrix { rows, cols, row_support, packed: OnceLock::new() })
    }

    /// Builds from a dense 0/1 grid (test and I/O convenience).
    pub fn from_dense(grid: &[Vec<u8>]) -> Result<Self> {
        let cols = grid.first().map(|r| r.len()).unwrap_or(0);
        let rows = grid
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &v)| v != 0).map(|(j, _)| j as u32).collect())
            .collect();
        BinaryMatrix::from_rows(cols, rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.row_support[i]
    }

    pub fn row_supports(&self) -> &[Vec<u32>] {
        &self.row_support
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row_support[i].binary_search(&(j as u32)).is_ok()
    }

    pub fn row_weight(&self, i: usize) -> usize {
        self.row_support[i].len()
    }

    /// Per-column row lists, computed on demand.
    pub fn col_supports(&self) -> Vec<Vec<u32>> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, row) in self.row_support.iter().enumerate() {
            for &j in row {
                cols[j as usize].push(i as u32);
            }
        }
        cols
    }

    pub(crate) fn words_per_row(&self) -> usize {
        self.cols.div_ceil(64)
    }

    /// Bit-packed rows (row-major, `words_per_row` words each), built once.
    pub(crate) fn packed_rows(&self) -> &[u64] {
        let packed = self.packed.get_or_init(|| {
            let wpr = self.words_per_row();
            let mut words = vec![0u64; self.rows * wpr];
            for (i, row) in self.row_support.iter().enumerate() {
                for &j in row {
                    words[i * wpr + (j as usize >> 6)] |= 1u64 << (j & 63);
                }
            }
            Packed { words_per_row: wpr, words }
        });
        debug_assert_eq!(packed.words_per_row, self.words_per_row());
        &packed.words
    }

    pub(crate) fn packed_row(&self, i: usize) -> &[u64] {
        let wpr = self.words_per_row();
        &self.packed_rows()[i * wpr..(i + 1) * wpr]
    }

    /// A copy without the final column (drops any entries in it).
    pub fn without_last_column(&self) -> Result<BinaryMatrix> {
        if self.cols < 2 {
            return Err(Error::EmptyMatrix);
        }
        let last = (self.cols - 1) as u32;
        let rows = self
            .row_support
            .iter()
            .map(|r| r.iter().copied().filter(|&j| j != last).collect())
            .collect();
        BinaryMatrix::from_rows(self.cols - 1, rows)
    }
}

/// Replaces each exponent-matrix entry by its DPM, producing the binary PCM.
/// Block (i, j) is the DPM with index ψ(p_{i,j}), so within that block row r
/// has its 1 at column ψ(p_{i,j}) XOR r.
pub fn lift(p: &ExponentMatrix) -> BinaryMatrix {
    let ell = p.field().ell();
    let block = 1usize << ell;
    let cols = p.blocks() * block;
    let mut rows = Vec::with_capacity(p.width() * block);
    for u in 0..p.width() {
        for r in 0..block {
            let mut support = Vec::with_capacity(p.blocks());
            for j in 0..p.blocks() {
                let idx = p.entry(u, j).label() as usize;
                support.push((j * block + (idx ^ r)) as u32);
            }
            rows.push(support);
        }
    }
    BinaryMatrix::from_rows(cols, rows).expect("lift of a nonempty exponent matrix")
}

/// Appends a final all-one column. Empty input is rejected.
pub fn append_allone_column(h: &BinaryMatrix) -> Result<BinaryMatrix> {
    let new_col = h.cols() as u32;
    let rows = h
        .row_supports()
        .iter()
        .map(|r| {
            let mut row = r.clone();
            row.push(new_col);
            row
        })
        .collect();
    BinaryMatrix::from_rows(h.cols() + 1, rows)
}

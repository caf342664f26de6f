//! Code constructions: classical girth-6 quasi-dyadic LDPC codes from affine
//! exponent rows, and CSS pairs whose lifted matrices satisfy the CAMEL
//! condition, plus structural validation and the on-disk code directory
//! format (`HX.alist`/`HZ.alist`/`meta.json`).

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alist;
use crate::dyadic::{append_allone_column, lift, BinaryMatrix, ExponentMatrix};
use crate::error::{Error, Result};
use crate::f2linalg::{count_4cycles, girth, matmul_f2, rank_f2, TannerGraph};
use crate::gf2e::{FieldElement, FieldSpec};

pub const CONSTRUCTION_ID: &str = "dyadic-affine-v1";

/// One affine row p_j = a·λ_j + b of an exponent matrix. The multiplier `a`
/// must be nonzero so the row is a permutation of the field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AffineRowSpec {
    pub multiplier: FieldElement,
    pub offset: FieldElement,
}

impl AffineRowSpec {
    pub fn new(multiplier: FieldElement, offset: FieldElement) -> AffineRowSpec {
        AffineRowSpec { multiplier, offset }
    }
}

pub(crate) fn affine_exponent_matrix(
    field: &FieldSpec,
    rows: &[AffineRowSpec],
) -> Result<ExponentMatrix> {
    let n = field.size();
    let mut entries = Vec::with_capacity(rows.len() * n);
    for row in rows {
        for j in 0..n as u32 {
            let lambda = field.element(j)?;
            entries.push(field.add(field.mul(row.multiplier, lambda), row.offset));
        }
    }
    ExponentMatrix::new(field.clone(), rows.len(), n, entries)
}

fn check_multipliers(
    field: &FieldSpec,
    rows: &[AffineRowSpec],
    location: &'static str,
    seen: &mut Vec<bool>,
) -> Result<()> {
    for (i, row) in rows.iter().enumerate() {
        if row.multiplier.is_zero() {
            return Err(Error::ZeroMultiplier { label: 0, row: i });
        }
        let label = row.multiplier.label() as usize;
        if label >= field.size() {
            return Err(Error::LabelOutOfRange { label: label as u32, ell: field.ell() });
        }
        if seen[label] {
            return Err(Error::DuplicateMultiplier { label: label as u32, location });
        }
        seen[label] = true;
    }
    Ok(())
}

/// A classical quasi-dyadic LDPC code built from affine rows with distinct
/// nonzero multipliers; the lifted Tanner graph has girth at least 6.
#[derive(Debug, Clone)]
pub struct ClassicalCode {
    field: FieldSpec,
    rows: Vec<AffineRowSpec>,
    exponent: ExponentMatrix,
    h: BinaryMatrix,
    n: usize,
    k: usize,
}

impl ClassicalCode {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows(&self) -> &[AffineRowSpec] {
        &self.rows
    }
    pub fn exponent(&self) -> &ExponentMatrix {
        &self.exponent
    }
    pub fn h(&self) -> &BinaryMatrix {
        &self.h
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
}

/// Builds a classical code from one affine row per block-row. The library
/// accepts any w ≥ 1 with distinct nonzero multipliers; the construction
/// guarantee targets 3 ≤ w ≤ 2^ℓ.
pub fn build_classical(field: &FieldSpec, rows: &[AffineRowSpec]) -> Result<ClassicalCode> {
    if rows.is_empty() || rows.len() > field.order() {
        return Err(Error::WidthOutOfRange { w: rows.len(), max: field.order() });
    }
    let mut seen = vec![false; field.size()];
    check_multipliers(field, rows, "rows", &mut seen)?;
    let exponent = affine_exponent_matrix(field, rows)?;
    let h = lift(&exponent);
    let n = h.cols();
    let k = n - rank_f2(&h);
    Ok(ClassicalCode { field: field.clone(), rows: rows.to_vec(), exponent, h, n, k })
}

/// A CSS pair (H_X, H_Z) with the assembled all-one final column. Valid
/// constructions satisfy the CAMEL condition on the unappended matrices and
/// symplectic orthogonality after appending.
#[derive(Debug, Clone)]
pub struct CssCodePair {
    field: FieldSpec,
    rows_x: Vec<AffineRowSpec>,
    rows_z: Vec<AffineRowSpec>,
    hx: BinaryMatrix,
    hz: BinaryMatrix,
    n: usize,
    k: usize,
}

impl CssCodePair {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }
    pub fn rows_x(&self) -> &[AffineRowSpec] {
        &self.rows_x
    }
    pub fn rows_z(&self) -> &[AffineRowSpec] {
        &self.rows_z
    }
    /// The appended X parity-check matrix.
    pub fn hx(&self) -> &BinaryMatrix {
        &self.hx
    }
    /// The appended Z parity-check matrix.
    pub fn hz(&self) -> &BinaryMatrix {
        &self.hz
    }
    /// H'_X: the matrix before the all-one column was appended.
    pub fn hx_prime(&self) -> Result<BinaryMatrix> {
        self.hx.without_last_column()
    }
    pub fn hz_prime(&self) -> Result<BinaryMatrix> {
        self.hz.without_last_column()
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn k(&self) -> usize {
        self.k
    }
    /// Index of the assembled variable node (the appended column).
    pub fn assembled_column(&self) -> usize {
        self.n - 1
    }

    /// The affine exponent matrix generating H'_X.
    pub fn exponent_x(&self) -> Result<ExponentMatrix> {
        affine_exponent_matrix(&self.field, &self.rows_x)
    }

    /// The affine exponent matrix generating H'_Z.
    pub fn exponent_z(&self) -> Result<ExponentMatrix> {
        affine_exponent_matrix(&self.field, &self.rows_z)
    }

    /// Wraps existing matrices without structural checks beyond shape; used
    /// by the directory loader and by validation tests on corrupted inputs.
    pub fn from_parts(
        field: FieldSpec,
        rows_x: Vec<AffineRowSpec>,
        rows_z: Vec<AffineRowSpec>,
        hx: BinaryMatrix,
        hz: BinaryMatrix,
    ) -> Result<CssCodePair> {
        if hx.cols() != hz.cols() {
            return Err(Error::DimensionMismatch { expected: hx.cols(), got: hz.cols() });
        }
        let n = hx.cols();
        let redundancy = rank_f2(&hx) + rank_f2(&hz);
        if redundancy > n {
            return Err(Error::Internal(format!(
                "rank sum {redundancy} exceeds length {n}: negative dimension"
            )));
        }
        let k = n - redundancy;
        Ok(CssCodePair { field, rows_x, rows_z, hx, hz, n, k })
    }
}

/// Builds a CAMEL-compatible CSS pair: affine exponent matrices for X and Z
/// with multipliers distinct within and across the two row sets, lifted and
/// extended by the all-one column.
pub fn build_camel_pair(
    field: &FieldSpec,
    rows_x: &[AffineRowSpec],
    rows_z: &[AffineRowSpec],
) -> Result<CssCodePair> {
    if rows_x.is_empty() || rows_z.is_empty() {
        return Err(Error::WidthOutOfRange { w: 0, max: field.order() });
    }
    if rows_x.len() != rows_z.len() {
        return Err(Error::DimensionMismatch { expected: rows_x.len(), got: rows_z.len() });
    }
    let mut seen = vec![false; field.size()];
    check_multipliers(field, rows_x, "rows_X", &mut seen)?;
    check_multipliers(field, rows_z, "rows_Z (collides within Z or across rows_X)", &mut seen)?;

    let px = affine_exponent_matrix(field, rows_x)?;
    let pz = affine_exponent_matrix(field, rows_z)?;
    let hx = append_allone_column(&lift(&px))?;
    let hz = append_allone_column(&lift(&pz))?;
    CssCodePair::from_parts(field.clone(), rows_x.to_vec(), rows_z.to_vec(), hx, hz)
}

/// The default §-style multiplier sets: A_X takes the first 2^{ℓ-1}-1 powers
/// of α starting at α⁰, A_Z the next 2^{ℓ-1}-1 powers, and the remaining
/// element α^{2^ℓ-2} is discarded. All offsets are zero.
pub fn default_multiplier_sets(field: &FieldSpec) -> Result<(Vec<AffineRowSpec>, Vec<AffineRowSpec>)> {
    if field.ell() < 2 {
        return Err(Error::DefaultSetsTooSmall(field.ell()));
    }
    let half = 1usize << (field.ell() - 1);
    let per_side = half - 1;
    let zero = FieldElement::ZERO;
    let rows_x =
        (0..per_side).map(|i| AffineRowSpec::new(field.alpha_pow(i as u64), zero)).collect();
    let rows_z = (0..per_side)
        .map(|i| AffineRowSpec::new(field.alpha_pow((per_side + i) as u64), zero))
        .collect();
    Ok((rows_x, rows_z))
}

/// Structural diagnosis of a CSS pair. Failures are data, not errors, so a
/// bad code can be reported in full.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub girth_x: Option<usize>,
    pub girth_z: Option<usize>,
    pub four_cycles_x: u64,
    pub four_cycles_z: u64,
    pub camel_ok: bool,
    pub symplectic_ok: bool,
    pub allone_column_ok: bool,
    /// Cross-row overlap census on the unappended matrices:
    /// overlap value → number of (X row, Z row) pairs with that overlap.
    pub overlap_census: BTreeMap<u64, u64>,
}

impl ValidationReport {
    pub fn all_overlaps_one(&self) -> bool {
        self.overlap_census.keys().all(|&k| k == 1)
    }

    pub fn passed(&self) -> bool {
        self.girth_x.map_or(true, |g| g >= 6)
            && self.girth_z.map_or(true, |g| g >= 6)
            && self.four_cycles_x == 0
            && self.four_cycles_z == 0
            && self.camel_ok
            && self.symplectic_ok
            && self.allone_column_ok
            && self.all_overlaps_one()
    }
}

pub fn validate_pair(code: &CssCodePair) -> Result<ValidationReport> {
    let hxp = code.hx_prime()?;
    let hzp = code.hz_prime()?;

    let mut census: BTreeMap<u64, u64> = BTreeMap::new();
    let wpr = hxp.words_per_row();
    for i in 0..hxp.rows() {
        let ri = hxp.packed_row(i);
        for j in 0..hzp.rows() {
            let rj = hzp.packed_row(j);
            let overlap = (0..wpr).map(|k| (ri[k] & rj[k]).count_ones() as u64).sum::<u64>();
            *census.entry(overlap).or_insert(0) += 1;
        }
    }
    let camel_ok = census.keys().all(|&k| k % 2 == 1);

    let sym = matmul_f2(&code.hx, code.hz())?;
    let symplectic_ok = sym.row_supports().iter().all(|r| r.is_empty());

    let last = code.assembled_column();
    let allone_column_ok = (0..code.hx.rows()).all(|i| code.hx.get(i, last))
        && (0..code.hz.rows()).all(|i| code.hz.get(i, last));

    Ok(ValidationReport {
        girth_x: girth(&TannerGraph::new(&hxp)),
        girth_z: girth(&TannerGraph::new(&hzp)),
        four_cycles_x: count_4cycles(&hxp),
        four_cycles_z: count_4cycles(&hzp),
        camel_ok,
        symplectic_ok,
        allone_column_ok,
        overlap_census: census,
    })
}

/// (n, k, rate) of a CSS pair; k was fixed at construction from the F2 ranks.
pub fn code_params(code: &CssCodePair) -> (usize, usize, f64) {
    (code.n(), code.k(), code.k() as f64 / code.n() as f64)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CodeMeta {
    pub ell: u32,
    pub prim_poly: u32,
    #[serde(rename = "rows_X", skip_serializing_if = "Option::is_none")]
    pub rows_x: Option<Vec<(u32, u32)>>,
    #[serde(rename = "rows_Z", skip_serializing_if = "Option::is_none")]
    pub rows_z: Option<Vec<(u32, u32)>>,
    /// Affine rows of a classical (single-matrix) code.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<(u32, u32)>>,
    pub n: usize,
    pub k: usize,
    pub construction: String,
}

fn rows_to_labels(rows: &[AffineRowSpec]) -> Vec<(u32, u32)> {
    rows.iter().map(|r| (r.multiplier.label(), r.offset.label())).collect()
}

fn rows_from_labels(field: &FieldSpec, labels: &[(u32, u32)]) -> Result<Vec<AffineRowSpec>> {
    labels
        .iter()
        .map(|&(a, b)| Ok(AffineRowSpec::new(field.element(a)?, field.element(b)?)))
        .collect()
}

impl CodeMeta {
    pub fn for_css(code: &CssCodePair) -> CodeMeta {
        CodeMeta {
            ell: code.field().ell(),
            prim_poly: code.field().prim_poly(),
            rows_x: Some(rows_to_labels(code.rows_x())),
            rows_z: Some(rows_to_labels(code.rows_z())),
            rows: None,
            n: code.n(),
            k: code.k(),
            construction: CONSTRUCTION_ID.to_string(),
        }
    }

    pub fn for_classical(code: &ClassicalCode) -> CodeMeta {
        CodeMeta {
            ell: code.field().ell(),
            prim_poly: code.field().prim_poly(),
            rows_x: None,
            rows_z: None,
            rows: Some(rows_to_labels(code.rows())),
            n: code.n(),
            k: code.k(),
            construction: CONSTRUCTION_ID.to_string(),
        }
    }

    pub fn is_css(&self) -> bool {
        self.rows_x.is_some() && self.rows_z.is_some()
    }
}

/// Rebuilds a CSS pair bit-exactly from its metadata alone.
pub fn regenerate_css(meta: &CodeMeta) -> Result<CssCodePair> {
    let field = FieldSpec::with_poly(meta.ell, meta.prim_poly)?;
    let rows_x = rows_from_labels(
        &field,
        meta.rows_x.as_deref().ok_or_else(|| missing("rows_X"))?,
    )?;
    let rows_z = rows_from_labels(
        &field,
        meta.rows_z.as_deref().ok_or_else(|| missing("rows_Z"))?,
    )?;
    build_camel_pair(&field, &rows_x, &rows_z)
}

/// Rebuilds a classical code bit-exactly from its metadata alone.
pub fn regenerate_classical(meta: &CodeMeta) -> Result<ClassicalCode> {
    let field = FieldSpec::with_poly(meta.ell, meta.prim_poly)?;
    let rows = rows_from_labels(&field, meta.rows.as_deref().ok_or_else(|| missing("rows"))?)?;
    build_classical(&field, &rows)
}

fn missing(what: &str) -> Error {
    Error::InconsistentCodeDir(format!("meta.json lacks {what}"))
}

pub fn save_css_dir(code: &CssCodePair, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    alist::write_file(code.hx(), &dir.join("HX.alist"))?;
    alist::write_file(code.hz(), &dir.join("HZ.alist"))?;
    let meta = CodeMeta::for_css(code);
    std::fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)?)?;
    Ok(())
}

pub fn save_classical_dir(code: &ClassicalCode, dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    alist::write_file(code.h(), &dir.join("H.alist"))?;
    let meta = CodeMeta::for_classical(code);
    std::fs::write(dir.join("meta.json"), serde_json::to_string_pretty(&meta)?)?;
    Ok(())
}

pub fn load_meta(dir: &Path) -> Result<CodeMeta> {
    let meta: CodeMeta = serde_json::from_str(&std::fs::read_to_string(dir.join("meta.json"))?)?;
    Ok(meta)
}

/// Loads a CSS code directory. The alist files are authoritative for the
/// matrix contents (so later structural checks diagnose corruption); the
/// metadata must agree with them dimensionally, and n/k are recomputed.
pub fn load_css_dir(dir: &Path) -> Result<CssCodePair> {
    let meta = load_meta(dir)?;
    if !meta.is_css() {
        return Err(Error::InconsistentCodeDir("not a CSS code directory".into()));
    }
    let field = FieldSpec::with_poly(meta.ell, meta.prim_poly)?;
    let rows_x = rows_from_labels(&field, meta.rows_x.as_deref().unwrap())?;
    let rows_z = rows_from_labels(&field, meta.rows_z.as_deref().unwrap())?;
    let hx = alist::read_file(&dir.join("HX.alist"))?;
    let hz = alist::read_file(&dir.join("HZ.alist"))?;
    let expect_rows = rows_x.len() * field.size();
    let expect_cols = field.size() * field.size() + 1;
    for (name, h, rows) in [("HX.alist", &hx, rows_x.len()), ("HZ.alist", &hz, rows_z.len())] {
        if h.rows() != rows * field.size() || h.cols() != expect_cols {
            return Err(Error::InconsistentCodeDir(format!(
                "{name} is {}x{}, metadata implies {}x{}",
                h.rows(),
                h.cols(),
                if name == "HX.alist" { expect_rows } else { rows * field.size() },
                expect_cols
            )));
        }
    }
    CssCodePair::from_parts(field, rows_x, rows_z, hx, hz)
}

//! GF(4) Pauli-error representation, the depolarizing channel sampler, and
//! syndrome computation for a CSS pair.
//!
//! The fixed Pauli ↔ GF(4) label mapping is I→0, Y→1, X→2 (ω), Z→3 (ω̄).
//! Under this mapping two Paulis anticommute iff their labels are nonzero
//! and distinct, and the symbol-wise Pauli product (mod phase) is label XOR.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::codes::CssCodePair;
use crate::error::{Error, Result};

pub const GF4_I: u8 = 0;
pub const GF4_Y: u8 = 1;
pub const GF4_X: u8 = 2;
pub const GF4_Z: u8 = 3;

/// 1 iff the two GF(4) labels anticommute: both nonzero and distinct.
#[inline]
pub fn anticommute(h: u8, e: u8) -> u8 {
    const TABLE: [[u8; 4]; 4] =
        [[0, 0, 0, 0], [0, 0, 1, 1], [0, 1, 0, 1], [0, 1, 1, 0]];
    TABLE[h as usize][e as usize]
}

/// A length-n Pauli error pattern as GF(4) labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PauliErrorVector {
    symbols: Vec<u8>,
}

impl PauliErrorVector {
    pub fn new(symbols: Vec<u8>) -> Result<PauliErrorVector> {
        if let Some(&bad) = symbols.iter().find(|&&s| s > 3) {
            return Err(Error::BadGf4Label(bad));
        }
        Ok(PauliErrorVector { symbols })
    }

    pub fn zero(n: usize) -> PauliErrorVector {
        PauliErrorVector { symbols: vec![0; n] }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn symbol(&self, i: usize) -> u8 {
        self.symbols[i]
    }

    /// Number of non-identity symbols.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    /// Symbol-wise GF(4) addition (Pauli product up to phase).
    pub fn add(&self, other: &PauliErrorVector) -> Result<PauliErrorVector> {
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch { expected: self.len(), got: other.len() });
        }
        Ok(PauliErrorVector {
            symbols: self.symbols.iter().zip(&other.symbols).map(|(a, b)| a ^ b).collect(),
        })
    }

    /// Binary support of the X component: 1 where the symbol is X or Y.
    pub fn x_part(&self) -> Vec<u8> {
        self.symbols.iter().map(|&s| anticommute(GF4_Z, s)).collect()
    }

    /// Binary support of the Z component: 1 where the symbol is Z or Y.
    pub fn z_part(&self) -> Vec<u8> {
        self.symbols.iter().map(|&s| anticommute(GF4_X, s)).collect()
    }
}

/// Depolarizing channel parameters: each qubit independently suffers X, Y,
/// or Z with probability p/3 each.
#[derive(Debug, Clone, Copy)]
pub struct DepolarizingParams {
    p: f64,
    seed: u64,
}

impl DepolarizingParams {
    pub fn new(p: f64, seed: u64) -> Result<DepolarizingParams> {
        if !(0.0..=1.0).contains(&p) || p.is_nan() {
            return Err(Error::BadProbability(p));
        }
        Ok(DepolarizingParams { p, seed })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

/// Samples one error vector. Each (seed, trial) pair selects an independent
/// counter-based substream, so trials are reproducible in any order and
/// across any worker layout.
pub fn sample_error(n: usize, params: &DepolarizingParams, trial: u64) -> PauliErrorVector {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(trial);
    let mut symbols = vec![0u8; n];
    for s in symbols.iter_mut() {
        if rng.random::<f64>() < params.p {
            *s = rng.random_range(1..=3);
        }
    }
    PauliErrorVector { symbols }
}

/// The binary syndrome: one bit per H_X row (detecting Z/Y components) and
/// one per H_Z row (detecting X/Y components).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Syndrome {
    pub x_bits: Vec<u8>,
    pub z_bits: Vec<u8>,
}

impl Syndrome {
    pub fn is_zero(&self) -> bool {
        self.x_bits.iter().chain(&self.z_bits).all(|&b| b == 0)
    }
}

pub fn syndrome(code: &CssCodePair, e: &PauliErrorVector) -> Result<Syndrome> {
    if e.len() != code.n() {
        return Err(Error::DimensionMismatch { expected: code.n(), got: e.len() });
    }
    let project = |h: &crate::dyadic::BinaryMatrix, entry: u8| -> Vec<u8> {
        (0..h.rows())
            .map(|i| h.row(i).iter().fold(0u8, |acc, &j| acc ^ anticommute(entry, e.symbol(j as usize))))
            .collect()
    };
    Ok(Syndrome { x_bits: project(code.hx(), GF4_X), z_bits: project(code.hz(), GF4_Z) })
}

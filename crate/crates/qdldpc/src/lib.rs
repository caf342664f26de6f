//! Construction, verification, and decoding of quasi-dyadic LDPC codes.
//!
//! The library builds classical girth-6 LDPC codes and CSS code pairs from
//! affine exponent matrices over GF(2^ℓ), lifted through dyadic permutation
//! matrices. CSS pairs carry an appended all-one column and satisfy the
//! compatibility condition required by the 4-path ensemble decoder, which
//! concentrates all unavoidable quaternary 4-cycles at that single variable
//! node. Decoding is quaternary sum-product belief propagation over the
//! depolarizing channel, plain or with decimation of the assembled node
//! (ensemble and genie-aided variants), measured by a seeded, reproducible
//! Monte Carlo harness.
//!
//! Module map:
//! - [`gf2e`]: GF(2^ℓ) arithmetic and the ψ/φ label bijections
//! - [`dyadic`]: dyadic permutation matrices, exponent matrices, lifting
//! - [`alist`]: the alist sparse-matrix interchange format
//! - [`f2linalg`]: F2 rank, row spaces, products, girth, 4-cycle census
//! - [`codes`]: the classical and CSS constructions plus validation
//! - [`channel`]: GF(4) Pauli errors, depolarizing sampler, syndromes
//! - [`bp4`]: quaternary belief propagation with decimation
//! - [`camel`]: 4-path ensemble and genie-aided decoding
//! - [`sim`]: Monte Carlo logical-error-rate sweeps and CSV output

pub mod alist;
pub mod bp4;
pub mod camel;
pub mod channel;
pub mod codes;
pub mod dyadic;
pub mod error;
pub mod f2linalg;
pub mod gf2e;
pub mod sim;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};

//! Arithmetic in GF(2^ℓ).
//!
//! Elements are identified with integer labels through the bijection
//! ψ(Σ cₖ αᵏ) = Σ cₖ 2ᵏ, so the label bits are exactly the coordinates of the
//! element in the polynomial basis (the φ map). Addition is therefore label
//! XOR; multiplication and inversion go through log/antilog tables built once
//! at field creation.

use crate::error::{Error, Result};

/// Lexicographically smallest primitive polynomial of each degree 1..=16,
/// as a bitmask (bit k = coefficient of x^k).
const PRIMITIVE_POLYS: [u32; 16] = [
    0b11,                // x + 1
    0b111,               // x^2 + x + 1
    0b1011,              // x^3 + x + 1
    0b10011,             // x^4 + x + 1
    0b100101,            // x^5 + x^2 + 1
    0b1000011,           // x^6 + x + 1
    0b10000011,          // x^7 + x + 1
    0b100011101,         // x^8 + x^4 + x^3 + x^2 + 1
    0b1000010001,        // x^9 + x^4 + 1
    0b10000001001,       // x^10 + x^3 + 1
    0b100000000101,      // x^11 + x^2 + 1
    0b1000001010011,     // x^12 + x^6 + x^4 + x + 1
    0b10000000011011,    // x^13 + x^4 + x^3 + x + 1
    0b100000000101011,   // x^14 + x^5 + x^3 + x + 1
    0b1000000000000011,  // x^15 + x + 1
    0b10000000000101101, // x^16 + x^5 + x^3 + x^2 + 1
];

/// An element of GF(2^ℓ), stored as its ψ-label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    /// The integer label ψ(self).
    pub fn label(self) -> u32 {
        u32::from(self.0)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// GF(2^ℓ) defined by a primitive polynomial, with precomputed log/antilog
/// tables. Immutable after creation and safe to share across workers.
#[derive(Clone)]
pub struct FieldSpec {
    ell: u32,
    prim_poly: u32,
    /// exp[i] = label of α^i, for i in 0..2^ℓ-1.
    exp: Vec<u16>,
    /// log[label] = i with α^i = element, for label in 1..2^ℓ.
    log: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.ell == other.ell && self.prim_poly == other.prim_poly
    }
}
impl Eq for FieldSpec {}

impl std::fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FieldSpec {{ ell: {}, prim_poly: 0b{:b} }}", self.ell, self.prim_poly)
    }
}

/// Builds GF(2^ℓ) with the fixed primitive polynomial for that degree.
/// Deterministic: the same ℓ always yields the same field.
pub fn make_field(ell: u32) -> Result<FieldSpec> {
    if !(1..=16).contains(&ell) {
        return Err(Error::EllOutOfRange(ell));
    }
    FieldSpec::with_poly(ell, PRIMITIVE_POLYS[(ell - 1) as usize])
}

impl FieldSpec {
    /// Builds GF(2^ℓ) from an explicit polynomial, verifying that it has
    /// degree exactly ℓ and that α generates the full multiplicative group.
    pub fn with_poly(ell: u32, prim_poly: u32) -> Result<FieldSpec> {
        if !(1..=16).contains(&ell) {
            return Err(Error::EllOutOfRange(ell));
        }
        let size = 1u32 << ell;
        if prim_poly >> ell != 1 {
            return Err(Error::NotPrimitive { poly: prim_poly, ell });
        }
        let order = (size - 1) as usize;
        let mut exp = vec![0u16; order];
        let mut log = vec![0u16; size as usize];
        let mut x = 1u32;
        for i in 0..order {
            if x == 1 && i > 0 {
                // α cycled back early: not primitive
                return Err(Error::NotPrimitive { poly: prim_poly, ell });
            }
            exp[i] = x as u16;
            log[x as usize] = i as u16;
            x <<= 1;
            if x & size != 0 {
                x ^= prim_poly;
            }
        }
        if x != 1 {
            return Err(Error::NotPrimitive { poly: prim_poly, ell });
        }
        Ok(FieldSpec { ell, prim_poly, exp, log })
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }

    pub fn prim_poly(&self) -> u32 {
        self.prim_poly
    }

    /// Number of field elements, 2^ℓ.
    pub fn size(&self) -> usize {
        1usize << self.ell
    }

    /// Order of the multiplicative group, 2^ℓ - 1.
    pub fn order(&self) -> usize {
        self.size() - 1
    }

    /// ψ⁻¹(label): the element with the given integer label.
    pub fn element(&self, label: u32) -> Result<FieldElement> {
        if label as usize >= self.size() {
            return Err(Error::LabelOutOfRange { label, ell: self.ell });
        }
        Ok(FieldElement(label as u16))
    }

    /// ψ(a): the integer label of an element.
    pub fn psi(&self, a: FieldElement) -> u32 {
        a.label()
    }

    /// Same as [`FieldSpec::element`]; named for symmetry with ψ.
    pub fn psi_inv(&self, label: u32) -> Result<FieldElement> {
        self.element(label)
    }

    /// φ(a): the ℓ coordinates (c₀, …, c_{ℓ-1}) of a in the polynomial basis.
    pub fn coords(&self, a: FieldElement) -> Vec<bool> {
        (0..self.ell).map(|k| (a.label() >> k) & 1 == 1).collect()
    }

    /// The primitive element α.
    pub fn alpha(&self) -> FieldElement {
        self.exp_element(1)
    }

    /// α^k (k taken mod the group order).
    pub fn alpha_pow(&self, k: u64) -> FieldElement {
        self.exp_element((k % self.order() as u64) as usize)
    }

    fn exp_element(&self, i: usize) -> FieldElement {
        FieldElement(self.exp[i % self.order()])
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(a.0 ^ b.0)
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.is_zero() || b.is_zero() {
            return FieldElement::ZERO;
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        self.exp_element(i)
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let i = self.order() - self.log[a.0 as usize] as usize;
        Ok(self.exp_element(i))
    }

    /// All 2^ℓ elements in label order (λ₀, λ₁, …).
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.size() as u16).map(FieldElement)
    }

    /// k with a = α^k, or `None` for the zero element.
    pub fn alpha_exponent(&self, a: FieldElement) -> Option<u32> {
        if a.is_zero() {
            None
        } else {
            Some(u32::from(self.log[a.0 as usize]))
        }
    }
}

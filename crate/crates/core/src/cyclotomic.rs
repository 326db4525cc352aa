//! The cyclotomic field `Q(zeta_d)` reduced to residue arithmetic mod `d`.
//!
//! Embeddings are indexed by units `a` of `Z/dZ`; the embedding `sigma_a`
//! sends `zeta` to `zeta^a`. Nothing here does arithmetic inside the field
//! itself, every quantity we need depends only on exponents.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::CyclotomicError;

/// Which half of the embeddings a residue falls into with respect to the
/// standard CM-type `{sigma_a : 0 < a < d/2}`.
///
/// Non-unit residues are classified by the same rule, which for a residue of
/// exact order `e | d` agrees with the standard CM-type of `Q(zeta_e)`.
/// Residues `0` and `d/2` have real eigenvalues and belong to neither half.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Positive,
    Negative,
    Real,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CyclotomicData {
    d: u32,
    units: Vec<u32>,
    sigma0: Vec<u32>,
}

impl CyclotomicData {
    pub fn new(d: u32) -> Result<Self, CyclotomicError> {
        if d < 3 {
            return Err(CyclotomicError::InvalidDegree(d));
        }
        let units: Vec<u32> = (1..d).filter(|a| a.gcd(&d) == 1).collect();
        let sigma0 = units.iter().copied().filter(|&a| 2 * a < d).collect();
        Ok(Self { d, units, sigma0 })
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Units mod `d`, ascending.
    pub fn units(&self) -> &[u32] {
        &self.units
    }

    /// The standard CM-type, ascending.
    pub fn sigma0(&self) -> &[u32] {
        &self.sigma0
    }

    /// Euler totient of `d`.
    pub fn totient(&self) -> usize {
        self.units.len()
    }

    pub fn is_unit(&self, a: u32) -> bool {
        a < self.d && a.gcd(&self.d) == 1
    }

    pub fn conjugate(&self, a: u32) -> Result<u32, CyclotomicError> {
        if !self.is_unit(a) {
            return Err(CyclotomicError::InvalidEmbedding { d: self.d, a });
        }
        Ok(self.d - a)
    }

    /// `-a mod d` for any residue, unit or not.
    pub fn negate(&self, a: u32) -> u32 {
        (self.d - a % self.d) % self.d
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        (a + b) % self.d
    }

    pub fn side(&self, a: u32) -> Side {
        let a = a % self.d;
        if a == 0 || 2 * a == self.d {
            Side::Real
        } else if 2 * a < self.d {
            Side::Positive
        } else {
            Side::Negative
        }
    }

    /// Multiplicative order of `zeta^a`, i.e. `d / gcd(a, d)`.
    pub fn order(&self, a: u32) -> u32 {
        self.d / (a % self.d).gcd(&self.d)
    }

    /// Every CM-type of the field: one embedding picked from each conjugate
    /// pair, enumerated in a fixed order. There are `2^(phi(d)/2)` of them.
    pub fn cm_types(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        let pairs = self.sigma0.len();
        (0u64..(1u64 << pairs)).map(move |mask| {
            let mut chosen: Vec<u32> = self
                .sigma0
                .iter()
                .enumerate()
                .map(|(bit, &a)| if mask >> bit & 1 == 0 { a } else { self.d - a })
                .collect();
            chosen.sort_unstable();
            chosen
        })
    }
}

impl fmt::Display for CyclotomicData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(zeta_{})", self.d)
    }
}

pub fn make_cyclotomic(d: u32) -> Result<CyclotomicData, CyclotomicError> {
    CyclotomicData::new(d)
}

pub fn conjugate(field: &CyclotomicData, a: u32) -> Result<u32, CyclotomicError> {
    field.conjugate(a)
}

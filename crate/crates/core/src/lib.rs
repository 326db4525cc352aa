//! Exact eigenspace-graded Hodge data of cyclic covers of projective space
//! branched along hypersurfaces, and the half-twist calculus for Hodge
//! structures with complex multiplication by a cyclotomic field.
//!
//! The algebra in [`hodge`] and [`jacobian`] is generic over `num-traits`
//! scalars; the aliases below fix the exact types everything else uses.

pub mod covers;
pub mod cyclotomic;
pub mod error;
pub mod hodge;
pub mod jacobian;
pub mod report;

pub use cyclotomic::{conjugate, make_cyclotomic, CyclotomicData, Side};
pub use error::{CoverError, CyclotomicError, HodgeError, JacobianError};
pub use hodge::{AbelianSummary, CmHodgeStructure, Dimension, Matching, PairedTensor};

/// Exact rationals.
pub type Rational = num_rational::BigRational;
/// Arbitrary-precision dimensions.
pub type Dim = num_bigint::BigUint;
/// Hodge structures with arbitrary-precision eigenspace dimensions.
pub type HodgeStructure = CmHodgeStructure<Dim>;
/// Weight one summary with arbitrary-precision multiplicities.
pub type Abelian = AbelianSummary<Dim>;
/// Elements of the square-free ring over the rationals.
pub type QSquareFree = jacobian::SquareFreeElement<Rational>;

//! Graded Jacobian rings of Fermat hypersurfaces: monomial counts, Hodge
//! and eigenspace dimensions, the square-free ring of the Fermat cubic and
//! the exact linear algebra on top of it.

pub mod counting;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod squarefree;

pub use counting::{
    count_bounded_monomials, eigenspace_dims, hypersurface_hodge_numbers, primitive_rank,
    shioda_tuple_count, to_u64, MonomialCountQuery, ShiodaTable,
};
pub use linalg::{fraction_free_rank, Echelon};
pub use poly::{verify_cover_parametrization, CoverParametrization, Fraction, RewriteRule, SparsePoly};
pub use quotient::{
    build_w_quotient, claimed_basis, torelli_differential, torelli_differential_rank, GradedQuotient,
    RelationScheme, TorelliComputation,
};
pub use squarefree::{sf_multiply, SquareFreeElement, SquareFreeMonomial};

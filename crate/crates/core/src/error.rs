use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclotomicError {
    #[error("degree {0} is too small: a CM cyclotomic field needs d >= 3")]
    InvalidDegree(u32),
    #[error("residue {a} is not a unit mod {d}")]
    InvalidEmbedding { d: u32, a: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("structures are defined over different fields (d = {0} and d = {1})")]
    FieldMismatch(u32, u32),
    #[error("level of an empty Hodge structure is undefined")]
    UndefinedLevel,
    #[error("Tate twist by {twist} leaves the effective range (weight {weight})")]
    TwistOutOfRange { weight: u32, twist: i32 },
    #[error("no positive half twist: nonzero top pieces outside the CM-type at {offending:?}")]
    NoHalfTwist { offending: Vec<(u32, u32)> },
    #[error("residue {0} has a real eigenvalue; half twists need a CM action")]
    NonCmResidue(u32),
    #[error("expected a weight one structure, got weight {0}")]
    NotWeightOne(u32),
    #[error("weight one structure has odd rank")]
    OddRank,
    #[error("entry ({p}, {a}) lies outside weight {weight} or the residue support")]
    OutOfRange { p: u32, a: u32, weight: u32 },
    #[error("conjugation symmetry fails at ({p}, {a})")]
    Asymmetric { p: u32, a: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JacobianError {
    #[error("unsupported case: {0}")]
    Unsupported(String),
    #[error("too many variables ({0}); square-free monomials are limited to 64")]
    TooManyVariables(u32),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error(transparent)]
    Cyclotomic(#[from] CyclotomicError),
    #[error(transparent)]
    Hodge(#[from] HodgeError),
    #[error(transparent)]
    Jacobian(#[from] JacobianError),
    #[error("invalid cover: {0}")]
    InvalidSpec(String),
    #[error("unsupported case: {0}")]
    Unsupported(String),
}

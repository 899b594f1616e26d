use thiserror::Error;

use crate::action::PermissibilityWitness;

/// Errors raised by the model, group and linear-algebra layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid point space `{id}`: {reason}")]
    InvalidSpace { id: String, reason: String },

    #[error("invalid variable `{name}`: {reason}")]
    InvalidVariable { name: String, reason: String },

    #[error("domain mismatch: `{left}` lives on `{left_domain}`, `{right}` on `{right_domain}`")]
    DomainMismatch {
        left: String,
        left_domain: String,
        right: String,
        right_domain: String,
    },

    #[error("variable family is empty")]
    EmptyFamily,

    #[error("invalid family: {0}")]
    InvalidFamily(String),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("group closure exceeded the cap of {cap} elements")]
    GroupTooLarge { cap: usize },

    #[error("`{variable}` is not permissible: {witness}")]
    NotPermissible {
        variable: String,
        witness: PermissibilityWitness,
    },

    #[error("value spaces differ in size: {left} vs {right}")]
    ValueSpaceMismatch { left: usize, right: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is not Hermitian (max |A - A^H| = {0:e})")]
    NotHermitian(f64),

    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {residual:e})")]
    NoConvergence { sweeps: usize, residual: f64 },

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("base state is the zero vector")]
    ZeroBaseState,

    #[error("coherent states are not injective: elements {first} and {second} collide")]
    NotInjective { first: usize, second: usize },

    #[error("outside orthogonal-coherent scope: states with different values overlap by {0:e}")]
    NonOrthogonalGrouping(f64),

    #[error("coherent states span only {rank} of {dim} dimensions")]
    IncompleteSpan { rank: usize, dim: usize },

    #[error("degenerate basis operator `{0}`: expand against its eigenprojectors instead")]
    DegenerateBasis(String),

    #[error("value {0} is not an eigenvalue of operator `{1}`")]
    UnknownEigenvalue(f64, String),

    #[error("not a unit vector (norm {0})")]
    NotUnitVector(f64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("search budget exhausted: {0}")]
    Budget(String),
}

pub type Result<T> = std::result::Result<T, Error>;

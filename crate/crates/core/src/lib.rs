//! Approximate Lie point symmetries of perturbed evolution equations `F0 + eps*F1 = 0`.
//!
//! The pipeline runs over exact rationals end to end: determining equations are solved by
//! polynomial ansatz and exact nullspaces, the resulting algebra is analysed through its
//! structure constants, and the adjoint action is exponentiated in closed form.

pub mod adjoint;
pub mod detsolve;
pub mod harry_dym;
pub mod invariants;
pub mod jet;
pub mod liealg;
pub mod linalg;
pub mod optimal;
pub mod symbolic;

pub use jet::VectorField;
pub use symbolic::{ex, Expr, Rat, Symbol, SymbolicError};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Symbolic(#[from] SymbolicError),
    #[error("jet overflow: order {order} exceeds {max}")]
    JetOverflow { order: u32, max: u32 },
    #[error("point field coefficients may not contain jet coordinate {0}")]
    JetInCoefficient(String),
    #[error("not an evolution equation: {0}")]
    NotEvolution(String),
    #[error("X0 is not an exact symmetry")]
    NotExactSymmetry,
    #[error("unstable symmetry: {0}")]
    UnstableSymmetry(String),
    #[error("not closed: [v{}, v{}] is outside the span", .0 + 1, .1 + 1)]
    NotClosed(usize, usize),
    #[error("empty basis")]
    EmptyBasis,
    #[error("not solvable")]
    NotSolvable,
    #[error("non-rational spectrum")]
    NonRationalSpectrum,
    #[error("zero vector")]
    ZeroVector,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },
    #[error("characteristic system not in catalog: {0}")]
    NotInCatalog(String),
    #[error("internal consistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! Exact coefficient fields, dense polynomials, rational functions and
//! quadratic extensions.

pub mod factor;
pub mod field;
pub mod funcfield;
pub mod poly;
pub mod qgcd;
pub mod quadratic;
pub mod ratfunc;
pub mod residue;
pub mod roots;
pub mod squarefree;

pub use factor::{factor_over_fp, factor_squarefree_finite};
pub use field::{is_prime_u64, Field, PrimeField, Rationals};
pub use funcfield::FunctionField;
pub use poly::Poly;
pub use quadratic::{QuadElem, QuadExt};
pub use ratfunc::RatFunc;
pub use residue::ResidueField;
pub use squarefree::{squarefree_decompose, SquarefreeDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("operands live over different fields ({left} and {right})")]
    FieldMismatch { left: String, right: String },
    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,
    #[error("division by zero")]
    DivisionByZero,
    #[error("characteristic {0} is not supported; need 0 or a prime p > 3")]
    CharacteristicTooSmall(u64),
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("radicand is a square in the base field; the extension degenerates")]
    SquareRadicand,
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
    #[error("modulus is not irreducible")]
    NotIrreducible,
}

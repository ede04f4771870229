//! Exact arithmetic: coefficient fields, polynomials, rational functions in
//! one variable, closed points of the line, and simple field extensions.

pub mod extension;
pub mod factor;
pub mod field;
pub mod mpoly;
pub mod parse;
pub mod place;
pub mod poly;
pub mod ratfunc;

pub use extension::{ExtensionBase, SimpleExtension};
pub use field::{BaseField, FieldElement, Scalar};
pub use mpoly::MPoly;
pub use place::Place;
pub use poly::Poly;
pub use ratfunc::RationalFunction;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("characteristic {0} is neither 0 nor a supported prime")]
    InvalidCharacteristic(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("the zero function has no order")]
    ZeroInput,
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("polynomial {0} must be monic")]
    NotMonic(String),
    #[error("cannot certify irreducibility: {0}")]
    CannotCertify(String),
    #[error("factorization unsupported: {0}")]
    FactorizationUnsupported(String),
    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },
}

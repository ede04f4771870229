//! Finite commutative algebras, their modules, and the linear-dual model of
//! the dualizing module.

pub mod algebra;
pub mod module;
pub mod trace;

pub use algebra::{FiniteAlgebra, LocalData};
pub use module::{matrix_counterexample, FiniteModule};
pub use trace::{restriction_trace, RestrictionTrace};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArtinianError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("basis products e_{0} e_{1} and e_{1} e_{0} differ")]
    NotCommutative(usize, usize),
    #[error("associativity fails on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("unit does not fix basis vector {0}")]
    BadUnit(usize),
    #[error("algebra is not local with residue field equal to the base field")]
    NotLocal,
    #[error("not a subalgebra: {0}")]
    NotSubalgebra(String),
    #[error("invalid module action: {0}")]
    InvalidAction(String),
}

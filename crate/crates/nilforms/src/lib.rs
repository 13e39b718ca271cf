//! Exact computational algebra for non-degenerate symmetric bilinear forms
//! over finite fields of characteristic 2.
//!
//! The crate classifies a form (normal basis, Witt index, `Ker Q`, `SKer Q`,
//! a-transform), builds the extremal nilpotent spaces of b-symmetric and
//! b-alternating endomorphisms, and checks the expected dimension bounds with
//! independent brute-force oracles at desk scale.
//!
//! Start with [`field::FieldSpec`] and [`form::BilinearForm`], or run the
//! examples:
//!
//! ```bash
//! cargo run --release --example classify
//! cargo run --release --example construct_spaces
//! cargo run --release --example verify_space
//! cargo run --release --example search_small
//! cargo run --release --example atransform
//! cargo run --release --example field_tour
//! ```
//!
//! A thin CLI binary (`nilforms`) exposes the same capabilities as
//! subcommands; see the crate README.

pub mod cli;
pub mod constructions;
pub mod field;
pub mod form;
pub mod io;
pub mod matrix;
pub mod tensors;
pub mod verify;

use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero in {0}")]
    DivisionByZero(&'static str),
    #[error("invalid field modulus: {0}")]
    InvalidModulus(String),
    #[error("element {bits} out of range for GF(2^{degree})")]
    InvalidElement { bits: u64, degree: u8 },
    #[error("matrix shapes do not conform: {0}")]
    ShapeMismatch(String),
    #[error("operands live over different fields")]
    FieldMismatch,
    #[error("operation requires a square matrix ({rows}x{cols} given)")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("gram matrix is not symmetric")]
    NotSymmetric,
    #[error("form is degenerate")]
    Degenerate,
    #[error("matrix is not b-symmetric")]
    NotBSymmetric,
    #[error("matrix does not have the required rank: {0}")]
    WrongRank(String),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("bad input: {0}")]
    BadInput(String),
    #[error("wrong shape: {0}")]
    WrongShape(String),
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

//! The differential graded bialgebra `B(X)` as a canonical-form rewriting engine.
//!
//! `B(X)` is generated by degree-zero letters `x` and degree-one letters `e_x`
//! subject to `x·y = y·(x ◁ y)` and `e_x·y = y·e_{x ◁ y}`. Every monomial has a
//! unique canonical form `a · e_{x_1} ⋯ e_{x_n}` with all degree-zero letters on
//! the left; the engine stores only those.

mod element;
mod engine;

pub use element::{BElement, BMonomial, Combination, Tensor3Element, TensorElement, WordLetter};
pub use engine::{words, WordEngine, DEFAULT_ORBIT_CAP};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("orbit search exceeded the cap of {cap} words")]
    OrbitLimitExceeded { cap: usize },
    #[error("elements belong to different racks")]
    RackMismatch,
    #[error("letter {letter} is not an element of a rack of size {size}")]
    LetterOutOfRange { letter: usize, size: usize },
    #[error("the quandle quotient requires a quandle")]
    NotAQuandle,
}

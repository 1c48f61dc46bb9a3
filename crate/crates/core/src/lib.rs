//! Rack and quandle (co)homology with exact arithmetic.

pub mod complex;
pub mod cube;
pub mod cup;
pub mod homlin;
pub mod rack;
pub mod scalar;
pub mod verify;
pub mod word;

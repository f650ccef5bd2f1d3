//! Exact computations in the category of finite-dimensional vector spaces
//! equipped with a nilpotent endomorphism.
//!
//! Objects are pairs `(X, x)` with `x` nilpotent; morphisms are linear maps
//! intertwining the endomorphisms. Everything runs over exact rationals or a
//! prime field, so every rank, kernel and isomorphism test is decided exactly.

pub mod abelian;
pub mod diagnostics;
pub mod error;
pub mod functors;
pub mod hom;
pub mod jordan;
pub mod json;
pub mod matrix;
pub mod object;
pub mod probes;
pub mod random;
pub mod scalar;

pub use error::{NilError, Result};
pub use matrix::{Mat, Solution, Vector};
pub use object::{compose, direct_sum, is_isomorphism, Biproduct, JordanType, NilMorphism, NilObject};
pub use scalar::{Field, Scalar};

//! Cubes in (equivariant) Burnside categories, their linearizations and
//! totalizations, and the classical, annular and quantum annular Khovanov
//! cubes built from braid closures and PD codes.
//!
//! Conventions (gradings, smoothings, signs) are collected in `docs/conventions.md`.

pub mod algebra;
pub mod burnside;
pub mod cube;
pub mod error;
pub mod khovanov;
pub mod random;

pub use error::{AlgebraError, BurnsideError, CubeError, CubeViolation, KhovanovError};

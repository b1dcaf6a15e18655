//! Exterior power operations on K-theory, realized over exact coefficient
//! rings.
//!
//! The crate builds Dold-Puppe powers of chain complexes and binary
//! complexes, checks the axioms of an assembly of power operations on
//! concrete instances, computes the universal λ-ring polynomials and
//! verifies the composition law in representation rings of finite groups.

pub mod binary;
pub mod equivariant;
pub mod error;
pub mod format;
pub mod complex;
pub mod lambda;
pub mod linalg;
pub mod random;
pub mod simplicial;

pub use error::{Error, Result};

//! Exact computations with graded mixed complexes over semi-free commutative
//! dg algebras: de Rham algebras, closed shifted forms, non-degeneracy of
//! shifted symplectic forms, the trace quadratic form, and (co)tangent
//! complexes of the moduli of pre-symplectic structures at points.

pub mod cdga;
pub mod complexes;
pub mod derham;
pub mod error;
pub mod graded_mixed;
pub mod kernel;
pub mod moduli;
#[cfg(feature = "random")]
pub mod random;
pub mod symplectic;

pub use error::{Error, Result};

//! Semi-free commutative dg algebras and their cotangent data.

mod algebra;
mod modules;
mod presentation;

pub use algebra::{monomial_length, Derivation, GcAlgebra, Generator, Monomial, Poly};
pub use modules::{cotangent_module, sym2_cotangent, tangent_module, SymbolAlgebra};
pub use presentation::{CdgaPresentation, Point, RingMap, ValidationReport};

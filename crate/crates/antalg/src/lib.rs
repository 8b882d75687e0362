//! Exact-arithmetic toolkit for Lie antialgebras: structure-constant
//! algebras, axiom/profile verification, adjoint Lie superalgebras and
//! derivation algebras, the R^{2|1} bivector calculus, and the genus-0
//! tensor-density realization. All computation is over arbitrary-precision
//! rationals.

pub mod adjoint;
pub mod axioms;
pub mod builtins;
pub mod densities;
pub mod error;
pub mod laurent;
pub mod matrix;
pub mod scalar;
pub mod superalg;

pub use error::Error;

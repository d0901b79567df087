//! Exact and numerical tools for Lie bialgebra structures on pseudo-orthogonal
//! and inhomogeneous pseudo-orthogonal algebras, their Manin triples, and
//! factorizations of the Lorentz group.

pub mod bialg;
pub mod error;
pub mod linalg;
pub mod liecore;
pub mod lorentz;
pub mod manin;
pub mod report;
pub mod scalar;
pub mod sofamilies;

pub use error::{Error, Result};
pub use report::{Check, Report};
pub use scalar::{Scalar, Vector};

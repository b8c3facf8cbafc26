//! Exact computations with finite-dimensional algebras with bracket.
//!
//! The crate covers structure constants and their validation, ideals and
//! quotients, trivial-coefficient homology in degrees 0 and 1, central
//! extensions and factor sets, and isoclinism certificates and decisions
//! over prime fields.

pub mod awb;
pub mod catalog;
pub mod error;
pub mod extension;
pub mod homology;
pub mod io;
pub mod isoclinism;
pub mod linalg;
pub mod par;
pub mod search;

pub use awb::{Awb, AwbMorphism, Tensors};
pub use error::{Error, Result};
pub use extension::{CentralExtension, ExtensionMorphism, FactorSet};
pub use linalg::{Field, Matrix, Scalar, Subspace};

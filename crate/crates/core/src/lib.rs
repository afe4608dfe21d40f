//! Exact computations with group rings of S3 and of the amalgam
//! S3 *_{Z/2} S3, their free chain complexes, and the invariants used to
//! certify Poincaré duality complexes built from them.

pub mod bar;
pub mod checks;
pub mod complex;
pub mod corpus;
pub mod error;
pub mod group;
pub mod homology;
pub mod intmat;
pub mod lattice;
pub mod matrix;
pub mod par;
pub mod report;
pub mod ring;
pub mod rmodule;
pub mod tensor;

pub use error::{Error, Result};

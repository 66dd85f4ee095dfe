//! Pimenov algebras, orthogonal Cayley-Klein groups over them, and the FRT
//! quantum deformation of the three-dimensional case together with its dual
//! quantum algebra.

pub mod classical;
pub mod config;
pub mod dual;
pub mod error;
pub mod free;
pub mod frt;
pub mod matrix;
pub mod pimenov;
pub mod report;
pub mod suite;

pub use error::{Error, Result};
pub use matrix::CKMatrix;
pub use pimenov::{ParameterSignature, PimenovElement, Slot};

//! Exact extended affine Hecke algebras for principal-series blocks.
//!
//! The crate covers coefficient arithmetic, based root data with diagram
//! automorphisms, label functions on both sides of the local Langlands
//! correspondence, the Bernstein presentation with its localized model,
//! finite-dimensional modules, graded reduction data and principal-series
//! L-parameters in matrix dual groups.

pub mod bernstein_hecke;
pub mod catalog;
pub mod error;
pub mod exact_rings;
pub mod graded_reduction;
pub mod label_calculus;
pub mod lparam_side;
pub mod module_repr;
pub mod root_datum;

pub use error::{Error, Result};
pub use exact_rings::{Ctx, CycloScalar, IMat, Mat, TorusFunction, TorusPoint, TorusRational, VLaurent, VRational};

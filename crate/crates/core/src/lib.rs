//! Exact computer algebra for determinantal and hypersurface rings:
//! Groebner bases and syzygies, matrix factorizations, graded Ext, and
//! semidualizing-module classification.

pub mod detring;
pub mod error;
pub mod exact_algebra;
pub mod groebner;
pub mod homology;
pub mod matfac_res;
pub mod sdm;

pub use error::{AlgebraError, Result};

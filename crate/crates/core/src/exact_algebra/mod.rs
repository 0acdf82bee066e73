//! Exact arithmetic substrate: fields, monomials, term orders, sparse
//! polynomials and polynomial matrices.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod parse;
pub mod poly;

pub use field::{Field, FieldTag, Fp, Rational, Scalar, F32003};
pub use matrix::{MatrixJson, PolyMatrix};
pub use monomial::{Monomial, TermOrder};
pub use parse::parse_poly;
pub use poly::{PolyRing, Polynomial};

//! Determinantal rings `R_t(X)` and the hypersurfaces `XY - Z^n`: minors,
//! the poset of minors, standard monomials, straightening, Plücker and
//! cofactor identities, and localization at `x_mn`.

pub mod identities;
pub mod localize;
pub mod minor;
pub mod mnn;
pub mod poset;
pub mod ring;

pub use identities::{
    all_plucker_indices, cofactor, cofactor_identity, cofactor_plucker, generic_matrix, plucker_relation,
    tilde_matrix, CofactorIndices, PluckerIndices,
};
pub use localize::{LocalImage, Localizer};
pub use minor::{det, det_of, subsets, MinorSymbol};
pub use mnn::{check_colon, check_nonzerodivisor, m_n, p_generators, ColonCheck};
pub use poset::{enumerate_std_monomials, linear_cmp, poset_leq, psi_monomials, PosetPi, StdMonomial, Straightener};
pub use ring::{matrix_variables, var_name, RingCtx, RingKind};

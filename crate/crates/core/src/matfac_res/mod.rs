//! Matrix factorizations, periodic free resolutions and the presentation
//! matrices of `p^l`.

pub mod complex;
pub mod factorization;
pub mod gamma;
pub mod resolution;

pub use complex::{computed_resolution, extend_by_syzygies, periodic_resolution, GradedComplex, GradedFreeModule};
pub use factorization::{alpha, beta, matfac_det, matfac_hypersurface, MatrixFactorization};
pub use gamma::{
    gamma_matrix, gamma_matrix_inductive, presentation_p_power, psi_exponents, psi_label, ExactnessCertificate,
    PresentationData, PresentationJson,
};
pub use resolution::{hypersurface_augmentation, resolution_hypersurface, resolution_p_power};

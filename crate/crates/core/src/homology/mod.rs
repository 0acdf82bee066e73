//! Hom and tensor of resolutions with a coefficient module, graded pieces,
//! and Ext/Tor by a certified syzygy engine or a truncated linear-algebra
//! engine.

pub mod complexes;
pub mod dual;
pub mod ext;
pub mod target;
pub mod tor;
pub mod truncated;

pub use complexes::{hom_complex, tensor_complex, CoefficientComplex, Variance};
pub use dual::{dual_and_reflexivity, reflexive_hull, DualJson, DualReport};
pub use ext::{
    check_witness, default_bound, ext, ext_syzygy, hom_matches_ring, ExtConfig, ExtEngine, ExtReport, ExtStatus, SyzygyExt,
    WitnessCheck,
};
pub use target::{GradedPieceBasis, PieceCache, TargetKind, TargetModule};
pub use tor::tor;
pub use truncated::{degree_window, piece_homology, truncated_homology, DegreeDim, PieceHomology};

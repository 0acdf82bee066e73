//! Divisor classes, their realizing ideals, and the `n`-semidualizing
//! classifier.

pub mod class;
pub mod classify;
pub mod table;

pub use class::{
    class_add, class_sub, hom_ideal, is_principal, isomorphic_reflexive, minimal_generator_indices, minimize, p_ideal,
    power_is_symbolic, q_ideal, realize, realize_with, verify_difference, verify_sum, ClassGroup, DivisorClass, LawCheck,
    RealizeOptions,
};
pub use classify::{
    annihilator_is_zero, class_resolution, classify_sdm, endomorphisms_are_ring, verdict, ClassifyConfig, Evidence, HomCheck,
    SdmReport, Verdict,
};
pub use table::{closure_evidence, ext_table, ClosureEvidence, ExtTable, TableCaps, TableRow};

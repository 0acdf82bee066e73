//! Groebner bases, normal forms, membership and syzygies over polynomial
//! rings and their quotients.

pub mod engine;
pub mod ideal;
pub mod module;
pub mod ops;

pub use engine::{ModuleOrder, ModuleOrderKind};
pub use ideal::{buchberger, ideal_membership, IdealBasis, IdealMembership};
pub use module::{
    grading_of, membership, syzygies, verify_combination, Membership, MembershipJson, ModuleBasis,
    ModuleOptions, Quotient, SyzOptions, SyzygyResult,
};
pub use ops::{
    colon, colon_ideal, colon_within, ideal_contained, ideal_eq, ideal_power, ideal_product, intersect, lift as lift_ideal,
};

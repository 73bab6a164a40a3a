//! Characteristic-class calculus: symmetric-function expansions of
//! partition-indexed Chern classes, modular combinatorics, Adams and
//! Steenrod actions on Chern data with a degree-by-degree annihilation
//! scheduler, blow-up arrangement combinatorics, and toy Chow rings for
//! end-to-end checks.

pub mod blowup;
pub mod chern;
pub mod error;
pub mod modp;
pub mod mpoly;
pub mod symfunc;
pub mod toychow;
pub mod verify;

pub use chern::{
    annihilate_schedule, apply_schedule, express_cd_via_steenrod, formal_schedule_context,
    lift_class_to_chern, mi_search, steenrod_total_on_class, AdamsCombination, ChernVector,
    CoefficientSpec, FormalPoly, FormalRing, GradedClass, MoveKind, NumTrivialIdeal, Schedule,
    ScheduleMode, SteenrodIdentity,
};
pub use error::{Error, Result};
pub use modp::{
    binom_mod_p, l_power_form, multinom_mod_p, stch_coefficient, stch_decomposable, PrimePower,
};
pub use mpoly::MPoly;
pub use symfunc::{
    char_class_in_roots, elementary_symmetric, express_in_chern, kappa_bruteforce, kappa_formula,
    power_sum, Partition, Regime, SymPoly,
};
pub use toychow::{
    chern_of_line_sum, degree_pairing, is_num_trivial, num_trivial_p_adic,
    steenrod_total_on_ring, ToyChowClass, ToyChowRing,
};

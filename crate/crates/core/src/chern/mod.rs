//! Chern-class operations: formal graded rings, total-class vectors with
//! Whitney/Adams/Steenrod actions, designated numerically-trivial ideals,
//! and the degree-by-degree annihilation scheduler.

pub mod formal;
pub mod ideal;
pub mod schedule;
pub mod steenrod;
pub mod vector;

pub use formal::{CoefficientSpec, FormalPoly, FormalRing, GradedClass};
pub use ideal::NumTrivialIdeal;
pub use schedule::{
    annihilate_schedule, apply_schedule, formal_schedule_context, MoveKind, Schedule,
    ScheduleMode, ScheduleMove, ScheduleReport,
};
pub use steenrod::{
    express_cd_via_steenrod, steenrod_endo_images, steenrod_total_formal,
    steenrod_total_on_class, steenrod_witness, SteenrodIdentity,
};
pub use vector::{
    generic_formal_vector, lift_class_to_chern, mi_search, AdamsCombination, ChernVector,
};

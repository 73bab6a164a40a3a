//! Partitions and the symmetric-function engine.
//!
//! Partition-indexed characteristic classes are defined via Chern roots and
//! expanded in elementary Chern classes; the κ coefficient is available both
//! as a closed formula and as a brute-force expansion oracle.

mod kappa;
mod partition;
mod sympoly;

pub use kappa::{kappa_bruteforce, kappa_formula, multinomial_exact};
pub use partition::Partition;
pub use sympoly::{
    char_class_in_roots, elementary_symmetric, express_in_chern, power_sum,
    substitute_elementary, Regime, SymPoly,
};

//! Worked instances: endomorphisms of symmetric groups, rank ideals of
//! sets and vector spaces, semirings, and a semilattice of groups.

mod clifford;
mod indep;
mod semiring;
mod sn;

pub use clifford::{clifford_counterexample, CliffordVerdict};
pub use indep::{independence_algebra_suite, rank_ideal_semigroup, I1Criterion, IndependenceSuite};
pub use semiring::{
    build_matrix_semiring, check_prop_semiring, check_prop_semiring_plus, decompose_as_sum, matrix_entries,
    matrix_unit, semiring_ideal_closure, ChiOutcome, FiniteSemiring, PropStatus, SemiringFile,
    SemiringPlusVerdict, SemiringVerdict,
};
pub use sn::{
    build_sn_model, cycle_type, sn_eggbox_shape, sn_ideal_analysis, CrossCheck, IdealiserCheck, RealizationCheck,
    RuleCheck, SnEggBoxShape, SnEndModel, SnIdeal, SnIdealAnalysis, UnrealizableLeft,
};

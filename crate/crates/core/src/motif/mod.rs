//! Cohomology tables standing in for effective Chow motives.
//!
//! A pure motive is modelled by its `l`-adic realization, a graded table of
//! finitely generated `Z_(l)`-modules, and a morphism by its action on that
//! table. This is faithful for Grothendieck-group classes, realizations and
//! the functors `E^n, H^n, F^n, G^n`; it says nothing about Chow groups or
//! correspondences themselves.

mod blocks;
mod checks;
mod complex;
mod expr;
mod functors;
mod table;
mod wss;

pub use blocks::{block_map, sum_with_positions};
pub use checks::{
    brauer_finite_exponent_check, euler_identity_check, g_k0_vs_m_check, mod_ln_realization, BrauerReport,
    EulerReport, EulerRow, GvsMReport,
};
pub use complex::{direct_sum, weight_complex_of_complement, MotiveComplex, MotiveMap};
pub use expr::{
    class_of, dimension, is_cellular, lefschetz_specialize, motive_complex_of, point_count, projective_table, pure_dimension,
    GrK0Class, Mode, VarietyExpr,
};
pub use functors::{
    birational_predicate, birational_tags, functor_eval, functor_on_class, motif_registry, registered_motives,
    twist_kill_check, MotifFunctor, TwistKillReport,
};
pub use table::{dual_compact_table, graded_shift, graded_sum, tate_twist, Atom, AtomRegistry, CohTable, PureMotive};
pub use wss::{deligne_graded, gr_w_euler, weight_ss, Coefficients, WeightSpectralSequence};

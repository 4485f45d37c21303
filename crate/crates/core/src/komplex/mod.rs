//! Bounded complexes over the matrix category of free modules, with the
//! stupid weight structure.
//!
//! Objects are [`Complex`]es of `R^n`'s with integer-matrix differentials,
//! morphisms are [`ChainMap`]s, and every homotopy question is answered by
//! an exact linear solve that also produces a witness.

mod complex;
mod functor;
pub mod generate;
mod solve;
mod split;
mod weight;

pub use complex::{cone, ChainMap, Complex, Homotopy, KarObject, MatObject, WeakHomotopyWitness};
pub use functor::{induce_equal_maps, induced_homology_map, pure_functor_h, TermFunctor};
pub use solve::{
    chain_map_basis, find_homotopy, find_weak_homotopy, hom_group_mod_homotopy, homotopy_class, is_contractible,
    is_homotopy_equivalence,
};
pub use split::{kar_rank, split_contractible, Splitting};
pub use weight::{
    certify_reduction, cohomology, gaussian_reduction, in_w_ge, in_w_le, pure_degree, stupid_truncate_ge,
    stupid_truncate_le, weight_complex, weight_decomposition, Reduction, WeightDecomposition,
};

pub fn shift(c: &Complex, n: i32) -> Complex {
    c.shift(n)
}

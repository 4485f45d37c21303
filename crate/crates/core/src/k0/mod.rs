//! Grothendieck-group values of additive functors on weight complexes.
//!
//! Classes live in [`K0AddClass`]; `K_0` of the triangulated side is never
//! presented, only probed through the Euler map and equivalence witnesses.

mod class;
mod euler;
mod product;
mod registry;

pub use class::{Base, Generator, K0AddClass};
pub use euler::{
    alternating_class, f_k0, pure_object_shortcut, section_isomorphism_check, semisimple_formula,
    triangle_additivity_check, PureShortcut, SectionReport,
};
pub use product::{k0_product, GradedKunneth, ModuleTensor, TensorRule};
pub use registry::{FunctorFn, FunctorRegistry};

//! Kernel-mod-image computations for maps of canonical modules.

use num_bigint::BigInt;

use super::lattice::{kernel_basis, Subquotient};
use super::matrix::IntMatrix;
use super::module::{FgModule, ModuleMap};
use crate::error::{Error, Result};

/// `ker(d_out) / im(d_in)` as a subquotient of the generator lattice of the
/// middle module, so that cycles can be mapped to canonical coordinates.
#[derive(Clone, Debug)]
pub struct Homology {
    middle: FgModule,
    quotient: Subquotient,
}

impl Homology {
    pub fn new(d_in: &ModuleMap, d_out: &ModuleMap) -> Result<Self> {
        let middle = d_in.target().clone();
        if d_out.source() != &middle {
            return Err(Error::DimensionMismatch(format!(
                "homology at {} but outgoing map starts at {}",
                middle,
                d_out.source()
            )));
        }
        let comp = d_in.then(d_out)?;
        if !comp.is_zero() {
            return Err(Error::CompositionNonzero);
        }
        let g = middle.num_generators();

        // Preimage of the target relation lattice: x with F x in R_N.
        let rel_n = d_out.target().relation_matrix();
        let lifted = d_out.matrix().hstack(&-&rel_n);
        let k = kernel_basis(&lifted);
        let rows: Vec<usize> = (0..g).collect();
        let all_cols: Vec<usize> = (0..k.cols()).collect();
        let cycles = k.select(&rows, &all_cols);

        let boundaries = d_in.matrix().hstack(&middle.relation_matrix());
        let cycles = cycles.hstack(&middle.relation_matrix());
        let quotient = Subquotient::new(&cycles, &boundaries)?;
        Ok(Self { middle, quotient })
    }

    pub fn module(&self) -> &FgModule {
        self.quotient.module()
    }

    pub fn middle(&self) -> &FgModule {
        &self.middle
    }

    /// Canonical coordinates of a cycle given on the middle module's
    /// generators; `None` if it is not a cycle.
    pub fn class_of(&self, cycle: &[BigInt]) -> Option<Vec<BigInt>> {
        self.quotient.coordinates(cycle)
    }

    /// Cycle representatives of the canonical generators.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.quotient.generators()
    }

    /// Map induced on homology by a map of middle modules `f`, expressed in
    /// canonical coordinates of `self` and `target`.
    pub fn induced_map(&self, f: &IntMatrix, target: &Homology) -> Result<ModuleMap> {
        let h_src = self.module().clone();
        let h_tgt = target.module().clone();
        let mut m = IntMatrix::zeros(h_tgt.num_generators(), h_src.num_generators());
        for (j, z) in self.generators().iter().enumerate() {
            let image = f.mul_vec(z);
            let c = target.class_of(&image).ok_or_else(|| {
                Error::IncompatibleMap("chain map does not send cycles to cycles".into())
            })?;
            for (i, x) in c.into_iter().enumerate() {
                m[(i, j)] = x;
            }
        }
        ModuleMap::new(h_src, h_tgt, m)
    }
}

/// `ker(d_out) / im(d_in)` in canonical form.
pub fn homology(d_in: &ModuleMap, d_out: &ModuleMap) -> Result<FgModule> {
    Ok(Homology::new(d_in, d_out)?.module().clone())
}

pub fn kernel(f: &ModuleMap) -> Result<FgModule> {
    let zero_in = ModuleMap::zero(FgModule::zero(), f.source().clone());
    homology(&zero_in, f)
}

pub fn image(f: &ModuleMap) -> Result<FgModule> {
    let rel = f.target().relation_matrix();
    let sq = Subquotient::new(&f.matrix().hstack(&rel), &rel)?;
    Ok(sq.module().clone())
}

pub fn cokernel_of_map(f: &ModuleMap) -> Result<FgModule> {
    let zero_out = ModuleMap::zero(f.target().clone(), FgModule::zero());
    homology(f, &zero_out)
}

/// `Z^rows / (column span of A)`.
pub fn cokernel(a: &IntMatrix) -> FgModule {
    let snf = super::snf::smith_normal_form(a);
    let orders = snf.invariant_factors();
    FgModule::from_big_cyclic(a.rows() - snf.rank(), &orders)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::matrix::mat;

    fn free_map(m: IntMatrix) -> ModuleMap {
        ModuleMap::new(FgModule::free(m.cols()), FgModule::free(m.rows()), m).unwrap()
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&mat(&[[0]])), FgModule::free(1));
        assert_eq!(cokernel(&mat(&[[49]])), FgModule::cyclic(49));
        assert_eq!(cokernel(&mat(&[[2, 4], [6, 8]])), "Z/2 + Z/4".parse().unwrap());
        assert_eq!(cokernel(&IntMatrix::zeros(3, 0)), FgModule::free(3));
    }

    #[test]
    fn zero_maps_give_the_module() {
        let m: FgModule = "Z^2 + Z/6".parse().unwrap();
        let d_in = ModuleMap::zero(FgModule::zero(), m.clone());
        let d_out = ModuleMap::zero(m.clone(), FgModule::zero());
        assert_eq!(homology(&d_in, &d_out).unwrap(), m);
    }

    #[test]
    fn multiplication_by_ell() {
        let d_in = free_map(mat(&[[7]]));
        let d_out = free_map(IntMatrix::zeros(0, 1));
        assert_eq!(homology(&d_in, &d_out).unwrap(), FgModule::cyclic(7));
    }

    #[test]
    fn diagonal_then_difference_is_exact() {
        let d_in = free_map(mat(&[[1], [1]]));
        let d_out = free_map(mat(&[[1, -1]]));
        assert!(homology(&d_in, &d_out).unwrap().is_zero());
    }

    #[test]
    fn nonzero_composite_is_rejected() {
        let d_in = free_map(mat(&[[1], [1]]));
        let d_out = free_map(mat(&[[1, 1]]));
        assert!(matches!(homology(&d_in, &d_out), Err(Error::CompositionNonzero)));
    }

    #[test]
    fn torsion_modules() {
        // Z/4 --2--> Z/4 --2--> Z/4 is exact in the middle.
        let z4 = FgModule::cyclic(4);
        let two = ModuleMap::new(z4.clone(), z4.clone(), mat(&[[2]])).unwrap();
        assert!(homology(&two, &two).unwrap().is_zero());
        assert_eq!(kernel(&two).unwrap(), FgModule::cyclic(2));
        assert_eq!(image(&two).unwrap(), FgModule::cyclic(2));
        assert_eq!(cokernel_of_map(&two).unwrap(), FgModule::cyclic(2));
        // Z --1--> Z/4 is onto.
        let proj = ModuleMap::new(FgModule::free(1), z4, mat(&[[1]])).unwrap();
        assert!(cokernel_of_map(&proj).unwrap().is_zero());
        assert_eq!(kernel(&proj).unwrap(), FgModule::free(1));
    }
}

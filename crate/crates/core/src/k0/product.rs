use super::class::{Generator, K0AddClass};
use crate::error::{Error, Result};
use crate::zmod::{kunneth, FgModule, Graded};

/// A tensor bifunctor on the heart, described on generators.
pub trait TensorRule: Send + Sync {
    fn unit(&self) -> K0AddClass;
    fn multiply(&self, a: &Generator, b: &Generator) -> K0AddClass;
}

/// Ungraded keys: rank product on free modules, `(x)` of modules otherwise.
#[derive(Clone, Copy, Debug, Default)]
pub struct ModuleTensor;

impl TensorRule for ModuleTensor {
    fn unit(&self) -> K0AddClass {
        K0AddClass::free(1)
    }

    fn multiply(&self, a: &Generator, b: &Generator) -> K0AddClass {
        K0AddClass::of_module(&a.module().tensor(&b.module()), None)
    }
}

/// Graded keys, multiplied by the Kunneth formula of cohomology tables.
#[derive(Clone, Copy, Debug, Default)]
pub struct GradedKunneth;

fn single(g: &Generator) -> Graded {
    std::iter::once((g.degree.unwrap_or(0), g.module())).collect()
}

impl TensorRule for GradedKunneth {
    fn unit(&self) -> K0AddClass {
        K0AddClass::generator(Generator::FREE.in_degree(0))
    }

    fn multiply(&self, a: &Generator, b: &Generator) -> K0AddClass {
        let table: Graded = kunneth(&single(a), &single(b)).into_iter().filter(|(_, m): &(i32, FgModule)| !m.is_zero()).collect();
        K0AddClass::of_graded(&table, None)
    }
}

/// Bilinear extension of `rule` to classes.
pub fn k0_product(x: &K0AddClass, y: &K0AddClass, rule: Option<&dyn TensorRule>) -> Result<K0AddClass> {
    let rule = rule.ok_or(Error::NoTensorRegistered)?;
    let mut out = K0AddClass::zero();
    for (a, u) in x.terms() {
        for (b, v) in y.terms() {
            out = &out + &rule.multiply(a, b).scale(u * v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_and_ranks() {
        let x: K0AddClass = "+2[Z] -1[Z/4] +3[Z/9]".parse().unwrap();
        let r = ModuleTensor;
        assert_eq!(k0_product(&x, &r.unit(), Some(&r)).unwrap(), x);
        let p = k0_product(&K0AddClass::free(3), &K0AddClass::free(5), Some(&r)).unwrap();
        assert_eq!(p, K0AddClass::free(15));
        assert!(matches!(k0_product(&x, &x, None), Err(Error::NoTensorRegistered)));
    }

    #[test]
    fn coprime_torsion_dies() {
        let x: K0AddClass = "+1[Z/4]".parse().unwrap();
        let y: K0AddClass = "+1[Z/3]".parse().unwrap();
        assert!(k0_product(&x, &y, Some(&ModuleTensor)).unwrap().is_zero());
        let z: K0AddClass = "+1[Z/8]".parse().unwrap();
        assert_eq!(k0_product(&x, &z, Some(&ModuleTensor)).unwrap(), x);
    }

    #[test]
    fn lefschetz_square() {
        let l: K0AddClass = "+1[H2:Z]".parse().unwrap();
        let l2 = k0_product(&l, &l, Some(&GradedKunneth)).unwrap();
        assert_eq!(l2.to_string(), "+1[H4:Z]");
        let t: K0AddClass = "+1[H2:Z/2]".parse().unwrap();
        assert_eq!(k0_product(&t, &t, Some(&GradedKunneth)).unwrap().to_string(), "+1[H3:Z/2] +1[H4:Z/2]");
    }
}

use serde::Serialize;

use super::class::K0AddClass;
use super::registry::FunctorRegistry;
use crate::error::{Error, Result};
use crate::komplex::{cone, pure_degree, pure_functor_h, weight_complex, ChainMap, Complex, MatObject, TermFunctor};
use crate::zmod::{FgModule, Ring};

fn sign(i: i32) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// `sum_i (-1)^i [F(M^i)]` over any heart, given the terms by degree.
pub fn alternating_class<O>(
    terms: impl IntoIterator<Item = (i32, O)>,
    reg: &FunctorRegistry<O>,
    name: &str,
) -> Result<K0AddClass> {
    let f = reg.get(name)?;
    Ok(terms.into_iter().map(|(i, o)| K0AddClass::of_module(&f(&o), None).scale(sign(i))).sum())
}

/// `F_{K_0}(C) = sum_i (-1)^i [F(C^i)]`.
pub fn f_k0(c: &Complex, reg: &FunctorRegistry<MatObject>, name: &str) -> Result<K0AddClass> {
    alternating_class(c.degrees().map(|i| (i, c.term(i))), reg, name)
}

/// `F_{K_0}(Cone f) = F_{K_0}(B) - F_{K_0}(A)`.
pub fn triangle_additivity_check(f: &ChainMap, reg: &FunctorRegistry<MatObject>, name: &str) -> Result<bool> {
    let lhs = f_k0(&cone(f), reg, name)?;
    let rhs = &f_k0(f.target(), reg, name)? - &f_k0(f.source(), reg, name)?;
    Ok(lhs == rhs)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SectionReport {
    /// `(rank, class after embedding and F = id)`.
    pub embeddings: Vec<(usize, K0AddClass)>,
    pub embedding_failures: usize,
    pub pairs_checked: usize,
    pub invariance_failures: usize,
}

impl SectionReport {
    pub fn passed(&self) -> bool {
        self.embedding_failures == 0 && self.invariance_failures == 0
    }
}

/// Embeds each rank as a one-term complex and reads it back through
/// `F = id`, then checks that each pair of equivalent complexes has equal
/// classes. Over `Z/m` the expected value is `r [Z/m]`.
pub fn section_isomorphism_check(ring: Ring, ranks: &[usize], equivalent_pairs: &[(Complex, Complex)]) -> SectionReport {
    let reg = FunctorRegistry::matrix(ring);
    let unit = K0AddClass::of_module(&TermFunctor::Identity.apply_object(ring, 1), None);
    let mut rep = SectionReport::default();
    for &r in ranks {
        let class = f_k0(&Complex::one_term(ring, 0, r), &reg, "id").expect("id is registered");
        if class != unit.scale(r as i64) {
            rep.embedding_failures += 1;
        }
        rep.embeddings.push((r, class));
    }
    for (c, d) in equivalent_pairs {
        rep.pairs_checked += 1;
        if f_k0(c, &reg, "id").ok() != f_k0(d, &reg, "id").ok() {
            rep.invariance_failures += 1;
        }
    }
    rep
}

/// Over a field: the alternating sum of term dimensions against the
/// alternating sum of homology dimensions, both as multiples of `[Q]`.
pub fn semisimple_formula(c: &Complex) -> Result<(K0AddClass, K0AddClass)> {
    let a = TermFunctor::Rational;
    let lhs: K0AddClass =
        c.degrees().map(|i| K0AddClass::of_module(&a.apply_object(c.ring(), c.rank(i)), None).scale(sign(i))).sum();
    let rhs = c
        .degrees()
        .map(|i| pure_functor_h(a, c, -i).map(|h| K0AddClass::of_module(&h, None).scale(sign(i))))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .sum();
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PureShortcut {
    pub degree: i32,
    /// `(-1)^j [H^j(A(C))]`.
    pub value: K0AddClass,
    pub f_k0: K0AddClass,
}

impl PureShortcut {
    pub fn agrees(&self) -> bool {
        self.value == self.f_k0
    }
}

/// For `C` homotopy equivalent to a one-term complex in degree `j`, the
/// class `(-1)^j [H^j(A(C))]` next to the alternating term sum.
pub fn pure_object_shortcut(c: &Complex, a: TermFunctor) -> Result<PureShortcut> {
    // A contractible complex is pure of every weight; report it at degree 0.
    let j = if weight_complex(c).is_zero() { 0 } else { pure_degree(c).ok_or(Error::NotPure)? };
    let h: FgModule = pure_functor_h(a, c, -j)?;
    let value = K0AddClass::of_module(&h, None).scale(sign(j));
    let f: K0AddClass = c.degrees().map(|i| K0AddClass::of_module(&a.apply_object(c.ring(), c.rank(i)), None).scale(sign(i))).sum();
    Ok(PureShortcut { degree: j, value, f_k0: f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zmod::mat;

    fn reg() -> FunctorRegistry<MatObject> {
        FunctorRegistry::matrix(Ring::Integers)
    }

    #[test]
    fn trivial_values() {
        let r = reg();
        assert!(f_k0(&Complex::zero(Ring::Integers), &r, "id").unwrap().is_zero());
        let m = Complex::one_term(Ring::Integers, 0, 3);
        assert_eq!(f_k0(&m, &r, "tensor-mod-4").unwrap().to_string(), "+3[Z/4]");
        let k = cone(&ChainMap::identity(&m));
        for name in ["id", "rational", "tensor-mod-6"] {
            assert!(f_k0(&k, &r, name).unwrap().is_zero());
        }
        assert!(matches!(f_k0(&m, &r, "nope"), Err(Error::UnregisteredFunctor(_))));
    }

    #[test]
    fn triangle_examples() {
        let r = reg();
        let a = Complex::two_term(Ring::Integers, 0, mat(&[[2]]));
        let b = Complex::one_term(Ring::Integers, 1, 2);
        assert!(triangle_additivity_check(&ChainMap::zero(&a, &b), &r, "id").unwrap());
        assert!(triangle_additivity_check(&ChainMap::identity(&a), &r, "tensor-mod-2").unwrap());
    }

    #[test]
    fn semisimple_examples() {
        let c = Complex::two_term(Ring::Rationals, 0, mat(&[[1]]));
        let (l, r) = semisimple_formula(&c).unwrap();
        assert!(l.is_zero() && r.is_zero());
        let c = Complex::one_term(Ring::Rationals, 0, 2);
        assert_eq!(semisimple_formula(&c).unwrap(), (K0AddClass::free(2), K0AddClass::free(2)));
    }

    #[test]
    fn shortcut_examples() {
        let m0 = Complex::one_term(Ring::Integers, 0, 2);
        let s = pure_object_shortcut(&m0, TermFunctor::Identity).unwrap();
        assert_eq!((s.degree, s.value.clone()), (0, K0AddClass::free(2)));
        assert!(s.agrees());
        let m1 = Complex::one_term(Ring::Integers, 1, 2);
        let k = cone(&ChainMap::identity(&Complex::one_term(Ring::Integers, 4, 1)));
        let s = pure_object_shortcut(&m1.direct_sum(&k), TermFunctor::TensorMod(3)).unwrap();
        assert_eq!(s.value.to_string(), "-2[Z/3]");
        assert!(s.agrees());
        let t = Complex::two_term(Ring::Integers, 0, mat(&[[2]]));
        assert!(matches!(pure_object_shortcut(&t, TermFunctor::Identity), Err(Error::NotPure)));
    }

    #[test]
    fn section_trivial() {
        let z = Complex::one_term(Ring::Integers, 0, 1);
        let c = Complex::two_term(Ring::Integers, 2, mat(&[[3]]));
        let padded = c.direct_sum(&cone(&ChainMap::identity(&z)).shift(5));
        let rep = section_isomorphism_check(Ring::Integers, &[0, 1, 4], &[(c, padded)]);
        assert!(rep.passed());
        assert_eq!(rep.embeddings[2].1, K0AddClass::free(4));
    }
}

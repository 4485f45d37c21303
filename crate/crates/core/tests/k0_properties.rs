use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use weightk_core::k0::{
    f_k0, k0_product, pure_object_shortcut, section_isomorphism_check, semisimple_formula, triangle_additivity_check,
    FunctorRegistry, Generator, GradedKunneth, K0AddClass, ModuleTensor, TensorRule,
};
use weightk_core::komplex::generate::{pad_with_cone, random_chain_map, random_complex, random_equivalence, GenConfig};
use weightk_core::komplex::{cone, ChainMap, Complex, TermFunctor};
use weightk_core::zmod::{IntMatrix, Ring};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cfg() -> GenConfig {
    GenConfig { max_rank: 4, max_len: 5 }
}

/// Rank of an integer matrix by fraction-free elimination over `i128`.
fn rank_oracle(m: &IntMatrix) -> usize {
    let mut a: Vec<Vec<i128>> =
        (0..m.rows()).map(|r| (0..m.cols()).map(|c| i128::try_from(&m[(r, c)]).unwrap()).collect()).collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| a[r][c] != 0) else { continue };
        a.swap(rank, p);
        for r in 0..rows {
            if r != rank && a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                let g = gcd(x, y);
                for k in 0..cols {
                    a[r][k] = a[r][k] * (x / g) - a[rank][k] * (y / g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn random_class<R: Rng>(rng: &mut R, graded: bool) -> K0AddClass {
    let mut out = K0AddClass::zero();
    for _ in 0..rng.gen_range(0..4) {
        let base = match rng.gen_range(0..4) {
            0 | 1 => Generator::FREE,
            2 => Generator::cyclic(2, rng.gen_range(1..3)),
            _ => Generator::cyclic(3, 1),
        };
        let g = if graded { base.in_degree(rng.gen_range(0..5)) } else { base };
        out = out.plus(g, rng.gen_range(-3..=3));
    }
    out
}

#[test]
fn f_k0_examples() {
    let reg = FunctorRegistry::matrix(Ring::Integers);
    let m = Complex::one_term(Ring::Integers, 0, 4);
    assert_eq!(f_k0(&m, &reg, "id").unwrap(), K0AddClass::free(4));
    let rep = section_isomorphism_check(Ring::Integers, &[0, 1, 2, 3, 4], &[]);
    assert!(rep.passed());
}

#[test]
fn rank_product_example() {
    let p = k0_product(&K0AddClass::free(2), &K0AddClass::free(3), Some(&ModuleTensor)).unwrap();
    assert_eq!(p.to_string(), "+6[Z]");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn f_k0_is_additive_on_direct_sums(seed in any::<u64>()) {
        let mut r = rng(seed);
        let reg = FunctorRegistry::matrix(Ring::Integers);
        let (c, d) = (random_complex(&mut r, Ring::Integers, cfg()), random_complex(&mut r, Ring::Integers, cfg()));
        for name in ["id", "rational", "tensor-mod-2", "tensor-mod-6"] {
            let sum = f_k0(&c.direct_sum(&d), &reg, name).unwrap();
            prop_assert_eq!(sum, &f_k0(&c, &reg, name).unwrap() + &f_k0(&d, &reg, name).unwrap());
        }
    }

    #[test]
    fn f_k0_is_invariant_under_equivalences(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in [Ring::Integers, Ring::Modulo(4), Ring::Rationals] {
            let reg = FunctorRegistry::matrix(ring);
            let (c, d, _) = random_equivalence(&mut r, ring, cfg());
            let names: Vec<String> = reg.names().map(str::to_string).collect();
            for name in &names {
                prop_assert_eq!(f_k0(&c, &reg, name).unwrap(), f_k0(&d, &reg, name).unwrap(), "{} over {}", name, ring);
            }
        }
    }

    #[test]
    fn triangles_are_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        let reg = FunctorRegistry::matrix(Ring::Integers);
        let a = random_complex(&mut r, Ring::Integers, cfg());
        let b = random_complex(&mut r, Ring::Integers, cfg());
        let f = random_chain_map(&mut r, &a, &b);
        for name in ["id", "tensor-mod-4", "rational"] {
            prop_assert!(triangle_additivity_check(&f, &reg, name).unwrap());
        }
        prop_assert!(triangle_additivity_check(&ChainMap::identity(&a), &reg, "id").unwrap());
    }

    #[test]
    fn section_holds_on_generated_pairs(seed in any::<u64>(), k in -3i32..=3) {
        let mut r = rng(seed);
        let (c, d, _) = random_equivalence(&mut r, Ring::Integers, cfg());
        let z = Complex::one_term(Ring::Integers, 0, 1);
        let padded = c.direct_sum(&cone(&ChainMap::identity(&z)).shift(k));
        let rep = section_isomorphism_check(Ring::Integers, &[0, 1, 2, 3, 4], &[(c.clone(), d), (c, padded)]);
        prop_assert!(rep.passed());
    }

    #[test]
    fn semisimple_formula_holds_over_q(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, Ring::Rationals, GenConfig { max_rank: 5, max_len: 5 });
        let (lhs, rhs) = semisimple_formula(&c).unwrap();
        prop_assert_eq!(&lhs, &rhs);
        let betti: i64 = c
            .degrees()
            .map(|i| {
                let h = c.rank(i) - rank_oracle(&c.diff(i)) - rank_oracle(&c.diff(i - 1));
                if i.rem_euclid(2) == 0 { h as i64 } else { -(h as i64) }
            })
            .sum();
        prop_assert_eq!(rhs, K0AddClass::free(betti));
    }

    #[test]
    fn pure_shortcut_agrees_after_stripping(seed in any::<u64>(), j in -3i32..=3, n in 0usize..4) {
        let mut r = rng(seed);
        let m = Complex::one_term(Ring::Integers, j, n);
        let padded = pad_with_cone(&mut r, &m);
        for a in [TermFunctor::Identity, TermFunctor::TensorMod(2), TermFunctor::TensorMod(9), TermFunctor::Rational] {
            let bare = pure_object_shortcut(&m, a).unwrap();
            let s = pure_object_shortcut(&padded, a).unwrap();
            prop_assert!(s.agrees());
            if n > 0 {
                prop_assert_eq!(s.degree, j);
            }
            prop_assert_eq!(s.value, bare.value);
        }
    }

    #[test]
    fn products_are_associative_and_commutative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let rules: [(&dyn TensorRule, bool); 2] = [(&ModuleTensor, false), (&GradedKunneth, true)];
        for (rule, graded) in rules {
            let (x, y, z) = (random_class(&mut r, graded), random_class(&mut r, graded), random_class(&mut r, graded));
            let p = |a: &K0AddClass, b: &K0AddClass| k0_product(a, b, Some(rule)).unwrap();
            prop_assert_eq!(p(&x, &y), p(&y, &x));
            prop_assert_eq!(p(&p(&x, &y), &z), p(&x, &p(&y, &z)));
            prop_assert_eq!(p(&x, &rule.unit()), x.clone());
            prop_assert_eq!(p(&x, &(&y + &z)), &p(&x, &y) + &p(&x, &z));
        }
    }
}

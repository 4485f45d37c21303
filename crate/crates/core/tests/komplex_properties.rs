use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use weightk_core::komplex::generate::{
    pad_with_cone, random_chain_map, random_complex, random_contractible, random_equivalence, random_null_homotopic,
    random_weak_pair, weak_not_strong_fixture, GenConfig,
};
use weightk_core::komplex::{
    cohomology, cone, find_homotopy, find_weak_homotopy, hom_group_mod_homotopy, in_w_ge, in_w_le,
    induce_equal_maps, is_contractible, is_homotopy_equivalence, kar_rank, pure_functor_h, split_contractible,
    stupid_truncate_ge, stupid_truncate_le, weight_complex, weight_decomposition, gaussian_reduction,
    certify_reduction, ChainMap, Complex, TermFunctor,
};
use weightk_core::zmod::{homology, mat, FgModule, IntMatrix, ModuleMap, Ring};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small() -> GenConfig {
    GenConfig { max_rank: 3, max_len: 4 }
}

fn d_squared_vanishes(c: &Complex) -> bool {
    c.degrees().all(|i| c.ring().is_zero_matrix(&(&c.diff(i + 1) * &c.diff(i))))
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// All integer vectors of length `n` with entries in `[-b, b]`.
fn box_vectors(n: usize, b: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-b..=b).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

/// Degreewise matrices for `(rows, cols)` shapes, filled from `v`.
fn fill(shapes: &[(i32, usize, usize)], v: &[i64]) -> BTreeMap<i32, IntMatrix> {
    let mut k = 0;
    shapes
        .iter()
        .map(|&(deg, r, c)| {
            let data = v[k..k + r * c].iter().map(|&x| BigInt::from(x)).collect();
            k += r * c;
            (deg, IntMatrix::from_vec(r, c, data))
        })
        .collect()
}

/// Number of homotopy classes among chain maps with entries in `[-b, b]`,
/// found by enumerating both chain maps and homotopies directly.
fn brute_force_class_count(c: &Complex, d: &Complex, b: i64) -> usize {
    let degs: Vec<i32> = {
        let (ca, cb) = c.support().unwrap();
        let (da, db) = d.support().unwrap();
        (ca.min(da) - 1..=cb.max(db) + 1).collect()
    };
    let map_shapes: Vec<(i32, usize, usize)> = degs.iter().map(|&i| (i, d.rank(i), c.rank(i))).collect();
    let h_shapes: Vec<(i32, usize, usize)> = degs.iter().map(|&i| (i, d.rank(i - 1), c.rank(i))).collect();
    let n_map: usize = map_shapes.iter().map(|s| s.1 * s.2).sum();
    let n_h: usize = h_shapes.iter().map(|s| s.1 * s.2).sum();
    let get = |m: &BTreeMap<i32, IntMatrix>, i: i32, r: usize, cc: usize| m.get(&i).cloned().unwrap_or(IntMatrix::zeros(r, cc));

    let chain_maps: Vec<BTreeMap<i32, IntMatrix>> = box_vectors(n_map, b)
        .into_iter()
        .map(|v| fill(&map_shapes, &v))
        .filter(|f| {
            degs.iter().all(|&i| {
                let lhs = &d.diff(i) * &get(f, i, d.rank(i), c.rank(i));
                let rhs = &get(f, i + 1, d.rank(i + 1), c.rank(i + 1)) * &c.diff(i);
                lhs == rhs
            })
        })
        .collect();
    let null: Vec<BTreeMap<i32, IntMatrix>> = box_vectors(n_h, 2 * b)
        .into_iter()
        .map(|v| {
            let h = fill(&h_shapes, &v);
            degs.iter()
                .map(|&i| {
                    let a = &d.diff(i - 1) * &get(&h, i, d.rank(i - 1), c.rank(i));
                    let e = &get(&h, i + 1, d.rank(i), c.rank(i + 1)) * &c.diff(i);
                    (i, &a + &e)
                })
                .collect()
        })
        .collect();
    let mut reps: Vec<&BTreeMap<i32, IntMatrix>> = Vec::new();
    for f in &chain_maps {
        let known = reps.iter().any(|g| {
            let diff: BTreeMap<i32, IntMatrix> = degs.iter().map(|&i| (i, &f[&i] - &g[&i])).collect();
            null.contains(&diff)
        });
        if !known {
            reps.push(f);
        }
    }
    reps.len()
}

/// Cohomology from ranks and elementary divisors only: free part by
/// rank-nullity, torsion from the divisors of the incoming differential.
fn betti_oracle(c: &Complex, i: i32) -> usize {
    let rank = |m: &IntMatrix| weightk_core::zmod::rank(m);
    c.rank(i) - rank(&c.diff(i)) - rank(&c.diff(i - 1))
}

// ---------------------------------------------------------------------------
// Frozen examples
// ---------------------------------------------------------------------------

#[test]
fn cone_of_times_two_has_two_torsion() {
    let z = Complex::one_term(Ring::Integers, 0, 1);
    let two = ChainMap::new(z.clone(), z.clone(), [(0, mat(&[[2]]))].into_iter().collect()).unwrap();
    let k = cone(&two);
    let oracle = homology(
        &ModuleMap::new(FgModule::free(1), FgModule::free(1), mat(&[[2]])).unwrap(),
        &ModuleMap::zero(FgModule::free(1), FgModule::zero()),
    )
    .unwrap();
    assert_eq!(cohomology(&k, 0), oracle);
    assert_eq!(oracle, FgModule::cyclic(2));
    assert!(cohomology(&k, -1).is_zero());
}

#[test]
fn hom_of_times_two_complexes_matches_enumeration() {
    let c = Complex::two_term(Ring::Integers, 0, mat(&[[2]]));
    let computed = hom_group_mod_homotopy(&c, &c).unwrap();
    assert_eq!(computed, FgModule::cyclic(2));
    assert_eq!(brute_force_class_count(&c, &c, 3) as u128, computed.order().unwrap());
    let d = Complex::two_term(Ring::Integers, 0, mat(&[[3]]));
    let c1 = Complex::one_term(Ring::Integers, 1, 1);
    for (x, y) in [(&c1, &d), (&d, &c1), (&c, &d)] {
        let h = hom_group_mod_homotopy(x, y).unwrap();
        assert_eq!(brute_force_class_count(x, y, 3) as u128, h.order().unwrap(), "{x:?} -> {y:?}");
    }
}

#[test]
fn tensor_mod_ell_homology_in_both_degrees() {
    let ell = 3;
    let c = Complex::two_term(Ring::Integers, 0, mat(&[[ell]]));
    for q in [0, -1] {
        let termwise = FgModule::cyclic(3);
        assert_eq!(pure_functor_h(TermFunctor::TensorMod(3), &c, q).unwrap(), termwise);
    }
}

#[test]
fn weak_homotopy_fixture_over_z_mod_4() {
    let (m1, m2) = weak_not_strong_fixture();
    assert!(find_homotopy(&m1, &m2).is_none());
    let w = find_weak_homotopy(&m1, &m2).unwrap();
    assert!(w.certifies(&m1, &m2));
    for a in [TermFunctor::Identity, TermFunctor::TensorMod(2), TermFunctor::Rational] {
        assert!(induce_equal_maps(a, &m1, &m2).unwrap());
    }
}

#[test]
fn contractible_split_of_two_cones() {
    let x = Complex::one_term(Ring::Integers, 0, 1);
    let k = cone(&ChainMap::identity(&x));
    let sp = split_contractible(&k.direct_sum(&k.shift(2))).unwrap();
    assert_eq!(sp.pieces.len(), 2);
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_keep_d_squared_zero(seed in any::<u64>(), n in -3i32..=3) {
        let mut r = rng(seed);
        for ring in [Ring::Integers, Ring::Modulo(4), Ring::Modulo(3)] {
            let a = random_complex(&mut r, ring, small());
            let b = random_complex(&mut r, ring, small());
            let f = random_chain_map(&mut r, &a, &b);
            prop_assert!(d_squared_vanishes(&a));
            prop_assert!(d_squared_vanishes(&cone(&f)));
            prop_assert!(d_squared_vanishes(&a.shift(n)));
            prop_assert!(d_squared_vanishes(&stupid_truncate_le(&a, n)));
            prop_assert!(d_squared_vanishes(&stupid_truncate_ge(&a, n)));
        }
    }

    #[test]
    fn euler_characteristic_is_additive_on_cones(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_complex(&mut r, Ring::Integers, GenConfig::default());
        let b = random_complex(&mut r, Ring::Integers, GenConfig::default());
        let f = random_chain_map(&mut r, &a, &b);
        prop_assert_eq!(cone(&f).euler_characteristic(), b.euler_characteristic() - a.euler_characteristic());
    }

    #[test]
    fn homotopy_solver_recovers_constructed_witnesses(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in [Ring::Integers, Ring::Modulo(6)] {
            let a = random_complex(&mut r, ring, small());
            let b = random_complex(&mut r, ring, small());
            let (f, h) = random_null_homotopic(&mut r, &a, &b);
            let zero = ChainMap::zero(&a, &b);
            prop_assert!(h.certifies(&f, &zero));
            let found = find_homotopy(&f, &zero);
            prop_assert!(found.is_some());
            prop_assert!(found.unwrap().certifies(&f, &zero));
            prop_assert!(find_weak_homotopy(&f, &zero).is_some());
        }
    }

    #[test]
    fn homotopy_implies_weak_homotopy(seed in any::<u64>()) {
        let mut r = rng(seed);
        let a = random_complex(&mut r, Ring::Integers, small());
        let b = random_complex(&mut r, Ring::Integers, small());
        let f = random_chain_map(&mut r, &a, &b);
        let g = random_chain_map(&mut r, &a, &b);
        if let Some(h) = find_homotopy(&f, &g) {
            prop_assert!(h.certifies(&f, &g));
            let w = find_weak_homotopy(&f, &g);
            prop_assert!(w.is_some_and(|w| w.certifies(&f, &g)));
        }
    }

    #[test]
    fn weakly_homotopic_maps_induce_equal_homology_maps(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in [Ring::Integers, Ring::Modulo(4)] {
            let a = random_complex(&mut r, ring, small());
            let b = random_complex(&mut r, ring, small());
            let (m1, m2) = random_weak_pair(&mut r, &a, &b);
            let w = find_weak_homotopy(&m1, &m2);
            prop_assert!(w.is_some_and(|w| w.certifies(&m1, &m2)));
            for functor in [TermFunctor::Identity, TermFunctor::TensorMod(2), TermFunctor::TensorMod(3), TermFunctor::Rational] {
                prop_assert!(induce_equal_maps(functor, &m1, &m2).unwrap());
            }
        }
    }

    #[test]
    fn orthogonality(seed in any::<u64>()) {
        let mut r = rng(seed);
        let c0 = random_complex(&mut r, Ring::Integers, small());
        let d0 = random_complex(&mut r, Ring::Integers, small());
        // Move C into degrees >= 0 and D into degrees <= -1, then pad both
        // with contractible summands that overlap arbitrarily.
        let c = c0.shift(c0.support().map_or(0, |(a, _)| a));
        let d = d0.shift(d0.support().map_or(0, |(_, b)| b + 1));
        let c = pad_with_cone(&mut r, &c);
        let d = pad_with_cone(&mut r, &d);
        prop_assert!(in_w_le(&c, 0));
        prop_assert!(in_w_ge(&d, 1));
        prop_assert!(hom_group_mod_homotopy(&c, &d).unwrap().is_zero());
    }

    #[test]
    fn contractible_splitting_matches_construction(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in [Ring::Integers, Ring::Modulo(4)] {
            let (c, counts) = random_contractible(&mut r, ring, GenConfig::default());
            let sp = split_contractible(&c).unwrap();
            let found: BTreeMap<i32, usize> = sp.pieces.iter().map(|(i, o)| (*i, kar_rank(o))).collect();
            prop_assert_eq!(&found, &counts);
            for n in [2u64, 3, 4, 6] {
                let (even, odd) = sp.even_odd_images(&c, n).unwrap();
                prop_assert_eq!(even, odd);
            }
        }
    }

    #[test]
    fn weight_decomposition_axioms(seed in any::<u64>(), n in -4i32..=4) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, Ring::Integers, GenConfig::default());
        let w = weight_decomposition(&c, n);
        prop_assert!(w.memberships_hold());
        prop_assert!(w.verify_triangle());
        prop_assert_eq!(
            w.lower.euler_characteristic() + w.upper.euler_characteristic(),
            c.euler_characteristic()
        );
    }

    #[test]
    fn weight_complex_is_canonical(seed in any::<u64>(), n in -3i32..=3) {
        let mut r = rng(seed);
        let (c, d, f) = random_equivalence(&mut r, Ring::Integers, GenConfig::default());
        prop_assert!(is_homotopy_equivalence(&f));
        let wc = weight_complex(&c);
        prop_assert_eq!(&weight_complex(&d), &wc);
        prop_assert_eq!(&weight_complex(&c.shift(n)), &wc.shift(n));
        prop_assert_eq!(&weight_complex(&pad_with_cone(&mut r, &c)), &wc);
        for i in c.degrees() {
            prop_assert_eq!(cohomology(&wc, i), cohomology(&c, i));
            prop_assert_eq!(cohomology(&c, i).free_rank(), betti_oracle(&c, i));
        }
        if let Some((a, b)) = c.support() {
            prop_assert!(in_w_le(&wc, -a) && in_w_ge(&wc, -b));
        }
    }

    #[test]
    fn gaussian_reduction_is_certified(seed in any::<u64>()) {
        let mut r = rng(seed);
        for ring in [Ring::Integers, Ring::Modulo(4), Ring::Modulo(5)] {
            let (_, d, _) = random_equivalence(&mut r, ring, small());
            let red = gaussian_reduction(&d);
            prop_assert!(certify_reduction(&d, &red));
            prop_assert!(red.to_reduced.then(&red.from_reduced).is_ok());
            prop_assert!(is_contractible(&cone(&red.from_reduced)).is_some());
        }
    }
}

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use weightk_core::zmod::{
    cokernel, homology, k0_class, kunneth, mat, mod_ln_cohomology, smith_normal_form, FgModule,
    Graded, IntMatrix, ModuleMap,
};

// ---------------------------------------------------------------------------
// Independent oracles (no Smith form involved)
// ---------------------------------------------------------------------------

fn cofactor_det(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0;
    for j in 0..n {
        let minor: Vec<Vec<i128>> =
            m[1..].iter().map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        det += sign * m[0][j] * cofactor_det(&minor);
    }
    det
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.abs().gcd(&b.abs())
}

/// Invariant factors from determinantal divisors: D_k = gcd of all k x k
/// minors, d_k = D_k / D_{k-1}.
fn determinantal_invariants(a: &[Vec<i128>]) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                g = gcd_i128(g, cofactor_det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Rank over Q by fraction-free elimination in i128.
fn rational_rank(a: &[Vec<i128>]) -> usize {
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = m[i].iter().fold(0i128, |g, &x| gcd_i128(g, x));
                if g > 1 {
                    m[i].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        r += 1;
    }
    r
}

fn to_i128(m: &IntMatrix) -> Vec<Vec<i128>> {
    m.to_rows().iter().map(|r| r.iter().map(|x| i128::try_from(x).unwrap()).collect()).collect()
}

fn matrix_strategy(max_r: usize, max_c: usize, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (0..=max_r, 0..=max_c).prop_flat_map(move |(r, c)| {
        prop::collection::vec(-bound..=bound, r * c)
            .prop_map(move |v| IntMatrix::from_vec(r, c, v.into_iter().map(BigInt::from).collect()))
    })
}

fn module_strategy() -> impl Strategy<Value = FgModule> {
    (0usize..3, prop::collection::vec(1u64..30, 0..4)).prop_map(|(r, t)| FgModule::from_cyclic(r, &t))
}

// ---------------------------------------------------------------------------
// Frozen examples
// ---------------------------------------------------------------------------

#[test]
fn snf_of_two_by_two_matches_minor_oracle() {
    let a = mat(&[[2, 4], [6, 8]]);
    let oracle = determinantal_invariants(&to_i128(&a));
    assert_eq!(oracle, vec![2, 4]);
    let snf = smith_normal_form(&a);
    assert_eq!(snf.invariant_factors(), vec![BigInt::from(2), BigInt::from(4)]);
    assert_eq!(cokernel(&a), FgModule::from_cyclic(0, &[2, 4]));
}

#[test]
fn homology_example_matches_lattice_enumeration() {
    // Z --(1,1)^T--> Z^2 --(1,-1)--> Z
    let d_in = ModuleMap::new(FgModule::free(1), FgModule::free(2), mat(&[[1], [1]])).unwrap();
    let d_out = ModuleMap::new(FgModule::free(2), FgModule::free(1), mat(&[[1, -1]])).unwrap();
    // Brute force: every cycle in a box is a boundary of something in a box.
    for x in -6i64..=6 {
        for y in -6i64..=6 {
            if x - y != 0 {
                continue;
            }
            assert!((-6i64..=6).any(|t| (t, t) == (x, y)));
        }
    }
    assert!(homology(&d_in, &d_out).unwrap().is_zero());
}

#[test]
fn mixed_cohomology_order() {
    let ell = 5u64;
    let h_i = FgModule::from_cyclic(1, &[ell]);
    let h_next = FgModule::cyclic(ell * ell);
    let x = mod_ln_cohomology(&h_i, &h_next, ell, 1);
    assert_eq!(x.order(), Some((ell as u128).pow(3)));
}

#[test]
fn k0_of_z_mod_6_at_two() {
    let c = k0_class(&FgModule::cyclic(6), Some(2));
    assert_eq!(c.to_string(), "+1[Z/2]");
}

// ---------------------------------------------------------------------------
// Invariants
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn snf_is_a_unimodular_diagonalisation(a in matrix_strategy(4, 4, 9)) {
        let snf = smith_normal_form(&a);
        prop_assert_eq!(&(&snf.u * &a) * &snf.v, snf.s.clone());
        if a.rows() > 0 {
            prop_assert!(snf.u.determinant().abs().is_one());
        }
        if a.cols() > 0 {
            prop_assert!(snf.v.determinant().abs().is_one());
        }
        let d = snf.invariant_factors();
        for w in d.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        let oracle: Vec<BigInt> = determinantal_invariants(&to_i128(&a)).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(d, oracle);
    }

    #[test]
    fn cokernel_is_presentation_invariant(a in matrix_strategy(4, 4, 9), seed in any::<u64>()) {
        let base = cokernel(&a);
        let padded = a.hstack(&IntMatrix::zeros(a.rows(), 2));
        prop_assert_eq!(cokernel(&padded), base.clone());
        let mut p = a.clone();
        if p.rows() > 1 {
            p.swap_rows(0, (seed as usize) % p.rows());
        }
        if p.cols() > 1 {
            p.swap_cols(0, (seed as usize / 7) % p.cols());
        }
        prop_assert_eq!(cokernel(&p), base);
    }

    #[test]
    fn homology_free_rank_matches_rational_ranks(
        c in matrix_strategy(3, 4, 5), fill in prop::collection::vec(-4i64..=4, 12)
    ) {
        // d_out = C; d_in = K * B where K spans ker C, so d_out d_in = 0.
        let n = c.cols();
        let k = weightk_core::zmod::kernel_basis(&c);
        let mut b = IntMatrix::zeros(k.cols(), 3);
        for i in 0..k.cols() {
            for j in 0..3 {
                b[(i, j)] = BigInt::from(fill[(i * 3 + j) % fill.len()]);
            }
        }
        let d_in_mat = &k * &b;
        let d_in = ModuleMap::new(FgModule::free(3), FgModule::free(n), d_in_mat.clone()).unwrap();
        let d_out = ModuleMap::new(FgModule::free(n), FgModule::free(c.rows()), c.clone()).unwrap();
        let h = homology(&d_in, &d_out).unwrap();
        let ker_dim = n - rational_rank(&to_i128(&c));
        let im_rank = rational_rank(&to_i128(&d_in_mat));
        prop_assert_eq!(h.free_rank(), ker_dim - im_rank);
    }

    #[test]
    fn k0_class_is_additive(m in module_strategy(), n in module_strategy(), ell in prop::sample::select(vec![2u64, 3, 5])) {
        let lhs = k0_class(&m.direct_sum(&n), Some(ell));
        let rhs = &k0_class(&m, Some(ell)) + &k0_class(&n, Some(ell));
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(k0_class(&m.direct_sum(&n), None), &k0_class(&m, None) + &k0_class(&n, None));
    }

    #[test]
    fn mod_ln_order_is_multiplicative(
        h_i in module_strategy(), h_next in module_strategy(),
        ell in prop::sample::select(vec![2u64, 3]), n in 1u32..3
    ) {
        let x = mod_ln_cohomology(&h_i, &h_next, ell, n);
        let q = ell.pow(n);
        let expected = h_i.tensor_mod(q).order().unwrap() * h_next.n_torsion(q).order().unwrap();
        prop_assert_eq!(x.order(), Some(expected));
    }

    #[test]
    fn kunneth_is_unital_and_commutative(
        a in prop::collection::btree_map(0i32..4, module_strategy(), 0..3),
        b in prop::collection::btree_map(0i32..4, module_strategy(), 0..3),
    ) {
        let clean = |g: BTreeMap<i32, FgModule>| -> Graded { g.into_iter().filter(|(_, m)| !m.is_zero()).collect() };
        let (a, b) = (clean(a), clean(b));
        let unit: Graded = [(0, FgModule::free(1))].into_iter().collect();
        prop_assert_eq!(kunneth(&unit, &a), a.clone());
        prop_assert_eq!(kunneth(&a, &b), kunneth(&b, &a));
    }
}

#[test]
fn rational_rank_oracle_sanity() {
    assert_eq!(rational_rank(&[vec![1, 2], vec![2, 4]]), 1);
    assert_eq!(rational_rank(&[vec![0, 0], vec![0, 0]]), 0);
    assert!(BigInt::zero().is_zero());
}

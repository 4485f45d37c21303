//! Seeded generators of complexes, maps and witnesses for property suites.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use super::complex::{cone, union_range, ChainMap, Complex, Homotopy};
use super::solve::{chain_map_basis, find_homotopy, find_weak_homotopy};
use crate::zmod::{kernel_basis, IntMatrix, Ring};

/// Size bounds for generated complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenConfig {
    pub max_rank: usize,
    pub max_len: usize,
}

impl Default for GenConfig {
    fn default() -> Self {
        Self { max_rank: 4, max_len: 5 }
    }
}

fn bigint(x: i64) -> BigInt {
    BigInt::from(x)
}

/// A random invertible matrix and its inverse, built from elementary moves.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> (IntMatrix, IntMatrix) {
    let mut p = IntMatrix::identity(n);
    let mut q = IntMatrix::identity(n);
    if n == 0 {
        return (p, q);
    }
    for _ in 0..3 * n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        match rng.gen_range(0..3) {
            0 if a != b => {
                let c = bigint(rng.gen_range(-2..=2));
                p.add_row_multiple(a, b, &c);
                // (E_ab(c))^{-1} = E_ab(-c), applied on the right of q.
                q.add_col_multiple(b, a, &-c);
            }
            1 => {
                p.swap_rows(a, b);
                q.swap_cols(a, b);
            }
            _ => {
                p.negate_row(a);
                q.negate_col(a);
            }
        }
    }
    (p, q)
}

/// Conjugates `C` by random changes of basis in every degree, returning the
/// new complex and the isomorphism `C -> C'`.
pub fn scramble<R: Rng>(rng: &mut R, c: &Complex) -> (Complex, ChainMap) {
    let bases: BTreeMap<i32, (IntMatrix, IntMatrix)> = c.degrees().map(|i| (i, random_unimodular(rng, c.rank(i)))).collect();
    let scrambled = c
        .with_diffs(|i, d| &(&bases[&(i + 1)].0 * d) * &bases[&i].1)
        .expect("conjugation preserves d^2 = 0");
    let iso = ChainMap::new(c.clone(), scrambled.clone(), bases.iter().map(|(i, (p, _))| (*i, p.clone())).collect())
        .expect("change of basis is a chain map");
    (scrambled, iso)
}

fn random_entry<R: Rng>(rng: &mut R, ring: Ring) -> BigInt {
    match ring {
        Ring::Modulo(m) => bigint(rng.gen_range(0..m as i64)),
        _ => bigint(rng.gen_range(-3..=3)),
    }
}

/// A complex built from one- and two-term elementary pieces, then
/// scrambled. Two-term pieces carry a non-unit multiplier so that the
/// result has no contractible summands.
pub fn random_complex<R: Rng>(rng: &mut R, ring: Ring, cfg: GenConfig) -> Complex {
    let len = rng.gen_range(1..=cfg.max_len.max(1)) as i32;
    let start = rng.gen_range(-2..=2);
    let mut ranks = vec![0usize; len as usize];
    let mut pieces = Vec::new();
    let multipliers: Vec<i64> = match ring {
        Ring::Integers => vec![0, 2, 3, 4, 6],
        Ring::Rationals => vec![0],
        Ring::Modulo(m) => (0..m as i64).filter(|x| num_integer::Integer::gcd(x, &(m as i64)) != 1).collect(),
    };
    for _ in 0..rng.gen_range(0..=2 * cfg.max_rank) {
        let k = rng.gen_range(0..len) as usize;
        let two = rng.gen_bool(0.5) && k + 1 < len as usize;
        if ranks[k] >= cfg.max_rank || (two && ranks[k + 1] >= cfg.max_rank) {
            continue;
        }
        ranks[k] += 1;
        if two {
            ranks[k + 1] += 1;
            let mult = *multipliers.choose(rng).unwrap_or(&0);
            pieces.push(Complex::two_term(ring, start + k as i32, IntMatrix::scalar(1, mult)));
        } else {
            pieces.push(Complex::one_term(ring, start + k as i32, 1));
        }
    }
    let c = Complex::direct_sum_all(ring, pieces.iter());
    scramble(rng, &c).0
}

/// A contractible complex: scrambled sum of identity cones. Also returns the
/// number of cones starting in each degree.
pub fn random_contractible<R: Rng>(rng: &mut R, ring: Ring, cfg: GenConfig) -> (Complex, BTreeMap<i32, usize>) {
    let len = rng.gen_range(2..=cfg.max_len.max(2)) as i32;
    let start = rng.gen_range(-2..=2);
    let mut ranks = vec![0usize; len as usize];
    let mut counts = BTreeMap::new();
    let mut pieces = Vec::new();
    for _ in 0..rng.gen_range(1..=cfg.max_rank) {
        let k = rng.gen_range(0..len - 1) as usize;
        if ranks[k] >= cfg.max_rank || ranks[k + 1] >= cfg.max_rank {
            continue;
        }
        ranks[k] += 1;
        ranks[k + 1] += 1;
        *counts.entry(start + k as i32).or_insert(0) += 1;
        pieces.push(Complex::two_term(ring, start + k as i32, IntMatrix::identity(1)));
    }
    let c = Complex::direct_sum_all(ring, pieces.iter());
    (scramble(rng, &c).0, counts)
}

/// A homotopy equivalence `f: C -> D` with `D` a scrambled `C (+) K`, `K`
/// contractible.
pub fn random_equivalence<R: Rng>(rng: &mut R, ring: Ring, cfg: GenConfig) -> (Complex, Complex, ChainMap) {
    let half = GenConfig { max_rank: (cfg.max_rank / 2).max(1), max_len: cfg.max_len };
    let c = random_complex(rng, ring, half);
    let (k, _) = random_contractible(rng, ring, half);
    let sum = c.direct_sum(&k);
    let (lo, hi) = union_range(&c, &sum);
    let incl = (lo..=hi)
        .map(|i| {
            let mut m = IntMatrix::zeros(sum.rank(i), c.rank(i));
            m.set_block(0, 0, &IntMatrix::identity(c.rank(i)));
            (i, m)
        })
        .collect();
    let incl = ChainMap::new(c.clone(), sum.clone(), incl).expect("inclusion of a summand");
    let (d, iso) = scramble(rng, &sum);
    let f = incl.then(&iso).expect("composable");
    (c, d, f)
}

/// A random integer combination of a basis of chain maps `A -> B`.
pub fn random_chain_map<R: Rng>(rng: &mut R, a: &Complex, b: &Complex) -> ChainMap {
    let basis = chain_map_basis(a, b);
    let mut f = ChainMap::zero(a, b);
    for g in &basis {
        let c = bigint(rng.gen_range(-2..=2));
        f = f.linear_combination(&bigint(1), g, &c).expect("same endpoints");
    }
    f
}

fn random_block<R: Rng>(rng: &mut R, ring: Ring, r: usize, c: usize) -> IntMatrix {
    let data = (0..r * c).map(|_| random_entry(rng, ring)).collect();
    IntMatrix::from_vec(r, c, data)
}

/// A random `h` and the null-homotopic map `d h + h d` it certifies.
pub fn random_null_homotopic<R: Rng>(rng: &mut R, a: &Complex, b: &Complex) -> (ChainMap, Homotopy) {
    let (lo, hi) = union_range(a, b);
    let h: BTreeMap<i32, IntMatrix> =
        (lo..=hi + 1).map(|i| (i, random_block(rng, a.ring(), b.rank(i - 1), a.rank(i)))).collect();
    let comps = (lo..=hi).map(|i| (i, &(&b.diff(i - 1) * &h[&i]) + &(&h[&(i + 1)] * &a.diff(i)))).collect();
    let f = ChainMap::new(a.clone(), b.clone(), comps).expect("d h + h d is a chain map");
    (f, Homotopy { components: h, denominator: bigint(1) })
}

/// A pair `m1, m2` with `m1 - m2 = d h + j d` where `j - h` is killed by
/// `d_B`, so the difference is a chain map and the pair is weakly homotopic.
pub fn random_weak_pair<R: Rng>(rng: &mut R, a: &Complex, b: &Complex) -> (ChainMap, ChainMap) {
    let ring = a.ring();
    let m1 = random_chain_map(rng, a, b);
    let (lo, hi) = union_range(a, b);
    let mut h = BTreeMap::new();
    let mut j = BTreeMap::new();
    for i in lo..=hi + 1 {
        let hb = random_block(rng, ring, b.rank(i - 1), a.rank(i));
        let mut dker = b.diff(i - 1);
        if let Some(m) = ring.modulus() {
            dker = dker.hstack(&IntMatrix::scalar(dker.rows(), m));
        }
        let kb = kernel_basis(&dker);
        let kb = kb.select(&(0..b.rank(i - 1)).collect::<Vec<_>>(), &(0..kb.cols()).collect::<Vec<_>>());
        let k = &kb * &random_block(rng, ring, kb.cols(), a.rank(i));
        j.insert(i, &hb + &k);
        h.insert(i, hb);
    }
    let comps = (lo..=hi)
        .map(|i| {
            let diff = &(&b.diff(i - 1) * &h[&i]) + &(&j[&(i + 1)] * &a.diff(i));
            (i, &m1.component(i) - &diff)
        })
        .collect();
    let m2 = ChainMap::new(a.clone(), b.clone(), comps).expect("weakly homotopic partner is a chain map");
    (m1, m2)
}

/// Searches small complexes over `ring` for a weakly homotopic pair of chain
/// maps that are not homotopic, enumerating maps with entries in the ring's
/// residues (or `[-2, 2]` over `Z`). Returns the first hit.
pub fn search_weak_not_strong(ring: Ring, max_rank: usize) -> Option<(ChainMap, ChainMap)> {
    let entries: Vec<i64> = match ring {
        Ring::Modulo(m) => (0..m as i64).collect(),
        _ => (-2..=2).collect(),
    };
    let mut two_terms = Vec::new();
    for &x in &entries {
        two_terms.push(Complex::two_term(ring, 0, IntMatrix::scalar(1, x)));
    }
    let mut candidates: Vec<Complex> = Vec::new();
    for r in 1..=max_rank {
        candidates.push(Complex::one_term(ring, 0, r));
    }
    candidates.extend(two_terms.iter().cloned());
    for a in &two_terms {
        for b in &two_terms {
            candidates.push(a.direct_sum(&b.shift(-1)));
        }
    }
    candidates.retain(|c| !c.is_zero());
    for a in &candidates {
        for b in &candidates {
            let basis = chain_map_basis(a, b);
            if basis.is_empty() || basis.len() > 4 {
                continue;
            }
            for g in &basis {
                let zero = ChainMap::zero(a, b);
                if find_weak_homotopy(g, &zero).is_some() && find_homotopy(g, &zero).is_none() {
                    return Some((g.clone(), zero));
                }
            }
        }
    }
    None
}

/// The stored separating instance: over `Z/4`, on `A = B = (Z/4 --2--> Z/4)`
/// in degrees 0, 1, the map that is `2` in degree 0 and `0` in degree 1 is
/// weakly null-homotopic but not null-homotopic.
pub fn weak_not_strong_fixture() -> (ChainMap, ChainMap) {
    let ring = Ring::Modulo(4);
    let a = Complex::two_term(ring, 0, IntMatrix::scalar(1, 2));
    let comps = [(0, IntMatrix::scalar(1, 2)), (1, IntMatrix::zeros(1, 1))].into_iter().collect();
    let m1 = ChainMap::new(a.clone(), a.clone(), comps).expect("fixture map is a chain map");
    (m1, ChainMap::zero(&a, &a))
}

/// `C (+) Cone(id_X)[k]` for a random one-term `X`; the summand is
/// contractible.
pub fn pad_with_cone<R: Rng>(rng: &mut R, c: &Complex) -> Complex {
    let x = Complex::one_term(c.ring(), rng.gen_range(-2..=2), rng.gen_range(1..=2));
    c.direct_sum(&cone(&ChainMap::identity(&x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn unimodular_pairs_are_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 0..5 {
            let (p, q) = random_unimodular(&mut rng, n);
            assert_eq!(&p * &q, IntMatrix::identity(n));
        }
    }

    #[test]
    fn fixture_separates_the_relations() {
        let (m1, m2) = weak_not_strong_fixture();
        assert!(find_homotopy(&m1, &m2).is_none());
        let w = find_weak_homotopy(&m1, &m2).unwrap();
        assert!(w.certifies(&m1, &m2));
    }

    #[test]
    fn search_finds_a_separating_pair_mod_four() {
        let (m1, m2) = search_weak_not_strong(Ring::Modulo(4), 1).unwrap();
        assert!(find_homotopy(&m1, &m2).is_none());
        assert!(find_weak_homotopy(&m1, &m2).is_some());
    }

    #[test]
    fn generated_complexes_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let cfg = GenConfig::default();
        for _ in 0..50 {
            let c = random_complex(&mut rng, Ring::Integers, cfg);
            if let Some((a, b)) = c.support() {
                assert!(((b - a) as usize) < cfg.max_len);
            }
            assert!(c.degrees().all(|i| c.rank(i) <= cfg.max_rank));
        }
    }
}

//! The stupid weight structure on `K^b` of a matrix category.
//!
//! A complex concentrated in degrees `>= -n` lies in `C_{w<=n}`, one
//! concentrated in degrees `<= -n` lies in `C_{w>=n}`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::complex::{cone, sign, ChainMap, Complex};
use super::solve::is_contractible;
use crate::zmod::{smith_normal_form, FgModule, IntMatrix, Ring};

/// Terms in degrees `<= n`.
pub fn stupid_truncate_le(c: &Complex, n: i32) -> Complex {
    truncate(c, |i| i <= n)
}

/// Terms in degrees `>= n`.
pub fn stupid_truncate_ge(c: &Complex, n: i32) -> Complex {
    truncate(c, |i| i >= n)
}

fn truncate(c: &Complex, keep: impl Fn(i32) -> bool) -> Complex {
    let terms: BTreeMap<i32, usize> = c.degrees().filter(|&i| keep(i)).map(|i| (i, c.rank(i))).collect();
    let diffs = c.degrees().filter(|&i| keep(i) && keep(i + 1)).map(|i| (i, c.diff(i))).collect();
    Complex::from_parts(c.ring(), &terms, &diffs).expect("truncation of a complex")
}

/// `L -> C -> R -> L[1]` with `L` in `C_{w<=n}` and `R` in `C_{w>=n+1}`.
#[derive(Clone, Debug)]
pub struct WeightDecomposition {
    pub level: i32,
    pub lower: Complex,
    pub upper: Complex,
    pub inclusion: ChainMap,
    pub projection: ChainMap,
    pub connecting: ChainMap,
}

pub fn weight_decomposition(c: &Complex, n: i32) -> WeightDecomposition {
    let lower = stupid_truncate_ge(c, -n);
    let upper = stupid_truncate_le(c, -n - 1);
    let ident = |x: &Complex| -> BTreeMap<i32, IntMatrix> { x.degrees().map(|i| (i, IntMatrix::identity(x.rank(i)))).collect() };
    let inclusion = ChainMap::new(lower.clone(), c.clone(), ident(&lower)).expect("inclusion is a chain map");
    let projection = ChainMap::new(c.clone(), upper.clone(), ident(&upper)).expect("projection is a chain map");
    // R^{-n-1} -> L[1]^{-n-1} = L^{-n} is the differential crossing the cut,
    // with the sign of the shifted differential absorbed.
    let shifted = lower.shift(1);
    let mut comps = BTreeMap::new();
    comps.insert(-n - 1, c.diff(-n - 1).scale(&BigInt::from(-1)));
    let connecting = ChainMap::new(upper.clone(), shifted, comps).expect("connecting map is a chain map");
    WeightDecomposition { level: n, lower, upper, inclusion, projection, connecting }
}

impl WeightDecomposition {
    /// Certifies the triangle: the comparison map `Cone(L -> C) -> R` is a
    /// chain map whose cone is contractible.
    pub fn verify_triangle(&self) -> bool {
        let k = cone(&self.inclusion);
        let l = &self.lower;
        let (lo, hi) = super::complex::union_range(&k, &self.upper);
        let comps = (lo..=hi)
            .map(|i| {
                let mut m = IntMatrix::zeros(self.upper.rank(i), l.rank(i + 1) + self.projection.source().rank(i));
                m.set_block(0, l.rank(i + 1), &self.projection.component(i));
                (i, m)
            })
            .collect();
        let Ok(phi) = ChainMap::new(k, self.upper.clone(), comps) else { return false };
        is_contractible(&cone(&phi)).is_some()
    }

    pub fn memberships_hold(&self) -> bool {
        in_w_le(&self.lower, self.level) && in_w_ge(&self.upper, self.level + 1)
    }
}

/// A homotopy equivalence `C -> C'` (and back) produced by splitting off
/// contractible summands.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub reduced: Complex,
    pub to_reduced: ChainMap,
    pub from_reduced: ChainMap,
}

/// Splits off every summand `R --u--> R` with `u` a unit, by bringing each
/// differential to Smith form in turn. Not available over the rationals,
/// where the reduced complex is obtained directly from homology.
pub fn gaussian_reduction(c: &Complex) -> Reduction {
    let ring = c.ring();
    let Some((lo, hi)) = c.support() else {
        return Reduction { reduced: c.clone(), to_reduced: ChainMap::identity(c), from_reduced: ChainMap::identity(c) };
    };
    let mut ranks: BTreeMap<i32, usize> = (lo..=hi).map(|i| (i, c.rank(i))).collect();
    let mut diffs: BTreeMap<i32, IntMatrix> = (lo..hi).map(|i| (i, c.diff(i))).collect();
    // to[i]: C^i -> C'^i, from[i]: C'^i -> C^i.
    let mut to: BTreeMap<i32, IntMatrix> = ranks.iter().map(|(&i, &r)| (i, IntMatrix::identity(r))).collect();
    let mut from = to.clone();

    for i in lo..hi {
        let d = diffs[&i].clone();
        if d.rows() == 0 || d.cols() == 0 {
            continue;
        }
        let flip = first_nonzero_is_negative(&d);
        let snf = smith_normal_form(&if flip { -&d } else { d.clone() });
        let unit_positions: Vec<usize> =
            snf.diagonal().iter().enumerate().filter(|(_, x)| ring.is_unit(x)).map(|(k, _)| k).collect();
        if unit_positions.is_empty() || ring == Ring::Rationals {
            continue;
        }
        let k = unit_positions.len();
        // New bases: C^i via V, C^{i+1} via U^{-1}.
        let new_d = if flip { -&snf.s } else { snf.s.clone() };
        let (ri, rj) = (d.cols(), d.rows());
        let keep_i: Vec<usize> = (k..ri).collect();
        let keep_j: Vec<usize> = (k..rj).collect();
        let all = |n: usize| -> Vec<usize> { (0..n).collect() };

        diffs.insert(i, ring.normalize(&new_d.select(&keep_j, &keep_i)));
        if let Some(prev) = diffs.get(&(i - 1)).cloned() {
            let p = &snf.v_inv * &prev;
            diffs.insert(i - 1, ring.normalize(&p.select(&keep_i, &all(p.cols()))));
        }
        if let Some(next) = diffs.get(&(i + 1)).cloned() {
            let n = &next * &snf.u_inv;
            diffs.insert(i + 1, ring.normalize(&n.select(&all(n.rows()), &keep_j)));
        }
        let ti = &snf.v_inv * &to[&i];
        to.insert(i, ring.normalize(&ti.select(&keep_i, &all(ti.cols()))));
        let tj = &snf.u * &to[&(i + 1)];
        to.insert(i + 1, ring.normalize(&tj.select(&keep_j, &all(tj.cols()))));
        let fi = &from[&i] * &snf.v;
        from.insert(i, ring.normalize(&fi.select(&all(fi.rows()), &keep_i)));
        let fj = &from[&(i + 1)] * &snf.u_inv;
        from.insert(i + 1, ring.normalize(&fj.select(&all(fj.rows()), &keep_j)));
        *ranks.get_mut(&i).unwrap() -= k;
        *ranks.get_mut(&(i + 1)).unwrap() -= k;
    }
    let reduced = Complex::from_parts(ring, &ranks, &diffs).expect("reduction keeps d^2 = 0");
    let pad = |m: &BTreeMap<i32, IntMatrix>| -> BTreeMap<i32, IntMatrix> {
        m.iter().filter(|(_, x)| x.rows() * x.cols() > 0).map(|(i, x)| (*i, x.clone())).collect()
    };
    let to_reduced = ChainMap::new(c.clone(), reduced.clone(), pad(&to)).expect("reduction map is a chain map");
    let from_reduced = ChainMap::new(reduced.clone(), c.clone(), pad(&from)).expect("inclusion is a chain map");
    Reduction { reduced, to_reduced, from_reduced }
}

fn first_nonzero_is_negative(m: &IntMatrix) -> bool {
    m.entries().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative())
}

/// Canonical representative of the homotopy class of `C`.
///
/// Over `Z` this is the elementary form determined by cohomology: free parts
/// as one-term pieces, and each torsion summand `Z/d` of `H^{i+1}` as
/// `Z --(-1)^i d--> Z` in degrees `i, i+1`. The alternating sign makes the
/// construction commute with shifts on the nose. Over the rationals only the
/// Betti numbers survive; over `Z/m` the Smith-form reduction is returned.
pub fn weight_complex(c: &Complex) -> Complex {
    let ring = c.ring();
    match ring {
        Ring::Modulo(_) => gaussian_reduction(c).reduced,
        Ring::Integers | Ring::Rationals => {
            let Some((lo, hi)) = c.support() else { return c.clone() };
            let h: BTreeMap<i32, FgModule> = (lo..=hi).map(|i| (i, cohomology(c, i))).collect();
            let mut ranks: BTreeMap<i32, usize> = BTreeMap::new();
            let mut diffs: BTreeMap<i32, IntMatrix> = BTreeMap::new();
            for i in lo - 1..=hi {
                let tors_next: Vec<u64> =
                    if ring == Ring::Integers { h.get(&(i + 1)).map(|m| m.torsion().to_vec()).unwrap_or_default() } else { Vec::new() };
                let tors_here: Vec<u64> =
                    if ring == Ring::Integers { h.get(&i).map(|m| m.torsion().to_vec()).unwrap_or_default() } else { Vec::new() };
                let free = h.get(&i).map_or(0, FgModule::free_rank);
                // Basis of C^i: torsion targets, free part, torsion sources.
                ranks.insert(i, tors_here.len() + free + tors_next.len());
                let (tn, next_free) = (tors_next.len(), h.get(&(i + 1)).map_or(0, FgModule::free_rank));
                let next_rank = tn + next_free + h.get(&(i + 2)).map_or(0, |m| if ring == Ring::Integers { m.torsion().len() } else { 0 });
                let mut d = IntMatrix::zeros(next_rank, tors_here.len() + free + tn);
                for (k, t) in tors_next.iter().enumerate() {
                    d[(k, tors_here.len() + free + k)] = BigInt::from(sign(i)) * BigInt::from(*t);
                }
                diffs.insert(i, d);
            }
            diffs.remove(&hi);
            Complex::from_parts(ring, &ranks, &diffs).expect("elementary complex")
        }
    }
}

/// `H^i` of a complex over `Z` (or its free part over `Q`, or the homology
/// of the reduced terms over `Z/m`).
pub fn cohomology(c: &Complex, i: i32) -> FgModule {
    super::functor::pure_functor_h(super::functor::TermFunctor::Identity, c, -i)
        .expect("identity functor on any base ring")
}

/// Membership in `C_{w<=n}` after stripping contractible summands.
pub fn in_w_le(c: &Complex, n: i32) -> bool {
    weight_complex(c).support().is_none_or(|(a, _)| a >= -n)
}

/// Membership in `C_{w>=n}` after stripping contractible summands.
pub fn in_w_ge(c: &Complex, n: i32) -> bool {
    weight_complex(c).support().is_none_or(|(_, b)| b <= -n)
}

/// Degree `j` if the canonical form is a single term in degree `j`.
pub fn pure_degree(c: &Complex) -> Option<i32> {
    let w = weight_complex(c);
    match w.support() {
        Some((a, b)) if a == b => Some(a),
        _ => None,
    }
}

/// Checks `denominator`-free contractibility of `cone(f)` where `f` is the
/// reduction map; used as an internal self-check.
pub fn certify_reduction(c: &Complex, r: &Reduction) -> bool {
    let ok_sides = r.to_reduced.source() == c && r.from_reduced.target() == c;
    ok_sides && is_contractible(&cone(&r.to_reduced)).is_some()
}

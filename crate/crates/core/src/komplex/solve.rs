//! Homotopy and weak-homotopy solvers, and Hom in the homotopy category.
//!
//! Every question is reduced to one exact linear system whose unknowns are
//! the entries of degreewise matrices, vectorised row-major.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::complex::{union_range, ChainMap, Complex, Homotopy, WeakHomotopyWitness};
use crate::error::{Error, Result};
use crate::zmod::{kernel_basis, solve, FgModule, IntMatrix, Ring, Subquotient};

/// A family of unknown matrices, one per degree, laid out consecutively.
#[derive(Clone, Debug, Default)]
pub(crate) struct Blocks {
    layout: BTreeMap<i32, (usize, usize, usize)>,
    total: usize,
}

impl Blocks {
    pub(crate) fn new(shapes: impl IntoIterator<Item = (i32, usize, usize)>) -> Self {
        let mut b = Blocks::default();
        for (deg, r, c) in shapes {
            if r * c > 0 {
                b.layout.insert(deg, (b.total, r, c));
                b.total += r * c;
            }
        }
        b
    }

    pub(crate) fn len(&self) -> usize {
        self.total
    }

    fn get(&self, deg: i32) -> Option<(usize, usize, usize)> {
        self.layout.get(&deg).copied()
    }

    pub(crate) fn pack(&self, mats: &BTreeMap<i32, IntMatrix>) -> Vec<BigInt> {
        let mut v = vec![BigInt::from(0); self.total];
        for (deg, &(off, r, c)) in &self.layout {
            if let Some(m) = mats.get(deg) {
                for i in 0..r {
                    for j in 0..c {
                        v[off + i * c + j] = m[(i, j)].clone();
                    }
                }
            }
        }
        v
    }

    pub(crate) fn unpack(&self, v: &[BigInt]) -> BTreeMap<i32, IntMatrix> {
        self.layout
            .iter()
            .map(|(&deg, &(off, r, c))| (deg, IntMatrix::from_vec(r, c, v[off..off + r * c].to_vec())))
            .collect()
    }
}

/// Sparse accumulation of a linear map from unknown blocks to equation blocks.
pub(crate) struct System {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl System {
    pub(crate) fn new(equations: &Blocks, unknowns: &Blocks) -> Self {
        Self { rows: equations.len(), cols: unknowns.len(), entries: BTreeMap::new() }
    }

    fn add(&mut self, r: usize, c: usize, x: &BigInt) {
        *self.entries.entry((r, c)).or_default() += x;
    }

    /// Adds the term `L * X_{xdeg}` to equation block `edeg`.
    pub(crate) fn left(&mut self, eqs: &Blocks, edeg: i32, l: &IntMatrix, xs: &Blocks, xdeg: i32, coeff: i64) {
        let (Some((eo, er, ec)), Some((xo, xr, xc))) = (eqs.get(edeg), xs.get(xdeg)) else { return };
        debug_assert_eq!((l.rows(), l.cols(), xc), (er, xr, ec));
        let coeff = BigInt::from(coeff);
        for a in 0..er {
            for k in 0..xr {
                let v = &l[(a, k)] * &coeff;
                if v != BigInt::from(0) {
                    for b in 0..ec {
                        self.add(eo + a * ec + b, xo + k * xc + b, &v);
                    }
                }
            }
        }
    }

    /// Adds the term `X_{xdeg} * R` to equation block `edeg`.
    pub(crate) fn right(&mut self, eqs: &Blocks, edeg: i32, xs: &Blocks, xdeg: i32, r: &IntMatrix, coeff: i64) {
        let (Some((eo, er, ec)), Some((xo, xr, xc))) = (eqs.get(edeg), xs.get(xdeg)) else { return };
        debug_assert_eq!((xr, r.rows(), r.cols()), (er, xc, ec));
        let coeff = BigInt::from(coeff);
        for k in 0..xc {
            for b in 0..ec {
                let v = &r[(k, b)] * &coeff;
                if v != BigInt::from(0) {
                    for a in 0..er {
                        self.add(eo + a * ec + b, xo + a * xc + k, &v);
                    }
                }
            }
        }
    }

    pub(crate) fn matrix(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (&(r, c), x) in &self.entries {
            m[(r, c)] = x.clone();
        }
        m
    }
}

fn same_endpoints(f: &ChainMap, g: &ChainMap) -> bool {
    f.source() == g.source() && f.target() == g.target()
}

fn difference_blocks(f: &ChainMap, g: &ChainMap) -> (Blocks, BTreeMap<i32, IntMatrix>) {
    let (lo, hi) = f.degree_range();
    let (a, b) = (f.source(), f.target());
    let eqs = Blocks::new((lo..=hi).map(|i| (i, b.rank(i), a.rank(i))));
    let rhs = (lo..=hi).map(|i| (i, &f.component(i) - &g.component(i))).collect();
    (eqs, rhs)
}

fn homotopy_blocks(a: &Complex, b: &Complex) -> Blocks {
    let (lo, hi) = union_range(a, b);
    Blocks::new((lo..=hi + 1).map(|i| (i, b.rank(i - 1), a.rank(i))))
}

/// Finds `h` with `f - g = d h + h d`, or `None` if none exists over the
/// base ring. Over the rationals the witness carries a common denominator.
pub fn find_homotopy(f: &ChainMap, g: &ChainMap) -> Option<Homotopy> {
    if !same_endpoints(f, g) {
        return None;
    }
    let (a, b) = (f.source(), f.target());
    let (eqs, rhs) = difference_blocks(f, g);
    let hs = homotopy_blocks(a, b);
    let mut sys = System::new(&eqs, &hs);
    let (lo, hi) = f.degree_range();
    for i in lo..=hi {
        sys.left(&eqs, i, &b.diff(i - 1), &hs, i, 1);
        sys.right(&eqs, i, &hs, i + 1, &a.diff(i), 1);
    }
    let sol = solve(f.ring(), &sys.matrix(), &eqs.pack(&rhs))?;
    Some(Homotopy { components: hs.unpack(&sol.numerators), denominator: sol.denominator })
}

/// Finds `(h, j)` with `m1 - m2 = d_B h + j d_A`.
pub fn find_weak_homotopy(m1: &ChainMap, m2: &ChainMap) -> Option<WeakHomotopyWitness> {
    if !same_endpoints(m1, m2) {
        return None;
    }
    let (a, b) = (m1.source(), m1.target());
    let (eqs, rhs) = difference_blocks(m1, m2);
    let hs = homotopy_blocks(a, b);
    let n = hs.len();
    // Unknown vector is (h, j).
    let both = Blocks::new(
        hs.layout.iter().map(|(&d, &(_, r, c))| (2 * d, r, c)).chain(hs.layout.iter().map(|(&d, &(_, r, c))| (2 * d + 1, r, c))),
    );
    let mut sys = System::new(&eqs, &both);
    let (lo, hi) = m1.degree_range();
    for i in lo..=hi {
        sys.left(&eqs, i, &b.diff(i - 1), &both, 2 * i, 1);
        sys.right(&eqs, i, &both, 2 * (i + 1) + 1, &a.diff(i), 1);
    }
    let sol = solve(m1.ring(), &sys.matrix(), &eqs.pack(&rhs))?;
    let v = both.unpack(&sol.numerators);
    let pick = |parity: i32| -> BTreeMap<i32, IntMatrix> {
        v.iter().filter(|(d, _)| d.rem_euclid(2) == parity).map(|(d, m)| (d.div_euclid(2), m.clone())).collect()
    };
    debug_assert_eq!(both.len(), 2 * n);
    Some(WeakHomotopyWitness { h: pick(0), j: pick(1), denominator: sol.denominator })
}

/// A contracting homotopy `s` with `id = d s + s d`, if `C` is contractible.
pub fn is_contractible(c: &Complex) -> Option<Homotopy> {
    find_homotopy(&ChainMap::identity(c), &ChainMap::zero(c, c))
}

/// The linear conditions cutting out chain maps `C -> D` inside the space of
/// degreewise matrices, and the homotopy map `s -> d s + s d`.
pub(crate) struct ChainMapSpace {
    pub(crate) maps: Blocks,
    pub(crate) cycle_condition: IntMatrix,
    pub(crate) null_homotopic: IntMatrix,
}

pub(crate) fn chain_map_space(c: &Complex, d: &Complex) -> ChainMapSpace {
    let (lo, hi) = union_range(c, d);
    let maps = Blocks::new((lo..=hi).map(|i| (i, d.rank(i), c.rank(i))));
    let conds = Blocks::new((lo..hi).map(|i| (i, d.rank(i + 1), c.rank(i))));
    let mut phi = System::new(&conds, &maps);
    for i in lo..hi {
        phi.left(&conds, i, &d.diff(i), &maps, i, 1);
        phi.right(&conds, i, &maps, i + 1, &c.diff(i), -1);
    }
    let hs = homotopy_blocks(c, d);
    let mut psi = System::new(&maps, &hs);
    for i in lo..=hi {
        psi.left(&maps, i, &d.diff(i - 1), &hs, i, 1);
        psi.right(&maps, i, &hs, i + 1, &c.diff(i), 1);
    }
    ChainMapSpace { maps, cycle_condition: phi.matrix(), null_homotopic: psi.matrix() }
}

impl ChainMapSpace {
    /// Rebuilds a chain map from a vector in the map coordinates.
    pub(crate) fn chain_map(&self, c: &Complex, d: &Complex, v: &[BigInt]) -> Result<ChainMap> {
        ChainMap::new(c.clone(), d.clone(), self.maps.unpack(v))
    }

    pub(crate) fn vector(&self, f: &ChainMap) -> Vec<BigInt> {
        let (lo, hi) = f.degree_range();
        self.maps.pack(&(lo..=hi).map(|i| (i, f.component(i))).collect())
    }
}

/// `Hom_{K^b}(C, D)`: chain maps modulo null-homotopic ones.
///
/// Over `Z` this is the lattice quotient; over a field it is returned as a
/// free module (rationals) or an elementary abelian group (`Z/p`).
pub fn hom_group_mod_homotopy(c: &Complex, d: &Complex) -> Result<FgModule> {
    let ring = c.ring();
    if d.ring() != ring {
        return Err(Error::DimensionMismatch("complexes over different rings".into()));
    }
    if matches!(ring, Ring::Modulo(m) if !crate::zmod::is_prime(m)) {
        return Err(Error::UnsupportedRing(ring));
    }
    let space = chain_map_space(c, d);
    let n = space.maps.len();
    match ring {
        Ring::Integers => {
            let z = kernel_basis(&space.cycle_condition);
            let q = Subquotient::new(&z, &space.null_homotopic)?;
            Ok(q.module().clone())
        }
        Ring::Rationals => {
            let dim = n - ring.rank(&space.cycle_condition)? - ring.rank(&space.null_homotopic)?;
            Ok(FgModule::free(dim))
        }
        Ring::Modulo(p) => {
            let phi = ring.normalize(&space.cycle_condition);
            let psi = ring.normalize(&space.null_homotopic);
            let dim = n - ring.rank(&phi)? - ring.rank(&psi)?;
            Ok(FgModule::from_cyclic(0, &vec![p; dim]))
        }
    }
}

/// A `Z`-basis (or spanning set over `Z/m`) of chain maps `C -> D`.
pub fn chain_map_basis(c: &Complex, d: &Complex) -> Vec<ChainMap> {
    let space = chain_map_space(c, d);
    let sys = match c.ring().modulus() {
        Some(m) => space.cycle_condition.hstack(&IntMatrix::scalar(space.cycle_condition.rows(), m)),
        None => space.cycle_condition.clone(),
    };
    let k = kernel_basis(&sys);
    let n = space.maps.len();
    (0..k.cols())
        .filter_map(|j| {
            let v: Vec<BigInt> = k.col(j)[..n].to_vec();
            let f = space.chain_map(c, d, &v).ok()?;
            (!f.is_zero()).then_some(f)
        })
        .collect()
}

/// `f` up to homotopy, as a vector whose entries are read in the canonical
/// coordinates of `hom_group_mod_homotopy` (integers only).
pub fn homotopy_class(f: &ChainMap) -> Result<Vec<BigInt>> {
    let (c, d) = (f.source(), f.target());
    if c.ring() != Ring::Integers {
        return Err(Error::UnsupportedRing(c.ring()));
    }
    let space = chain_map_space(c, d);
    let z = kernel_basis(&space.cycle_condition);
    let q = Subquotient::new(&z, &space.null_homotopic)?;
    q.coordinates(&space.vector(f)).ok_or_else(|| Error::IncompatibleMap("not a chain map".into()))
}

/// Whether `f` is a homotopy equivalence, certified by contractibility of
/// its cone.
pub fn is_homotopy_equivalence(f: &ChainMap) -> bool {
    is_contractible(&super::complex::cone(f)).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::komplex::complex::cone;
    use crate::zmod::mat;

    fn z(deg: i32) -> Complex {
        Complex::one_term(Ring::Integers, deg, 1)
    }

    fn scalar_map(c: &Complex, k: i64) -> ChainMap {
        let comps = c.degrees().map(|i| (i, IntMatrix::scalar(c.rank(i), k))).collect();
        ChainMap::new(c.clone(), c.clone(), comps).unwrap()
    }

    #[test]
    fn equal_maps_are_homotopic() {
        let f = scalar_map(&z(0), 3);
        let h = find_homotopy(&f, &f).unwrap();
        assert!(h.certifies(&f, &f));
        assert!(h.components.values().all(IntMatrix::is_zero));
    }

    #[test]
    fn times_two_is_not_null_on_a_point() {
        let c = z(0);
        assert!(find_homotopy(&scalar_map(&c, 2), &ChainMap::zero(&c, &c)).is_none());
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let c = Complex::two_term(Ring::Integers, 0, mat(&[[2, 1], [0, 3]]));
        let k = cone(&ChainMap::identity(&c));
        let s = is_contractible(&k).unwrap();
        assert!(s.certifies(&ChainMap::identity(&k), &ChainMap::zero(&k, &k)));
        assert!(is_contractible(&c).is_none());
    }

    #[test]
    fn rational_homotopy_has_denominator() {
        // Z --2--> Z is contractible over Q only.
        let c = Complex::two_term(Ring::Rationals, 0, mat(&[[2]]));
        let s = is_contractible(&c).unwrap();
        assert_eq!(s.denominator.magnitude(), &2u32.into());
        assert!(s.certifies(&ChainMap::identity(&c), &ChainMap::zero(&c, &c)));
        let cz = Complex::two_term(Ring::Integers, 0, mat(&[[2]]));
        assert!(is_contractible(&cz).is_none());
    }

    #[test]
    fn hom_groups() {
        assert_eq!(hom_group_mod_homotopy(&z(0), &z(0)).unwrap(), FgModule::free(1));
        assert!(hom_group_mod_homotopy(&z(0), &z(1)).unwrap().is_zero());
        // Hom(Z[0], Z --2--> Z) in degree 0 -> 1: cycles 0, so zero;
        // into degree 1 term the class group is Z/2.
        let c2 = Complex::two_term(Ring::Integers, 0, mat(&[[2]]));
        assert!(hom_group_mod_homotopy(&z(0), &c2).unwrap().is_zero());
        assert_eq!(hom_group_mod_homotopy(&z(1), &c2).unwrap(), FgModule::cyclic(2));
        assert_eq!(
            hom_group_mod_homotopy(&Complex::one_term(Ring::Modulo(5), 0, 2), &Complex::one_term(Ring::Modulo(5), 0, 1))
                .unwrap(),
            FgModule::from_cyclic(0, &[5, 5])
        );
        assert!(matches!(
            hom_group_mod_homotopy(&Complex::one_term(Ring::Modulo(4), 0, 1), &Complex::one_term(Ring::Modulo(4), 0, 1)),
            Err(Error::UnsupportedRing(_))
        ));
    }

    #[test]
    fn weak_homotopy_from_boundary() {
        let c = Complex::two_term(Ring::Integers, 0, mat(&[[3]]));
        let d = ChainMap::identity(&c);
        let w = find_weak_homotopy(&d, &d).unwrap();
        assert!(w.certifies(&d, &d));
    }
}

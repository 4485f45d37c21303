use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmod::{IntMatrix, Ring};

/// An object of the matrix category: a free module of finite rank over the
/// base ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MatObject {
    pub ring: Ring,
    pub rank: usize,
}

/// A bounded cochain complex of free modules, `d^i : C^i -> C^{i+1}`.
///
/// Stored trimmed: the first and last terms are nonzero, and the zero
/// complex has no terms at all. Matrices over `Z/m` are kept reduced.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexRepr", into = "ComplexRepr")]
pub struct Complex {
    ring: Ring,
    start: i32,
    ranks: Vec<usize>,
    diffs: Vec<IntMatrix>,
}

impl Complex {
    /// `diffs[k]` is the differential out of degree `start + k`; there must
    /// be exactly `ranks.len() - 1` of them (or none for an empty list).
    pub fn new(ring: Ring, start: i32, ranks: Vec<usize>, diffs: Vec<IntMatrix>) -> Result<Self> {
        if diffs.len() != ranks.len().saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k + 1], ranks[k]) {
                return Err(Error::InvalidComplex(format!(
                    "differential out of degree {} has shape {:?}, expected {:?}",
                    start + k as i32,
                    d.shape(),
                    (ranks[k + 1], ranks[k])
                )));
            }
        }
        let diffs: Vec<IntMatrix> = diffs.iter().map(|d| ring.normalize(d)).collect();
        for k in 1..diffs.len() {
            if !ring.is_zero_matrix(&(&diffs[k] * &diffs[k - 1])) {
                return Err(Error::InvalidComplex(format!(
                    "d o d != 0 at degree {}",
                    start + k as i32 - 1
                )));
            }
        }
        let mut c = Self { ring, start, ranks, diffs };
        c.trim();
        Ok(c)
    }

    pub fn zero(ring: Ring) -> Self {
        Self { ring, start: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    pub fn one_term(ring: Ring, degree: i32, rank: usize) -> Self {
        Self::new(ring, degree, vec![rank], Vec::new()).expect("one-term complex")
    }

    /// `Z^{d.cols} --d--> Z^{d.rows}` in degrees `degree, degree + 1`.
    pub fn two_term(ring: Ring, degree: i32, d: IntMatrix) -> Self {
        let ranks = vec![d.cols(), d.rows()];
        Self::new(ring, degree, ranks, vec![d]).expect("two-term complex")
    }

    /// Builds from a degree-indexed description, filling gaps with zero terms.
    pub fn from_parts(ring: Ring, terms: &BTreeMap<i32, usize>, diffs: &BTreeMap<i32, IntMatrix>) -> Result<Self> {
        let lo = terms.keys().chain(diffs.keys()).min().copied();
        let hi = terms.keys().copied().chain(diffs.keys().map(|k| k + 1)).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return Ok(Self::zero(ring));
        };
        let ranks: Vec<usize> = (lo..=hi).map(|i| terms.get(&i).copied().unwrap_or(0)).collect();
        let diffs: Vec<IntMatrix> = (lo..hi)
            .map(|i| {
                let (r, c) = (ranks[(i + 1 - lo) as usize], ranks[(i - lo) as usize]);
                match diffs.get(&i) {
                    Some(d) if d.rows() == 0 && r == 0 => IntMatrix::zeros(0, c),
                    Some(d) => d.clone(),
                    None => IntMatrix::zeros(r, c),
                }
            })
            .collect();
        Self::new(ring, lo, ranks, diffs)
    }

    fn trim(&mut self) {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        let lead = self.ranks.iter().take_while(|&&r| r == 0).count();
        if lead > 0 {
            self.ranks.drain(..lead);
            self.diffs.drain(..lead.min(self.diffs.len()));
            self.start += lead as i32;
        }
        if self.ranks.is_empty() {
            self.start = 0;
            self.diffs.clear();
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Smallest and largest degree with a nonzero term.
    pub fn support(&self) -> Option<(i32, i32)> {
        (!self.ranks.is_empty()).then(|| (self.start, self.start + self.ranks.len() as i32 - 1))
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        match self.support() {
            Some((a, b)) => a..=b,
            #[allow(clippy::reversed_empty_ranges)]
            None => 1..=0,
        }
    }

    pub fn rank(&self, i: i32) -> usize {
        let k = i - self.start;
        if k < 0 {
            return 0;
        }
        self.ranks.get(k as usize).copied().unwrap_or(0)
    }

    pub fn term(&self, i: i32) -> MatObject {
        MatObject { ring: self.ring, rank: self.rank(i) }
    }

    /// `d^i : C^i -> C^{i+1}`; a zero matrix of the right shape outside the
    /// stored range.
    pub fn diff(&self, i: i32) -> IntMatrix {
        let k = i - self.start;
        if k >= 0 && (k as usize) < self.diffs.len() {
            self.diffs[k as usize].clone()
        } else {
            IntMatrix::zeros(self.rank(i + 1), self.rank(i))
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// `sum_i (-1)^i rank C^i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.degrees().map(|i| sign(i) * self.rank(i) as i64).sum()
    }

    /// `C[n]^i = C^{i+n}` with differential `(-1)^n d`.
    pub fn shift(&self, n: i32) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let s = BigInt::from(sign(n));
        let diffs = self.diffs.iter().map(|d| d.scale(&s)).collect();
        Self::new(self.ring, self.start - n, self.ranks.clone(), diffs).expect("shift preserves d^2 = 0")
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.ring, other.ring, "direct sum across rings");
        let (lo, hi) = union_range(self, other);
        let mut terms = BTreeMap::new();
        let mut diffs = BTreeMap::new();
        for i in lo..=hi {
            terms.insert(i, self.rank(i) + other.rank(i));
            if i < hi {
                diffs.insert(i, self.diff(i).direct_sum(&other.diff(i)));
            }
        }
        Self::from_parts(self.ring, &terms, &diffs).expect("direct sum preserves d^2 = 0")
    }

    pub fn direct_sum_all<'a>(ring: Ring, parts: impl IntoIterator<Item = &'a Complex>) -> Self {
        parts.into_iter().fold(Self::zero(ring), |acc, c| acc.direct_sum(c))
    }

    /// Replaces the differentials degree by degree, keeping the terms.
    pub fn with_diffs(&self, f: impl Fn(i32, &IntMatrix) -> IntMatrix) -> Result<Self> {
        let diffs = self.diffs.iter().enumerate().map(|(k, d)| f(self.start + k as i32, d)).collect();
        Self::new(self.ring, self.start, self.ranks.clone(), diffs)
    }
}

/// Interchange form: `{ring, support: [a, b], terms: {i: rank}, diffs: {i: matrix}}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComplexRepr {
    pub ring: Ring,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub support: Option<[i32; 2]>,
    #[serde(default)]
    pub terms: BTreeMap<i32, usize>,
    #[serde(default)]
    pub diffs: BTreeMap<i32, IntMatrix>,
}

impl TryFrom<ComplexRepr> for Complex {
    type Error = Error;
    fn try_from(r: ComplexRepr) -> Result<Self> {
        if let Some([a, b]) = r.support {
            if let Some(k) = r.terms.keys().chain(r.diffs.keys()).find(|&&k| k < a || k > b) {
                return Err(Error::InvalidComplex(format!("degree {k} outside declared support [{a}, {b}]")));
            }
        }
        let rank = |i: i32| r.terms.get(&i).copied().unwrap_or(0);
        let diffs = r
            .diffs
            .iter()
            .map(|(&i, d)| {
                let shape = (rank(i + 1), rank(i));
                if d.rows() * d.cols() == 0 && shape.0 * shape.1 == 0 {
                    (i, IntMatrix::zeros(shape.0, shape.1))
                } else {
                    (i, d.clone())
                }
            })
            .collect();
        Complex::from_parts(r.ring, &r.terms, &diffs)
    }
}

impl From<Complex> for ComplexRepr {
    fn from(c: Complex) -> Self {
        let support = c.support().map(|(a, b)| [a, b]);
        let terms = c.degrees().map(|i| (i, c.rank(i))).collect();
        let diffs = c.degrees().filter(|&i| c.rank(i + 1) > 0).map(|i| (i, c.diff(i))).collect();
        ComplexRepr { ring: c.ring, support, terms, diffs }
    }
}

pub(crate) fn sign(i: i32) -> i64 {
    if i.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

/// Range of degrees covering both supports; `(0, -1)` if both are empty.
pub(crate) fn union_range(a: &Complex, b: &Complex) -> (i32, i32) {
    match (a.support(), b.support()) {
        (None, None) => (0, -1),
        (Some(s), None) | (None, Some(s)) => s,
        (Some((a0, a1)), Some((b0, b1))) => (a0.min(b0), a1.max(b1)),
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex<{}>", self.ring)?;
        if self.is_zero() {
            return write!(f, "(0)");
        }
        for i in self.degrees() {
            write!(f, " [{}]{}", i, self.rank(i))?;
            if i < self.start + self.ranks.len() as i32 - 1 {
                write!(f, " -{}->", self.diff(i))?;
            }
        }
        Ok(())
    }
}

/// A degreewise family of matrices `f^i : A^i -> B^i` commuting with the
/// differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: Complex,
    target: Complex,
    components: BTreeMap<i32, IntMatrix>,
}

impl ChainMap {
    pub fn new(source: Complex, target: Complex, components: BTreeMap<i32, IntMatrix>) -> Result<Self> {
        let ring = source.ring();
        if target.ring() != ring {
            return Err(Error::InvalidComplex("chain map across rings".into()));
        }
        let mut comps = BTreeMap::new();
        let (lo, hi) = union_range(&source, &target);
        for i in lo..=hi {
            let shape = (target.rank(i), source.rank(i));
            let m = match components.get(&i) {
                Some(m) if m.shape() == shape => ring.normalize(m),
                Some(m) if shape.0 * shape.1 == 0 && m.entries().count() == 0 => IntMatrix::zeros(shape.0, shape.1),
                Some(m) => {
                    return Err(Error::DimensionMismatch(format!(
                        "chain map component in degree {i} has shape {:?}, expected {:?}",
                        m.shape(),
                        shape
                    )))
                }
                None => IntMatrix::zeros(shape.0, shape.1),
            };
            if shape.0 > 0 && shape.1 > 0 {
                comps.insert(i, m);
            }
        }
        for k in components.keys() {
            if (*k < lo || *k > hi) && !components[k].is_zero() {
                return Err(Error::DimensionMismatch(format!("component in degree {k} outside both supports")));
            }
        }
        let map = Self { source, target, components: comps };
        for i in lo..hi {
            let lhs = &map.target.diff(i) * &map.component(i);
            let rhs = &map.component(i + 1) * &map.source.diff(i);
            if !ring.is_zero_matrix(&(&lhs - &rhs)) {
                return Err(Error::InvalidComplex(format!("chain map does not commute with d in degree {i}")));
            }
        }
        Ok(map)
    }

    pub fn identity(c: &Complex) -> Self {
        let components = c.degrees().map(|i| (i, IntMatrix::identity(c.rank(i)))).collect();
        Self::new(c.clone(), c.clone(), components).expect("identity is a chain map")
    }

    pub fn zero(source: &Complex, target: &Complex) -> Self {
        Self::new(source.clone(), target.clone(), BTreeMap::new()).expect("zero is a chain map")
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring()
    }

    pub fn component(&self, i: i32) -> IntMatrix {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(self.target.rank(i), self.source.rank(i)))
    }

    pub fn degree_range(&self) -> (i32, i32) {
        union_range(&self.source, &self.target)
    }

    /// `other` after `self`.
    pub fn then(&self, other: &ChainMap) -> Result<ChainMap> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch("chain maps are not composable".into()));
        }
        let (lo, hi) = union_range(&self.source, &other.target);
        let comps = (lo..=hi).map(|i| (i, &other.component(i) * &self.component(i))).collect();
        ChainMap::new(self.source.clone(), other.target.clone(), comps)
    }

    pub fn linear_combination(&self, a: &BigInt, other: &ChainMap, b: &BigInt) -> Result<ChainMap> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::DimensionMismatch("chain maps have different endpoints".into()));
        }
        let (lo, hi) = self.degree_range();
        let comps = (lo..=hi)
            .map(|i| (i, &self.component(i).scale(a) + &other.component(i).scale(b)))
            .collect();
        ChainMap::new(self.source.clone(), self.target.clone(), comps)
    }

    pub fn difference(&self, other: &ChainMap) -> Result<ChainMap> {
        self.linear_combination(&BigInt::one(), other, &-BigInt::one())
    }

    pub fn direct_sum(&self, other: &ChainMap) -> ChainMap {
        let src = self.source.direct_sum(&other.source);
        let tgt = self.target.direct_sum(&other.target);
        let (lo, hi) = union_range(&src, &tgt);
        let comps = (lo..=hi).map(|i| (i, self.component(i).direct_sum(&other.component(i)))).collect();
        ChainMap::new(src, tgt, comps).expect("direct sum of chain maps")
    }

    /// `f[n]^i = f^{i+n}`.
    pub fn shift(&self, n: i32) -> ChainMap {
        let comps = self.components.iter().map(|(i, m)| (i - n, m.clone())).collect();
        ChainMap::new(self.source.shift(n), self.target.shift(n), comps).expect("shifted chain map")
    }

    pub fn is_zero(&self) -> bool {
        self.components.values().all(|m| self.ring().is_zero_matrix(m))
    }
}

/// Mapping cone: `Cone(f)^i = A^{i+1} (+) B^i` with differential
/// `[[-d_A, 0], [f, d_B]]`.
pub fn cone(f: &ChainMap) -> Complex {
    let a = f.source();
    let b = f.target();
    let ring = a.ring();
    let (lo, hi) = union_range(&a.shift(1), b);
    if lo > hi {
        return Complex::zero(ring);
    }
    let mut terms = BTreeMap::new();
    let mut diffs = BTreeMap::new();
    for i in lo..=hi {
        terms.insert(i, a.rank(i + 1) + b.rank(i));
        if i < hi {
            let (ra1, ra2) = (a.rank(i + 1), a.rank(i + 2));
            let (rb0, rb1) = (b.rank(i), b.rank(i + 1));
            let mut d = IntMatrix::zeros(ra2 + rb1, ra1 + rb0);
            d.set_block(0, 0, &-&a.diff(i + 1));
            d.set_block(ra2, 0, &f.component(i + 1));
            d.set_block(ra2, ra1, &b.diff(i));
            diffs.insert(i, d);
        }
    }
    Complex::from_parts(ring, &terms, &diffs).expect("cone of a chain map has d^2 = 0")
}

/// A collection `h^i : A^i -> B^{i-1}` certifying `f - g = d h + h d`.
/// Over the rationals the witness is `components / denominator`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    pub components: BTreeMap<i32, IntMatrix>,
    pub denominator: BigInt,
}

impl Homotopy {
    pub fn component(&self, i: i32, source: &Complex, target: &Complex) -> IntMatrix {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| IntMatrix::zeros(target.rank(i - 1), source.rank(i)))
    }

    /// Checks `denominator * (f - g) == d_B h + h d_A` degreewise.
    pub fn certifies(&self, f: &ChainMap, g: &ChainMap) -> bool {
        let (a, b) = (f.source(), f.target());
        let ring = f.ring();
        let (lo, hi) = f.degree_range();
        (lo..=hi).all(|i| {
            let lhs = (&f.component(i) - &g.component(i)).scale(&self.denominator);
            let rhs = &(&b.diff(i - 1) * &self.component(i, a, b)) + &(&self.component(i + 1, a, b) * &a.diff(i));
            ring.is_zero_matrix(&(&lhs - &rhs))
        })
    }
}

/// Two independent collections `h^i, j^i : A^i -> B^{i-1}` certifying
/// `m1 - m2 = d_B h + j d_A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakHomotopyWitness {
    pub h: BTreeMap<i32, IntMatrix>,
    pub j: BTreeMap<i32, IntMatrix>,
    pub denominator: BigInt,
}

impl WeakHomotopyWitness {
    pub fn certifies(&self, m1: &ChainMap, m2: &ChainMap) -> bool {
        let (a, b) = (m1.source(), m1.target());
        let ring = m1.ring();
        let get = |map: &BTreeMap<i32, IntMatrix>, i: i32| {
            map.get(&i).cloned().unwrap_or_else(|| IntMatrix::zeros(b.rank(i - 1), a.rank(i)))
        };
        let (lo, hi) = m1.degree_range();
        (lo..=hi).all(|i| {
            let lhs = (&m1.component(i) - &m2.component(i)).scale(&self.denominator);
            let rhs = &(&b.diff(i - 1) * &get(&self.h, i)) + &(&get(&self.j, i + 1) * &a.diff(i));
            ring.is_zero_matrix(&(&lhs - &rhs))
        })
    }
}

/// An object of the idempotent completion: the image of `p` on `R^rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KarObject {
    pub carrier: MatObject,
    pub idempotent: IntMatrix,
}

impl KarObject {
    pub fn new(carrier: MatObject, idempotent: IntMatrix) -> Result<Self> {
        if idempotent.shape() != (carrier.rank, carrier.rank) {
            return Err(Error::DimensionMismatch("idempotent does not match carrier rank".into()));
        }
        let p = carrier.ring.normalize(&idempotent);
        if !carrier.ring.is_zero_matrix(&(&(&p * &p) - &p)) {
            return Err(Error::InvalidComplex("p^2 != p".into()));
        }
        Ok(Self { carrier, idempotent: p })
    }
}

use std::collections::BTreeMap;

use serde::Serialize;

use super::blocks::block_map;
use super::table::{tate_twist, PureMotive};
use crate::error::{Error, Result};
use crate::k0::K0AddClass;
use crate::zmod::{FgModule, IntMatrix, ModuleMap};

/// A morphism of pure motives, recorded by what it does on cohomology:
/// component `q` is `H^q(target) -> H^q(source)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotiveMap {
    pub source: PureMotive,
    pub target: PureMotive,
    #[serde(serialize_with = "serialize_components")]
    components: BTreeMap<i32, ModuleMap>,
}

fn serialize_components<S: serde::Serializer>(c: &BTreeMap<i32, ModuleMap>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeMap;
    let mut m = s.serialize_map(Some(c.len()))?;
    for (q, f) in c {
        m.serialize_entry(q, f.matrix())?;
    }
    m.end()
}

impl MotiveMap {
    /// Missing degrees are zero maps.
    pub fn new(source: PureMotive, target: PureMotive, matrices: &BTreeMap<i32, IntMatrix>) -> Result<Self> {
        let mut components = BTreeMap::new();
        for (&q, m) in matrices {
            let f = ModuleMap::new(target.h(q), source.h(q), m.clone())?;
            if !f.is_zero() {
                components.insert(q, f);
            }
        }
        Ok(Self { source, target, components })
    }

    pub fn zero(source: PureMotive, target: PureMotive) -> Self {
        Self { source, target, components: BTreeMap::new() }
    }

    pub fn component(&self, q: i32) -> ModuleMap {
        self.components.get(&q).cloned().unwrap_or_else(|| ModuleMap::zero(self.target.h(q), self.source.h(q)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.components.keys().copied()
    }

    /// `other` after `self`, i.e. `source -> target -> other.target`.
    pub fn then(&self, other: &MotiveMap) -> Result<MotiveMap> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch(format!("cannot compose via {} and {}", self.target.name(), other.source.name())));
        }
        let mut components = BTreeMap::new();
        for q in self.degrees().chain(other.degrees()) {
            let f = other.component(q).then(&self.component(q))?;
            if !f.is_zero() {
                components.insert(q, f);
            }
        }
        Ok(MotiveMap { source: self.source.clone(), target: other.target.clone(), components })
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

/// A bounded complex of pure motives, `d^i : N^i -> N^{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MotiveComplex {
    pub start: i32,
    pub terms: Vec<PureMotive>,
    pub diffs: Vec<MotiveMap>,
}

impl MotiveComplex {
    pub fn new(start: i32, terms: Vec<PureMotive>, diffs: Vec<MotiveMap>) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::InvalidComplex(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        if let Some(t) = terms.iter().find(|t| t.ell() != terms[0].ell()) {
            return Err(Error::InvalidComplex(format!("term {} has a different l", t.name())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source != terms[k] || d.target != terms[k + 1] {
                return Err(Error::InvalidComplex(format!("differential {} has the wrong ends", start + k as i32)));
            }
        }
        for w in diffs.windows(2) {
            if !w[0].then(&w[1])?.is_zero() {
                return Err(Error::CompositionNonzero);
            }
        }
        Ok(Self { start, terms, diffs })
    }

    pub fn one_term(m: PureMotive) -> Self {
        Self { start: 0, terms: vec![m], diffs: Vec::new() }
    }

    pub fn degrees(&self) -> std::ops::Range<i32> {
        self.start..self.start + self.terms.len() as i32
    }

    pub fn term(&self, i: i32) -> Option<&PureMotive> {
        usize::try_from(i - self.start).ok().and_then(|k| self.terms.get(k))
    }

    pub fn diff(&self, i: i32) -> Option<&MotiveMap> {
        usize::try_from(i - self.start).ok().and_then(|k| self.diffs.get(k))
    }

    /// `H^q(N^i)`, zero outside the support.
    pub fn h(&self, i: i32, q: i32) -> FgModule {
        self.term(i).map_or_else(FgModule::zero, |t| t.h(q))
    }

    /// `H^q(N^{i+1}) -> H^q(N^i)` induced by `d^i`.
    pub fn induced(&self, i: i32, q: i32) -> ModuleMap {
        match self.diff(i) {
            Some(d) => d.component(q),
            None => ModuleMap::zero(self.h(i + 1, q), self.h(i, q)),
        }
    }

    /// Cohomological degrees carrying something in some term.
    pub fn table_degrees(&self) -> std::collections::BTreeSet<i32> {
        self.terms.iter().flat_map(|t| t.realized().into_keys()).collect()
    }

    /// `sum_i (-1)^i [N^i]` with graded keys.
    pub fn class(&self) -> K0AddClass {
        self.degrees()
            .map(|i| K0AddClass::of_graded(&self.term(i).unwrap().realized(), None).scale(if i.rem_euclid(2) == 0 { 1 } else { -1 }))
            .sum()
    }

    pub fn ell(&self) -> Option<u64> {
        self.terms.first().map(PureMotive::ell)
    }
}

/// `[P -> Z<n>]` in degrees 0 and 1. Without explicit Gysin data a set of
/// points in `P` with `H^{2n}(P) = Z` gets the all-ones row in degree `2n`.
pub fn weight_complex_of_complement(
    p: &PureMotive,
    z: &PureMotive,
    codim: u32,
    gysin: Option<&BTreeMap<i32, IntMatrix>>,
) -> Result<MotiveComplex> {
    if z.base.components == 0 {
        return Ok(MotiveComplex::one_term(p.clone()));
    }
    let target = tate_twist(z, codim);
    let top = 2 * codim as i32;
    let map = match gysin {
        Some(g) => MotiveMap::new(p.clone(), target.clone(), g)?,
        None if z.base.dim == 0 && z.twist == 0 && p.h(top) == FgModule::free(1) => {
            let ones = IntMatrix::from_rows(&[vec![1i64; z.base.components]], z.base.components);
            MotiveMap::new(p.clone(), target.clone(), &BTreeMap::from([(top, ones)]))?
        }
        None => return Err(Error::MissingGysinMap(format!("{} -> {}", p.name(), target.name()))),
    };
    MotiveComplex::new(0, vec![p.clone(), target], vec![map])
}

/// Direct sum of two complexes with the same `l`.
pub fn direct_sum(a: &MotiveComplex, b: &MotiveComplex) -> Result<MotiveComplex> {
    if a.terms.is_empty() {
        return Ok(b.clone());
    }
    if b.terms.is_empty() {
        return Ok(a.clone());
    }
    let lo = a.start.min(b.start);
    let hi = (a.degrees().end).max(b.degrees().end);
    let ell = a.ell().unwrap();
    let empty = super::table::CohTable {
        name: "empty".into(),
        ell,
        dim: 0,
        components: 0,
        h: Default::default(),
        duality: true,
    };
    let sum_term = |i: i32| -> Result<PureMotive> {
        let base = match (a.term(i), b.term(i)) {
            (Some(x), Some(y)) => {
                let mut t = untwisted(x).base.disjoint_union(&untwisted(y).base)?;
                t.name = format!("({} + {})", x.name(), y.name());
                t
            }
            (Some(x), None) | (None, Some(x)) => {
                let mut t = untwisted(x).base;
                t.name = x.name();
                t
            }
            (None, None) => empty.clone(),
        };
        Ok(PureMotive::new(base))
    };
    let terms: Vec<PureMotive> = (lo..hi).map(sum_term).collect::<Result<_>>()?;
    let mut diffs = Vec::new();
    for i in lo..hi - 1 {
        let (s, t) = (&terms[(i - lo) as usize], &terms[(i - lo + 1) as usize]);
        let mut mats = BTreeMap::new();
        for q in a.table_degrees().union(&b.table_degrees()) {
            let q = *q;
            let f = block_map(&[a.h(i + 1, q), b.h(i + 1, q)], &[a.h(i, q), b.h(i, q)], |r, c| {
                (r == c).then(|| if r == 0 { a.induced(i, q) } else { b.induced(i, q) }.matrix().clone())
            })?;
            mats.insert(q, f.matrix().clone());
        }
        diffs.push(MotiveMap::new(s.clone(), t.clone(), &mats)?);
    }
    MotiveComplex::new(lo, terms, diffs)
}

/// The same realization with the twist folded into the table.
fn untwisted(m: &PureMotive) -> PureMotive {
    let mut base = m.base.clone();
    base.h = m.realized();
    base.dim += m.twist;
    PureMotive::new(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::table::AtomRegistry;
    use crate::zmod::mat;

    #[test]
    fn gm_complex_uses_all_ones() {
        let reg = AtomRegistry::builtin(2);
        let p1 = reg.motive("P1").unwrap();
        let pts = PureMotive::new(reg.get("pt").unwrap().table.copies(2).unwrap());
        let n = weight_complex_of_complement(&p1, &pts, 1, None).unwrap();
        assert_eq!(n.induced(0, 2).matrix(), &mat(&[[1, 1]]));
        assert_eq!(n.class().to_string(), "+1[H0:Z] -1[H2:Z]");
    }

    #[test]
    fn missing_gysin() {
        let reg = AtomRegistry::builtin(2);
        let p2 = reg.motive("P2").unwrap();
        let p1 = reg.motive("P1").unwrap();
        assert!(matches!(weight_complex_of_complement(&p2, &p1, 1, None), Err(Error::MissingGysinMap(_))));
        let g = BTreeMap::from([(2, mat(&[[1]])), (4, mat(&[[1]]))]);
        let n = weight_complex_of_complement(&p2, &p1, 1, Some(&g)).unwrap();
        assert_eq!(n.class().to_string(), "+1[H0:Z]");
    }

    #[test]
    fn nonzero_square_is_rejected() {
        let reg = AtomRegistry::builtin(2);
        let pt = reg.motive("pt").unwrap();
        let id = MotiveMap::new(pt.clone(), pt.clone(), &BTreeMap::from([(0, mat(&[[1]]))])).unwrap();
        let r = MotiveComplex::new(0, vec![pt.clone(), pt.clone(), pt.clone()], vec![id.clone(), id]);
        assert!(matches!(r, Err(Error::CompositionNonzero)));
    }

    #[test]
    fn sums_keep_differentials() {
        let reg = AtomRegistry::builtin(2);
        let p1 = reg.motive("P1").unwrap();
        let pt = reg.motive("pt").unwrap();
        let a1 = weight_complex_of_complement(&p1, &pt, 1, None).unwrap();
        let s = direct_sum(&a1, &a1).unwrap();
        assert_eq!(s.class(), a1.class().scale(2));
        assert_eq!(s.induced(0, 2).matrix(), &mat(&[[1, 0], [0, 1]]));
    }
}

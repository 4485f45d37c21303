//! Finitely supported integer combinations of isomorphism classes.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::zmod::{k0_class, FgModule, Graded, PrimePower};

/// An indecomposable: `Z`, `Z/p^k`, or either of those placed in a degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator {
    pub degree: Option<i32>,
    pub base: Base,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Base {
    Free,
    Cyclic(PrimePower),
}

impl Generator {
    pub const FREE: Generator = Generator { degree: None, base: Base::Free };

    pub fn cyclic(prime: u64, exponent: u32) -> Self {
        Generator { degree: None, base: Base::Cyclic(PrimePower { prime, exponent }) }
    }

    pub fn in_degree(self, q: i32) -> Self {
        Generator { degree: Some(q), ..self }
    }

    /// The module this generator stands for (degree forgotten).
    pub fn module(&self) -> FgModule {
        match self.base {
            Base::Free => FgModule::free(1),
            Base::Cyclic(pp) => FgModule::cyclic(pp.value()),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.base {
            Base::Free => "Z".to_string(),
            Base::Cyclic(pp) => pp.to_string(),
        };
        match self.degree {
            None => write!(f, "[{base}]"),
            Some(q) => write!(f, "[H{q}:{base}]"),
        }
    }
}

/// A value in `K_0^add`: finitely many nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0AddClass {
    coeffs: BTreeMap<Generator, i64>,
}

impl K0AddClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: Generator) -> Self {
        Self::zero().plus(g, 1)
    }

    /// `n [Z]`.
    pub fn free(n: i64) -> Self {
        Self::zero().plus(Generator::FREE, n)
    }

    /// Class of a module; with `ell`, torsion prime to `ell` is dropped.
    pub fn of_module(m: &FgModule, ell: Option<u64>) -> Self {
        let c = k0_class(m, ell);
        let mut out = Self::free(c.free);
        for (pp, v) in c.torsion {
            out = out.plus(Generator { degree: None, base: Base::Cyclic(pp) }, v);
        }
        out
    }

    /// Class of a graded table, one generator per degree and summand.
    pub fn of_graded(t: &Graded, ell: Option<u64>) -> Self {
        let mut out = Self::zero();
        for (&q, m) in t {
            for (g, v) in Self::of_module(m, ell).coeffs {
                out = out.plus(g.in_degree(q), v);
            }
        }
        out
    }

    pub fn plus(mut self, g: Generator, c: i64) -> Self {
        let e = self.coeffs.entry(g).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&g);
        }
        self
    }

    pub fn coefficient(&self, g: &Generator) -> i64 {
        self.coeffs.get(g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Generator, &i64)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: i64) -> Self {
        if c == 0 {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(g, v)| (*g, v * c)).collect() }
    }

    /// `m` if the class is `m [Z]`.
    pub fn free_multiple(&self) -> Option<i64> {
        match self.coeffs.len() {
            0 => Some(0),
            1 => self.coeffs.get(&Generator::FREE).copied(),
            _ => None,
        }
    }

    pub fn has_torsion(&self) -> bool {
        self.coeffs.keys().any(|g| matches!(g.base, Base::Cyclic(_)))
    }

    /// Keeps the generators sitting in degree `q`, forgetting the degree.
    pub fn degree_part(&self, q: i32) -> Self {
        let mut out = Self::zero();
        for (g, v) in &self.coeffs {
            if g.degree == Some(q) {
                out = out.plus(Generator { degree: None, base: g.base }, *v);
            }
        }
        out
    }

    /// Keeps only the `[Z]`-type generators.
    pub fn free_part(&self) -> Self {
        let coeffs = self.coeffs.iter().filter(|(g, _)| g.base == Base::Free).map(|(g, v)| (*g, *v)).collect();
        Self { coeffs }
    }

    /// Keeps only the cyclic generators.
    pub fn torsion_part(&self) -> Self {
        let coeffs = self.coeffs.iter().filter(|(g, _)| g.base != Base::Free).map(|(g, v)| (*g, *v)).collect();
        Self { coeffs }
    }

    /// Moves every graded generator up by `k` degrees.
    pub fn shift_degrees(&self, k: i32) -> Self {
        let coeffs = self.coeffs.iter().map(|(g, v)| (Generator { degree: g.degree.map(|q| q + k), ..*g }, *v)).collect();
        Self { coeffs }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        let mut ds: Vec<i32> = self.coeffs.keys().filter_map(|g| g.degree).collect();
        ds.dedup();
        ds.into_iter()
    }
}

impl Add for &K0AddClass {
    type Output = K0AddClass;
    fn add(self, rhs: &K0AddClass) -> K0AddClass {
        rhs.coeffs.iter().fold(self.clone(), |acc, (g, v)| acc.plus(*g, *v))
    }
}

impl Neg for &K0AddClass {
    type Output = K0AddClass;
    fn neg(self) -> K0AddClass {
        self.scale(-1)
    }
}

impl Sub for &K0AddClass {
    type Output = K0AddClass;
    fn sub(self, rhs: &K0AddClass) -> K0AddClass {
        self + &(-rhs)
    }
}

impl std::iter::Sum for K0AddClass {
    fn sum<I: Iterator<Item = K0AddClass>>(iter: I) -> Self {
        iter.fold(K0AddClass::zero(), |a, b| &a + &b)
    }
}

impl fmt::Display for K0AddClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self.coeffs.iter().map(|(g, v)| format!("{v:+}{g}")).collect();
        write!(f, "{}", terms.join(" "))
    }
}

fn parse_generator(s: &str) -> Result<Generator> {
    let err = || Error::Parse(format!("bad generator `{s}`"));
    let inner = s.strip_prefix('[').and_then(|t| t.strip_suffix(']')).ok_or_else(err)?;
    let (degree, base) = match inner.strip_prefix('H').and_then(|t| t.split_once(':')) {
        Some((q, b)) => (Some(q.parse::<i32>().map_err(|_| err())?), b),
        None => (None, inner),
    };
    let base = if base == "Z" {
        Base::Free
    } else {
        let n: u64 = base.strip_prefix("Z/").and_then(|n| n.parse().ok()).ok_or_else(err)?;
        match crate::zmod::factorize(n).as_slice() {
            [(prime, exponent)] => Base::Cyclic(PrimePower { prime: *prime, exponent: *exponent }),
            _ => return Err(err()),
        }
    };
    Ok(Generator { degree, base })
}

impl FromStr for K0AddClass {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut out = Self::zero();
        for tok in s.split_whitespace() {
            let open = tok.find('[').ok_or_else(|| Error::Parse(format!("bad term `{tok}`")))?;
            let c: i64 = tok[..open].parse().map_err(|_| Error::Parse(format!("bad coefficient in `{tok}`")))?;
            out = out.plus(parse_generator(&tok[open..])?, c);
        }
        Ok(out)
    }
}

impl Serialize for K0AddClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for K0AddClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

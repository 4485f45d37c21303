//! Pure functors: apply an additive functor termwise, then take homology.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::complex::{ChainMap, Complex};
use crate::error::{Error, Result};
use crate::zmod::{FgModule, Homology, IntMatrix, ModuleMap, Ring};

/// Additive functors from the matrix category to modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TermFunctor {
    Identity,
    TensorMod(u64),
    Rational,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Image {
    Zero,
    /// Free modules; with `rationalize`, homology is reported as its free part.
    Free { rationalize: bool },
    Cyclic(u64),
}

impl TermFunctor {
    fn image(&self, ring: Ring) -> Image {
        use TermFunctor::*;
        match (self, ring) {
            (Identity, Ring::Integers) => Image::Free { rationalize: false },
            (Identity | Rational, Ring::Rationals) | (Rational, Ring::Integers) => Image::Free { rationalize: true },
            (Identity, Ring::Modulo(m)) => Image::Cyclic(m),
            (TensorMod(n), Ring::Integers) => Image::Cyclic(*n),
            (TensorMod(n), Ring::Modulo(m)) => Image::Cyclic(n.gcd(&m)),
            (TensorMod(_), Ring::Rationals) | (Rational, Ring::Modulo(_)) => Image::Zero,
        }
    }

    /// `A(R^rank)`.
    pub fn apply_object(&self, ring: Ring, rank: usize) -> FgModule {
        match self.image(ring) {
            Image::Zero => FgModule::zero(),
            Image::Free { .. } => FgModule::free(rank),
            Image::Cyclic(n) => FgModule::from_cyclic(0, &vec![n; rank]),
        }
    }
}

impl fmt::Display for TermFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermFunctor::Identity => write!(f, "id"),
            TermFunctor::TensorMod(n) => write!(f, "tensor-mod-{n}"),
            TermFunctor::Rational => write!(f, "rational"),
        }
    }
}

impl FromStr for TermFunctor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "id" | "identity" => Ok(TermFunctor::Identity),
            "rational" | "Q" => Ok(TermFunctor::Rational),
            _ => s
                .strip_prefix("tensor-mod-")
                .and_then(|n| n.parse().ok())
                .filter(|&n: &u64| n >= 1)
                .map(TermFunctor::TensorMod)
                .ok_or_else(|| Error::Parse(format!("unknown functor `{s}`"))),
        }
    }
}

/// `A(C)` as maps of canonical modules, and its homology at one degree.
struct Applied {
    image: Image,
    homology: Option<Homology>,
}

fn module_map(a: TermFunctor, ring: Ring, src: usize, tgt: usize, m: IntMatrix) -> ModuleMap {
    let (s, t) = (a.apply_object(ring, src), a.apply_object(ring, tgt));
    if s.is_zero() || t.is_zero() {
        return ModuleMap::zero(s, t);
    }
    ModuleMap::new(s, t, m).expect("termwise image of a matrix is a module map")
}

fn applied(a: TermFunctor, c: &Complex, deg: i32) -> Result<Applied> {
    let ring = c.ring();
    let image = a.image(ring);
    if image == Image::Zero || c.rank(deg) == 0 {
        return Ok(Applied { image, homology: None });
    }
    let d_in = module_map(a, ring, c.rank(deg - 1), c.rank(deg), c.diff(deg - 1));
    let d_out = module_map(a, ring, c.rank(deg), c.rank(deg + 1), c.diff(deg));
    Ok(Applied { image, homology: Some(Homology::new(&d_in, &d_out)?) })
}

fn report(image: Image, m: &FgModule) -> FgModule {
    match image {
        Image::Free { rationalize: true } => m.free_part(),
        _ => m.clone(),
    }
}

/// `H_q` of the complex `A(C)`, where `H_q = H^{-q}`: the homology at the
/// term in complex degree `-q`.
pub fn pure_functor_h(a: TermFunctor, c: &Complex, q: i32) -> Result<FgModule> {
    let ap = applied(a, c, -q)?;
    Ok(ap.homology.as_ref().map_or_else(FgModule::zero, |h| report(ap.image, h.module())))
}

/// The map `H_q(A(C)) -> H_q(A(D))` induced by a chain map, in canonical
/// coordinates.
pub fn induced_homology_map(a: TermFunctor, f: &ChainMap, q: i32) -> Result<ModuleMap> {
    let deg = -q;
    let src = applied(a, f.source(), deg)?;
    let tgt = applied(a, f.target(), deg)?;
    let (Some(hs), Some(ht)) = (&src.homology, &tgt.homology) else {
        let s = src.homology.as_ref().map_or_else(FgModule::zero, |h| report(src.image, h.module()));
        let t = tgt.homology.as_ref().map_or_else(FgModule::zero, |h| report(tgt.image, h.module()));
        return Ok(ModuleMap::zero(s, t));
    };
    let full = hs.induced_map(&f.component(deg), ht)?;
    match src.image {
        Image::Free { rationalize: true } => {
            let (fs, ft) = (hs.module().free_rank(), ht.module().free_rank());
            let rows: Vec<usize> = (0..ft).collect();
            let cols: Vec<usize> = (0..fs).collect();
            ModuleMap::new(FgModule::free(fs), FgModule::free(ft), full.matrix().select(&rows, &cols))
        }
        _ => Ok(full),
    }
}

/// Whether two chain maps induce the same maps on every homology group of
/// their `A`-images.
pub fn induce_equal_maps(a: TermFunctor, m1: &ChainMap, m2: &ChainMap) -> Result<bool> {
    let (lo, hi) = m1.degree_range();
    for deg in lo..=hi {
        if induced_homology_map(a, m1, -deg)? != induced_homology_map(a, m2, -deg)? {
            return Ok(false);
        }
    }
    Ok(true)
}

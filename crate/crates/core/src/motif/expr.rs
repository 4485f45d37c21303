//! Variety expressions over registered atoms and their classes.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::complex::{direct_sum, weight_complex_of_complement, MotiveComplex};
use super::table::{dual_compact_table, AtomRegistry, CohTable, PureMotive};
use crate::error::{Error, Result};
use crate::k0::{k0_product, Base, GradedKunneth, K0AddClass};
use crate::zmod::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarietyExpr {
    Atom(String),
    Product(Box<VarietyExpr>, Box<VarietyExpr>),
    DisjointUnion(Box<VarietyExpr>, Box<VarietyExpr>),
    /// `ambient \ closed`, with `closed` smooth of codimension `codim`.
    Complement {
        ambient: Box<VarietyExpr>,
        closed: Box<VarietyExpr>,
        codim: u32,
        /// `H^q(closed<codim>) -> H^q(ambient)` by degree.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gysin: Option<BTreeMap<i32, IntMatrix>>,
    },
}

impl VarietyExpr {
    pub fn atom(name: &str) -> Self {
        VarietyExpr::Atom(name.to_string())
    }

    pub fn times(self, other: VarietyExpr) -> Self {
        VarietyExpr::Product(Box::new(self), Box::new(other))
    }

    pub fn union(self, other: VarietyExpr) -> Self {
        VarietyExpr::DisjointUnion(Box::new(self), Box::new(other))
    }

    pub fn minus(self, closed: VarietyExpr, codim: u32) -> Self {
        VarietyExpr::Complement { ambient: Box::new(self), closed: Box::new(closed), codim, gysin: None }
    }

    pub fn minus_with(self, closed: VarietyExpr, codim: u32, gysin: BTreeMap<i32, IntMatrix>) -> Self {
        VarietyExpr::Complement { ambient: Box::new(self), closed: Box::new(closed), codim, gysin: Some(gysin) }
    }

    /// `n` disjoint copies of an atom.
    pub fn copies(name: &str, n: usize) -> Self {
        (1..n).fold(Self::atom(name), |e, _| e.union(Self::atom(name)))
    }

    pub fn power(self, n: usize) -> Self {
        (1..n).fold(self.clone(), |e, _| e.times(self.clone()))
    }

    fn is_projective(&self) -> bool {
        match self {
            VarietyExpr::Atom(_) => true,
            VarietyExpr::Product(a, b) | VarietyExpr::DisjointUnion(a, b) => a.is_projective() && b.is_projective(),
            VarietyExpr::Complement { .. } => false,
        }
    }
}

impl fmt::Display for VarietyExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarietyExpr::Atom(n) => write!(f, "{n}"),
            VarietyExpr::Product(a, b) => write!(f, "({a} x {b})"),
            VarietyExpr::DisjointUnion(a, b) => write!(f, "({a} + {b})"),
            VarietyExpr::Complement { ambient, closed, .. } => write!(f, "({ambient} \\ {closed})"),
        }
    }
}

/// Dimension of an expression, checking codimensions along the way.
pub fn dimension(e: &VarietyExpr, reg: &AtomRegistry) -> Result<u32> {
    match e {
        VarietyExpr::Atom(n) => Ok(reg.get(n)?.table.dim),
        VarietyExpr::Product(a, b) => Ok(dimension(a, reg)? + dimension(b, reg)?),
        VarietyExpr::DisjointUnion(a, b) => Ok(dimension(a, reg)?.max(dimension(b, reg)?)),
        VarietyExpr::Complement { ambient, closed, codim, .. } => {
            let (d, z) = (dimension(ambient, reg)?, dimension(closed, reg)?);
            if *codim == 0 || z + codim != d {
                return Err(Error::MalformedExpression(format!(
                    "{closed} has dimension {z}, not codimension {codim} in {ambient} of dimension {d}"
                )));
            }
            Ok(d)
        }
    }
}

/// Like [`dimension`], but rejects disjoint unions of pieces of different
/// dimensions anywhere in the expression.
pub fn pure_dimension(e: &VarietyExpr, reg: &AtomRegistry) -> Result<u32> {
    match e {
        VarietyExpr::Atom(_) => dimension(e, reg),
        VarietyExpr::Product(a, b) => Ok(pure_dimension(a, reg)? + pure_dimension(b, reg)?),
        VarietyExpr::DisjointUnion(a, b) => {
            let (x, y) = (pure_dimension(a, reg)?, pure_dimension(b, reg)?);
            if x != y {
                return Err(Error::MalformedExpression(format!("{e} is not of pure dimension ({x} and {y})")));
            }
            Ok(x)
        }
        VarietyExpr::Complement { ambient, closed, .. } => {
            pure_dimension(ambient, reg)?;
            pure_dimension(closed, reg)?;
            dimension(e, reg)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// Gysin calculus: `[X \ Z] = [X] - [Z]<codim>`.
    Motive,
    /// Scissors calculus on compact supports: `[X \ Z] = [X] - [Z]`.
    CompactSupport,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "m" | "motive" => Ok(Mode::Motive),
            "c" | "compact" | "compact_support" => Ok(Mode::CompactSupport),
            _ => Err(Error::Parse(format!("unknown mode `{s}`"))),
        }
    }
}

/// A class with graded keys, with the dimension it was computed for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrK0Class {
    pub class: K0AddClass,
    pub dim: u32,
}

impl fmt::Display for GrK0Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)
    }
}

/// The class of `[M(X)]` or `[M^c(X)]`.
pub fn class_of(e: &VarietyExpr, mode: Mode, reg: &AtomRegistry) -> Result<GrK0Class> {
    let dim = dimension(e, reg)?;
    Ok(GrK0Class { class: class_rec(e, mode, reg)?, dim })
}

fn class_rec(e: &VarietyExpr, mode: Mode, reg: &AtomRegistry) -> Result<K0AddClass> {
    match e {
        VarietyExpr::Atom(n) => {
            let t = &reg.get(n)?.table;
            let t = match mode {
                Mode::Motive => t.clone(),
                Mode::CompactSupport => dual_compact_table(t, t.dim)?,
            };
            Ok(K0AddClass::of_graded(&t.h, None))
        }
        VarietyExpr::Product(a, b) => {
            k0_product(&class_rec(a, mode, reg)?, &class_rec(b, mode, reg)?, Some(&GradedKunneth))
        }
        VarietyExpr::DisjointUnion(a, b) => Ok(&class_rec(a, mode, reg)? + &class_rec(b, mode, reg)?),
        VarietyExpr::Complement { ambient, closed, codim, .. } => {
            let z = class_rec(closed, mode, reg)?;
            let z = match mode {
                Mode::Motive => z.shift_degrees(2 * *codim as i32),
                Mode::CompactSupport => z,
            };
            Ok(&class_rec(ambient, mode, reg)? - &z)
        }
    }
}

/// Table of a complement-free expression.
pub fn projective_table(e: &VarietyExpr, reg: &AtomRegistry) -> Result<CohTable> {
    match e {
        VarietyExpr::Atom(n) => Ok(reg.get(n)?.table.clone()),
        VarietyExpr::Product(a, b) => projective_table(a, reg)?.product(&projective_table(b, reg)?),
        VarietyExpr::DisjointUnion(a, b) => {
            let (x, y) = (projective_table(a, reg)?, projective_table(b, reg)?);
            let mut t = x.disjoint_union(&y)?;
            if x.name == y.name {
                t.name = format!("2{}", x.name);
            }
            Ok(t)
        }
        VarietyExpr::Complement { .. } => Err(Error::MalformedExpression(format!("{e} is not projective"))),
    }
}

/// A weight complex for `M(X)`: one term for projective expressions, two
/// terms for a single complement of projective pieces, and sums of those.
pub fn motive_complex_of(e: &VarietyExpr, reg: &AtomRegistry) -> Result<MotiveComplex> {
    dimension(e, reg)?;
    if e.is_projective() {
        return Ok(MotiveComplex::one_term(PureMotive::new(projective_table(e, reg)?)));
    }
    match e {
        VarietyExpr::DisjointUnion(a, b) => direct_sum(&motive_complex_of(a, reg)?, &motive_complex_of(b, reg)?),
        VarietyExpr::Complement { ambient, closed, codim, gysin } if ambient.is_projective() && closed.is_projective() => {
            let p = PureMotive::new(projective_table(ambient, reg)?);
            let z = PureMotive::new(projective_table(closed, reg)?);
            weight_complex_of_complement(&p, &z, *codim, gysin.as_ref())
        }
        _ => Err(Error::MalformedExpression(format!("no two-term weight complex for {e}"))),
    }
}

fn eval_poly(c: &[i64], q: i128) -> i128 {
    c.iter().rev().fold(0i128, |acc, &a| acc * q + a as i128)
}

/// `|X(F_q)|` from the atoms' counting polynomials.
pub fn point_count(e: &VarietyExpr, q: u64, reg: &AtomRegistry) -> Result<i128> {
    let q = q as i128;
    match e {
        VarietyExpr::Atom(n) => {
            let a = reg.get(n)?;
            let poly = a.count_poly.as_ref().ok_or_else(|| Error::UncountableAtom(n.clone()))?;
            Ok(eval_poly(poly, q))
        }
        VarietyExpr::Product(a, b) => Ok(point_count(a, q as u64, reg)? * point_count(b, q as u64, reg)?),
        VarietyExpr::DisjointUnion(a, b) => Ok(point_count(a, q as u64, reg)? + point_count(b, q as u64, reg)?),
        VarietyExpr::Complement { ambient, closed, .. } => {
            Ok(point_count(ambient, q as u64, reg)? - point_count(closed, q as u64, reg)?)
        }
    }
}

/// Sends a free generator in degree `2i` to `q^i` and torsion to 0.
pub fn lefschetz_specialize(c: &GrK0Class, q: u64) -> Result<i128> {
    let mut total = 0i128;
    for (g, v) in c.class.terms() {
        let Base::Free = g.base else { continue };
        match g.degree {
            Some(d) if d >= 0 && d % 2 == 0 => total += *v as i128 * (q as i128).pow((d / 2) as u32),
            _ => return Err(Error::NotCellular(format!("free generator {g} in {c}"))),
        }
    }
    Ok(total)
}

/// Torsion-free compact class concentrated in even degrees, with every atom
/// countable.
pub fn is_cellular(e: &VarietyExpr, reg: &AtomRegistry) -> bool {
    let Ok(c) = class_of(e, Mode::CompactSupport, reg) else { return false };
    !c.class.has_torsion()
        && c.class.degrees().all(|d| d % 2 == 0)
        && point_count(e, 2, reg).is_ok()
}

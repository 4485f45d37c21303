//! Exact linear systems and sublattice quotients, all driven by Smith forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;
use super::module::{is_prime, FgModule};
use super::snf::{smith_normal_form, Smith};
use crate::error::{Error, Result};

/// Coefficient ring of a linear computation. Matrices always hold integer
/// representatives; over the rationals any complex can be scaled to integer
/// entries, and over `Z/m` entries are read modulo `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum Ring {
    Integers,
    Rationals,
    Modulo(u64),
}

impl Ring {
    pub fn modulus(&self) -> Option<BigInt> {
        match self {
            Ring::Modulo(m) => Some(BigInt::from(*m)),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Integers => false,
            Ring::Rationals => true,
            Ring::Modulo(m) => is_prime(*m),
        }
    }

    /// Reduces entries into the canonical representative range.
    pub fn normalize(&self, m: &IntMatrix) -> IntMatrix {
        match self.modulus() {
            Some(n) => m.reduce_mod(&n),
            None => m.clone(),
        }
    }

    pub fn is_zero(&self, x: &BigInt) -> bool {
        match self.modulus() {
            Some(n) => x.is_multiple_of(&n),
            None => x.is_zero(),
        }
    }

    pub fn is_zero_matrix(&self, m: &IntMatrix) -> bool {
        m.entries().all(|x| self.is_zero(x))
    }

    /// Whether `x` is invertible in the ring.
    pub fn is_unit(&self, x: &BigInt) -> bool {
        match self {
            Ring::Integers => x.magnitude().is_one(),
            Ring::Rationals => !x.is_zero(),
            Ring::Modulo(m) => x.gcd(&BigInt::from(*m)).is_one() && *m > 1,
        }
    }

    /// Inverse of a unit, as an integer representative.
    pub fn inverse(&self, x: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => x.magnitude().is_one().then(|| x.clone()),
            Ring::Rationals => None,
            Ring::Modulo(m) => {
                let m = BigInt::from(*m);
                let e = x.mod_floor(&m).extended_gcd(&m);
                e.gcd.is_one().then(|| e.x.mod_floor(&m))
            }
        }
    }

    /// Rank of a matrix over this ring when it is a field (or `Z`, meaning
    /// rank over `Q`).
    pub fn rank(&self, m: &IntMatrix) -> Result<usize> {
        let snf = smith_normal_form(m);
        match self {
            Ring::Integers | Ring::Rationals => Ok(snf.rank()),
            Ring::Modulo(p) if is_prime(*p) => Ok(snf.rank_mod_prime(&BigInt::from(*p))),
            Ring::Modulo(_) => Err(Error::UnsupportedRing(*self)),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::Modulo(m) => write!(f, "Z/{m}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            t => t
                .strip_prefix("Z/")
                .and_then(|m| m.parse::<u64>().ok())
                .filter(|&m| m >= 2)
                .map(Ring::Modulo)
                .ok_or_else(|| Error::Parse(format!("unknown ring `{s}`"))),
        }
    }
}

impl TryFrom<String> for Ring {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Ring> for String {
    fn from(r: Ring) -> String {
        r.to_string()
    }
}

/// An exact solution of `A x = b`. Over the rationals the solution is
/// `numerators / denominator`; otherwise the denominator is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub numerators: Vec<BigInt>,
    pub denominator: BigInt,
}

/// Solves `A x = b` over `ring`, returning `None` when no solution exists.
pub fn solve(ring: Ring, a: &IntMatrix, b: &[BigInt]) -> Option<Solution> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    match ring {
        Ring::Integers => solve_integer(a, b).map(|x| Solution { numerators: x, denominator: BigInt::one() }),
        Ring::Rationals => solve_rational(a, b),
        Ring::Modulo(m) => {
            let m = BigInt::from(m);
            let lifted = a.hstack(&IntMatrix::scalar(a.rows(), m.clone()));
            let x = solve_integer(&lifted, b)?;
            let x = x[..a.cols()].iter().map(|v| v.mod_floor(&m)).collect();
            Some(Solution { numerators: x, denominator: BigInt::one() })
        }
    }
}

pub fn solve_integer(a: &IntMatrix, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let snf = smith_normal_form(a);
    solve_with(&snf, b)
}

/// Solves with a precomputed Smith form of `A`.
pub fn solve_with(snf: &Smith, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![BigInt::zero(); snf.v.rows()];
    for i in 0..r {
        let (q, rem) = c[i].div_rem(&snf.s[(i, i)]);
        if !rem.is_zero() {
            return None;
        }
        y[i] = q;
    }
    Some(snf.v.mul_vec(&y))
}

fn solve_rational(a: &IntMatrix, b: &[BigInt]) -> Option<Solution> {
    let snf = smith_normal_form(a);
    let c = snf.u.mul_vec(b);
    let r = snf.rank();
    if c[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut denominator = BigInt::one();
    for i in 0..r {
        let s = &snf.s[(i, i)];
        let g = c[i].gcd(s);
        denominator = denominator.lcm(&(s / g));
    }
    let mut y = vec![BigInt::zero(); a.cols()];
    for i in 0..r {
        y[i] = &c[i] * &denominator / &snf.s[(i, i)];
    }
    Some(Solution { numerators: snf.v.mul_vec(&y), denominator })
}

/// Columns form a basis of the integer kernel `{x : A x = 0}`.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(a);
    let cols: Vec<usize> = (snf.rank()..a.cols()).collect();
    let rows: Vec<usize> = (0..a.cols()).collect();
    snf.v.select(&rows, &cols)
}

/// Columns form a basis of the lattice spanned by the columns of `g`.
pub fn span_basis(g: &IntMatrix) -> IntMatrix {
    let snf = smith_normal_form(g);
    let r = snf.rank();
    let mut basis = IntMatrix::zeros(g.rows(), r);
    for k in 0..r {
        let s = &snf.s[(k, k)];
        for i in 0..g.rows() {
            basis[(i, k)] = &snf.u_inv[(i, k)] * s;
        }
    }
    basis
}

/// A subquotient `L / I` of `Z^n` with `I` contained in `L`, put in
/// canonical form. Elements of `L` can be mapped to canonical coordinates
/// and canonical generators lifted back to `L`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ambient: usize,
    basis: IntMatrix,
    basis_snf: Smith,
    coords_snf: Smith,
    free_positions: Vec<usize>,
    torsion_positions: Vec<usize>,
    module: FgModule,
}

impl Subquotient {
    /// `sub` and `quotient` are generator columns of `L` and `I`.
    pub fn new(sub: &IntMatrix, quotient: &IntMatrix) -> Result<Self> {
        assert_eq!(sub.rows(), quotient.rows(), "subquotient ambient mismatch");
        let ambient = sub.rows();
        let basis = span_basis(sub);
        let basis_snf = smith_normal_form(&basis);
        let l = basis.cols();
        let mut coords = IntMatrix::zeros(l, quotient.cols());
        for j in 0..quotient.cols() {
            let c = solve_with(&basis_snf, &quotient.col(j)).ok_or_else(|| {
                Error::DimensionMismatch("quotient generator lies outside the sublattice".into())
            })?;
            for i in 0..l {
                coords[(i, j)] = c[i].clone();
            }
        }
        let coords_snf = smith_normal_form(&coords);
        let r = coords_snf.rank();
        let free_positions: Vec<usize> = (r..l).collect();
        let torsion_positions: Vec<usize> =
            (0..r).filter(|&i| !coords_snf.s[(i, i)].is_one()).collect();
        let orders: Vec<BigInt> = torsion_positions.iter().map(|&i| coords_snf.s[(i, i)].clone()).collect();
        let module = FgModule::from_big_cyclic(free_positions.len(), &orders);
        debug_assert_eq!(module.torsion().len(), orders.len());
        Ok(Self { ambient, basis, basis_snf, coords_snf, free_positions, torsion_positions, module })
    }

    pub fn module(&self) -> &FgModule {
        &self.module
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.free_positions.iter().chain(&self.torsion_positions).copied()
    }

    /// Canonical coordinates of an element of `L` (as a vector in `Z^n`).
    /// Returns `None` if `x` is not in `L`.
    pub fn coordinates(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        let c = solve_with(&self.basis_snf, x)?;
        let w = self.coords_snf.u.mul_vec(&c);
        let v: Vec<BigInt> = self.positions().map(|i| w[i].clone()).collect();
        Some(self.module.normalize_vector(&v))
    }

    /// Representatives in `Z^n` of the canonical generators, in order.
    pub fn generators(&self) -> Vec<Vec<BigInt>> {
        self.positions()
            .map(|i| {
                let col = self.coords_snf.u_inv.col(i);
                self.basis.mul_vec(&col)
            })
            .collect()
    }
}

//! Finitely generated abelian groups in canonical form, and maps between them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::matrix::IntMatrix;
use crate::error::{Error, Result};

/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `2 <= d_1 | d_2 | ... | d_k`.
///
/// Construction always canonicalises, so two values are isomorphic as
/// abelian groups exactly when they compare equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FgModule {
    free_rank: usize,
    torsion: Vec<u64>,
}

impl FgModule {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_cyclic(0, &[order])
    }

    /// Canonical form of `Z^free + (+)_i Z/orders[i]`. An order of 0 stands
    /// for a free summand, an order of 1 for the trivial group.
    pub fn from_cyclic(free: usize, orders: &[u64]) -> Self {
        let mut free_rank = free;
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &d in orders {
            match d {
                0 => free_rank += 1,
                1 => {}
                _ => {
                    for (p, e) in factorize(d) {
                        by_prime.entry(p).or_default().push(p.pow(e));
                    }
                }
            }
        }
        // Largest prime powers multiply into the last invariant factor, and so on.
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![1u64; len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable();
            let offset = len - powers.len();
            for (k, q) in powers.iter().enumerate() {
                torsion[offset + k] = torsion[offset + k]
                    .checked_mul(*q)
                    .expect("torsion divisor exceeds 64 bits");
            }
        }
        Self { free_rank, torsion }
    }

    /// Canonicalises a list of big-integer orders (as produced by Smith forms).
    pub fn from_big_cyclic(free: usize, orders: &[BigInt]) -> Self {
        let orders: Vec<u64> = orders
            .iter()
            .map(|d| d.abs_u64().expect("torsion divisor exceeds 64 bits"))
            .collect();
        Self::from_cyclic(free, &orders)
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of canonical generators (free ones first, then torsion).
    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    /// Order of generator `i`: 0 for free generators.
    pub fn generator_order(&self, i: usize) -> u64 {
        if i < self.free_rank {
            0
        } else {
            self.torsion[i - self.free_rank]
        }
    }

    /// Cardinality, `None` when infinite.
    pub fn order(&self) -> Option<u128> {
        if self.free_rank > 0 {
            return None;
        }
        Some(self.torsion.iter().map(|&d| d as u128).product())
    }

    pub fn torsion_part(&self) -> Self {
        Self { free_rank: 0, torsion: self.torsion.clone() }
    }

    pub fn free_part(&self) -> Self {
        Self::free(self.free_rank)
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut orders = self.torsion.clone();
        orders.extend_from_slice(&other.torsion);
        Self::from_cyclic(self.free_rank + other.free_rank, &orders)
    }

    /// Direct sum of `k` copies.
    pub fn power(&self, k: usize) -> Self {
        let mut orders = Vec::with_capacity(self.torsion.len() * k);
        for _ in 0..k {
            orders.extend_from_slice(&self.torsion);
        }
        Self::from_cyclic(self.free_rank * k, &orders)
    }

    /// `M (x) Z/n`.
    pub fn tensor_mod(&self, n: u64) -> Self {
        let mut orders = vec![n; self.free_rank];
        orders.extend(self.torsion.iter().map(|&d| d.gcd(&n)));
        Self::from_cyclic(0, &orders)
    }

    /// The `n`-torsion subgroup `{x : n x = 0}`.
    pub fn n_torsion(&self, n: u64) -> Self {
        let orders: Vec<u64> = self.torsion.iter().map(|&d| d.gcd(&n)).collect();
        Self::from_cyclic(0, &orders)
    }

    /// Tensor product over the integers.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for _ in 0..self.free_rank {
            orders.extend_from_slice(&other.torsion);
        }
        for _ in 0..other.free_rank {
            orders.extend_from_slice(&self.torsion);
        }
        for &a in &self.torsion {
            for &b in &other.torsion {
                orders.push(a.gcd(&b));
            }
        }
        Self::from_cyclic(self.free_rank * other.free_rank, &orders)
    }

    /// `Tor_1^Z(M, N)`.
    pub fn tor(&self, other: &Self) -> Self {
        let mut orders = Vec::new();
        for &a in &self.torsion {
            for &b in &other.torsion {
                orders.push(a.gcd(&b));
            }
        }
        Self::from_cyclic(0, &orders)
    }

    /// Column matrix whose columns generate the relation lattice of the
    /// canonical presentation `Z^g / R`.
    pub fn relation_matrix(&self) -> IntMatrix {
        let g = self.num_generators();
        let mut r = IntMatrix::zeros(g, self.torsion.len());
        for (k, &d) in self.torsion.iter().enumerate() {
            r[(self.free_rank + k, k)] = BigInt::from(d);
        }
        r
    }

    /// Whether `v` (coordinates on canonical generators) represents zero.
    pub fn is_zero_vector(&self, v: &[BigInt]) -> bool {
        v.iter().enumerate().all(|(i, x)| match self.generator_order(i) {
            0 => x.is_zero(),
            d => x.is_multiple_of(&BigInt::from(d)),
        })
    }

    /// Reduces torsion coordinates into `[0, d)`.
    pub fn normalize_vector(&self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter()
            .enumerate()
            .map(|(i, x)| match self.generator_order(i) {
                0 => x.clone(),
                d => x.mod_floor(&BigInt::from(d)),
            })
            .collect()
    }
}

trait AbsU64 {
    fn abs_u64(&self) -> Option<u64>;
}

impl AbsU64 for BigInt {
    fn abs_u64(&self) -> Option<u64> {
        self.magnitude().to_u64()
    }
}

/// Prime factorisation by trial division.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factorize(n) == vec![(n, 1)]
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl FromStr for FgModule {
    type Err = Error;

    /// Parses `Z^r + Z/d1 + ...`; summands may come in any order and need
    /// not form a divisor chain. `0` is the trivial group.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed module `{s}`"));
        let mut free = 0usize;
        let mut orders = Vec::new();
        for term in s.split('+').map(str::trim) {
            let compact: String = term.chars().filter(|c| !c.is_whitespace()).collect();
            match compact.as_str() {
                "0" => {}
                "Z" => free += 1,
                t if t.starts_with("Z^") => {
                    free += t[2..].parse::<usize>().map_err(|_| bad())?;
                }
                t if t.starts_with("Z/") => {
                    let d: u64 = t[2..].parse().map_err(|_| bad())?;
                    if d == 0 {
                        return Err(bad());
                    }
                    orders.push(d);
                }
                _ => return Err(bad()),
            }
        }
        Ok(Self::from_cyclic(free, &orders))
    }
}

impl Serialize for FgModule {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for FgModule {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A homomorphism between canonical modules, given by its action on the
/// canonical generators (column `j` is the image of source generator `j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: FgModule,
    target: FgModule,
    matrix: IntMatrix,
}

impl ModuleMap {
    pub fn new(source: FgModule, target: FgModule, matrix: IntMatrix) -> Result<Self> {
        if matrix.shape() != (target.num_generators(), source.num_generators()) {
            return Err(Error::DimensionMismatch(format!(
                "map {source} -> {target} needs a {}x{} matrix, got {}x{}",
                target.num_generators(),
                source.num_generators(),
                matrix.rows(),
                matrix.cols()
            )));
        }
        // d * column must vanish in the target for a generator of order d.
        for j in 0..source.num_generators() {
            let d = source.generator_order(j);
            if d == 0 {
                continue;
            }
            let col: Vec<BigInt> = matrix.col(j).iter().map(|x| x * d).collect();
            if !target.is_zero_vector(&col) {
                return Err(Error::IncompatibleMap(format!(
                    "generator {j} of order {d} in {source} is not sent to an element killed by {d} in {target}"
                )));
            }
        }
        let matrix = reduce_columns(&target, &matrix);
        Ok(Self { source, target, matrix })
    }

    pub fn zero(source: FgModule, target: FgModule) -> Self {
        let matrix = IntMatrix::zeros(target.num_generators(), source.num_generators());
        Self { source, target, matrix }
    }

    pub fn identity(m: FgModule) -> Self {
        let matrix = IntMatrix::identity(m.num_generators());
        Self { source: m.clone(), target: m, matrix }
    }

    pub fn source(&self) -> &FgModule {
        &self.source
    }

    pub fn target(&self) -> &FgModule {
        &self.target
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    /// `other` after `self`.
    pub fn then(&self, other: &ModuleMap) -> Result<ModuleMap> {
        if self.target != other.source {
            return Err(Error::DimensionMismatch(format!(
                "cannot compose {} -> {} with {} -> {}",
                self.source, self.target, other.source, other.target
            )));
        }
        ModuleMap::new(self.source.clone(), other.target.clone(), &other.matrix * &self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        (0..self.matrix.cols()).all(|j| self.target.is_zero_vector(&self.matrix.col(j)))
    }

    pub fn apply(&self, v: &[BigInt]) -> Vec<BigInt> {
        self.target.normalize_vector(&self.matrix.mul_vec(v))
    }
}

fn reduce_columns(target: &FgModule, m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        let d = target.generator_order(i);
        if d != 0 {
            let d = BigInt::from(d);
            for j in 0..m.cols() {
                out[(i, j)] = m[(i, j)].mod_floor(&d);
            }
        }
    }
    out
}

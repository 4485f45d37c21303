//! Splitting contractible complexes into elementary pieces of `Kar(B)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use super::complex::{Complex, Homotopy, KarObject};
use super::solve::is_contractible;
use crate::error::{Error, Result};
use crate::zmod::{image, smith_normal_form, FgModule, IntMatrix, ModuleMap, Ring};

/// A contractible complex presented as `(+)_i Cone(id_{O^i})` placed in
/// degrees `i, i + 1`.
#[derive(Clone, Debug)]
pub struct Splitting {
    pub homotopy: Homotopy,
    /// `(i, O^i)` with `O^i` the image of `s d` on `C^i`; zero pieces omitted.
    pub pieces: Vec<(i32, KarObject)>,
}

/// Rank of the image of an idempotent.
pub fn kar_rank(obj: &KarObject) -> usize {
    let snf = smith_normal_form(&obj.idempotent);
    match obj.carrier.ring.modulus() {
        None => snf.rank(),
        Some(m) => snf.diagonal().iter().filter(|x| x.gcd(&m).is_one()).count(),
    }
}

/// Splits a contractible complex. The contracting homotopy is normalised to
/// `s d s`, after which `(s d)^i` and `(d s)^i` are complementary idempotents.
pub fn split_contractible(c: &Complex) -> Result<Splitting> {
    let s = is_contractible(c).ok_or(Error::NotContractible)?;
    if !s.denominator.is_one() {
        // Only integral witnesses give objects of Kar(B) over the base ring.
        return Err(Error::UnsupportedRing(c.ring()));
    }
    let ring = c.ring();
    let comp = |i: i32| s.component(i, c, c);
    let normalized: std::collections::BTreeMap<i32, IntMatrix> = c
        .degrees()
        .chain(c.support().map(|(_, b)| b + 1))
        .map(|i| (i, ring.normalize(&(&(&comp(i) * &c.diff(i - 1)) * &comp(i)))))
        .collect();
    let homotopy = Homotopy { components: normalized, denominator: BigInt::one() };
    let mut pieces = Vec::new();
    for i in c.degrees() {
        let p = ring.normalize(&(&homotopy.component(i + 1, c, c) * &c.diff(i)));
        let obj = KarObject::new(c.term(i), p)?;
        if kar_rank(&obj) > 0 {
            pieces.push((i, obj));
        }
    }
    Ok(Splitting { homotopy, pieces })
}

impl Splitting {
    /// `(d s)^i`, the complementary idempotent on `C^i`.
    pub fn boundary_idempotent(&self, c: &Complex, i: i32) -> IntMatrix {
        c.ring().normalize(&(&c.diff(i - 1) * &self.homotopy.component(i, c, c)))
    }

    /// Images of `(s d)^i` and `(d s)^i` after `- (x) Z/n`, summed over even
    /// and over odd degrees respectively.
    pub fn even_odd_images(&self, c: &Complex, n: u64) -> Result<(FgModule, FgModule)> {
        let modulus = match c.ring() {
            Ring::Integers => n,
            Ring::Modulo(m) => m.gcd(&n),
            Ring::Rationals => return Err(Error::UnsupportedRing(Ring::Rationals)),
        };
        let mut even = FgModule::zero();
        let mut odd = FgModule::zero();
        if modulus == 1 {
            return Ok((even, odd));
        }
        for i in c.degrees() {
            let r = c.rank(i);
            let obj = FgModule::from_cyclic(0, &vec![modulus; r]);
            let sd = &self.homotopy.component(i + 1, c, c) * &c.diff(i);
            let ds = self.boundary_idempotent(c, i);
            let im = image(&ModuleMap::new(obj.clone(), obj.clone(), sd)?)?
                .direct_sum(&image(&ModuleMap::new(obj.clone(), obj, ds)?)?);
            if i.rem_euclid(2) == 0 {
                even = even.direct_sum(&im);
            } else {
                odd = odd.direct_sum(&im);
            }
        }
        Ok((even, odd))
    }
}

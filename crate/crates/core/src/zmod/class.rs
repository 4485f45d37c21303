//! Classes in the split Grothendieck group of finitely generated modules.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::module::{factorize, FgModule};

/// The cyclic group `Z/p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimePower {
    pub prime: u64,
    pub exponent: u32,
}

impl PrimePower {
    pub fn value(&self) -> u64 {
        self.prime.pow(self.exponent)
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z/{}", self.value())
    }
}

/// `free [Z] + sum_i c_i [Z/p_i^k_i]`, the basis of `K_0^add` of finitely
/// generated (l-local) modules.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct K0ModClass {
    pub free: i64,
    pub torsion: BTreeMap<PrimePower, i64>,
}

impl K0ModClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.free == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free == 0
    }

    pub fn scale(&self, c: i64) -> Self {
        let mut out = Self { free: self.free * c, torsion: BTreeMap::new() };
        if c != 0 {
            out.torsion = self.torsion.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    fn add_torsion(&mut self, key: PrimePower, c: i64) {
        let e = self.torsion.entry(key).or_insert(0);
        *e += c;
        if *e == 0 {
            self.torsion.remove(&key);
        }
    }
}

/// Class of `M` in `K_0^add`. With `ell` given, torsion prime to `ell` is
/// dropped, matching `- (x) Z_(ell)`.
pub fn k0_class(m: &FgModule, ell: Option<u64>) -> K0ModClass {
    let mut class = K0ModClass { free: m.free_rank() as i64, torsion: BTreeMap::new() };
    for &d in m.torsion() {
        for (prime, exponent) in factorize(d) {
            if ell.is_some_and(|l| l != prime) {
                continue;
            }
            class.add_torsion(PrimePower { prime, exponent }, 1);
        }
    }
    class
}

impl Add for &K0ModClass {
    type Output = K0ModClass;
    fn add(self, rhs: &K0ModClass) -> K0ModClass {
        let mut out = self.clone();
        out.free += rhs.free;
        for (k, v) in &rhs.torsion {
            out.add_torsion(*k, *v);
        }
        out
    }
}

impl Neg for &K0ModClass {
    type Output = K0ModClass;
    fn neg(self) -> K0ModClass {
        self.scale(-1)
    }
}

impl Sub for &K0ModClass {
    type Output = K0ModClass;
    fn sub(self, rhs: &K0ModClass) -> K0ModClass {
        self + &(-rhs)
    }
}

impl fmt::Display for K0ModClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        if self.free != 0 {
            terms.push(format!("{:+}[Z]", self.free));
        }
        for (k, v) in &self.torsion {
            terms.push(format!("{v:+}[{k}]"));
        }
        write!(f, "{}", terms.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_module_class() {
        let c = k0_class(&FgModule::free(1), Some(5));
        assert_eq!(c.to_string(), "+1[Z]");
    }

    #[test]
    fn prime_power_summand() {
        let ell = 3;
        let m = FgModule::from_cyclic(1, &[ell * ell]);
        let c = k0_class(&m, Some(ell));
        assert_eq!(c.free, 1);
        assert_eq!(c.torsion.get(&PrimePower { prime: 3, exponent: 2 }), Some(&1));
        assert_eq!(c.to_string(), "+1[Z] +1[Z/9]");
    }

    #[test]
    fn localization_discards_other_primes() {
        let c = k0_class(&FgModule::cyclic(6), Some(2));
        assert_eq!(c.to_string(), "+1[Z/2]");
        let all = k0_class(&FgModule::cyclic(6), None);
        assert_eq!(all.to_string(), "+1[Z/2] +1[Z/3]");
    }
}

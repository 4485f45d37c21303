//! Cohomology tables and pure motives.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::zmod::{factorize, is_prime, kunneth, FgModule, Graded};

/// `l`-adic cohomology of a smooth projective variety: `H^q` for
/// `0 <= q <= 2 dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohTable {
    pub name: String,
    pub ell: u64,
    pub dim: u32,
    pub components: usize,
    #[serde(rename = "H")]
    pub h: Graded,
    #[serde(default)]
    pub duality: bool,
}

impl CohTable {
    /// Builds and validates a table.
    pub fn new(name: &str, ell: u64, dim: u32, components: usize, h: Graded, duality: bool) -> Result<Self> {
        let t = Self { name: name.to_string(), ell, dim, components, h: trim(h), duality };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |reason: String| Err(Error::InvalidTable { name: self.name.clone(), reason });
        if !is_prime(self.ell) {
            return bad(format!("l = {} is not prime", self.ell));
        }
        let top = 2 * self.dim as i32;
        if let Some(q) = self.h.keys().find(|&&q| !(0..=top).contains(&q)) {
            return bad(format!("H^{q} outside [0, {top}]"));
        }
        if self.get(0) != FgModule::free(self.components) {
            return bad(format!("H^0 = {} is not free of rank {}", self.get(0), self.components));
        }
        if !self.get(1).is_free() {
            return bad(format!("torsion in H^1 = {}", self.get(1)));
        }
        for (q, m) in &self.h {
            if let Some(d) = m.torsion().iter().find(|&&d| factorize(d).iter().any(|&(p, _)| p != self.ell)) {
                return bad(format!("H^{q} has torsion Z/{d} prime to l = {}", self.ell));
            }
        }
        if self.duality {
            for q in 0..=top {
                let (a, b) = (self.get(q).free_rank(), self.get(top - q).free_rank());
                if a != b {
                    return bad(format!("duality: b_{q} = {a} but b_{} = {b}", top - q));
                }
                let (s, t) = (self.get(q).torsion_part(), self.get(top + 1 - q).torsion_part());
                if s != t {
                    return bad(format!("duality: Tor H^{q} = {s} but Tor H^{} = {t}", top + 1 - q));
                }
            }
        }
        Ok(())
    }

    pub fn get(&self, q: i32) -> FgModule {
        self.h.get(&q).cloned().unwrap_or_default()
    }

    /// Sum of tables: cohomology of a disjoint union.
    pub fn disjoint_union(&self, other: &CohTable) -> Result<CohTable> {
        same_ell(self, other)?;
        Ok(CohTable {
            name: format!("({} + {})", self.name, other.name),
            ell: self.ell,
            dim: self.dim.max(other.dim),
            components: self.components + other.components,
            h: graded_sum(&self.h, &other.h),
            duality: self.duality && other.duality && self.dim == other.dim,
        })
    }

    /// Kunneth table of a product.
    pub fn product(&self, other: &CohTable) -> Result<CohTable> {
        same_ell(self, other)?;
        Ok(CohTable {
            name: format!("{} x {}", self.name, other.name),
            ell: self.ell,
            dim: self.dim + other.dim,
            components: self.components * other.components,
            h: trim(kunneth(&self.h, &other.h)),
            duality: self.duality && other.duality,
        })
    }

    /// `k` copies of the table, e.g. a set of points.
    pub fn copies(&self, k: usize) -> Result<CohTable> {
        let mut out = CohTable { name: "empty".into(), ell: self.ell, dim: self.dim, components: 0, h: Graded::new(), duality: true };
        for _ in 0..k {
            out = out.disjoint_union(self)?;
        }
        if k > 0 {
            out.name = if k == 1 { self.name.clone() } else { format!("{k}{}", self.name) };
        }
        Ok(out)
    }
}

fn same_ell(a: &CohTable, b: &CohTable) -> Result<()> {
    if a.ell != b.ell {
        return Err(Error::InvalidTable {
            name: b.name.clone(),
            reason: format!("l = {} does not match l = {} of `{}`", b.ell, a.ell, a.name),
        });
    }
    Ok(())
}

/// Drops zero entries so that equal tables compare equal.
pub fn trim(h: Graded) -> Graded {
    h.into_iter().filter(|(_, m)| !m.is_zero()).collect()
}

pub fn graded_sum(a: &Graded, b: &Graded) -> Graded {
    let mut out = a.clone();
    for (q, m) in b {
        let e = out.entry(*q).or_default();
        *e = e.direct_sum(m);
    }
    trim(out)
}

pub fn graded_shift(h: &Graded, k: i32) -> Graded {
    h.iter().map(|(q, m)| (q + k, m.clone())).collect()
}

/// Compact-support table of a `d`-dimensional variety: free rank in degree
/// `q` is `b_{2d-q}`, torsion in degree `q` is `Tor H^{2d+1-q}`.
pub fn dual_compact_table(t: &CohTable, d: u32) -> Result<CohTable> {
    if !t.duality {
        return Err(Error::NoDualityFlag(t.name.clone()));
    }
    let top = 2 * d as i32;
    let h = (0..=top + 1)
        .map(|q| (q, FgModule::free(t.get(top - q).free_rank()).direct_sum(&t.get(top + 1 - q).torsion_part())))
        .collect();
    Ok(CohTable { h: trim(h), ..t.clone() })
}

/// An effective pure motive `base<twist>`; realized as `base` shifted up by
/// `2 twist`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PureMotive {
    pub base: CohTable,
    #[serde(default)]
    pub twist: u32,
}

impl PureMotive {
    pub fn new(base: CohTable) -> Self {
        Self { base, twist: 0 }
    }

    pub fn name(&self) -> String {
        match self.twist {
            0 => self.base.name.clone(),
            k => format!("{}<{k}>", self.base.name),
        }
    }

    pub fn realized(&self) -> Graded {
        graded_shift(&self.base.h, 2 * self.twist as i32)
    }

    /// `H^q` of the realization.
    pub fn h(&self, q: i32) -> FgModule {
        self.base.get(q - 2 * self.twist as i32)
    }

    pub fn ell(&self) -> u64 {
        self.base.ell
    }
}

pub fn tate_twist(m: &PureMotive, k: u32) -> PureMotive {
    PureMotive { base: m.base.clone(), twist: m.twist + k }
}

/// A registered smooth projective variety: its table and, optionally, its
/// point count over `F_q` as a polynomial in `q` (ascending coefficients).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "AtomRepr", into = "AtomRepr")]
pub struct Atom {
    pub table: CohTable,
    pub count_poly: Option<Vec<i64>>,
}

/// File form of an atom: the table fields and `count_poly` side by side.
#[derive(Clone, Serialize, Deserialize)]
struct AtomRepr {
    name: String,
    ell: u64,
    dim: u32,
    components: usize,
    #[serde(rename = "H")]
    h: Graded,
    #[serde(default)]
    duality: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    count_poly: Option<Vec<i64>>,
}

impl From<AtomRepr> for Atom {
    fn from(r: AtomRepr) -> Self {
        let table = CohTable { name: r.name, ell: r.ell, dim: r.dim, components: r.components, h: trim(r.h), duality: r.duality };
        Atom { table, count_poly: r.count_poly }
    }
}

impl From<Atom> for AtomRepr {
    fn from(a: Atom) -> Self {
        let t = a.table;
        AtomRepr { name: t.name, ell: t.ell, dim: t.dim, components: t.components, h: t.h, duality: t.duality, count_poly: a.count_poly }
    }
}

/// Registered atoms by name.
#[derive(Clone, Debug, Default)]
pub struct AtomRegistry {
    atoms: BTreeMap<String, Atom>,
}

fn table(name: &str, ell: u64, dim: u32, entries: &[(i32, &str)]) -> CohTable {
    let h = entries.iter().map(|(q, m)| (*q, m.parse().expect("literal module"))).collect();
    CohTable::new(name, ell, dim, 1, h, true).expect("built-in table is valid")
}

impl AtomRegistry {
    /// `pt` and `P1` only.
    pub fn new(ell: u64) -> Self {
        let mut reg = Self::default();
        reg.insert(Atom { table: table("pt", ell, 0, &[(0, "Z")]), count_poly: Some(vec![1]) });
        reg.insert(Atom { table: table("P1", ell, 1, &[(0, "Z"), (2, "Z")]), count_poly: Some(vec![1, 1]) });
        reg
    }

    /// The shipped corpus: `pt`, `P1`, `P2`, a genus-1 curve `E1` (no point
    /// count) and, for `l = 2`, the Enriques-like surface `enriques`.
    pub fn builtin(ell: u64) -> Self {
        let mut reg = Self::new(ell);
        reg.insert(Atom {
            table: table("P2", ell, 2, &[(0, "Z"), (2, "Z"), (4, "Z")]),
            count_poly: Some(vec![1, 1, 1]),
        });
        reg.insert(Atom { table: table("E1", ell, 1, &[(0, "Z"), (1, "Z^2"), (2, "Z")]), count_poly: None });
        if ell == 2 {
            reg.insert(Atom {
                table: table("enriques", 2, 2, &[(0, "Z"), (2, "Z^10 + Z/2"), (3, "Z/2"), (4, "Z")]),
                count_poly: Some(vec![1, 10, 1]),
            });
        }
        reg
    }

    fn insert(&mut self, atom: Atom) {
        self.atoms.insert(atom.table.name.clone(), atom);
    }

    /// Validates and adds an atom, returning it as an untwisted motive.
    pub fn register_atom(&mut self, atom: Atom) -> Result<PureMotive> {
        atom.table.validate()?;
        let m = PureMotive::new(atom.table.clone());
        self.insert(atom);
        Ok(m)
    }

    pub fn get(&self, name: &str) -> Result<&Atom> {
        self.atoms.get(name).ok_or_else(|| Error::UnknownAtom(name.to_string()))
    }

    pub fn motive(&self, name: &str) -> Result<PureMotive> {
        Ok(PureMotive::new(self.get(name)?.table.clone()))
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.atoms.values()
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn max_dim(&self) -> u32 {
        self.atoms.values().map(|a| a.table.dim).max().unwrap_or(0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graded(entries: &[(i32, &str)]) -> Graded {
        entries.iter().map(|(d, s)| (*d, s.parse().unwrap())).collect()
    }

    #[test]
    fn builtins() {
        let reg = AtomRegistry::builtin(2);
        assert_eq!(reg.get("pt").unwrap().table.h, graded(&[(0, "Z")]));
        assert_eq!(reg.get("P1").unwrap().table.h, graded(&[(0, "Z"), (2, "Z")]));
        assert!(reg.get("enriques").is_ok());
        assert!(AtomRegistry::builtin(3).get("enriques").is_err());
    }

    #[test]
    fn invalid_tables_name_the_invariant() {
        let cases = [
            (graded(&[(0, "Z"), (1, "Z/2")]), "torsion in H^1"),
            (graded(&[(0, "Z/2")]), "H^0"),
            (graded(&[(0, "Z"), (3, "Z")]), "outside"),
            (graded(&[(0, "Z"), (2, "Z + Z/3")]), "prime to l"),
        ];
        for (h, needle) in cases {
            let err = CohTable::new("bad", 2, 1, 1, h, false).unwrap_err();
            let Error::InvalidTable { reason, .. } = err else { panic!("wrong error") };
            assert!(reason.contains(needle), "{reason}");
        }
        let asym = CohTable::new("asym", 2, 1, 1, graded(&[(0, "Z")]), true).unwrap_err();
        assert!(asym.to_string().contains("duality"));
    }

    #[test]
    fn twists_and_duals() {
        let reg = AtomRegistry::builtin(2);
        let pt = reg.motive("pt").unwrap();
        assert_eq!(tate_twist(&pt, 1).realized(), graded(&[(2, "Z")]));
        let t = &reg.get("pt").unwrap().table;
        assert_eq!(&dual_compact_table(t, 0).unwrap(), t);
        let e = &reg.get("enriques").unwrap().table;
        assert_eq!(&dual_compact_table(e, 2).unwrap(), e);
        let mut nf = t.clone();
        nf.duality = false;
        assert!(matches!(dual_compact_table(&nf, 0), Err(Error::NoDualityFlag(_))));
    }

    #[test]
    fn json_round_trip() {
        let reg = AtomRegistry::builtin(2);
        let a = reg.get("enriques").unwrap();
        let s = serde_json::to_string(a).unwrap();
        assert!(s.contains("\"H\":{\"0\":\"Z\""));
        let back: Atom = serde_json::from_str(&s).unwrap();
        assert_eq!(&back, a);
    }
}

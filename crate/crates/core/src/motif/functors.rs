use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use super::table::{dual_compact_table, graded_sum, tate_twist, AtomRegistry, PureMotive};
use crate::error::{Error, Result};
use crate::k0::{FunctorRegistry, K0AddClass};
use crate::zmod::{FgModule, Graded};

/// `E^n = H^{2d-n}` of the compact-support table, `H^n`, `F^n = Tor H^n`
/// and `G^n = H^n / Tor`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum MotifFunctor {
    E(i32),
    H(i32),
    F(i32),
    G(i32),
}

impl fmt::Display for MotifFunctor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (c, n) = match self {
            MotifFunctor::E(n) => ('E', n),
            MotifFunctor::H(n) => ('H', n),
            MotifFunctor::F(n) => ('F', n),
            MotifFunctor::G(n) => ('G', n),
        };
        write!(f, "{c}^{n}")
    }
}

impl FromStr for MotifFunctor {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(format!("unknown functor `{s}`"));
        let (c, n) = s.split_once('^').ok_or_else(err)?;
        let n: i32 = n.parse().map_err(|_| err())?;
        match c {
            "E" => Ok(MotifFunctor::E(n)),
            "H" => Ok(MotifFunctor::H(n)),
            "F" => Ok(MotifFunctor::F(n)),
            "G" => Ok(MotifFunctor::G(n)),
            _ => Err(err()),
        }
    }
}

fn on_table(tag: MotifFunctor, h: &Graded) -> FgModule {
    let at = |q: i32| h.get(&q).cloned().unwrap_or_default();
    match tag {
        MotifFunctor::H(n) | MotifFunctor::E(n) if n < 0 => FgModule::zero(),
        MotifFunctor::H(n) => at(n),
        MotifFunctor::F(n) => at(n).torsion_part(),
        MotifFunctor::G(n) => at(n).free_part(),
        MotifFunctor::E(_) => unreachable!("E needs a dimension"),
    }
}

/// Value of a functor on one pure motive; `d` is the dimension context for
/// `E^n`, which reads degree `2d - n` of the motive's compact-support table.
pub fn functor_eval(tag: MotifFunctor, m: &PureMotive, d: u32) -> Result<FgModule> {
    match tag {
        MotifFunctor::E(n) if n < 0 => Ok(FgModule::zero()),
        MotifFunctor::E(n) => {
            let dual = dual_compact_table(&m.base, m.base.dim)?;
            Ok(dual.get(2 * d as i32 - n - 2 * m.twist as i32))
        }
        _ => Ok(on_table(tag, &m.realized())),
    }
}

/// The functor applied to a graded class. For `E^n` the class must be a
/// compact-support class of a `d`-dimensional variety.
pub fn functor_on_class(tag: MotifFunctor, c: &K0AddClass, d: u32) -> K0AddClass {
    match tag {
        MotifFunctor::E(n) | MotifFunctor::H(n) | MotifFunctor::F(n) | MotifFunctor::G(n) if n < 0 => K0AddClass::zero(),
        MotifFunctor::E(n) => c.degree_part(2 * d as i32 - n),
        MotifFunctor::H(n) => c.degree_part(n),
        MotifFunctor::F(n) => c.degree_part(n).torsion_part(),
        MotifFunctor::G(n) => c.degree_part(n).free_part(),
    }
}

/// Atoms and their first twists.
pub fn registered_motives(atoms: &AtomRegistry) -> Vec<PureMotive> {
    let base: Vec<PureMotive> = atoms.atoms().map(|a| PureMotive::new(a.table.clone())).collect();
    let twisted: Vec<PureMotive> = base.iter().map(|m| tate_twist(m, 1)).collect();
    base.into_iter().chain(twisted).collect()
}

/// `F^n` for `0 <= n <= 2D + 1` and `G^n` for `0 <= n <= 2D`, `D` the largest
/// atom dimension, audited on the registered motives.
pub fn motif_registry(atoms: &AtomRegistry) -> FunctorRegistry<Graded> {
    let samples = registered_motives(atoms).iter().map(PureMotive::realized).collect();
    let mut reg = FunctorRegistry::new(samples, graded_sum);
    let top = 2 * atoms.max_dim() as i32;
    let tags = (0..=top + 1).map(MotifFunctor::F).chain((0..=top).map(MotifFunctor::G));
    for tag in tags {
        reg.register(tag.to_string(), Arc::new(move |h: &Graded| on_table(tag, h))).expect("table functors are additive");
    }
    reg
}

#[derive(Clone, Debug, Serialize)]
pub struct TwistKillReport {
    pub tag: MotifFunctor,
    pub checked: usize,
    /// Motives on which the functor did not vanish.
    pub failures: Vec<String>,
}

impl TwistKillReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `tag(M<k>) = 0` for every atom and `1 <= k <= D + 1`.
pub fn twist_kill_check(tag: MotifFunctor, atoms: &AtomRegistry) -> Result<TwistKillReport> {
    let mut rep = TwistKillReport { tag, checked: 0, failures: Vec::new() };
    for a in atoms.atoms() {
        for k in 1..=atoms.max_dim() + 1 {
            let m = tate_twist(&PureMotive::new(a.table.clone()), k);
            rep.checked += 1;
            if !functor_eval(tag, &m, a.table.dim)?.is_zero() {
                rep.failures.push(m.name());
            }
        }
    }
    Ok(rep)
}

/// Birational: kills every once-twisted registered motive and is nonzero on
/// at least one registered motive.
pub fn birational_predicate(tag: MotifFunctor, atoms: &AtomRegistry) -> Result<bool> {
    let mut kills = true;
    let mut nonzero = false;
    for m in registered_motives(atoms) {
        let v = functor_eval(tag, &m, m.base.dim + m.twist)?;
        nonzero |= !v.is_zero();
        kills &= m.twist != 1 || v.is_zero();
    }
    Ok(kills && nonzero)
}

/// Names of the registered functors satisfying [`birational_predicate`].
pub fn birational_tags(reg: &FunctorRegistry<Graded>, atoms: &AtomRegistry) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for name in reg.names() {
        if birational_predicate(name.parse()?, atoms)? {
            out.push(name.to_string());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let atoms = AtomRegistry::builtin(2);
        let e = atoms.motive("enriques").unwrap();
        let pt = atoms.motive("pt").unwrap();
        let eval = |tag: &str, m: &PureMotive, d| functor_eval(tag.parse().unwrap(), m, d).unwrap();
        assert_eq!(eval("F^3", &e, 2), FgModule::cyclic(2));
        assert_eq!(eval("G^0", &pt, 0), FgModule::free(1));
        assert!(eval("G^0", &tate_twist(&pt, 1), 0).is_zero());
        assert!(eval("F^2", &tate_twist(&e, 1), 2).is_zero());
        assert_eq!(eval("E^2", &e, 2), "Z^10 + Z/2".parse().unwrap());
        assert!(eval("H^-1", &e, 2).is_zero());
        for a in atoms.atoms() {
            let m = PureMotive::new(a.table.clone());
            assert!(eval("F^0", &m, a.table.dim).is_zero() && eval("F^1", &m, a.table.dim).is_zero());
        }
    }

    #[test]
    fn exactly_four_birational_tags() {
        let atoms = AtomRegistry::builtin(2);
        let reg = motif_registry(&atoms);
        assert_eq!(birational_tags(&reg, &atoms).unwrap(), vec!["F^2", "F^3", "G^0", "G^1"]);
        for tag in ["F^2", "F^3", "G^0", "G^1"] {
            assert!(twist_kill_check(tag.parse().unwrap(), &atoms).unwrap().passed());
        }
        assert!(!twist_kill_check(MotifFunctor::H(2), &atoms).unwrap().passed());
        assert!(!birational_predicate(MotifFunctor::H(2), &atoms).unwrap());
        assert!(!birational_predicate(MotifFunctor::F(0), &atoms).unwrap());
    }
}

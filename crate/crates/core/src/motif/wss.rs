//! The weight spectral sequence `E_1^{p,q} = H^q(N^{-p}) => H^{p+q}`.

use std::collections::BTreeMap;

use serde::Serialize;

use super::blocks::block_map;
use super::complex::MotiveComplex;
use crate::error::Result;
use crate::zmod::{FgModule, Graded, Homology, ModuleMap};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Coefficients {
    /// `Z_l` tables as given.
    Integral,
    /// Free parts only, read as `Q_l` dimensions.
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightSpectralSequence {
    pub coefficients: Coefficients,
    /// Nonzero entries keyed by `(p, q)`.
    pub e1: BTreeMap<(i32, i32), FgModule>,
    pub e2: BTreeMap<(i32, i32), FgModule>,
    /// Cohomology of the total complex, computed in one piece.
    pub abutment: Graded,
    /// `(+)_p E_2^{p, n-p} = H^n` for every `n`.
    pub degenerate: bool,
}

impl WeightSpectralSequence {
    pub fn e2(&self, p: i32, q: i32) -> FgModule {
        self.e2.get(&(p, q)).cloned().unwrap_or_default()
    }

    pub fn abutment(&self, n: i32) -> FgModule {
        self.abutment.get(&n).cloned().unwrap_or_default()
    }
}

fn restrict_free(f: &ModuleMap) -> ModuleMap {
    let (s, t) = (f.source().free_rank(), f.target().free_rank());
    let rows: Vec<usize> = (0..t).collect();
    let cols: Vec<usize> = (0..s).collect();
    ModuleMap::new(FgModule::free(s), FgModule::free(t), f.matrix().select(&rows, &cols)).expect("free block")
}

struct Page<'a> {
    n: &'a MotiveComplex,
    coeff: Coefficients,
}

impl Page<'_> {
    fn e1(&self, p: i32, q: i32) -> FgModule {
        let m = self.n.h(-p, q);
        match self.coeff {
            Coefficients::Integral => m,
            Coefficients::Rational => m.free_part(),
        }
    }

    /// `d_1 : E_1^{p,q} -> E_1^{p+1,q}`, induced by `d^{-p-1}`.
    fn d1(&self, p: i32, q: i32) -> ModuleMap {
        let f = self.n.induced(-p - 1, q);
        match self.coeff {
            Coefficients::Integral => f,
            Coefficients::Rational => restrict_free(&f),
        }
    }

    fn report(&self, m: &FgModule) -> FgModule {
        match self.coeff {
            Coefficients::Integral => m.clone(),
            Coefficients::Rational => m.free_part(),
        }
    }
}

pub fn weight_ss(n: &MotiveComplex, coeff: Coefficients) -> Result<WeightSpectralSequence> {
    let page = Page { n, coeff };
    let ps: Vec<i32> = n.degrees().map(|i| -i).rev().collect();
    let qs: Vec<i32> = n.table_degrees().into_iter().collect();
    let mut e1 = BTreeMap::new();
    let mut e2 = BTreeMap::new();
    for &q in &qs {
        for &p in &ps {
            let m = page.e1(p, q);
            if m.is_zero() {
                continue;
            }
            e1.insert((p, q), m);
            let h = page.report(Homology::new(&page.d1(p - 1, q), &page.d1(p, q))?.module());
            if !h.is_zero() {
                e2.insert((p, q), h);
            }
        }
    }

    // Total complex T^k = (+)_p E_1^{p, k-p}, assembled from blocks.
    let mut abutment = Graded::new();
    let (Some(&pmin), Some(&pmax)) = (ps.first(), ps.last()) else {
        return Ok(WeightSpectralSequence { coefficients: coeff, e1, e2, abutment, degenerate: true });
    };
    let (qmin, qmax) = (*qs.first().unwrap_or(&0), *qs.last().unwrap_or(&0));
    let term = |k: i32| -> Vec<FgModule> { (pmin..=pmax).map(|p| page.e1(p, k - p)).collect() };
    let total_d = |k: i32| -> Result<ModuleMap> {
        block_map(&term(k), &term(k + 1), |i, j| {
            let (pi, pj) = (pmin + i as i32, pmin + j as i32);
            (pi == pj + 1).then(|| page.d1(pj, k - pj).matrix().clone())
        })
    };
    for k in pmin + qmin..=pmax + qmax {
        let h = page.report(Homology::new(&total_d(k - 1)?, &total_d(k)?)?.module());
        if !h.is_zero() {
            abutment.insert(k, h);
        }
    }
    let degenerate = (pmin + qmin..=pmax + qmax).all(|k| {
        let diag = e2.iter().filter(|((p, q), _)| p + q == k).fold(FgModule::zero(), |a, (_, m)| a.direct_sum(m));
        abutment.get(&k).cloned().unwrap_or_default() == diag
    });
    Ok(WeightSpectralSequence { coefficients: coeff, e1, e2, abutment, degenerate })
}

/// `Gr^W_n H^j := E_2^{j-n, n}` over `Q`.
pub fn deligne_graded(n: &MotiveComplex, weight: i32, j: i32) -> Result<FgModule> {
    Ok(weight_ss(n, Coefficients::Rational)?.e2(j - weight, weight))
}

/// `m = sum_j (-1)^(j-n) dim Gr^W_n H^j`, the Euler characteristic of row
/// `n` of the rational `E_2` page.
pub fn gr_w_euler(n: &MotiveComplex, weight: i32) -> Result<i64> {
    let ss = weight_ss(n, Coefficients::Rational)?;
    Ok(ss
        .e2
        .iter()
        .filter(|((_, q), _)| *q == weight)
        .map(|((p, _), m)| if p.rem_euclid(2) == 0 { m.free_rank() as i64 } else { -(m.free_rank() as i64) })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motif::complex::weight_complex_of_complement;
    use crate::motif::table::{AtomRegistry, PureMotive};

    fn gm() -> MotiveComplex {
        let reg = AtomRegistry::builtin(2);
        let pts = PureMotive::new(reg.get("pt").unwrap().table.copies(2).unwrap());
        weight_complex_of_complement(&reg.motive("P1").unwrap(), &pts, 1, None).unwrap()
    }

    #[test]
    fn gm_calibration() {
        let ss = weight_ss(&gm(), Coefficients::Rational).unwrap();
        let keys: Vec<(i32, i32)> = ss.e2.keys().copied().collect();
        assert_eq!(keys, vec![(-1, 2), (0, 0)]);
        assert_eq!(ss.abutment(0), FgModule::free(1));
        assert_eq!(ss.abutment(1), FgModule::free(1));
        assert!(ss.degenerate);
        assert_eq!(deligne_graded(&gm(), 2, 1).unwrap(), FgModule::free(1));
        assert_eq!(deligne_graded(&gm(), 0, 0).unwrap(), FgModule::free(1));
        assert!(deligne_graded(&gm(), 2, 2).unwrap().is_zero());
        assert_eq!(gr_w_euler(&gm(), 0).unwrap(), 1);
        assert_eq!(gr_w_euler(&gm(), 2).unwrap(), -1);
    }

    #[test]
    fn affine_line() {
        let reg = AtomRegistry::builtin(2);
        let n = weight_complex_of_complement(&reg.motive("P1").unwrap(), &reg.motive("pt").unwrap(), 1, None).unwrap();
        let ss = weight_ss(&n, Coefficients::Rational).unwrap();
        assert_eq!(ss.e2.keys().copied().collect::<Vec<_>>(), vec![(0, 0)]);
    }

    #[test]
    fn one_term_pages_agree() {
        let reg = AtomRegistry::builtin(2);
        let n = MotiveComplex::one_term(reg.motive("enriques").unwrap());
        let ss = weight_ss(&n, Coefficients::Integral).unwrap();
        assert_eq!(ss.e1, ss.e2);
        let col: Graded = ss.e2.iter().map(|((_, q), m)| (*q, m.clone())).collect();
        assert_eq!(col, ss.abutment);
        assert!(ss.degenerate);
    }
}

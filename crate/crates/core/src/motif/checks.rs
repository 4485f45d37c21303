use serde::Serialize;

use super::complex::MotiveComplex;
use super::expr::{class_of, pure_dimension, Mode, VarietyExpr};
use super::functors::{functor_on_class, MotifFunctor};
use super::table::{AtomRegistry, PureMotive};
use super::wss::gr_w_euler;
use crate::error::{Error, Result};
use crate::k0::K0AddClass;
use crate::zmod::{mod_ln_cohomology, FgModule, K0ModClass, k0_class};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GvsMReport {
    pub n: i32,
    pub class: K0AddClass,
    pub m: i64,
    pub passed: bool,
}

/// `G^n_{K_0}(N) = m [Z]` with `m` read off the rational weight spectral
/// sequence.
pub fn g_k0_vs_m_check(n: &MotiveComplex, weight: i32) -> Result<GvsMReport> {
    let class: K0AddClass = n
        .degrees()
        .map(|i| {
            let g = n.h(i, weight).free_part();
            K0AddClass::of_module(&g, None).scale(if i.rem_euclid(2) == 0 { 1 } else { -1 })
        })
        .sum();
    let multiple = class.free_multiple().ok_or_else(|| Error::NonFreeClass(class.to_string()))?;
    let m = gr_w_euler(n, weight)?;
    Ok(GvsMReport { n: weight, class, m, passed: multiple == m })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerRow {
    pub n: i32,
    /// `E^n_{K_0}` of the compact-support class.
    pub lhs: K0AddClass,
    /// `F^{n+1}_{K_0} + G^n_{K_0}` of the motive class.
    pub rhs: K0AddClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerReport {
    pub expr: String,
    pub dim: u32,
    pub rows: Vec<EulerRow>,
    pub first_failure: Option<i32>,
}

impl EulerReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// `E^n_{K_0}([M^c(X)]) = F^{n+1}_{K_0}([M(X)]) + G^n_{K_0}([M(X)])` for the
/// given degrees, for `X` of pure dimension. The left side comes from scissors on dual tables, the right
/// side from Gysin triangles.
pub fn euler_identity_check(e: &VarietyExpr, reg: &AtomRegistry, ns: impl IntoIterator<Item = i32>) -> Result<EulerReport> {
    let dim = pure_dimension(e, reg)?;
    let compact = class_of(e, Mode::CompactSupport, reg)?;
    let motive = class_of(e, Mode::Motive, reg)?;
    let mut rows = Vec::new();
    let mut first_failure = None;
    for n in ns {
        let lhs = functor_on_class(MotifFunctor::E(n), &compact.class, dim);
        let rhs = &functor_on_class(MotifFunctor::F(n + 1), &motive.class, dim)
            + &functor_on_class(MotifFunctor::G(n), &motive.class, dim);
        if lhs != rhs && first_failure.is_none() {
            first_failure = Some(n);
        }
        rows.push(EulerRow { n, lhs, rhs });
    }
    Ok(EulerReport { expr: e.to_string(), dim, rows, first_failure })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BrauerReport {
    pub motive: String,
    /// Corank of the divisible part, forced to 0 by finite exponent.
    pub c_m: usize,
    pub brauer: K0ModClass,
    pub f3: K0ModClass,
    pub passed: bool,
}

/// With `Br(M)` of finite exponent the divisible part vanishes and
/// `Br(M) (x) Z_(l)` must match `F^3(M)`.
pub fn brauer_finite_exponent_check(m: &PureMotive, brauer: &FgModule) -> Result<BrauerReport> {
    if brauer.free_rank() > 0 {
        return Err(Error::NotFiniteExponent(brauer.to_string()));
    }
    let ell = Some(m.ell());
    let b = k0_class(brauer, ell);
    let f3 = k0_class(&m.h(3).torsion_part(), ell);
    Ok(BrauerReport { motive: m.name(), c_m: 0, passed: b == f3, brauer: b, f3 })
}

/// `H^i(M, Z/l^n)`, from `H^i / l^n` and `H^{i+1}[l^n]`.
pub fn mod_ln_realization(m: &PureMotive, i: i32, n: u32) -> FgModule {
    mod_ln_cohomology(&m.h(i), &m.h(i + 1), m.ell(), n)
}

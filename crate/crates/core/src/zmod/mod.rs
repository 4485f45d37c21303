//! Exact arithmetic on finitely generated abelian groups.
//!
//! Everything is canonicalised through Smith normal form: modules are kept
//! as `Z^r + Z/d_1 + ... + Z/d_k` with `d_i | d_{i+1}`, and kernels, images
//! and homology are computed by lifting to free presentations.

mod class;
mod homology;
mod lattice;
mod matrix;
mod module;
mod snf;

use std::collections::BTreeMap;

pub use class::{k0_class, K0ModClass, PrimePower};
pub use homology::{cokernel, cokernel_of_map, homology, image, kernel, Homology};
pub use lattice::{kernel_basis, solve, solve_integer, span_basis, Ring, Solution, Subquotient};
pub use matrix::{mat, IntMatrix};
pub use module::{factorize, is_prime, FgModule, ModuleMap};
pub use snf::{rank, smith_normal_form, Smith};

/// A bounded graded module, degree to summand. Missing degrees are zero.
pub type Graded = BTreeMap<i32, FgModule>;

pub fn torsion_part(m: &FgModule) -> FgModule {
    m.torsion_part()
}

pub fn free_part(m: &FgModule) -> FgModule {
    m.free_part()
}

pub fn tensor_mod(m: &FgModule, n: u64) -> FgModule {
    m.tensor_mod(n)
}

pub fn ell_torsion(m: &FgModule, n: u64) -> FgModule {
    m.n_torsion(n)
}

/// Middle term of `0 -> H_i / l^n -> X -> H_next[l^n] -> 0`.
///
/// The extension is taken to be split. Orders do not depend on this choice:
/// `|X| = |H_i / l^n| * |H_next[l^n]|` always.
pub fn mod_ln_cohomology(h_i: &FgModule, h_next: &FgModule, ell: u64, n: u32) -> FgModule {
    let q = ell.checked_pow(n).expect("l^n exceeds 64 bits");
    h_i.tensor_mod(q).direct_sum(&h_next.n_torsion(q))
}

/// Cohomological Kunneth formula for graded tables:
/// `H^n = (+)_{p+q=n} H^p (x) H^q  (+)  (+)_{p+q=n+1} Tor(H^p, H^q)`.
pub fn kunneth(m: &Graded, n: &Graded) -> Graded {
    let mut out: Graded = BTreeMap::new();
    let mut put = |deg: i32, x: FgModule| {
        if !x.is_zero() {
            let e = out.entry(deg).or_default();
            *e = e.direct_sum(&x);
        }
    };
    for (&p, a) in m {
        for (&q, b) in n {
            put(p + q, a.tensor(b));
            put(p + q - 1, a.tor(b));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graded(entries: &[(i32, &str)]) -> Graded {
        entries.iter().map(|(d, s)| (*d, s.parse().unwrap())).collect()
    }

    #[test]
    fn mod_ln_examples() {
        let ell = 3;
        assert_eq!(mod_ln_cohomology(&FgModule::free(1), &FgModule::zero(), ell, 1), FgModule::cyclic(3));
        assert_eq!(mod_ln_cohomology(&FgModule::zero(), &FgModule::cyclic(9), ell, 1), FgModule::cyclic(3));
        let h_i = FgModule::from_cyclic(1, &[3]);
        let x = mod_ln_cohomology(&h_i, &FgModule::cyclic(9), ell, 1);
        assert_eq!(x.order(), Some(27));
    }

    #[test]
    fn kunneth_unit() {
        let unit = graded(&[(0, "Z")]);
        let t = graded(&[(0, "Z"), (2, "Z^10 + Z/2"), (3, "Z/2"), (4, "Z")]);
        assert_eq!(kunneth(&unit, &t), t);
        assert_eq!(kunneth(&t, &unit), t);
    }

    #[test]
    fn kunneth_projective_line_squared() {
        let p1 = graded(&[(0, "Z"), (2, "Z")]);
        assert_eq!(kunneth(&p1, &p1), graded(&[(0, "Z"), (2, "Z^2"), (4, "Z")]));
    }

    #[test]
    fn kunneth_tor_term_sits_one_degree_down() {
        let t = graded(&[(2, "Z/2")]);
        assert_eq!(kunneth(&t, &t), graded(&[(3, "Z/2"), (4, "Z/2")]));
    }
}

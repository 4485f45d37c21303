use rand::Rng;
use weightk_core::k0::{
    f_k0, k0_product, pure_object_shortcut, section_isomorphism_check, semisimple_formula, triangle_additivity_check,
    FunctorRegistry, K0AddClass, ModuleTensor,
};
use weightk_core::komplex::generate::{pad_with_cone, random_chain_map, random_complex, random_equivalence};
use weightk_core::komplex::{Complex, TermFunctor};
use weightk_core::{FgModule, Ring};

use super::{case_rng, property, Check, Ctx};
use crate::report::{Entry, Status};

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new("k0/additive-on-sums", additive),
        Check::new("k0/invariance", invariance),
        Check::new("k0/product-laws", product_laws),
        Check::new("k0/pure-shortcut", pure_shortcut),
        Check::new("k0/section", section),
        Check::new("k0/semisimple", semisimple),
        Check::new("k0/triangle-additivity", triangles),
    ]
}

fn invariance(ctx: &Ctx) -> Vec<Entry> {
    let reg = FunctorRegistry::matrix(Ring::Integers);
    vec![property(ctx, "k0/invariance", ctx.cfg.cases.equivalences, |r| {
        let (c, d, _) = random_equivalence(r, Ring::Integers, ctx.cfg.gen());
        Ok(f_k0(&c, &reg, "id")? == f_k0(&d, &reg, "id")?)
    })]
}

fn triangles(ctx: &Ctx) -> Vec<Entry> {
    let reg = FunctorRegistry::matrix(Ring::Integers);
    vec![property(ctx, "k0/triangle-additivity", ctx.cfg.cases.equivalences, |r| {
        let a = random_complex(r, Ring::Integers, ctx.cfg.gen());
        let b = random_complex(r, Ring::Integers, ctx.cfg.gen());
        triangle_additivity_check(&random_chain_map(r, &a, &b), &reg, "id")
    })]
}

/// One-term complexes of every rank up to the bound embed with class
/// `r [Z]`, and each is paired with padded and scrambled equivalents.
fn section(ctx: &Ctx) -> Vec<Entry> {
    let ranks: Vec<usize> = (0..=ctx.cfg.max_rank).collect();
    let pairs: Vec<(Complex, Complex)> = (0..ctx.cfg.cases.equivalences)
        .map(|i| {
            let mut r = case_rng(ctx.cfg.seed, "k0/section", i);
            let one = Complex::one_term(Ring::Integers, 0, ranks[i % ranks.len()]);
            let once = pad_with_cone(&mut r, &one);
            let padded = pad_with_cone(&mut r, &once);
            (one, padded)
        })
        .collect();
    let rep = section_isomorphism_check(Ring::Integers, &ranks, &pairs);
    let e = Entry::new(
        "k0/section",
        Status::of(rep.passed()),
        format!("{} embedding failures, {} invariance failures", rep.embedding_failures, rep.invariance_failures),
        "0 embedding failures, 0 invariance failures",
    );
    vec![e.with_detail(format!("ranks 0..={}, {} pairs", ctx.cfg.max_rank, rep.pairs_checked))]
}

fn additive(ctx: &Ctx) -> Vec<Entry> {
    let reg = FunctorRegistry::matrix(Ring::Integers);
    let names: Vec<String> = reg.names().map(str::to_string).collect();
    vec![property(ctx, "k0/additive-on-sums", ctx.cfg.cases.other, |r| {
        let a = random_complex(r, Ring::Integers, ctx.cfg.gen());
        let b = random_complex(r, Ring::Integers, ctx.cfg.gen());
        for n in &names {
            if f_k0(&a.direct_sum(&b), &reg, n)? != &f_k0(&a, &reg, n)? + &f_k0(&b, &reg, n)? {
                return Ok(false);
            }
        }
        Ok(true)
    })]
}

fn semisimple(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "k0/semisimple", ctx.cfg.cases.other, |r| {
        let (lhs, rhs) = semisimple_formula(&random_complex(r, Ring::Rationals, ctx.cfg.gen()))?;
        Ok(lhs == rhs)
    })]
}

fn pure_shortcut(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "k0/pure-shortcut", ctx.cfg.cases.other, |r| {
        let c = Complex::one_term(Ring::Integers, r.gen_range(-3..=3), r.gen_range(0..=ctx.cfg.max_rank));
        let padded = pad_with_cone(r, &c);
        let a = [TermFunctor::Identity, TermFunctor::TensorMod(4), TermFunctor::Rational][r.gen_range(0..3)];
        Ok(pure_object_shortcut(&padded, a)?.agrees())
    })]
}

fn random_module<R: Rng>(r: &mut R) -> FgModule {
    let tors: Vec<u64> = (0..r.gen_range(0..3)).map(|_| [2, 3, 4, 8, 9][r.gen_range(0..5)]).collect();
    FgModule::from_cyclic(r.gen_range(0..3), &tors)
}

fn random_class<R: Rng>(r: &mut R) -> K0AddClass {
    (0..3).map(|_| K0AddClass::of_module(&random_module(r), None).scale(r.gen_range(-2..=2))).sum()
}

fn product_laws(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "k0/product-laws", ctx.cfg.cases.other, |r| {
        let t = Some(&ModuleTensor as &dyn weightk_core::k0::TensorRule);
        let (x, y, z) = (random_class(r), random_class(r), random_class(r));
        let xy = k0_product(&x, &y, t)?;
        let assoc = k0_product(&xy, &z, t)? == k0_product(&x, &k0_product(&y, &z, t)?, t)?;
        let comm = xy == k0_product(&y, &x, t)?;
        let unit = k0_product(&x, &K0AddClass::free(1), t)? == x;
        let dist = k0_product(&x, &(&y + &z), t)? == &xy + &k0_product(&x, &z, t)?;
        Ok(assoc && comm && unit && dist)
    })]
}

use std::collections::BTreeMap;

use weightk_core::komplex::generate::{
    pad_with_cone, random_chain_map, random_complex, random_contractible, random_null_homotopic, random_weak_pair,
    weak_not_strong_fixture, GenConfig,
};
use weightk_core::komplex::{
    cone, find_homotopy, find_weak_homotopy, hom_group_mod_homotopy, in_w_ge, in_w_le, induce_equal_maps, kar_rank,
    split_contractible, stupid_truncate_ge, stupid_truncate_le, weight_decomposition, ChainMap, Complex, TermFunctor,
};
use weightk_core::Ring;

use super::{property, Check, Ctx};
use crate::report::{Entry, Status};

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new("khom/contractible-splitting", contractible_splitting),
        Check::new("khom/d-squared", d_squared),
        Check::new("khom/euler-additivity", euler_additivity),
        Check::new("khom/homotopy-implies-weak", homotopy_implies_weak),
        Check::new("khom/orthogonality", orthogonality),
        Check::new("khom/weak-homotopy-equal-maps", weak_equal_maps),
        Check::new("khom/weak-not-strong-fixture", weak_not_strong),
        Check::new("khom/weight-decomposition", weight_decomposition_axioms),
    ]
}

fn d_squared_vanishes(c: &Complex) -> bool {
    c.degrees().all(|i| c.ring().is_zero_matrix(&(&c.diff(i + 1) * &c.diff(i))))
}

fn small(ctx: &Ctx) -> GenConfig {
    GenConfig { max_rank: ctx.cfg.max_rank.min(3), max_len: ctx.cfg.max_len.min(4) }
}

fn d_squared(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/d-squared", ctx.cfg.cases.other, |r| {
        let n = 2;
        Ok([Ring::Integers, Ring::Modulo(4)].into_iter().all(|ring| {
            let a = random_complex(r, ring, ctx.cfg.gen());
            let b = random_complex(r, ring, ctx.cfg.gen());
            let f = random_chain_map(r, &a, &b);
            [cone(&f), a.shift(n), stupid_truncate_le(&a, 0), stupid_truncate_ge(&a, 0)].iter().all(d_squared_vanishes)
        }))
    })]
}

fn euler_additivity(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/euler-additivity", ctx.cfg.cases.other, |r| {
        let a = random_complex(r, Ring::Integers, ctx.cfg.gen());
        let b = random_complex(r, Ring::Integers, ctx.cfg.gen());
        let f = random_chain_map(r, &a, &b);
        Ok(cone(&f).euler_characteristic() == b.euler_characteristic() - a.euler_characteristic())
    })]
}

fn homotopy_implies_weak(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/homotopy-implies-weak", ctx.cfg.cases.other, |r| {
        let a = random_complex(r, Ring::Integers, small(ctx));
        let b = random_complex(r, Ring::Integers, small(ctx));
        let (f, _) = random_null_homotopic(r, &a, &b);
        let zero = ChainMap::zero(&a, &b);
        let strong = find_homotopy(&f, &zero).is_some_and(|h| h.certifies(&f, &zero));
        let weak = find_weak_homotopy(&f, &zero).is_some_and(|w| w.certifies(&f, &zero));
        Ok(strong && weak)
    })]
}

const HOMOLOGY_FUNCTORS: [TermFunctor; 4] =
    [TermFunctor::Identity, TermFunctor::TensorMod(2), TermFunctor::TensorMod(4), TermFunctor::Rational];

fn weak_equal_maps(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/weak-homotopy-equal-maps", ctx.cfg.cases.weak_pairs, |r| {
        let a = random_complex(r, Ring::Integers, small(ctx));
        let b = random_complex(r, Ring::Integers, small(ctx));
        let (m1, m2) = random_weak_pair(r, &a, &b);
        if !find_weak_homotopy(&m1, &m2).is_some_and(|w| w.certifies(&m1, &m2)) {
            return Ok(false);
        }
        for f in HOMOLOGY_FUNCTORS {
            if !induce_equal_maps(f, &m1, &m2)? {
                return Ok(false);
            }
        }
        Ok(true)
    })]
}

fn weak_not_strong(_: &Ctx) -> Vec<Entry> {
    let (m1, m2) = weak_not_strong_fixture();
    let strong = find_homotopy(&m1, &m2).is_some();
    let weak = find_weak_homotopy(&m1, &m2).is_some_and(|w| w.certifies(&m1, &m2));
    let equal = HOMOLOGY_FUNCTORS.into_iter().all(|f| induce_equal_maps(f, &m1, &m2).unwrap_or(false));
    let e = Entry::new(
        "khom/weak-not-strong-fixture",
        Status::of(!strong && weak && equal),
        format!("homotopy {}, weak homotopy {}", found(strong), found(weak)),
        "homotopy absent, weak homotopy present",
    );
    vec![e.with_detail(format!("over {}", m1.ring()))]
}

fn found(b: bool) -> &'static str {
    if b {
        "present"
    } else {
        "absent"
    }
}

fn orthogonality(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/orthogonality", ctx.cfg.cases.orthogonality, |r| {
        let c0 = random_complex(r, Ring::Integers, small(ctx));
        let d0 = random_complex(r, Ring::Integers, small(ctx));
        let c = pad_with_cone(r, &c0.shift(c0.support().map_or(0, |(a, _)| a)));
        let d = pad_with_cone(r, &d0.shift(d0.support().map_or(0, |(_, b)| b + 1)));
        Ok(in_w_le(&c, 0) && in_w_ge(&d, 1) && hom_group_mod_homotopy(&c, &d)?.is_zero())
    })]
}

fn contractible_splitting(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/contractible-splitting", ctx.cfg.cases.splitting, |r| {
        let (c, counts) = random_contractible(r, Ring::Integers, ctx.cfg.gen());
        let sp = split_contractible(&c)?;
        let found: BTreeMap<i32, usize> = sp.pieces.iter().map(|(i, o)| (*i, kar_rank(o))).collect();
        let (even, odd) = sp.even_odd_images(&c, 4)?;
        Ok(found == counts && even == odd)
    })]
}

fn weight_decomposition_axioms(ctx: &Ctx) -> Vec<Entry> {
    vec![property(ctx, "khom/weight-decomposition", ctx.cfg.cases.other, |r| {
        let c = random_complex(r, Ring::Integers, ctx.cfg.gen());
        Ok((-3..=3).all(|n| {
            let w = weight_decomposition(&c, n);
            w.memberships_hold() && w.verify_triangle()
        }))
    })]
}

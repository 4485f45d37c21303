use std::collections::BTreeMap;

use rand::Rng;
use weightk_core::k0::K0AddClass;
use weightk_core::motif::{
    birational_tags, brauer_finite_exponent_check, class_of, deligne_graded, direct_sum, euler_identity_check,
    functor_eval, functor_on_class, g_k0_vs_m_check, motif_registry, motive_complex_of, pure_dimension, tate_twist,
    twist_kill_check, weight_ss, AtomRegistry, Coefficients, Mode, MotifFunctor, MotiveComplex, MotiveMap,
    PureMotive, VarietyExpr,
};
use weightk_core::{FgModule, IntMatrix};

use super::{property, skip_if_empty, Check, Ctx};
use crate::report::{Entry, Status};

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new("thm234/brauer", brauer),
        Check::new("thm234/euler", euler),
        Check::new("thm234/euler-torsion", euler_torsion),
        Check::new("thm234/g-vs-m", g_vs_m),
        Check::new("thm234/gm-calibration", gm_calibration),
        Check::new("thm234/structural", structural),
        Check::new("thm234/wss", wss),
        Check::new("thm234/wss-generated", wss_generated),
    ]
}

fn joined<T: ToString>(rows: impl IntoIterator<Item = (i32, T)>) -> String {
    rows.into_iter().map(|(n, v)| format!("n={n}: {}", v.to_string())).collect::<Vec<_>>().join("; ")
}

fn euler(ctx: &Ctx) -> Vec<Entry> {
    let exprs = ctx.corpus.all_expressions();
    if let Some(s) = skip_if_empty("thm234/euler", exprs.is_empty(), "expressions") {
        return s;
    }
    exprs
        .iter()
        .map(|(name, e)| {
            let id = format!("thm234/euler/{name}");
            let d = match pure_dimension(e, &ctx.corpus.atoms) {
                Ok(d) => d as i32,
                Err(err) => return Entry::skip(id, err.to_string()),
            };
            match euler_identity_check(e, &ctx.corpus.atoms, 0..=2 * d) {
                Ok(rep) => {
                    let lhs = joined(rep.rows.iter().map(|r| (r.n, &r.lhs)));
                    let rhs = joined(rep.rows.iter().map(|r| (r.n, &r.rhs)));
                    let ent = Entry::new(id, Status::of(rep.passed()), lhs, rhs);
                    match rep.first_failure {
                        Some(n) => ent.with_detail(format!("first failure at n = {n}")),
                        None => ent,
                    }
                }
                Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            }
        })
        .collect()
}

/// For atoms with torsion in `H^3`: `E^2` of the compact class carries
/// exactly the torsion of `F^3`.
fn euler_torsion(ctx: &Ctx) -> Vec<Entry> {
    let atoms = &ctx.corpus.atoms;
    let with_f3: Vec<_> = atoms.atoms().filter(|a| !a.table.get(3).torsion_part().is_zero()).collect();
    if let Some(s) = skip_if_empty("thm234/euler-torsion", with_f3.is_empty(), "atoms with torsion in H^3") {
        return s;
    }
    with_f3
        .iter()
        .map(|a| {
            let e = VarietyExpr::atom(&a.table.name);
            let id = format!("thm234/euler-torsion/{}", a.table.name);
            let run = || -> weightk_core::Result<(K0AddClass, K0AddClass)> {
                let c = class_of(&e, Mode::CompactSupport, atoms)?;
                let m = class_of(&e, Mode::Motive, atoms)?;
                let e2 = functor_on_class(MotifFunctor::E(2), &c.class, c.dim).torsion_part();
                Ok((e2, functor_on_class(MotifFunctor::F(3), &m.class, m.dim)))
            };
            match run() {
                Ok((e2, f3)) => {
                    let ok = e2 == f3 && !e2.is_zero();
                    Entry::new(id, Status::of(ok), format!("Tor E^2 = {e2}"), format!("F^3 = {f3}"))
                }
                Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            }
        })
        .collect()
}

/// Every named complex and every complement expression with a motive
/// complex; all weights of its tables.
fn named_complexes(ctx: &Ctx) -> Vec<(String, MotiveComplex)> {
    let mut out: Vec<(String, MotiveComplex)> =
        ctx.corpus.complexes.iter().map(|(k, v)| (format!("complex:{k}"), v.clone())).collect();
    for (name, e) in &ctx.corpus.expressions {
        if matches!(e, VarietyExpr::Complement { .. }) {
            if let Ok(n) = motive_complex_of(e, &ctx.corpus.atoms) {
                out.push((format!("expr:{name}"), n));
            }
        }
    }
    out
}

fn g_vs_m(ctx: &Ctx) -> Vec<Entry> {
    let all = named_complexes(ctx);
    if let Some(s) = skip_if_empty("thm234/g-vs-m", all.is_empty(), "complexes") {
        return s;
    }
    all.iter()
        .map(|(name, n)| {
            let id = format!("thm234/g-vs-m/{name}");
            let reps: weightk_core::Result<Vec<_>> = n.table_degrees().into_iter().map(|w| g_k0_vs_m_check(n, w)).collect();
            match reps {
                Ok(reps) => Entry::new(
                    id,
                    Status::of(reps.iter().all(|r| r.passed)),
                    joined(reps.iter().map(|r| (r.n, &r.class))),
                    joined(reps.iter().map(|r| (r.n, K0AddClass::free(r.m)))),
                ),
                Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            }
        })
        .collect()
}

/// The `G_m` fixture: `G^0 = +[Z]`, `G^2 = -[Z]`, `m(0) = 1`, `m(2) = -1`,
/// `Gr^W_2 H^1 = Q`.
fn gm_calibration(ctx: &Ctx) -> Vec<Entry> {
    let Some(gm) = ctx.corpus.expressions.get("Gm") else {
        return vec![Entry::skip("thm234/gm-calibration", "corpus has no expression `Gm`")];
    };
    let n = match motive_complex_of(gm, &ctx.corpus.atoms) {
        Ok(n) => n,
        Err(err) => return vec![Entry::new("thm234/gm-calibration", Status::Fail, "", "").with_detail(err.to_string())],
    };
    let mut out = Vec::new();
    for (w, expected) in [(0, 1), (2, -1)] {
        match g_k0_vs_m_check(&n, w) {
            Ok(rep) => {
                out.push(Entry::compare(format!("thm234/gm-calibration/G{w}"), rep.class, K0AddClass::free(expected)));
                out.push(Entry::compare(format!("thm234/gm-calibration/m{w}"), rep.m, expected));
            }
            Err(err) => out.push(Entry::new(format!("thm234/gm-calibration/G{w}"), Status::Fail, "", "").with_detail(err.to_string())),
        }
    }
    let gr = deligne_graded(&n, 2, 1).map_or_else(|e| e.to_string(), |m| m.to_string());
    out.push(Entry::compare("thm234/gm-calibration/grW2-H1", gr, FgModule::free(1).to_string()).with_detail("over Q"));
    out
}

fn structural(ctx: &Ctx) -> Vec<Entry> {
    let atoms = &ctx.corpus.atoms;
    if let Some(s) = skip_if_empty("thm234/structural", atoms.is_empty(), "atoms") {
        return s;
    }
    let mut out = Vec::new();
    let nonzero: Vec<String> = atoms
        .atoms()
        .flat_map(|a| {
            let m = PureMotive::new(a.table.clone());
            [MotifFunctor::F(0), MotifFunctor::F(1)]
                .into_iter()
                .filter(move |&t| !functor_eval(t, &m, a.table.dim).map_or(true, |v| v.is_zero()))
                .map(move |t| format!("{t}({})", a.table.name))
        })
        .collect();
    out.push(
        Entry::new("thm234/structural/f0-f1-vanish", Status::of(nonzero.is_empty()), nonzero.len(), 0)
            .with_detail(if nonzero.is_empty() { format!("{} atoms", atoms.len()) } else { nonzero.join(", ") }),
    );
    for tag in [MotifFunctor::F(2), MotifFunctor::F(3), MotifFunctor::G(0), MotifFunctor::G(1)] {
        let id = format!("thm234/structural/twist-kill/{tag}");
        out.push(match twist_kill_check(tag, atoms) {
            Ok(rep) => Entry::new(id, Status::of(rep.passed()), rep.failures.len(), 0)
                .with_detail(format!("{} twisted motives checked", rep.checked)),
            Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
        });
    }
    // The four tags, less those vanishing on every atom (F^2 and F^3 need
    // l-torsion in the corpus).
    let expected: Vec<String> = [MotifFunctor::F(2), MotifFunctor::F(3), MotifFunctor::G(0), MotifFunctor::G(1)]
        .into_iter()
        .filter(|&t| atoms.atoms().any(|a| !functor_eval(t, &PureMotive::new(a.table.clone()), a.table.dim).map_or(true, |v| v.is_zero())))
        .map(|t| t.to_string())
        .collect();
    let reg = motif_registry(atoms);
    let found = birational_tags(&reg, atoms).map_or_else(|e| e.to_string(), |v| v.join(", "));
    out.push(
        Entry::compare("thm234/structural/birational-tags", found, expected.join(", "))
            .with_detail(format!("{} registered functors", reg.names().count())),
    );
    out
}

fn brauer(ctx: &Ctx) -> Vec<Entry> {
    if let Some(s) = skip_if_empty("thm234/brauer", ctx.corpus.brauer.is_empty(), "Brauer data") {
        return s;
    }
    ctx.corpus
        .brauer
        .iter()
        .map(|(m, b)| {
            let id = format!("thm234/brauer/{}", m.name());
            match brauer_finite_exponent_check(m, b) {
                Ok(rep) => Entry::new(id, Status::of(rep.passed), format!("Br = {}", rep.brauer), format!("F^3 = {}", rep.f3))
                    .with_detail(format!("c_M = {}", rep.c_m)),
                Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            }
        })
        .collect()
}

fn wss(ctx: &Ctx) -> Vec<Entry> {
    let all = named_complexes(ctx);
    if let Some(s) = skip_if_empty("thm234/wss", all.is_empty(), "complexes") {
        return s;
    }
    let mut out = Vec::new();
    for (name, n) in &all {
        for (coeff, tag) in [(Coefficients::Integral, "integral"), (Coefficients::Rational, "rational")] {
            let id = format!("thm234/wss/{name}/{tag}");
            out.push(match weight_ss(n, coeff) {
                Ok(ss) => Entry::new(id, Status::of(ss.degenerate), degenerate(ss.degenerate), degenerate(true)),
                Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            });
        }
    }
    out
}

fn degenerate(b: bool) -> &'static str {
    if b {
        "degenerate at E2"
    } else {
        "not degenerate at E2"
    }
}

fn random_motive<R: Rng>(r: &mut R, free: &[PureMotive]) -> weightk_core::Result<PureMotive> {
    let base = &free[r.gen_range(0..free.len())];
    Ok(tate_twist(&PureMotive::new(base.base.copies(r.gen_range(1..3))?), r.gen_range(0..2)))
}

fn random_map<R: Rng>(r: &mut R, s: &PureMotive, t: &PureMotive) -> weightk_core::Result<MotiveMap> {
    let mut mats = BTreeMap::new();
    for q in s.realized().keys().chain(t.realized().keys()) {
        let (rows, cols) = (s.h(*q).free_rank(), t.h(*q).free_rank());
        if rows > 0 && cols > 0 {
            let data: Vec<Vec<i64>> = (0..rows).map(|_| (0..cols).map(|_| r.gen_range(-2..=2)).collect()).collect();
            mats.insert(*q, IntMatrix::from_rows(&data, cols));
        }
    }
    MotiveMap::new(s.clone(), t.clone(), &mats)
}

fn two_term<R: Rng>(r: &mut R, free: &[PureMotive]) -> weightk_core::Result<MotiveComplex> {
    let (a, b) = (random_motive(r, free)?, random_motive(r, free)?);
    let d = random_map(r, &a, &b)?;
    MotiveComplex::new(r.gen_range(-1..=1), vec![a, b], vec![d])
}

/// Degeneration and `G`-multiplicities on generated complexes built from
/// the torsion-free atoms.
fn wss_generated(ctx: &Ctx) -> Vec<Entry> {
    let free: Vec<PureMotive> = free_atoms(&ctx.corpus.atoms);
    if let Some(s) = skip_if_empty("thm234/wss-generated", free.is_empty(), "torsion-free atoms") {
        return s;
    }
    vec![property(ctx, "thm234/wss-generated", ctx.cfg.cases.other, |r| {
        let mut n = two_term(r, &free)?;
        if r.gen_bool(0.5) {
            n = direct_sum(&n, &two_term(r, &free)?)?;
        }
        let rational = weight_ss(&n, Coefficients::Rational)?;
        let integral = weight_ss(&n, Coefficients::Integral)?;
        let mut ok = rational.degenerate && integral.degenerate;
        for w in n.table_degrees() {
            ok &= g_k0_vs_m_check(&n, w)?.passed;
        }
        Ok(ok)
    })]
}

fn free_atoms(atoms: &AtomRegistry) -> Vec<PureMotive> {
    atoms
        .atoms()
        .filter(|a| a.table.h.values().all(FgModule::is_free))
        .map(|a| PureMotive::new(a.table.clone()))
        .collect()
}

use weightk_core::k0::{k0_product, GradedKunneth};
use weightk_core::motif::{
    class_of, dimension, is_cellular, lefschetz_specialize, mod_ln_realization, point_count, Mode, PureMotive,
    VarietyExpr,
};
use weightk_core::FgModule;

use super::{skip_if_empty, Check, Ctx};
use crate::report::{Entry, Status};

pub(super) fn checks() -> Vec<Check> {
    vec![
        Check::new("measures/mod-ln", mod_ln),
        Check::new("measures/mode-agreement", mode_agreement),
        Check::new("measures/point-count", point_counts),
        Check::new("measures/ring-hom", ring_hom),
        Check::new("measures/scissors", scissors),
    ]
}

const QS: [u64; 4] = [2, 3, 4, 5];

fn has_complement(e: &VarietyExpr) -> bool {
    match e {
        VarietyExpr::Atom(_) => false,
        VarietyExpr::Product(a, b) | VarietyExpr::DisjointUnion(a, b) => has_complement(a) || has_complement(b),
        VarietyExpr::Complement { .. } => true,
    }
}

fn counts(e: &VarietyExpr, ctx: &Ctx) -> weightk_core::Result<Vec<i128>> {
    QS.iter().map(|&q| point_count(e, q, &ctx.corpus.atoms)).collect()
}

fn render(v: &[i128]) -> String {
    QS.iter().zip(v).map(|(q, n)| format!("q={q}: {n}")).collect::<Vec<_>>().join("; ")
}

fn point_counts(ctx: &Ctx) -> Vec<Entry> {
    let exprs = ctx.corpus.all_expressions();
    if let Some(s) = skip_if_empty("measures/point-count", exprs.is_empty(), "expressions") {
        return s;
    }
    exprs
        .iter()
        .map(|(name, e)| {
            let id = format!("measures/point-count/{name}");
            if !is_cellular(e, &ctx.corpus.atoms) {
                return Entry::skip(id, "not torsion-free cellular");
            }
            let run = || -> weightk_core::Result<(Vec<i128>, Vec<i128>)> {
                let c = class_of(e, Mode::CompactSupport, &ctx.corpus.atoms)?;
                let l = QS.iter().map(|&q| lefschetz_specialize(&c, q)).collect::<weightk_core::Result<_>>()?;
                Ok((l, counts(e, ctx)?))
            };
            match run() {
                Ok((l, p)) => Entry::new(id, Status::of(l == p), render(&l), render(&p)),
                Err(err) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            }
        })
        .collect()
}

/// Point counts and compact classes both satisfy `[X] = [X \ Z] + [Z]`.
fn scissors(ctx: &Ctx) -> Vec<Entry> {
    let complements: Vec<_> =
        ctx.corpus.expressions.iter().filter(|(_, e)| matches!(e, VarietyExpr::Complement { .. })).collect();
    if let Some(s) = skip_if_empty("measures/scissors", complements.is_empty(), "complement expressions") {
        return s;
    }
    let mut out = Vec::new();
    for (name, e) in complements {
        let VarietyExpr::Complement { ambient, closed, .. } = e else { unreachable!() };
        let atoms = &ctx.corpus.atoms;
        let classes = || -> weightk_core::Result<_> {
            let c = |x: &VarietyExpr| class_of(x, Mode::CompactSupport, atoms).map(|g| g.class);
            Ok((c(ambient)?, &c(e)? + &c(closed)?))
        };
        out.push(match classes() {
            Ok((lhs, rhs)) => Entry::compare(format!("measures/scissors/{name}/class"), lhs, rhs),
            Err(err) => Entry::new(format!("measures/scissors/{name}/class"), Status::Fail, "", "").with_detail(err.to_string()),
        });
        let id = format!("measures/scissors/{name}/count");
        out.push(match (counts(ambient, ctx), counts(e, ctx), counts(closed, ctx)) {
            (Ok(x), Ok(u), Ok(z)) => {
                let sum: Vec<i128> = u.iter().zip(&z).map(|(a, b)| a + b).collect();
                Entry::new(id, Status::of(x == sum), render(&x), render(&sum))
            }
            _ => Entry::skip(id, "an atom has no counting polynomial"),
        });
    }
    out
}

fn mode_agreement(ctx: &Ctx) -> Vec<Entry> {
    let exprs: Vec<_> = ctx.corpus.all_expressions().into_iter().filter(|(_, e)| !has_complement(e)).collect();
    if let Some(s) = skip_if_empty("measures/mode-agreement", exprs.is_empty(), "projective expressions") {
        return s;
    }
    exprs
        .iter()
        .map(|(name, e)| {
            let id = format!("measures/mode-agreement/{name}");
            let atoms = &ctx.corpus.atoms;
            match (class_of(e, Mode::Motive, atoms), class_of(e, Mode::CompactSupport, atoms)) {
                (Ok(m), Ok(c)) => Entry::compare(id, m.class, c.class),
                (Err(err), _) | (_, Err(err)) => Entry::new(id, Status::Fail, "", "").with_detail(err.to_string()),
            }
        })
        .collect()
}

/// `class_of` is multiplicative and additive on all pairs of corpus
/// expressions of total dimension at most 4, in both modes.
fn ring_hom(ctx: &Ctx) -> Vec<Entry> {
    let atoms = &ctx.corpus.atoms;
    let exprs = ctx.corpus.all_expressions();
    if let Some(s) = skip_if_empty("measures/ring-hom", exprs.is_empty(), "expressions") {
        return s;
    }
    let (mut pairs, mut bad) = (0usize, Vec::new());
    for (nx, x) in &exprs {
        for (ny, y) in &exprs {
            let dims = dimension(x, atoms).unwrap_or(0) + dimension(y, atoms).unwrap_or(0);
            if dims > 4 {
                continue;
            }
            pairs += 1;
            let ok = [Mode::Motive, Mode::CompactSupport].into_iter().all(|mode| {
                let run = || -> weightk_core::Result<bool> {
                    let cx = class_of(x, mode, atoms)?.class;
                    let cy = class_of(y, mode, atoms)?.class;
                    let prod = class_of(&x.clone().times(y.clone()), mode, atoms)?.class;
                    let sum = class_of(&x.clone().union(y.clone()), mode, atoms)?.class;
                    Ok(prod == k0_product(&cx, &cy, Some(&GradedKunneth))? && sum == &cx + &cy)
                };
                run().unwrap_or(false)
            });
            if !ok {
                bad.push(format!("{nx} x {ny}"));
            }
        }
    }
    let e = Entry::new("measures/ring-hom", Status::of(bad.is_empty()), format!("{}/{pairs}", pairs - bad.len()), format!("{pairs}/{pairs}"));
    if bad.is_empty() {
        vec![e]
    } else {
        vec![e.with_detail(format!("first failure: {}", bad[0]))]
    }
}

/// `|H/l^n|` and `|H[l^n]|` from the invariant factors alone.
fn quotient_and_torsion_orders(m: &FgModule, ln: u128) -> (u128, u128) {
    let gcd = |a: u128, b: u128| {
        let (mut a, mut b) = (a, b);
        while b != 0 {
            (a, b) = (b, a % b);
        }
        a
    };
    let tors: u128 = m.torsion().iter().map(|&d| gcd(d as u128, ln)).product();
    (ln.pow(m.free_rank() as u32) * tors, tors)
}

fn mod_ln(ctx: &Ctx) -> Vec<Entry> {
    let atoms = &ctx.corpus.atoms;
    if let Some(s) = skip_if_empty("measures/mod-ln", atoms.is_empty(), "atoms") {
        return s;
    }
    let mut out = Vec::new();
    for a in atoms.atoms() {
        let m = PureMotive::new(a.table.clone());
        let (mut rows, mut bad) = (0, Vec::new());
        for n in [1u32, 2] {
            let ln = (ctx.corpus.ell as u128).pow(n);
            for i in 0..=2 * a.table.dim as i32 {
                let x = mod_ln_realization(&m, i, n);
                let expected = quotient_and_torsion_orders(&m.h(i), ln).0 * quotient_and_torsion_orders(&m.h(i + 1), ln).1;
                rows += 1;
                if x.order() != Some(expected) {
                    bad.push(format!("i={i}, n={n}"));
                }
            }
        }
        let e = Entry::new(format!("measures/mod-ln/{}", a.table.name), Status::of(bad.is_empty()), format!("{}/{rows}", rows - bad.len()), format!("{rows}/{rows}"));
        out.push(if bad.is_empty() { e } else { e.with_detail(bad.join(", ")) });
        if a.table.name == "enriques" && ctx.corpus.ell == 2 {
            let order = mod_ln_realization(&m, 2, 1).order();
            out.push(Entry::compare("measures/mod-ln/enriques/i=2,n=1", format!("{order:?}"), format!("{:?}", Some(1u128 << 12))));
        }
    }
    out
}

//! The identity suite behind `alcove-kl verify`.

use std::collections::HashSet;
use std::fmt::Write as _;

use alcove_kl::hecke::{kl_basis_by_duality, KlBasis};
use alcove_kl::periodic::{monomial_pair, top_monomial, PeriodicSolver, StabilizedPeriodic};
use alcove_kl::repcalc::{baby_verma_character, character_total, socle_degree_check};
use alcove_kl::{ExtWeylElt, ModularContext, Weight};
use anyhow::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::render::{self, Format};
use crate::session::Session;
use crate::{Common, IdentityFailure};

const SHOWN_FAILURES: usize = 5;

#[derive(Serialize)]
struct Check {
    name: &'static str,
    pass: bool,
    checked: usize,
    failed: usize,
    failures: Vec<String>,
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: Vec<String>,
}

impl Tally {
    fn record(&mut self, outcome: alcove_kl::Result<Option<String>>) {
        self.checked += 1;
        match outcome {
            Ok(None) => {}
            Ok(Some(f)) => self.failures.push(f),
            Err(e) => self.failures.push(e.to_string()),
        }
    }

    fn finish(self, name: &'static str) -> Check {
        Check {
            name,
            pass: self.failures.is_empty(),
            checked: self.checked,
            failed: self.failures.len(),
            failures: self.failures.into_iter().take(SHOWN_FAILURES).collect(),
        }
    }
}

#[derive(Serialize)]
struct Conventions {
    up: &'static str,
    mu_correction: &'static str,
    /// Result of the monomial identity under the opposite meaning of "up".
    opposite_up_passes_monomial: Option<bool>,
}

#[derive(Serialize)]
struct Report {
    #[serde(rename = "type")]
    cartan_type: String,
    rank: usize,
    p: u64,
    #[serde(rename = "R")]
    r: usize,
    lmax: usize,
    seed: u64,
    pass: bool,
    checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    conventions: Option<Conventions>,
}

fn monomial_targets(ctx: &ModularContext, lmax: usize) -> Vec<ExtWeylElt> {
    let sys = &ctx.system;
    let mut xs: Vec<ExtWeylElt> = ctx
        .restricted_elements(usize::MAX)
        .into_iter()
        .filter(|x| sys.in_waff(x))
        .collect();
    xs.extend(sys.elements_up_to_length(lmax, false));
    sys.sort_elts(&mut xs);
    xs.dedup();
    xs
}

fn monomial(ctx: &ModularContext, solver: &StabilizedPeriodic, lmax: usize) -> Tally {
    let sys = &ctx.system;
    let mut t = Tally::default();
    for x in monomial_targets(ctx, lmax) {
        let (a, b) = monomial_pair(ctx, &x);
        t.record(solver.p(&a, &b).map(|p| {
            (p != top_monomial(sys)).then(|| {
                format!(
                    "x = {}: p({}, {}) = {p}, expected {}",
                    sys.format_elt(&x),
                    sys.format_elt(&a),
                    sys.format_elt(&b),
                    top_monomial(sys)
                )
            })
        }));
    }
    t
}

fn inversion(ctx: &ModularContext, solver: &StabilizedPeriodic, lmax: usize) -> Tally {
    let sys = &ctx.system;
    let w0 = ExtWeylElt::finite(sys.w0().clone());
    let elts = sys.elements_up_to_length(lmax, false);
    let mut t = Tally::default();
    for w in &elts {
        for y in &elts {
            t.record((|| {
                let lhs = solver.p(y, w)?;
                let q = solver.p(&(&w0 * y), &(&w0 * &ctx.check(w)))?;
                let rhs = &top_monomial(sys) * &q.bar();
                Ok((lhs != rhs).then(|| {
                    format!("({}, {}): {lhs} vs {rhs}", sys.format_elt(y), sys.format_elt(w))
                }))
            })());
        }
    }
    t
}

fn kl_routes(ctx: &ModularContext, lmax: usize) -> Tally {
    let sys = &ctx.system;
    let kl = KlBasis::new(sys.clone(), lmax);
    let mut t = Tally::default();
    for w in sys.elements_up_to_length(lmax, false) {
        t.record((|| {
            let a = kl.kl_basis(&w)?;
            let b = kl_basis_by_duality(sys, &w)?;
            Ok((*a != b).then(|| format!("w = {}", sys.format_elt(&w))))
        })());
    }
    t
}

fn restricted(ctx: &ModularContext) -> Tally {
    let sys = &ctx.system;
    let res = ctx.restricted_elements(usize::MAX);
    let mut t = Tally::default();
    t.record(Ok((res.len() as u64 != sys.weyl_order)
        .then(|| format!("{} restricted elements, |W| = {}", res.len(), sys.weyl_order))));
    let set: HashSet<&ExtWeylElt> = res.iter().collect();
    let top = sys.length(&(ExtWeylElt::translation(sys.rho.clone()) * ExtWeylElt::finite(sys.w0().clone())));
    for x in &res {
        t.record((|| {
            let y = ctx.rho_check_involution(x)?;
            let back = ctx.rho_check_involution(&y)?;
            let ok = set.contains(&y) && &back == x && sys.length(&y) + sys.length(x) == top;
            Ok((!ok).then(|| format!("x = {}", sys.format_elt(x))))
        })());
    }
    t
}

fn socle(ctx: &ModularContext, solver: &StabilizedPeriodic, lmax: usize) -> Tally {
    let sys = &ctx.system;
    let d = 2 * sys.num_positive_roots() as i32;
    let mut t = Tally::default();
    for w in sys.elements_up_to_length(lmax, false) {
        t.record(socle_degree_check(ctx, solver, &w, d).map(|()| None));
    }
    t
}

fn translation(ctx: &ModularContext, s: &Session, r: usize) -> Tally {
    let sys = ctx.system.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let solver = PeriodicSolver::new(sys.clone(), Some(r))
        .with_flipped_convention(s.flip_up)
        .with_translation_cache(false);
    let pool = sys.elements_up_to_length(s.lmax, false);
    let mut t = Tally::default();
    for _ in 0..50 {
        let w = pool.choose(&mut rng).expect("pool contains the identity").clone();
        let coords: Vec<i64> = (0..sys.rank).map(|_| rng.gen_range(-2..=2)).collect();
        let nu = sys.from_root_coords(&coords);
        let pick_support = rng.gen_bool(0.7);
        let alt = pool.choose(&mut rng).expect("nonempty").clone();
        t.record((|| {
            let e = solver.element(&w)?;
            let y = if pick_support {
                let support: Vec<&ExtWeylElt> = e.elt.support().collect();
                support[rng.gen_range(0..support.len())].clone()
            } else {
                alt.clone()
            };
            let a = solver.p(&y, &w)?;
            let b = solver.p(&y.translate_left(&nu), &w.translate_left(&nu))?;
            Ok((a != b).then(|| {
                format!("ν = {nu}, y = {}, w = {}: {a} vs {b}", sys.format_elt(&y), sys.format_elt(&w))
            }))
        })());
    }
    t
}

fn galleries(ctx: &ModularContext, s: &Session) -> Tally {
    let sys = ctx.system.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed ^ 0x9e37_79b9);
    let pool = sys.elements_up_to_length(s.lmax, false);
    let mut t = Tally::default();
    for _ in 0..20 {
        let w = pool.choose(&mut rng).expect("nonempty").clone();
        let (s1, s2): (u64, u64) = (rng.gen(), rng.gen());
        t.record((|| {
            let mk = |seed| {
                PeriodicSolver::new(sys.clone(), None)
                    .with_flipped_convention(s.flip_up)
                    .with_translation_cache(false)
                    .with_random_gallery(seed)
            };
            let (a, b) = (mk(s1).element(&w)?, mk(s2).element(&w)?);
            Ok((a.elt != b.elt).then(|| format!("w = {}: seeds {s1} and {s2} differ", sys.format_elt(&w))))
        })());
    }
    t
}

fn characters(ctx: &ModularContext) -> Tally {
    let n = ctx.system.num_positive_roots() as u32;
    let expected = (ctx.p as u128).pow(n);
    let mut t = Tally::default();
    for lam in [Weight::zero(ctx.system.rank), ctx.system.rho.clone()] {
        let total = character_total(&baby_verma_character(ctx, &lam));
        t.record(Ok((total != expected).then(|| format!("λ = {lam}: {total}, expected {expected}"))));
    }
    t
}

pub fn run(c: &Common) -> Result<String> {
    let mut s = Session::new(c)?;
    let r = s.window()?;
    let ctx = s.ctx.clone();
    let lmax = s.lmax;
    let solver = StabilizedPeriodic::with_options(ctx.system.clone(), r, s.flip_up);
    let checks = vec![
        monomial(&ctx, &solver, lmax).finish("monomial identity"),
        inversion(&ctx, &solver, lmax).finish("inversion identity"),
        kl_routes(&ctx, lmax).finish("KL route agreement"),
        restricted(&ctx).finish("restricted bijections"),
        socle(&ctx, &solver, lmax).finish("socle degree"),
        translation(&ctx, &s, r).finish("translation invariance"),
        galleries(&ctx, &s).finish("gallery independence"),
        characters(&ctx).finish("character totals"),
    ];
    let pass = checks.iter().all(|c| c.pass);
    let conventions = (!pass).then(|| {
        let opposite = StabilizedPeriodic::with_options(ctx.system.clone(), r, !s.flip_up);
        Conventions {
            up: if s.flip_up { "flipped" } else { "standard" },
            mu_correction: "subtract the coefficient of v in each lower term",
            opposite_up_passes_monomial: Some(monomial(&ctx, &opposite, lmax).failures.is_empty()),
        }
    });
    let sys = &ctx.system;
    let report = Report {
        cartan_type: sys.cartan_type.to_string(),
        rank: sys.rank,
        p: ctx.p,
        r,
        lmax,
        seed: s.seed,
        pass,
        checks,
        conventions,
    };
    if !pass {
        return Err(IdentityFailure(serde_json::to_value(&report)?).into());
    }
    Ok(match c.format {
        Format::Json => render::json(&report)?,
        _ => {
            let mut out = format!("{} p = {} R = {r} lmax = {lmax} seed = {}\n", sys.name(), ctx.p, s.seed);
            for ch in &report.checks {
                let _ = writeln!(
                    out,
                    "{:<24} {} ({} checks)",
                    ch.name,
                    if ch.pass { "PASS" } else { "FAIL" },
                    ch.checked
                );
            }
            out
        }
    })
}

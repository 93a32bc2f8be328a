//! The periodic module over alcoves and its canonical elements `P_A`, whose
//! coefficients are the periodic Kazhdan–Lusztig polynomials
//! `p_{y,w} = coeff of y(A⁺) in P_{w(A⁺)}`.
//!
//! `C_s` acts by `A·C_s = As + vA` for an up-crossing and `As + v⁻¹A` for a
//! down-crossing. Every `x ∈ W_aff` is `t_λ r` with `r` restricted; the
//! recursion runs on `depth(x) = ℓ(r)`:
//!
//! * depth 0: `x(A⁺)` is the top alcove of the star of a special vertex and
//!   `P_x = Σ_{u ∈ W_J} v^{ℓ(u)} x u`, `J` the down-walls of `x(A⁺)`;
//! * depth `k`: `P_x = P_{xs}·C_s − Σ μ(C) P_C` for a down-wall `s` with
//!   `depth(xs) = k − 1`, the sum over `C` with `Cs ≺ C` and `μ(C)` the
//!   coefficient of `v` in `p_{C,xs}`.
//!
//! Elements can be truncated to a window `ℓ(x⁻¹z) ≤ R` around their label;
//! stabilization compares windows `R` and `R + 1`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_traits::Zero;
use parking_lot::Mutex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alcove::{alcove_distance, crossing_direction, Direction};
use crate::error::{Error, Result};
use crate::hecke::LinComb;
use crate::laurent::LaurentPoly;
use crate::rootsys::{ModularContext, RootSystem, WeylElt};
use crate::weylext::{depth, AffSimple, EltRepr, ExtWeylElt};

/// Element of the periodic module in the alcove basis.
pub type PeriodicElt = LinComb;

fn direction(sys: &RootSystem, x: &ExtWeylElt, s: AffSimple, flip_up: bool) -> Direction {
    let d = crossing_direction(sys, x, s);
    if flip_up {
        d.flipped()
    } else {
        d
    }
}

/// `E · C_s`.
pub fn periodic_act_gen(sys: &RootSystem, e: &PeriodicElt, s: AffSimple, flip_up: bool) -> PeriodicElt {
    let mut out = PeriodicElt::zero();
    for (a, c) in e.iter() {
        let exp = match direction(sys, a, s, flip_up) {
            Direction::Up => 1,
            Direction::Down => -1,
        };
        out.add_term(sys.mul_simple(a, s), c);
        out.add_term(a.clone(), &c.shift(exp));
    }
    out
}

/// A (possibly window-truncated) canonical element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Computed {
    pub elt: PeriodicElt,
    /// Whether any term was dropped anywhere in the recursion.
    pub truncated: bool,
}

impl Computed {
    fn translate(&self, nu: &crate::rootsys::Weight) -> Computed {
        let mut elt = PeriodicElt::zero();
        for (z, c) in self.elt.iter() {
            elt.add_term(z.translate_left(nu), c);
        }
        Computed {
            elt,
            truncated: self.truncated,
        }
    }
}

/// Computes `P_x` for `x ∈ W_aff`, memoized.
pub struct PeriodicSolver {
    sys: Arc<RootSystem>,
    window: Option<usize>,
    flip_up: bool,
    translation_cache: bool,
    gallery: Option<Mutex<ChaCha8Rng>>,
    classes: Mutex<HashMap<WeylElt, Arc<Computed>>>,
    labels: Mutex<HashMap<ExtWeylElt, Arc<Computed>>>,
}

impl PeriodicSolver {
    /// `window = None` computes exactly.
    pub fn new(sys: Arc<RootSystem>, window: Option<usize>) -> Self {
        PeriodicSolver {
            sys,
            window,
            flip_up: false,
            translation_cache: true,
            gallery: None,
            classes: Mutex::new(HashMap::new()),
            labels: Mutex::new(HashMap::new()),
        }
    }

    /// Reverse the meaning of up and down. Used only as a negative control.
    pub fn with_flipped_convention(mut self, flip: bool) -> Self {
        self.flip_up = flip;
        self
    }

    /// Choose the recursion wall at random (seeded) instead of the smallest one.
    pub fn with_random_gallery(mut self, seed: u64) -> Self {
        self.gallery = Some(Mutex::new(ChaCha8Rng::seed_from_u64(seed)));
        self
    }

    /// With the cache off, every label is computed from its own recursion
    /// instead of translating the element of its class.
    pub fn with_translation_cache(mut self, on: bool) -> Self {
        self.translation_cache = on;
        self
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    pub fn window(&self) -> Option<usize> {
        self.window
    }

    /// `P_x`.
    pub fn element(&self, x: &ExtWeylElt) -> Result<Arc<Computed>> {
        if !self.sys.in_waff(x) {
            return Err(Error::Domain(format!(
                "{} is not in the affine Weyl group",
                self.sys.format_elt(x)
            )));
        }
        self.get(x)
    }

    pub fn p(&self, y: &ExtWeylElt, w: &ExtWeylElt) -> Result<LaurentPoly> {
        Ok(self.element(w)?.elt.coeff(y))
    }

    /// Compute all class representatives in parallel.
    pub fn prefill(&self) -> Result<()> {
        self.sys
            .weyl_elements()
            .par_iter()
            .map(|w| self.get(&ExtWeylElt::finite(w.clone())).map(|_| ()))
            .collect()
    }

    fn get(&self, x: &ExtWeylElt) -> Result<Arc<Computed>> {
        if self.translation_cache {
            let key = x.finite_part().clone();
            let rep = ExtWeylElt::finite(key.clone());
            let cached = self.classes.lock().get(&key).cloned();
            let base = match cached {
                Some(c) => c,
                None => {
                    let c = Arc::new(self.build(&rep)?);
                    self.classes.lock().insert(key, c.clone());
                    c
                }
            };
            if x == &rep {
                Ok(base)
            } else {
                Ok(Arc::new(base.translate(&x.left_translation())))
            }
        } else {
            if let Some(c) = self.labels.lock().get(x) {
                return Ok(c.clone());
            }
            let c = Arc::new(self.build(x)?);
            self.labels.lock().insert(x.clone(), c.clone());
            Ok(c)
        }
    }

    fn truncate(&self, center: &ExtWeylElt, elt: PeriodicElt) -> (PeriodicElt, bool) {
        let Some(r) = self.window else {
            return (elt, false);
        };
        let mut out = PeriodicElt::zero();
        let mut dropped = false;
        for (z, c) in elt.iter() {
            if alcove_distance(&self.sys, center, z) <= r {
                out.add_term(z.clone(), c);
            } else {
                dropped = true;
            }
        }
        (out, dropped)
    }

    fn build(&self, x: &ExtWeylElt) -> Result<Computed> {
        let sys = &self.sys;
        let k = depth(sys, x);
        if k == 0 {
            return self.star(x);
        }
        let candidates: Vec<AffSimple> = sys
            .affine_simples()
            .into_iter()
            .filter(|&s| {
                crossing_direction(sys, x, s) == Direction::Down
                    && depth(sys, &sys.mul_simple(x, s)) + 1 == k
            })
            .collect();
        let s = match (&self.gallery, candidates.len()) {
            (_, 0) => {
                return Err(Error::Consistency(format!(
                    "no down-wall of {} lowers the depth",
                    sys.format_elt(x)
                )))
            }
            (Some(rng), n) => candidates[rng.lock().gen_range(0..n)],
            (None, _) => candidates[0],
        };
        let prev = self.get(&sys.mul_simple(x, s))?;
        let mut out = periodic_act_gen(sys, &prev.elt, s, self.flip_up);
        let mut truncated = prev.truncated;
        for (c, p) in prev.elt.iter() {
            let mu = p.coeff(1);
            if mu.is_zero() || direction(sys, c, s, self.flip_up) != Direction::Down {
                continue;
            }
            if depth(sys, c) >= k {
                let msg = format!(
                    "correction term at {} has depth {} >= {k}",
                    sys.format_elt(c),
                    depth(sys, c)
                );
                return Err(self.blame_window(truncated, msg));
            }
            let pc = self.get(c)?;
            truncated |= pc.truncated;
            out.add_scaled(&pc.elt, &LaurentPoly::monomial(0, -mu));
        }
        let (out, dropped) = self.truncate(x, out);
        if let Err(Error::Consistency(msg)) = self.check_normalized(x, &out) {
            return Err(self.blame_window(truncated || dropped, msg));
        }
        Ok(Computed {
            elt: out,
            truncated: truncated || dropped,
        })
    }

    fn star(&self, x: &ExtWeylElt) -> Result<Computed> {
        let sys = &self.sys;
        let walls: Vec<AffSimple> = sys
            .affine_simples()
            .into_iter()
            .filter(|&s| direction(sys, x, s, self.flip_up) == Direction::Down)
            .collect();
        if walls.len() > sys.rank {
            return Err(Error::Consistency(format!(
                "{} has {} down-walls; the star of a vertex has at most {}",
                sys.format_elt(x),
                walls.len(),
                sys.rank
            )));
        }
        let mut elt = PeriodicElt::zero();
        let mut seen: HashSet<ExtWeylElt> = HashSet::from([sys.identity_elt()]);
        let mut queue = vec![sys.identity_elt()];
        while let Some(u) = queue.pop() {
            elt.add_term(x * &u, &LaurentPoly::v_pow(sys.length(&u) as i32));
            for &s in &walls {
                let us = sys.mul_simple(&u, s);
                if seen.insert(us.clone()) {
                    queue.push(us);
                }
            }
        }
        let (elt, dropped) = self.truncate(x, elt);
        Ok(Computed {
            elt,
            truncated: dropped,
        })
    }

    /// A failed invariant downstream of a truncation says the window is too
    /// small, not that the conventions are wrong.
    fn blame_window(&self, truncated: bool, msg: String) -> Error {
        match (truncated, self.window) {
            (true, Some(r)) => Error::Stabilization(format!("window R = {r} too small: {msg}")),
            _ => Error::Consistency(msg),
        }
    }

    fn check_normalized(&self, x: &ExtWeylElt, e: &PeriodicElt) -> Result<()> {
        let sys = &self.sys;
        if !e.coeff(x).is_one() {
            return Err(Error::Consistency(format!(
                "leading coefficient of P at {} is {}",
                sys.format_elt(x),
                e.coeff(x)
            )));
        }
        for (z, c) in e.iter() {
            if z != x && !c.in_v_z_v() {
                return Err(Error::Consistency(format!(
                    "coefficient of {} in P at {} is {c}, not in vZ[v] (check the up/down convention and the sign of the correction)",
                    sys.format_elt(z),
                    sys.format_elt(x)
                )));
            }
        }
        Ok(())
    }

    /// All `(w, p_{a,w})` with `p_{a,w} ≠ 0`, sorted canonically by `w`.
    pub fn row(&self, a: &ExtWeylElt) -> Result<Vec<(ExtWeylElt, LaurentPoly)>> {
        let sys = &self.sys;
        if !sys.in_waff(a) {
            return Err(Error::Domain(format!(
                "{} is not in the affine Weyl group",
                sys.format_elt(a)
            )));
        }
        let mut out = Vec::new();
        for w in sys.weyl_elements() {
            let c = ExtWeylElt::finite(w.clone());
            let pc = self.get(&c)?;
            for (z, p) in pc.elt.iter() {
                if z.finite_part() == a.finite_part() {
                    let nu = &a.left_translation() - &z.left_translation();
                    out.push((c.translate_left(&nu), p.clone()));
                }
            }
        }
        out.sort_by_cached_key(|(w, _)| sys.elt_key(w));
        Ok(out)
    }

    /// Largest `ℓ(x⁻¹z)` over the support of the class elements.
    pub fn support_radius(&self) -> Result<usize> {
        let sys = &self.sys;
        let mut r = 0;
        for w in sys.weyl_elements() {
            let c = ExtWeylElt::finite(w.clone());
            for z in self.get(&c)?.elt.support() {
                r = r.max(alcove_distance(sys, &c, z));
            }
        }
        Ok(r)
    }
}

/// Smallest window that loses no term for the given system.
pub fn exact_support_radius(sys: Arc<RootSystem>) -> Result<usize> {
    PeriodicSolver::new(sys, None).support_radius()
}

/// Pair of windowed solvers at `R` and `R + 1`; values are returned only
/// where the two agree.
pub struct StabilizedPeriodic {
    lo: PeriodicSolver,
    hi: PeriodicSolver,
    r: usize,
}

impl StabilizedPeriodic {
    pub fn new(sys: Arc<RootSystem>, r: usize) -> Self {
        Self::with_options(sys, r, false)
    }

    pub fn with_options(sys: Arc<RootSystem>, r: usize, flip_up: bool) -> Self {
        StabilizedPeriodic {
            lo: PeriodicSolver::new(sys.clone(), Some(r)).with_flipped_convention(flip_up),
            hi: PeriodicSolver::new(sys, Some(r + 1)).with_flipped_convention(flip_up),
            r,
        }
    }

    pub fn window(&self) -> usize {
        self.r
    }

    /// Smallest admissible window, `ℓ(w_∘)`. Each `P_w` has a term of degree
    /// `ℓ(w_∘)`, which lies at least that far from `w`; smaller windows cut it
    /// off in every element and can agree with `R + 1` on wrong values.
    pub fn min_window(sys: &RootSystem) -> usize {
        sys.num_positive_roots()
    }

    fn guard(&self) -> Result<()> {
        let min = Self::min_window(self.system());
        if self.r < min {
            return Err(Error::Config(format!(
                "window R = {} is below the minimum {min} for {}",
                self.r,
                self.system().name()
            )));
        }
        Ok(())
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        self.lo.system()
    }

    pub fn prefill(&self) -> Result<()> {
        self.lo.prefill()?;
        self.hi.prefill()
    }

    /// The stabilized `P_w`, restricted to the window around `w`.
    pub fn element(&self, w: &ExtWeylElt) -> Result<PeriodicElt> {
        self.guard()?;
        let lo = self.lo.element(w)?;
        let hi = self.hi.element(w)?;
        let sys = self.system();
        let mut keys: Vec<&ExtWeylElt> = lo.elt.support().chain(hi.elt.support()).collect();
        keys.sort();
        keys.dedup();
        for z in keys {
            if alcove_distance(sys, w, z) <= self.r && lo.elt.coeff(z) != hi.elt.coeff(z) {
                return Err(Error::Stabilization(format!(
                    "p at ({}, {}) is {} at R = {} but {} at R = {}",
                    sys.format_elt(z),
                    sys.format_elt(w),
                    lo.elt.coeff(z),
                    self.r,
                    hi.elt.coeff(z),
                    self.r + 1
                )));
            }
        }
        Ok(lo.elt.clone())
    }

    pub fn p(&self, y: &ExtWeylElt, w: &ExtWeylElt) -> Result<LaurentPoly> {
        self.guard()?;
        let sys = self.system();
        if alcove_distance(sys, w, y) > self.r {
            // An untruncated element is exact everywhere, including outside the window.
            let lo = self.lo.element(w)?;
            if !lo.truncated {
                return Ok(lo.elt.coeff(y));
            }
            return Err(Error::Stabilization(format!(
                "({}, {}) lies outside the window R = {}",
                sys.format_elt(y),
                sys.format_elt(w),
                self.r
            )));
        }
        Ok(self.element(w)?.coeff(y))
    }

    pub fn row(&self, a: &ExtWeylElt) -> Result<Vec<(ExtWeylElt, LaurentPoly)>> {
        self.guard()?;
        let lo = self.lo.row(a)?;
        let hi = self.hi.row(a)?;
        let sys = self.system();
        let within = |v: Vec<(ExtWeylElt, LaurentPoly)>| -> Vec<(ExtWeylElt, LaurentPoly)> {
            v.into_iter()
                .filter(|(w, _)| alcove_distance(sys, w, a) <= self.r)
                .collect()
        };
        let (lo, hi) = (within(lo), within(hi));
        if lo != hi {
            return Err(Error::Stabilization(format!(
                "row of {} differs between R = {} and R = {}",
                sys.format_elt(a),
                self.r,
                self.r + 1
            )));
        }
        Ok(lo)
    }
}

/// `p_{y,w}` from a fresh stabilized computation at window `R`.
pub fn periodic_kl(ctx: &ModularContext, y: &ExtWeylElt, w: &ExtWeylElt, r: usize) -> Result<LaurentPoly> {
    StabilizedPeriodic::new(ctx.system.clone(), r).p(y, w)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PklEntry {
    pub y: EltRepr,
    pub w: EltRepr,
    pub poly: LaurentPoly,
}

/// Nonzero stabilized `p_{y,w}`, sorted by `(w, y)` in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PklTable {
    #[serde(rename = "type")]
    pub cartan_type: String,
    pub rank: usize,
    pub p: u64,
    #[serde(rename = "R")]
    pub r: usize,
    pub entries: Vec<PklEntry>,
}

/// All nonzero `p_{y,w}` with `ℓ(y), ℓ(w) ≤ length_bound`.
pub fn pkl_table(ctx: &ModularContext, solver: &StabilizedPeriodic, length_bound: usize) -> Result<PklTable> {
    let sys = &ctx.system;
    solver.prefill()?;
    let targets = sys.elements_up_to_length(length_bound, false);
    let rows: Vec<Vec<PklEntry>> = targets
        .par_iter()
        .map(|w| -> Result<Vec<PklEntry>> {
            let e = solver.element(w)?;
            let mut ys: Vec<(&ExtWeylElt, &LaurentPoly)> =
                e.iter().filter(|(y, _)| sys.length(y) <= length_bound).collect();
            ys.sort_by_cached_key(|(y, _)| sys.elt_key(y));
            Ok(ys
                .into_iter()
                .map(|(y, p)| PklEntry {
                    y: sys.to_repr(y),
                    w: sys.to_repr(w),
                    poly: p.clone(),
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    Ok(PklTable {
        cartan_type: sys.cartan_type.to_string(),
        rank: sys.rank,
        p: ctx.p,
        r: solver.window(),
        entries: rows.into_iter().flatten().collect(),
    })
}

impl PklTable {
    /// Lookup map keyed by `(y, w)`.
    pub fn as_map(&self) -> BTreeMap<(EltRepr, EltRepr), LaurentPoly> {
        self.entries
            .iter()
            .map(|e| ((e.y.clone(), e.w.clone()), e.poly.clone()))
            .collect()
    }
}

/// `v^{ℓ(w_∘)}`.
pub fn top_monomial(sys: &RootSystem) -> LaurentPoly {
    LaurentPoly::v_pow(sys.num_positive_roots() as i32)
}

/// The pair `(w_∘x, w_∘x̌)` whose polynomial should be `v^{ℓ(w_∘)}`.
pub fn monomial_pair(ctx: &ModularContext, x: &ExtWeylElt) -> (ExtWeylElt, ExtWeylElt) {
    let w0 = ExtWeylElt::finite(ctx.system.w0().clone());
    (&w0 * x, &w0 * &ctx.check(x))
}

/// `p_{w_∘x, w_∘x̌} = v^{ℓ(w_∘)}`.
pub fn monomial_identity(ctx: &ModularContext, solver: &StabilizedPeriodic, x: &ExtWeylElt) -> Result<bool> {
    let (a, b) = monomial_pair(ctx, x);
    Ok(solver.p(&a, &b)? == top_monomial(&ctx.system))
}

/// Right side of the inversion identity: `v^{ℓ(w_∘)} p_{w_∘y, w_∘w̌}(v⁻¹)`.
pub fn inverted(ctx: &ModularContext, solver: &StabilizedPeriodic, y: &ExtWeylElt, w: &ExtWeylElt) -> Result<LaurentPoly> {
    let w0 = ExtWeylElt::finite(ctx.system.w0().clone());
    let q = solver.p(&(&w0 * y), &(&w0 * &ctx.check(w)))?;
    Ok(&top_monomial(&ctx.system) * &q.bar())
}

pub fn inversion_identity(ctx: &ModularContext, solver: &StabilizedPeriodic, y: &ExtWeylElt, w: &ExtWeylElt) -> Result<bool> {
    Ok(inverted(ctx, solver, y, w)? == solver.p(y, w)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::height_of;
    use crate::rootsys::CartanType;

    fn sys(t: CartanType, r: usize) -> Arc<RootSystem> {
        Arc::new(RootSystem::new(t, r).unwrap())
    }

    /// Rank-one oracle: alcoves on a line, `P_A = A + v·(alcove just below)`.
    fn rank_one_expected(s: &RootSystem, y: &ExtWeylElt, w: &ExtWeylElt) -> LaurentPoly {
        let (dy, dw) = (height_of(s, y), height_of(s, w));
        if dy == dw {
            LaurentPoly::one()
        } else if dy + 1 == dw {
            LaurentPoly::v_pow(1)
        } else {
            LaurentPoly::zero()
        }
    }

    #[test]
    fn generator_action_examples() {
        let s = sys(CartanType::A, 2);
        let e = PeriodicElt::basis(s.identity_elt());
        let out = periodic_act_gen(&s, &e, AffSimple(0), false);
        assert_eq!(out.coeff(&s.affine_simple(AffSimple(0))), LaurentPoly::one());
        assert_eq!(out.coeff(&s.identity_elt()), LaurentPoly::v_pow(1));
        let out = periodic_act_gen(&s, &e, AffSimple(1), false);
        assert_eq!(out.coeff(&s.identity_elt()), LaurentPoly::v_pow(-1));
        // (C_s)² = (v + v⁻¹) C_s on any element.
        let x = s.from_affine_word(&[AffSimple(0), AffSimple(2), AffSimple(1)]);
        for a in s.affine_simples() {
            let once = periodic_act_gen(&s, &PeriodicElt::basis(x.clone()), a, false);
            let twice = periodic_act_gen(&s, &once, a, false);
            assert_eq!(twice, once.scale(&LaurentPoly::from_terms([(1, 1), (-1, 1)])));
        }
    }

    #[test]
    fn rank_one_elements() {
        let s = sys(CartanType::A, 1);
        let solver = PeriodicSolver::new(s.clone(), None);
        for w in s.elements_up_to_length(8, false) {
            let e = solver.element(&w).unwrap();
            assert!(!e.truncated);
            assert_eq!(e.elt.len(), 2);
            for y in s.elements_up_to_length(10, false) {
                assert_eq!(e.elt.coeff(&y), rank_one_expected(&s, &y, &w));
            }
        }
    }

    #[test]
    fn monomial_identity_holds_for_restricted_and_translates() {
        for (t, r, p) in [(CartanType::A, 1, 3), (CartanType::A, 2, 5), (CartanType::B, 2, 5), (CartanType::G, 2, 7)] {
            let s = sys(t, r);
            let ctx = ModularContext::new(s.clone(), p).unwrap();
            let radius = exact_support_radius(s.clone()).unwrap();
            let solver = StabilizedPeriodic::new(s.clone(), radius);
            for x in s.elements_up_to_length(4, false) {
                assert!(monomial_identity(&ctx, &solver, &x).unwrap(), "{t}{r} {}", s.format_elt(&x));
            }
        }
    }

    #[test]
    fn inversion_identity_small() {
        for (t, r, p, l) in [(CartanType::A, 1, 3, 5), (CartanType::A, 2, 5, 3), (CartanType::C, 2, 5, 3)] {
            let s = sys(t, r);
            let ctx = ModularContext::new(s.clone(), p).unwrap();
            let radius = exact_support_radius(s.clone()).unwrap();
            let solver = StabilizedPeriodic::new(s.clone(), radius + 4);
            let elts = s.elements_up_to_length(l, false);
            for y in &elts {
                for w in &elts {
                    assert!(inversion_identity(&ctx, &solver, y, w).unwrap());
                }
            }
        }
    }

    #[test]
    fn bottom_coefficient_and_positivity() {
        for (t, r, p) in [(CartanType::A, 2, 5), (CartanType::B, 2, 5), (CartanType::G, 2, 7)] {
            let s = sys(t, r);
            let ctx = ModularContext::new(s.clone(), p).unwrap();
            let solver = PeriodicSolver::new(s.clone(), None);
            for w in s.weyl_elements() {
                let x = ExtWeylElt::finite(w.clone());
                let e = solver.element(&x).unwrap();
                assert_eq!(e.elt.coeff(&ctx.check(&x)), top_monomial(&s));
                for (z, c) in e.elt.iter() {
                    assert!(c.has_nonnegative_coeffs());
                    assert!(height_of(&s, z) <= height_of(&s, &x));
                }
            }
        }
    }

    #[test]
    fn random_galleries_agree() {
        let s = sys(CartanType::G, 2);
        let reference = PeriodicSolver::new(s.clone(), None);
        for seed in 0..4 {
            let solver = PeriodicSolver::new(s.clone(), None)
                .with_random_gallery(seed)
                .with_translation_cache(false);
            for w in s.weyl_elements() {
                let x = ExtWeylElt::finite(w.clone());
                assert_eq!(solver.element(&x).unwrap().elt, reference.element(&x).unwrap().elt);
            }
        }
    }

    #[test]
    fn rows_match_columns() {
        let s = sys(CartanType::B, 2);
        let solver = PeriodicSolver::new(s.clone(), None);
        for a in s.elements_up_to_length(3, false) {
            for (w, p) in solver.row(&a).unwrap() {
                assert_eq!(solver.p(&a, &w).unwrap(), p);
                assert!(!p.is_zero());
            }
        }
    }

    #[test]
    fn windows_below_the_minimum_are_rejected() {
        let s = sys(CartanType::A, 2);
        let x = ExtWeylElt::finite(s.w0().clone());
        let tight = StabilizedPeriodic::new(s.clone(), 2);
        assert!(matches!(tight.element(&x), Err(Error::Config(_))));
        let exact = exact_support_radius(s.clone()).unwrap();
        let full = PeriodicSolver::new(s.clone(), None).element(&x).unwrap().elt.clone();
        assert_eq!(StabilizedPeriodic::new(s, exact).element(&x).unwrap(), full);
    }

    /// Whatever stabilizes at an admissible window is correct inside it.
    #[test]
    fn admissible_windows_never_stabilize_on_wrong_values() {
        for (t, r) in [(CartanType::A, 2), (CartanType::G, 2), (CartanType::A, 3)] {
            let s = sys(t, r);
            let exact = PeriodicSolver::new(s.clone(), None);
            let radius = exact_support_radius(s.clone()).unwrap();
            for window in StabilizedPeriodic::min_window(&s)..radius {
                let st = StabilizedPeriodic::new(s.clone(), window);
                for w in s.elements_up_to_length(3, false) {
                    let full = exact.element(&w).unwrap();
                    match st.element(&w) {
                        Ok(e) => {
                            for z in e.support().chain(full.elt.support()) {
                                if alcove_distance(&s, &w, z) <= window {
                                    assert_eq!(e.coeff(z), full.elt.coeff(z), "{} R = {window}", s.name());
                                }
                            }
                        }
                        Err(err) => assert!(matches!(err, Error::Stabilization(_)), "{err}"),
                    }
                }
            }
        }
    }

    #[test]
    fn flipped_convention_breaks_identities() {
        let s = sys(CartanType::A, 1);
        let ctx = ModularContext::new(s.clone(), 3).unwrap();
        let solver = StabilizedPeriodic::with_options(s.clone(), 6, true);
        let broken = s
            .elements_up_to_length(4, false)
            .iter()
            .any(|x| !matches!(monomial_identity(&ctx, &solver, x), Ok(true)));
        assert!(broken);
    }

    #[test]
    fn table_json_schema() {
        let s = sys(CartanType::A, 1);
        let ctx = ModularContext::new(s.clone(), 5).unwrap();
        let solver = StabilizedPeriodic::new(s.clone(), 4);
        let table = pkl_table(&ctx, &solver, 2).unwrap();
        let json = serde_json::to_value(&table).unwrap();
        for key in ["type", "rank", "p", "R", "entries"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(table.entries.iter().all(|e| !e.poly.is_zero()));
        let back: PklTable = serde_json::from_value(json).unwrap();
        assert_eq!(back, table);
    }
}

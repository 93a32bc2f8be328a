//! The extended affine Weyl group `W_ex = W ⋉ X`.
//!
//! Elements are normalized as `w·t_λ` with the finite part on the left. The
//! affine simple reflections are indexed by [`AffSimple`]: index `0` is
//! `s_0 = s_θ t_{-θ}` where `θ^∨` is the highest coroot, and `i >= 1` is the
//! finite simple reflection `s_i` (Bourbaki numbering).

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{ModularContext, RootSystem, Weight, WeylElt};

/// An affine simple reflection; `0` is the affine one.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AffSimple(pub usize);

impl AffSimple {
    pub fn is_affine(self) -> bool {
        self.0 == 0
    }

    /// The 0-based index into the simple roots, for finite reflections.
    pub fn finite_index(self) -> Option<usize> {
        self.0.checked_sub(1)
    }

    pub fn finite(i: usize) -> Self {
        AffSimple(i + 1)
    }
}

impl fmt::Display for AffSimple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

/// The element `w·t_λ`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtWeylElt {
    w: WeylElt,
    t: Weight,
}

impl fmt::Debug for ExtWeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}·t{}", self.w, self.t)
    }
}

impl ExtWeylElt {
    pub fn identity(rank: usize) -> Self {
        ExtWeylElt {
            w: WeylElt::identity(rank),
            t: Weight::zero(rank),
        }
    }

    pub fn new(w: WeylElt, t: Weight) -> Self {
        assert_eq!(w.rank(), t.rank());
        ExtWeylElt { w, t }
    }

    pub fn translation(t: Weight) -> Self {
        ExtWeylElt {
            w: WeylElt::identity(t.rank()),
            t,
        }
    }

    pub fn finite(w: WeylElt) -> Self {
        let n = w.rank();
        ExtWeylElt {
            w,
            t: Weight::zero(n),
        }
    }

    pub fn finite_part(&self) -> &WeylElt {
        &self.w
    }

    /// The `λ` in `w·t_λ`.
    pub fn translation_part(&self) -> &Weight {
        &self.t
    }

    pub fn rank(&self) -> usize {
        self.t.rank()
    }

    pub fn inverse(&self) -> Self {
        let winv = self.w.inverse();
        let t = -&self.w.apply(&self.t);
        ExtWeylElt { w: winv, t }
    }

    pub fn is_identity(&self) -> bool {
        self.t.is_zero() && self.w.is_identity()
    }

    /// `t_μ · self`.
    pub fn translate_left(&self, mu: &Weight) -> Self {
        ExtWeylElt {
            w: self.w.clone(),
            t: &self.t + &self.w.apply_inverse(mu),
        }
    }

    /// Write `self = t_μ · w`; returns `μ = w(λ)`.
    pub fn left_translation(&self) -> Weight {
        self.w.apply(&self.t)
    }

    /// The affine action `v -> w(v + kλ)` on a point scaled by `k`.
    pub fn act_scaled(&self, v: &Weight, k: i64) -> Weight {
        self.w.apply(&(v + &self.t.scale(k)))
    }

    /// `(w t_λ)•μ = w(μ + pλ + ρ) − ρ`.
    pub fn dot_action_p(&self, p: i64, rho: &Weight, mu: &Weight) -> Weight {
        let inner = &(mu + &self.t.scale(p)) + rho;
        &self.w.apply(&inner) - rho
    }
}

impl Mul for &ExtWeylElt {
    type Output = ExtWeylElt;
    fn mul(self, rhs: &ExtWeylElt) -> ExtWeylElt {
        ExtWeylElt {
            w: &self.w * &rhs.w,
            t: &rhs.w.apply_inverse(&self.t) + &rhs.t,
        }
    }
}

impl Mul for ExtWeylElt {
    type Output = ExtWeylElt;
    fn mul(self, rhs: ExtWeylElt) -> ExtWeylElt {
        &self * &rhs
    }
}

/// Canonical serialized form: a reduced word of the finite part (1-based
/// simple reflection indices) and the translation `λ` of `w·t_λ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EltRepr {
    pub w: Vec<usize>,
    pub t: Vec<i64>,
}

/// An element of length zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OmegaElt(pub ExtWeylElt);

/// The formal quotient `H_{t_μ} (H_{t_ν})^{-1}` standing for `θ_{μ-ν}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ThetaPair {
    pub mu: Weight,
    pub nu: Weight,
}

impl ThetaPair {
    /// Reduced pair with `μ`, `ν` dominant and of disjoint support.
    pub fn new(lambda: &Weight) -> Self {
        ThetaPair {
            mu: Weight(lambda.0.iter().map(|&c| c.max(0)).collect()),
            nu: Weight(lambda.0.iter().map(|&c| (-c).max(0)).collect()),
        }
    }

    pub fn weight(&self) -> Weight {
        &self.mu - &self.nu
    }

    /// `θ_λ θ_μ = θ_{λ+μ}`.
    pub fn compose(&self, other: &ThetaPair) -> ThetaPair {
        ThetaPair::new(&(&self.weight() + &other.weight()))
    }

    /// Image in `W_ex`.
    pub fn projection(&self) -> ExtWeylElt {
        ExtWeylElt::translation(self.weight())
    }
}

/// The affine reflection `s_{α,n} = s_α t_{-nα}`, fixing `<·, α^∨> = n`.
#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineReflection {
    /// Index into the positive roots.
    pub root: usize,
    pub n: i64,
}

/// `x = t_λ · r` with `r` restricted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoxDecomposition {
    pub lambda: Weight,
    pub restricted: ExtWeylElt,
}

/// Sort key giving the deterministic order used by every enumeration.
pub type EltKey = (usize, Vec<usize>, EltRepr);

impl RootSystem {
    pub fn identity_elt(&self) -> ExtWeylElt {
        ExtWeylElt::identity(self.rank)
    }

    pub fn affine_simples(&self) -> Vec<AffSimple> {
        (0..=self.rank).map(AffSimple).collect()
    }

    /// The root `β_s` whose reflection is the linear part of `s`.
    pub fn simple_root_index(&self, s: AffSimple) -> usize {
        s.finite_index().unwrap_or(self.highest_coroot_root)
    }

    pub fn affine_simple(&self, s: AffSimple) -> ExtWeylElt {
        match s.finite_index() {
            Some(i) => ExtWeylElt::finite(self.simple_reflection(i).clone()),
            None => self.affine_reflection(AffineReflection {
                root: self.highest_coroot_root,
                n: 1,
            }),
        }
    }

    pub fn affine_reflection(&self, r: AffineReflection) -> ExtWeylElt {
        let root = &self.positive_roots[r.root];
        ExtWeylElt::new(
            WeylElt::reflection(&root.weight, &root.coroot),
            root.weight.scale(-r.n),
        )
    }

    pub fn from_affine_word(&self, word: &[AffSimple]) -> ExtWeylElt {
        word.iter()
            .fold(self.identity_elt(), |acc, &s| self.mul_simple(&acc, s))
    }

    /// `x · s`.
    pub fn mul_simple(&self, x: &ExtWeylElt, s: AffSimple) -> ExtWeylElt {
        x * &self.affine_simple(s)
    }

    /// `s · x`.
    pub fn simple_mul(&self, s: AffSimple, x: &ExtWeylElt) -> ExtWeylElt {
        &self.affine_simple(s) * x
    }

    pub fn in_waff(&self, x: &ExtWeylElt) -> bool {
        self.in_root_lattice(x.translation_part())
    }

    /// Whether `x` and `y` lie in the same coset of `W_aff`.
    pub fn same_component(&self, x: &ExtWeylElt, y: &ExtWeylElt) -> bool {
        self.in_root_lattice(&(x.translation_part() - y.translation_part()))
    }

    /// `ℓ(w t_λ) = Σ_{α>0, wα>0} |<λ,α^∨>| + Σ_{α>0, wα<0} |1 + <λ,α^∨>|`.
    pub fn length(&self, x: &ExtWeylElt) -> usize {
        let mu = x.finite_part().apply_inverse(&self.rho);
        let lambda = x.translation_part();
        self.positive_roots
            .iter()
            .map(|r| {
                let c = r.coroot.pair(lambda);
                if r.coroot.pair(&mu) > 0 {
                    c.unsigned_abs()
                } else {
                    (1 + c).unsigned_abs()
                }
            })
            .sum::<u64>() as usize
    }

    /// `ℓ(x s) > ℓ(x)`: the wall of type `s` of the alcove of `x` does not
    /// separate it from the fundamental alcove.
    pub fn is_right_ascent(&self, x: &ExtWeylElt, s: AffSimple) -> bool {
        let h = self.coxeter_number;
        let b = &x.finite_part().apply_inverse(&self.rho) - &x.translation_part().scale(h);
        match s.finite_index() {
            Some(i) => b.0[i] > 0,
            None => self.highest_coroot().coroot.pair(&b) < h,
        }
    }

    pub fn is_left_ascent(&self, s: AffSimple, x: &ExtWeylElt) -> bool {
        self.is_right_ascent(&x.inverse(), s)
    }

    pub fn right_descents(&self, x: &ExtWeylElt) -> Vec<AffSimple> {
        self.affine_simples()
            .into_iter()
            .filter(|&s| !self.is_right_ascent(x, s))
            .collect()
    }

    pub fn left_descents(&self, x: &ExtWeylElt) -> Vec<AffSimple> {
        let xi = x.inverse();
        self.affine_simples()
            .into_iter()
            .filter(|&s| !self.is_right_ascent(&xi, s))
            .collect()
    }

    /// Canonical reduced expression `x = s_{i1} ⋯ s_{ik} ω`: repeatedly strip
    /// the smallest left descent. Returns the word and the length-zero part.
    pub fn affine_word(&self, x: &ExtWeylElt) -> (Vec<AffSimple>, ExtWeylElt) {
        let mut word = Vec::new();
        let mut cur = x.clone();
        loop {
            let inv = cur.inverse();
            match self
                .affine_simples()
                .into_iter()
                .find(|&s| !self.is_right_ascent(&inv, s))
            {
                Some(s) => {
                    word.push(s);
                    cur = self.simple_mul(s, &cur);
                }
                None => return (word, cur),
            }
        }
    }

    pub fn to_repr(&self, x: &ExtWeylElt) -> EltRepr {
        EltRepr {
            w: self
                .reduced_word(x.finite_part())
                .into_iter()
                .map(|i| i + 1)
                .collect(),
            t: x.translation_part().0.clone(),
        }
    }

    pub fn from_repr(&self, r: &EltRepr) -> Result<ExtWeylElt> {
        if r.t.len() != self.rank {
            return Err(Error::Config(format!(
                "translation {:?} has the wrong rank for {}",
                r.t,
                self.name()
            )));
        }
        if let Some(&bad) = r.w.iter().find(|&&i| i == 0 || i > self.rank) {
            return Err(Error::Config(format!(
                "finite word letter {bad} out of range 1..={}",
                self.rank
            )));
        }
        let word: Vec<usize> = r.w.iter().map(|i| i - 1).collect();
        Ok(ExtWeylElt::new(self.from_word(&word), Weight(r.t.clone())))
    }

    pub fn elt_key(&self, x: &ExtWeylElt) -> EltKey {
        let (word, _) = self.affine_word(x);
        (
            word.len(),
            word.into_iter().map(|s| s.0).collect(),
            self.to_repr(x),
        )
    }

    /// Human-readable form: affine word followed by the length-zero part, if any.
    pub fn format_elt(&self, x: &ExtWeylElt) -> String {
        let (word, omega) = self.affine_word(x);
        let mut s: String = if word.is_empty() {
            "e".to_string()
        } else {
            word.iter().map(|a| a.to_string()).collect::<Vec<_>>().join("")
        };
        if !omega.is_identity() {
            let r = self.to_repr(&omega);
            s.push_str(&format!("·ω{:?}{}", r.w, omega.translation_part()));
        }
        s
    }

    /// Sort elements by `(length, canonical word, repr)`.
    pub fn sort_elts(&self, xs: &mut [ExtWeylElt]) {
        xs.sort_by_cached_key(|x| self.elt_key(x));
    }

    /// The length-zero subgroup `Ω ≅ X/ZΦ`, sorted canonically.
    pub fn omega_group(&self) -> Vec<OmegaElt> {
        let mut out: Vec<ExtWeylElt> = self
            .weyl_elements()
            .iter()
            .filter_map(|w| {
                let lambda = Weight(
                    (0..self.rank)
                        .map(|i| -i64::from(!self.maps_to_positive(w, i)))
                        .collect(),
                );
                let x = ExtWeylElt::new(w.clone(), lambda);
                (self.length(&x) == 0).then_some(x)
            })
            .collect();
        self.sort_elts(&mut out);
        out.into_iter().map(OmegaElt).collect()
    }

    /// The permutation of `S_aff` induced by conjugation `s -> ω s ω^{-1}`.
    pub fn omega_permutation(&self, omega: &OmegaElt) -> Result<Vec<AffSimple>> {
        let inv = omega.0.inverse();
        self.affine_simples()
            .into_iter()
            .map(|s| {
                let c = &(&omega.0 * &self.affine_simple(s)) * &inv;
                self.affine_simples()
                    .into_iter()
                    .find(|&t| self.affine_simple(t) == c)
                    .ok_or_else(|| {
                        Error::Consistency(format!(
                            "conjugation by a length-zero element does not preserve {s}"
                        ))
                    })
            })
            .collect()
    }

    /// Bruhat order, via the lifting property along right descents of `y`.
    /// Elements of different `W_aff`-cosets are incomparable and give `false`;
    /// use [`RootSystem::same_component`] to tell the two cases apart.
    pub fn bruhat_leq(&self, x: &ExtWeylElt, y: &ExtWeylElt) -> bool {
        if !self.same_component(x, y) {
            return false;
        }
        let (mut x, mut y) = (x.clone(), y.clone());
        let (mut lx, mut ly) = (self.length(&x), self.length(&y));
        loop {
            if lx > ly {
                return false;
            }
            if ly == 0 {
                return x == y;
            }
            let s = self
                .affine_simples()
                .into_iter()
                .find(|&s| !self.is_right_ascent(&y, s))
                .expect("positive length has a descent");
            if !self.is_right_ascent(&x, s) {
                x = self.mul_simple(&x, s);
                lx -= 1;
            }
            y = self.mul_simple(&y, s);
            ly -= 1;
        }
    }

    /// All elements of `W_aff · Ω` (or of `W_aff` alone) of length at most `max_len`, sorted.
    pub fn elements_up_to_length(&self, max_len: usize, extended: bool) -> Vec<ExtWeylElt> {
        let seeds: Vec<ExtWeylElt> = if extended {
            self.omega_group().into_iter().map(|o| o.0).collect()
        } else {
            vec![self.identity_elt()]
        };
        let mut seen: HashSet<ExtWeylElt> = seeds.iter().cloned().collect();
        let mut layer = seeds;
        let mut out = layer.clone();
        for _ in 0..max_len {
            let mut next = Vec::new();
            for x in &layer {
                for s in self.affine_simples() {
                    if self.is_right_ascent(x, s) {
                        let y = self.mul_simple(x, s);
                        if seen.insert(y.clone()) {
                            next.push(y);
                        }
                    }
                }
            }
            out.extend(next.iter().cloned());
            layer = next;
        }
        self.sort_elts(&mut out);
        out
    }
}

impl ModularContext {
    pub fn dot_action(&self, x: &ExtWeylElt, mu: &Weight) -> Weight {
        x.dot_action_p(self.p_i64(), &self.system.rho, mu)
    }

    /// `W_ex^res`: one element `t_κ w` per `w ∈ W` with `(t_κ w)•0` restricted,
    /// filtered by length and sorted canonically.
    pub fn restricted_elements(&self, length_bound: usize) -> Vec<ExtWeylElt> {
        let sys = &self.system;
        let p = self.p_i64();
        let mut out: Vec<ExtWeylElt> = sys
            .weyl_elements()
            .iter()
            .map(|w| {
                let dot0 = self.dot_action(&ExtWeylElt::finite(w.clone()), &Weight::zero(sys.rank));
                let kappa = Weight(dot0.0.iter().map(|&c| -c.div_euclid(p)).collect());
                ExtWeylElt::translation(kappa) * ExtWeylElt::finite(w.clone())
            })
            .filter(|x| sys.length(x) <= length_bound)
            .collect();
        sys.sort_elts(&mut out);
        out
    }

    pub fn is_restricted_elt(&self, x: &ExtWeylElt) -> bool {
        self.is_restricted(&self.dot_action(x, &Weight::zero(self.system.rank)))
    }

    /// The unique expression `x = t_λ · r` with `r ∈ W_ex^res`.
    pub fn box_decomposition(&self, x: &ExtWeylElt) -> BoxDecomposition {
        box_decomposition(&self.system, x)
    }

    /// `x̌ = t_λ w_∘ r` for `x = t_λ r`, `r` restricted.
    pub fn check(&self, x: &ExtWeylElt) -> ExtWeylElt {
        let b = self.box_decomposition(x);
        ExtWeylElt::translation(b.lambda) * (&ExtWeylElt::finite(self.system.w0().clone()) * &b.restricted)
    }

    pub fn check_inverse(&self, z: &ExtWeylElt) -> ExtWeylElt {
        let sys = &self.system;
        let p = self.p_i64();
        let d = self.dot_action(z, &Weight::zero(sys.rank));
        let lambda = Weight(d.0.iter().map(|&c| (c + p + 1).div_euclid(p)).collect());
        let w0 = ExtWeylElt::finite(sys.w0().clone());
        let r = &w0 * &ExtWeylElt::translation(-&lambda) * z.clone();
        ExtWeylElt::translation(lambda) * r
    }

    /// `x -> t_ρ x̌` on `W_ex^res`.
    pub fn rho_check_involution(&self, x: &ExtWeylElt) -> Result<ExtWeylElt> {
        if !self.is_restricted_elt(x) {
            return Err(Error::Domain(format!(
                "{} is not a restricted element",
                self.system.format_elt(x)
            )));
        }
        Ok(ExtWeylElt::translation(self.system.rho.clone()) * self.check(x))
    }

    pub fn in_a0(&self, eta: &Weight) -> bool {
        let shifted = eta + &self.system.rho;
        self.system.positive_roots.iter().all(|r| {
            let c = r.coroot.pair(&shifted);
            (0..=self.p_i64()).contains(&c)
        })
    }

    /// Reflections `s_{α,n}`, `n ∈ {0,1}`, fixing `η` under the dot action.
    pub fn dot_stabilizer(&self, eta: &Weight) -> Result<Vec<AffineReflection>> {
        if !self.in_a0(eta) {
            return Err(Error::Domain(format!("{eta} is not in the closed p-alcove")));
        }
        let shifted = eta + &self.system.rho;
        let p = self.p_i64();
        Ok(self
            .system
            .positive_roots
            .iter()
            .enumerate()
            .filter_map(|(i, r)| match r.coroot.pair(&shifted) {
                0 => Some(AffineReflection { root: i, n: 0 }),
                c if c == p => Some(AffineReflection { root: i, n: 1 }),
                _ => None,
            })
            .collect())
    }

    /// The affine reflection that `s` is, in `s_{α,n}` form.
    pub fn as_affine_reflection(&self, s: AffSimple) -> AffineReflection {
        AffineReflection {
            root: self.system.simple_root_index(s),
            n: i64::from(s.is_affine()),
        }
    }

    /// Lexicographically smallest `η` in the closed alcove with `•`-stabilizer `{1, s}`.
    pub fn find_mu_s(&self, s: AffSimple) -> Result<Weight> {
        let n = self.system.rank;
        let p = self.p_i64();
        let states = (p as f64 + 1.0).powi(n as i32);
        if states > 5e7 {
            return Err(Error::Resource(format!(
                "singular weight search over {states:.0} candidates"
            )));
        }
        let target = vec![self.as_affine_reflection(s)];
        let mut eta = Weight(vec![-1; n]);
        loop {
            if self.in_a0(&eta) && self.dot_stabilizer(&eta)? == target {
                return Ok(eta);
            }
            // Odometer in lexicographic order, last coordinate fastest.
            let mut i = n;
            loop {
                if i == 0 {
                    return Err(Error::SearchFailure(format!("no singular weight for {s}")));
                }
                i -= 1;
                if eta.0[i] < p - 1 {
                    eta.0[i] += 1;
                    for c in &mut eta.0[i + 1..] {
                        *c = -1;
                    }
                    break;
                }
            }
        }
    }
}

pub(crate) fn box_decomposition(sys: &RootSystem, x: &ExtWeylElt) -> BoxDecomposition {
    let h = sys.coxeter_number;
    let q = x.act_scaled(&sys.rho, h);
    let lambda = Weight(q.0.iter().map(|&c| c.div_euclid(h)).collect());
    let restricted = ExtWeylElt::translation(-&lambda) * x.clone();
    BoxDecomposition { lambda, restricted }
}

/// `ℓ(r)` for the restricted part `r` of `x = t_λ r`.
pub fn depth(sys: &RootSystem, x: &ExtWeylElt) -> usize {
    sys.length(&box_decomposition(sys, x).restricted)
}

/// Breadth-first search over `W_ex` by length for `u` and finite `t` with
/// `u t u^{-1} = s`. Candidates of equal length are tried in canonical order.
pub fn conjugate_affine_simple(
    sys: &RootSystem,
    s: AffSimple,
    radius: usize,
) -> Result<(ExtWeylElt, AffSimple)> {
    if !s.is_affine() {
        return Err(Error::Domain(format!("{s} is a finite simple reflection")));
    }
    let target = sys.affine_simple(s);
    let finite: Vec<AffSimple> = (0..sys.rank).map(AffSimple::finite).collect();
    let mut seen: BTreeSet<EltKey> = BTreeSet::new();
    let mut layer: Vec<ExtWeylElt> = sys.omega_group().into_iter().map(|o| o.0).collect();
    for len in 0..=radius {
        sys.sort_elts(&mut layer);
        for u in &layer {
            let uinv = u.inverse();
            for &t in &finite {
                if &(u * &sys.affine_simple(t)) * &uinv == target {
                    return Ok((u.clone(), t));
                }
            }
        }
        if len == radius {
            break;
        }
        let mut next = Vec::new();
        for u in &layer {
            for a in sys.affine_simples() {
                if sys.is_right_ascent(u, a) {
                    let y = sys.mul_simple(u, a);
                    if seen.insert(sys.elt_key(&y)) {
                        next.push(y);
                    }
                }
            }
        }
        layer = next;
    }
    Err(Error::SearchFailure(format!(
        "no conjugating element for {s} within length {radius}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;
    use proptest::prelude::*;
    use std::sync::Arc;

    fn ctx(t: CartanType, r: usize, p: u64) -> ModularContext {
        ModularContext::new(Arc::new(RootSystem::new(t, r).unwrap()), p).unwrap()
    }

    /// Affine action on `X⊗Q ⊕ Qδ`, as an `(n+1)×(n+1)` integer matrix on
    /// `(v, 1)`: independent check of the multiplication rule.
    #[allow(clippy::needless_range_loop)]
    fn affine_matrix(x: &ExtWeylElt) -> Vec<Vec<i64>> {
        let n = x.rank();
        let mut m = vec![vec![0; n + 1]; n + 1];
        for j in 0..n {
            let img = x.act_scaled(&Weight::fundamental(n, j), 0);
            for i in 0..n {
                m[i][j] = img.0[i];
            }
        }
        let t = x.act_scaled(&Weight::zero(n), 1);
        for i in 0..n {
            m[i][n] = t.0[i];
        }
        m[n][n] = 1;
        m
    }

    fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = a.len();
        (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect())
            .collect()
    }

    #[test]
    fn length_examples() {
        let a2 = ctx(CartanType::A, 2, 5);
        let sys = &a2.system;
        assert_eq!(sys.length(&sys.identity_elt()), 0);
        assert_eq!(sys.length(&ExtWeylElt::translation(sys.rho.clone())), 4);
        let a1 = ctx(CartanType::A, 1, 5);
        let s = &a1.system;
        let x = ExtWeylElt::translation(Weight(vec![1])) * s.affine_simple(AffSimple(1));
        assert_eq!(s.length(&x), 0);
    }

    #[test]
    fn dot_action_examples() {
        let a1 = ctx(CartanType::A, 1, 5);
        let s1 = a1.system.affine_simple(AffSimple(1));
        assert_eq!(a1.dot_action(&s1, &Weight(vec![0])), Weight(vec![-2]));
        let lam = Weight(vec![3]);
        assert_eq!(
            a1.dot_action(&ExtWeylElt::translation(lam), &Weight(vec![0])),
            Weight(vec![15])
        );
        let g2 = ctx(CartanType::G, 2, 7);
        let minus_rho = -&g2.system.rho;
        for w in g2.system.weyl_elements() {
            assert_eq!(g2.dot_action(&ExtWeylElt::finite(w.clone()), &minus_rho), minus_rho);
        }
    }

    #[test]
    fn omega_examples() {
        for (t, r, size) in [
            (CartanType::A, 1, 2),
            (CartanType::A, 2, 3),
            (CartanType::A, 3, 4),
            (CartanType::B, 2, 2),
            (CartanType::C, 3, 2),
            (CartanType::D, 4, 4),
            (CartanType::G, 2, 1),
            (CartanType::E, 6, 3),
        ] {
            let sys = RootSystem::new(t, r).unwrap();
            let omega = sys.omega_group();
            assert_eq!(omega.len(), size, "{t}{r}");
            let in_waff: Vec<_> = omega.iter().filter(|o| sys.in_waff(&o.0)).collect();
            assert_eq!(in_waff.len(), 1);
            assert!(in_waff[0].0.is_identity());
            for o in &omega {
                let perm = sys.omega_permutation(o).unwrap();
                let distinct: HashSet<_> = perm.iter().collect();
                assert_eq!(distinct.len(), r + 1);
            }
        }
    }

    #[test]
    fn a1_omega_is_t_omega_s1() {
        let sys = RootSystem::new(CartanType::A, 1).unwrap();
        let omega = sys.omega_group();
        let expected = ExtWeylElt::translation(Weight(vec![1])) * sys.affine_simple(AffSimple(1));
        assert!(omega.iter().any(|o| o.0 == expected));
    }

    #[test]
    fn affine_simple_reflections() {
        let sys = RootSystem::new(CartanType::A, 1).unwrap();
        let s0 = sys.affine_simple(AffSimple(0));
        let s1 = sys.affine_simple(AffSimple(1));
        let t_alpha = ExtWeylElt::translation(sys.simple_root(0).clone());
        assert_eq!(s0, &t_alpha * &s1);
        for t in [CartanType::A, CartanType::B, CartanType::G] {
            let sys = RootSystem::new(t, 2).unwrap();
            for s in sys.affine_simples() {
                let x = sys.affine_simple(s);
                assert_eq!(sys.length(&x), 1);
                assert!((&x * &x).is_identity());
            }
        }
    }

    #[test]
    fn canonical_words_are_reduced() {
        let sys = RootSystem::new(CartanType::B, 2).unwrap();
        for x in sys.elements_up_to_length(5, true) {
            let (word, omega) = sys.affine_word(&x);
            assert_eq!(word.len(), sys.length(&x));
            assert_eq!(sys.length(&omega), 0);
            assert_eq!(&sys.from_affine_word(&word) * &omega, x);
            let r = sys.to_repr(&x);
            assert_eq!(sys.from_repr(&r).unwrap(), x);
        }
    }

    #[test]
    fn serialization_format() {
        let sys = RootSystem::new(CartanType::A, 2).unwrap();
        let x = sys.from_affine_word(&[AffSimple(0), AffSimple(1)]);
        let json = serde_json::to_string(&sys.to_repr(&x)).unwrap();
        let back: EltRepr = serde_json::from_str(&json).unwrap();
        assert_eq!(sys.from_repr(&back).unwrap(), x);
        assert!(json.starts_with("{\"w\":"));
        assert!(sys.from_repr(&EltRepr { w: vec![3], t: vec![0, 0] }).is_err());
    }

    /// Oracle: Bruhat order as the transitive closure of `x < x·r` for
    /// affine reflections `r` with `ℓ(x·r) > ℓ(x)`, up to the length of `y`.
    fn bruhat_by_reflections(sys: &RootSystem, x: &ExtWeylElt, y: &ExtWeylElt) -> bool {
        let ly = sys.length(y);
        let refl: Vec<ExtWeylElt> = (0..sys.num_positive_roots())
            .flat_map(|i| (-(ly as i64)..=ly as i64).map(move |n| AffineReflection { root: i, n }))
            .map(|r| sys.affine_reflection(r))
            .collect();
        let mut frontier = vec![x.clone()];
        let mut seen: HashSet<ExtWeylElt> = frontier.iter().cloned().collect();
        while let Some(z) = frontier.pop() {
            if &z == y {
                return true;
            }
            let lz = sys.length(&z);
            for r in &refl {
                let zr = &z * r;
                let l = sys.length(&zr);
                if l > lz && l <= ly && seen.insert(zr.clone()) {
                    frontier.push(zr);
                }
            }
        }
        false
    }

    #[test]
    fn bruhat_matches_reflection_oracle() {
        for t in [CartanType::A, CartanType::B] {
            let r = if t == CartanType::A { 1 } else { 2 };
            let sys = RootSystem::new(t, r).unwrap();
            let elts = sys.elements_up_to_length(4, false);
            for x in &elts {
                for y in &elts {
                    assert_eq!(
                        sys.bruhat_leq(x, y),
                        bruhat_by_reflections(&sys, x, y),
                        "{} vs {}",
                        sys.format_elt(x),
                        sys.format_elt(y)
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_examples() {
        let sys = RootSystem::new(CartanType::A, 1).unwrap();
        let s0 = sys.affine_simple(AffSimple(0));
        let s1 = sys.affine_simple(AffSimple(1));
        assert!(!sys.bruhat_leq(&s0, &s1));
        assert!(!sys.bruhat_leq(&s1, &s0));
        for x in sys.elements_up_to_length(5, false) {
            assert!(sys.bruhat_leq(&x, &x));
            assert!(sys.bruhat_leq(&sys.identity_elt(), &x));
        }
        let omega = sys.omega_group()[1].0.clone();
        assert!(!sys.same_component(&omega, &s0));
        assert!(!sys.bruhat_leq(&sys.identity_elt(), &omega));
    }

    #[test]
    fn restricted_examples() {
        let a1 = ctx(CartanType::A, 1, 5);
        let res = a1.restricted_elements(usize::MAX);
        let expected = ExtWeylElt::translation(Weight(vec![1])) * a1.system.affine_simple(AffSimple(1));
        assert_eq!(res.len(), 2);
        assert!(res.contains(&a1.system.identity_elt()));
        assert!(res.contains(&expected));
        assert_eq!(a1.dot_action(&expected, &Weight(vec![0])), Weight(vec![3]));
        for (t, r, p) in [(CartanType::A, 2, 5), (CartanType::B, 2, 5), (CartanType::G, 2, 7)] {
            let c = ctx(t, r, p);
            let res = c.restricted_elements(usize::MAX);
            assert_eq!(res.len() as u64, c.system.weyl_order);
            let finite: HashSet<_> = res.iter().map(|x| x.finite_part().clone()).collect();
            assert_eq!(finite.len(), res.len());
            assert!(res.iter().all(|x| c.is_restricted_elt(x)));
        }
    }

    #[test]
    fn check_examples() {
        let a1 = ctx(CartanType::A, 1, 5);
        let sys = &a1.system;
        assert_eq!(a1.check(&sys.identity_elt()), ExtWeylElt::finite(sys.w0().clone()));
        let x = ExtWeylElt::translation(Weight(vec![1])) * sys.affine_simple(AffSimple(1));
        assert_eq!(a1.check(&x), ExtWeylElt::translation(Weight(vec![-1])));
        let e = sys.identity_elt();
        let y = a1.rho_check_involution(&e).unwrap();
        assert_eq!(y, x);
        assert_eq!(a1.rho_check_involution(&y).unwrap(), e);
        assert!(a1.rho_check_involution(&sys.affine_simple(AffSimple(0))).is_err());
    }

    #[test]
    fn check_is_a_bijection_with_omega_equivariance() {
        for (t, r, p) in [(CartanType::A, 2, 5), (CartanType::C, 2, 5), (CartanType::G, 2, 7)] {
            let c = ctx(t, r, p);
            let sys = &c.system;
            let elts = sys.elements_up_to_length(5, true);
            let mut images = HashSet::new();
            for x in &elts {
                let xc = c.check(x);
                assert_eq!(c.check_inverse(&xc), *x);
                assert!(images.insert(xc.clone()));
                assert_eq!(sys.in_waff(&xc), sys.in_waff(x));
                for o in sys.omega_group() {
                    assert_eq!(c.check(&(x * &o.0)), &xc * &o.0);
                }
                let mu = sys.simple_root(0).scale(3);
                assert_eq!(c.check(&x.translate_left(&mu)), xc.translate_left(&mu));
            }
        }
    }

    #[test]
    fn rho_check_reverses_length() {
        for (t, r, p) in [
            (CartanType::A, 1, 3),
            (CartanType::A, 2, 5),
            (CartanType::B, 2, 5),
            (CartanType::C, 2, 5),
            (CartanType::G, 2, 7),
        ] {
            let c = ctx(t, r, p);
            let sys = &c.system;
            let top = sys.length(&(ExtWeylElt::translation(sys.rho.clone()) * ExtWeylElt::finite(sys.w0().clone())));
            for x in c.restricted_elements(usize::MAX) {
                let y = c.rho_check_involution(&x).unwrap();
                assert!(c.is_restricted_elt(&y));
                assert_eq!(c.rho_check_involution(&y).unwrap(), x);
                assert_eq!(sys.length(&y), top - sys.length(&x));
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let a1 = ctx(CartanType::A, 1, 5);
        assert!(a1.dot_stabilizer(&Weight(vec![0])).unwrap().is_empty());
        assert_eq!(
            a1.dot_stabilizer(&Weight(vec![-1])).unwrap(),
            vec![AffineReflection { root: 0, n: 0 }]
        );
        assert_eq!(
            a1.dot_stabilizer(&Weight(vec![4])).unwrap(),
            vec![AffineReflection { root: 0, n: 1 }]
        );
        assert!(matches!(a1.dot_stabilizer(&Weight(vec![5])), Err(Error::Domain(_))));
        assert_eq!(a1.find_mu_s(AffSimple(1)).unwrap(), Weight(vec![-1]));
        assert_eq!(a1.find_mu_s(AffSimple(0)).unwrap(), Weight(vec![4]));
    }

    #[test]
    fn singular_weights_are_fixed_by_their_wall() {
        for (t, r, p) in [(CartanType::A, 2, 5), (CartanType::B, 2, 7), (CartanType::G, 2, 7)] {
            let c = ctx(t, r, p);
            for s in c.system.affine_simples() {
                let eta = c.find_mu_s(s).unwrap();
                assert!(c.in_a0(&eta));
                assert_eq!(c.dot_action(&c.system.affine_simple(s), &eta), eta);
            }
        }
    }

    #[test]
    fn stabilizers_are_omega_equivariant() {
        let c = ctx(CartanType::A, 2, 5);
        let sys = &c.system;
        for o in sys.omega_group() {
            let perm = sys.omega_permutation(&o).unwrap();
            for s in sys.affine_simples() {
                let eta = c.find_mu_s(s).unwrap();
                let moved = c.dot_action(&o.0, &eta);
                let stab = c.dot_stabilizer(&moved).unwrap();
                assert_eq!(stab, vec![c.as_affine_reflection(perm[s.0])]);
            }
        }
    }

    #[test]
    fn conjugation_search() {
        let a1 = RootSystem::new(CartanType::A, 1).unwrap();
        let (u, t) = conjugate_affine_simple(&a1, AffSimple(0), 2).unwrap();
        let omega = ExtWeylElt::translation(Weight(vec![1])) * a1.affine_simple(AffSimple(1));
        assert_eq!(u, omega);
        assert_eq!(t, AffSimple(1));
        let a2 = RootSystem::new(CartanType::A, 2).unwrap();
        let (u, t) = conjugate_affine_simple(&a2, AffSimple(0), 4).unwrap();
        let c = &(&u * &a2.affine_simple(t)) * &u.inverse();
        assert_eq!(c, a2.affine_simple(AffSimple(0)));
        assert!((&c * &c).is_identity());
        let g2 = RootSystem::new(CartanType::G, 2).unwrap();
        assert!(matches!(
            conjugate_affine_simple(&g2, AffSimple(0), 0),
            Err(Error::SearchFailure(_))
        ));
        assert!(conjugate_affine_simple(&g2, AffSimple(0), 6).is_ok());
        assert!(conjugate_affine_simple(&g2, AffSimple(1), 6).is_err());
    }

    #[test]
    fn theta_pairs() {
        let th = ThetaPair::new(&Weight(vec![2, -3]));
        assert_eq!(th.mu, Weight(vec![2, 0]));
        assert_eq!(th.nu, Weight(vec![0, 3]));
        let other = ThetaPair::new(&Weight(vec![-2, 1]));
        assert_eq!(th.compose(&other).weight(), Weight(vec![0, -2]));
        assert_eq!(th.compose(&other).projection(), th.projection() * other.projection());
    }

    fn arb_word(max: usize, rank: usize) -> impl Strategy<Value = Vec<AffSimple>> {
        prop::collection::vec((0..=rank).prop_map(AffSimple), 0..max)
    }

    proptest! {
        #[test]
        fn multiplication_matches_matrix_model(
            w1 in arb_word(7, 2), w2 in arb_word(7, 2), shift in prop::collection::vec(-3i64..3, 2)
        ) {
            let sys = RootSystem::new(CartanType::B, 2).unwrap();
            let x = sys.from_affine_word(&w1).translate_left(&Weight(shift));
            let y = sys.from_affine_word(&w2);
            prop_assert_eq!(affine_matrix(&(&x * &y)), mat_mul(&affine_matrix(&x), &affine_matrix(&y)));
            prop_assert!((&x * &x.inverse()).is_identity());
        }

        #[test]
        fn length_is_subadditive_and_inverse_invariant(w1 in arb_word(8, 2), w2 in arb_word(8, 2)) {
            let sys = RootSystem::new(CartanType::G, 2).unwrap();
            let x = sys.from_affine_word(&w1);
            let y = sys.from_affine_word(&w2);
            prop_assert!(sys.length(&(&x * &y)) <= sys.length(&x) + sys.length(&y));
            prop_assert_eq!(sys.length(&x.inverse()), sys.length(&x));
            prop_assert!(sys.length(&x) <= w1.len());
            prop_assert_eq!(sys.length(&x) % 2, w1.len() % 2);
        }

        #[test]
        fn dot_action_is_a_group_action(
            w1 in arb_word(6, 2), w2 in arb_word(6, 2), mu in prop::collection::vec(-8i64..8, 2)
        ) {
            let c = ctx(CartanType::A, 2, 5);
            let x = c.system.from_affine_word(&w1);
            let y = c.system.from_affine_word(&w2);
            let mu = Weight(mu);
            prop_assert_eq!(c.dot_action(&(&x * &y), &mu), c.dot_action(&x, &c.dot_action(&y, &mu)));
        }

        #[test]
        fn ascent_test_matches_length(w in arb_word(10, 2)) {
            let sys = RootSystem::new(CartanType::C, 2).unwrap();
            let x = sys.from_affine_word(&w);
            for s in sys.affine_simples() {
                let up = sys.length(&sys.mul_simple(&x, s)) > sys.length(&x);
                prop_assert_eq!(sys.is_right_ascent(&x, s), up);
            }
        }
    }
}

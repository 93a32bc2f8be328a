//! Hecke algebra of `W_aff` in the normalization `H_s² = 1 + (v⁻¹ − v)H_s`,
//! its Kazhdan–Lusztig basis `C_w = Σ h_{y,w} H_y` (with `C_s = H_s + v`),
//! and the spherical module spanned by coset-maximal elements.

use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap, HashSet};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;
use parking_lot::Mutex;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::rootsys::RootSystem;
use crate::weylext::{AffSimple, ExtWeylElt};

/// A finite linear combination of basis vectors indexed by group elements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LinComb {
    terms: BTreeMap<ExtWeylElt, LaurentPoly>,
}

/// Element of the Hecke algebra in the standard basis `H_x`.
pub type HeckeElt = LinComb;
/// Element of the spherical module in the basis `M_x`, `x` coset-maximal.
pub type SphericalElt = LinComb;

impl LinComb {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(x: ExtWeylElt) -> Self {
        let mut out = Self::zero();
        out.add_term(x, &LaurentPoly::one());
        out
    }

    pub fn add_term(&mut self, x: ExtWeylElt, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(x) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(slot) => {
                slot.insert(c.clone());
            }
        }
    }

    pub fn coeff(&self, x: &ExtWeylElt) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    pub fn get(&self, x: &ExtWeylElt) -> Option<&LaurentPoly> {
        self.terms.get(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ExtWeylElt, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &ExtWeylElt> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_scaled(&mut self, other: &LinComb, c: &LaurentPoly) {
        for (x, p) in &other.terms {
            self.add_term(x.clone(), &(p * c));
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> LinComb {
        let mut out = LinComb::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn into_map(self) -> BTreeMap<ExtWeylElt, LaurentPoly> {
        self.terms
    }
}

fn v() -> LaurentPoly {
    LaurentPoly::v_pow(1)
}

fn vinv() -> LaurentPoly {
    LaurentPoly::v_pow(-1)
}

/// `h · H_s`.
pub fn mul_std_gen(sys: &RootSystem, h: &HeckeElt, s: AffSimple) -> HeckeElt {
    let mut out = HeckeElt::zero();
    let sdiff = &vinv() - &v();
    for (x, c) in h.iter() {
        let xs = sys.mul_simple(x, s);
        if !sys.is_right_ascent(x, s) {
            out.add_term(x.clone(), &(c * &sdiff));
        }
        out.add_term(xs, c);
    }
    out
}

/// `h · C_s` with `C_s = H_s + v`.
pub fn mul_gen(sys: &RootSystem, h: &HeckeElt, s: AffSimple) -> HeckeElt {
    let mut out = HeckeElt::zero();
    for (x, c) in h.iter() {
        let xs = sys.mul_simple(x, s);
        let factor = if sys.is_right_ascent(x, s) { v() } else { vinv() };
        out.add_term(x.clone(), &(c * &factor));
        out.add_term(xs, c);
    }
    out
}

fn smallest_right_descent(sys: &RootSystem, x: &ExtWeylElt) -> Option<AffSimple> {
    sys.affine_simples()
        .into_iter()
        .find(|&s| !sys.is_right_ascent(x, s))
}

fn check_waff(sys: &RootSystem, w: &ExtWeylElt) -> Result<()> {
    if sys.in_waff(w) {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{} is not in the affine Weyl group",
            sys.format_elt(w)
        )))
    }
}

/// Memoized Kazhdan–Lusztig basis elements, computed by the μ-recursion
/// `C_{w's} = C_{w'} C_s − Σ_{ys<y} μ(y,w') C_y`.
pub struct KlBasis {
    sys: Arc<RootSystem>,
    max_length: usize,
    cache: Mutex<HashMap<ExtWeylElt, Arc<HeckeElt>>>,
}

impl KlBasis {
    pub fn new(sys: Arc<RootSystem>, max_length: usize) -> Self {
        KlBasis {
            sys,
            max_length,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.sys
    }

    /// `C_w` in the standard basis; its coefficients are `h_{y,w}`.
    pub fn kl_basis(&self, w: &ExtWeylElt) -> Result<Arc<HeckeElt>> {
        check_waff(&self.sys, w)?;
        let len = self.sys.length(w);
        if len > self.max_length {
            return Err(Error::Resource(format!(
                "length {len} exceeds the configured bound {}",
                self.max_length
            )));
        }
        self.compute(w)
    }

    fn compute(&self, w: &ExtWeylElt) -> Result<Arc<HeckeElt>> {
        if let Some(c) = self.cache.lock().get(w) {
            return Ok(c.clone());
        }
        let sys = &self.sys;
        let result = match smallest_right_descent(sys, w) {
            None => HeckeElt::basis(w.clone()),
            Some(s) => {
                let prev = self.compute(&sys.mul_simple(w, s))?;
                let mut out = mul_gen(sys, &prev, s);
                for (y, h) in prev.iter() {
                    let mu = h.coeff(1);
                    if !mu.is_zero() && !sys.is_right_ascent(y, s) {
                        let cy = self.compute(y)?;
                        out.add_scaled(&cy, &LaurentPoly::monomial(0, -mu));
                    }
                }
                for (y, h) in out.iter() {
                    if y != w && !h.in_v_z_v() {
                        return Err(Error::Consistency(format!(
                            "h at {} is {h}, not in vZ[v]",
                            sys.format_elt(y)
                        )));
                    }
                }
                out
            }
        };
        let result = Arc::new(result);
        self.cache.lock().insert(w.clone(), result.clone());
        Ok(result)
    }

    pub fn kl_poly(&self, y: &ExtWeylElt, w: &ExtWeylElt) -> Result<LaurentPoly> {
        Ok(self.kl_basis(w)?.coeff(y))
    }

    /// `μ(y,w)`, the coefficient of `v` in `h_{y,w}`.
    pub fn mu(&self, y: &ExtWeylElt, w: &ExtWeylElt) -> Result<BigInt> {
        Ok(self.kl_poly(y, w)?.coeff(1))
    }
}

/// All `y ≤ w` in Bruhat order, via subwords of a reduced word.
pub fn bruhat_interval(sys: &RootSystem, w: &ExtWeylElt) -> Vec<ExtWeylElt> {
    let (word, omega) = sys.affine_word(w);
    let mut set: HashSet<ExtWeylElt> = HashSet::from([sys.identity_elt()]);
    for &s in &word {
        let ext: Vec<ExtWeylElt> = set.iter().map(|y| sys.mul_simple(y, s)).collect();
        set.extend(ext);
    }
    let mut out: Vec<ExtWeylElt> = set.into_iter().map(|y| &y * &omega).collect();
    sys.sort_elts(&mut out);
    out
}

/// Second route to `C_w`: solve `bar(C_w) = C_w` triangularly using the
/// expansion `bar(H_x) = Σ_y R_{y,x} H_y`.
pub fn kl_basis_by_duality(sys: &RootSystem, w: &ExtWeylElt) -> Result<HeckeElt> {
    check_waff(sys, w)?;
    let interval = bruhat_interval(sys, w);
    let hs_bar = &v() - &vinv();
    // bar(H_x) = bar(H_{xs}) (H_s + v - v⁻¹), processed in increasing length.
    let mut bars: HashMap<ExtWeylElt, HeckeElt> = HashMap::new();
    for x in &interval {
        let b = match smallest_right_descent(sys, x) {
            None => HeckeElt::basis(x.clone()),
            Some(s) => {
                let prev = &bars[&sys.mul_simple(x, s)];
                let mut b = mul_std_gen(sys, prev, s);
                b.add_scaled(prev, &hs_bar);
                b
            }
        };
        bars.insert(x.clone(), b);
    }
    let mut h: BTreeMap<ExtWeylElt, LaurentPoly> = BTreeMap::new();
    h.insert(w.clone(), LaurentPoly::one());
    for y in interval.iter().rev().skip(1) {
        // h_{y,w} − bar(h_{y,w}) = Σ_{y<x≤w} R_{y,x} bar(h_{x,w}).
        let mut rhs = LaurentPoly::zero();
        for (x, hx) in &h {
            let r = bars[x].coeff(y);
            if !r.is_zero() {
                rhs += &(&r * &hx.bar());
            }
        }
        let pos = rhs.positive_part();
        if &pos - &pos.bar() != rhs {
            return Err(Error::Consistency(format!(
                "bar-duality equation at {} has non-antisymmetric right side {rhs}",
                sys.format_elt(y)
            )));
        }
        if !pos.is_zero() {
            h.insert(y.clone(), pos);
        }
    }
    let mut out = HeckeElt::zero();
    for (x, p) in h {
        out.add_term(x, &p);
    }
    Ok(out)
}

/// Bar involution on the Hecke algebra, `bar(H_x) = (H_{x⁻¹})⁻¹`.
pub fn bar_hecke(sys: &RootSystem, h: &HeckeElt) -> HeckeElt {
    let mut out = HeckeElt::zero();
    let hs_bar = &v() - &vinv();
    for (x, c) in h.iter() {
        let (word, omega) = sys.affine_word(x);
        let mut b = HeckeElt::basis(sys.identity_elt());
        for &s in &word {
            let mut next = mul_std_gen(sys, &b, s);
            next.add_scaled(&b, &hs_bar);
            b = next;
        }
        let b = LinComb {
            terms: b.terms.into_iter().map(|(y, p)| (&y * &omega, p)).collect(),
        };
        out.add_scaled(&b, &c.bar());
    }
    out
}

/// Whether `x` is maximal in its coset `W x`.
pub fn is_maximal(sys: &RootSystem, x: &ExtWeylElt) -> bool {
    (0..sys.rank).all(|i| !sys.is_left_ascent(AffSimple::finite(i), x))
}

/// `[W]_v = Σ_{u∈W} v^{N − 2ℓ(u)}`.
pub fn poincare_w(sys: &RootSystem) -> LaurentPoly {
    let n = sys.num_positive_roots() as i32;
    let mut out = LaurentPoly::zero();
    for u in sys.weyl_elements() {
        out += &LaurentPoly::v_pow(n - 2 * sys.finite_length(u) as i32);
    }
    out
}

/// `m · H_s` in the spherical module.
pub fn spherical_act_std(sys: &RootSystem, m: &SphericalElt, s: AffSimple) -> SphericalElt {
    let mut out = SphericalElt::zero();
    for (x, c) in m.iter() {
        let xs = sys.mul_simple(x, s);
        if !is_maximal(sys, &xs) {
            out.add_term(x.clone(), &(c * &vinv()));
        } else if sys.is_right_ascent(x, s) {
            out.add_term(xs, c);
        } else {
            out.add_term(xs, c);
            out.add_term(x.clone(), &(c * &(&vinv() - &v())));
        }
    }
    out
}

/// `m · C_s` in the spherical module.
pub fn spherical_act_gen(sys: &RootSystem, m: &SphericalElt, s: AffSimple) -> SphericalElt {
    let mut out = SphericalElt::zero();
    for (x, c) in m.iter() {
        let xs = sys.mul_simple(x, s);
        if !is_maximal(sys, &xs) {
            out.add_term(x.clone(), &(c * &(&v() + &vinv())));
        } else {
            let factor = if sys.is_right_ascent(x, s) { v() } else { vinv() };
            out.add_term(xs, c);
            out.add_term(x.clone(), &(c * &factor));
        }
    }
    out
}

/// The quotient map `h -> M_{w_∘} · h` onto the spherical module.
pub fn project(sys: &RootSystem, h: &HeckeElt) -> SphericalElt {
    let generator = ExtWeylElt::finite(sys.w0().clone());
    let mut out = SphericalElt::zero();
    for (x, c) in h.iter() {
        let (word, _) = sys.affine_word(x);
        let mut m = SphericalElt::basis(generator.clone());
        for &s in &word {
            m = spherical_act_std(sys, &m, s);
        }
        out.add_scaled(&m, c);
    }
    out
}

/// Memoized self-dual basis `M̲_w` of the spherical module.
pub struct SphericalBasis {
    sys: Arc<RootSystem>,
    max_length: usize,
    cache: Mutex<HashMap<ExtWeylElt, Arc<SphericalElt>>>,
}

impl SphericalBasis {
    pub fn new(sys: Arc<RootSystem>, max_length: usize) -> Self {
        SphericalBasis {
            sys,
            max_length,
            cache: Mutex::new(HashMap::new()),
        }
    }

    /// `M̲_w`; its coefficients are `m_{y,w}`.
    pub fn spherical_kl(&self, w: &ExtWeylElt) -> Result<Arc<SphericalElt>> {
        check_waff(&self.sys, w)?;
        if !is_maximal(&self.sys, w) {
            return Err(Error::Domain(format!(
                "{} is not maximal in its coset",
                self.sys.format_elt(w)
            )));
        }
        let len = self.sys.length(w);
        if len > self.max_length {
            return Err(Error::Resource(format!(
                "length {len} exceeds the configured bound {}",
                self.max_length
            )));
        }
        self.compute(w)
    }

    fn compute(&self, w: &ExtWeylElt) -> Result<Arc<SphericalElt>> {
        if let Some(c) = self.cache.lock().get(w) {
            return Ok(c.clone());
        }
        let sys = &self.sys;
        let w0 = ExtWeylElt::finite(sys.w0().clone());
        // w = w_∘ m with m minimal; peel a descent of m, which keeps maximality.
        let m = &w0 * w;
        let result = match smallest_right_descent(sys, &m) {
            None => SphericalElt::basis(w.clone()),
            Some(s) => {
                let prev = self.compute(&sys.mul_simple(w, s))?;
                let mut out = spherical_act_gen(sys, &prev, s);
                for (y, c) in prev.iter() {
                    let mu = c.coeff(1);
                    if !mu.is_zero() && !sys.is_right_ascent(y, s) {
                        let my = self.compute(y)?;
                        out.add_scaled(&my, &LaurentPoly::monomial(0, -mu));
                    }
                }
                for (y, c) in out.iter() {
                    if y != w && !c.in_v_z_v() {
                        return Err(Error::Consistency(format!(
                            "m at {} is {c}, not in vZ[v]",
                            sys.format_elt(y)
                        )));
                    }
                }
                out
            }
        };
        let result = Arc::new(result);
        self.cache.lock().insert(w.clone(), result.clone());
        Ok(result)
    }
}

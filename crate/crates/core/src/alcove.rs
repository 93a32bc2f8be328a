//! Alcoves labelled by `W_aff`: `A = x(A⁺)`, with wall crossings on the right.
//!
//! A crossing is *up* when it passes a hyperplane `H_{α,n}` (`α > 0`) from
//! `<·,α^∨> < n` to `<·,α^∨> > n`. The generic height `d` counts, with sign,
//! the hyperplanes lying below an alcove, normalized by `d(A⁺) = 0`.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rootsys::{ModularContext, RootSystem};
use crate::weylext::{AffSimple, ExtWeylElt};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Up => Direction::Down,
            Direction::Down => Direction::Up,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Alcove {
    label: ExtWeylElt,
}

impl Alcove {
    pub fn new(sys: &RootSystem, label: ExtWeylElt) -> Result<Self> {
        if !sys.in_waff(&label) {
            return Err(Error::Domain(format!(
                "{} is not in the affine Weyl group",
                sys.format_elt(&label)
            )));
        }
        Ok(Alcove { label })
    }

    pub fn fundamental(sys: &RootSystem) -> Self {
        Alcove {
            label: sys.identity_elt(),
        }
    }

    pub fn label(&self) -> &ExtWeylElt {
        &self.label
    }

    pub fn into_label(self) -> ExtWeylElt {
        self.label
    }
}

/// Direction of the crossing `x(A⁺) -> xs(A⁺)`. Valid for any `x ∈ W_ex`.
pub fn crossing_direction(sys: &RootSystem, x: &ExtWeylElt, s: AffSimple) -> Direction {
    let beta = sys.simple_root_index(s);
    let gamma_positive = sys.maps_to_positive(x.finite_part(), beta);
    if gamma_positive == s.is_affine() {
        Direction::Up
    } else {
        Direction::Down
    }
}

pub fn wall_cross(sys: &RootSystem, a: &Alcove, s: AffSimple) -> (Alcove, Direction) {
    let dir = crossing_direction(sys, &a.label, s);
    (
        Alcove {
            label: sys.mul_simple(&a.label, s),
        },
        dir,
    )
}

/// `d(x(A⁺)) = Σ_{α>0} ⌊<w(hλ+ρ), α^∨> / h⌋` for `x = w t_λ`.
pub fn height_of(sys: &RootSystem, x: &ExtWeylElt) -> i64 {
    let h = sys.coxeter_number;
    let q = x.act_scaled(&sys.rho, h);
    sys.positive_roots
        .iter()
        .map(|r| r.coroot.pair(&q).div_euclid(h))
        .sum()
}

pub fn generic_height(sys: &RootSystem, a: &Alcove) -> i64 {
    height_of(sys, &a.label)
}

/// Number of hyperplanes separating `x(A⁺)` and `z(A⁺)`.
pub fn alcove_distance(sys: &RootSystem, x: &ExtWeylElt, z: &ExtWeylElt) -> usize {
    sys.length(&(&x.inverse() * z))
}

/// Whether `B` is reachable from `A` by up-crossings. The search visits only
/// alcoves within `radius` crossings of `A`; if `B` is not found and the
/// radius cut anything off, the answer is undecided.
pub fn generic_leq(sys: &RootSystem, a: &Alcove, b: &Alcove, radius: usize) -> Result<bool> {
    let (da, db) = (generic_height(sys, a), generic_height(sys, b));
    if db < da {
        return Ok(false);
    }
    if alcove_distance(sys, &a.label, &b.label) > radius {
        return Err(Error::Indeterminate(format!(
            "target lies {} crossings away, beyond radius {radius}",
            alcove_distance(sys, &a.label, &b.label)
        )));
    }
    let mut layer: HashSet<ExtWeylElt> = HashSet::from([a.label.clone()]);
    let mut pruned = false;
    for _ in da..db {
        let mut next = HashSet::new();
        for x in &layer {
            for s in sys.affine_simples() {
                if crossing_direction(sys, x, s) == Direction::Up {
                    let y = sys.mul_simple(x, s);
                    if alcove_distance(sys, &a.label, &y) > radius {
                        pruned = true;
                    } else {
                        next.insert(y);
                    }
                }
            }
        }
        layer = next;
    }
    if layer.contains(&b.label) {
        Ok(true)
    } else if pruned {
        Err(Error::Indeterminate(format!(
            "up-gallery search truncated at radius {radius}"
        )))
    } else {
        Ok(false)
    }
}

pub fn alcove_check(ctx: &ModularContext, a: &Alcove) -> Alcove {
    Alcove {
        label: ctx.check(&a.label),
    }
}

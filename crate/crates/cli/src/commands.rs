use alcove_kl::periodic::{PklEntry, PklTable};
use alcove_kl::repcalc::{
    baby_verma_character, baby_verma_weight_dim, nabla_weight_dim, verma_weight_dim, ExtTable, FlatTable,
};
use alcove_kl::{Error, ExtWeylElt, LaurentPoly, Weight};
use anyhow::Result;
use clap::ValueEnum;
use serde::Serialize;

use crate::render::{self, CharEntry, CharTable, PolyRow};
use crate::session::Session;
use crate::Common;

#[derive(Debug, Copy, Clone, PartialEq, Eq, ValueEnum)]
pub enum CharModule {
    Z,
    Delta,
    Nabla,
}

/// JSON body of the `kl` and `spherical` tables.
#[derive(Serialize)]
struct BasisTable {
    #[serde(rename = "type")]
    cartan_type: String,
    rank: usize,
    basis: &'static str,
    entries: Vec<PklEntry>,
}

fn entries(s: &Session, w: &ExtWeylElt, terms: Vec<(ExtWeylElt, LaurentPoly)>) -> Vec<PklEntry> {
    let sys = s.sys();
    terms
        .into_iter()
        .map(|(y, poly)| PklEntry {
            y: sys.to_repr(&y),
            w: sys.to_repr(w),
            poly,
        })
        .collect()
}

fn basis_output(s: &Session, c: &Common, basis: &'static str, entries: Vec<PklEntry>) -> Result<String> {
    let sys = s.sys();
    let rows = render::poly_rows(sys, &entries)?;
    let caption = format!("{basis} basis, {}", sys.name());
    let body = BasisTable {
        cartan_type: sys.cartan_type.to_string(),
        rank: sys.rank,
        basis,
        entries,
    };
    render::poly_table(c.format, &body, &rows, &caption)
}

pub fn kl(c: &Common, w: Option<&str>) -> Result<String> {
    let mut s = Session::new(c)?;
    let mut out = Vec::new();
    for w in s.targets(w)? {
        let terms = s.kl(&w)?;
        out.extend(entries(&s, &w, terms));
    }
    basis_output(&s, c, "kazhdan-lusztig", out)
}

pub fn spherical(c: &Common, w: Option<&str>) -> Result<String> {
    let mut s = Session::new(c)?;
    let mut out = Vec::new();
    for w in s.maximal_targets(w)? {
        let terms = s.spherical(&w)?;
        out.extend(entries(&s, &w, terms));
    }
    basis_output(&s, c, "spherical", out)
}

pub fn periodic(c: &Common, w: Option<&str>) -> Result<String> {
    let mut s = Session::new(c)?;
    let explicit = w.is_some();
    let mut out = Vec::new();
    for w in s.targets(w)? {
        let terms = s.periodic(&w)?;
        let lmax = s.lmax;
        let sys = s.sys().clone();
        // A single target lists its whole support; a table stays within the length bound.
        let terms = terms.into_iter().filter(|(y, _)| explicit || sys.length(y) <= lmax).collect();
        out.extend(entries(&s, &w, terms));
    }
    let window = s.window()?;
    let sys = s.sys();
    let rows: Vec<PolyRow> = render::poly_rows(sys, &out)?;
    let table = PklTable {
        cartan_type: sys.cartan_type.to_string(),
        rank: sys.rank,
        p: s.ctx.p,
        r: window,
        entries: out,
    };
    let caption = format!("periodic polynomials p(y, w), {}, R = {window}", sys.name());
    render::poly_table(c.format, &table, &rows, &caption)
}

pub fn ext(c: &Common, w: Option<&str>, y: Option<&str>) -> Result<String> {
    let mut s = Session::new(c)?;
    let y = y.map(|y| s.parse_elt(y)).transpose()?;
    let mut table = ExtTable::default();
    for w in s.targets(w)? {
        for (z, p) in s.periodic(&w)? {
            if y.as_ref().is_none_or(|y| *y == z) {
                table.entries.insert((w.clone(), z), p);
            }
        }
    }
    render::flat_table(c.format, &FlatTable::from_ext(s.sys(), &table))
}

pub fn loewy(c: &Common, w: Option<&str>) -> Result<String> {
    let mut s = Session::new(c)?;
    let mut tables = Vec::new();
    for w in s.targets(w)? {
        tables.push(s.loewy(&w)?);
    }
    render::flat_table(c.format, &FlatTable::from_loewy(s.sys(), &tables))
}

fn parse_weight(text: &str, rank: usize) -> Result<Weight> {
    let coords: Vec<i64> = text
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<i64>().map_err(|_| Error::Config(format!("cannot parse weight {text:?}"))))
        .collect::<std::result::Result<_, _>>()?;
    match coords.len() {
        1 if rank > 1 => Ok(Weight(vec![coords[0]; rank])),
        n if n == rank => Ok(Weight(coords)),
        n => Err(Error::Config(format!("weight {text:?} has {n} coordinates, expected {rank}")).into()),
    }
}

/// Weight multiplicities. Z is listed completely; Delta and Nabla are listed
/// over `λ − ν` for `ν` of root height at most `lmax`.
pub fn character(c: &Common, module: CharModule, lambda: &str, mu: Option<&str>) -> Result<String> {
    let s = Session::new(c)?;
    let sys = s.sys().clone();
    let lambda = parse_weight(lambda, sys.rank)?;
    let dim = |m: &Weight| -> u128 {
        match module {
            CharModule::Z => baby_verma_weight_dim(&s.ctx, &lambda, m),
            CharModule::Delta => verma_weight_dim(&s.ctx, &lambda, m),
            CharModule::Nabla => nabla_weight_dim(&s.ctx, &lambda, m),
        }
    };
    let (weights, complete): (Vec<(Weight, u128)>, bool) = match (mu, module) {
        (Some(m), _) => {
            let m = parse_weight(m, sys.rank)?;
            (vec![(m.clone(), dim(&m))], module == CharModule::Z)
        }
        (None, CharModule::Z) => (baby_verma_character(&s.ctx, &lambda).into_iter().collect(), true),
        (None, _) => {
            let mut out = Vec::new();
            let mut stack = vec![vec![0i64; sys.rank]];
            let mut seen = std::collections::BTreeSet::new();
            while let Some(nu) = stack.pop() {
                if nu.iter().sum::<i64>() > s.lmax as i64 || !seen.insert(nu.clone()) {
                    continue;
                }
                let m = &lambda - &sys.from_root_coords(&nu);
                let d = dim(&m);
                if d > 0 {
                    out.push((m, d));
                }
                for i in 0..sys.rank {
                    let mut next = nu.clone();
                    next[i] += 1;
                    stack.push(next);
                }
            }
            out.sort();
            (out, false)
        }
    };
    let total: u128 = weights.iter().map(|(_, d)| d).sum();
    let table = CharTable {
        cartan_type: sys.cartan_type.to_string(),
        rank: sys.rank,
        p: s.ctx.p,
        module: format!("{module:?}"),
        lambda,
        total: total.to_string(),
        complete,
        weights: weights
            .into_iter()
            .map(|(mu, d)| CharEntry { mu, dim: d.to_string() })
            .collect(),
    };
    render::char_table(c.format, &table)
}

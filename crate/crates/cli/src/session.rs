//! Resolved configuration plus the cached computations shared by all commands.

use std::path::PathBuf;
use std::sync::Arc;

use alcove_kl::hecke::{is_maximal, KlBasis, SphericalBasis};
use alcove_kl::periodic::{exact_support_radius, StabilizedPeriodic};
use alcove_kl::repcalc::{loewy_layers, GradedMultTable, ModuleKind, StdLabel};
use alcove_kl::{AffSimple, EltRepr, Error, ExtWeylElt, LaurentPoly, ModularContext, RootSystem};
use anyhow::Result;

use crate::cache::Cache;
use crate::Common;

pub const DEFAULT_CACHE_DIR: &str = ".alcove-kl-cache";

type Terms = Vec<(EltRepr, LaurentPoly)>;

pub struct Session {
    pub ctx: ModularContext,
    window: Option<usize>,
    pub lmax: usize,
    pub seed: u64,
    pub flip_up: bool,
    pub cache: Cache,
    solver: Option<StabilizedPeriodic>,
    kl: Option<KlBasis>,
    spherical: Option<SphericalBasis>,
}

impl Session {
    pub fn new(c: &Common) -> Result<Self> {
        let sys = Arc::new(RootSystem::new(c.cartan_type, c.rank)?);
        let p = c.p.unwrap_or_else(|| ModularContext::default_prime(&sys));
        let ctx = ModularContext::new(sys.clone(), p)?;
        // The flipped convention is a diagnostic and never touches the cache.
        let cache = if c.no_cache || c.flip_up {
            Cache::disabled()
        } else {
            let dir = c.cache_dir.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR));
            Cache::open(&dir, &sys.name())?
        };
        Ok(Session {
            ctx,
            window: c.window,
            lmax: c.lmax,
            seed: c.seed,
            flip_up: c.flip_up,
            cache,
            solver: None,
            kl: None,
            spherical: None,
        })
    }

    pub fn sys(&self) -> &Arc<RootSystem> {
        &self.ctx.system
    }

    /// The configured window, or the exact support radius (computed once and cached).
    pub fn window(&mut self) -> Result<usize> {
        if let Some(r) = self.window {
            return Ok(r);
        }
        let sys = self.ctx.system.clone();
        let r = self.cache.get_or_insert("radius", || Ok(exact_support_radius(sys)?))?;
        self.window = Some(r);
        Ok(r)
    }

    pub fn solver(&mut self) -> Result<&StabilizedPeriodic> {
        let r = self.window()?;
        let (sys, flip) = (self.ctx.system.clone(), self.flip_up);
        Ok(self
            .solver
            .get_or_insert_with(|| StabilizedPeriodic::with_options(sys, r, flip)))
    }

    /// Parse an affine word such as `s0s1s2`, `0,1,2` or `e`.
    pub fn parse_elt(&self, word: &str) -> Result<ExtWeylElt> {
        let sys = self.sys();
        let word = word.trim();
        if word.is_empty() || word == "e" {
            return Ok(sys.identity_elt());
        }
        let tokens: Vec<&str> = if word.contains(',') || word.contains(' ') {
            word.split([',', ' ']).filter(|t| !t.is_empty()).collect()
        } else if word.starts_with('s') {
            word.split('s').filter(|t| !t.is_empty()).collect()
        } else {
            word.split("").filter(|t| !t.is_empty()).collect()
        };
        let mut letters = Vec::new();
        for t in tokens {
            let i: usize = t
                .trim_start_matches('s')
                .parse()
                .map_err(|_| Error::Config(format!("cannot parse letter {t:?} in word {word:?}")))?;
            if i > sys.rank {
                return Err(Error::Config(format!("letter s{i} out of range s0..=s{}", sys.rank)).into());
            }
            letters.push(AffSimple(i));
        }
        Ok(sys.from_affine_word(&letters))
    }

    /// The given element, or all of `W_aff` up to length `lmax`.
    pub fn targets(&self, w: Option<&str>) -> Result<Vec<ExtWeylElt>> {
        match w {
            Some(w) => Ok(vec![self.parse_elt(w)?]),
            None => Ok(self.sys().elements_up_to_length(self.lmax, false)),
        }
    }

    fn key(&mut self, kind: &str, x: &ExtWeylElt) -> Result<String> {
        let window = self.window()?;
        let r = self.sys().to_repr(x);
        Ok(format!("{kind}|R={window}|w={:?}|t={:?}", r.w, r.t))
    }

    fn sorted(&self, mut terms: Vec<(ExtWeylElt, LaurentPoly)>) -> Terms {
        let sys = self.sys();
        terms.sort_by_cached_key(|(y, _)| sys.elt_key(y));
        terms.into_iter().map(|(y, p)| (sys.to_repr(&y), p)).collect()
    }

    fn decode(&self, terms: Terms) -> Result<Vec<(ExtWeylElt, LaurentPoly)>> {
        terms
            .into_iter()
            .map(|(r, p)| Ok((self.sys().from_repr(&r)?, p)))
            .collect()
    }

    /// Stabilized `P_w`, canonically sorted.
    pub fn periodic(&mut self, w: &ExtWeylElt) -> Result<Vec<(ExtWeylElt, LaurentPoly)>> {
        let key = self.key("periodic", w)?;
        if let Some(t) = self.cache.get::<Terms>(&key) {
            return self.decode(t);
        }
        self.cache.misses += 1;
        let elt = self.solver()?.element(w)?;
        let terms = self.sorted(elt.into_map().into_iter().collect());
        self.cache.put(&key, &terms)?;
        self.decode(terms)
    }

    /// `C_w` in the standard basis.
    pub fn kl(&mut self, w: &ExtWeylElt) -> Result<Vec<(ExtWeylElt, LaurentPoly)>> {
        let key = format!("kl|w={:?}", self.sys().to_repr(w));
        if let Some(t) = self.cache.get::<Terms>(&key) {
            return self.decode(t);
        }
        self.cache.misses += 1;
        let (sys, bound) = (self.sys().clone(), self.sys().length(w).max(self.lmax));
        let kl = self.kl.get_or_insert_with(|| KlBasis::new(sys, bound));
        let c = match kl.kl_basis(w) {
            Ok(c) => c,
            // The memo was built for a smaller bound; start over with this one.
            Err(Error::Resource(_)) => {
                *kl = KlBasis::new(self.ctx.system.clone(), bound);
                kl.kl_basis(w)?
            }
            Err(e) => return Err(e.into()),
        };
        let terms = self.sorted(c.iter().map(|(y, p)| (y.clone(), p.clone())).collect());
        self.cache.put(&key, &terms)?;
        self.decode(terms)
    }

    /// `M̲_w` for `w` maximal in its coset.
    pub fn spherical(&mut self, w: &ExtWeylElt) -> Result<Vec<(ExtWeylElt, LaurentPoly)>> {
        let key = format!("spherical|w={:?}", self.sys().to_repr(w));
        if let Some(t) = self.cache.get::<Terms>(&key) {
            return self.decode(t);
        }
        self.cache.misses += 1;
        let (sys, bound) = (self.sys().clone(), self.sys().length(w).max(self.lmax));
        let sph = self.spherical.get_or_insert_with(|| SphericalBasis::new(sys, bound));
        let m = match sph.spherical_kl(w) {
            Ok(m) => m,
            Err(Error::Resource(_)) => {
                *sph = SphericalBasis::new(self.ctx.system.clone(), bound);
                sph.spherical_kl(w)?
            }
            Err(e) => return Err(e.into()),
        };
        let terms = self.sorted(m.iter().map(|(y, p)| (y.clone(), p.clone())).collect());
        self.cache.put(&key, &terms)?;
        self.decode(terms)
    }

    pub fn maximal_targets(&self, w: Option<&str>) -> Result<Vec<ExtWeylElt>> {
        Ok(self
            .targets(w)?
            .into_iter()
            .filter(|x| w.is_some() || is_maximal(self.sys(), x))
            .collect())
    }

    /// Loewy layers of `Z_w`.
    pub fn loewy(&mut self, w: &ExtWeylElt) -> Result<GradedMultTable> {
        let key = self.key("loewy", w)?;
        let entries: Vec<(EltRepr, i32, u64)> = match self.cache.get(&key) {
            Some(e) => e,
            None => {
                self.cache.misses += 1;
                let ctx = self.ctx.clone();
                let t = loewy_layers(&ctx, self.solver()?, w)?;
                let sys = self.sys();
                let e: Vec<(EltRepr, i32, u64)> = t
                    .entries
                    .iter()
                    .map(|((l, m), c)| (sys.to_repr(&l.index), *m, *c))
                    .collect();
                self.cache.put(&key, &e)?;
                e
            }
        };
        let mut table = GradedMultTable {
            base: StdLabel::new(ModuleKind::BabyVerma, w.clone()),
            entries: Default::default(),
        };
        for (y, m, c) in entries {
            let y = self.sys().from_repr(&y)?;
            table.entries.insert((StdLabel::new(ModuleKind::Simple, y), m), c);
        }
        Ok(table)
    }
}

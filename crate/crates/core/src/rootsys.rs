//! Finite crystallographic root data in the simply-connected convention.
//!
//! Weights are integer vectors in the basis of fundamental weights, so the
//! pairing `<lambda, alpha_i^vee>` is just the `i`-th coordinate. Coroots are
//! stored in the basis of simple coroots.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use num_rational::Ratio;
use parking_lot::Mutex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            CartanType::A => 'A',
            CartanType::B => 'B',
            CartanType::C => 'C',
            CartanType::D => 'D',
            CartanType::E => 'E',
            CartanType::F => 'F',
            CartanType::G => 'G',
        };
        write!(f, "{c}")
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(CartanType::A),
            "B" => Ok(CartanType::B),
            "C" => Ok(CartanType::C),
            "D" => Ok(CartanType::D),
            "E" => Ok(CartanType::E),
            "F" => Ok(CartanType::F),
            "G" => Ok(CartanType::G),
            other => Err(Error::Config(format!("unknown Cartan type {other:?}"))),
        }
    }
}

/// An integral weight, in fundamental-weight coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn zero(rank: usize) -> Self {
        Weight(vec![0; rank])
    }

    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i] = 1;
        w
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn scale(&self, k: i64) -> Weight {
        Weight(self.0.iter().map(|c| c * k).collect())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        Weight(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|a| -a).collect())
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, rhs: Weight) -> Weight {
        &self + &rhs
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, rhs: Weight) -> Weight {
        &self - &rhs
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        -&self
    }
}

/// A coweight written in the basis of simple coroots.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coweight(pub Vec<i64>);

impl Coweight {
    pub fn pair(&self, lambda: &Weight) -> i64 {
        self.0.iter().zip(&lambda.0).map(|(c, l)| c * l).sum()
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositiveRoot {
    /// Coordinates in the basis of simple roots.
    pub root_coords: Vec<i64>,
    pub weight: Weight,
    pub coroot: Coweight,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }
}

/// Element of the finite Weyl group, stored as its matrix on fundamental-weight
/// coordinates together with the matrix of its inverse.
#[derive(Clone)]
pub struct WeylElt {
    n: usize,
    mat: Vec<i64>,
    inv: Vec<i64>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}
impl Eq for WeylElt {}

impl std::hash::Hash for WeylElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.mat.hash(state)
    }
}

impl PartialOrd for WeylElt {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for WeylElt {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.mat.cmp(&other.mat)
    }
}

impl fmt::Debug for WeylElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeylElt{:?}", self.mat)
    }
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

impl WeylElt {
    pub fn identity(n: usize) -> Self {
        let mut mat = vec![0; n * n];
        for i in 0..n {
            mat[i * n + i] = 1;
        }
        WeylElt {
            n,
            inv: mat.clone(),
            mat,
        }
    }

    /// The reflection `lambda -> lambda - <lambda, beta^vee> beta`.
    pub fn reflection(beta: &Weight, coroot: &Coweight) -> Self {
        let n = beta.rank();
        let mut mat = vec![0; n * n];
        for k in 0..n {
            for j in 0..n {
                let delta = i64::from(k == j);
                mat[k * n + j] = delta - beta.0[k] * coroot.0[j];
            }
        }
        WeylElt {
            n,
            inv: mat.clone(),
            mat,
        }
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn apply(&self, lambda: &Weight) -> Weight {
        apply_mat(self.n, &self.mat, lambda)
    }

    pub fn apply_inverse(&self, lambda: &Weight) -> Weight {
        apply_mat(self.n, &self.inv, lambda)
    }

    pub fn inverse(&self) -> WeylElt {
        WeylElt {
            n: self.n,
            mat: self.inv.clone(),
            inv: self.mat.clone(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.mat == self.inv && *self == WeylElt::identity(self.n)
    }

    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }
}

fn apply_mat(n: usize, mat: &[i64], lambda: &Weight) -> Weight {
    let mut out = vec![0; n];
    for (i, o) in out.iter_mut().enumerate() {
        *o = (0..n).map(|j| mat[i * n + j] * lambda.0[j]).sum();
    }
    Weight(out)
}

impl Mul for &WeylElt {
    type Output = WeylElt;
    fn mul(self, rhs: &WeylElt) -> WeylElt {
        WeylElt {
            n: self.n,
            mat: mat_mul(self.n, &self.mat, &rhs.mat),
            inv: mat_mul(self.n, &rhs.inv, &self.inv),
        }
    }
}

type KostantKey = (Option<u64>, usize, Vec<i64>);

/// A finite reduced crystallographic root system with its weight lattice and
/// Weyl group.
pub struct RootSystem {
    pub cartan_type: CartanType,
    pub rank: usize,
    /// `cartan[i][j] = <alpha_i, alpha_j^vee>`.
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<PositiveRoot>,
    pub rho: Weight,
    pub w0_word: Vec<usize>,
    pub weyl_order: u64,
    pub coxeter_number: i64,
    /// Index into `positive_roots` of the root whose coroot is the highest coroot.
    pub highest_coroot_root: usize,
    /// Inverse of the transposed Cartan matrix; maps fundamental coordinates to root coordinates.
    to_root_basis: Vec<Vec<Ratio<i64>>>,
    simple_reflections: Vec<WeylElt>,
    w0: WeylElt,
    elements: OnceLock<Vec<WeylElt>>,
    kostant_memo: Mutex<HashMap<KostantKey, u128>>,
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}{})", self.cartan_type, self.rank)
    }
}

fn cartan_matrix(ty: CartanType, rank: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Config(format!("unsupported root system {ty}{rank}"));
    let valid = match ty {
        CartanType::A => rank >= 1,
        CartanType::B | CartanType::C => rank >= 2,
        CartanType::D => rank >= 4,
        CartanType::E => (6..=8).contains(&rank),
        CartanType::F => rank == 4,
        CartanType::G => rank == 2,
    };
    if !valid {
        return Err(bad());
    }
    let mut c = vec![vec![0i64; rank]; rank];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        c[i][j] = -1;
        c[j][i] = -1;
    };
    match ty {
        CartanType::A | CartanType::B | CartanType::C => {
            for i in 0..rank - 1 {
                link(i, i + 1);
            }
        }
        CartanType::D => {
            for i in 0..rank - 2 {
                link(i, i + 1);
            }
            link(rank - 3, rank - 1);
        }
        CartanType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..rank - 1 {
                link(i, i + 1);
            }
        }
        CartanType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        CartanType::G => link(0, 1),
    }
    // Bourbaki numbering: B_n has alpha_n short, C_n has alpha_n long,
    // F_4 has alpha_1, alpha_2 long, G_2 has alpha_1 short.
    match ty {
        CartanType::B => c[rank - 2][rank - 1] = -2,
        CartanType::C => c[rank - 1][rank - 2] = -2,
        CartanType::F => c[1][2] = -2,
        CartanType::G => c[1][0] = -3,
        _ => {}
    }
    Ok(c)
}

fn weyl_order_formula(ty: CartanType, rank: u64) -> u64 {
    let fact = |n: u64| (1..=n).product::<u64>();
    match ty {
        CartanType::A => fact(rank + 1),
        CartanType::B | CartanType::C => (1u64 << rank) * fact(rank),
        CartanType::D => (1u64 << (rank - 1)) * fact(rank),
        CartanType::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        CartanType::F => 1152,
        CartanType::G => 12,
    }
}

fn invert_rational(m: &[Vec<i64>]) -> Vec<Vec<Ratio<i64>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .map(|row| row.iter().map(|&x| Ratio::from_integer(x)).collect())
        .collect();
    let mut inv: Vec<Vec<Ratio<i64>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| Ratio::from_integer(i64::from(i == j)))
                .collect()
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| a[r][col] != Ratio::from_integer(0))
            .expect("Cartan matrix is nonsingular");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col];
        for j in 0..n {
            a[col][j] /= p;
            inv[col][j] /= p;
        }
        for r in 0..n {
            if r != col {
                let f = a[r][col];
                if f != Ratio::from_integer(0) {
                    for j in 0..n {
                        let (ac, ic) = (a[col][j], inv[col][j]);
                        a[r][j] -= f * ac;
                        inv[r][j] -= f * ic;
                    }
                }
            }
        }
    }
    inv
}

impl RootSystem {
    /// Build the root datum of type `(cartan_type, rank)`.
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<Self> {
        let cartan = cartan_matrix(cartan_type, rank)?;
        let n = rank;

        // Closure of the simple roots under simple reflections; roots and
        // coroots are reflected together.
        let mut roots: Vec<(Vec<i64>, Vec<i64>)> = (0..n)
            .map(|i| {
                let mut e = vec![0; n];
                e[i] = 1;
                (e.clone(), e)
            })
            .collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().map(|r| r.0.clone()).collect();
        let mut queue: VecDeque<usize> = (0..n).collect();
        while let Some(idx) = queue.pop_front() {
            let (b, c) = roots[idx].clone();
            for j in 0..n {
                let pair: i64 = (0..n).map(|i| b[i] * cartan[i][j]).sum();
                let copair: i64 = (0..n).map(|i| c[i] * cartan[j][i]).sum();
                let mut nb = b.clone();
                nb[j] -= pair;
                let mut nc = c.clone();
                nc[j] -= copair;
                if nb.iter().all(|&x| x >= 0) && nb.iter().any(|&x| x > 0) && seen.insert(nb.clone())
                {
                    roots.push((nb, nc));
                    queue.push_back(roots.len() - 1);
                }
            }
        }
        roots.sort_by(|x, y| {
            let hx: i64 = x.0.iter().sum();
            let hy: i64 = y.0.iter().sum();
            hx.cmp(&hy).then_with(|| y.0.cmp(&x.0))
        });
        let positive_roots: Vec<PositiveRoot> = roots
            .into_iter()
            .map(|(b, c)| {
                let weight = Weight((0..n).map(|j| (0..n).map(|i| b[i] * cartan[i][j]).sum()).collect());
                PositiveRoot {
                    root_coords: b,
                    weight,
                    coroot: Coweight(c),
                }
            })
            .collect();

        let rho = Weight(vec![1; n]);
        let (highest_coroot_root, max_coheight) = positive_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (i, r.coroot.height()))
            .max_by_key(|&(i, h)| (h, std::cmp::Reverse(i)))
            .expect("nonempty root system");

        let simple_reflections: Vec<WeylElt> = (0..n)
            .map(|i| WeylElt::reflection(&positive_roots[i].weight, &positive_roots[i].coroot))
            .collect();

        let transpose: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cartan[j][i]).collect()).collect();
        let to_root_basis = invert_rational(&transpose);

        let mut sys = RootSystem {
            cartan_type,
            rank,
            cartan,
            positive_roots,
            rho,
            w0_word: Vec::new(),
            weyl_order: weyl_order_formula(cartan_type, rank as u64),
            coxeter_number: max_coheight + 1,
            highest_coroot_root,
            to_root_basis,
            simple_reflections,
            w0: WeylElt::identity(n),
            elements: OnceLock::new(),
            kostant_memo: Mutex::new(HashMap::new()),
        };

        // Climb right ascents until none remain; the result is w_0.
        let mut w0 = WeylElt::identity(n);
        loop {
            let mu = w0.apply_inverse(&sys.rho);
            match (0..n).find(|&i| mu.0[i] > 0) {
                Some(i) => w0 = &w0 * &sys.simple_reflections[i],
                None => break,
            }
        }
        sys.w0_word = sys.reduced_word(&w0);
        sys.w0 = w0;
        Ok(sys)
    }

    pub fn shared(cartan_type: CartanType, rank: usize) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(cartan_type, rank)?))
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn simple_root(&self, i: usize) -> &Weight {
        &self.positive_roots[i].weight
    }

    pub fn simple_roots(&self) -> Vec<Weight> {
        (0..self.rank).map(|i| self.simple_root(i).clone()).collect()
    }

    pub fn simple_coroots(&self) -> Vec<Coweight> {
        (0..self.rank)
            .map(|i| self.positive_roots[i].coroot.clone())
            .collect()
    }

    pub fn simple_reflection(&self, i: usize) -> &WeylElt {
        &self.simple_reflections[i]
    }

    pub fn w0(&self) -> &WeylElt {
        &self.w0
    }

    pub fn highest_coroot(&self) -> &PositiveRoot {
        &self.positive_roots[self.highest_coroot_root]
    }

    pub fn pairing(&self, lambda: &Weight, root_index: usize) -> i64 {
        self.positive_roots[root_index].coroot.pair(lambda)
    }

    /// Express a weight in simple-root coordinates, if it lies in the root lattice.
    pub fn to_root_coords(&self, lambda: &Weight) -> Option<Vec<i64>> {
        let n = self.rank;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = Ratio::from_integer(0);
            for j in 0..n {
                acc += self.to_root_basis[i][j] * lambda.0[j];
            }
            if !acc.is_integer() {
                return None;
            }
            out.push(acc.to_integer());
        }
        Some(out)
    }

    pub fn from_root_coords(&self, coords: &[i64]) -> Weight {
        let n = self.rank;
        Weight(
            (0..n)
                .map(|j| (0..n).map(|i| coords[i] * self.cartan[i][j]).sum())
                .collect(),
        )
    }

    pub fn in_root_lattice(&self, lambda: &Weight) -> bool {
        self.to_root_coords(lambda).is_some()
    }

    /// Whether `w(alpha) > 0` for the positive root with the given index.
    pub fn maps_to_positive(&self, w: &WeylElt, root_index: usize) -> bool {
        let mu = w.apply_inverse(&self.rho);
        self.pairing(&mu, root_index) > 0
    }

    pub fn is_positive_root_weight(&self, beta: &Weight) -> bool {
        self.to_root_coords(beta)
            .map(|c| c.iter().all(|&x| x >= 0) && c.iter().any(|&x| x > 0))
            .unwrap_or(false)
    }

    pub fn finite_length(&self, w: &WeylElt) -> usize {
        let mu = w.apply_inverse(&self.rho);
        self.positive_roots
            .iter()
            .filter(|r| r.coroot.pair(&mu) < 0)
            .count()
    }

    /// Lexicographically first reduced word, letters indexed `0..rank`.
    pub fn reduced_word(&self, w: &WeylElt) -> Vec<usize> {
        let mut mu = w.apply(&self.rho);
        let mut word = Vec::new();
        while let Some(i) = (0..self.rank).find(|&i| mu.0[i] < 0) {
            word.push(i);
            mu = self.simple_reflections[i].apply(&mu);
        }
        word
    }

    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        word.iter().fold(WeylElt::identity(self.rank), |acc, &i| {
            &acc * &self.simple_reflections[i]
        })
    }

    /// All elements of the finite Weyl group, in breadth-first order from the identity.
    pub fn weyl_elements(&self) -> &[WeylElt] {
        self.elements.get_or_init(|| {
            let mut out = vec![WeylElt::identity(self.rank)];
            let mut seen: HashSet<WeylElt> = out.iter().cloned().collect();
            let mut i = 0;
            while i < out.len() {
                for s in &self.simple_reflections {
                    let next = &out[i] * s;
                    if seen.insert(next.clone()) {
                        out.push(next);
                    }
                }
                i += 1;
            }
            out
        })
    }

    /// `lambda <= mu` in the dominance order: `mu - lambda` is a sum of positive roots.
    pub fn dominance_leq(&self, lambda: &Weight, mu: &Weight) -> bool {
        match self.to_root_coords(&(mu - lambda)) {
            Some(c) => c.iter().all(|&x| x >= 0),
            None => false,
        }
    }

    /// Kostant's partition function, optionally with every multiplicity capped at `bound`.
    pub fn kostant_partition(&self, nu: &Weight, bound: Option<u64>) -> u128 {
        let Some(coords) = self.to_root_coords(nu) else {
            return 0;
        };
        if coords.iter().any(|&x| x < 0) {
            return 0;
        }
        self.kostant_rec(bound, self.positive_roots.len(), coords)
    }

    // Number of ways to write `nu` with the first `k` positive roots.
    fn kostant_rec(&self, bound: Option<u64>, k: usize, nu: Vec<i64>) -> u128 {
        if k == 0 {
            return u128::from(nu.iter().all(|&x| x == 0));
        }
        let key = (bound, k, nu);
        if let Some(&v) = self.kostant_memo.lock().get(&key) {
            return v;
        }
        let (_, _, nu) = key;
        let alpha = &self.positive_roots[k - 1].root_coords;
        let mut total: u128 = 0;
        let mut rest = nu.clone();
        let mut c: u64 = 0;
        loop {
            total = total
                .checked_add(self.kostant_rec(bound, k - 1, rest.clone()))
                .expect("partition count overflow");
            c += 1;
            if bound.is_some_and(|b| c > b) {
                break;
            }
            for (r, a) in rest.iter_mut().zip(alpha) {
                *r -= a;
            }
            if rest.iter().any(|&x| x < 0) {
                break;
            }
        }
        self.kostant_memo.lock().insert((bound, k, nu), total);
        total
    }
}

impl Clone for RootSystem {
    fn clone(&self) -> Self {
        RootSystem {
            cartan_type: self.cartan_type,
            rank: self.rank,
            cartan: self.cartan.clone(),
            positive_roots: self.positive_roots.clone(),
            rho: self.rho.clone(),
            w0_word: self.w0_word.clone(),
            weyl_order: self.weyl_order,
            coxeter_number: self.coxeter_number,
            highest_coroot_root: self.highest_coroot_root,
            to_root_basis: self.to_root_basis.clone(),
            simple_reflections: self.simple_reflections.clone(),
            w0: self.w0.clone(),
            elements: OnceLock::new(),
            kostant_memo: Mutex::new(HashMap::new()),
        }
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A root system together with the characteristic `p > h`.
#[derive(Debug, Clone)]
pub struct ModularContext {
    pub system: Arc<RootSystem>,
    pub p: u64,
}

impl ModularContext {
    pub fn new(system: Arc<RootSystem>, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Config(format!("p = {p} is not prime")));
        }
        if p as i64 <= system.coxeter_number {
            return Err(Error::Config(format!(
                "p = {p} must exceed the Coxeter number h = {}",
                system.coxeter_number
            )));
        }
        Ok(ModularContext { system, p })
    }

    /// Smallest admissible prime for the system.
    pub fn default_prime(system: &RootSystem) -> u64 {
        ((system.coxeter_number as u64 + 1)..)
            .find(|&p| is_prime(p))
            .expect("primes are unbounded")
    }

    pub fn p_i64(&self) -> i64 {
        self.p as i64
    }

    pub fn is_restricted(&self, lambda: &Weight) -> bool {
        lambda.0.iter().all(|&c| c >= 0 && c < self.p_i64())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(t: CartanType, r: usize) -> RootSystem {
        RootSystem::new(t, r).unwrap()
    }

    #[test]
    fn classical_counts() {
        for (t, r, np, order, h) in [
            (CartanType::A, 1, 1, 2, 2),
            (CartanType::A, 2, 3, 6, 3),
            (CartanType::A, 3, 6, 24, 4),
            (CartanType::B, 2, 4, 8, 4),
            (CartanType::C, 3, 9, 48, 6),
            (CartanType::D, 4, 12, 192, 6),
            (CartanType::F, 4, 24, 1152, 12),
            (CartanType::G, 2, 6, 12, 6),
            (CartanType::E, 6, 36, 51840, 12),
        ] {
            let s = sys(t, r);
            assert_eq!(s.num_positive_roots(), np, "{t}{r}");
            assert_eq!(s.w0_word.len(), np, "{t}{r}");
            assert_eq!(s.coxeter_number, h, "{t}{r}");
            if order <= 1152 {
                assert_eq!(s.weyl_elements().len() as u64, order, "{t}{r}");
            }
            assert_eq!(s.weyl_order, order);
        }
    }

    #[test]
    fn cartan_pairing_and_rho() {
        for (t, r) in [(CartanType::B, 3), (CartanType::G, 2), (CartanType::E, 7)] {
            let s = sys(t, r);
            for i in 0..r {
                for j in 0..r {
                    assert_eq!(s.simple_coroots()[j].pair(s.simple_root(i)), s.cartan[i][j]);
                }
                assert_eq!(s.simple_coroots()[i].pair(&s.rho), 1);
            }
        }
    }

    #[test]
    fn w0_negates_positive_roots() {
        for (t, r) in [(CartanType::A, 3), (CartanType::C, 2), (CartanType::G, 2), (CartanType::D, 4)] {
            let s = sys(t, r);
            for root in &s.positive_roots {
                let img = s.w0().apply(&root.weight);
                assert!(s.is_positive_root_weight(&-&img));
            }
        }
    }

    #[test]
    fn unsupported_types_rejected() {
        assert!(RootSystem::new(CartanType::E, 9).is_err());
        assert!(RootSystem::new(CartanType::G, 3).is_err());
        assert!(RootSystem::new(CartanType::D, 3).is_err());
        assert!(RootSystem::new(CartanType::A, 0).is_err());
    }

    #[test]
    fn dominance_examples() {
        let a1 = sys(CartanType::A, 1);
        assert!(!a1.dominance_leq(&Weight(vec![0]), &Weight(vec![1])));
        assert!(a1.dominance_leq(&Weight(vec![0]), &Weight(vec![2])));
        let a2 = sys(CartanType::A, 2);
        let lam = Weight(vec![3, -1]);
        assert!(a2.dominance_leq(&lam, &lam));
        let sum = a2.simple_root(0) + a2.simple_root(1);
        assert!(a2.dominance_leq(&Weight::zero(2), &sum));
    }

    #[test]
    fn kostant_small_values() {
        let a2 = sys(CartanType::A, 2);
        assert_eq!(a2.kostant_partition(&Weight::zero(2), None), 1);
        let sum = a2.simple_root(0) + a2.simple_root(1);
        assert_eq!(a2.kostant_partition(&sum, None), 2);
        let a1 = sys(CartanType::A, 1);
        let p = 5;
        let p_alpha = a1.simple_root(0).scale(p);
        assert_eq!(a1.kostant_partition(&p_alpha, Some(p as u64 - 1)), 0);
        assert_eq!(a1.kostant_partition(&Weight(vec![1]), None), 0);
    }

    #[test]
    fn modular_context_validation() {
        let a2 = Arc::new(sys(CartanType::A, 2));
        assert!(ModularContext::new(a2.clone(), 3).is_err());
        assert!(ModularContext::new(a2.clone(), 9).is_err());
        let ctx = ModularContext::new(a2.clone(), 5).unwrap();
        assert!(ctx.is_restricted(&Weight(vec![0, 0])));
        assert!(ctx.is_restricted(&a2.rho.scale(4)));
        assert!(!ctx.is_restricted(&Weight(vec![5, 0])));
        assert_eq!(ModularContext::default_prime(&a2), 5);
    }
}

//! Truncated Witt vectors `W_n(F_q)`.
//!
//! The universal sum, product and negation polynomials are computed over
//! `Z` from the ghost components `w_k = Σ_{i≤k} pⁱ X_i^{p^{k−i}}`, dividing
//! by `p^k` at level `k`, and only then reduced mod `p`. Above the level
//! guard the same recursion is instead evaluated pointwise at lifts in
//! `(Z/pⁿ)[a]/(f̃)`, which is exact because the `k`-th component only needs
//! `n − k` digits of precision.
//!
//! `F(a₀, a₁, …) = (a₀^p, a₁^p, …)` and `V(a₀, a₁, …) = (0, a₀, a₁, …)`;
//! `π = F − id`. Cokernels of `π` and the transition maps induced by `V`
//! are computed by exhaustive enumeration of the additive group.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::abelian::{is_prime, FinAbInvariants};
use crate::field::{FieldError, FiniteField};

/// Polynomials are precomputed only up to this level unless overridden.
pub const DEFAULT_MAX_LEVEL: usize = 6;

/// Exhaustive checks enumerate at most this many Witt vectors; above it the
/// checks sample.
pub const EXHAUSTIVE_LIMIT: u64 = 1 << 16;

/// Groups larger than this are never enumerated.
const ENUMERATION_LIMIT: u64 = 1 << 22;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("level must be at least 1")]
    ZeroLevel,
    #[error("level {n} exceeds the guard {max}")]
    LevelGuard { n: usize, max: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("Witt vector does not belong to this ring")]
    RingMismatch,
    #[error("group of order {0} is too large to enumerate")]
    TooLarge(u64),
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A polynomial with integer coefficients, keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: BigInt) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigInt::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> BigInt {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        use alloc::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                if !c.is_zero() {
                    v.insert(c);
                }
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&BigInt::from(-1)))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(self.nvars, BigInt::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self / d` when every coefficient is divisible by `d`.
    pub fn div_exact(&self, d: &BigInt) -> Option<Self> {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(e.clone(), q);
        }
        Some(Self {
            nvars: self.nvars,
            terms,
        })
    }

    /// Renders with variables `x0, x1, …` for the first half and
    /// `y0, y1, …` for the second.
    pub fn display_xy(&self) -> String {
        let half = self.nvars / 2;
        let name = |i: usize| {
            if i < half {
                format!("x{i}")
            } else {
                format!("y{}", i - half)
            }
        };
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let factors: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &a)| a > 0)
                .map(|(i, &a)| {
                    if a == 1 {
                        name(i)
                    } else {
                        format!("{}^{a}", name(i))
                    }
                })
                .collect();
            let mag = c.abs();
            let body = match (factors.is_empty(), mag.is_one()) {
                (true, _) => format!("{mag}"),
                (false, true) => factors.join("*"),
                (false, false) => format!("{mag}*{}", factors.join("*")),
            };
            match (k, c.is_negative()) {
                (0, false) => out.push_str(&body),
                (0, true) => out.push_str(&format!("-{body}")),
                (_, false) => out.push_str(&format!(" + {body}")),
                (_, true) => out.push_str(&format!(" - {body}")),
            }
        }
        out
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_xy())
    }
}

/// Universal Witt polynomials over `Z` in `x₀…x_{n−1}, y₀…y_{n−1}`
/// (variable `i` is `xᵢ`, variable `n + i` is `yᵢ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittPolys {
    pub p: u64,
    pub n: usize,
    pub sum: Vec<Poly>,
    pub prod: Vec<Poly>,
    /// Negation; needed for `π = F − id`. Equal to `−xᵢ` for odd `p`.
    pub neg: Vec<Poly>,
}

/// `w_k` in variables `offset .. offset + k` of a `2n`-variable ring.
pub fn ghost(p: u64, k: usize, n: usize, offset: usize) -> Poly {
    let mut w = Poly::zero(2 * n);
    for i in 0..=k {
        let pi = BigInt::from(p).pow(i as u32);
        w = w.add(
            &Poly::var(2 * n, offset + i)
                .pow(p.pow((k - i) as u32))
                .scale(&pi),
        );
    }
    w
}

/// Solves `Σ_{i≤k} pⁱ R_i^{p^{k−i}} = G_k` for `k < n`.
fn solve_ghost(p: u64, n: usize, targets: &[Poly]) -> Vec<Poly> {
    let mut out: Vec<Poly> = Vec::with_capacity(n);
    // powers[i] = R_i^{p^{k−i}} for the level k being solved.
    let mut powers: Vec<Poly> = Vec::with_capacity(n);
    for (k, target) in targets.iter().enumerate() {
        for w in powers.iter_mut() {
            *w = w.pow(p);
        }
        let mut rest = target.clone();
        for (i, w) in powers.iter().enumerate() {
            rest = rest.sub(&w.scale(&BigInt::from(p).pow(i as u32)));
        }
        let r = rest
            .div_exact(&BigInt::from(p).pow(k as u32))
            .expect("Witt polynomials are integral");
        powers.push(r.clone());
        out.push(r);
    }
    out
}

/// Computes the polynomials up to level `n`, rejecting levels above the
/// default guard.
pub fn witt_polys(p: u64, n: usize) -> Result<WittPolys, WittError> {
    witt_polys_guarded(p, n, DEFAULT_MAX_LEVEL)
}

pub fn witt_polys_guarded(p: u64, n: usize, max_level: usize) -> Result<WittPolys, WittError> {
    if !is_prime(p) {
        return Err(WittError::NotPrime(p));
    }
    if n == 0 {
        return Err(WittError::ZeroLevel);
    }
    if n > max_level {
        return Err(WittError::LevelGuard { n, max: max_level });
    }
    let gx: Vec<Poly> = (0..n).map(|k| ghost(p, k, n, 0)).collect();
    let gy: Vec<Poly> = (0..n).map(|k| ghost(p, k, n, n)).collect();
    let sums: Vec<Poly> = gx.iter().zip(&gy).map(|(a, b)| a.add(b)).collect();
    let prods: Vec<Poly> = gx.iter().zip(&gy).map(|(a, b)| a.mul(b)).collect();
    let negs: Vec<Poly> = gx.iter().map(|a| a.scale(&BigInt::from(-1))).collect();
    let polys = WittPolys {
        p,
        n,
        sum: solve_ghost(p, n, &sums),
        prod: solve_ghost(p, n, &prods),
        neg: solve_ghost(p, n, &negs),
    };
    debug_assert!(polys.verify_ghost_identities());
    Ok(polys)
}

impl WittPolys {
    /// Exact check of `w_k(S) = w_k(x) + w_k(y)`, `w_k(P) = w_k(x)·w_k(y)`
    /// and `w_k(N) = −w_k(x)` for every `k < n`.
    pub fn verify_ghost_identities(&self) -> bool {
        let (p, n) = (self.p, self.n);
        let compose = |r: &[Poly], k: usize| {
            let mut acc = Poly::zero(2 * n);
            for (i, ri) in r.iter().enumerate().take(k + 1) {
                acc = acc.add(
                    &ri.pow(p.pow((k - i) as u32))
                        .scale(&BigInt::from(p).pow(i as u32)),
                );
            }
            acc
        };
        (0..n).all(|k| {
            let (wx, wy) = (ghost(p, k, n, 0), ghost(p, k, n, n));
            compose(&self.sum, k) == wx.add(&wy)
                && compose(&self.prod, k) == wx.mul(&wy)
                && compose(&self.neg, k) == wx.scale(&BigInt::from(-1))
        })
    }

    /// The polynomials of level `m ≤ n`, re-expressed in `2m` variables.
    pub fn truncate(&self, m: usize) -> WittPolys {
        assert!(m >= 1 && m <= self.n);
        let keep = |poly: &Poly| {
            let mut out = Poly::zero(2 * m);
            for (e, c) in &poly.terms {
                let mut f: Vec<u32> = e[..m].to_vec();
                f.extend_from_slice(&e[self.n..self.n + m]);
                debug_assert!(e[m..self.n].iter().chain(&e[self.n + m..]).all(|&a| a == 0));
                out.terms.insert(f, c.clone());
            }
            out
        };
        WittPolys {
            p: self.p,
            n: m,
            sum: self.sum[..m].iter().map(keep).collect(),
            prod: self.prod[..m].iter().map(keep).collect(),
            neg: self.neg[..m].iter().map(keep).collect(),
        }
    }
}

/// Memo of computed polynomials. Lower levels are derived from the highest
/// level computed so far for the same prime.
#[derive(Default, Debug)]
pub struct WittPolyCache {
    entries: BTreeMap<(u64, usize), Arc<WittPolys>>,
}

impl WittPolyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&mut self, p: u64, n: usize) -> Result<Arc<WittPolys>, WittError> {
        self.get_guarded(p, n, DEFAULT_MAX_LEVEL)
    }

    pub fn get_guarded(
        &mut self,
        p: u64,
        n: usize,
        max_level: usize,
    ) -> Result<Arc<WittPolys>, WittError> {
        if let Some(hit) = self.entries.get(&(p, n)) {
            return Ok(hit.clone());
        }
        let higher = self
            .entries
            .range((p, n)..(p, usize::MAX))
            .next()
            .map(|(_, v)| v.clone());
        let polys = match higher {
            Some(h) => Arc::new(h.truncate(n)),
            None => Arc::new(witt_polys_guarded(p, n, max_level)?),
        };
        self.entries.insert((p, n), polys.clone());
        Ok(polys)
    }
}

/// A polynomial reduced mod `p`, as `(coefficient, [(variable, exponent)])`.
#[derive(Clone, Debug)]
struct Compiled(Vec<(u32, Vec<(usize, u64)>)>);

impl Compiled {
    fn new(poly: &Poly, field: &FiniteField) -> Self {
        let p = BigInt::from(field.characteristic());
        let terms = poly
            .terms
            .iter()
            .filter_map(|(e, c)| {
                let c = c.mod_floor(&p).to_u64().expect("reduced");
                (c != 0).then(|| {
                    let vars = e
                        .iter()
                        .enumerate()
                        .filter(|(_, &a)| a > 0)
                        .map(|(i, &a)| (i, u64::from(a)))
                        .collect();
                    (field.from_int(c as i64), vars)
                })
            })
            .collect();
        Self(terms)
    }

    fn eval(&self, field: &FiniteField, vals: &[u32]) -> u32 {
        self.0.iter().fold(0, |acc, (c, vars)| {
            let t = vars
                .iter()
                .fold(*c, |t, &(i, a)| field.mul(t, field.pow(vals[i], a)));
            field.add(acc, t)
        })
    }
}

#[derive(Clone, Debug)]
enum Engine {
    Polys {
        sum: Vec<Compiled>,
        prod: Vec<Compiled>,
        neg: Vec<Compiled>,
    },
    GhostLift(LiftRing),
}

/// `(Z/pⁿ)[a]/(f̃)` with `f̃` the integer lift of the field modulus.
#[derive(Clone, Debug)]
struct LiftRing {
    p: u64,
    modulus_pn: u64,
    f: Vec<u64>,
}

type Lift = Vec<u64>;

impl LiftRing {
    fn new(field: &FiniteField, n: usize) -> Self {
        Self {
            p: field.characteristic(),
            modulus_pn: field.characteristic().pow(n as u32),
            f: field.modulus().to_vec(),
        }
    }

    fn d(&self) -> usize {
        self.f.len() - 1
    }

    fn lift(&self, field: &FiniteField, x: u32) -> Lift {
        field.coefficients(x)
    }

    fn add(&self, a: &Lift, b: &Lift) -> Lift {
        a.iter()
            .zip(b)
            .map(|(x, y)| (x + y) % self.modulus_pn)
            .collect()
    }

    fn scale(&self, a: &Lift, k: u64) -> Lift {
        let m = u128::from(self.modulus_pn);
        a.iter()
            .map(|&x| ((u128::from(x) * u128::from(k % self.modulus_pn)) % m) as u64)
            .collect()
    }

    fn neg(&self, a: &Lift) -> Lift {
        a.iter()
            .map(|&x| (self.modulus_pn - x) % self.modulus_pn)
            .collect()
    }

    fn mul(&self, a: &Lift, b: &Lift) -> Lift {
        let d = self.d();
        let m = u128::from(self.modulus_pn);
        let mut prod = vec![0u128; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u128::from(x) * u128::from(y)) % m;
            }
        }
        for top in (d..prod.len()).rev() {
            let c = prod[top];
            for (i, &fi) in self.f.iter().enumerate() {
                let k = top - d + i;
                prod[k] = (prod[k] + (m - c) * u128::from(fi)) % m;
            }
        }
        prod[..d].iter().map(|&x| x as u64).collect()
    }

    fn pow(&self, a: &Lift, mut k: u64) -> Lift {
        let mut base = a.clone();
        let mut acc = vec![0; self.d()];
        acc[0] = 1 % self.modulus_pn;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn ghost(&self, a: &[Lift], k: usize) -> Lift {
        let mut w = vec![0; self.d()];
        for (i, ai) in a.iter().enumerate().take(k + 1) {
            let term = self.pow(ai, self.p.pow((k - i) as u32));
            w = self.add(&w, &self.scale(&term, self.p.pow(i as u32)));
        }
        w
    }

    /// Components mod `p` of the Witt vector with the given ghost targets.
    fn solve(&self, field: &FiniteField, targets: &[Lift]) -> Vec<u32> {
        let mut comps: Vec<Lift> = Vec::with_capacity(targets.len());
        for (k, t) in targets.iter().enumerate() {
            let prev = self.ghost(&comps, k);
            // ghost() over k components: the missing k-th term is p^k·r_k.
            let rest = self.add(t, &self.neg(&prev));
            let pk = self.p.pow(k as u32);
            debug_assert!(rest.iter().all(|x| x % pk == 0));
            comps.push(rest.iter().map(|x| x / pk).collect());
        }
        comps
            .iter()
            .map(|c| field.from_coefficients(&c.iter().map(|x| x % self.p).collect::<Vec<_>>()))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WittVector {
    comps: Vec<u32>,
}

impl WittVector {
    pub fn new(comps: Vec<u32>) -> Self {
        Self { comps }
    }

    pub fn components(&self) -> &[u32] {
        &self.comps
    }

    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

/// `W_n(F_q)`.
#[derive(Clone, Debug)]
pub struct WittRing {
    field: FiniteField,
    n: usize,
    engine: Engine,
}

impl WittRing {
    /// Ring arithmetic by the universal polynomials; `n` is subject to
    /// [`DEFAULT_MAX_LEVEL`].
    pub fn new(field: FiniteField, n: usize) -> Result<Self, WittError> {
        let polys = witt_polys(field.characteristic(), n)?;
        Ok(Self::from_polys(field, &polys))
    }

    pub fn with_cache(
        field: FiniteField,
        n: usize,
        cache: &mut WittPolyCache,
    ) -> Result<Self, WittError> {
        let polys = cache.get(field.characteristic(), n)?;
        Ok(Self::from_polys(field, &polys))
    }

    pub fn from_polys(field: FiniteField, polys: &WittPolys) -> Self {
        assert_eq!(polys.p, field.characteristic());
        let compile = |v: &[Poly]| v.iter().map(|p| Compiled::new(p, &field)).collect();
        let engine = Engine::Polys {
            sum: compile(&polys.sum),
            prod: compile(&polys.prod),
            neg: compile(&polys.neg),
        };
        Self {
            n: polys.n,
            engine,
            field,
        }
    }

    /// Level override: arithmetic by pointwise ghost-component recursion at
    /// lifts, for any `n ≥ 1`.
    pub fn unguarded(field: FiniteField, n: usize) -> Result<Self, WittError> {
        if n == 0 {
            return Err(WittError::ZeroLevel);
        }
        if field
            .characteristic()
            .checked_pow(n as u32)
            .is_none_or(|m| m > u64::MAX >> 2)
        {
            return Err(WittError::LevelGuard { n, max: 60 });
        }
        Ok(Self {
            engine: Engine::GhostLift(LiftRing::new(&field, n)),
            n,
            field,
        })
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn level(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u64 {
        self.field.characteristic()
    }

    /// `q^n`, if it fits.
    pub fn order(&self) -> Option<u64> {
        self.field.order().checked_pow(self.n as u32)
    }

    pub fn zero(&self) -> WittVector {
        WittVector::new(vec![0; self.n])
    }

    pub fn one(&self) -> WittVector {
        self.teichmuller(1)
    }

    pub fn teichmuller(&self, x: u32) -> WittVector {
        let mut c = vec![0; self.n];
        c[0] = x;
        WittVector::new(c)
    }

    pub fn contains(&self, a: &WittVector) -> bool {
        a.len() == self.n && a.comps.iter().all(|&x| self.field.contains(x))
    }

    pub fn check(&self, a: &WittVector) -> Result<(), WittError> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(WittError::RingMismatch)
        }
    }

    /// Vector with mixed-radix index `Σ aᵢ qⁱ`.
    pub fn element(&self, mut index: u64) -> WittVector {
        let q = self.field.order();
        WittVector::new(
            (0..self.n)
                .map(|_| {
                    let c = (index % q) as u32;
                    index /= q;
                    c
                })
                .collect(),
        )
    }

    pub fn index_of(&self, a: &WittVector) -> u64 {
        let q = self.field.order();
        a.comps
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * q + u64::from(c))
    }

    fn binary(&self, a: &WittVector, b: &WittVector, product: bool) -> WittVector {
        match &self.engine {
            Engine::Polys { sum, prod, .. } => {
                let mut vals = a.comps.clone();
                vals.extend_from_slice(&b.comps);
                let polys = if product { prod } else { sum };
                WittVector::new(polys.iter().map(|c| c.eval(&self.field, &vals)).collect())
            }
            Engine::GhostLift(r) => {
                let la: Vec<Lift> = a.comps.iter().map(|&x| r.lift(&self.field, x)).collect();
                let lb: Vec<Lift> = b.comps.iter().map(|&x| r.lift(&self.field, x)).collect();
                let targets: Vec<Lift> = (0..self.n)
                    .map(|k| {
                        let (wa, wb) = (r.ghost(&la, k), r.ghost(&lb, k));
                        if product {
                            r.mul(&wa, &wb)
                        } else {
                            r.add(&wa, &wb)
                        }
                    })
                    .collect();
                WittVector::new(r.solve(&self.field, &targets))
            }
        }
    }

    pub fn add(&self, a: &WittVector, b: &WittVector) -> WittVector {
        debug_assert!(self.contains(a) && self.contains(b));
        self.binary(a, b, false)
    }

    pub fn mul(&self, a: &WittVector, b: &WittVector) -> WittVector {
        debug_assert!(self.contains(a) && self.contains(b));
        self.binary(a, b, true)
    }

    /// [`Self::add`] with a membership check.
    pub fn witt_add(&self, a: &WittVector, b: &WittVector) -> Result<WittVector, WittError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add(a, b))
    }

    /// [`Self::mul`] with a membership check.
    pub fn witt_mul(&self, a: &WittVector, b: &WittVector) -> Result<WittVector, WittError> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul(a, b))
    }

    pub fn neg(&self, a: &WittVector) -> WittVector {
        match &self.engine {
            Engine::Polys { neg, .. } => {
                let mut vals = a.comps.clone();
                vals.resize(2 * self.n, 0);
                WittVector::new(neg.iter().map(|c| c.eval(&self.field, &vals)).collect())
            }
            Engine::GhostLift(r) => {
                let la: Vec<Lift> = a.comps.iter().map(|&x| r.lift(&self.field, x)).collect();
                let targets: Vec<Lift> = (0..self.n).map(|k| r.neg(&r.ghost(&la, k))).collect();
                WittVector::new(r.solve(&self.field, &targets))
            }
        }
    }

    pub fn sub(&self, a: &WittVector, b: &WittVector) -> WittVector {
        self.add(a, &self.neg(b))
    }

    /// `k·a` by doubling.
    pub fn scalar(&self, mut k: u64, a: &WittVector) -> WittVector {
        let mut acc = self.zero();
        let mut base = a.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    pub fn frobenius(&self, a: &WittVector) -> WittVector {
        WittVector::new(a.comps.iter().map(|&x| self.field.frobenius(x)).collect())
    }

    /// Shift within the same truncation; the last component is dropped.
    pub fn verschiebung(&self, a: &WittVector) -> WittVector {
        let mut c = vec![0];
        c.extend_from_slice(&a.comps[..self.n - 1]);
        WittVector::new(c)
    }

    /// `V: W_n → W_{n+1}`.
    pub fn verschiebung_up(&self, a: &WittVector) -> WittVector {
        let mut c = vec![0];
        c.extend_from_slice(&a.comps);
        WittVector::new(c)
    }

    /// `π = F − id`.
    pub fn pi(&self, a: &WittVector) -> WittVector {
        self.sub(&self.frobenius(a), a)
    }

    pub fn elements(&self) -> Result<impl Iterator<Item = WittVector> + '_, WittError> {
        let order = self
            .order()
            .filter(|&o| o <= ENUMERATION_LIMIT)
            .ok_or(WittError::TooLarge(self.order().unwrap_or(u64::MAX)))?;
        Ok((0..order).map(|i| self.element(i)))
    }

    pub fn format(&self, a: &WittVector) -> String {
        let parts: Vec<String> = a.comps.iter().map(|&x| self.field.format(x)).collect();
        format!("({})", parts.join(", "))
    }
}

/// `W/H` for the subgroup `H = π(W)`, by exhaustive coset labelling.
struct CosetData {
    /// Coset number of each element, by index.
    label: Vec<u32>,
    /// Least element of each coset.
    reps: Vec<u64>,
    in_image: Vec<bool>,
}

fn pi_cosets(ring: &WittRing) -> Result<CosetData, WittError> {
    let order = ring
        .order()
        .filter(|&o| o <= ENUMERATION_LIMIT)
        .ok_or(WittError::TooLarge(ring.order().unwrap_or(u64::MAX)))?;
    let mut in_image = vec![false; order as usize];
    let mut image = Vec::new();
    for a in ring.elements()? {
        let i = ring.index_of(&ring.pi(&a)) as usize;
        if !in_image[i] {
            in_image[i] = true;
            image.push(ring.element(i as u64));
        }
    }
    let mut label = vec![u32::MAX; order as usize];
    let mut reps = Vec::new();
    for x in 0..order {
        if label[x as usize] != u32::MAX {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        let xv = ring.element(x);
        for h in &image {
            label[ring.index_of(&ring.add(&xv, h)) as usize] = c;
        }
    }
    Ok(CosetData {
        label,
        reps,
        in_image,
    })
}

fn coset_of(ring: &WittRing, data: &CosetData, a: &WittVector) -> u32 {
    data.label[ring.index_of(a) as usize]
}

/// `W_n(F_q)/π(W_n(F_q))` with the transition map to level `n + 1`
/// induced by `V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cokernel {
    pub p: u64,
    pub q: u64,
    pub n: usize,
    pub order: u64,
    pub invariants: FinAbInvariants,
    /// Least element of each coset at level `n`.
    pub representatives: Vec<WittVector>,
    /// Least element of each coset at level `n + 1`.
    pub next_representatives: Vec<WittVector>,
    /// `transition[i]` indexes the coset of `V(representatives[i])`.
    pub transition: Vec<usize>,
    /// Every element of a coset has `V`-image in the same coset.
    pub transition_well_defined: bool,
}

/// Invariant factors of a finite abelian `p`-group from the orders of its
/// elements: the number of cyclic factors of order at least `p^k` is
/// `log_p(|Q[p^k]| / |Q[p^{k−1}]|)`.
fn invariants_from_orders(p: u64, orders: &[u32]) -> FinAbInvariants {
    let max = orders.iter().copied().max().unwrap_or(0);
    let count = |k: u32| orders.iter().filter(|&&e| e <= k).count() as u64;
    let mut factors: Vec<u64> = Vec::new();
    for k in 1..=max {
        let ratio = count(k) / count(k - 1);
        let mut at_least_k = 0;
        let mut r = ratio;
        while r > 1 {
            r /= p;
            at_least_k += 1;
        }
        let at_least_next = if k < max {
            let mut r = count(k + 1) / count(k);
            let mut c = 0;
            while r > 1 {
                r /= p;
                c += 1;
            }
            c
        } else {
            0
        };
        for _ in 0..(at_least_k - at_least_next) {
            factors.push(p.pow(k));
        }
    }
    factors.sort_unstable();
    FinAbInvariants::from_cyclic_orders(0, &factors)
}

fn ring_pair(q: u64, n: usize) -> Result<(WittRing, WittRing), WittError> {
    if n == 0 {
        return Err(WittError::ZeroLevel);
    }
    let field = FiniteField::with_order(q)?;
    let polys = witt_polys(field.characteristic(), n + 1)?;
    Ok((
        WittRing::from_polys(field.clone(), &polys.truncate(n)),
        WittRing::from_polys(field, &polys),
    ))
}

/// Cokernel of `π` on `W_n(F_q)`; level `n + 1` must also pass the guard.
pub fn artin_schreier_cokernel(q: u64, n: usize) -> Result<Cokernel, WittError> {
    let (wn, wn1) = ring_pair(q, n)?;
    let here = pi_cosets(&wn)?;
    let next = pi_cosets(&wn1)?;
    let p = wn.p();
    let orders: Vec<u32> = here
        .reps
        .iter()
        .map(|&r| {
            let x = wn.element(r);
            let mut e = 0;
            let mut y = x;
            while !here.in_image[wn.index_of(&y) as usize] {
                y = wn.scalar(p, &y);
                e += 1;
            }
            e
        })
        .collect();
    let transition: Vec<usize> = here
        .reps
        .iter()
        .map(|&r| coset_of(&wn1, &next, &wn.verschiebung_up(&wn.element(r))) as usize)
        .collect();
    let transition_well_defined = wn.elements()?.all(|x| {
        let c = coset_of(&wn, &here, &x) as usize;
        coset_of(&wn1, &next, &wn.verschiebung_up(&x)) as usize == transition[c]
    });
    Ok(Cokernel {
        p,
        q,
        n,
        order: here.reps.len() as u64,
        invariants: invariants_from_orders(p, &orders),
        representatives: here.reps.iter().map(|&r| wn.element(r)).collect(),
        next_representatives: next.reps.iter().map(|&r| wn1.element(r)).collect(),
        transition,
        transition_well_defined,
    })
}

/// Outcome of a check over all of `W_n(F_q)` or a seeded sample of it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageCheck {
    pub holds: bool,
    pub exhaustive: bool,
    pub checked: u64,
    pub counterexample: Option<WittVector>,
}

fn sweep(wn: &WittRing, seed: u64, mut pred: impl FnMut(&WittVector) -> bool) -> StageCheck {
    let order = wn.order().unwrap_or(u64::MAX);
    let exhaustive = order <= EXHAUSTIVE_LIMIT;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = if exhaustive { order } else { EXHAUSTIVE_LIMIT };
    for i in 0..count {
        let x = if exhaustive {
            wn.element(i)
        } else {
            wn.element(rng.gen_range(0..order))
        };
        if !pred(&x) {
            return StageCheck {
                holds: false,
                exhaustive,
                checked: i + 1,
                counterexample: Some(x),
            };
        }
    }
    StageCheck {
        holds: true,
        exhaustive,
        checked: count,
        counterexample: None,
    }
}

/// `V(x) ≡ V(F(x))` modulo `π(W_{n+1})` for every `x ∈ W_n(F_q)`: the maps
/// induced by `V` and by `V∘F` on the cokernels agree.
pub fn check_ftilde_equals_ftilde_v(q: u64, n: usize, seed: u64) -> Result<StageCheck, WittError> {
    let (wn, wn1) = ring_pair(q, n)?;
    let next = pi_cosets(&wn1)?;
    Ok(sweep(&wn, seed, |x| {
        let a = wn.verschiebung_up(x);
        let b = wn.verschiebung_up(&wn.frobenius(x));
        next.in_image[wn1.index_of(&wn1.sub(&a, &b)) as usize]
    }))
}

/// The image of `W_n/π` in `W_{n+1}/π` lies in `p·(W_{n+1}/π)`.
pub fn p_divisibility_stage(q: u64, n: usize, seed: u64) -> Result<StageCheck, WittError> {
    let (wn, wn1) = ring_pair(q, n)?;
    let next = pi_cosets(&wn1)?;
    let p = wn.p();
    let mut multiples = vec![false; next.reps.len()];
    for y in wn1.elements()? {
        multiples[coset_of(&wn1, &next, &wn1.scalar(p, &y)) as usize] = true;
    }
    Ok(sweep(&wn, seed, |x| {
        multiples[coset_of(&wn1, &next, &wn.verschiebung_up(x)) as usize]
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn w(c: &[u32]) -> WittVector {
        WittVector::new(c.to_vec())
    }

    #[test]
    fn level_one_and_two_polynomials() {
        let p1 = witt_polys(2, 1).unwrap();
        assert_eq!(p1.sum[0].to_string(), "x0 + y0");
        assert_eq!(p1.prod[0].to_string(), "x0*y0");
        let p2 = witt_polys(2, 2).unwrap();
        assert_eq!(p2.sum[1].to_string(), "-x0*y0 + x1 + y1");
        assert_eq!(p2.neg[1].to_string(), "-x0^2 - x1");
        let p3 = witt_polys(3, 2).unwrap();
        assert_eq!(p3.sum[1].to_string(), "-x0^2*y0 - x0*y0^2 + x1 + y1");
        assert_eq!(p3.neg[1].to_string(), "-x1");
        assert!(p3.verify_ghost_identities());
    }

    #[test]
    fn guard_and_cache() {
        assert_eq!(
            witt_polys(2, 7).unwrap_err(),
            WittError::LevelGuard { n: 7, max: 6 }
        );
        assert_eq!(witt_polys(4, 1).unwrap_err(), WittError::NotPrime(4));
        assert_eq!(witt_polys(2, 0).unwrap_err(), WittError::ZeroLevel);
        let mut cache = WittPolyCache::new();
        let hi = cache.get(3, 3).unwrap();
        let lo = cache.get(3, 2).unwrap();
        assert_eq!(*lo, witt_polys(3, 2).unwrap());
        assert_eq!(hi.truncate(3), *hi);
        assert!(Arc::ptr_eq(&lo, &cache.get(3, 2).unwrap()));
    }

    #[test]
    fn w2_f2_is_z4() {
        let r = WittRing::new(FiniteField::new(2, 1).unwrap(), 2).unwrap();
        assert_eq!(r.add(&w(&[1, 0]), &w(&[1, 0])), w(&[0, 1]));
        assert_eq!(r.mul(&w(&[1, 0]), &w(&[1, 0])), w(&[1, 0]));
        assert_eq!(r.verschiebung(&w(&[1, 0])), w(&[0, 1]));
        for a in r.elements().unwrap() {
            assert_eq!(r.add(&a, &r.zero()), a);
            assert_eq!(r.frobenius(&a), a);
        }
        assert_eq!(
            r.witt_add(&w(&[1]), &w(&[1, 0])),
            Err(WittError::RingMismatch)
        );
    }

    #[test]
    fn frobenius_over_f4() {
        let f = FiniteField::with_order(4).unwrap();
        let r = WittRing::new(f.clone(), 2).unwrap();
        let a = w(&[2, 3]);
        assert_eq!(r.frobenius(&a), w(&[f.mul(2, 2), f.mul(3, 3)]));
    }

    #[test]
    fn engines_agree() {
        for (q, n) in [(2, 3), (4, 2), (3, 2), (9, 1), (5, 2)] {
            let f = FiniteField::with_order(q).unwrap();
            let a = WittRing::new(f.clone(), n).unwrap();
            let b = WittRing::unguarded(f, n).unwrap();
            let elems: Vec<WittVector> = a.elements().unwrap().collect();
            for x in &elems {
                assert_eq!(a.neg(x), b.neg(x));
                for y in elems.iter().step_by(3) {
                    assert_eq!(a.add(x, y), b.add(x, y));
                    assert_eq!(a.mul(x, y), b.mul(x, y));
                }
            }
        }
    }

    #[test]
    fn cokernels() {
        let c = artin_schreier_cokernel(2, 2).unwrap();
        assert_eq!(c.invariants, FinAbInvariants::from_cyclic_orders(0, &[4]));
        assert!(c.transition_well_defined);
        let c = artin_schreier_cokernel(4, 1).unwrap();
        assert_eq!(c.invariants, FinAbInvariants::from_cyclic_orders(0, &[2]));
        let c = artin_schreier_cokernel(8, 1).unwrap();
        assert_eq!(c.order, 2);
    }

    #[test]
    fn stage_checks() {
        for (q, n) in [(4, 1), (2, 2), (9, 1), (2, 1)] {
            assert!(check_ftilde_equals_ftilde_v(q, n, 0).unwrap().holds);
            let d = p_divisibility_stage(q, n, 0).unwrap();
            assert!(d.holds && d.exhaustive);
        }
    }

    #[test]
    fn invariants_from_element_orders() {
        // Z/4 ⊕ Z/2: orders (as exponents of 2) 0, 1 ×3, 2 ×4.
        let orders = [0, 1, 1, 1, 2, 2, 2, 2];
        assert_eq!(
            invariants_from_orders(2, &orders),
            FinAbInvariants::from_cyclic_orders(0, &[2, 4])
        );
        assert_eq!(invariants_from_orders(3, &[0]), FinAbInvariants::trivial());
    }
}

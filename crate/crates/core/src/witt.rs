//! π-typical Witt vectors `W_n` of length `n + 1` over a pluggable carrier.
//!
//! Ghost components are `w_i = Σ_{k ≤ i} π^k x_k^(q̂^(i-k))`. Addition is
//! componentwise (the characteristic is `p` and `q̂` is a power of `p`),
//! multiplication and Frobenius go through the ghost map or through cached
//! universal polynomials over `F_p[π]`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Debug;
use std::sync::{Arc, OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::local::{LocalElem, LocalRing};
use crate::twisted::{AdditivePoly, OreRing};

/// Additive structure plus `p`-power Frobenius and `π`-division.
pub trait Carrier {
    type Elem: Clone + Debug;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a^(p^e)`.
    fn frob_p(&self, a: &Self::Elem, e: u32) -> Self::Elem;
    fn mul_pi(&self, a: &Self::Elem, k: u32) -> Self::Elem;
    fn div_pi(&self, a: &Self::Elem, k: u32) -> Result<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// True if multiplication by `π` is injective.
    fn is_flat(&self) -> bool;
    fn p(&self) -> u32;
    fn h(&self) -> u32;
    fn f(&self) -> u32;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow_q(&self, a: &Self::Elem, j: u32) -> Self::Elem {
        self.frob_p(a, j * self.h())
    }

    fn pow_qhat(&self, a: &Self::Elem, j: u32) -> Self::Elem {
        self.frob_p(a, j * self.h() * self.f())
    }
}

pub trait RingCarrier: Carrier {
    fn one(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of a polynomial in `π` with `F_p` digits.
    fn from_pi_poly(&self, digits: &[u32]) -> Self::Elem;

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let p = self.p() as u64;
        let mut pe = 0;
        while e > 0 && e.is_multiple_of(p) {
            e /= p;
            pe += 1;
        }
        let mut base = self.frob_p(a, pe);
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

/// Carriers that are `R`-modules compatibly with the Frobenius lift.
pub trait ScalarCarrier: Carrier {
    fn local(&self) -> &LocalRing;
    fn scale(&self, r: &LocalElem, a: &Self::Elem) -> Self::Elem;
}

impl Carrier for LocalRing {
    type Elem = LocalElem;

    fn zero(&self) -> LocalElem {
        LocalRing::zero(self)
    }
    fn add(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        LocalRing::add(self, a, b)
    }
    fn neg(&self, a: &LocalElem) -> LocalElem {
        LocalRing::neg(self, a)
    }
    fn frob_p(&self, a: &LocalElem, e: u32) -> LocalElem {
        LocalRing::frob_p(self, a, e)
    }
    fn mul_pi(&self, a: &LocalElem, k: u32) -> LocalElem {
        LocalRing::mul_pi(self, a, k)
    }
    fn div_pi(&self, a: &LocalElem, k: u32) -> Result<LocalElem> {
        LocalRing::div_pi(self, a, k)
    }
    fn is_zero(&self, a: &LocalElem) -> bool {
        a.is_zero()
    }
    fn is_flat(&self) -> bool {
        false
    }
    fn p(&self) -> u32 {
        LocalRing::p(self)
    }
    fn h(&self) -> u32 {
        LocalRing::h(self)
    }
    fn f(&self) -> u32 {
        LocalRing::f(self)
    }
}

impl RingCarrier for LocalRing {
    fn one(&self) -> LocalElem {
        LocalRing::one(self)
    }
    fn mul(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        LocalRing::mul(self, a, b)
    }
    fn from_pi_poly(&self, digits: &[u32]) -> LocalElem {
        let c: Vec<_> = digits.iter().map(|&d| self.field().from_int(d as i64)).collect();
        self.from_coeffs(&c)
    }
}

impl ScalarCarrier for LocalRing {
    fn local(&self) -> &LocalRing {
        self
    }
    fn scale(&self, r: &LocalElem, a: &LocalElem) -> LocalElem {
        LocalRing::mul(self, r, a)
    }
}

/// Rows of additive polynomials in `nvars` variables: an element is the
/// additive map `(x_0, …) ↦ Σ_k f_k(x_k)`.
#[derive(Clone, Debug)]
pub struct AddForms {
    ore: OreRing,
    nvars: usize,
}

impl AddForms {
    pub fn new(ore: OreRing, nvars: usize) -> Self {
        AddForms { ore, nvars }
    }

    pub fn ore(&self) -> &OreRing {
        &self.ore
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// The coordinate function `x_i`.
    pub fn var(&self, i: usize) -> Vec<AdditivePoly> {
        let mut v = vec![self.ore.zero(); self.nvars];
        v[i] = self.ore.tau(0);
        v
    }
}

impl Carrier for AddForms {
    type Elem = Vec<AdditivePoly>;

    fn zero(&self) -> Self::Elem {
        vec![self.ore.zero(); self.nvars]
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.ore.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.ore.neg(x)).collect()
    }
    fn frob_p(&self, a: &Self::Elem, e: u32) -> Self::Elem {
        let h = self.h();
        assert!(e.is_multiple_of(h), "additive forms only admit q-power Frobenius");
        a.iter().map(|x| self.ore.q_twist(x, (e / h) as usize)).collect()
    }
    fn mul_pi(&self, a: &Self::Elem, k: u32) -> Self::Elem {
        a.iter().map(|x| self.ore.mul_pi(x, k)).collect()
    }
    fn div_pi(&self, a: &Self::Elem, k: u32) -> Result<Self::Elem> {
        a.iter().map(|x| self.ore.div_pi(x, k)).collect()
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| x.is_zero())
    }
    fn is_flat(&self) -> bool {
        false
    }
    fn p(&self) -> u32 {
        self.ore.base().p()
    }
    fn h(&self) -> u32 {
        self.ore.base().h()
    }
    fn f(&self) -> u32 {
        self.ore.base().f()
    }
}

impl ScalarCarrier for AddForms {
    fn local(&self) -> &LocalRing {
        self.ore.base()
    }
    fn scale(&self, r: &LocalElem, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.ore.scale(r, x)).collect()
    }
}

/// Polynomial in `F_p[π]`, little-endian digits, no trailing zeros.
pub type PiPoly = Vec<u32>;

/// Polynomial in commuting variables with coefficients in `F_p[π]`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SymPoly {
    terms: BTreeMap<Vec<u64>, PiPoly>,
}

impl SymPoly {
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u64>, &PiPoly)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// The flat symbolic carrier `F_p[π][x_0, …]`.
#[derive(Clone, Debug)]
pub struct SymRing {
    p: u32,
    h: u32,
    f: u32,
    nvars: usize,
}

fn pi_trim(mut a: PiPoly) -> PiPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

impl SymRing {
    pub fn new(p: u32, h: u32, f: u32, nvars: usize) -> Self {
        SymRing { p, h, f, nvars }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn var(&self, i: usize) -> SymPoly {
        self.monomial(&[(i, 1)], vec![1])
    }

    pub fn constant(&self, c: PiPoly) -> SymPoly {
        self.monomial(&[], c)
    }

    pub fn monomial(&self, exps: &[(usize, u64)], c: PiPoly) -> SymPoly {
        let c = pi_trim(c.into_iter().map(|d| d % self.p).collect());
        let mut e = vec![0u64; self.nvars];
        for &(i, k) in exps {
            e[i] += k;
        }
        let mut terms = BTreeMap::new();
        if !c.is_empty() {
            terms.insert(e, c);
        }
        SymPoly { terms }
    }

    fn pi_add(&self, a: &[u32], b: &[u32]) -> PiPoly {
        let n = a.len().max(b.len());
        pi_trim((0..n).map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % self.p).collect())
    }

    fn pi_mul(&self, a: &[u32], b: &[u32]) -> PiPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % self.p as u64;
            }
        }
        pi_trim(out.into_iter().map(|v| v as u32).collect())
    }

    fn add_term(&self, terms: &mut BTreeMap<Vec<u64>, PiPoly>, e: Vec<u64>, c: &[u32]) {
        let entry = terms.entry(e).or_default();
        *entry = self.pi_add(entry, c);
        if entry.is_empty() {
            terms.retain(|_, v| !v.is_empty());
        }
    }

    /// Substitutes `inputs[i]` for `x_i` in a carrier that can host `F_p[π]` coefficients.
    pub fn eval<C: RingCarrier>(&self, target: &C, poly: &SymPoly, inputs: &[C::Elem]) -> C::Elem {
        let mut acc = target.zero();
        for (e, c) in &poly.terms {
            let mut m = target.from_pi_poly(c);
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    m = target.mul(&m, &target.pow(&inputs[i], k));
                }
            }
            acc = target.add(&acc, &m);
        }
        acc
    }

    /// Coefficient of the monomial with exponent vector `e`.
    pub fn coeff(&self, poly: &SymPoly, e: &[u64]) -> PiPoly {
        poly.terms.get(e).cloned().unwrap_or_default()
    }
}

impl Carrier for SymRing {
    type Elem = SymPoly;

    fn zero(&self) -> SymPoly {
        SymPoly::default()
    }
    fn add(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        let mut terms = a.terms.clone();
        for (e, c) in &b.terms {
            self.add_term(&mut terms, e.clone(), c);
        }
        SymPoly { terms }
    }
    fn neg(&self, a: &SymPoly) -> SymPoly {
        let terms =
            a.terms.iter().map(|(e, c)| (e.clone(), c.iter().map(|&d| (self.p - d) % self.p).collect())).collect();
        SymPoly { terms }
    }
    fn frob_p(&self, a: &SymPoly, e: u32) -> SymPoly {
        let step = (self.p as u64).pow(e);
        let mut terms = BTreeMap::new();
        for (ex, c) in &a.terms {
            let ex: Vec<u64> = ex.iter().map(|&k| k * step).collect();
            let mut nc = vec![0u32; (c.len() - 1) * step as usize + 1];
            for (i, &d) in c.iter().enumerate() {
                nc[i * step as usize] = d;
            }
            self.add_term(&mut terms, ex, &nc);
        }
        SymPoly { terms }
    }
    fn mul_pi(&self, a: &SymPoly, k: u32) -> SymPoly {
        let terms = a
            .terms
            .iter()
            .map(|(e, c)| {
                let mut nc = vec![0u32; k as usize];
                nc.extend_from_slice(c);
                (e.clone(), nc)
            })
            .collect();
        SymPoly { terms }
    }
    fn div_pi(&self, a: &SymPoly, k: u32) -> Result<SymPoly> {
        let mut terms = BTreeMap::new();
        for (e, c) in &a.terms {
            if c.iter().take(k as usize).any(|&d| d != 0) || c.len() < k as usize {
                return Err(Error::NotDivisible { k });
            }
            terms.insert(e.clone(), c[k as usize..].to_vec());
        }
        Ok(SymPoly { terms })
    }
    fn is_zero(&self, a: &SymPoly) -> bool {
        a.terms.is_empty()
    }
    fn is_flat(&self) -> bool {
        true
    }
    fn p(&self) -> u32 {
        self.p
    }
    fn h(&self) -> u32 {
        self.h
    }
    fn f(&self) -> u32 {
        self.f
    }
}

impl RingCarrier for SymRing {
    fn one(&self) -> SymPoly {
        self.constant(vec![1])
    }
    fn mul(&self, a: &SymPoly, b: &SymPoly) -> SymPoly {
        let mut terms = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e: Vec<u64> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = self.pi_mul(ca, cb);
                self.add_term(&mut terms, e, &c);
            }
        }
        SymPoly { terms }
    }
    fn from_pi_poly(&self, digits: &[u32]) -> SymPoly {
        self.constant(digits.to_vec())
    }
}

/// A Witt vector `(x_0, …, x_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVector<E> {
    pub comps: Vec<E>,
}

impl<E> WittVector<E> {
    pub fn new(comps: Vec<E>) -> Self {
        WittVector { comps }
    }

    /// Length `n + 1` of a vector in `W_n`.
    pub fn len(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }
}

/// `W_n(C)`: Witt vectors of length `n + 1` over the carrier `C`.
pub struct WittRing<'c, C: Carrier> {
    carrier: &'c C,
    n: usize,
}

impl<'c, C: Carrier> WittRing<'c, C> {
    pub fn new(carrier: &'c C, n: usize) -> Self {
        WittRing { carrier, n }
    }

    pub fn carrier(&self) -> &C {
        self.carrier
    }

    pub fn order(&self) -> usize {
        self.n
    }

    fn check_len(&self, x: &WittVector<C::Elem>) -> Result<()> {
        if x.len() != self.n + 1 {
            return Err(Error::LengthMismatch { left: x.len(), right: self.n + 1 });
        }
        Ok(())
    }

    pub fn zero(&self) -> WittVector<C::Elem> {
        WittVector::new(vec![self.carrier.zero(); self.n + 1])
    }

    pub fn ghost(&self, x: &WittVector<C::Elem>) -> Result<Vec<C::Elem>> {
        self.check_len(x)?;
        Ok(ghost_of(self.carrier, &x.comps))
    }

    pub fn unghost(&self, w: &[C::Elem]) -> Result<WittVector<C::Elem>> {
        if w.len() != self.n + 1 {
            return Err(Error::LengthMismatch { left: w.len(), right: self.n + 1 });
        }
        unghost_of(self.carrier, w).map(WittVector::new)
    }

    pub fn add(&self, x: &WittVector<C::Elem>, y: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(WittVector::new(x.comps.iter().zip(&y.comps).map(|(a, b)| self.carrier.add(a, b)).collect()))
    }

    pub fn neg(&self, x: &WittVector<C::Elem>) -> WittVector<C::Elem> {
        WittVector::new(x.comps.iter().map(|a| self.carrier.neg(a)).collect())
    }

    pub fn sub(&self, x: &WittVector<C::Elem>, y: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        self.add(x, &self.neg(y))
    }

    /// `F : W_n → W_{n-1}` through the ghost map.
    pub fn frobenius(&self, x: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        if self.n == 0 {
            return Err(Error::LengthMismatch { left: 1, right: 2 });
        }
        let w = self.ghost(x)?;
        WittRing::new(self.carrier, self.n - 1).unghost(&w[1..])
    }

    /// `V : W_n → W_{n+1}`, `(x_0, …) ↦ (0, x_0, …)`.
    pub fn verschiebung(&self, x: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        self.check_len(x)?;
        let mut comps = vec![self.carrier.zero()];
        comps.extend(x.comps.iter().cloned());
        Ok(WittVector::new(comps))
    }

    pub fn truncate(&self, x: &WittVector<C::Elem>, m: usize) -> WittVector<C::Elem> {
        WittVector::new(x.comps.iter().take(m + 1).cloned().collect())
    }

    pub fn teichmuller(&self, a: &C::Elem) -> WittVector<C::Elem> {
        let mut comps = vec![self.carrier.zero(); self.n + 1];
        comps[0] = a.clone();
        WittVector::new(comps)
    }
}

impl<C: RingCarrier> WittRing<'_, C> {
    pub fn one(&self) -> WittVector<C::Elem> {
        self.teichmuller(&self.carrier.one())
    }

    /// Product through the ghost map.
    pub fn mul_ghost(&self, x: &WittVector<C::Elem>, y: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        let (wx, wy) = (self.ghost(x)?, self.ghost(y)?);
        let w: Vec<_> = wx.iter().zip(&wy).map(|(a, b)| self.carrier.mul(a, b)).collect();
        self.unghost(&w)
    }

    /// Product by evaluating the cached universal product polynomials.
    pub fn mul(&self, x: &WittVector<C::Elem>, y: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        self.check_len(x)?;
        self.check_len(y)?;
        let c = self.carrier;
        let uni = universal_polys(c.p(), c.h() * c.f(), self.n);
        let sym = SymRing::new(c.p(), c.h() * c.f(), 1, 2 * (self.n + 1));
        let inputs: Vec<_> = x.comps.iter().chain(&y.comps).cloned().collect();
        Ok(WittVector::new(uni.product.iter().map(|p| sym.eval(c, p, &inputs)).collect()))
    }

    /// `F` by evaluating the cached universal Frobenius polynomials.
    pub fn frobenius_universal(&self, x: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        self.check_len(x)?;
        if self.n == 0 {
            return Err(Error::LengthMismatch { left: 1, right: 2 });
        }
        let c = self.carrier;
        let uni = universal_polys(c.p(), c.h() * c.f(), self.n);
        let sym = SymRing::new(c.p(), c.h() * c.f(), 1, self.n + 1);
        Ok(WittVector::new(uni.frobenius.iter().map(|p| sym.eval(c, p, &x.comps)).collect()))
    }
}

impl<C: ScalarCarrier> WittRing<'_, C> {
    /// `r · x` for the `R`-algebra structure: ghost component `i` is multiplied by `φ^i(r)`.
    pub fn scale(&self, r: &LocalElem, x: &WittVector<C::Elem>) -> Result<WittVector<C::Elem>> {
        let w = self.ghost(x)?;
        let ring = self.carrier.local();
        let w: Vec<_> =
            w.iter().enumerate().map(|(i, wi)| self.carrier.scale(&ring.phi_pow(r, i as u32), wi)).collect();
        self.unghost(&w)
    }
}

impl WittRing<'_, LocalRing> {
    /// The structure map `R → W_n(R)`, with ghost vector `(r, φ r, φ² r, …)`.
    pub fn scalar_embed(&self, r: &LocalElem) -> Result<WittVector<LocalElem>> {
        let ring = self.carrier;
        let w: Vec<_> = (0..=self.n).map(|i| ring.phi_pow(r, i as u32)).collect();
        self.unghost(&w)
    }
}

pub(crate) fn ghost_of<C: Carrier>(c: &C, x: &[C::Elem]) -> Vec<C::Elem> {
    (0..x.len())
        .map(|i| {
            let mut acc = c.zero();
            for (k, xk) in x.iter().enumerate().take(i + 1) {
                acc = c.add(&acc, &c.mul_pi(&c.pow_qhat(xk, (i - k) as u32), k as u32));
            }
            acc
        })
        .collect()
}

pub(crate) fn unghost_of<C: Carrier>(c: &C, w: &[C::Elem]) -> Result<Vec<C::Elem>> {
    let mut x: Vec<C::Elem> = Vec::with_capacity(w.len());
    for (i, wi) in w.iter().enumerate() {
        let mut acc = wi.clone();
        for (k, xk) in x.iter().enumerate() {
            acc = c.sub(&acc, &c.mul_pi(&c.pow_qhat(xk, (i - k) as u32), k as u32));
        }
        let xi = c.div_pi(&acc, i as u32).map_err(|e| match e {
            Error::NotDivisible { .. } => Error::NotInGhostImage,
            Error::InsufficientPrecision { .. } => Error::PrecisionExhausted(format!("unghosting component {i}")),
            other => other,
        })?;
        x.push(xi);
    }
    Ok(x)
}

/// Universal product and Frobenius polynomials for `W_n` over `F_p[π]`.
#[derive(Debug)]
pub struct UniversalPolys {
    /// `P_i(x_0..x_n, y_0..y_n)`.
    pub product: Vec<SymPoly>,
    /// `F_i(x_0..x_n)` for `i < n`.
    pub frobenius: Vec<SymPoly>,
}

type CacheKey = (u32, u32, usize);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<UniversalPolys>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<UniversalPolys>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Cached universal polynomials for `q̂ = p^e` and length `n + 1`.
pub fn universal_polys(p: u32, e: u32, n: usize) -> Arc<UniversalPolys> {
    let key = (p, e, n);
    if let Some(u) = cache().read().expect("cache lock").get(&key) {
        return u.clone();
    }
    let computed = Arc::new(compute_universal(p, e, n));
    cache().write().expect("cache lock").entry(key).or_insert(computed).clone()
}

fn compute_universal(p: u32, e: u32, n: usize) -> UniversalPolys {
    let sym = SymRing::new(p, e, 1, 2 * (n + 1));
    let x: Vec<_> = (0..=n).map(|i| sym.var(i)).collect();
    let y: Vec<_> = (0..=n).map(|i| sym.var(n + 1 + i)).collect();
    let (wx, wy) = (ghost_of(&sym, &x), ghost_of(&sym, &y));
    let w: Vec<_> = wx.iter().zip(&wy).map(|(a, b)| sym.mul(a, b)).collect();
    let product = unghost_of(&sym, &w).expect("universal product polynomials are integral");

    let sym1 = SymRing::new(p, e, 1, n + 1);
    let x1: Vec<_> = (0..=n).map(|i| sym1.var(i)).collect();
    let w1 = ghost_of(&sym1, &x1);
    let frobenius = if n == 0 { Vec::new() } else { unghost_of(&sym1, &w1[1..]).expect("F is integral") };
    UniversalPolys { product, frobenius }
}

/// Coefficients `c_0 = π, c_1, …, c_n` with `(FV - VF)(x) = (c_0 x_0, c_1 x_0^q̂, …, c_n x_0^(q̂^n))`.
pub fn fv_minus_vf_form(p: u32, h: u32, f: u32, n: usize) -> Result<Vec<PiPoly>> {
    let sym = SymRing::new(p, h, f, n + 1);
    let x: Vec<_> = (0..=n).map(|i| sym.var(i)).collect();
    let wn = WittRing::new(&sym, n);
    let xv = WittVector::new(x);
    let v = wn.verschiebung(&xv)?;
    let fv = WittRing::new(&sym, n + 1).frobenius(&v)?;
    let vf = if n == 0 { wn.zero() } else { WittRing::new(&sym, n - 1).verschiebung(&wn.frobenius(&xv)?)? };
    let d = wn.sub(&fv, &vf)?;
    let qhat = (p as u64).pow(h * f);
    let mut out = Vec::with_capacity(n + 1);
    for (j, comp) in d.comps.iter().enumerate() {
        let mut e = vec![0u64; n + 1];
        e[0] = qhat.pow(j as u32);
        let c = sym.coeff(comp, &e);
        if comp.len() > usize::from(!c.is_empty()) {
            return Err(Error::ConsistencyFailure(format!("component {j} of FV - VF is not a single x_0 monomial")));
        }
        out.push(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, FiniteField};

    #[test]
    fn first_product_polynomial() {
        // q̂ = 3: P_1 = x0^3 y1 + x1 y0^3 + π x1 y1
        let u = universal_polys(3, 1, 1);
        let sym = SymRing::new(3, 1, 1, 4);
        let p1 = &u.product[1];
        assert_eq!(p1.len(), 3);
        assert_eq!(sym.coeff(p1, &[3, 0, 0, 1]), vec![1]);
        assert_eq!(sym.coeff(p1, &[0, 1, 3, 0]), vec![1]);
        assert_eq!(sym.coeff(p1, &[0, 1, 0, 1]), vec![0, 1]);
    }

    #[test]
    fn fv_minus_vf_first_coefficient() {
        // c_1 = -π^(q̂-1)
        let c = fv_minus_vf_form(3, 1, 2, 1).unwrap();
        assert_eq!(c[0], vec![0, 1]);
        let mut expect = vec![0u32; 9];
        expect[8] = 2;
        assert_eq!(c[1], expect);
    }

    #[test]
    fn mul_routes_agree_on_local_ring() {
        let k = FiniteField::new(FieldSpec { p: 3, h: 1, f: 1, s: 1, modulus: vec![0, 1] }).unwrap();
        let r = LocalRing::new(Arc::new(k), 12);
        let w = WittRing::new(&r, 2);
        let x = WittVector::new(vec![r.from_int(1), r.pi(), r.from_int(2)]);
        let y = WittVector::new(vec![r.from_int(2), r.from_int(1), r.pi_pow(2)]);
        let a = w.mul(&x, &y).unwrap();
        let b = w.mul_ghost(&x, &y).unwrap();
        for (u, v) in a.comps.iter().zip(&b.comps) {
            assert!(r.agrees(u, v));
        }
    }
}

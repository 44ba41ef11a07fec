//! Finite fields `F_{p^d}` with Zech-logarithm tables.
//!
//! Elements are stored as `FFElem(0)` for zero and `FFElem(k + 1)` for `g^k`,
//! where `g` is a primitive element found at construction time. Coordinates in
//! the power basis of the declared modulus are available through
//! [`FiniteField::coords`] and [`FiniteField::from_coords`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MAX_FIELD_SIZE: u64 = 1 << 22;

/// Parameters of the base data: `q = p^h`, `q̂ = q^f`, residue field `F_{q̂^s}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub p: u32,
    pub h: u32,
    pub f: u32,
    pub s: u32,
    /// Little-endian digits of a monic irreducible polynomial of degree `h*f*s` over `F_p`.
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.h)
    }

    pub fn qhat(&self) -> u64 {
        self.q().pow(self.f)
    }

    pub fn degree(&self) -> u32 {
        self.h * self.f * self.s
    }

    /// Builds a spec with the lexicographically first irreducible modulus.
    pub fn with_default_modulus(p: u32, h: u32, f: u32, s: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let d = h * f * s;
        let modulus =
            first_irreducible(p, d).ok_or_else(|| Error::InvalidField(format!("no irreducible of degree {d}")))?;
        Ok(FieldSpec { p, h, f, s, modulus })
    }

    pub fn validate(&self) -> Result<()> {
        if !is_prime(self.p) {
            return Err(Error::InvalidField(format!("{} is not prime", self.p)));
        }
        if self.h == 0 || self.f == 0 || self.s == 0 {
            return Err(Error::InvalidField("h, f and s must be positive".into()));
        }
        if self.q() < 3 {
            return Err(Error::InvalidField("q must be at least 3".into()));
        }
        let d = self.degree() as usize;
        let size = (self.p as u64).checked_pow(d as u32).unwrap_or(u64::MAX);
        if size > MAX_FIELD_SIZE {
            return Err(Error::InvalidField(format!("field of size {size} is too large")));
        }
        if self.modulus.len() != d + 1 {
            return Err(Error::InvalidField(format!(
                "modulus has degree {} but h*f*s = {d}",
                self.modulus.len() as i64 - 1
            )));
        }
        if self.modulus.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidField("modulus digit out of range".into()));
        }
        if self.modulus[d] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(self.p, &self.modulus) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        Ok(())
    }
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// Dense polynomials over F_p, little-endian, used only while building tables.

fn trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn poly_rem(p: u32, a: &[u32], m: &[u32]) -> Vec<u32> {
    let mut r = trim(a.to_vec());
    let m = trim(m.to_vec());
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let k = r.len() - 1 - dm;
        let c = (r[r.len() - 1] as u64 * lead_inv as u64 % p as u64) as u32;
        for (i, &mi) in m.iter().enumerate() {
            let sub = (c as u64 * mi as u64 % p as u64) as u32;
            r[k + i] = (r[k + i] + p - sub) % p;
        }
        r = trim(r);
    }
    r
}

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn is_irreducible(p: u32, m: &[u32]) -> bool {
    let d = m.len() - 1;
    if d == 1 {
        return true;
    }
    for deg in 1..=d / 2 {
        let count = (p as u64).pow(deg as u32);
        for idx in 0..count {
            let mut g = vec![0u32; deg + 1];
            let mut t = idx;
            for c in g.iter_mut().take(deg) {
                *c = (t % p as u64) as u32;
                t /= p as u64;
            }
            g[deg] = 1;
            if poly_rem(p, m, &g).is_empty() {
                return false;
            }
        }
    }
    true
}

fn first_irreducible(p: u32, d: u32) -> Option<Vec<u32>> {
    let d = d as usize;
    let count = (p as u64).checked_pow(d as u32)?;
    for idx in 0..count {
        let mut g = vec![0u32; d + 1];
        let mut t = idx;
        for c in g.iter_mut().take(d) {
            *c = (t % p as u64) as u32;
            t /= p as u64;
        }
        g[d] = 1;
        if is_irreducible(p, &g) {
            return Some(g);
        }
    }
    None
}

/// An element of a [`FiniteField`]; `0` is zero and `k + 1` is `g^k`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FFElem(pub(crate) u32);

impl FFElem {
    pub const ZERO: FFElem = FFElem(0);
    pub const ONE: FFElem = FFElem(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
pub struct FiniteField {
    spec: FieldSpec,
    degree: u32,
    size: u32,
    order: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
    neg_one_log: u32,
}

impl FiniteField {
    pub fn new(spec: FieldSpec) -> Result<Self> {
        spec.validate()?;
        let p = spec.p;
        let d = spec.degree();
        let size = p.pow(d);
        let order = size - 1;
        let digits = |mut v: u32| {
            let mut out = vec![0u32; d as usize];
            for c in out.iter_mut() {
                *c = v % p;
                v /= p;
            }
            out
        };
        let pack = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &x| acc * p + x);
        let mulmod = |a: u32, b: u32| -> u32 {
            let (da, db) = (digits(a), digits(b));
            let mut prod = vec![0u32; 2 * d as usize];
            for (i, &x) in da.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (j, &y) in db.iter().enumerate() {
                    prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % p as u64) as u32;
                }
            }
            let mut r = poly_rem(p, &prod, &spec.modulus);
            r.resize(d as usize, 0);
            pack(&r)
        };

        let mut exp = vec![0u32; order as usize];
        let mut found = false;
        'search: for g in 2..size.max(3) {
            let g = if size == p { g % p } else { g };
            if g == 0 {
                continue;
            }
            let mut x = 1u32;
            for (k, slot) in exp.iter_mut().enumerate() {
                *slot = x;
                if k > 0 && x == 1 {
                    continue 'search;
                }
                x = mulmod(x, g);
            }
            if x == 1 {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::InvalidField("no primitive element found".into()));
        }
        let mut log = vec![u32::MAX; size as usize];
        for (k, &v) in exp.iter().enumerate() {
            log[v as usize] = k as u32;
        }
        let add_packed = |a: u32, b: u32| {
            let (da, db) = (digits(a), digits(b));
            let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
            pack(&s)
        };
        let zech = exp
            .iter()
            .map(|&v| {
                let w = add_packed(v, 1);
                if w == 0 {
                    u32::MAX
                } else {
                    log[w as usize]
                }
            })
            .collect();
        let neg_one_log = if p == 2 { 0 } else { order / 2 };
        Ok(FiniteField { degree: d, size, order, exp, log, zech, neg_one_log, spec })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn characteristic(&self) -> u32 {
        self.spec.p
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn zero(&self) -> FFElem {
        FFElem::ZERO
    }

    pub fn one(&self) -> FFElem {
        FFElem::ONE
    }

    pub fn generator(&self) -> FFElem {
        FFElem(2)
    }

    /// Element with base-`p` digits `v` (little-endian). Panics unless `v < size()`.
    pub fn from_packed(&self, v: u32) -> FFElem {
        if v == 0 {
            FFElem::ZERO
        } else {
            FFElem(self.log[v as usize] + 1)
        }
    }

    pub fn packed(&self, a: FFElem) -> u32 {
        if a.is_zero() {
            0
        } else {
            self.exp[(a.0 - 1) as usize]
        }
    }

    pub fn from_int(&self, n: i64) -> FFElem {
        let p = self.spec.p as i64;
        self.from_packed(n.rem_euclid(p) as u32)
    }

    pub fn from_coords(&self, c: &[u32]) -> Result<FFElem> {
        if c.len() > self.degree as usize {
            return Err(Error::Encoding(format!("{} digits for a degree {} field", c.len(), self.degree)));
        }
        if let Some(&bad) = c.iter().find(|&&x| x >= self.spec.p) {
            return Err(Error::Encoding(format!("digit {bad} out of range")));
        }
        let v = c.iter().rev().fold(0u32, |acc, &x| acc * self.spec.p + x);
        Ok(self.from_packed(v))
    }

    pub fn coords(&self, a: FFElem) -> Vec<u32> {
        let mut v = self.packed(a);
        (0..self.degree)
            .map(|_| {
                let c = v % self.spec.p;
                v /= self.spec.p;
                c
            })
            .collect()
    }

    pub fn add(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let (la, lb) = (a.0 - 1, b.0 - 1);
        let diff = if lb >= la { lb - la } else { lb + self.order - la };
        let z = self.zech[diff as usize];
        if z == u32::MAX {
            FFElem::ZERO
        } else {
            FFElem(((la as u64 + z as u64) % self.order as u64) as u32 + 1)
        }
    }

    pub fn neg(&self, a: FFElem) -> FFElem {
        if a.is_zero() {
            a
        } else {
            FFElem(((a.0 - 1 + self.neg_one_log) % self.order) + 1)
        }
    }

    pub fn sub(&self, a: FFElem, b: FFElem) -> FFElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FFElem, b: FFElem) -> FFElem {
        if a.is_zero() || b.is_zero() {
            return FFElem::ZERO;
        }
        FFElem(((a.0 - 1 + b.0 - 1) % self.order) + 1)
    }

    pub fn inv(&self, a: FFElem) -> Result<FFElem> {
        if a.is_zero() {
            return Err(Error::NotAUnit);
        }
        Ok(FFElem((self.order - (a.0 - 1)) % self.order + 1))
    }

    pub fn div(&self, a: FFElem, b: FFElem) -> Result<FFElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FFElem, e: u128) -> FFElem {
        if e == 0 {
            return FFElem::ONE;
        }
        if a.is_zero() {
            return FFElem::ZERO;
        }
        let l = ((a.0 - 1) as u128 * (e % self.order as u128)) % self.order as u128;
        FFElem(l as u32 + 1)
    }

    /// `a^(p^k)`.
    pub fn frob_p(&self, a: FFElem, k: u64) -> FFElem {
        if a.is_zero() {
            return a;
        }
        let m = pow_mod(self.spec.p as u64, k, self.order as u64);
        FFElem((((a.0 - 1) as u64 * m) % self.order as u64) as u32 + 1)
    }

    /// `a^(q^k)` with `q = p^h`.
    pub fn frob_q(&self, a: FFElem, k: u64) -> FFElem {
        self.frob_p(a, k * self.spec.h as u64)
    }

    /// `a^(q̂^k)`.
    pub fn frob_qhat(&self, a: FFElem, k: u64) -> FFElem {
        self.frob_p(a, k * (self.spec.h * self.spec.f) as u64)
    }

    /// True if `a` lies in the subfield `F_{p^e}`.
    pub fn in_subfield(&self, a: FFElem, e: u32) -> bool {
        self.frob_p(a, e as u64) == a
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FFElem {
        self.from_packed(rng.gen_range(0..self.size))
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> FFElem {
        FFElem(rng.gen_range(1..=self.order))
    }

    /// All elements of `F_{p^e}` (which must divide the field degree).
    pub fn subfield_elements(&self, e: u32) -> Vec<FFElem> {
        let mut out = vec![FFElem::ZERO];
        let sub_order = self.spec.p.pow(e) - 1;
        let step = self.order / sub_order;
        for k in 0..sub_order {
            out.push(FFElem(k * step + 1));
        }
        out
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut r = 1u128;
    let mut b = (b % m) as u128;
    let m = m as u128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f9() -> FiniteField {
        FiniteField::new(FieldSpec { p: 3, h: 1, f: 2, s: 1, modulus: vec![1, 0, 1] }).unwrap()
    }

    #[test]
    fn rejects_reducible_modulus() {
        let spec = FieldSpec { p: 3, h: 1, f: 2, s: 1, modulus: vec![2, 0, 1] };
        assert!(matches!(FiniteField::new(spec), Err(Error::InvalidField(_))));
    }

    #[test]
    fn rejects_q_two() {
        let spec = FieldSpec { p: 2, h: 1, f: 1, s: 1, modulus: vec![0, 1] };
        assert!(spec.validate().is_err());
    }

    #[test]
    fn i_squared_is_minus_one() {
        let k = f9();
        let i = k.from_coords(&[0, 1]).unwrap();
        assert_eq!(k.mul(i, i), k.from_int(-1));
        assert_eq!(k.coords(k.add(i, k.one())), vec![1, 1]);
    }

    #[test]
    fn packed_roundtrip() {
        let k = f9();
        for v in 0..9 {
            assert_eq!(k.packed(k.from_packed(v)), v);
        }
    }

    #[test]
    fn frobenius_fixes_prime_field() {
        let k = f9();
        for n in 0..3 {
            let a = k.from_int(n);
            assert_eq!(k.frob_p(a, 1), a);
        }
        assert_eq!(k.subfield_elements(1).len(), 3);
        assert_eq!(k.subfield_elements(2).len(), 9);
    }

    #[test]
    fn default_modulus_quartic() {
        let spec = FieldSpec::with_default_modulus(3, 1, 2, 2).unwrap();
        assert_eq!(spec.modulus.len(), 5);
        let k = FiniteField::new(spec).unwrap();
        assert_eq!(k.size(), 81);
    }
}

//! Truncated power series `R = F_{q̂^s}[[π]]/π^N` with per-element precision.
//!
//! A [`LocalElem`] stores exactly `known_prec` coefficients: the element is
//! determined modulo `π^known_prec`, and `known_prec <= N` always holds.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FFElem, FiniteField};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LocalElem {
    coeffs: Vec<FFElem>,
}

impl LocalElem {
    /// Absolute precision: the element is known modulo `π^known_prec`.
    pub fn known_prec(&self) -> u32 {
        self.coeffs.len() as u32
    }

    pub fn coeffs(&self) -> &[FFElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FFElem {
        self.coeffs.get(i).copied().unwrap_or(FFElem::ZERO)
    }

    /// Index of the first nonzero coefficient, or `known_prec` if none is known.
    pub fn valuation(&self) -> u32 {
        self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(self.coeffs.len()) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_unit(&self) -> bool {
        self.coeffs.first().is_some_and(|c| !c.is_zero())
    }

    pub fn residue(&self) -> FFElem {
        self.coeff(0)
    }

    /// Drops precision to at most `prec`.
    pub fn truncated(mut self, prec: u32) -> LocalElem {
        self.coeffs.truncate(prec as usize);
        self
    }
}

/// The ring `F_{q̂^s}[[π]]/π^N` together with the Frobenius data.
#[derive(Clone, Debug)]
pub struct LocalRing {
    field: Arc<FiniteField>,
    n: u32,
}

impl LocalRing {
    pub fn new(field: Arc<FiniteField>, n: u32) -> Self {
        assert!(n >= 1, "precision must be positive");
        LocalRing { field, n }
    }

    /// Same residue field, different absolute precision.
    pub fn with_precision(&self, n: u32) -> LocalRing {
        LocalRing::new(self.field.clone(), n)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn field_arc(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn precision(&self) -> u32 {
        self.n
    }

    pub fn h(&self) -> u32 {
        self.field.spec().h
    }

    pub fn f(&self) -> u32 {
        self.field.spec().f
    }

    pub fn p(&self) -> u32 {
        self.field.spec().p
    }

    pub fn zero(&self) -> LocalElem {
        LocalElem { coeffs: vec![FFElem::ZERO; self.n as usize] }
    }

    pub fn one(&self) -> LocalElem {
        self.constant(FFElem::ONE)
    }

    pub fn pi(&self) -> LocalElem {
        self.pi_pow(1)
    }

    pub fn pi_pow(&self, k: u32) -> LocalElem {
        let mut z = self.zero();
        if k < self.n {
            z.coeffs[k as usize] = FFElem::ONE;
        }
        z
    }

    pub fn constant(&self, c: FFElem) -> LocalElem {
        let mut z = self.zero();
        z.coeffs[0] = c;
        z
    }

    pub fn from_int(&self, k: i64) -> LocalElem {
        self.constant(self.field.from_int(k))
    }

    /// Exact element from a coefficient list (truncated to `N`).
    pub fn from_coeffs(&self, c: &[FFElem]) -> LocalElem {
        let mut z = self.zero();
        for (slot, &x) in z.coeffs.iter_mut().zip(c) {
            *slot = x;
        }
        z
    }

    /// Element known only modulo `π^prec`.
    pub fn from_coeffs_prec(&self, c: &[FFElem], prec: u32) -> LocalElem {
        self.from_coeffs(c).truncated(prec)
    }

    /// Re-embeds an element of another ring with the same residue field.
    pub fn coerce(&self, x: &LocalElem) -> LocalElem {
        let prec = x.known_prec().min(self.n);
        LocalElem { coeffs: x.coeffs[..prec as usize].to_vec() }
    }

    pub fn add(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        let k = &self.field;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| k.add(x, y)).collect();
        LocalElem { coeffs }
    }

    pub fn sub(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        let k = &self.field;
        let coeffs = a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| k.sub(x, y)).collect();
        LocalElem { coeffs }
    }

    pub fn neg(&self, a: &LocalElem) -> LocalElem {
        LocalElem { coeffs: a.coeffs.iter().map(|&x| self.field.neg(x)).collect() }
    }

    pub fn scale(&self, c: FFElem, a: &LocalElem) -> LocalElem {
        LocalElem { coeffs: a.coeffs.iter().map(|&x| self.field.mul(c, x)).collect() }
    }

    pub fn mul(&self, a: &LocalElem, b: &LocalElem) -> LocalElem {
        let (pa, pb) = (a.known_prec(), b.known_prec());
        let (va, vb) = (a.valuation(), b.valuation());
        let prec = (pa + vb).min(pb + va).min(self.n) as usize;
        let k = &self.field;
        let mut out = vec![FFElem::ZERO; prec];
        for (i, &x) in a.coeffs.iter().enumerate().skip(va as usize) {
            if i >= prec {
                break;
            }
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate().skip(vb as usize) {
                if i + j >= prec {
                    break;
                }
                if !y.is_zero() {
                    out[i + j] = k.add(out[i + j], k.mul(x, y));
                }
            }
        }
        LocalElem { coeffs: out }
    }

    pub fn mul_pi(&self, a: &LocalElem, k: u32) -> LocalElem {
        let prec = (a.known_prec() + k).min(self.n) as usize;
        let mut coeffs = vec![FFElem::ZERO; prec];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if i + (k as usize) < prec {
                coeffs[i + k as usize] = x;
            }
        }
        LocalElem { coeffs }
    }

    /// Exact division by `π^k`; the result loses `k` digits of precision.
    pub fn div_pi(&self, a: &LocalElem, k: u32) -> Result<LocalElem> {
        if k == 0 {
            return Ok(a.clone());
        }
        if a.known_prec() < k {
            return Err(Error::InsufficientPrecision { needed: k, available: a.known_prec() });
        }
        if a.coeffs[..k as usize].iter().any(|c| !c.is_zero()) {
            return Err(Error::NotDivisible { k });
        }
        Ok(LocalElem { coeffs: a.coeffs[k as usize..].to_vec() })
    }

    pub fn inv(&self, a: &LocalElem) -> Result<LocalElem> {
        if !a.is_unit() {
            return Err(Error::NotAUnit);
        }
        let k = &self.field;
        let prec = a.known_prec() as usize;
        let c0 = k.inv(a.coeffs[0])?;
        let mut y = vec![FFElem::ZERO; prec];
        y[0] = c0;
        for m in 1..prec {
            let mut s = FFElem::ZERO;
            for i in 1..=m {
                s = k.add(s, k.mul(a.coeffs[i], y[m - i]));
            }
            y[m] = k.neg(k.mul(c0, s));
        }
        Ok(LocalElem { coeffs: y })
    }

    pub fn div(&self, a: &LocalElem, b: &LocalElem) -> Result<LocalElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// `a^(p^e)`: coefficients go to `c^(p^e)` placed at `π^(i p^e)`.
    pub fn frob_p(&self, a: &LocalElem, e: u32) -> LocalElem {
        if e == 0 {
            return a.clone();
        }
        let step = (self.p() as u64).saturating_pow(e);
        let prec = (a.known_prec() as u64).saturating_mul(step).min(self.n as u64) as usize;
        let mut coeffs = vec![FFElem::ZERO; prec];
        for (i, &c) in a.coeffs.iter().enumerate() {
            let pos = (i as u64).saturating_mul(step);
            if pos >= prec as u64 {
                break;
            }
            coeffs[pos as usize] = self.field.frob_p(c, e as u64);
        }
        LocalElem { coeffs }
    }

    /// `a^(q^j)`.
    pub fn pow_q(&self, a: &LocalElem, j: u32) -> LocalElem {
        self.frob_p(a, j * self.h())
    }

    /// `a^(q̂^j)`.
    pub fn pow_qhat(&self, a: &LocalElem, j: u32) -> LocalElem {
        self.frob_p(a, j * self.h() * self.f())
    }

    pub fn pow(&self, a: &LocalElem, mut e: u128) -> LocalElem {
        let p = self.p() as u128;
        let mut pe = 0u32;
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

    /// The lift of Frobenius `φ`: raises coefficients to the `q̂`-th power, fixes `π`.
    pub fn phi(&self, a: &LocalElem) -> LocalElem {
        self.phi_pow(a, 1)
    }

    pub fn phi_pow(&self, a: &LocalElem, k: u32) -> LocalElem {
        let e = (k * self.h() * self.f()) as u64;
        LocalElem { coeffs: a.coeffs.iter().map(|&c| self.field.frob_p(c, e)).collect() }
    }

    /// `δ(x) = (φ(x) - x^q̂)/π`.
    pub fn delta(&self, a: &LocalElem) -> LocalElem {
        let d = self.sub(&self.phi(a), &self.pow_qhat(a, 1));
        self.div_pi(&d, 1).expect("phi(x) - x^qhat is divisible by pi")
    }

    /// Agreement of `a` and `b` modulo `π^min(prec)`.
    pub fn agrees(&self, a: &LocalElem, b: &LocalElem) -> bool {
        a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| x == y)
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> LocalElem {
        LocalElem { coeffs: (0..self.n).map(|_| self.field.random(rng)).collect() }
    }

    pub fn random_unit<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> LocalElem {
        let mut x = self.random(rng);
        x.coeffs[0] = self.field.random_nonzero(rng);
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    fn ring(n: u32) -> LocalRing {
        let k = FiniteField::new(FieldSpec { p: 3, h: 1, f: 2, s: 1, modulus: vec![1, 0, 1] }).unwrap();
        LocalRing::new(Arc::new(k), n)
    }

    #[test]
    fn mul_precision_rule() {
        let r = ring(10);
        let a = r.pi_pow(2).truncated(5);
        let b = r.one().truncated(4);
        let c = r.mul(&a, &b);
        assert_eq!(c.known_prec(), 5);
    }

    #[test]
    fn delta_of_pi() {
        let r = ring(12);
        let d = r.delta(&r.pi());
        let expect = r.sub(&r.one(), &r.pi_pow(8));
        assert!(r.agrees(&d, &expect));
        assert_eq!(d.known_prec(), 11);
    }

    #[test]
    fn inverse_roundtrip() {
        let r = ring(8);
        let x = r.add(&r.from_int(2), &r.pi());
        let y = r.inv(&x).unwrap();
        assert!(r.agrees(&r.mul(&x, &y), &r.one()));
        assert_eq!(r.inv(&r.pi()), Err(Error::NotAUnit));
    }

    #[test]
    fn div_pi_errors() {
        let r = ring(8);
        assert_eq!(r.div_pi(&r.one(), 1), Err(Error::NotDivisible { k: 1 }));
        let x = r.pi_pow(3);
        assert!(r.agrees(&r.div_pi(&x, 2).unwrap(), &r.pi()));
    }
}

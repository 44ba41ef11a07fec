//! Elements of the fraction field `K = F_{q̂^s}((π))` known to an absolute precision.

use crate::error::{Error, Result};
use crate::field::FFElem;
use crate::local::{LocalElem, LocalRing};

/// `Σ coeffs[i] π^(lo + i)`, known modulo `π^prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElem {
    lo: i64,
    coeffs: Vec<FFElem>,
    prec: i64,
}

impl KElem {
    pub fn zero(prec: i64) -> KElem {
        KElem { lo: prec, coeffs: Vec::new(), prec }
    }

    pub fn from_local(x: &LocalElem) -> KElem {
        KElem { lo: 0, coeffs: x.coeffs().to_vec(), prec: x.known_prec() as i64 }.normalized()
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Valuation, or `prec` if the element is zero to known precision.
    pub fn valuation(&self) -> i64 {
        self.lo
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i64) -> FFElem {
        if e < self.lo {
            return FFElem::ZERO;
        }
        self.coeffs.get((e - self.lo) as usize).copied().unwrap_or(FFElem::ZERO)
    }

    fn normalized(mut self) -> KElem {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => KElem::zero(self.prec),
            Some(k) => {
                self.coeffs.drain(..k);
                self.lo += k as i64;
                let keep = (self.prec - self.lo).max(0) as usize;
                self.coeffs.truncate(keep);
                self
            }
        }
    }

    pub fn from_coeffs(lo: i64, coeffs: Vec<FFElem>, prec: i64) -> KElem {
        KElem::from_parts(lo, coeffs, prec)
    }

    fn from_parts(lo: i64, coeffs: Vec<FFElem>, prec: i64) -> KElem {
        KElem { lo, coeffs, prec }.normalized()
    }

    /// Converts to `R` if the valuation is non-negative.
    pub fn to_local(&self, ring: &LocalRing) -> Result<LocalElem> {
        if !self.is_zero() && self.lo < 0 {
            return Err(Error::IntegralityFailure(format!("valuation {} is negative", self.lo)));
        }
        if self.prec < 0 {
            return Err(Error::PrecisionExhausted("converting to R".into()));
        }
        let prec = (self.prec as u32).min(ring.precision());
        let c: Vec<FFElem> = (0..prec as i64).map(|e| self.coeff(e)).collect();
        Ok(ring.from_coeffs_prec(&c, prec))
    }
}

/// Arithmetic on [`KElem`] over the residue field of a [`LocalRing`].
pub struct KField<'a> {
    ring: &'a LocalRing,
}

impl<'a> KField<'a> {
    pub fn new(ring: &'a LocalRing) -> Self {
        KField { ring }
    }

    pub fn one(&self, prec: i64) -> KElem {
        KElem::from_parts(0, vec![FFElem::ONE], prec)
    }

    pub fn constant(&self, c: FFElem, prec: i64) -> KElem {
        KElem::from_parts(0, vec![c], prec)
    }

    pub fn pi_pow(&self, k: i64, prec: i64) -> KElem {
        KElem::from_parts(k, vec![FFElem::ONE], prec)
    }

    pub fn add(&self, a: &KElem, b: &KElem) -> KElem {
        let k = self.ring.field();
        let prec = a.prec.min(b.prec);
        let lo = a.lo.min(b.lo).min(prec);
        let c = (lo..prec).map(|e| k.add(a.coeff(e), b.coeff(e))).collect();
        KElem::from_parts(lo, c, prec)
    }

    pub fn neg(&self, a: &KElem) -> KElem {
        let k = self.ring.field();
        KElem { lo: a.lo, coeffs: a.coeffs.iter().map(|&c| k.neg(c)).collect(), prec: a.prec }
    }

    pub fn sub(&self, a: &KElem, b: &KElem) -> KElem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &KElem, b: &KElem) -> KElem {
        let k = self.ring.field();
        let prec = (a.prec + b.lo).min(b.prec + a.lo);
        let lo = a.lo + b.lo;
        if lo >= prec {
            return KElem::zero(prec);
        }
        let len = (prec - lo) as usize;
        let mut out = vec![FFElem::ZERO; len];
        for (i, &x) in a.coeffs.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate().take(len - i) {
                out[i + j] = k.add(out[i + j], k.mul(x, y));
            }
        }
        KElem::from_parts(lo, out, prec)
    }

    pub fn inv(&self, a: &KElem) -> Result<KElem> {
        if a.is_zero() {
            return Err(Error::PrecisionTooLowToCertify("inverse of an element zero to known precision".into()));
        }
        let k = self.ring.field();
        let rel = (a.prec - a.lo) as usize;
        let c0 = k.inv(a.coeffs[0])?;
        let mut y = vec![FFElem::ZERO; rel];
        y[0] = c0;
        for m in 1..rel {
            let mut s = FFElem::ZERO;
            for i in 1..=m.min(a.coeffs.len() - 1) {
                s = k.add(s, k.mul(a.coeffs[i], y[m - i]));
            }
            y[m] = k.neg(k.mul(c0, s));
        }
        Ok(KElem::from_parts(-a.lo, y, rel as i64 - a.lo))
    }

    /// `a^(p^e)`.
    pub fn frob_p(&self, a: &KElem, e: u32) -> KElem {
        let k = self.ring.field();
        let step = (self.ring.p() as i64).saturating_pow(e).min(1 << 20);
        let cap = |v: i64| v.saturating_mul(step).clamp(-(1 << 40), 1 << 40);
        let prec = cap(a.prec);
        let lo = cap(a.lo);
        if a.is_zero() {
            return KElem::zero(prec);
        }
        let len = (prec - lo).min(1 << 16) as usize;
        let mut out = vec![FFElem::ZERO; len];
        for (i, &c) in a.coeffs.iter().enumerate() {
            let pos = i as i64 * step;
            if pos >= len as i64 {
                break;
            }
            out[pos as usize] = k.frob_p(c, e as u64);
        }
        KElem::from_parts(lo, out, lo + len as i64)
    }

    pub fn div(&self, a: &KElem, b: &KElem) -> Result<KElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, FiniteField};
    use std::sync::Arc;

    #[test]
    fn inverse_of_pi() {
        let k = FiniteField::new(FieldSpec { p: 3, h: 1, f: 1, s: 1, modulus: vec![0, 1] }).unwrap();
        let r = LocalRing::new(Arc::new(k), 10);
        let kf = KField::new(&r);
        let x = KElem::from_local(&r.add(&r.pi(), &r.pi_pow(2)));
        let y = kf.inv(&x).unwrap();
        assert_eq!(y.valuation(), -1);
        let one = kf.mul(&x, &y);
        assert_eq!(one.valuation(), 0);
        assert!(one.to_local(&r).unwrap().coeffs()[1..].iter().all(|c| c.is_zero()));
        assert!(kf.inv(&x).unwrap().to_local(&r).is_err());
    }
}

//! Text encoding for configs and result records.
//!
//! A residue-field element is a list of decimal digit strings, little-endian in
//! the power basis of the modulus. An element of `R` is a list of such digit
//! lists, one per known `π`-adic digit, so the list length is the precision.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FFElem, FiniteField};
use crate::local::{LocalElem, LocalRing};
use crate::twisted::{AdditivePoly, OreRing, SparseTerm};
use crate::witt::{universal_polys, PiPoly, WittVector};

pub type EncodedFF = Vec<String>;
pub type EncodedLocal = Vec<EncodedFF>;

pub fn encode_ff(k: &FiniteField, a: FFElem) -> EncodedFF {
    let mut c = k.coords(a);
    while c.len() > 1 && c.last() == Some(&0) {
        c.pop();
    }
    c.iter().map(|d| d.to_string()).collect()
}

pub fn decode_ff(k: &FiniteField, enc: &[String]) -> Result<FFElem> {
    let p = k.characteristic();
    let digits = enc
        .iter()
        .map(|s| match s.trim().parse::<u32>() {
            Ok(d) if d < p => Ok(d),
            _ => Err(Error::Encoding(format!("{s:?} is not a digit modulo {p}"))),
        })
        .collect::<Result<Vec<_>>>()?;
    k.from_coords(&digits)
}

/// Every known digit, so the length of the list is the precision.
pub fn encode_local(k: &FiniteField, x: &LocalElem) -> EncodedLocal {
    (0..x.known_prec() as usize).map(|i| encode_ff(k, x.coeff(i))).collect()
}

/// Digits of an exact polynomial in `π`.
pub fn decode_poly(k: &FiniteField, enc: &[EncodedFF]) -> Result<Vec<FFElem>> {
    enc.iter().map(|c| decode_ff(k, c)).collect()
}

/// An exact polynomial in `π`, reduced into `ring`.
pub fn decode_local(ring: &LocalRing, enc: &[EncodedFF]) -> Result<LocalElem> {
    Ok(ring.from_coeffs(&decode_poly(ring.field(), enc)?))
}

pub fn encode_sparse(k: &FiniteField, f: &AdditivePoly) -> Vec<SparseTerm<EncodedLocal>> {
    f.terms()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(degree, c)| SparseTerm { degree, coeff: encode_local(k, c) })
        .collect()
}

pub fn decode_sparse(ore: &OreRing, terms: &[SparseTerm<EncodedLocal>]) -> Result<AdditivePoly> {
    let ring = ore.base();
    let mut out = ore.zero();
    for t in terms {
        out = ore.add(&out, &ore.monomial(decode_local(ring, &t.coeff)?, t.degree));
    }
    Ok(out)
}

pub fn encode_witt(k: &FiniteField, v: &WittVector<LocalElem>) -> Vec<EncodedLocal> {
    v.comps.iter().map(|c| encode_local(k, c)).collect()
}

pub fn decode_witt(ring: &LocalRing, enc: &[Vec<EncodedFF>]) -> Result<WittVector<LocalElem>> {
    enc.iter().map(|c| decode_local(ring, c)).collect::<Result<Vec<_>>>().map(WittVector::new)
}

/// One monomial of a universal polynomial: exponent vector and coefficient in `F_p[π]`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct MonomialTerm {
    pub exponents: Vec<u64>,
    pub coeff: PiPoly,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct UniversalExport {
    pub p: u32,
    pub qhat_exponent: u32,
    pub n: usize,
    pub product: Vec<Vec<MonomialTerm>>,
    pub frobenius: Vec<Vec<MonomialTerm>>,
}

/// Universal product and Frobenius polynomials as plain term lists.
pub fn export_universal(p: u32, qhat_exponent: u32, n: usize) -> UniversalExport {
    let u = universal_polys(p, qhat_exponent, n);
    let flat = |polys: &[crate::witt::SymPoly]| {
        polys
            .iter()
            .map(|poly| poly.terms().map(|(e, c)| MonomialTerm { exponents: e.clone(), coeff: c.clone() }).collect())
            .collect()
    };
    UniversalExport { p, qhat_exponent, n, product: flat(&u.product), frobenius: flat(&u.frobenius) }
}

use std::sync::Arc;

use dchar_core::field::{FieldSpec, FiniteField};
use dchar_core::local::{LocalElem, LocalRing};
use dchar_core::Error;
use proptest::prelude::*;

fn ring(f: u32, s: u32, n: u32) -> LocalRing {
    let k = FiniteField::new(FieldSpec::with_default_modulus(3, 1, f, s).unwrap()).unwrap();
    LocalRing::new(Arc::new(k), n)
}

fn elem(r: &LocalRing, digits: &[u32]) -> LocalElem {
    let k = r.field();
    let c: Vec<_> = digits.iter().map(|&d| k.from_packed(d % k.size())).collect();
    r.from_coeffs(&c)
}

#[test]
fn delta_of_pi() {
    // q̂ = 3: δ(π) = (π - π³)/π
    let r = ring(1, 1, 10);
    let want = r.sub(&r.one(), &r.pi_pow(2));
    let d = r.delta(&r.pi());
    assert!(r.agrees(&d, &want));
    assert_eq!(d.known_prec(), 9);
}

#[test]
fn delta_of_constant_plus_pi() {
    // q̂ = 9, c ∈ F_9 fixed by φ: δ(c + π) = 1 - π⁸
    let r = ring(2, 1, 12);
    let c = r.constant(r.field().generator());
    let x = r.add(&c, &r.pi());
    let d = r.delta(&x);
    assert!(r.agrees(&d, &r.sub(&r.one(), &r.pi_pow(8))));
    assert_eq!(d.known_prec(), 11);
}

#[test]
fn delta_of_teichmuller_lift_with_frobenius() {
    // s = 2: φ(c) = c^3 for c a generator of F_9, so δ(c) = (c^3 - c^3)/π = 0
    let r = ring(1, 2, 8);
    let c = r.constant(r.field().generator());
    assert!(r.delta(&c).is_zero());
}

#[test]
fn inverse_of_non_unit_fails() {
    let r = ring(1, 1, 8);
    assert!(matches!(r.inv(&r.pi()), Err(Error::NotAUnit)));
}

#[test]
fn precision_of_product() {
    let r = ring(1, 1, 10);
    let a = r.pi_pow(3).truncated(6);
    let b = r.one().truncated(4);
    let c = r.mul(&a, &b);
    assert_eq!(c.known_prec(), 6);
}

#[test]
fn rejects_q_two() {
    assert!(FieldSpec::with_default_modulus(2, 1, 1, 1).and_then(FiniteField::new).is_err());
}

proptest! {
    #[test]
    fn delta_is_additive(a in prop::collection::vec(0u32..81, 8), b in prop::collection::vec(0u32..81, 8)) {
        let r = ring(2, 2, 8);
        let (x, y) = (elem(&r, &a), elem(&r, &b));
        prop_assert!(r.agrees(&r.delta(&r.add(&x, &y)), &r.add(&r.delta(&x), &r.delta(&y))));
    }

    #[test]
    fn delta_product_rule(a in prop::collection::vec(0u32..9, 10), b in prop::collection::vec(0u32..9, 10)) {
        // δ(xy) = φ(x) δ(y) + y^q̂ δ(x)
        let r = ring(1, 2, 10);
        let (x, y) = (elem(&r, &a), elem(&r, &b));
        let rhs = r.add(&r.mul(&r.phi(&x), &r.delta(&y)), &r.mul(&r.pow_qhat(&y, 1), &r.delta(&x)));
        prop_assert!(r.agrees(&r.delta(&r.mul(&x, &y)), &rhs));
    }

    #[test]
    fn phi_is_ring_endomorphism(a in prop::collection::vec(0u32..9, 6), b in prop::collection::vec(0u32..9, 6)) {
        let r = ring(1, 2, 6);
        let (x, y) = (elem(&r, &a), elem(&r, &b));
        prop_assert_eq!(r.phi(&r.mul(&x, &y)), r.mul(&r.phi(&x), &r.phi(&y)));
        prop_assert_eq!(r.phi(&r.add(&x, &y)), r.add(&r.phi(&x), &r.phi(&y)));
        prop_assert_eq!(r.phi(&r.pi()), r.pi());
    }

    #[test]
    fn phi_lifts_frobenius(a in prop::collection::vec(0u32..81, 6)) {
        let r = ring(2, 2, 6);
        let x = elem(&r, &a);
        let k = r.field();
        prop_assert_eq!(r.phi(&x).residue(), k.frob_qhat(x.residue(), 1));
    }

    #[test]
    fn unit_inverse(a in prop::collection::vec(0u32..9, 7), lead in 1u32..9) {
        let r = ring(2, 1, 7);
        let mut d = a.clone();
        d[0] = lead;
        let x = elem(&r, &d);
        let y = r.inv(&x).unwrap();
        prop_assert_eq!(r.mul(&x, &y), r.one());
    }

    #[test]
    fn field_axioms(a in 0u32..81, b in 0u32..81, c in 0u32..81) {
        let k = FiniteField::new(FieldSpec::with_default_modulus(3, 1, 2, 2).unwrap()).unwrap();
        let (x, y, z) = (k.from_packed(a), k.from_packed(b), k.from_packed(c));
        prop_assert_eq!(k.mul(x, k.add(y, z)), k.add(k.mul(x, y), k.mul(x, z)));
        prop_assert_eq!(k.add(x, k.neg(x)), k.zero());
        prop_assert_eq!(k.frob_p(k.add(x, y), 1), k.add(k.frob_p(x, 1), k.frob_p(y, 1)));
        prop_assert_eq!(k.pow(x, 81), x);
        prop_assert_eq!(k.from_coords(&k.coords(x)).unwrap(), x);
        if !x.is_zero() {
            prop_assert_eq!(k.mul(x, k.inv(x).unwrap()), k.one());
        }
    }
}

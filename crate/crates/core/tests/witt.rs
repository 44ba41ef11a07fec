use std::sync::Arc;

use dchar_core::field::{FieldSpec, FiniteField};
use dchar_core::local::LocalRing;
use dchar_core::witt::{fv_minus_vf_form, universal_polys, SymRing, WittRing, WittVector};
use dchar_core::Error;
use proptest::prelude::*;

fn ring(f: u32, s: u32, n: u32) -> LocalRing {
    let k = FiniteField::new(FieldSpec::with_default_modulus(3, 1, f, s).unwrap()).unwrap();
    LocalRing::new(Arc::new(k), n)
}

#[test]
fn unghost_pi_pi() {
    // q̂ = 3: x_0 = π, π x_1 = π - π³
    let r = ring(1, 1, 10);
    let w = WittRing::new(&r, 1);
    let v = w.unghost(&[r.pi(), r.pi()]).unwrap();
    assert_eq!(v.comps[0], r.pi());
    assert!(r.agrees(&v.comps[1], &r.sub(&r.one(), &r.pi_pow(2))));
}

#[test]
fn verschiebung_of_one_squared() {
    // ghost(V 1) = (0, π), squared (0, π²), so V(1)² = (0, π)
    let r = ring(1, 1, 10);
    let w0 = WittRing::new(&r, 0);
    let w = WittRing::new(&r, 1);
    let v1 = w0.verschiebung(&w0.one()).unwrap();
    let sq = w.mul(&v1, &v1).unwrap();
    assert!(sq.comps[0].is_zero());
    assert!(r.agrees(&sq.comps[1], &r.pi()));
}

#[test]
fn scalar_embed_of_pi() {
    // (π, δ(π)) = (π, 1 - π^(q̂-1)) for q̂ = 9
    let r = ring(2, 1, 12);
    let v = WittRing::new(&r, 1).scalar_embed(&r.pi()).unwrap();
    assert_eq!(v.comps[0], r.pi());
    assert!(r.agrees(&v.comps[1], &r.sub(&r.one(), &r.pi_pow(8))));
}

#[test]
fn fv_minus_vf_constant() {
    // q̂ = 9: (FV - VF)(x) = (π x_0, -π^8 x_0^9)
    let c = fv_minus_vf_form(3, 1, 2, 1).unwrap();
    assert_eq!(c[0], vec![0, 1]);
    let mut want = vec![0; 9];
    want[8] = 2;
    assert_eq!(c[1], want);
}

#[test]
fn unghost_outside_image() {
    let r = ring(1, 1, 8);
    let w = WittRing::new(&r, 1);
    assert!(matches!(w.unghost(&[r.zero(), r.one()]), Err(Error::NotInGhostImage)));
}

#[test]
fn universal_cache_is_shared() {
    let a = universal_polys(3, 1, 2);
    let b = universal_polys(3, 1, 2);
    assert!(Arc::ptr_eq(&a, &b));
    let handles: Vec<_> = (0..4).map(|_| std::thread::spawn(|| universal_polys(3, 2, 1).product.len())).collect();
    for h in handles {
        assert_eq!(h.join().unwrap(), 2);
    }
}

#[test]
fn symbolic_routes_agree() {
    let sym = SymRing::new(3, 1, 1, 4);
    let w = WittRing::new(&sym, 1);
    let x = WittVector::new(vec![sym.var(0), sym.var(1)]);
    let y = WittVector::new(vec![sym.var(2), sym.var(3)]);
    assert_eq!(w.mul(&x, &y).unwrap(), w.mul_ghost(&x, &y).unwrap());
    assert_eq!(w.frobenius(&x).unwrap(), WittRing::new(&sym, 1).frobenius_universal(&x).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_is_a_ring_homomorphism(
        a in prop::collection::vec(0u32..81, 36),
        n in 1usize..=3,
    ) {
        let r = ring(2, 2, 9);
        let k = r.field();
        let digits: Vec<_> = a.iter().map(|&d| k.from_packed(d)).collect();
        let vec_at = |off: usize| WittVector::new((0..=n).map(|i| r.from_coeffs(&digits[off + 4 * i..off + 4 * i + 4])).collect());
        let (x, y) = (vec_at(0), vec_at(18));
        let w = WittRing::new(&r, n);
        let gx = w.ghost(&x).unwrap();
        let gy = w.ghost(&y).unwrap();
        let gp = w.ghost(&w.mul(&x, &y).unwrap()).unwrap();
        for i in 0..=n {
            prop_assert!(r.agrees(&gp[i], &r.mul(&gx[i], &gy[i])));
        }
        let fx = w.frobenius(&x).unwrap();
        let fu = w.frobenius_universal(&x).unwrap();
        for i in 0..n {
            prop_assert!(r.agrees(&fx.comps[i], &fu.comps[i]));
        }
    }

    #[test]
    fn frobenius_is_multiplicative(a in prop::collection::vec(0u32..9, 18)) {
        let r = ring(1, 2, 8);
        let k = r.field();
        let d: Vec<_> = a.iter().map(|&x| k.from_packed(x)).collect();
        let w = WittRing::new(&r, 2);
        let w1 = WittRing::new(&r, 1);
        let x = WittVector::new((0..3).map(|i| r.from_coeffs(&d[3 * i..3 * i + 3])).collect());
        let y = WittVector::new((0..3).map(|i| r.from_coeffs(&d[9 + 3 * i..9 + 3 * i + 3])).collect());
        let lhs = w.frobenius_universal(&w.mul(&x, &y).unwrap()).unwrap();
        let rhs = w1.mul(&w.frobenius_universal(&x).unwrap(), &w.frobenius_universal(&y).unwrap()).unwrap();
        for i in 0..2 {
            prop_assert!(r.agrees(&lhs.comps[i], &rhs.comps[i]));
        }
    }
}

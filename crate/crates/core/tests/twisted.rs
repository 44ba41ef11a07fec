use std::sync::Arc;

use dchar_core::field::{FieldSpec, FiniteField};
use dchar_core::local::LocalRing;
use dchar_core::twisted::{AdditivePoly, OreRing};
use dchar_core::Error;
use proptest::prelude::*;

fn ore(f: u32, s: u32, n: u32) -> OreRing {
    let k = FiniteField::new(FieldSpec::with_default_modulus(3, 1, f, s).unwrap()).unwrap();
    OreRing::new(LocalRing::new(Arc::new(k), n))
}

fn poly(o: &OreRing, digits: &[Vec<u32>]) -> AdditivePoly {
    let r = o.base();
    let k = r.field();
    o.from_terms(
        digits
            .iter()
            .map(|c| r.from_coeffs(&c.iter().map(|&d| k.from_packed(d % k.size())).collect::<Vec<_>>()))
            .collect(),
    )
}

fn poly_strategy(max_deg: usize) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..81, 6), 1..=max_deg + 1)
}

#[test]
fn tau_moves_scalars() {
    // τ ∘ c = c^q τ
    let o = ore(1, 2, 6);
    let r = o.base();
    let c = r.constant(r.field().generator());
    let lhs = o.compose(&o.tau(1), &o.monomial(c.clone(), 0));
    let rhs = o.monomial(r.pow_q(&c, 1), 1);
    assert_eq!(lhs, rhs);
}

#[test]
fn strictness() {
    let o = ore(1, 1, 6);
    assert!(o.require_strict(&o.tau(1)).is_ok());
    assert!(matches!(o.require_strict(&o.tau(0)), Err(Error::NonzeroLinearTerm)));
}

#[test]
fn sdagger_rejects_non_unit_constant() {
    let o = ore(1, 1, 6);
    let r = o.base();
    let f = o.monomial(r.pi(), 0);
    assert!(matches!(o.invert_sdagger(&f, 4), Err(Error::NotInSDagger)));
}

#[test]
fn sparse_form_round_trip() {
    use dchar_core::encoding::{decode_sparse, encode_sparse};
    let o = ore(2, 1, 6);
    let f = poly(&o, &[vec![1, 2], vec![0], vec![0, 0, 5]]);
    let enc = encode_sparse(o.base().field(), &f);
    assert_eq!(enc.iter().map(|t| t.degree).collect::<Vec<_>>(), vec![0, 2]);
    assert_eq!(decode_sparse(&o, &enc).unwrap(), f);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(2)) {
        let o = ore(1, 2, 6);
        let (f, g, h) = (poly(&o, &a), poly(&o, &b), poly(&o, &c));
        let lhs = o.compose(&o.compose(&f, &g), &h);
        let rhs = o.compose(&f, &o.compose(&g, &h));
        prop_assert!(o.agrees(&lhs, &rhs));
    }

    #[test]
    fn compose_distributes_on_the_left(a in poly_strategy(3), b in poly_strategy(3), c in poly_strategy(3)) {
        // (g + h) ∘ f = g ∘ f + h ∘ f in the Ore ring
        let o = ore(2, 1, 6);
        let (f, g, h) = (poly(&o, &a), poly(&o, &b), poly(&o, &c));
        let lhs = o.compose(&o.add(&g, &h), &f);
        let rhs = o.add(&o.compose(&g, &f), &o.compose(&h, &f));
        prop_assert!(o.agrees(&lhs, &rhs));
    }

    #[test]
    fn eval_respects_composition(a in poly_strategy(2), b in poly_strategy(2), x in prop::collection::vec(0u32..81, 6)) {
        let o = ore(1, 2, 6);
        let (f, g) = (poly(&o, &a), poly(&o, &b));
        let r = o.base();
        let k = r.field();
        let x = r.from_coeffs(&x.iter().map(|&d| k.from_packed(d % k.size())).collect::<Vec<_>>());
        let lhs = o.eval(&o.compose(&f, &g), &x);
        let rhs = o.eval(&f, &o.eval(&g, &x));
        prop_assert!(r.agrees(&lhs, &rhs));
    }

    #[test]
    fn sdagger_inverse_is_two_sided(a in poly_strategy(4), lead in 1u32..9) {
        let o = ore(1, 2, 8);
        let r = o.base();
        let mut f = poly(&o, &a);
        let mut terms = f.terms().to_vec();
        terms[0] = r.add(&r.constant(r.field().from_packed(lead)), &r.mul_pi(&terms[0], 1));
        for (i, t) in terms.iter_mut().enumerate().skip(1) {
            *t = r.mul_pi(t, i as u32);
        }
        f = o.from_terms(terms);
        let g = o.invert_sdagger(&f, 10).unwrap();
        prop_assert!(o.in_sdagger(&g));
        let one = o.tau(0);
        prop_assert!(o.agrees(&o.truncate_degree(&o.compose(&f, &g), 10), &one));
        prop_assert!(o.agrees(&o.truncate_degree(&o.compose(&g, &f), 10), &one));
    }
}

use std::sync::Arc;

use dchar_core::encoding::{
    decode_ff, decode_local, decode_sparse, decode_witt, encode_ff, encode_local, encode_sparse, encode_witt,
    export_universal,
};
use dchar_core::field::{FieldSpec, FiniteField};
use dchar_core::local::LocalRing;
use dchar_core::twisted::OreRing;
use dchar_core::witt::WittVector;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ring(s: u32) -> LocalRing {
    let k = FiniteField::new(FieldSpec::with_default_modulus(3, 1, 1, s).unwrap()).unwrap();
    LocalRing::new(Arc::new(k), 8)
}

#[test]
fn digits_are_trimmed() {
    let r = ring(2);
    let k = r.field();
    assert_eq!(encode_ff(k, k.zero()), vec!["0".to_string()]);
    assert_eq!(encode_ff(k, k.from_int(2)), vec!["2".to_string()]);
    assert!(decode_ff(k, &["x".to_string()]).is_err());
}

#[test]
fn universal_export_is_stable() {
    let a = export_universal(3, 1, 1);
    assert_eq!(a.product.len(), 2);
    assert_eq!(a.frobenius.len(), 1);
    // P_0 = x_0 y_0
    assert_eq!(a.product[0].len(), 1);
    assert_eq!(a.product[0][0].coeff, vec![1]);
    assert_eq!(a, export_universal(3, 1, 1));
}

proptest! {
    #[test]
    fn local_round_trip(seed in any::<u64>(), s in 1u32..=2) {
        let r = ring(s);
        let x = r.random(&mut ChaCha8Rng::seed_from_u64(seed));
        let enc = encode_local(r.field(), &x);
        prop_assert_eq!(enc.len(), 8);
        prop_assert_eq!(decode_local(&r, &enc).unwrap(), x);
    }

    #[test]
    fn sparse_and_witt_round_trip(seed in any::<u64>()) {
        let r = ring(2);
        let ore = OreRing::new(r.clone());
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = ore.from_terms((0..5).map(|j| if j == 2 { r.zero() } else { r.random(&mut rng) }).collect());
        let enc = encode_sparse(r.field(), &f);
        prop_assert!(enc.iter().all(|t| t.degree != 2));
        prop_assert!(ore.agrees(&decode_sparse(&ore, &enc).unwrap(), &f));
        let w = WittVector::new((0..3).map(|_| r.random(&mut rng)).collect());
        prop_assert_eq!(decode_witt(&r, &encode_witt(r.field(), &w)).unwrap(), w);
    }
}

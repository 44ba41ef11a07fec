use std::sync::Arc;

use dchar_core::acceptance::sample_module;
use dchar_core::characters::CharacterEngine;
use dchar_core::field::{FFElem, FieldSpec, FiniteField};
use dchar_core::jet::{apply_matrix, apply_row, A1Mode, DrinfeldModule, JetContext};
use dchar_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(f: u32, s: u32) -> Arc<FiniteField> {
    Arc::new(FiniteField::new(FieldSpec::with_default_modulus(3, 1, f, s).unwrap()).unwrap())
}

#[test]
fn module_validation() {
    let k = field(1, 1);
    let one = vec![FFElem::ONE];
    assert!(matches!(DrinfeldModule::with_default_t(k.clone(), vec![]), Err(Error::InvalidModule(_))));
    assert!(matches!(
        DrinfeldModule::with_default_t(k.clone(), vec![one.clone(), vec![FFElem::ZERO]]),
        Err(Error::InvalidModule(_))
    ));
    // t = v² + 1 is irreducible over F_3 but has the wrong degree for f = 1
    let t2 = vec![FFElem::ONE, FFElem::ZERO, FFElem::ONE];
    assert!(DrinfeldModule::new(k.clone(), t2.clone(), vec![one.clone()]).is_err());
    let k2 = field(2, 1);
    assert!(DrinfeldModule::new(k2.clone(), t2, vec![one.clone()]).is_ok());
    // v² - 1 = (v - 1)(v + 1)
    let red = vec![k2.from_int(-1), FFElem::ZERO, FFElem::ONE];
    assert!(matches!(DrinfeldModule::new(k2, red, vec![one]), Err(Error::InvalidModule(_))));
}

#[test]
fn random_modules_respect_a1_mode() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..10 {
        let m = DrinfeldModule::random(field(1, 2), 3, 3, A1Mode::NonUnit, &mut rng).unwrap();
        assert!(m.raw_coeffs()[0][0].is_zero());
        assert!(!m.raw_coeffs()[2][0].is_zero());
        let m = DrinfeldModule::random(field(1, 2), 2, 3, A1Mode::Unit, &mut rng).unwrap();
        assert!(!m.raw_coeffs()[0][0].is_zero());
    }
}

#[test]
fn linearization_leading_terms() {
    // q = 3, f = 1, a_1 = a_2 = 1
    let k = field(1, 1);
    let m = DrinfeldModule::with_default_t(k, vec![vec![FFElem::ONE], vec![FFElem::ONE]]).unwrap();
    let ctx = JetContext::new(m, 12, 6, 32);
    let theta = ctx.theta_iso(1).unwrap();
    let ring = ctx.ring();
    assert!(ring.agrees(&ctx.ore().coeff(&theta, 0), &ring.one()));
    for (i, c) in theta.nonzero_terms() {
        assert!(c.valuation() as usize >= i);
    }
}

#[test]
fn iphi_certificates() {
    for (f, s) in [(1, 1), (2, 1), (1, 2)] {
        let ctx = sample_module(f, s, 2, A1Mode::Any, 31);
        for c in ctx.check_iphi(3).unwrap() {
            assert!(c.pass, "{c:?}");
        }
    }
}

#[test]
fn lateral_frobenius_needs_kernel_point() {
    let ctx = sample_module(1, 1, 2, A1Mode::Any, 5);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut p = ctx.random_point(2, &mut rng);
    p.comps[0] = ctx.ring().one();
    assert!(matches!(ctx.lateral_frobenius(&p), Err(Error::ConsistencyFailure(_))));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn act_matrix_matches_ghost_action(seed in 0u64..1000, shape in 0usize..3) {
        let (f, s) = [(1, 1), (2, 1), (1, 2)][shape];
        let ctx = sample_module(f, s, 2, A1Mode::Any, seed);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = ctx.random_point(2, &mut rng);
        let via_ghost = ctx.act_t_point(&p).unwrap();
        let via_matrix = apply_matrix(ctx.ore(), &ctx.act_matrix(2).unwrap(), &p.comps);
        for (a, b) in via_ghost.comps.iter().zip(&via_matrix) {
            prop_assert!(ctx.ring().agrees(a, b));
        }
        let t = [FFElem::ZERO, FFElem::ONE];
        prop_assert_eq!(ctx.act_point(&t, &p).unwrap().comps.len(), 3);
        let once = ctx.act_point(&t, &p).unwrap();
        for (a, b) in once.comps.iter().zip(&via_ghost.comps) {
            prop_assert!(ctx.ring().agrees(a, b));
        }
    }

    #[test]
    fn characters_are_a_linear_on_points(seed in 0u64..1000) {
        let ctx = sample_module(1, 1, 2, A1Mode::Unit, seed);
        let engine = CharacterEngine::new(&ctx, 3).unwrap();
        let (m, lambda, _) = engine.splitting().unwrap();
        let (theta, _) = engine.build_theta(m, &lambda).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xabc);
        let p = ctx.random_point(m, &mut rng);
        let tp = ctx.act_t_point(&p).unwrap();
        let ring = ctx.ring();
        let lhs = apply_row(ctx.ore(), &theta.row, &tp.comps);
        let rhs = ring.mul(&ring.pi(), &apply_row(ctx.ore(), &theta.row, &p.comps));
        prop_assert!(ring.agrees(&lhs, &rhs));
        prop_assert!(lhs.known_prec() >= ctx.report_prec());
    }
}

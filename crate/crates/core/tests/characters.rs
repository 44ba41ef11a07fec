use std::sync::Arc;

use dchar_core::acceptance::sample_module;
use dchar_core::characters::{
    crystal, ext_reduce, ext_sharp_reduce, inner_derivation, order0_certificate, rank2_closed_forms, solve_g_shooting,
    CharacterEngine,
};
use dchar_core::field::{FFElem, FieldSpec, FiniteField};
use dchar_core::jet::{A1Mode, DrinfeldModule, JetContext};
use dchar_core::local::LocalElem;
use dchar_core::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// q = 3, f = 1, a_1 = a_2 = 1.
fn reference() -> JetContext {
    let k = Arc::new(FiniteField::new(FieldSpec::with_default_modulus(3, 1, 1, 1).unwrap()).unwrap());
    let m = DrinfeldModule::with_default_t(k, vec![vec![FFElem::ONE], vec![FFElem::ONE]]).unwrap();
    JetContext::new(m, 16, 8, 32)
}

fn digits(ctx: &JetContext, x: &LocalElem, n: usize) -> Vec<u32> {
    (0..n).map(|i| ctx.ring().field().coords(x.coeff(i))[0]).collect()
}

#[test]
fn reference_del_psi() {
    let ctx = reference();
    let e = CharacterEngine::new(&ctx, 2).unwrap();
    let d1 = e.del_psi(1, 2).unwrap();
    let d2 = e.del_psi(2, 2).unwrap();
    assert_eq!(digits(&ctx, &d1.coords[0], 6), vec![1, 2, 2, 2, 0, 2]);
    assert_eq!(digits(&ctx, &d2.coords[0], 6), vec![2, 1, 1, 1, 0, 1]);
}

#[test]
fn reference_splitting() {
    let ctx = reference();
    let ring = ctx.ring();
    let data = crystal(&ctx).unwrap();
    assert_eq!(data.m, 2);
    assert!(!data.canonical_lift_caveat);
    assert!(ring.agrees(&data.lambda[0], &ring.from_int(-1)));
    assert!(ring.agrees(&data.gamma, &ring.neg(&ring.pi())));
    assert!(data.gamma_precision >= ctx.report_prec());
    // Γ = [[0, -φ(γ)], [1, φ(λ_1)]]
    let g = &data.big_gamma;
    assert!(g[0][0].is_zero());
    assert!(ring.agrees(&g[0][1], &ring.pi()));
    assert!(ring.agrees(&g[1][0], &ring.one()));
    assert!(ring.agrees(&g[1][1], &ring.from_int(-1)));
    assert!(data.big_gamma0.is_none());
    assert!(data.certificates.iter().all(|c| c.pass), "{:?}", data.certificates);
}

#[test]
fn reference_theta_and_lie() {
    let ctx = reference();
    let ring = ctx.ring();
    let e = CharacterEngine::new(&ctx, 3).unwrap();
    let (data, theta) = e.crystal().unwrap();
    assert_eq!(theta.order, 2);
    assert!(theta.certificates.iter().all(|c| c.pass));
    let class = e.ext_sharp_image(&theta.row[1..]).unwrap();
    assert!(class.ext.is_zero());
    assert!(ring.agrees(&class.lie, &ring.one()));
    let want = ring.neg(&ring.div_pi(&data.gamma, 1).unwrap());
    assert!(ring.agrees(&class.lie, &want));
    let cert = e.prop_diff(&theta, &data.gamma).unwrap();
    assert!(cert.pass, "{cert:?}");
}

#[test]
fn reference_closed_forms_and_order0() {
    let ctx = reference();
    let cf = rank2_closed_forms(&ctx).unwrap();
    assert_eq!(cf.lambda1, Ok(ctx.ring().field().from_int(-1)));
    assert_eq!(cf.gamma_over_pi, Ok(ctx.ring().field().from_int(-1)));
    let rep = order0_certificate(&ctx, 32).unwrap();
    assert_eq!(rep.blowup_degree, vec![Some(2), Some(2)]);
    assert_eq!(rep.first_step_valuation, -1);
    assert!(rep.certificate.pass);
}

#[test]
fn tau_one_has_unit_coordinate() {
    let ctx = reference();
    let class = ext_reduce(&ctx, &ctx.ore().tau(1)).unwrap();
    assert!(ctx.ring().agrees(&class.coords[0], &ctx.ring().one()));
}

#[test]
fn strictness_and_consistency_errors() {
    let ctx = reference();
    let ore = ctx.ore();
    assert!(matches!(ext_reduce(&ctx, &ore.tau(0)), Err(Error::NonzeroLinearTerm)));
    assert!(matches!(ext_sharp_reduce(&ctx, &ore.tau(0)), Err(Error::NonzeroLinearTerm)));
    assert!(matches!(solve_g_shooting(&ctx, &ore.tau(0), 16), Err(Error::ConsistencyFailure(_))));
    let e = CharacterEngine::new(&ctx, 2).unwrap();
    assert!(matches!(e.solve_g(&e.psi(1, 2).unwrap()), Err(Error::IntegralityFailure(_))));
    assert!(e.psi(3, 2).is_err());
    assert!(rank2_closed_forms(&sample_module(1, 1, 3, A1Mode::Any, 1)).is_err());
}

#[test]
fn shooting_agrees_with_exact_solve() {
    for (f, s, seed) in [(1, 1, 3), (2, 1, 4), (1, 2, 5), (2, 2, 6)] {
        let ctx = sample_module(f, s, 2, A1Mode::Unit, seed);
        let e = CharacterEngine::new(&ctx, 2).unwrap();
        let (m, lambda, _) = e.splitting().unwrap();
        let row = e.combination(m, &lambda, m).unwrap();
        let exact = e.solve_g(&row).unwrap();
        let h = e.pushout_cocycle(&row).unwrap();
        let (gamma, prec) = solve_g_shooting(&ctx, &h, 32).unwrap();
        assert!(prec >= 8, "shooting precision {prec}");
        assert!(ctx.ring().agrees(&gamma, &exact.gamma));
    }
}

#[test]
fn xn_basis_shape() {
    let ctx = reference();
    let e = CharacterEngine::new(&ctx, 4).unwrap();
    let (_, theta) = e.crystal().unwrap();
    let basis = e.xn_basis(&theta, 4).unwrap();
    assert_eq!(basis.len(), 3);
    for (k, b) in basis.iter().enumerate() {
        assert_eq!(b.order, 2 + k);
        assert!(b.certificates.iter().all(|c| c.pass));
        assert_eq!(b.mu.len(), 2 + k);
        assert!(b.mu[1 + k].is_unit(), "basis element {k}");
    }
}

#[test]
fn higher_rank_splitting_certifies() {
    for (f, s, seed) in [(1, 1, 11), (2, 1, 12)] {
        let ctx = sample_module(f, s, 3, A1Mode::Any, seed);
        let data = crystal(&ctx).unwrap();
        assert!(data.m >= 1 && data.m <= 3);
        assert_eq!(data.lambda.len(), data.m - 1);
        assert_eq!(data.big_gamma.len(), data.m);
        assert!(data.certificates.iter().all(|c| c.pass), "{:?}", data.certificates);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ext_class_ignores_inner_derivations(seed in any::<u64>(), deg in 0usize..=3, shape in 0usize..4) {
        let (f, s, rank) = [(1, 1, 2), (2, 1, 2), (1, 2, 2), (1, 1, 3)][shape];
        let ctx = sample_module(f, s, rank, A1Mode::Any, 77);
        let ore = ctx.ore();
        let ring = ctx.ring();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let alpha = ore.from_terms((0..=deg).map(|_| ring.random(&mut rng)).collect());
        let h = ore.from_terms((0..6).map(|j| if j == 0 { ring.zero() } else { ring.random(&mut rng) }).collect());
        let moved = ore.add(&h, &inner_derivation(&ctx, &alpha));
        // ι(α) has linear term α_0 (π - π) = 0, so `moved` stays strict
        let a = ext_reduce(&ctx, &h).unwrap();
        let b = ext_reduce(&ctx, &moved).unwrap();
        for (x, y) in a.coords.iter().zip(&b.coords) {
            prop_assert!(ring.agrees(x, y));
        }
    }
}

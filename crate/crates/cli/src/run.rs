//! The computation behind each subcommand.

use std::sync::Arc;

use dchar_core::acceptance;
use dchar_core::certificate::Certificate;
use dchar_core::characters::{order0_certificate, rank2_closed_forms, CharacterEngine};
use dchar_core::encoding::{encode_ff, encode_sparse};
use dchar_core::field::{FFElem, FiniteField};
use dchar_core::jet::{DrinfeldModule, JetContext};
use dchar_core::local::{LocalElem, LocalRing};
use dchar_core::witt::{WittRing, WittVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{RunConfig, Task};
use crate::records::*;
use crate::CliError;

/// Records to emit, a CSV table for sweeps, summary lines and whether everything certified.
pub struct Outcome {
    pub records: Vec<String>,
    pub csv: Option<Vec<u8>>,
    pub summary: Vec<String>,
    pub certified: bool,
}

impl Outcome {
    fn single(record: String, summary: Vec<String>, certified: bool) -> Self {
        Outcome { records: vec![record], csv: None, summary, certified }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}

fn computation(e: dchar_core::Error) -> CliError {
    CliError::Certification(e.to_string())
}

fn all_pass(certs: &[Certificate]) -> bool {
    certs.iter().all(|c| c.pass)
}

fn failing(certs: &[Certificate]) -> String {
    let names: Vec<&str> = certs.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect();
    if names.is_empty() {
        "all certificates pass".into()
    } else {
        format!("failing certificates: {}", names.join(", "))
    }
}

fn context(cfg: &RunConfig, module: DrinfeldModule) -> JetContext {
    JetContext::new(module, cfg.precision, cfg.pad, cfg.degree_bound())
}

pub fn run(task: Task, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match task {
        Task::WittCheck => witt_check(cfg),
        Task::JetCheck => jet_check(cfg),
        Task::Characters => characters(cfg),
        Task::Crystal => crystal(cfg),
        Task::Sweep => sweep(cfg),
        Task::Selftest => Ok(selftest()),
    }
}

pub fn selftest() -> Outcome {
    let reports = acceptance::run_all();
    let passed = reports.iter().filter(|r| r.pass).count();
    let records = reports.iter().map(json).collect();
    let mut summary: Vec<String> = reports.iter().map(|r| r.line()).collect();
    summary.push(format!("scoreboard: {passed}/{} criteria pass", reports.len()));
    Outcome { records, csv: None, summary, certified: passed == reports.len() }
}

struct Law {
    name: &'static str,
    failures: usize,
    first: Option<String>,
}

fn agree_all(r: &LocalRing, a: &[LocalElem], b: &[LocalElem]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| r.agrees(x, y))
}

fn witt_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let k = cfg.finite_field()?;
    let ring = LocalRing::new(k, cfg.precision);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let names = [
        "ghost_additive",
        "ghost_multiplicative",
        "universal_product",
        "universal_frobenius",
        "fv_pi",
        "ffv_fvf",
        "teichmuller_multiplicative",
        "teichmuller_additive",
    ];
    let mut laws: Vec<Law> = names.iter().map(|&name| Law { name, failures: 0, first: None }).collect();
    for trial in 0..cfg.trials {
        let n = 1 + trial % cfg.max_order;
        let w = WittRing::new(&ring, n);
        let mut draw = || WittVector::new((0..=n).map(|_| ring.random(&mut rng)).collect::<Vec<_>>());
        let (x, y) = (draw(), draw());
        let (a, b) = (ring.random(&mut rng), ring.random(&mut rng));
        let outcomes: dchar_core::Result<[bool; 8]> = (|| {
            let gx = w.ghost(&x)?;
            let gy = w.ghost(&y)?;
            let gsum: Vec<_> = gx.iter().zip(&gy).map(|(u, v)| ring.add(u, v)).collect();
            let gprod: Vec<_> = gx.iter().zip(&gy).map(|(u, v)| ring.mul(u, v)).collect();
            let prod = w.mul(&x, &y)?;
            let w1 = WittRing::new(&ring, n + 1);
            let fv = w1.frobenius(&w.verschiebung(&x)?)?;
            let ffv = w.frobenius(&fv)?;
            let fvf = w.frobenius(&WittRing::new(&ring, n - 1).verschiebung(&w.frobenius(&x)?)?)?;
            let (ta, tb) = (w.teichmuller(&a), w.teichmuller(&b));
            Ok([
                agree_all(&ring, &w.ghost(&w.add(&x, &y)?)?, &gsum),
                agree_all(&ring, &w.ghost(&prod)?, &gprod),
                agree_all(&ring, &prod.comps, &w.mul_ghost(&x, &y)?.comps),
                agree_all(&ring, &w.frobenius(&x)?.comps, &w.frobenius_universal(&x)?.comps),
                agree_all(&ring, &fv.comps, &w.scale(&ring.pi(), &x)?.comps),
                agree_all(&ring, &ffv.comps, &fvf.comps),
                agree_all(&ring, &w.mul(&ta, &tb)?.comps, &w.teichmuller(&ring.mul(&a, &b)).comps),
                agree_all(&ring, &w.add(&ta, &tb)?.comps, &w.teichmuller(&ring.add(&a, &b)).comps),
            ])
        })();
        let outcomes = outcomes.map_err(computation)?;
        for (law, ok) in laws.iter_mut().zip(outcomes) {
            if !ok {
                law.failures += 1;
                law.first.get_or_insert_with(|| format!("trial {trial} (n = {n})"));
            }
        }
    }
    let certificates: Vec<Certificate> = laws
        .iter()
        .map(|l| match &l.first {
            None => Certificate::passed(l.name, cfg.max_order, cfg.precision),
            Some(at) => Certificate::failed(l.name, cfg.max_order, format!("{} failures, first at {at}", l.failures)),
        })
        .collect();
    let certified = all_pass(&certificates);
    let summary = vec![format!("witt-check: {} trials, {}", cfg.trials, failing(&certificates))];
    let record = CheckRecord {
        task: Task::WittCheck,
        input: InputConfig::new(cfg, None),
        checks: cfg.trials * names.len(),
        order0: None,
        certificates,
    };
    Ok(Outcome::single(json(&record), summary, certified))
}

fn jet_check(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let k = cfg.finite_field()?;
    let module = cfg.drinfeld_module(&k)?;
    let ctx = context(cfg, module.clone());
    let ore = ctx.ore();
    let ring = ctx.ring();
    let floor = ctx.report_prec();
    let mut certificates = Vec::new();

    let theta = ctx.theta_iso(1).map_err(computation)?;
    let kernel = ctx.kernel_matrix(1).map_err(computation)?;
    let db = ctx.degree_bound();
    let lhs = ore.truncate_degree(&ore.compose(&theta, kernel.get(0, 0)), db);
    let rhs = ore.truncate_degree(&ore.scale(&ring.pi(), &theta), db);
    let mut lin = Certificate::from_agreement("linearization", 1, ore.agreement_prec(&lhs, &rhs), floor);
    if !ring.agrees(&ore.coeff(&theta, 0), &ring.one()) {
        lin = Certificate::failed("linearization", 1, "b_0 ≠ 1");
    }
    certificates.push(lin);

    let n = cfg.max_order;
    let rows = ctx.psi_rows(n).map_err(computation)?;
    let kernel = ctx.kernel_matrix(n).map_err(computation)?;
    let f = ctx.f();
    for (i, row) in rows.iter().enumerate() {
        let lhs = ore.row_compose(row, &kernel);
        let rhs = ore.row_scale(&ring.pi(), row);
        certificates.push(Certificate::from_agreement(
            "psi_a_linear",
            i + 1,
            ore.rows_agreement_prec(&lhs, &rhs),
            floor,
        ));
        let residue_ok = row.iter().enumerate().all(|(j, entry)| {
            (0..=f * n).all(|d| {
                let want = if j == 0 && d == f * i { FFElem::ONE } else { FFElem::ZERO };
                ore.coeff(entry, d).residue() == want
            })
        });
        certificates.push(if residue_ok {
            Certificate::passed("psi_mod_pi", i + 1, 1)
        } else {
            Certificate::failed("psi_mod_pi", i + 1, "Ψ_i ≢ x_1^(q̂^(i-1)) mod π")
        });
    }
    for order in 2..=n {
        certificates.extend(ctx.check_iphi(order).map_err(computation)?);
    }
    let order0 = order0_certificate(&ctx, db).map_err(computation)?;
    certificates.push(order0.certificate.clone());

    let certified = all_pass(&certificates);
    let summary = vec![format!("jet-check: rank {}, orders 1..={n}, {}", ctx.rank(), failing(&certificates))];
    let record = CheckRecord {
        task: Task::JetCheck,
        input: InputConfig::new(cfg, Some(&module)),
        checks: certificates.len(),
        order0: Some(order0),
        certificates,
    };
    Ok(Outcome::single(json(&record), summary, certified))
}

fn characters(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let k = cfg.finite_field()?;
    let module = cfg.drinfeld_module(&k)?;
    let ctx = context(cfg, module.clone());
    let r = ctx.rank();
    let engine = CharacterEngine::new(&ctx, cfg.max_order.max(r + 1)).map_err(computation)?;
    let del_psi = (1..=r)
        .map(|i| engine.del_psi(i, r).map(|c| enc_all(&k, &c.coords, cfg.precision)))
        .collect::<dchar_core::Result<Vec<_>>>()
        .map_err(computation)?;
    let (m, lambda, caveat) = engine.splitting().map_err(computation)?;
    let (theta, sol) = engine.build_theta(m, &lambda).map_err(computation)?;
    let mut certificates = theta.certificates.clone();
    certificates.push(engine.prop_diff(&theta, &sol.gamma).map_err(computation)?);
    let top = engine.n_max().max(m);
    let chain = engine.xn_basis(&theta, top).map_err(computation)?;
    let mut basis = Vec::new();
    for ch in &chain {
        if ch.order > m {
            certificates.extend(ch.certificates.iter().cloned());
        }
        basis.push(BasisEntry { order: ch.order, mu: enc_all(&k, &ch.mu, cfg.precision) });
    }
    let closed_forms =
        (r == 2).then(|| rank2_closed_forms(&ctx)).transpose().map_err(computation)?.map(|cf| ClosedForms {
            lambda1_mod_pi: ClosedForm::of(&k, &cf.lambda1),
            gamma_over_pi_mod_pi: ClosedForm::of(&k, &cf.gamma_over_pi),
        });
    let certified = all_pass(&certificates);
    let summary = vec![
        format!("characters: rank {r}, m = {m}, γ known to precision {}", sol.achieved_precision.min(cfg.precision)),
        failing(&certificates),
    ];
    let record = CharactersRecord {
        task: Task::Characters,
        input: InputConfig::new(cfg, Some(&module)),
        m,
        lambda: enc_all(&k, &lambda, cfg.precision),
        gamma: enc(&k, &sol.gamma, cfg.precision),
        gamma_precision: sol.achieved_precision.min(cfg.precision),
        canonical_lift_caveat: caveat,
        del_psi,
        theta_g: encode_sparse(
            &k,
            &ctx.ore().from_terms(theta.g.terms().iter().map(|c| c.clone().truncated(cfg.precision)).collect()),
        ),
        basis,
        closed_forms,
        certificates,
    };
    Ok(Outcome::single(json(&record), summary, certified))
}

fn crystal_body(cfg: &RunConfig, module: DrinfeldModule, k: &FiniteField) -> dchar_core::Result<CrystalBody> {
    let ctx = context(cfg, module);
    let engine = CharacterEngine::new(&ctx, ctx.rank() + 1)?;
    let (data, _) = engine.crystal()?;
    Ok(CrystalBody::of(k, &data, cfg.precision))
}

fn describe(body: &CrystalBody) -> String {
    let lambda: Vec<String> = body.lambda.iter().map(residue_text).collect();
    format!(
        "m = {}, λ mod π = [{}], v(γ) = {}, γ known to precision {}, {}",
        body.m,
        lambda.join(", "),
        body.gamma.iter().take_while(|c| c.iter().all(|d| d == "0")).count(),
        body.gamma_precision,
        failing(&body.certificates)
    )
}

fn crystal(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let k = cfg.finite_field()?;
    let module = cfg.drinfeld_module(&k)?;
    let body = crystal_body(cfg, module.clone(), &k).map_err(computation)?;
    let certified = all_pass(&body.certificates);
    let summary = vec![format!("crystal: {}", describe(&body))];
    let record = CrystalRecord {
        task: Task::Crystal,
        index: None,
        input: InputConfig::new(cfg, Some(&module)),
        body: Some(body),
        error: None,
    };
    Ok(Outcome::single(json(&record), summary, certified))
}

/// The `index`-th module of the sweep family: its own ChaCha stream under the run seed.
fn sweep_module(cfg: &RunConfig, k: &Arc<FiniteField>, index: usize) -> Result<DrinfeldModule, CliError> {
    let spec = cfg.sweep.as_ref().expect("validated");
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    DrinfeldModule::random(k.clone(), spec.rank, spec.terms, spec.a1, &mut rng)
        .map_err(|e| CliError::Config(format!("sweep: {e}")))
}

fn sweep(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let k = cfg.finite_field()?;
    let spec = cfg.sweep.as_ref().expect("validated");
    let modules = (0..spec.count).map(|i| sweep_module(cfg, &k, i)).collect::<Result<Vec<_>, _>>()?;
    let results: Vec<(CrystalRecord, SweepRow)> = modules
        .into_par_iter()
        .enumerate()
        .map(|(index, module)| {
            let mut row = SweepRow {
                index,
                rank: module.rank(),
                a1_residue: encode_ff(&k, module.raw_coeffs()[0][0]).join("."),
                m: None,
                lambda1_residue: None,
                gamma_valuation: None,
                gamma_precision: None,
                caveat: None,
                certified: false,
                error: None,
            };
            let input = InputConfig::new(cfg, Some(&module));
            let (body, error) = match crystal_body(cfg, module, &k) {
                Ok(body) => {
                    row.m = Some(body.m);
                    row.lambda1_residue = body.lambda.first().map(residue_text);
                    row.gamma_valuation =
                        Some(body.gamma.iter().take_while(|c| c.iter().all(|d| d == "0")).count() as u32);
                    row.gamma_precision = Some(body.gamma_precision);
                    row.caveat = Some(body.canonical_lift_caveat);
                    row.certified = all_pass(&body.certificates);
                    (Some(body), None)
                }
                Err(e) => {
                    row.error = Some(e.to_string());
                    (None, Some(e.to_string()))
                }
            };
            (CrystalRecord { task: Task::Sweep, index: Some(index), input, body, error }, row)
        })
        .collect();

    let mut writer = csv::Writer::from_writer(Vec::new());
    let mut summary = Vec::new();
    let mut records = Vec::with_capacity(results.len());
    for (record, row) in &results {
        writer.serialize(row).map_err(|e| CliError::Io(e.to_string()))?;
        summary.push(match (&record.body, &record.error) {
            (Some(body), _) => format!("module {}: {}", row.index, describe(body)),
            (None, Some(err)) => format!("module {}: error {err}", row.index),
            (None, None) => unreachable!("a record has a body or an error"),
        });
        records.push(json(record));
    }
    let certified_count = results.iter().filter(|(_, row)| row.certified).count();
    summary.push(format!("sweep: {certified_count}/{} modules certified", results.len()));
    let csv = writer.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    Ok(Outcome { records, csv: Some(csv), summary, certified: certified_count == results.len() })
}

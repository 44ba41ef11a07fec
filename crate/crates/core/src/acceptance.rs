//! The twelve acceptance criteria as deterministic runners. Shared by the
//! `acceptance` test target and `dchar selftest`.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::characters::{ext_reduce, inner_derivation, order0_certificate, rank2_closed_forms, CharacterEngine};
use crate::field::{FFElem, FieldSpec, FiniteField};
use crate::jet::{A1Mode, DrinfeldModule, JetContext};
use crate::local::{LocalElem, LocalRing};
use crate::twisted::{AdditivePoly, OreRing};
use crate::witt::{SymPoly, SymRing, WittRing, WittVector};

pub const PRECISION: u32 = 16;
pub const PAD: u32 = 8;
pub const DEGREE_BOUND: usize = 32;

/// Outcome of one criterion.
#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub pass: bool,
    pub checked: usize,
    pub failures: usize,
    pub detail: String,
}

impl CriterionReport {
    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!(
            "criterion {:>2} {verdict} {}: {} checks, {} failures",
            self.id, self.name, self.checked, self.failures
        );
        if !self.detail.is_empty() {
            s.push_str("; ");
            s.push_str(&self.detail);
        }
        s
    }
}

#[derive(Default)]
struct Tally {
    checked: usize,
    failures: usize,
    notes: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.notes.len() < 4 {
                self.notes.push(what());
            }
        }
    }

    fn report(self, id: u8, name: &'static str, extra: Vec<String>) -> CriterionReport {
        let mut detail = extra;
        detail.extend(self.notes);
        CriterionReport {
            id,
            name,
            pass: self.failures == 0 && self.checked > 0,
            checked: self.checked,
            failures: self.failures,
            detail: detail.join("; "),
        }
    }
}

pub fn field(p: u32, h: u32, f: u32, s: u32) -> Arc<FiniteField> {
    let spec = FieldSpec::with_default_modulus(p, h, f, s).expect("default modulus");
    Arc::new(FiniteField::new(spec).expect("valid field"))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn agree_all(ring: &LocalRing, a: &[LocalElem], b: &[LocalElem]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| ring.agrees(x, y))
}

fn min_prec(xs: &[LocalElem]) -> u32 {
    xs.iter().map(|x| x.known_prec()).min().unwrap_or(0)
}

/// A seeded module over `F_3` with the given residue degree, extension and rank.
pub fn sample_module(f: u32, s: u32, rank: usize, mode: A1Mode, seed: u64) -> JetContext {
    let k = field(3, 1, f, s);
    let mut r = rng(seed);
    let m = DrinfeldModule::random(k, rank, 4, mode, &mut r).expect("random module");
    JetContext::new(m, PRECISION, PAD, DEGREE_BOUND)
}

/// Rank-2 modules over every combination of `f ∈ {1, 2}`, `a_1` unit or not, `s ∈ {1, 2}`.
pub fn rank2_family() -> Vec<(String, JetContext)> {
    let mut out = Vec::new();
    for f in [1, 2] {
        for mode in [A1Mode::Unit, A1Mode::NonUnit] {
            for s in [1, 2] {
                for seed in 0..4u64 {
                    let label = format!("f={f} s={s} a1={mode:?} seed={seed}");
                    out.push((label, sample_module(f, s, 2, mode, 1000 + seed)));
                }
            }
        }
    }
    out
}

/// Ten rank-3 and five rank-4 modules.
pub fn higher_rank_family() -> Vec<(String, JetContext)> {
    let shapes = [(1, 1), (2, 1), (1, 2)];
    let mut out = Vec::new();
    for (rank, count) in [(3usize, 10u64), (4, 5)] {
        for seed in 0..count {
            let (f, s) = shapes[seed as usize % shapes.len()];
            let label = format!("r={rank} f={f} s={s} seed={seed}");
            out.push((label, sample_module(f, s, rank, A1Mode::Any, 2000 + seed)));
        }
    }
    out
}

/// 1. Witt-vector laws over `F_9[[π]]/π^16`.
pub fn criterion_witt_laws() -> CriterionReport {
    let mut t = Tally::default();
    let mut r = rng(1);
    for (f, s) in [(2, 1), (1, 2)] {
        let ring = LocalRing::new(field(3, 1, f, s), PRECISION);
        for trial in 0..100 {
            let n = 1 + trial % 3;
            let w = WittRing::new(&ring, n);
            let mut rand_vec = || WittVector::new((0..=n).map(|_| ring.random(&mut r)).collect::<Vec<_>>());
            let (x, y, z) = (rand_vec(), rand_vec(), rand_vec());
            let tag = |law: &str| format!("{law} (f={f}, s={s}, n={n}, trial {trial})");
            let res: crate::Result<()> = (|| {
                let gx = w.ghost(&x)?;
                let gy = w.ghost(&y)?;
                let sum = w.add(&x, &y)?;
                let gsum: Vec<_> = gx.iter().zip(&gy).map(|(a, b)| ring.add(a, b)).collect();
                t.check(agree_all(&ring, &w.ghost(&sum)?, &gsum), || tag("ghost additive"));
                let prod = w.mul(&x, &y)?;
                let gprod: Vec<_> = gx.iter().zip(&gy).map(|(a, b)| ring.mul(a, b)).collect();
                t.check(agree_all(&ring, &w.ghost(&prod)?, &gprod), || tag("ghost multiplicative"));
                t.check(agree_all(&ring, &w.unghost(&gsum)?.comps, &sum.comps), || tag("componentwise addition"));
                t.check(agree_all(&ring, &prod.comps, &w.mul(&y, &x)?.comps), || tag("commutativity"));
                let lhs = w.mul(&prod, &z)?;
                let rhs = w.mul(&x, &w.mul(&y, &z)?)?;
                t.check(agree_all(&ring, &lhs.comps, &rhs.comps), || tag("associativity"));
                let lhs = w.mul(&x, &w.add(&y, &z)?)?;
                let rhs = w.add(&prod, &w.mul(&x, &z)?)?;
                t.check(agree_all(&ring, &lhs.comps, &rhs.comps), || tag("distributivity"));
                t.check(agree_all(&ring, &w.mul(&x, &w.one())?.comps, &x.comps), || tag("unit"));
                let w1 = WittRing::new(&ring, n + 1);
                let fv = w1.frobenius(&w.verschiebung(&x)?)?;
                t.check(agree_all(&ring, &fv.comps, &w.scale(&ring.pi(), &x)?.comps), || tag("FV = π"));
                let wm = WittRing::new(&ring, n - 1);
                let ffv = w.frobenius(&fv)?;
                let fvf = w.frobenius(&wm.verschiebung(&w.frobenius(&x)?)?)?;
                t.check(agree_all(&ring, &ffv.comps, &fvf.comps), || tag("FFV = FVF"));
                let (a, b) = (ring.random(&mut r), ring.random(&mut r));
                let ta = w.teichmuller(&a);
                let tb = w.teichmuller(&b);
                let tab = w.teichmuller(&ring.mul(&a, &b));
                t.check(agree_all(&ring, &w.mul(&ta, &tb)?.comps, &tab.comps), || tag("Teichmüller multiplicative"));
                let tsum = w.teichmuller(&ring.add(&a, &b));
                t.check(agree_all(&ring, &w.add(&ta, &tb)?.comps, &tsum.comps), || tag("Teichmüller additive"));
                t.check(min_prec(&prod.comps) + n as u32 >= PRECISION, || tag("product precision contract"));
                Ok(())
            })();
            if let Err(e) = res {
                t.check(false, || tag(&format!("error {e}")));
            }
        }
    }
    t.report(1, "Witt-vector laws", vec![])
}

/// 2. Universal product polynomials against the ghost route over the flat symbolic carrier.
pub fn criterion_universal_oracle() -> CriterionReport {
    let mut t = Tally::default();
    for (e, nmax) in [(1u32, 3usize), (2, 2)] {
        let sym = SymRing::new(3, e, 1, 2);
        let monomials: Vec<SymPoly> = vec![
            sym.monomial(&[], vec![1]),
            sym.monomial(&[(0, 1)], vec![1]),
            sym.monomial(&[(1, 1)], vec![1]),
            sym.monomial(&[(0, 2)], vec![1]),
            sym.monomial(&[(0, 1), (1, 1)], vec![1]),
            sym.monomial(&[(1, 2)], vec![1]),
        ];
        for n in 0..=nmax {
            let w = WittRing::new(&sym, n);
            let inputs: Vec<WittVector<SymPoly>> = (0..=n)
                .flat_map(|pos| {
                    let w = &w;
                    monomials.iter().map(move |m| {
                        let mut v = w.zero();
                        v.comps[pos] = m.clone();
                        v
                    })
                })
                .collect();
            for x in &inputs {
                for y in &inputs {
                    let ok = match (w.mul(x, y), w.mul_ghost(x, y)) {
                        (Ok(a), Ok(b)) => a == b,
                        _ => false,
                    };
                    t.check(ok, || format!("q̂ = 3^{e}, n = {n}"));
                }
            }
        }
    }
    t.report(2, "universal-polynomial oracle", vec![])
}

/// 3. `scalar_embed(r)` in `W_2` against `(r, r', r'' + π^(q̂-2) (r')^q̂)`.
pub fn criterion_scalar_embed() -> CriterionReport {
    let mut t = Tally::default();
    let mut r = rng(3);
    for (f, s) in [(1, 2), (2, 1)] {
        let ring = LocalRing::new(field(3, 1, f, s), PRECISION);
        let w = WittRing::new(&ring, 2);
        let qhat = 3u32.pow(f);
        for _ in 0..25 {
            let x = ring.random(&mut r);
            let d1 = ring.delta(&x);
            let d2 = ring.delta(&d1);
            let third = ring.add(&d2, &ring.mul(&ring.pi_pow(qhat - 2), &ring.pow_qhat(&d1, 1)));
            let ok = w.scalar_embed(&x).map(|v| agree_all(&ring, &v.comps, &[x.clone(), d1, third]));
            t.check(ok.unwrap_or(false), || format!("f={f}, s={s}"));
        }
    }
    t.report(3, "coordinate change for the structure map", vec![])
}

/// 4. `ϑ_1 ∘ t = π ϑ_1` with `b_0 = 1`, `v(b_i) ≥ i`.
pub fn criterion_linearization() -> CriterionReport {
    let mut t = Tally::default();
    let shapes = [(1, 1), (2, 1), (1, 2), (2, 2)];
    for i in 0..20u64 {
        let (f, s) = shapes[i as usize % 4];
        let rank = 2 + (i as usize % 2);
        let ctx = sample_module(f, s, rank, A1Mode::Any, 400 + i);
        let ore = ctx.ore();
        let ring = ctx.ring();
        let res: crate::Result<()> = (|| {
            let theta = ctx.theta_iso(1)?;
            let k = ctx.kernel_matrix(1)?;
            let db = ctx.degree_bound();
            let lhs = ore.truncate_degree(&ore.compose(&theta, k.get(0, 0)), db);
            let rhs = ore.truncate_degree(&ore.scale(&ring.pi(), &theta), db);
            let prec = ore.agreement_prec(&lhs, &rhs);
            t.check(prec.is_some_and(|p| p >= ctx.report_prec()), || format!("intertwining, module {i}"));
            t.check(ring.agrees(&ore.coeff(&theta, 0), &ring.one()), || format!("b_0, module {i}"));
            t.check(theta.nonzero_terms().all(|(j, c)| c.valuation() as usize >= j), || {
                format!("v(b_i) ≥ i, module {i}")
            });
            Ok(())
        })();
        if let Err(e) = res {
            t.check(false, || format!("module {i}: {e}"));
        }
    }
    t.report(4, "linearization ϑ_1", vec![])
}

fn random_sdagger<R: rand::Rng>(ore: &OreRing, deg: usize, r: &mut R) -> AdditivePoly {
    let ring = ore.base();
    let terms = (0..=deg)
        .map(|i| if i == 0 { ring.random_unit(r) } else { ring.mul(&ring.pi_pow(i as u32), &ring.random(r)) })
        .collect();
    ore.from_terms(terms)
}

/// 5. Two-sided inverses in `S†`.
pub fn criterion_sdagger() -> CriterionReport {
    let mut t = Tally::default();
    let mut r = rng(5);
    let bound = 12;
    for (f, s) in [(1, 2), (2, 1)] {
        let ore = OreRing::new(LocalRing::new(field(3, 1, f, s), PRECISION));
        let one = ore.tau(0);
        for k in 0..25 {
            let x = random_sdagger(&ore, 1 + k % 5, &mut r);
            match ore.invert_sdagger(&x, bound) {
                Ok(y) => {
                    t.check(ore.in_sdagger(&y), || format!("inverse not in S† (f={f}, s={s})"));
                    let right = ore.truncate_degree(&ore.compose(&x, &y), bound);
                    let left = ore.truncate_degree(&ore.compose(&y, &x), bound);
                    let full = |p: Option<u32>| p.is_some_and(|p| p >= PRECISION);
                    t.check(full(ore.agreement_prec(&right, &one)), || format!("x ∘ x⁻¹ ≠ 1 (f={f}, s={s})"));
                    t.check(full(ore.agreement_prec(&left, &one)), || format!("x⁻¹ ∘ x ≠ 1 (f={f}, s={s})"));
                }
                Err(e) => t.check(false, || format!("{e}")),
            }
        }
    }
    t.report(5, "S† inverses", vec![])
}

/// 6. `φ∘φ∘i = φ∘i∘𝔣` and A-linearity of `𝔣`, for `n = 2, 3`.
pub fn criterion_lateral_frobenius() -> CriterionReport {
    let mut t = Tally::default();
    let shapes = [(1, 1), (2, 1), (1, 2), (2, 2)];
    for i in 0..20u64 {
        let (f, s) = shapes[i as usize % 4];
        let ctx = sample_module(f, s, 2 + (i as usize % 2), A1Mode::Any, 600 + i);
        for n in [2, 3] {
            match ctx.check_iphi(n) {
                Ok(certs) => {
                    for c in certs {
                        t.check(c.pass, || format!("{} at n={n}, module {i}", c.name));
                    }
                }
                Err(e) => t.check(false, || format!("module {i}: {e}")),
            }
        }
    }
    t.report(6, "lateral Frobenius", vec![])
}

/// Rank of a matrix over the residue field.
fn residue_rank(k: &FiniteField, mut rows: Vec<Vec<FFElem>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(rank, p);
        let inv = k.inv(rows[rank][c]).expect("nonzero");
        for i in 0..rows.len() {
            if i != rank && !rows[i][c].is_zero() {
                let factor = k.mul(rows[i][c], inv);
                for j in c..cols {
                    let sub = k.mul(factor, rows[rank][j]);
                    rows[i][j] = k.sub(rows[i][j], sub);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// 7. `Ψ_i ≡ x_1^(q̂^(i-1)) mod π` and independence mod π.
pub fn criterion_psi_structure() -> CriterionReport {
    let mut t = Tally::default();
    let shapes = [(1, 1), (2, 1), (1, 2), (2, 2)];
    for i in 0..8u64 {
        let (f, s) = shapes[i as usize % 4];
        let ctx = sample_module(f, s, 2 + (i as usize % 2), A1Mode::Any, 700 + i);
        let ore = ctx.ore();
        let k = ctx.ring().field();
        let rows = match ctx.psi_rows(4) {
            Ok(r) => r,
            Err(e) => {
                t.check(false, || format!("module {i}: {e}"));
                continue;
            }
        };
        let fdeg = f as usize;
        for n in 1..=4 {
            let mut residues = Vec::new();
            for (idx, row) in rows.iter().take(n).enumerate() {
                let target = fdeg * idx;
                let mut ok = true;
                let mut flat = Vec::new();
                for (j, entry) in row.iter().take(n).enumerate() {
                    for d in 0..=fdeg * 4 {
                        let c = ore.coeff(entry, d).residue();
                        let want = if j == 0 && d == target { FFElem::ONE } else { FFElem::ZERO };
                        ok &= c == want;
                        flat.push(c);
                    }
                }
                t.check(ok, || format!("Ψ_{} mod π at n={n}, module {i}", idx + 1));
                residues.push(flat);
            }
            t.check(residue_rank(k, residues) == n, || format!("independence mod π at n={n}, module {i}"));
        }
    }
    t.report(7, "Ψ structure", vec![])
}

/// 8. Pipeline `λ_1`, `γ` against the rank-2 closed forms.
pub fn criterion_closed_forms() -> CriterionReport {
    let mut t = Tally::default();
    let mut uncovered = Vec::new();
    let mut covered_by_category = std::collections::BTreeMap::new();
    for (label, ctx) in rank2_family() {
        let category = label.split(" s=").next().unwrap_or("").to_string()
            + label.split(" a1=").nth(1).map(|x| x.split(' ').next().unwrap_or("")).unwrap_or("");
        let res: crate::Result<()> = (|| {
            let eng = CharacterEngine::new(&ctx, 3)?;
            let (data, _) = eng.crystal()?;
            let cf = rank2_closed_forms(&ctx)?;
            if data.m != 2 {
                uncovered.push(format!("{label}: m = {}", data.m));
                return Ok(());
            }
            let lambda1 = match cf.lambda1 {
                Ok(l) => l,
                Err(_) => {
                    uncovered.push(format!("{label}: degenerate factor"));
                    return Ok(());
                }
            };
            *covered_by_category.entry(category).or_insert(0usize) += 1;
            t.check(data.lambda[0].residue() == lambda1, || format!("λ_1 mismatch: {label}"));
            if let Ok(g) = cf.gamma_over_pi {
                let ok = data.gamma.coeff(0).is_zero() && data.gamma.coeff(1) == g && data.gamma_precision >= 2;
                t.check(ok, || format!("γ mismatch: {label}"));
            }
            Ok(())
        })();
        if let Err(e) = res {
            t.check(false, || format!("{label}: {e}"));
        }
    }
    let covered: usize = covered_by_category.values().sum();
    let categories_ok = covered_by_category.len() == 4;
    if covered < 20 || !categories_ok {
        t.check(false, || format!("only {covered} covered modules in {} categories", covered_by_category.len()));
    }
    let extra = vec![format!("{covered} covered modules, {} outside the closed forms", uncovered.len())];
    t.report(8, "rank-2 closed forms", extra)
}

/// 9. Integrality of `λ` and of the `X_n` basis in ranks 3 and 4.
pub fn criterion_integrality() -> CriterionReport {
    let mut t = Tally::default();
    for (label, ctx) in higher_rank_family() {
        let r = ctx.rank();
        let res: crate::Result<()> = (|| {
            let eng = CharacterEngine::new(&ctx, r + 2)?;
            let (data, theta) = eng.crystal()?;
            for (i, l) in data.lambda.iter().enumerate() {
                t.check(l.known_prec() > 0, || format!("λ_{} not determined: {label}", i + 1));
            }
            let basis = eng.xn_basis(&theta, data.m + 2)?;
            for (j, b) in basis.iter().enumerate() {
                let expansion = b.certificates.iter().all(|c| c.pass);
                t.check(expansion, || format!("basis element {j} not integral: {label}"));
                let lead = &b.mu[data.m + j - 1];
                t.check(lead.is_unit() && b.mu.len() == data.m + j, || {
                    format!("leading coefficient of basis element {j}: {label}")
                });
            }
            Ok(())
        })();
        if let Err(e) = res {
            t.check(false, || format!("{label}: {e}"));
        }
    }
    t.report(9, "integrality", vec![])
}

fn all_modules() -> Vec<(String, JetContext)> {
    let mut v = rank2_family();
    v.extend(higher_rank_family());
    v
}

/// 10. `i^*φ^*Θ_m - 𝔣^*(i^*Θ_m) - φ(γ) Ψ_1 = 0`.
pub fn criterion_prop_diff() -> CriterionReport {
    let mut t = Tally::default();
    let mut literal = (0usize, 0usize);
    for (label, ctx) in all_modules() {
        let res: crate::Result<()> = (|| {
            let eng = CharacterEngine::new(&ctx, ctx.rank() + 1)?;
            let (data, theta) = eng.crystal()?;
            let cert = data.certificates.iter().find(|c| c.name == "prop_diff").cloned();
            t.check(cert.is_some_and(|c| c.pass), || format!("prop_diff: {label}"));
            if ctx.ring().field().spec().s == 1 {
                literal.0 += 1;
                literal.1 += usize::from(eng.prop_diff(&theta, &data.gamma)?.pass);
            }
            Ok(())
        })();
        if let Err(e) = res {
            t.check(false, || format!("{label}: {e}"));
        }
    }
    let extra = vec![format!("untwisted γΨ_1 form holds on {}/{} modules with s = 1", literal.1, literal.0)];
    t.report(10, "difference identity", extra)
}

/// 11. `Γ` against the direct computation of `𝔣^*` in the `Ψ` basis.
pub fn criterion_crystal_shape() -> CriterionReport {
    let mut t = Tally::default();
    for (label, ctx) in all_modules() {
        let res: crate::Result<()> = (|| {
            let data = CharacterEngine::new(&ctx, ctx.rank() + 1)?.crystal()?.0;
            let m = data.m;
            let ring = ctx.ring();
            let mut shape = data.big_gamma.len() == m;
            for (i, row) in data.big_gamma.iter().enumerate() {
                for (j, e) in row.iter().enumerate().take(m - 1) {
                    let want = if i == j + 1 { ring.one() } else { ring.zero() };
                    shape &= ring.agrees(e, &want);
                }
            }
            t.check(shape, || format!("companion shape: {label}"));
            let cert = data.certificates.iter().find(|c| c.name == "gamma_matrix").cloned();
            t.check(cert.is_some_and(|c| c.pass), || format!("last column: {label}"));
            Ok(())
        })();
        if let Err(e) = res {
            t.check(false, || format!("{label}: {e}"));
        }
    }
    t.report(11, "crystal matrix", vec![])
}

/// 12. Order-0 blow-up, inner derivations, and the zero `Ext^♯` class of `i^*φ^*Θ`.
pub fn criterion_vanishing() -> CriterionReport {
    let mut t = Tally::default();
    let mut r = rng(12);
    for (label, ctx) in all_modules() {
        match order0_certificate(&ctx, ctx.degree_bound()) {
            Ok(rep) => t.check(rep.certificate.pass && rep.first_step_valuation == -1, || format!("order 0: {label}")),
            Err(e) => t.check(false, || format!("order 0: {label}: {e}")),
        }
    }
    for i in 0..100u64 {
        let ctx = sample_module(
            1 + (i % 2) as u32,
            1 + ((i / 2) % 2) as u32,
            2 + (i % 3) as usize,
            A1Mode::Any,
            1200 + i / 10,
        );
        let ore = ctx.ore();
        let ring = ctx.ring();
        let alpha = ore.from_terms((0..=(i as usize % 4)).map(|_| ring.random(&mut r)).collect());
        let ok = ext_reduce(&ctx, &inner_derivation(&ctx, &alpha)).is_ok_and(|c| c.is_zero());
        t.check(ok, || format!("inner derivation {i}"));
    }
    for (label, ctx) in all_modules().into_iter().step_by(2) {
        let res: crate::Result<()> = (|| {
            let eng = CharacterEngine::new(&ctx, ctx.rank() + 2)?;
            let (data, theta) = eng.crystal()?;
            let basis = eng.xn_basis(&theta, data.m + 1)?;
            let coeffs: Vec<LocalElem> = basis.iter().map(|_| ctx.ring().random(&mut r)).collect();
            let ch = eng.combine(&basis, &coeffs)?;
            let pulled = eng.phi_star(&ch)?;
            let class = eng.ext_sharp_image(&pulled.row[1..])?;
            t.check(class.is_zero(), || format!("Ext♯ class of i*φ*Θ: {label}"));
            let own = eng.ext_sharp_image(&theta.row[1..])?;
            let lie = ctx.ring().neg(&ctx.ring().div_pi(&data.gamma, 1)?);
            t.check(own.ext.is_zero() && ctx.ring().agrees(&own.lie, &lie), || format!("Ext♯ class of i*Θ_m: {label}"));
            Ok(())
        })();
        if let Err(e) = res {
            t.check(false, || format!("{label}: {e}"));
        }
    }
    t.report(12, "vanishing", vec![])
}

/// All twelve criteria, in order.
pub fn run_all() -> Vec<CriterionReport> {
    vec![
        criterion_witt_laws(),
        criterion_universal_oracle(),
        criterion_scalar_embed(),
        criterion_linearization(),
        criterion_sdagger(),
        criterion_lateral_frobenius(),
        criterion_psi_structure(),
        criterion_closed_forms(),
        criterion_integrality(),
        criterion_prop_diff(),
        criterion_crystal_shape(),
        criterion_vanishing(),
    ]
}

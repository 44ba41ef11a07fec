//! Ext classes, the splitting data `(m, λ, γ)`, the canonical character `Θ_m`
//! and the crystal matrices.
//!
//! Cocycles for extensions of `E` by `Ĝ_a` are additive polynomials `h`; two
//! cocycles are equivalent when they differ by an inner derivation
//! `ι(α) = π α - α ∘ φ_E(t)`.

use serde::{Deserialize, Serialize};

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::field::FFElem;
use crate::jet::JetContext;
use crate::laurent::{KElem, KField};
use crate::local::LocalElem;
use crate::twisted::{AddMatrix, AdditivePoly};

/// Class in `Ext_A(E, Ĝ_a)`: coordinates on `τ^1, …, τ^(r-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    pub coords: Vec<LocalElem>,
}

impl ExtClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn min_prec(&self, default: u32) -> u32 {
        self.coords.iter().map(|c| c.known_prec()).min().unwrap_or(default)
    }
}

/// Class in `Ext^♯(E, Ĝ_a)`: a `Lie(E)^*` coordinate and an Ext class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtSharpClass {
    pub lie: LocalElem,
    pub ext: ExtClass,
}

impl ExtSharpClass {
    pub fn is_zero(&self) -> bool {
        self.lie.is_zero() && self.ext.is_zero()
    }
}

/// An A-linear character `Θ(x_0, …, x_n) = g(x_0) + Σ_i mu_i Ψ_i(x_1, …, x_n)`.
#[derive(Clone, Debug)]
pub struct Character {
    pub order: usize,
    pub g: AdditivePoly,
    pub mu: Vec<LocalElem>,
    /// The full row `(g, ψ_1, …, ψ_n)` over the coordinates `x_0, …, x_n`.
    pub row: Vec<AdditivePoly>,
    pub certificates: Vec<Certificate>,
}

/// `(m, λ, γ)` together with the crystal matrices.
#[derive(Clone, Debug)]
pub struct SplittingData {
    pub m: usize,
    pub lambda: Vec<LocalElem>,
    pub gamma: LocalElem,
    pub gamma_precision: u32,
    /// `Γ`, `m × m`, row-major.
    pub big_gamma: Vec<Vec<LocalElem>>,
    /// `Γ₀`, present when `γ = 0` is certified.
    pub big_gamma0: Option<Vec<Vec<LocalElem>>>,
    /// Set when `m = 1` was detected at finite precision for `r ≥ 2`.
    pub canonical_lift_caveat: bool,
    pub certificates: Vec<Certificate>,
}

/// Residues predicted by the rank-2 closed forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rank2ClosedForms {
    /// `λ_1 mod π`, or the reason the formula does not apply.
    pub lambda1: std::result::Result<FFElem, String>,
    /// `γ / π mod π`, or the reason no case applies.
    pub gamma_over_pi: std::result::Result<FFElem, String>,
}

/// Outcome of the order-0 recursion.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct Order0Report {
    /// For each seed position, the first degree with negative valuation.
    pub blowup_degree: Vec<Option<usize>>,
    /// `v(b_r)` when seeded with `b_0 = 1, b_1 = … = b_(r-1) = 0`.
    pub first_step_valuation: i64,
    pub certificate: Certificate,
}

/// Result of solving `π g - g ∘ φ_E(t) = h`.
#[derive(Clone, Debug)]
pub struct GSolution {
    pub g: AdditivePoly,
    pub gamma: LocalElem,
    pub achieved_precision: u32,
}

/// Everything derived from one module up to a fixed jet order.
pub struct CharacterEngine<'a> {
    ctx: &'a JetContext,
    n_max: usize,
    act: AddMatrix,
    cocycle: Vec<AdditivePoly>,
    psi: Vec<Vec<AdditivePoly>>,
    theta1: AdditivePoly,
}

impl<'a> CharacterEngine<'a> {
    /// Precomputes the action, cocycle and `Ψ_1, …, Ψ_(n_max)` at order `n_max`.
    pub fn new(ctx: &'a JetContext, n_max: usize) -> Result<Self> {
        let n_max = n_max.max(1);
        let act = ctx.act_matrix(n_max)?;
        let cocycle = (1..=n_max).map(|i| act.get(i, 0).clone()).collect();
        let psi = ctx.psi_rows(n_max)?;
        let theta1 = ctx.theta_iso(1)?;
        Ok(CharacterEngine { ctx, n_max, act, cocycle, psi, theta1 })
    }

    pub fn ctx(&self) -> &JetContext {
        self.ctx
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    fn check_order(&self, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::LengthMismatch { left: n, right: self.n_max });
        }
        Ok(())
    }

    /// `Ψ_i` as a row of length `n` over `x_1, …, x_n`.
    pub fn psi(&self, i: usize, n: usize) -> Result<Vec<AdditivePoly>> {
        self.check_order(n)?;
        if i == 0 || i > n {
            return Err(Error::LengthMismatch { left: i, right: n });
        }
        Ok(self.psi[i - 1][..n].to_vec())
    }

    /// The `t`-action on `J^n E`.
    pub fn act(&self, n: usize) -> Result<AddMatrix> {
        self.check_order(n)?;
        Ok(self.act.submatrix(0..n + 1, 0..n + 1))
    }

    /// `(z_1, …, z_n)`.
    pub fn cocycle(&self, n: usize) -> Result<Vec<AdditivePoly>> {
        self.check_order(n)?;
        Ok(self.cocycle[..n].to_vec())
    }

    /// `h = Ψ ∘ η` for a row `Ψ` over `x_1, …, x_n`.
    pub fn pushout_cocycle(&self, row: &[AdditivePoly]) -> Result<AdditivePoly> {
        let n = row.len();
        self.check_order(n)?;
        Ok(self.ctx.ore().dot(row, &self.cocycle[..n]))
    }

    pub fn del_psi(&self, i: usize, n: usize) -> Result<ExtClass> {
        let h = self.pushout_cocycle(&self.psi(i, n)?)?;
        ext_reduce(self.ctx, &h)
    }

    /// `m` and `λ`, by valuation-pivoted elimination over `K`.
    pub fn splitting(&self) -> Result<(usize, Vec<LocalElem>, bool)> {
        let r = self.ctx.rank();
        let ring = self.ctx.ring();
        let work = self.ctx.work_prec() as i64;
        let del: Vec<ExtClass> = (1..=r).map(|i| self.del_psi(i, r)).collect::<Result<_>>()?;
        for n in 1..=r {
            let threshold = work - 2 * n as i64;
            if let Some(lambda) = dependence(self.ctx, &del[..n], threshold)? {
                let lambda = lambda
                    .iter()
                    .enumerate()
                    .map(|(i, l)| {
                        l.to_local(ring).map_err(|e| match e {
                            Error::IntegralityFailure(msg) => Error::IntegralityFailure(format!("λ_{}: {msg}", i + 1)),
                            other => other,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                return Ok((n, lambda, n == 1 && r >= 2));
            }
        }
        unreachable!("r ∂Ψ classes in a space of rank r - 1 are dependent")
    }

    /// `Ψ_m - Σ λ_i Ψ_i` as a row of length `n ≥ m`.
    pub fn combination(&self, m: usize, lambda: &[LocalElem], n: usize) -> Result<Vec<AdditivePoly>> {
        let ore = self.ctx.ore();
        let mut row = self.psi(m, n)?;
        for (i, l) in lambda.iter().enumerate() {
            row = ore.row_sub(&row, &ore.row_scale(l, &self.psi(i + 1, n)?));
        }
        Ok(row)
    }

    /// Solves `π g - g ∘ φ_E(t) = Ψ ∘ η` for `g` by exact top-down elimination.
    pub fn solve_g(&self, psi_row: &[AdditivePoly]) -> Result<GSolution> {
        let h = self.pushout_cocycle(psi_row)?;
        let ore = self.ctx.ore();
        if !ore.coeff(&h, 0).is_zero() {
            return Err(Error::ConsistencyFailure("h_0 ≠ 0".into()));
        }
        let (alpha, residual) = reduce_full(self.ctx, &h, self.ctx.rank() - 1);
        if !residual.is_zero() {
            return Err(Error::IntegralityFailure("the Ext class of Ψ ∘ η does not vanish".into()));
        }
        let alpha0 = ore.coeff(&alpha, 0);
        let gamma = self.ctx.ring().mul_pi(&alpha0, 1);
        let achieved_precision = gamma.known_prec();
        Ok(GSolution { g: alpha, gamma, achieved_precision })
    }

    /// Builds the full row `(g, Ψ)` and its A-linearity certificate.
    pub fn character_from(&self, g: AdditivePoly, psi_row: Vec<AdditivePoly>, mu: Vec<LocalElem>) -> Result<Character> {
        let n = psi_row.len();
        let ore = self.ctx.ore();
        let mut row = vec![g.clone()];
        row.extend(psi_row);
        let act = self.act(n)?;
        let lhs = ore.row_compose(&row, &act);
        let rhs = ore.row_scale(&self.ctx.ring().pi(), &row);
        let cert =
            Certificate::from_agreement("a_linearity", n, ore.rows_agreement_prec(&lhs, &rhs), self.ctx.report_prec());
        Ok(Character { order: n, g, mu, row, certificates: vec![cert] })
    }

    /// `Θ_m` with `i^*Θ_m = Ψ_m - Σ λ_i Ψ_i`.
    pub fn build_theta(&self, m: usize, lambda: &[LocalElem]) -> Result<(Character, GSolution)> {
        let ring = self.ctx.ring();
        let psi_row = self.combination(m, lambda, m)?;
        let sol = self.solve_g(&psi_row)?;
        let mut mu: Vec<LocalElem> = lambda.iter().map(|l| ring.neg(l)).collect();
        mu.push(ring.one());
        let theta = self.character_from(sol.g.clone(), psi_row, mu)?;
        Ok((theta, sol))
    }

    /// `φ^*Θ = φ(Θ) ∘ F`, of order one more.
    pub fn phi_star(&self, theta: &Character) -> Result<Character> {
        let ore = self.ctx.ore();
        let n = theta.order;
        self.check_order(n + 1)?;
        let fm = self.ctx.frobenius_matrix(n + 1)?;
        let row = ore.row_compose(&ore.row_phi(&theta.row, 1), &fm);
        let g = row[0].clone();
        let psi_row = row[1..].to_vec();
        let (mu, expand_cert) = self.expand_in_psi(&psi_row)?;
        let mut ch = self.character_from(g, psi_row, mu)?;
        ch.certificates.push(expand_cert);
        Ok(ch)
    }

    /// Coefficients `c_i` with `row = Σ c_i Ψ_i`, read off the `x_1` column by a
    /// unit-triangular solve, plus a certificate that the residual vanishes.
    pub fn expand_in_psi(&self, row: &[AdditivePoly]) -> Result<(Vec<LocalElem>, Certificate)> {
        let n = row.len();
        self.check_order(n)?;
        let ore = self.ctx.ore();
        let ring = self.ctx.ring();
        let f = self.ctx.f();
        let mut c: Vec<LocalElem> = Vec::with_capacity(n);
        for k in 1..=n {
            let mut ck = ore.coeff(&row[0], f * (k - 1));
            for (i, ci) in c.iter().enumerate() {
                let b = ring.phi_pow(&ore.coeff(&self.theta1, f * (k - 1 - i)), i as u32);
                ck = ring.sub(&ck, &ring.mul(ci, &b));
            }
            c.push(ck);
        }
        let mut recon = vec![ore.zero(); n];
        for (i, ci) in c.iter().enumerate() {
            recon = ore.row_add(&recon, &ore.row_scale(ci, &self.psi(i + 1, n)?));
        }
        let cert = Certificate::from_agreement(
            "psi_expansion",
            n,
            ore.rows_agreement_prec(row, &recon),
            self.ctx.report_prec(),
        );
        Ok((c, cert))
    }

    /// `Σ c_j Θ_j`, with rows padded to the largest order.
    pub fn combine(&self, chars: &[Character], coeffs: &[LocalElem]) -> Result<Character> {
        if chars.is_empty() || chars.len() != coeffs.len() {
            return Err(Error::LengthMismatch { left: chars.len(), right: coeffs.len() });
        }
        let ore = self.ctx.ore();
        let n = chars.iter().map(|c| c.order).max().expect("nonempty");
        let mut row = vec![ore.zero(); n + 1];
        for (ch, c) in chars.iter().zip(coeffs) {
            let padded = self.ctx.pad_row(ch.row.clone(), n + 1);
            row = ore.row_add(&row, &ore.row_scale(c, &padded));
        }
        let g = row[0].clone();
        let psi_row = row[1..].to_vec();
        let (mu, cert) = self.expand_in_psi(&psi_row)?;
        let mut ch = self.character_from(g, psi_row, mu)?;
        ch.certificates.push(cert);
        Ok(ch)
    }

    /// `[Θ_m, φ^*Θ_m, …, (φ^*)^(n-m) Θ_m]`.
    pub fn xn_basis(&self, theta_m: &Character, n: usize) -> Result<Vec<Character>> {
        if n < theta_m.order {
            return Err(Error::LengthMismatch { left: n, right: theta_m.order });
        }
        let mut out = vec![theta_m.clone()];
        while out.last().expect("nonempty").order < n {
            let next = self.phi_star(out.last().expect("nonempty"))?;
            out.push(next);
        }
        Ok(out)
    }

    /// `i^*φ^*Θ - 𝔣^*(i^*Θ) - φ(γ) Ψ_1 = 0`.
    pub fn prop_diff(&self, theta: &Character, gamma: &LocalElem) -> Result<Certificate> {
        let ore = self.ctx.ore();
        let n = theta.order;
        let phi_theta = self.phi_star(theta)?;
        let lateral = self.ctx.frobenius_matrix(n)?;
        let f_star = ore.row_compose(&ore.row_phi(&theta.row[1..], 1), &lateral);
        let phi_gamma = self.ctx.ring().phi(gamma);
        let expect = ore.row_add(&f_star, &ore.row_scale(&phi_gamma, &self.psi(1, n + 1)?));
        Ok(Certificate::from_agreement(
            "prop_diff",
            n,
            ore.rows_agreement_prec(&phi_theta.row[1..], &expect),
            self.ctx.report_prec(),
        ))
    }

    /// Full pipeline: `m`, `λ`, `γ`, `Θ_m`, `Γ`, `Γ₀` and all certificates.
    pub fn crystal(&self) -> Result<(SplittingData, Character)> {
        let ring = self.ctx.ring();
        let ore = self.ctx.ore();
        let (m, lambda, caveat) = self.splitting()?;
        self.check_order(m + 1)?;
        let (theta, sol) = self.build_theta(m, &lambda)?;
        let mut certificates = theta.certificates.clone();
        certificates.push(self.prop_diff(&theta, &sol.gamma)?);

        let mut big_gamma = vec![vec![ring.zero(); m]; m];
        for (i, row) in big_gamma.iter_mut().enumerate().skip(1) {
            row[i - 1] = ring.one();
        }
        big_gamma[0][m - 1] = ring.neg(&ring.phi(&sol.gamma));
        for (i, l) in lambda.iter().enumerate() {
            big_gamma[i + 1][m - 1] = ring.phi(l);
        }

        // Direct computation of 𝔣^*Ψ_m - i^*φ^*Θ_m in the Ψ basis.
        let phi_theta = self.phi_star(&theta)?;
        let direct = ore.row_sub(&self.psi(m + 1, m + 1)?, &phi_theta.row[1..]);
        let (coeffs, cert) = self.expand_in_psi(&direct)?;
        certificates.push(cert);
        let mut ok = coeffs[m].is_zero();
        let mut prec = coeffs[m].known_prec();
        for (i, c) in coeffs.iter().take(m).enumerate() {
            ok &= ring.agrees(c, &big_gamma[i][m - 1]);
            prec = prec.min(c.known_prec()).min(big_gamma[i][m - 1].known_prec());
        }
        certificates.push(Certificate::from_agreement(
            "gamma_matrix",
            m,
            ok.then_some(prec),
            self.ctx.report_prec().min(prec),
        ));

        let big_gamma0 = sol.gamma.is_zero().then(|| {
            let mut g0 = vec![vec![ring.zero(); m - 1]; m - 1];
            for (i, row) in g0.iter_mut().enumerate().skip(1) {
                row[i - 1] = ring.one();
            }
            for (i, l) in lambda.iter().enumerate() {
                g0[i][m - 2] = l.clone();
            }
            g0
        });

        let data = SplittingData {
            m,
            lambda,
            gamma: sol.gamma.clone(),
            gamma_precision: sol.achieved_precision,
            big_gamma,
            big_gamma0,
            canonical_lift_caveat: caveat,
            certificates,
        };
        Ok((data, theta))
    }

    /// `(E^*_Ψ, s_Ψ)` for a row over `x_1, …, x_n`.
    pub fn ext_sharp_image(&self, row: &[AdditivePoly]) -> Result<ExtSharpClass> {
        let h = self.pushout_cocycle(row)?;
        ext_sharp_reduce(self.ctx, &h)
    }
}

/// `π α - α ∘ φ_E(t)`.
pub fn inner_derivation(ctx: &JetContext, alpha: &AdditivePoly) -> AdditivePoly {
    let ore = ctx.ore();
    let phi_e = ore.from_terms(ctx.coeffs());
    ore.sub(&ore.scale(&ctx.ring().pi(), alpha), &ore.compose(alpha, &phi_e))
}

/// Eliminates `τ^d` for `d > limit` from the top down. Returns `(α, residual)`
/// with `h = residual + ι(α)` and `residual` supported in degrees `≤ limit`.
pub fn reduce_full(ctx: &JetContext, h: &AdditivePoly, limit: usize) -> (AdditivePoly, AdditivePoly) {
    let ring = ctx.ring();
    let ore = ctx.ore();
    let a = ctx.coeffs();
    let r = a.len() - 1;
    let a_r_inv = ring.inv(&a[r]).expect("a_r is a unit");
    let deg = h.len();
    let mut c: Vec<LocalElem> = (0..deg.max(limit + 1)).map(|j| ore.coeff(h, j)).collect();
    let mut alpha = vec![ring.zero(); deg.saturating_sub(r)];
    for d in ((limit + 1).max(r)..deg).rev() {
        let j = d - r;
        let s = ring.neg(&ring.mul(&c[d], &ring.pow_q(&a_r_inv, j as u32)));
        let pi_term = ring.sub(&ring.pi(), &ring.pow_q(&ring.pi(), j as u32));
        c[j] = ring.sub(&c[j], &ring.mul(&s, &pi_term));
        for (i, ai) in a.iter().enumerate().skip(1) {
            c[j + i] = ring.add(&c[j + i], &ring.mul(&s, &ring.pow_q(ai, j as u32)));
        }
        alpha[j] = s;
    }
    c.truncate(limit + 1);
    (ore.from_terms(alpha), ore.from_terms(c))
}

/// Coordinates of a strict cocycle in `Ext_A(E, Ĝ_a)`.
pub fn ext_reduce(ctx: &JetContext, h: &AdditivePoly) -> Result<ExtClass> {
    let ore = ctx.ore();
    ore.require_strict(h)?;
    let r = ctx.rank();
    let (_, residual) = reduce_full(ctx, h, r - 1);
    Ok(ExtClass { coords: (1..r).map(|j| ore.coeff(&residual, j)).collect() })
}

/// Coordinates in `Ext^♯`: eliminate degrees `> r`, then read
/// `lie = c_r / a_r` and `ext_i = c_i - lie · a_i`.
pub fn ext_sharp_reduce(ctx: &JetContext, h: &AdditivePoly) -> Result<ExtSharpClass> {
    let ore = ctx.ore();
    let ring = ctx.ring();
    ore.require_strict(h)?;
    let r = ctx.rank();
    let a = ctx.coeffs();
    let (_, residual) = reduce_full(ctx, h, r);
    let lie = ring.div(&ore.coeff(&residual, r), &a[r])?;
    let coords = (1..r).map(|i| ring.sub(&ore.coeff(&residual, i), &ring.mul(&lie, &a[i]))).collect();
    Ok(ExtSharpClass { lie, ext: ExtClass { coords } })
}

/// If the last column is a `K`-combination of the others (residual valuation at
/// least `threshold`), returns the coefficients.
fn dependence(ctx: &JetContext, cols: &[ExtClass], threshold: i64) -> Result<Option<Vec<KElem>>> {
    let kf = KField::new(ctx.ring());
    let n = cols.len();
    let rows = cols[0].coords.len();
    let mut a: Vec<Vec<KElem>> =
        (0..rows).map(|i| cols.iter().map(|c| KElem::from_local(&c.coords[i])).collect()).collect();
    let mut used = vec![false; rows];
    let mut pivots = Vec::with_capacity(n - 1);
    for k in 0..n - 1 {
        let piv = (0..rows)
            .filter(|&i| !used[i] && !a[i][k].is_zero())
            .min_by_key(|&i| a[i][k].valuation())
            .ok_or_else(|| Error::PrecisionTooLowToCertify(format!("independence of ∂Ψ_1..∂Ψ_{}", k + 1)))?;
        used[piv] = true;
        pivots.push(piv);
        for i in 0..rows {
            if i == piv || a[i][k].is_zero() {
                continue;
            }
            let factor = kf.div(&a[i][k], &a[piv][k])?;
            for j in k..n {
                let t = kf.mul(&factor, &a[piv][j]);
                a[i][j] = kf.sub(&a[i][j], &t);
            }
        }
    }
    let last = n - 1;
    for i in (0..rows).filter(|&i| !used[i]) {
        let v = &a[i][last];
        if !v.is_zero() && v.valuation() < threshold {
            return Ok(None);
        }
        if v.is_zero() && v.prec() < threshold {
            return Err(Error::PrecisionTooLowToCertify(format!(
                "dependence of ∂Ψ_1..∂Ψ_{n} (residual known to {}, need {threshold})",
                v.prec()
            )));
        }
    }
    pivots.iter().enumerate().map(|(k, &p)| kf.div(&a[p][last], &a[p][k])).collect::<Result<Vec<_>>>().map(Some)
}

/// Convenience wrapper: `∂Ψ_i` at order `n`.
pub fn del_psi(ctx: &JetContext, i: usize, n: usize) -> Result<ExtClass> {
    CharacterEngine::new(ctx, n)?.del_psi(i, n)
}

/// Convenience wrapper returning the full splitting data.
pub fn crystal(ctx: &JetContext) -> Result<SplittingData> {
    CharacterEngine::new(ctx, ctx.rank() + 1)?.crystal().map(|(d, _)| d)
}

/// Closed forms for `λ_1 mod π` and `γ mod π²` in rank 2.
pub fn rank2_closed_forms(ctx: &JetContext) -> Result<Rank2ClosedForms> {
    if ctx.rank() != 2 {
        return Err(Error::CaseNotCovered(format!("rank {} is not 2", ctx.rank())));
    }
    let ring = ctx.ring();
    let k = ring.field();
    let a = ctx.coeffs();
    let (a1, a2) = (a[1].residue(), a[2].residue());
    let (d1, d2) = (ring.delta(&a[1]).residue(), ring.delta(&a[2]).residue());
    let q = (ring.p() as u128).pow(ring.h());
    let f = ring.f();
    let w = k.div(a1, a2)?;
    let qf1 = q.pow(f - 1);
    let qf = q.pow(f);
    let e1 = qf1 * (qf - 1) / (q - 1);
    let inner = k.add(k.sub(k.one(), k.mul(d1, k.pow(w, qf1))), k.mul(d2, k.pow(w, qf1 + qf)));
    if inner.is_zero() {
        let why = "1 - a_1' w^(q^(f-1)) + a_2' w^(q^(f-1) + q^f) ≡ 0 mod π, so ∂Ψ_1 ≡ 0 mod π".to_string();
        return Ok(Rank2ClosedForms { lambda1: Err(why.clone()), gamma_over_pi: Err(why) });
    }
    let mut lambda1 = k.mul(k.pow(w, e1), k.pow(inner, qf - 1));
    if f % 2 == 1 {
        lambda1 = k.neg(lambda1);
    }
    let gamma_over_pi = if f == 1 {
        if a1.is_zero() {
            Err("q̂ = q with a_1 ≡ 0 mod π".to_string())
        } else {
            Ok(k.div(lambda1, a1)?)
        }
    } else if f >= 3 || !a1.is_zero() {
        Ok(FFElem::ZERO)
    } else {
        Ok(k.neg(k.div(lambda1, a2)?))
    };
    Ok(Rank2ClosedForms { lambda1: Ok(lambda1), gamma_over_pi })
}

/// Runs `b_i (π - π^(q^i)) = Σ_{k=1}^{r} a_k^(q^(i-k)) b_(i-k)` from unit seeds at
/// each position `0..r` and certifies that the minimal valuation over a sliding
/// window of length `r` strictly drops every `r` steps.
pub fn order0_certificate(ctx: &JetContext, degree_bound: usize) -> Result<Order0Report> {
    let ring = ctx.ring();
    let kf = KField::new(ring);
    let a = ctx.coeffs();
    let r = a.len() - 1;
    let work = ctx.work_prec() as i64;
    let mut blowup = Vec::with_capacity(r);
    let mut first_step = 0i64;
    let mut pass = true;
    let mut detail = None;
    let bound = degree_bound.max(3 * r);
    for seed in 0..r {
        let mut b: Vec<KElem> = (0..r).map(|i| if i == seed { kf.one(work) } else { KElem::zero(work) }).collect();
        for i in r..=bound {
            let mut s = KElem::zero(i64::MAX / 4);
            for (k, ak) in a.iter().enumerate().skip(1) {
                let t = kf.mul(&KElem::from_local(&ring.pow_q(ak, (i - k) as u32)), &b[i - k]);
                s = kf.add(&s, &t);
            }
            let unit = ring.sub(&ring.one(), &ring.pi_pow(pow_sat(ring.p(), ring.h() * i as u32).saturating_sub(1)));
            let denom = kf.mul(&kf.pi_pow(1, i64::MAX / 4), &KElem::from_local(&unit));
            b.push(kf.div(&s, &denom)?);
        }
        if seed == 0 {
            first_step = b[r].valuation();
        }
        blowup.push(b.iter().position(|x| !x.is_zero() && x.valuation() < 0));
        let window_min = |end: usize| (end + 1 - r..=end).map(|j| b[j].valuation()).min().expect("window");
        for end in (r - 1)..=(bound - r) {
            if b[end + 1 - r..=end].iter().all(|x| x.is_zero()) {
                continue;
            }
            if window_min(end + r) >= window_min(end) {
                pass = false;
                detail = Some(format!("seed {seed}: window ending at {} does not drop", end + r));
                break;
            }
        }
        if blowup.last().copied().flatten().is_none() {
            pass = false;
            detail = Some(format!("seed {seed}: no blow-up by degree {bound}"));
        }
    }
    let certificate = Certificate { name: "order0".into(), order: 0, precision: ctx.report_prec(), pass, detail };
    Ok(Order0Report { blowup_degree: blowup, first_step_valuation: first_step, certificate })
}

fn pow_sat(p: u32, e: u32) -> u32 {
    (p as u64).saturating_pow(e).min(u32::MAX as u64) as u32
}

/// Shooting solve of `π g - g ∘ φ_E(t) = h` up to `degree_bound`: `α_j = u_j + α_0 v_j`,
/// with `α_0` pinned by integrality at the index where `v(v_j)` is most negative.
/// Returns `γ = π α_0` and the precision to which it is determined.
pub fn solve_g_shooting(ctx: &JetContext, h: &AdditivePoly, degree_bound: usize) -> Result<(LocalElem, u32)> {
    let ring = ctx.ring();
    let ore = ctx.ore();
    let kf = KField::new(ring);
    let a = ctx.coeffs();
    let r = a.len() - 1;
    let work = ctx.work_prec() as i64;
    let exact = i64::MAX / 4;
    if !ore.coeff(h, 0).is_zero() {
        return Err(Error::ConsistencyFailure("h_0 ≠ 0".into()));
    }
    let mut u = vec![KElem::zero(exact)];
    let mut v = vec![kf.one(exact)];
    for j in 1..=degree_bound {
        let mut su = KElem::from_local(&ore.coeff(h, j));
        let mut sv = KElem::zero(exact);
        for (k, ak) in a.iter().enumerate().skip(1).take(j.min(r)) {
            let c = KElem::from_local(&ring.pow_q(ak, (j - k) as u32));
            su = kf.add(&su, &kf.mul(&c, &u[j - k]));
            sv = kf.add(&sv, &kf.mul(&c, &v[j - k]));
        }
        let unit = ring.sub(&ring.one(), &ring.pi_pow(pow_sat(ring.p(), ring.h() * j as u32).saturating_sub(1)));
        let denom = kf.mul(&kf.pi_pow(1, exact), &KElem::from_local(&unit));
        u.push(kf.div(&su, &denom)?);
        v.push(kf.div(&sv, &denom)?);
    }
    let jstar = (0..=degree_bound).filter(|&j| !v[j].is_zero()).min_by_key(|&j| v[j].valuation()).expect("v_0 = 1");
    let pinned = (-v[jstar].valuation()).max(0);
    let alpha0 = kf.neg(&kf.div(&u[jstar], &v[jstar])?);
    let prec = pinned.min(alpha0.prec()).min(work).max(0);
    let alpha0 = trunc_k(&alpha0, prec);
    for j in 0..=degree_bound {
        let aj = kf.add(&u[j], &kf.mul(&alpha0, &v[j]));
        if !aj.is_zero() && aj.valuation() < 0 {
            return Err(Error::IntegralityFailure(format!("α_{j} has valuation {}", aj.valuation())));
        }
    }
    let alpha0 = alpha0.to_local(ring)?;
    let gamma = ring.mul_pi(&alpha0, 1);
    let gprec = gamma.known_prec();
    Ok((gamma, gprec))
}

fn trunc_k(x: &KElem, prec: i64) -> KElem {
    if x.prec() <= prec {
        return x.clone();
    }
    let kf_lo = x.valuation().min(prec);
    let c: Vec<FFElem> = (kf_lo..prec).map(|e| x.coeff(e)).collect();
    KElem::from_coeffs(kf_lo, c, prec)
}

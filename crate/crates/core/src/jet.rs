//! Drinfeld modules in coordinates and their arithmetic jet spaces.
//!
//! A jet point of order `n` is a Witt vector `(x_0, …, x_n)`. Every map used
//! here (the `t`-action, the Witt Frobenius, characters) is `F_q`-linear, so
//! each is materialised as an [`AddMatrix`] by running the Witt-vector
//! machinery over the additive-form carrier with the coordinate functions as
//! input.

use std::sync::Arc;

use rand::Rng;

use crate::certificate::Certificate;
use crate::error::{Error, Result};
use crate::field::{FFElem, FiniteField};
use crate::local::{LocalElem, LocalRing};
use crate::twisted::{AddMatrix, AdditivePoly, OreRing};
use crate::witt::{AddForms, Carrier, ScalarCarrier, WittRing, WittVector};

/// `φ_E(t) = π + a_1 τ + … + a_r τ^r` with exact coefficients.
#[derive(Clone, Debug)]
pub struct DrinfeldModule {
    field: Arc<FiniteField>,
    t_poly: Vec<FFElem>,
    coeffs: Vec<Vec<FFElem>>,
}

/// Residue condition on `a_1` for random modules.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum A1Mode {
    Unit,
    NonUnit,
    Any,
}

impl DrinfeldModule {
    /// `t_poly` is monic of degree `f` over `F_q` (little-endian); `coeffs` are the
    /// π-expansions of `a_1, …, a_r`.
    pub fn new(field: Arc<FiniteField>, t_poly: Vec<FFElem>, coeffs: Vec<Vec<FFElem>>) -> Result<Self> {
        let spec = field.spec().clone();
        if coeffs.is_empty() {
            return Err(Error::InvalidModule("rank must be at least 1".into()));
        }
        if coeffs.last().and_then(|a| a.first()).is_none_or(|c| c.is_zero()) {
            return Err(Error::InvalidModule("a_r must be a unit".into()));
        }
        if t_poly.len() != spec.f as usize + 1 || t_poly[spec.f as usize] != FFElem::ONE {
            return Err(Error::InvalidModule(format!("t must be monic of degree f = {}", spec.f)));
        }
        if t_poly.iter().any(|&c| !field.in_subfield(c, spec.h)) {
            return Err(Error::InvalidModule("t must have coefficients in F_q".into()));
        }
        if !is_irreducible_over_fq(&field, &t_poly) {
            return Err(Error::InvalidModule("t is not irreducible over F_q".into()));
        }
        Ok(DrinfeldModule { field, t_poly, coeffs })
    }

    /// Uses the first monic irreducible of degree `f` over `F_q` as `t`.
    pub fn with_default_t(field: Arc<FiniteField>, coeffs: Vec<Vec<FFElem>>) -> Result<Self> {
        let t = default_t(&field)?;
        DrinfeldModule::new(field, t, coeffs)
    }

    /// Random module whose coefficients have `terms` π-adic digits.
    pub fn random<R: Rng + ?Sized>(
        field: Arc<FiniteField>,
        rank: usize,
        terms: usize,
        a1: A1Mode,
        rng: &mut R,
    ) -> Result<Self> {
        let mut coeffs: Vec<Vec<FFElem>> =
            (0..rank).map(|_| (0..terms.max(1)).map(|_| field.random(rng)).collect()).collect();
        coeffs[rank - 1][0] = field.random_nonzero(rng);
        if rank > 1 || a1 != A1Mode::Unit {
            match a1 {
                A1Mode::Unit => coeffs[0][0] = field.random_nonzero(rng),
                A1Mode::NonUnit if rank > 1 => coeffs[0][0] = FFElem::ZERO,
                _ => {}
            }
        }
        DrinfeldModule::with_default_t(field, coeffs)
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn t_poly(&self) -> &[FFElem] {
        &self.t_poly
    }

    pub fn raw_coeffs(&self) -> &[Vec<FFElem>] {
        &self.coeffs
    }

    /// `(a_0 = π, a_1, …, a_r)` in `ring`.
    pub fn coeffs_in(&self, ring: &LocalRing) -> Vec<LocalElem> {
        std::iter::once(ring.pi()).chain(self.coeffs.iter().map(|c| ring.from_coeffs(c))).collect()
    }

    /// The module `E^φ` with coefficients `φ(a_j)`.
    pub fn phi_twist(&self) -> DrinfeldModule {
        let e = (self.field.spec().h * self.field.spec().f) as u64;
        let coeffs = self.coeffs.iter().map(|a| a.iter().map(|&c| self.field.frob_p(c, e)).collect()).collect();
        DrinfeldModule { field: self.field.clone(), t_poly: self.t_poly.clone(), coeffs }
    }
}

fn eval_ff(field: &FiniteField, poly: &[FFElem], x: FFElem) -> FFElem {
    poly.iter().rev().fold(FFElem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
}

/// A polynomial of degree `f` over `F_q` is irreducible iff it has a root in
/// `F_{q^f}` whose orbit under `x ↦ x^q` has exactly `f` elements.
fn is_irreducible_over_fq(field: &FiniteField, poly: &[FFElem]) -> bool {
    let spec = field.spec();
    let f = poly.len() - 1;
    field.subfield_elements(spec.h * spec.f).into_iter().any(|x| {
        if !eval_ff(field, poly, x).is_zero() {
            return false;
        }
        let mut y = x;
        for k in 1..=f {
            y = field.frob_q(y, 1);
            if y == x {
                return k == f;
            }
        }
        false
    })
}

fn default_t(field: &FiniteField) -> Result<Vec<FFElem>> {
    let spec = field.spec();
    let fq = field.subfield_elements(spec.h);
    let f = spec.f as usize;
    let count = fq.len().pow(f as u32);
    for idx in 0..count {
        let mut t = Vec::with_capacity(f + 1);
        let mut k = idx;
        for _ in 0..f {
            t.push(fq[k % fq.len()]);
            k /= fq.len();
        }
        t.push(FFElem::ONE);
        if is_irreducible_over_fq(field, &t) {
            return Ok(t);
        }
    }
    Err(Error::InvalidModule(format!("no irreducible polynomial of degree {f} over F_q")))
}

/// A Drinfeld module together with the working ring (precision `N + pad`).
#[derive(Clone, Debug)]
pub struct JetContext {
    module: DrinfeldModule,
    ring: LocalRing,
    ore: OreRing,
    report_prec: u32,
    degree_bound: usize,
}

impl JetContext {
    pub fn new(module: DrinfeldModule, precision: u32, pad: u32, degree_bound: usize) -> Self {
        let ring = LocalRing::new(module.field.clone(), precision + pad);
        let ore = OreRing::new(ring.clone());
        JetContext { module, ring, ore, report_prec: precision, degree_bound }
    }

    pub fn module(&self) -> &DrinfeldModule {
        &self.module
    }

    pub fn ring(&self) -> &LocalRing {
        &self.ring
    }

    pub fn ore(&self) -> &OreRing {
        &self.ore
    }

    /// The user-facing precision `N`.
    pub fn report_prec(&self) -> u32 {
        self.report_prec
    }

    /// The internal precision `N + pad`.
    pub fn work_prec(&self) -> u32 {
        self.ring.precision()
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound
    }

    pub fn rank(&self) -> usize {
        self.module.rank()
    }

    /// `q̂ = q^f` expressed as a number of `τ` steps.
    pub fn f(&self) -> usize {
        self.ring.f() as usize
    }

    pub fn coeffs(&self) -> Vec<LocalElem> {
        self.module.coeffs_in(&self.ring)
    }

    /// Runs `build` over a ring with `extra` more digits, then truncates back, so
    /// that exact π-divisions inside do not cost working precision.
    fn lifted<T>(&self, extra: u32, build: impl FnOnce(&LocalRing, &OreRing) -> Result<T>) -> Result<T> {
        let hi = self.ring.with_precision(self.work_prec() + extra);
        let ore_hi = OreRing::new(hi.clone());
        build(&hi, &ore_hi)
    }

    /// The `t`-action on `J^n E` as an `(n+1) × (n+1)` matrix.
    pub fn act_matrix(&self, n: usize) -> Result<AddMatrix> {
        self.act_matrix_of(&self.module, n)
    }

    pub fn act_matrix_of(&self, module: &DrinfeldModule, n: usize) -> Result<AddMatrix> {
        let m = self.lifted(n as u32 + 1, |hi, ore_hi| {
            let forms = AddForms::new(ore_hi.clone(), n + 1);
            let w = WittRing::new(&forms, n);
            let x = WittVector::new((0..=n).map(|i| forms.var(i)).collect());
            let ghost = w.ghost(&x)?;
            let a = module.coeffs_in(hi);
            let acted: Vec<_> = ghost
                .iter()
                .enumerate()
                .map(|(i, gi)| {
                    a.iter().enumerate().fold(forms.zero(), |acc, (j, aj)| {
                        forms.add(&acc, &forms.scale(&hi.phi_pow(aj, i as u32), &forms.pow_q(gi, j as u32)))
                    })
                })
                .collect();
            Ok(AddMatrix::from_rows(w.unghost(&acted)?.comps))
        })?;
        Ok(self.ore.coerce_matrix(&m))
    }

    /// The Witt Frobenius `F : W_n → W_{n-1}` as an `n × (n+1)` matrix.
    pub fn frobenius_matrix(&self, n: usize) -> Result<AddMatrix> {
        if n == 0 {
            return Err(Error::LengthMismatch { left: 1, right: 2 });
        }
        let m = self.lifted(n as u32 + 1, |_, ore_hi| {
            let forms = AddForms::new(ore_hi.clone(), n + 1);
            let w = WittRing::new(&forms, n);
            let x = WittVector::new((0..=n).map(|i| forms.var(i)).collect());
            Ok(AddMatrix::from_rows(w.frobenius(&x)?.comps))
        })?;
        Ok(self.ore.coerce_matrix(&m))
    }

    /// `(z_1, …, z_n)`: the `x_0`-column of the action below the diagonal.
    pub fn jet_cocycle(&self, n: usize) -> Result<Vec<AdditivePoly>> {
        let m = self.act_matrix(n)?;
        Ok((1..=n).map(|i| m.get(i, 0).clone()).collect())
    }

    /// The `t`-action on `N^n` in the coordinates `x_1, …, x_n`.
    pub fn kernel_matrix(&self, n: usize) -> Result<AddMatrix> {
        Ok(self.act_matrix(n)?.submatrix(1..n + 1, 1..n + 1))
    }

    /// `(π, φ^n(a_1) π^(n(q-1)), …, φ^n(a_r) π^(n(q^r-1)))`.
    pub fn kernel_action_coeffs(&self, n: usize) -> Vec<LocalElem> {
        kernel_action_coeffs_in(&self.module, &self.ring, n)
    }

    /// The linearisation `ϑ_n`: the unique intertwiner to `Ĝ_a` with `b_0 = 1`.
    /// Terms of degree `≥ N + pad` vanish because `v(b_i) ≥ i`.
    pub fn theta_iso(&self, n: usize) -> Result<AdditivePoly> {
        let bound = self.work_prec() as usize;
        let theta = self.lifted(2, |hi, ore_hi| {
            let src = kernel_action_coeffs_in(&self.module, hi, n);
            ore_hi.solve_intertwiner(&src, &[hi.pi()], &hi.one(), bound)
        })?;
        let theta = self.ore.truncate_degree(&self.ore.coerce(&theta), bound - 1);
        for (i, c) in theta.nonzero_terms() {
            if (c.valuation() as usize) < i {
                return Err(Error::IntegralityFailure(format!("v(b_{i}) = {} < {i}", c.valuation())));
            }
        }
        Ok(theta)
    }

    /// `Ψ_1, …, Ψ_n` as rows over `x_1, …, x_n`, with `Ψ_1 = ϑ_1` and
    /// `Ψ_(i+1) = φ(Ψ_i) ∘ F`.
    pub fn psi_rows(&self, n: usize) -> Result<Vec<Vec<AdditivePoly>>> {
        let theta = self.theta_iso(1)?;
        let mut rows: Vec<Vec<AdditivePoly>> = vec![vec![theta]];
        for k in 1..n {
            let fm = self.frobenius_matrix(k)?;
            let prev = self.ore.row_phi(&rows[k - 1], 1);
            rows.push(self.ore.row_compose(&prev, &fm));
        }
        Ok(rows.into_iter().map(|r| self.pad_row(r, n)).collect())
    }

    pub fn pad_row(&self, mut row: Vec<AdditivePoly>, n: usize) -> Vec<AdditivePoly> {
        row.resize(n, self.ore.zero());
        row
    }

    /// `t · p` on a numeric jet point, through the ghost map.
    pub fn act_t_point(&self, p: &WittVector<LocalElem>) -> Result<WittVector<LocalElem>> {
        let n = p.len() - 1;
        let w = WittRing::new(&self.ring, n);
        let ghost = w.ghost(p)?;
        let a = self.coeffs();
        let r = &self.ring;
        let acted: Vec<_> = ghost
            .iter()
            .enumerate()
            .map(|(i, gi)| {
                a.iter().enumerate().fold(r.zero(), |acc, (j, aj)| {
                    r.add(&acc, &r.mul(&r.phi_pow(aj, i as u32), &r.pow_q(gi, j as u32)))
                })
            })
            .collect();
        w.unghost(&acted)
    }

    /// `b(t) · p` for `b ∈ F_q[t]` given by little-endian coefficients in `F_q`.
    pub fn act_point(&self, b: &[FFElem], p: &WittVector<LocalElem>) -> Result<WittVector<LocalElem>> {
        let n = p.len() - 1;
        let w = WittRing::new(&self.ring, n);
        let mut acc = w.zero();
        for &c in b.iter().rev() {
            acc = self.act_t_point(&acc)?;
            let cp = WittVector::new(p.comps.iter().map(|x| self.ring.scale(c, x)).collect());
            acc = w.add(&acc, &cp)?;
        }
        Ok(acc)
    }

    /// The lateral Frobenius `𝔣 : N^n → N^(n-1)` on a point `(0, x_1, …, x_n)`.
    pub fn lateral_frobenius(&self, p: &WittVector<LocalElem>) -> Result<WittVector<LocalElem>> {
        let n = p.len() - 1;
        if n < 2 {
            return Err(Error::LengthMismatch { left: p.len(), right: 3 });
        }
        if !p.comps[0].is_zero() {
            return Err(Error::ConsistencyFailure("lateral Frobenius needs x_0 = 0".into()));
        }
        let w = WittRing::new(&self.ring, n - 1);
        let y = w.frobenius_universal(&WittVector::new(p.comps[1..].to_vec()))?;
        let mut comps = vec![self.ring.zero()];
        comps.extend(y.comps);
        Ok(WittVector::new(comps))
    }

    /// Symbolic certificates for `φ∘φ∘i = φ∘i∘𝔣` and for `𝔣 ∘ t_E = t_(E^φ) ∘ 𝔣`.
    pub fn check_iphi(&self, n: usize) -> Result<Vec<Certificate>> {
        if n < 2 {
            return Err(Error::LengthMismatch { left: n, right: 2 });
        }
        let ore = &self.ore;
        let floor = self.report_prec;
        let f_n = self.frobenius_matrix(n)?;
        let f_n1 = self.frobenius_matrix(n - 1)?;
        let incl_n = AddMatrix::inclusion(ore, n);
        let incl_n1 = AddMatrix::inclusion(ore, n - 1);
        let lhs = ore.mat_compose(&f_n1, &ore.mat_compose(&f_n, &incl_n));
        let rhs = ore.mat_compose(&f_n1, &ore.mat_compose(&incl_n1, &f_n1));
        let iphi = Certificate::from_agreement("iphi", n, ore.mat_agreement_prec(&lhs, &rhs), floor);

        let k_n = self.kernel_matrix(n)?;
        let twisted = self.module.phi_twist();
        let k_tw = self.act_matrix_of(&twisted, n - 1)?.submatrix(1..n, 1..n);
        let lhs = ore.mat_compose(&f_n1, &k_n);
        let rhs = ore.mat_compose(&k_tw, &f_n1);
        let latfrob = Certificate::from_agreement("latfrob_a_linear", n, ore.mat_agreement_prec(&lhs, &rhs), floor);
        Ok(vec![iphi, latfrob])
    }

    /// Random point of `J^n E(R)` (exact components).
    pub fn random_point<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> WittVector<LocalElem> {
        WittVector::new((0..=n).map(|_| self.ring.random(rng)).collect())
    }
}

fn kernel_action_coeffs_in(module: &DrinfeldModule, ring: &LocalRing, n: usize) -> Vec<LocalElem> {
    let q = (ring.p() as u64).pow(ring.h());
    module
        .coeffs_in(ring)
        .iter()
        .enumerate()
        .map(|(j, a)| {
            if j == 0 {
                return a.clone();
            }
            let e = (n as u64).saturating_mul(q.saturating_pow(j as u32) - 1);
            ring.mul_pi(&ring.phi_pow(a, n as u32), e.min(ring.precision() as u64) as u32)
        })
        .collect()
}

/// Applies a matrix of additive polynomials to a numeric vector.
pub fn apply_matrix(ore: &OreRing, m: &AddMatrix, x: &[LocalElem]) -> Vec<LocalElem> {
    let r = ore.base();
    (0..m.rows()).map(|i| (0..m.cols()).fold(r.zero(), |acc, k| r.add(&acc, &ore.eval(m.get(i, k), &x[k])))).collect()
}

/// Applies a row (character) to a numeric vector.
pub fn apply_row(ore: &OreRing, row: &[AdditivePoly], x: &[LocalElem]) -> LocalElem {
    let r = ore.base();
    row.iter().zip(x).fold(r.zero(), |acc, (f, xi)| r.add(&acc, &ore.eval(f, xi)))
}

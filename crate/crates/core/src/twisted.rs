//! Additive polynomials `Σ c_j τ^j` over `R`, where `τ x = x^q`.
//!
//! Composition follows the twisted rule `τ c = c^q τ`. Coefficients beyond the
//! stored length are exact zeros.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::local::{LocalElem, LocalRing};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AdditivePoly {
    terms: Vec<LocalElem>,
}

impl AdditivePoly {
    pub fn terms(&self) -> &[LocalElem] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest index carrying a nonzero coefficient.
    pub fn degree(&self) -> Option<usize> {
        self.terms.iter().rposition(|c| !c.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|c| c.is_zero())
    }

    /// Minimum known precision over stored coefficients (`None` for the empty poly).
    pub fn min_prec(&self) -> Option<u32> {
        self.terms.iter().map(|c| c.known_prec()).min()
    }

    /// Iterates `(degree, coefficient)` over nonzero coefficients.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (usize, &LocalElem)> {
        self.terms.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }
}

/// Matrix of additive polynomials describing `(x_k) ↦ (Σ_k m_ik(x_k))_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AddMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<AdditivePoly>,
}

impl AddMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        AddMatrix { rows, cols, entries: vec![AdditivePoly::default(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<AdditivePoly>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        AddMatrix { rows: rows.len(), cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &AdditivePoly {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, f: AdditivePoly) {
        self.entries[i * self.cols + j] = f;
    }

    pub fn row(&self, i: usize) -> Vec<AdditivePoly> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<AdditivePoly> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> AddMatrix {
        let r: Vec<Vec<AdditivePoly>> = rows.map(|i| cols.clone().map(|j| self.get(i, j).clone()).collect()).collect();
        let ncols = cols.len();
        let nrows = r.len();
        AddMatrix { rows: nrows, cols: ncols, entries: r.into_iter().flatten().collect() }
    }

    /// The inclusion of the last `n` coordinates into `n + 1` coordinates.
    pub fn inclusion(ore: &OreRing, n: usize) -> AddMatrix {
        let mut m = AddMatrix::zero(n + 1, n);
        for k in 0..n {
            m.set(k + 1, k, ore.tau(0));
        }
        m
    }
}

/// Sparse text form: `(degree, coefficient)` pairs.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SparseTerm<C> {
    pub degree: usize,
    pub coeff: C,
}

/// Arithmetic on [`AdditivePoly`] over a fixed [`LocalRing`].
#[derive(Clone, Debug)]
pub struct OreRing {
    ring: LocalRing,
}

impl OreRing {
    pub fn new(ring: LocalRing) -> Self {
        OreRing { ring }
    }

    pub fn base(&self) -> &LocalRing {
        &self.ring
    }

    pub fn zero(&self) -> AdditivePoly {
        AdditivePoly::default()
    }

    pub fn monomial(&self, c: LocalElem, j: usize) -> AdditivePoly {
        let mut terms = vec![self.ring.zero(); j];
        terms.push(c);
        self.normalize(AdditivePoly { terms })
    }

    pub fn tau(&self, j: usize) -> AdditivePoly {
        self.monomial(self.ring.one(), j)
    }

    pub fn from_terms(&self, terms: Vec<LocalElem>) -> AdditivePoly {
        self.normalize(AdditivePoly { terms })
    }

    pub fn coeff(&self, f: &AdditivePoly, j: usize) -> LocalElem {
        f.terms.get(j).cloned().unwrap_or_else(|| self.ring.zero())
    }

    /// Drops trailing coefficients that are zero at full precision.
    fn normalize(&self, mut f: AdditivePoly) -> AdditivePoly {
        let n = self.ring.precision();
        while f.terms.last().is_some_and(|c| c.is_zero() && c.known_prec() >= n) {
            f.terms.pop();
        }
        f
    }

    pub fn add(&self, a: &AdditivePoly, b: &AdditivePoly) -> AdditivePoly {
        let len = a.len().max(b.len());
        let terms = (0..len)
            .map(|j| match (a.terms.get(j), b.terms.get(j)) {
                (Some(x), Some(y)) => self.ring.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        self.normalize(AdditivePoly { terms })
    }

    pub fn neg(&self, a: &AdditivePoly) -> AdditivePoly {
        AdditivePoly { terms: a.terms.iter().map(|c| self.ring.neg(c)).collect() }
    }

    pub fn sub(&self, a: &AdditivePoly, b: &AdditivePoly) -> AdditivePoly {
        self.add(a, &self.neg(b))
    }

    /// `r · f`, i.e. the coefficients are multiplied on the left.
    pub fn scale(&self, r: &LocalElem, f: &AdditivePoly) -> AdditivePoly {
        self.normalize(AdditivePoly { terms: f.terms.iter().map(|c| self.ring.mul(r, c)).collect() })
    }

    pub fn mul_pi(&self, f: &AdditivePoly, k: u32) -> AdditivePoly {
        self.normalize(AdditivePoly { terms: f.terms.iter().map(|c| self.ring.mul_pi(c, k)).collect() })
    }

    pub fn div_pi(&self, f: &AdditivePoly, k: u32) -> Result<AdditivePoly> {
        let terms = f.terms.iter().map(|c| self.ring.div_pi(c, k)).collect::<Result<Vec<_>>>()?;
        Ok(self.normalize(AdditivePoly { terms }))
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &AdditivePoly, g: &AdditivePoly) -> AdditivePoly {
        if f.is_empty() || g.is_empty() {
            return self.zero();
        }
        let len = f.len() + g.len() - 1;
        let mut terms = vec![self.ring.zero(); len];
        for (i, fi) in f.terms.iter().enumerate() {
            if fi.is_zero() && fi.known_prec() >= self.ring.precision() {
                continue;
            }
            for (j, gj) in g.terms.iter().enumerate() {
                let t = self.ring.mul(fi, &self.ring.pow_q(gj, i as u32));
                terms[i + j] = self.ring.add(&terms[i + j], &t);
            }
        }
        self.normalize(AdditivePoly { terms })
    }

    /// `τ^k ∘ f`, i.e. `f(x)^(q^k)`.
    pub fn q_twist(&self, f: &AdditivePoly, k: usize) -> AdditivePoly {
        let mut terms = vec![self.ring.zero(); k];
        terms.extend(f.terms.iter().map(|c| self.ring.pow_q(c, k as u32)));
        self.normalize(AdditivePoly { terms })
    }

    /// `f ∘ τ^k`.
    pub fn shift(&self, f: &AdditivePoly, k: usize) -> AdditivePoly {
        let mut terms = vec![self.ring.zero(); k];
        terms.extend(f.terms.iter().cloned());
        self.normalize(AdditivePoly { terms })
    }

    /// Applies `φ^k` to every coefficient.
    pub fn phi_coeffs(&self, f: &AdditivePoly, k: u32) -> AdditivePoly {
        AdditivePoly { terms: f.terms.iter().map(|c| self.ring.phi_pow(c, k)).collect() }
    }

    pub fn truncate_degree(&self, f: &AdditivePoly, max_deg: usize) -> AdditivePoly {
        let mut g = f.clone();
        g.terms.truncate(max_deg + 1);
        self.normalize(g)
    }

    pub fn eval(&self, f: &AdditivePoly, x: &LocalElem) -> LocalElem {
        let mut acc = self.ring.zero();
        for (j, c) in f.terms.iter().enumerate() {
            acc = self.ring.add(&acc, &self.ring.mul(c, &self.ring.pow_q(x, j as u32)));
        }
        acc
    }

    pub fn linear_coefficient(&self, f: &AdditivePoly) -> LocalElem {
        self.coeff(f, 0)
    }

    /// Errors with `NonzeroLinearTerm` unless the `τ^0` coefficient vanishes.
    pub fn require_strict(&self, f: &AdditivePoly) -> Result<()> {
        if self.coeff(f, 0).is_zero() {
            Ok(())
        } else {
            Err(Error::NonzeroLinearTerm)
        }
    }

    /// Agreement of two polynomials at the precision of each coefficient.
    pub fn agrees(&self, a: &AdditivePoly, b: &AdditivePoly) -> bool {
        let d = self.sub(a, b);
        d.is_zero()
    }

    /// If `a - b` vanishes, the precision to which it is known; `None` otherwise.
    pub fn agreement_prec(&self, a: &AdditivePoly, b: &AdditivePoly) -> Option<u32> {
        let d = self.sub(a, b);
        if d.is_zero() {
            Some(d.min_prec().unwrap_or(self.ring.precision()))
        } else {
            None
        }
    }

    /// Re-embeds a polynomial computed over another ring with the same residue field.
    pub fn coerce(&self, f: &AdditivePoly) -> AdditivePoly {
        self.normalize(AdditivePoly { terms: f.terms.iter().map(|c| self.ring.coerce(c)).collect() })
    }

    pub fn coerce_matrix(&self, m: &AddMatrix) -> AddMatrix {
        AddMatrix { rows: m.rows, cols: m.cols, entries: m.entries.iter().map(|f| self.coerce(f)).collect() }
    }

    /// `Σ_j row_j ∘ m_jk`.
    pub fn row_compose(&self, row: &[AdditivePoly], m: &AddMatrix) -> Vec<AdditivePoly> {
        assert_eq!(row.len(), m.rows, "row length must match matrix rows");
        (0..m.cols)
            .map(|k| {
                row.iter().enumerate().fold(self.zero(), |acc, (j, rj)| self.add(&acc, &self.compose(rj, m.get(j, k))))
            })
            .collect()
    }

    /// Sum of the entries of a row composed with a column: `Σ_j row_j ∘ col_j`.
    pub fn dot(&self, row: &[AdditivePoly], col: &[AdditivePoly]) -> AdditivePoly {
        row.iter().zip(col).fold(self.zero(), |acc, (a, b)| self.add(&acc, &self.compose(a, b)))
    }

    pub fn mat_compose(&self, a: &AddMatrix, b: &AddMatrix) -> AddMatrix {
        let rows = (0..a.rows).map(|i| self.row_compose(&a.row(i), b)).collect();
        let mut m = AddMatrix::from_rows(rows);
        if a.rows == 0 {
            m.cols = b.cols;
        }
        m
    }

    pub fn row_add(&self, a: &[AdditivePoly], b: &[AdditivePoly]) -> Vec<AdditivePoly> {
        a.iter().zip(b).map(|(x, y)| self.add(x, y)).collect()
    }

    pub fn row_sub(&self, a: &[AdditivePoly], b: &[AdditivePoly]) -> Vec<AdditivePoly> {
        a.iter().zip(b).map(|(x, y)| self.sub(x, y)).collect()
    }

    pub fn row_scale(&self, r: &LocalElem, a: &[AdditivePoly]) -> Vec<AdditivePoly> {
        a.iter().map(|x| self.scale(r, x)).collect()
    }

    pub fn row_phi(&self, a: &[AdditivePoly], k: u32) -> Vec<AdditivePoly> {
        a.iter().map(|x| self.phi_coeffs(x, k)).collect()
    }

    /// Precision to which two rows agree, or `None` if they differ.
    pub fn rows_agreement_prec(&self, a: &[AdditivePoly], b: &[AdditivePoly]) -> Option<u32> {
        if a.len() != b.len() {
            return None;
        }
        let mut prec = self.ring.precision();
        for (x, y) in a.iter().zip(b) {
            prec = prec.min(self.agreement_prec(x, y)?);
        }
        Some(prec)
    }

    pub fn mat_agreement_prec(&self, a: &AddMatrix, b: &AddMatrix) -> Option<u32> {
        if a.rows != b.rows || a.cols != b.cols {
            return None;
        }
        self.rows_agreement_prec(&a.entries, &b.entries)
    }

    /// True if `b_0` is a unit and `v(b_i) ≥ i` at known precision.
    pub fn in_sdagger(&self, f: &AdditivePoly) -> bool {
        self.coeff(f, 0).is_unit()
            && f.terms.iter().enumerate().skip(1).all(|(i, c)| c.is_zero() || c.valuation() as usize >= i)
    }

    /// Compositional inverse in `S†`, computed through `τ^degree_bound` by
    /// `c_n = -b_0^(-q^n) Σ_{j<n} c_j b_(n-j)^(q^j)`.
    pub fn invert_sdagger(&self, f: &AdditivePoly, degree_bound: usize) -> Result<AdditivePoly> {
        if !self.in_sdagger(f) {
            return Err(Error::NotInSDagger);
        }
        let r = &self.ring;
        let b0_inv = r.inv(&self.coeff(f, 0))?;
        let mut c = vec![b0_inv.clone()];
        for n in 1..=degree_bound {
            let mut s = r.zero();
            for (j, cj) in c.iter().enumerate() {
                s = r.add(&s, &r.mul(cj, &r.pow_q(&self.coeff(f, n - j), j as u32)));
            }
            c.push(r.neg(&r.mul(&r.pow_q(&b0_inv, n as u32), &s)));
        }
        Ok(self.from_terms(c))
    }

    /// Solves `f ∘ φ_src = φ_tgt ∘ f` with `f_0 = b0`, where both sides have linear
    /// coefficient `π`. Coefficients are computed through `τ^degree_bound`.
    pub fn solve_intertwiner(
        &self,
        src: &[LocalElem],
        tgt: &[LocalElem],
        b0: &LocalElem,
        degree_bound: usize,
    ) -> Result<AdditivePoly> {
        let r = &self.ring;
        let pi = r.pi();
        for side in [src, tgt] {
            match side.first() {
                Some(c) if r.agrees(c, &pi) && c.known_prec() >= 2 => {}
                _ => return Err(Error::NotInSDagger),
            }
        }
        let mut b: Vec<LocalElem> = vec![b0.clone()];
        for n in 1..=degree_bound {
            let mut s = r.zero();
            for (j, cj) in src.iter().enumerate().skip(1).take(n) {
                let t = r.mul(&b[n - j], &r.pow_q(cj, (n - j) as u32));
                s = r.add(&s, &t);
            }
            for (i, di) in tgt.iter().enumerate().skip(1).take(n) {
                let t = r.mul(di, &r.pow_q(&b[n - i], i as u32));
                s = r.sub(&s, &t);
            }
            let s = r.div_pi(&s, 1).map_err(|e| match e {
                Error::NotDivisible { .. } => Error::StrictnessViolation(format!("degree {n} not divisible by pi")),
                other => other,
            })?;
            let unit = r.sub(
                &r.one(),
                &r.pi_pow(r.p().pow(r.h()).saturating_pow(n as u32).saturating_sub(1).min(r.precision())),
            );
            b.push(r.div(&s, &unit)?);
        }
        Ok(self.from_terms(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldSpec, FiniteField};
    use std::sync::Arc;

    fn ore(n: u32) -> OreRing {
        let k = FiniteField::new(FieldSpec { p: 3, h: 1, f: 1, s: 1, modulus: vec![0, 1] }).unwrap();
        OreRing::new(LocalRing::new(Arc::new(k), n))
    }

    #[test]
    fn tau_commutation() {
        let o = ore(8);
        let r = o.base();
        let c = r.add(&r.from_int(2), &r.pi());
        let lhs = o.compose(&o.tau(1), &o.monomial(c.clone(), 0));
        let rhs = o.monomial(r.pow_q(&c, 1), 1);
        assert!(o.agrees(&lhs, &rhs));
    }

    #[test]
    fn compose_matches_eval() {
        let o = ore(10);
        let r = o.base();
        let f = o.from_terms(vec![r.pi(), r.from_int(1), r.from_int(2)]);
        let g = o.from_terms(vec![r.from_int(1), r.pi()]);
        let x = r.add(&r.from_int(1), &r.pi_pow(2));
        let lhs = o.eval(&o.compose(&f, &g), &x);
        let rhs = o.eval(&f, &o.eval(&g, &x));
        assert!(r.agrees(&lhs, &rhs));
    }

    #[test]
    fn sdagger_inverse() {
        let o = ore(10);
        let r = o.base();
        let f = o.from_terms(vec![r.from_int(2), r.pi()]);
        let g = o.invert_sdagger(&f, 12).unwrap();
        assert_eq!(o.coeff(&g, 0), r.from_int(2));
        assert!(o.in_sdagger(&g));
        let id = o.truncate_degree(&o.compose(&g, &f), 12);
        assert!(o.agrees(&id, &o.tau(0)));
        assert!(matches!(o.invert_sdagger(&o.tau(1), 2), Err(Error::NotInSDagger)));
    }

    #[test]
    fn square_of_one_plus_pi_tau() {
        let o = ore(10);
        let r = o.base();
        let f = o.from_terms(vec![r.one(), r.pi()]);
        let expect = o.from_terms(vec![r.one(), r.mul_pi(&r.from_int(2), 1), r.pi_pow(4)]);
        assert!(o.agrees(&o.compose(&f, &f), &expect));
    }

    #[test]
    fn intertwiner_identity() {
        let o = ore(10);
        let r = o.base();
        let c = vec![r.pi(), r.from_int(1)];
        let f = o.solve_intertwiner(&c, &c, &r.one(), 5).unwrap();
        assert!(o.agrees(&f, &o.tau(0)));
    }
}

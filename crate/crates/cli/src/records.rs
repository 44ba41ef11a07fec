//! Flat result records, one JSON object per line.

use dchar_core::certificate::Certificate;
use dchar_core::characters::{Order0Report, SplittingData};
use dchar_core::encoding::{encode_ff, encode_local, EncodedFF, EncodedLocal};
use dchar_core::field::{FieldSpec, FiniteField};
use dchar_core::jet::DrinfeldModule;
use dchar_core::local::LocalElem;
use dchar_core::twisted::SparseTerm;
use serde::Serialize;

use crate::config::{RunConfig, Task};

#[derive(Clone, Debug, Serialize)]
pub struct ModuleInput {
    pub t: Vec<EncodedFF>,
    pub a: Vec<EncodedLocal>,
}

impl ModuleInput {
    pub fn of(module: &DrinfeldModule) -> Self {
        let k = module.field();
        ModuleInput {
            t: module.t_poly().iter().map(|&c| encode_ff(k, c)).collect(),
            a: module.raw_coeffs().iter().map(|a| a.iter().map(|&c| encode_ff(k, c)).collect()).collect(),
        }
    }
}

/// The configuration a record was computed from, with defaults filled in.
#[derive(Clone, Debug, Serialize)]
pub struct InputConfig {
    pub field: FieldSpec,
    pub precision: u32,
    pub pad: u32,
    pub degree_bound: usize,
    pub max_order: usize,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleInput>,
}

impl InputConfig {
    pub fn new(cfg: &RunConfig, module: Option<&DrinfeldModule>) -> Self {
        InputConfig {
            field: cfg.field.clone(),
            precision: cfg.precision,
            pad: cfg.pad,
            degree_bound: cfg.degree_bound(),
            max_order: cfg.max_order,
            seed: cfg.seed,
            module: module.map(ModuleInput::of),
        }
    }
}

/// Digits up to the reported precision `n`; pad digits stay internal.
pub fn enc(k: &FiniteField, x: &LocalElem, n: u32) -> EncodedLocal {
    encode_local(k, &x.clone().truncated(n))
}

pub fn enc_all(k: &FiniteField, xs: &[LocalElem], n: u32) -> Vec<EncodedLocal> {
    xs.iter().map(|x| enc(k, x, n)).collect()
}

pub fn enc_matrix(k: &FiniteField, m: &[Vec<LocalElem>], n: u32) -> Vec<Vec<EncodedLocal>> {
    m.iter().map(|row| enc_all(k, row, n)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub task: Task,
    pub input: InputConfig,
    pub checks: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order0: Option<Order0Report>,
    pub certificates: Vec<Certificate>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalRecord {
    pub task: Task,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub input: InputConfig,
    #[serde(flatten)]
    pub body: Option<CrystalBody>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CrystalBody {
    pub m: usize,
    pub lambda: Vec<EncodedLocal>,
    pub gamma: EncodedLocal,
    pub gamma_precision: u32,
    #[serde(rename = "Gamma")]
    pub big_gamma: Vec<Vec<EncodedLocal>>,
    #[serde(rename = "Gamma0", skip_serializing_if = "Option::is_none")]
    pub big_gamma0: Option<Vec<Vec<EncodedLocal>>>,
    pub canonical_lift_caveat: bool,
    pub certificates: Vec<Certificate>,
}

impl CrystalBody {
    pub fn of(k: &FiniteField, d: &SplittingData, n: u32) -> Self {
        CrystalBody {
            m: d.m,
            lambda: enc_all(k, &d.lambda, n),
            gamma: enc(k, &d.gamma, n),
            gamma_precision: d.gamma_precision.min(n),
            big_gamma: enc_matrix(k, &d.big_gamma, n),
            big_gamma0: d.big_gamma0.as_ref().map(|g| enc_matrix(k, g, n)),
            canonical_lift_caveat: d.canonical_lift_caveat,
            certificates: d.certificates.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct BasisEntry {
    pub order: usize,
    pub mu: Vec<EncodedLocal>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedForm {
    Value(EncodedFF),
    NotCovered(String),
}

impl ClosedForm {
    pub fn of(k: &FiniteField, r: &Result<dchar_core::field::FFElem, String>) -> Self {
        match r {
            Ok(v) => ClosedForm::Value(encode_ff(k, *v)),
            Err(why) => ClosedForm::NotCovered(why.clone()),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosedForms {
    pub lambda1_mod_pi: ClosedForm,
    pub gamma_over_pi_mod_pi: ClosedForm,
}

#[derive(Clone, Debug, Serialize)]
pub struct CharactersRecord {
    pub task: Task,
    pub input: InputConfig,
    pub m: usize,
    pub lambda: Vec<EncodedLocal>,
    pub gamma: EncodedLocal,
    pub gamma_precision: u32,
    pub canonical_lift_caveat: bool,
    /// `∂Ψ_1, …, ∂Ψ_r` in Ext coordinates.
    pub del_psi: Vec<Vec<EncodedLocal>>,
    pub theta_g: Vec<SparseTerm<EncodedLocal>>,
    /// `Θ_m, φ^*Θ_m, …` expanded in the `Ψ_i`.
    pub basis: Vec<BasisEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_forms: Option<ClosedForms>,
    pub certificates: Vec<Certificate>,
}

/// One CSV row per swept module.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub index: usize,
    pub rank: usize,
    pub a1_residue: String,
    pub m: Option<usize>,
    pub lambda1_residue: Option<String>,
    pub gamma_valuation: Option<u32>,
    pub gamma_precision: Option<u32>,
    pub caveat: Option<bool>,
    pub certified: bool,
    pub error: Option<String>,
}

/// Residue of an encoded element as `d0.d1...` digit text.
pub fn residue_text(enc: &EncodedLocal) -> String {
    enc.first().map(|c| c.join(".")).unwrap_or_default()
}

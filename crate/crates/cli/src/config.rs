//! The TOML run configuration.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use dchar_core::encoding::{decode_ff, decode_poly, EncodedFF, EncodedLocal};
use dchar_core::field::{FieldSpec, FiniteField};
use dchar_core::jet::{A1Mode, DrinfeldModule};
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Task {
    WittCheck,
    JetCheck,
    Characters,
    Crystal,
    Sweep,
    Selftest,
}

fn default_precision() -> u32 {
    16
}

fn default_pad() -> u32 {
    8
}

fn default_max_order() -> usize {
    4
}

fn default_trials() -> usize {
    50
}

fn default_terms() -> usize {
    4
}

fn default_a1() -> A1Mode {
    A1Mode::Any
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    /// When present, must agree with the subcommand.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub task: Option<Task>,
    pub field: FieldSpec,
    #[serde(default = "default_precision")]
    pub precision: u32,
    #[serde(default = "default_pad")]
    pub pad: u32,
    /// Defaults to `8 r`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_bound: Option<usize>,
    #[serde(default = "default_max_order")]
    pub max_order: usize,
    #[serde(default)]
    pub seed: u64,
    /// Number of random Witt vectors for `witt-check`.
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    /// CSV table for sweeps; defaults to the output path with extension `csv`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepConfig>,
}

/// `φ_E(t) = π + a_1 τ + … + a_r τ^r`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleConfig {
    /// Monic irreducible `t` over `F_q`, little-endian; defaults to the first one of degree `f`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<Vec<EncodedFF>>,
    /// `a_1, …, a_r` as π-expansions.
    pub a: Vec<EncodedLocal>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub count: usize,
    pub rank: usize,
    #[serde(default = "default_a1")]
    pub a1: A1Mode,
    /// π-adic digits drawn per coefficient.
    #[serde(default = "default_terms")]
    pub terms: usize,
}

/// Command-line values that take precedence over the file.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub precision: Option<u32>,
    pub pad: Option<u32>,
    pub max_order: Option<usize>,
    pub out: Option<PathBuf>,
}

fn invalid(field: &str, msg: impl std::fmt::Display) -> CliError {
    CliError::Config(format!("{field}: {msg}"))
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            CliError::Config(msg) => CliError::Config(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.seed {
            self.seed = v;
        }
        if let Some(v) = o.precision {
            self.precision = v;
        }
        if let Some(v) = o.pad {
            self.pad = v;
        }
        if let Some(v) = o.max_order {
            self.max_order = v;
        }
        if let Some(v) = &o.out {
            self.output = Some(v.clone());
        }
    }

    /// Rank of the configured module or sweep family, if any.
    pub fn rank(&self) -> Option<usize> {
        self.module.as_ref().map(|m| m.a.len()).or_else(|| self.sweep.as_ref().map(|s| s.rank))
    }

    pub fn degree_bound(&self) -> usize {
        self.degree_bound.unwrap_or(8 * self.rank().unwrap_or(4))
    }

    pub fn validate(&self, task: Task) -> Result<(), CliError> {
        if let Some(t) = self.task {
            if t != task {
                return Err(invalid("task", format!("config says {t:?} but the subcommand is {task:?}")));
            }
        }
        self.field.validate().map_err(|e| invalid("field", e))?;
        if self.precision < 4 {
            return Err(invalid("precision", "N must be at least 4"));
        }
        if self.max_order == 0 {
            return Err(invalid("max_order", "must be at least 1"));
        }
        if let Some(r) = self.rank() {
            if r == 0 {
                return Err(invalid("rank", "must be at least 1"));
            }
            if self.degree_bound() < 4 * r {
                return Err(invalid("degree_bound", format!("{} is below 4 r = {}", self.degree_bound(), 4 * r)));
            }
        }
        match task {
            Task::JetCheck | Task::Characters | Task::Crystal if self.module.is_none() => {
                Err(invalid("module", "required for this task"))
            }
            Task::Sweep => match &self.sweep {
                None => Err(invalid("sweep", "required for this task")),
                Some(s) if s.count == 0 => Err(invalid("sweep.count", "must be positive")),
                Some(s) if s.terms == 0 => Err(invalid("sweep.terms", "must be positive")),
                _ => Ok(()),
            },
            _ => Ok(()),
        }
    }

    pub fn finite_field(&self) -> Result<Arc<FiniteField>, CliError> {
        FiniteField::new(self.field.clone()).map(Arc::new).map_err(|e| invalid("field", e))
    }

    pub fn drinfeld_module(&self, k: &Arc<FiniteField>) -> Result<DrinfeldModule, CliError> {
        let m = self.module.as_ref().ok_or_else(|| invalid("module", "missing"))?;
        let coeffs =
            m.a.iter()
                .enumerate()
                .map(|(i, a)| decode_poly(k, a).map_err(|e| invalid(&format!("module.a[{i}]"), e)))
                .collect::<Result<Vec<_>, _>>()?;
        let module = match &m.t {
            Some(t) => {
                let t = t
                    .iter()
                    .map(|c| decode_ff(k, c))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| invalid("module.t", e))?;
                DrinfeldModule::new(k.clone(), t, coeffs)
            }
            None => DrinfeldModule::with_default_t(k.clone(), coeffs),
        };
        module.map_err(|e| invalid("module", e))
    }
}

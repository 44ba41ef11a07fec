use serde::{Deserialize, Serialize};

/// Outcome of a verified identity: its name, the jet order involved, the
/// precision to which equality was established, and whether it held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub name: String,
    pub order: usize,
    pub precision: u32,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Certificate {
    /// Builds a certificate from an optional agreement precision, requiring at least `floor`.
    pub fn from_agreement(name: &str, order: usize, agreement: Option<u32>, floor: u32) -> Self {
        match agreement {
            Some(p) if p >= floor => Certificate { name: name.into(), order, precision: p, pass: true, detail: None },
            Some(p) => Certificate {
                name: name.into(),
                order,
                precision: p,
                pass: false,
                detail: Some(format!("agreement only to precision {p}, need {floor}")),
            },
            None => Certificate {
                name: name.into(),
                order,
                precision: 0,
                pass: false,
                detail: Some("identity fails".into()),
            },
        }
    }

    pub fn failed(name: &str, order: usize, detail: impl Into<String>) -> Self {
        Certificate { name: name.into(), order, precision: 0, pass: false, detail: Some(detail.into()) }
    }

    pub fn passed(name: &str, order: usize, precision: u32) -> Self {
        Certificate { name: name.into(), order, precision, pass: true, detail: None }
    }
}

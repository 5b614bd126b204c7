//! JSON documents read and written by the command-line tool.
//!
//! Rational numbers are written as JSON integers when they are integral and
//! fit in 64 bits, and as `"p/q"` strings otherwise. Index lists are 1-based.

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::config::VectorConfiguration;
use crate::error::{Error, Result};
use crate::linalg::Rational;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Reads one rational literal: an integer, or a string holding an integer or
/// `p/q`.
pub fn parse_rational(value: &Value) -> Result<Rational> {
    match value {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Rational::from_integer(i.into()))
            } else if let Some(u) = n.as_u64() {
                Ok(Rational::from_integer(u.into()))
            } else {
                Err(Error::Parse(format!(
                    "{n} is not exact; write fractions as \"p/q\" strings"
                )))
            }
        }
        Value::String(s) => parse_rational_str(s),
        other => Err(Error::Parse(format!(
            "expected a rational number, got {other}"
        ))),
    }
}

pub fn parse_rational_str(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse(format!("{s:?} is not a rational literal"));
    if t.is_empty() || t.contains(char::is_whitespace) {
        return Err(bad());
    }
    t.parse::<Rational>().map_err(|_| bad())
}

pub fn rational_value(x: &Rational) -> Value {
    if x.is_integer() {
        if let Some(i) = x.to_integer().to_i64() {
            return Value::from(i);
        }
    }
    Value::String(x.to_string())
}

pub fn rational_values(v: &[Rational]) -> Vec<Value> {
    v.iter().map(rational_value).collect()
}

/// A vector configuration as a document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigDocument {
    pub ambient_dim: usize,
    pub vectors: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Metadata>,
}

impl ConfigDocument {
    pub fn from_config(cfg: &VectorConfiguration) -> Self {
        ConfigDocument {
            ambient_dim: cfg.ambient_dim(),
            vectors: cfg.vectors().iter().map(|v| rational_values(v)).collect(),
            metadata: None,
        }
    }

    pub fn to_config(&self) -> Result<VectorConfiguration> {
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for (i, v) in self.vectors.iter().enumerate() {
            if v.len() != self.ambient_dim {
                return Err(Error::Parse(format!(
                    "vector {} has {} entries, ambient_dim is {}",
                    i + 1,
                    v.len(),
                    self.ambient_dim
                )));
            }
            vectors.push(v.iter().map(parse_rational).collect::<Result<Vec<_>>>()?);
        }
        VectorConfiguration::new(self.ambient_dim, vectors)
    }

    pub fn parse(text: &str) -> Result<VectorConfiguration> {
        let doc: ConfigDocument = serde_json::from_str(text)
            .map_err(|e| Error::Parse(format!("invalid configuration document: {e}")))?;
        doc.to_config()
    }
}

/// Hash of the canonical form of a configuration.
pub fn input_hash(cfg: &VectorConfiguration) -> String {
    let canonical = serde_json::to_vec(&ConfigDocument::from_config(cfg)).expect("serializable");
    hex::encode(Sha256::digest(canonical))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Metadata {
    pub input_hash: String,
    pub elapsed_ms: u64,
    pub version: String,
}

impl Metadata {
    pub fn new(input_hash: String, elapsed_ms: u64) -> Self {
        Metadata {
            input_hash,
            elapsed_ms,
            version: VERSION.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub engine: String,
    pub total: u64,
    pub graded: Vec<u64>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircuitEntry {
    pub support: Vec<usize>,
    pub dependence: Vec<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CircuitsDocument {
    pub count: usize,
    pub circuits: Vec<CircuitEntry>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RobustDocument {
    pub count: usize,
    pub subsets: Vec<Vec<usize>>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HyperplaneEntry {
    pub normal: Vec<Value>,
    pub index_set: Vec<usize>,
    pub d: usize,
    pub power: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EssentialDocument {
    pub count: usize,
    pub hyperplanes: Vec<HyperplaneEntry>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorootsDocument {
    #[serde(rename = "type")]
    pub type_label: String,
    pub coroots: Vec<Vec<i64>>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WeightsDocument {
    #[serde(rename = "type")]
    pub type_label: String,
    pub cartan: Vec<Vec<i64>>,
    pub fundamental_weights: Vec<Vec<i64>>,
    /// Number of coroots on which each fundamental weight is nonzero.
    pub degrees: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weyl_group_order: Option<u64>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CurvatureDocument {
    #[serde(rename = "type")]
    pub type_label: String,
    pub weight: Vec<Value>,
    pub coefficients: Vec<Value>,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyDocument {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
    pub metadata: Metadata,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int, rational};
    use serde_json::json;

    #[test]
    fn literals() {
        assert_eq!(parse_rational(&json!(3)).unwrap(), int(3));
        assert_eq!(parse_rational(&json!("-3/6")).unwrap(), rational(-1, 2));
        assert_eq!(parse_rational(&json!("7")).unwrap(), int(7));
        for bad in [
            json!(1.5),
            json!("1/0"),
            json!("x"),
            json!(null),
            json!("1 /2"),
        ] {
            assert!(
                matches!(parse_rational(&bad), Err(Error::Parse(_))),
                "{bad}"
            );
        }
        assert_eq!(rational_value(&rational(2, 4)), json!("1/2"));
        assert_eq!(rational_value(&int(-4)), json!(-4));
    }

    #[test]
    fn configuration_round_trip() {
        let cfg = VectorConfiguration::new(
            2,
            vec![vec![rational(1, 3), int(0)], vec![int(5), rational(-7, 2)]],
        )
        .unwrap();
        let text = serde_json::to_string(&ConfigDocument::from_config(&cfg)).unwrap();
        assert_eq!(ConfigDocument::parse(&text).unwrap(), cfg);
    }

    #[test]
    fn ragged_documents_are_parse_errors() {
        let err = ConfigDocument::parse(r#"{"ambient_dim": 2, "vectors": [[1, 0], [1]]}"#);
        assert!(matches!(err, Err(Error::Parse(_))));
        assert!(matches!(ConfigDocument::parse("{"), Err(Error::Parse(_))));
    }
}

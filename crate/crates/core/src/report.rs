//! Serialization helpers shared by the report types.

use num_rational::BigRational;
use serde::{Deserialize, Serialize, Serializer};

/// Serializes an exact rational as `"p/q"` (or `"p"` when integral).
pub fn ser_rational<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

pub fn ser_bigint<S: Serializer>(v: &num_bigint::BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Where a report came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub precision_bits: u32,
    pub dataset_version: String,
}

impl Provenance {
    pub fn new(precision_bits: u32) -> Self {
        Provenance {
            tool: "knotgap".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            precision_bits,
            dataset_version: crate::knotdb::DATASET_VERSION.into(),
        }
    }
}

/// The uniform wrapper around every command result.
///
/// Schema: `{"command": str, "inputs": object, "result": any, "provenance":
/// {"tool", "version", "precision_bits", "dataset_version"}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportEnvelope<T = serde_json::Value> {
    pub command: String,
    pub inputs: serde_json::Value,
    pub result: T,
    pub provenance: Provenance,
}

impl<T: Serialize> ReportEnvelope<T> {
    pub fn new(command: &str, inputs: serde_json::Value, result: T, precision_bits: u32) -> Self {
        ReportEnvelope { command: command.into(), inputs, result, provenance: Provenance::new(precision_bits) }
    }

    pub fn to_json(&self) -> serde_json::Result<String> {
        serde_json::to_string_pretty(self)
    }

    /// The same envelope with a schemaless result, as a reader would parse it.
    pub fn to_value_envelope(&self) -> serde_json::Result<ReportEnvelope> {
        Ok(ReportEnvelope {
            command: self.command.clone(),
            inputs: self.inputs.clone(),
            result: serde_json::to_value(&self.result)?,
            provenance: self.provenance.clone(),
        })
    }
}

impl ReportEnvelope {
    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

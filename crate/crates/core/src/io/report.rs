use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::analysis::{Status, Verdict, WitnessRecord};
use crate::degree::Degree;
use crate::kgraph::KGraph;

/// sha256 of the normalised document text.
pub fn graph_hash(printed: &str) -> String {
    hex::encode(Sha256::digest(printed.as_bytes()))
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Parameters {
    #[serde(rename = "M")]
    pub bound: Option<Degree>,
    #[serde(rename = "B")]
    pub depth: Option<u32>,
    pub p_max: Option<Degree>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerdictRecord {
    pub name: String,
    pub status: Status,
    pub exact: bool,
    pub depth: Option<u32>,
    pub witness: Option<WitnessRecord>,
}

impl VerdictRecord {
    pub fn new(g: &KGraph, v: &Verdict) -> Self {
        VerdictRecord {
            name: v.name.clone(),
            status: v.status,
            exact: v.exact,
            depth: v.depth,
            witness: v.witness_record(g),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool_version: String,
    pub graph_hash: String,
    pub command: String,
    pub parameters: Parameters,
    pub verdicts: Vec<VerdictRecord>,
}

impl Report {
    pub fn new(
        printed: &str,
        command: &str,
        parameters: Parameters,
        verdicts: Vec<VerdictRecord>,
    ) -> Self {
        Report {
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            graph_hash: graph_hash(printed),
            command: command.to_string(),
            parameters,
            verdicts,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }
}

//! Magnitudes pinned by the independent oracle in `tools/oracle.py`.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const ORACLE_JSON: &str = include_str!("../../data/oracle.json");

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleEntry {
    pub value: f64,
    /// `value` truncated toward zero to three significant digits.
    pub floor: f64,
    pub order: usize,
    pub internal_order: usize,
    pub note: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OracleTable {
    pub generator: String,
    pub method: String,
    pub entries: BTreeMap<String, OracleEntry>,
}

pub fn table() -> &'static OracleTable {
    static TABLE: OnceLock<OracleTable> = OnceLock::new();
    TABLE.get_or_init(|| serde_json::from_str(ORACLE_JSON).expect("bundled oracle table is valid JSON"))
}

pub fn entry(key: &str) -> Result<&'static OracleEntry> {
    table()
        .entries
        .get(key)
        .ok_or_else(|| Error::InvalidArgument(format!("no oracle entry {key:?}")))
}

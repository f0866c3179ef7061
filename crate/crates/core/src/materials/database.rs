use serde::{Deserialize, Serialize};

use super::{CrystalSpec, SellmeierForm, SellmeierSet};
use crate::error::{Error, Result};

const BUILTIN: &str = include_str!("../../data/materials.json");

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DbFile {
    version: u32,
    materials: Vec<EntryFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EntryFile {
    name: String,
    ordinary: BranchFile,
    extraordinary: BranchFile,
    #[serde(rename = "d22_m_per_V")]
    d22_m_per_v: f64,
    source_citation: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BranchFile {
    form: SellmeierForm,
    coefficients: Vec<f64>,
    range: RangeFile,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RangeFile {
    min_um: f64,
    max_um: f64,
}

/// A material as stored in the database.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialEntry {
    pub name: String,
    pub ordinary: SellmeierSet,
    pub extraordinary: SellmeierSet,
    pub d22: f64,
    pub source_citation: String,
}

impl MaterialEntry {
    /// Cuts a crystal of this material.
    pub fn crystal(&self, length: f64, theta_c: f64, phi_c: f64) -> Result<CrystalSpec> {
        CrystalSpec::new(
            self.name.clone(),
            self.ordinary.clone(),
            self.extraordinary.clone(),
            self.d22,
            length,
            theta_c,
            phi_c,
        )
    }
}

/// Collection of materials loaded from a JSON database file.
#[derive(Debug, Clone, PartialEq)]
pub struct MaterialDb {
    entries: Vec<MaterialEntry>,
}

impl MaterialDb {
    /// The database compiled into the library.
    pub fn builtin() -> Self {
        Self::from_json(BUILTIN).expect("bundled material database is valid")
    }

    pub fn builtin_source() -> &'static str {
        BUILTIN
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DbFile = serde_json::from_str(text).map_err(|e| Error::InvalidMaterial {
            material: "<database>".into(),
            reason: e.to_string(),
        })?;
        if file.version != 1 {
            return Err(Error::InvalidMaterial {
                material: "<database>".into(),
                reason: format!("unsupported version {}", file.version),
            });
        }
        let entries = file
            .materials
            .into_iter()
            .map(|m| {
                let branch = |b: BranchFile, which: &str| {
                    SellmeierSet::new(
                        format!("{} {which}", m.name),
                        b.form,
                        b.coefficients,
                        (b.range.min_um * 1e-6, b.range.max_um * 1e-6),
                    )
                };
                Ok(MaterialEntry {
                    ordinary: branch(m.ordinary, "ordinary")?,
                    extraordinary: branch(m.extraordinary, "extraordinary")?,
                    d22: m.d22_m_per_v,
                    source_citation: m.source_citation,
                    name: m.name,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MaterialDb { entries })
    }

    /// Case-insensitive lookup.
    pub fn get(&self, name: &str) -> Option<&MaterialEntry> {
        self.entries.iter().find(|e| e.name.eq_ignore_ascii_case(name))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.name.as_str())
    }
}

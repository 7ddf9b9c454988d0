//! The JSON structure file: `order`, `add`, `mul`, optional `labels` and
//! `meta`. Indices are 0-based and index 0 is the `∘`-identity once
//! validated. Output is deterministic with one table row per line.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::error::ValidationError;
use crate::semibrace::FiniteLeftSemibrace;
use crate::table::CayleyTable;
use crate::Elem;

/// A structure file as read from disk; shape-checked but not validated.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructureFile {
    pub order: usize,
    #[serde(default)]
    pub labels: Option<Vec<String>>,
    pub add: Vec<Vec<Elem>>,
    pub mul: Vec<Vec<Elem>>,
    #[serde(default)]
    pub meta: Option<BTreeMap<String, serde_json::Value>>,
}

/// Problems with the file itself, before any axiom is checked.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{table} has {rows} rows, expected order {order}")]
    RowCount { table: &'static str, rows: usize, order: usize },
    #[error("{table} row {row} has {len} entries, expected {order}")]
    RowLength { table: &'static str, row: usize, len: usize, order: usize },
    #[error(transparent)]
    Entry(ValidationError),
    #[error("labels: expected {order}, found {len}")]
    LabelCount { len: usize, order: usize },
    #[error("labels: duplicate label {0:?}")]
    DuplicateLabel(String),
}

impl StructureFile {
    pub fn parse(text: &str) -> Result<Self, FormatError> {
        let file: StructureFile = serde_json::from_str(text)?;
        file.tables()?;
        Ok(file)
    }

    fn table(&self, name: &'static str, rows: &[Vec<Elem>]) -> Result<CayleyTable, FormatError> {
        let order = self.order;
        if rows.len() != order {
            return Err(FormatError::RowCount { table: name, rows: rows.len(), order });
        }
        if let Some((row, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != order) {
            return Err(FormatError::RowLength { table: name, row, len: r.len(), order });
        }
        CayleyTable::checked(order, rows.concat(), name).map_err(FormatError::Entry)
    }

    /// The two tables, after shape and label checks.
    pub fn tables(&self) -> Result<(CayleyTable, CayleyTable), FormatError> {
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return Err(FormatError::LabelCount { len: labels.len(), order: self.order });
            }
            let mut seen = HashSet::new();
            if let Some(dup) = labels.iter().find(|l| !seen.insert(l.as_str())) {
                return Err(FormatError::DuplicateLabel(dup.clone()));
            }
        }
        Ok((self.table("add", &self.add)?, self.table("mul", &self.mul)?))
    }

    /// Validates the semi-brace axioms.
    pub fn to_semibrace(&self) -> Result<FiniteLeftSemibrace, FileError> {
        let (add, mul) = self.tables()?;
        Ok(FiniteLeftSemibrace::validate_labeled(add, mul, self.labels.clone())?)
    }

    pub fn from_semibrace(b: &FiniteLeftSemibrace, meta: Option<BTreeMap<String, serde_json::Value>>) -> Self {
        StructureFile {
            order: b.order(),
            labels: Some(b.labels().to_vec()),
            add: b.add_table().rows(),
            mul: b.mul_table().rows(),
            meta,
        }
    }

    /// Deterministic JSON: fixed key order, one matrix row per line, and a
    /// trailing newline.
    pub fn to_json(&self) -> String {
        fn matrix(out: &mut String, name: &str, rows: &[Vec<Elem>]) {
            let _ = write!(out, "  \"{name}\": [\n");
            for (i, row) in rows.iter().enumerate() {
                let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
                let sep = if i + 1 < rows.len() { "," } else { "" };
                let _ = writeln!(out, "    [{}]{sep}", cells.join(", "));
            }
            out.push_str("  ]");
        }
        let mut out = String::from("{\n");
        let _ = write!(out, "  \"order\": {},\n", self.order);
        if let Some(labels) = &self.labels {
            let _ = write!(out, "  \"labels\": {},\n", serde_json::to_string(labels).expect("strings serialize"));
        }
        matrix(&mut out, "add", &self.add);
        out.push_str(",\n");
        matrix(&mut out, "mul", &self.mul);
        if let Some(meta) = &self.meta {
            let _ = write!(out, ",\n  \"meta\": {}", serde_json::to_string(meta).expect("JSON values serialize"));
        }
        out.push_str("\n}\n");
        out
    }
}

/// Reading a file into a validated structure.
#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Invalid(#[from] ValidationError),
}

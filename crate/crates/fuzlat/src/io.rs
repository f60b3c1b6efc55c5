//! Matrix documents: the on-disk interchange format for frames.
//!
//! Two formats carry the same data. JSON:
//!
//! ```json
//! { "elements": ["w1", "x1"], "mu": [[1, 0.1], [0, 1]],
//!   "metadata": { "name": "...", "description": "...", "source": "..." } }
//! ```
//!
//! CSV mirrors a printed relation table: the header row is a corner cell
//! followed by the labels, each body row starts with its label, and blank
//! cells read as 0. Grades are written with the shortest decimal text that
//! round-trips, so two-decimal fixtures stay diffable.
//!
//! Comparison tolerances live here and only here; the in-memory law checks
//! are all element-identity based.

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::frame::{FrameError, FuzzyRelationFrame};
use crate::report::{CheckItem, CheckReport, Witness, DEFAULT_WITNESS_CAP};

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocMetadata {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

/// Serializable form of a frame plus optional provenance metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDocument {
    pub elements: Vec<String>,
    pub mu: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub metadata: Option<DocMetadata>,
}

impl MatrixDocument {
    pub fn from_frame(frame: &FuzzyRelationFrame) -> MatrixDocument {
        MatrixDocument {
            elements: frame.labels().to_vec(),
            mu: frame.rows(),
            metadata: None,
        }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> MatrixDocument {
        let meta = self.metadata.get_or_insert_with(DocMetadata::default);
        meta.name = Some(name.into());
        self
    }

    pub fn to_frame(&self) -> Result<FuzzyRelationFrame, LoadError> {
        FuzzyRelationFrame::new(self.elements.clone(), self.mu.clone()).map_err(LoadError::from)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Format {
    /// Infer from the file extension; defaults to JSON when there is none.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Json,
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Json => "json",
            Format::Csv => "csv",
        })
    }
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("CSV needs a header row of labels")]
    MissingHeader,
    #[error("CSV row {row} is labeled {found:?}, expected {expected:?} to match the header order")]
    RowLabelMismatch {
        row: usize,
        found: String,
        expected: String,
    },
    #[error("unparseable grade at row {row}, column {col}: {text:?}")]
    BadNumber {
        row: usize,
        col: usize,
        text: String,
    },
    #[error(transparent)]
    Frame(#[from] FrameError),
}

pub fn load(path: impl AsRef<Path>, format: Format) -> Result<FuzzyRelationFrame, LoadError> {
    load_document(path, format)?.to_frame()
}

pub fn load_document(path: impl AsRef<Path>, format: Format) -> Result<MatrixDocument, LoadError> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })?;
    match format {
        Format::Json => parse_json(&text),
        Format::Csv => parse_csv(&text),
    }
}

pub fn save(doc: &MatrixDocument, path: impl AsRef<Path>, format: Format) -> Result<(), LoadError> {
    let path = path.as_ref();
    let text = emit(doc, format);
    fs::write(path, text).map_err(|source| LoadError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn emit(doc: &MatrixDocument, format: Format) -> String {
    match format {
        Format::Json => emit_json(doc),
        Format::Csv => emit_csv(doc),
    }
}

pub fn parse_json(text: &str) -> Result<MatrixDocument, LoadError> {
    let doc: MatrixDocument = serde_json::from_str(text)?;
    // surface structural problems eagerly with cell coordinates
    doc.to_frame()?;
    Ok(doc)
}

pub fn emit_json(doc: &MatrixDocument) -> String {
    let mut value = serde_json::to_value(doc).expect("document serializes");
    // write whole grades as integers (1, not 1.0) so emitted files diff
    // cleanly against hand-authored fixtures
    if let Some(rows) = value.get_mut("mu").and_then(|m| m.as_array_mut()) {
        for row in rows {
            if let Some(cells) = row.as_array_mut() {
                for cell in cells {
                    if let Some(v) = cell.as_f64() {
                        if v.fract() == 0.0 {
                            *cell = serde_json::Value::from(v as u64);
                        }
                    }
                }
            }
        }
    }
    let mut text = serde_json::to_string_pretty(&value).expect("value serializes");
    text.push('\n');
    text
}

pub fn parse_csv(text: &str) -> Result<MatrixDocument, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        Some(record) => record?,
        None => return Err(LoadError::MissingHeader),
    };
    // first header cell is the corner (relation name); the rest are labels
    let elements: Vec<String> = header
        .iter()
        .skip(1)
        .map(|s| s.trim().to_string())
        .collect();
    if elements.is_empty() {
        return Err(LoadError::MissingHeader);
    }
    let mut mu = Vec::new();
    for (row, record) in records.enumerate() {
        let record = record?;
        let found = record.get(0).unwrap_or("").trim().to_string();
        let expected = elements.get(row).cloned().unwrap_or_default();
        if found != expected {
            return Err(LoadError::RowLabelMismatch {
                row,
                found,
                expected,
            });
        }
        let mut values = Vec::new();
        for (col, cell) in record.iter().skip(1).enumerate() {
            let cell = cell.trim();
            // blank cells read as 0, accommodating hand-authored tables
            let value = if cell.is_empty() {
                0.0
            } else {
                cell.parse::<f64>().map_err(|_| LoadError::BadNumber {
                    row,
                    col,
                    text: cell.to_string(),
                })?
            };
            values.push(value);
        }
        mu.push(values);
    }
    let doc = MatrixDocument {
        elements,
        mu,
        metadata: None,
    };
    doc.to_frame()?;
    Ok(doc)
}

pub fn emit_csv(doc: &MatrixDocument) -> String {
    let corner = doc
        .metadata
        .as_ref()
        .and_then(|m| m.name.clone())
        .unwrap_or_else(|| "mu".to_string());
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec![corner];
    header.extend(doc.elements.iter().cloned());
    writer.write_record(&header).expect("in-memory write");
    for (label, row) in doc.elements.iter().zip(&doc.mu) {
        let mut record = vec![label.clone()];
        record.extend(row.iter().map(|v| v.to_string()));
        writer.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf8 output")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("cannot compare a {a}-element frame with a {b}-element frame")]
pub struct SizeMismatch {
    pub a: usize,
    pub b: usize,
}

/// Compare two frames: label sequences must match exactly and grades must
/// agree entrywise within `tol` (`tol = 0` forces exact equality).
pub fn compare(
    a: &FuzzyRelationFrame,
    b: &FuzzyRelationFrame,
    tol: f64,
) -> Result<CheckReport, SizeMismatch> {
    if a.len() != b.len() {
        return Err(SizeMismatch {
            a: a.len(),
            b: b.len(),
        });
    }
    let n = a.len();

    let label_item = if a.labels() == b.labels() {
        CheckItem::passing("labels")
    } else {
        let first = (0..n)
            .find(|&i| a.label(i) != b.label(i))
            .expect("some label differs");
        CheckItem {
            name: "labels".into(),
            holds: false,
            witnesses: vec![Witness::Elements {
                indices: vec![first],
                labels: vec![a.label(first).to_string(), b.label(first).to_string()],
            }],
            truncated: false,
            detail: Some(format!(
                "label {first} is {:?} on the left, {:?} on the right",
                a.label(first),
                b.label(first)
            )),
        }
    };

    let mut witnesses = Vec::new();
    let mut truncated = false;
    let mut detail = None;
    'scan: for i in 0..n {
        for j in 0..n {
            let (va, vb) = (a.grade(i, j).value(), b.grade(i, j).value());
            if (va - vb).abs() > tol {
                if detail.is_none() {
                    detail = Some(format!(
                        "first difference at ({}, {}): {} vs {}",
                        a.label(i),
                        a.label(j),
                        va,
                        vb
                    ));
                }
                if witnesses.len() == DEFAULT_WITNESS_CAP {
                    truncated = true;
                    break 'scan;
                }
                witnesses.push(Witness::Elements {
                    indices: vec![i, j],
                    labels: vec![a.label(i).to_string(), a.label(j).to_string()],
                });
            }
        }
    }
    let entries_item = CheckItem {
        name: "entries".into(),
        holds: witnesses.is_empty(),
        witnesses,
        truncated,
        detail,
    };
    Ok(CheckReport::new(
        format!("frame comparison (tolerance {tol})"),
        vec![label_item, entries_item],
    ))
}

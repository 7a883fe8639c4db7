//! Line-oriented candidate datasets: one JSON object per line with a
//! required "label" field, an optional "curve_count", and ignored
//! extras. Blank lines and '#' comments are skipped.

use crate::error::{Error, Result};
use crate::lmfdb::label::IsogenyClassLabel;
use crate::lpoly::LPolynomial;
use serde_json::Value;

/// One ingested isogeny class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CandidateRecord {
    pub label: IsogenyClassLabel,
    pub lpoly: LPolynomial,
    /// Number of curves known to lie in the class, when the dataset
    /// says. None means the data is silent, not that none exist.
    pub curve_evidence: Option<u64>,
    /// Provenance tag: file path or URL.
    pub source: String,
}

/// What to do with a bad line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ErrorPolicy {
    /// Collect per-line errors and keep going (the default).
    #[default]
    SkipAndReport,
    /// Stop at the first bad line.
    FailFast,
}

/// Parse outcome: records in input order plus the lines that failed.
#[derive(Debug, Default)]
pub struct DatasetParse {
    pub records: Vec<CandidateRecord>,
    pub errors: Vec<Error>,
}

/// Parses a dataset. Under SkipAndReport this never fails: every bad
/// line becomes an entry in `errors` (wrapped with its 1-based line
/// number) and parsing continues.
pub fn parse_dataset(text: &str, policy: ErrorPolicy, source: &str) -> Result<DatasetParse> {
    let mut out = DatasetParse::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        match parse_line(line, source) {
            Ok(record) => out.records.push(record),
            Err(e) => {
                let wrapped = Error::DatasetLine {
                    line: idx + 1,
                    source: Box::new(e),
                };
                match policy {
                    ErrorPolicy::FailFast => return Err(wrapped),
                    ErrorPolicy::SkipAndReport => out.errors.push(wrapped),
                }
            }
        }
    }
    Ok(out)
}

fn parse_line(line: &str, source: &str) -> Result<CandidateRecord> {
    let value: Value = serde_json::from_str(line)?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Json("line is not a JSON object".to_string()))?;
    let label_text = object
        .get("label")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json("missing required string field \"label\"".to_string()))?;
    let label = IsogenyClassLabel::parse(label_text)?;
    let canonical = label.to_string();
    if canonical != label_text {
        return Err(Error::NonCanonicalLabel {
            label: label_text.to_string(),
            canonical,
        });
    }
    let curve_evidence = match object.get("curve_count") {
        None | Some(Value::Null) => None,
        Some(v) => Some(v.as_u64().ok_or_else(|| {
            Error::Json("field \"curve_count\" must be a nonnegative integer".to_string())
        })?),
    };
    let lpoly = label.lpolynomial()?;
    Ok(CandidateRecord {
        label,
        lpoly,
        curve_evidence,
        source: source.to_string(),
    })
}

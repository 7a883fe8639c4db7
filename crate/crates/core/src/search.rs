//! The enumeration pipeline: run every candidate isogeny class through
//! the constant-field trick, classify the resulting cover against the
//! records table, deduplicate and sort deterministically, and verify
//! the bundled record tables end to end.

use crate::cover::constant_field_cover;
use crate::error::Error;
use crate::lmfdb::dataset::CandidateRecord;
use crate::lmfdb::label::IsogenyClassLabel;
use crate::records::{Classification, RecordsTable};
use crate::weil::validate_weil;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;
use serde_json::Value;
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Search-wide knobs. The defaults reproduce the bundled tables: covers
/// of genus at most 50 over base fields of size 2, 3, 4, and 5.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    /// Largest cover genus to report.
    pub max_cover_genus: u64,
    /// Smallest base genus to consider.
    pub min_base_genus: u32,
    /// Some(true): reject candidates without curve evidence.
    /// Some(false): keep them, tagged unverified.
    /// None: require evidence exactly when any candidate in the dataset
    /// carries a curve count.
    pub require_curve_evidence: Option<bool>,
    /// Base field sizes to consider (targets are their squares);
    /// None lifts the restriction.
    pub base_field_allowlist: Option<BTreeSet<u64>>,
    /// Emit Ties and Below rows instead of only record-worthy ones.
    pub include_all_rows: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_cover_genus: 50,
            min_base_genus: 2,
            require_curve_evidence: None,
            base_field_allowlist: Some([2, 3, 4, 5].into_iter().collect()),
            include_all_rows: false,
        }
    }
}

/// Whether the emitting isogeny class is known to contain a curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EvidenceStatus {
    /// The dataset records this many curves in the class.
    Verified(u64),
    /// The dataset is silent; the row claims a record only if the class
    /// contains a curve.
    Unverified,
}

impl fmt::Display for EvidenceStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EvidenceStatus::Verified(count) => write!(f, "verified({count})"),
            EvidenceStatus::Unverified => f.write_str("unverified"),
        }
    }
}

/// Why a candidate produced no row. Display strings are the stable keys
/// used in summaries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RejectionReason {
    OutsideAllowlist,
    NoRationalPoint,
    BaseGenusBelowMinimum,
    EmptyIsogenyClass,
    MissingCurveEvidence,
    NotWeil,
    ImplausiblePointCounts,
    CoverGenusAboveCap,
    FieldTooLarge,
    /// Unexpected failure inside the cover computation.
    Cover(String),
}

impl fmt::Display for RejectionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RejectionReason::OutsideAllowlist => f.write_str("outside_allowlist"),
            RejectionReason::NoRationalPoint => f.write_str("no_rational_point"),
            RejectionReason::BaseGenusBelowMinimum => f.write_str("base_genus_below_minimum"),
            RejectionReason::EmptyIsogenyClass => f.write_str("empty_isogeny_class"),
            RejectionReason::MissingCurveEvidence => f.write_str("missing_curve_evidence"),
            RejectionReason::NotWeil => f.write_str("not_weil_valid"),
            RejectionReason::ImplausiblePointCounts => f.write_str("implausible_point_counts"),
            RejectionReason::CoverGenusAboveCap => f.write_str("cover_genus_above_cap"),
            RejectionReason::FieldTooLarge => f.write_str("field_too_large"),
            RejectionReason::Cover(reason) => write!(f, "cover_error: {reason}"),
        }
    }
}

/// One accepted cover: a candidate row of the output tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchRow {
    pub label: String,
    pub base_field: u64,
    pub target_field: u64,
    pub base_genus: u32,
    pub group_order: BigInt,
    pub cover_genus: BigInt,
    pub cover_points: BigInt,
    pub classification: Classification,
    /// Previous record at (target field, cover genus), if any.
    pub old_lower: Option<BigInt>,
    pub evidence: EvidenceStatus,
}

/// Aggregate accounting for one search run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchSummary {
    /// Total candidates examined.
    pub candidates: usize,
    /// Candidates that produced a row before dedup and filtering.
    pub accepted: usize,
    /// Rejection counts keyed by reason.
    pub rejections: BTreeMap<String, usize>,
    /// Classification counts after dedup, before filtering.
    pub classification_counts: BTreeMap<String, usize>,
    /// Rows dropped because a better row shared (target field, genus).
    pub deduplicated: usize,
    /// Rows dropped by the record-worthiness filter.
    pub filtered: usize,
    /// Rows in the final report.
    pub emitted: usize,
}

/// Final, deterministic search output.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchReport {
    /// Sorted by (target field, cover genus, label); at most one row
    /// per (target field, cover genus).
    pub rows: Vec<SearchRow>,
    pub summary: SearchSummary,
}

/// Runs one candidate through the full acceptance gauntlet. The
/// `require_evidence` flag is the dataset-level resolution of
/// `config.require_curve_evidence`.
pub fn evaluate_candidate(
    candidate: &CandidateRecord,
    records: &RecordsTable,
    config: &SearchConfig,
    require_evidence: bool,
) -> std::result::Result<SearchRow, RejectionReason> {
    let field = candidate.lpoly.base_field();
    if let Some(allowed) = &config.base_field_allowlist {
        if !allowed.contains(&field.q()) {
            return Err(RejectionReason::OutsideAllowlist);
        }
    }
    // The trick needs a rational point before anything else matters.
    if candidate.lpoly.rational_points() < BigInt::one() {
        return Err(RejectionReason::NoRationalPoint);
    }
    if candidate.lpoly.genus() < config.min_base_genus.max(1) {
        return Err(RejectionReason::BaseGenusBelowMinimum);
    }
    let evidence = match candidate.curve_evidence {
        Some(0) => return Err(RejectionReason::EmptyIsogenyClass),
        Some(count) => EvidenceStatus::Verified(count),
        None if require_evidence => return Err(RejectionReason::MissingCurveEvidence),
        None => EvidenceStatus::Unverified,
    };
    let report = validate_weil(&candidate.lpoly);
    if !report.weil_ok() {
        return Err(RejectionReason::NotWeil);
    }
    if !report.plausibility_ok {
        return Err(RejectionReason::ImplausiblePointCounts);
    }
    let cover = match constant_field_cover(&candidate.lpoly) {
        Ok(cover) => cover,
        Err(Error::FieldTooLarge { .. }) => return Err(RejectionReason::FieldTooLarge),
        Err(other) => return Err(RejectionReason::Cover(other.to_string())),
    };
    if cover.cover_genus > BigInt::from(config.max_cover_genus.max(1)) {
        return Err(RejectionReason::CoverGenusAboveCap);
    }
    let target = field
        .extend(2)
        .map_err(|_| RejectionReason::FieldTooLarge)?;
    let genus = cover
        .cover_genus
        .to_u64()
        .expect("cover genus within the cap fits u64");
    let classification = records.classify(target.q(), genus, &cover.cover_points);
    let old_lower = records
        .lookup(target.q(), genus)
        .and_then(|entry| entry.best_lower.clone());
    Ok(SearchRow {
        label: candidate.label.to_string(),
        base_field: field.q(),
        target_field: target.q(),
        base_genus: candidate.lpoly.genus(),
        group_order: cover.quotient_order,
        cover_genus: cover.cover_genus,
        cover_points: cover.cover_points,
        classification,
        old_lower,
        evidence,
    })
}

/// Evaluates all candidates (in parallel), then reduces to a
/// deterministic report: dedup per (target field, cover genus) keeping
/// maximal point count with smallest label on ties, filter to
/// record-worthy rows unless all rows are requested, sort.
pub fn run_search(
    candidates: &[CandidateRecord],
    records: &RecordsTable,
    config: &SearchConfig,
) -> SearchReport {
    let require_evidence = config
        .require_curve_evidence
        .unwrap_or_else(|| candidates.iter().any(|c| c.curve_evidence.is_some()));
    let outcomes: Vec<_> = candidates
        .par_iter()
        .map(|candidate| evaluate_candidate(candidate, records, config, require_evidence))
        .collect();

    let mut summary = SearchSummary {
        candidates: candidates.len(),
        ..SearchSummary::default()
    };
    let mut best: BTreeMap<(u64, BigInt), SearchRow> = BTreeMap::new();
    for outcome in outcomes {
        match outcome {
            Ok(row) => {
                summary.accepted += 1;
                let key = (row.target_field, row.cover_genus.clone());
                match best.entry(key) {
                    Entry::Vacant(slot) => {
                        slot.insert(row);
                    }
                    Entry::Occupied(mut slot) => {
                        let current = slot.get();
                        let replace = match row.cover_points.cmp(&current.cover_points) {
                            std::cmp::Ordering::Greater => true,
                            std::cmp::Ordering::Equal => row.label < current.label,
                            std::cmp::Ordering::Less => false,
                        };
                        if replace {
                            slot.insert(row);
                        }
                    }
                }
            }
            Err(reason) => {
                *summary.rejections.entry(reason.to_string()).or_insert(0) += 1;
            }
        }
    }
    summary.deduplicated = summary.accepted - best.len();
    for row in best.values() {
        *summary
            .classification_counts
            .entry(row.classification.to_string())
            .or_insert(0) += 1;
    }
    let after_dedup = best.len();
    let rows: Vec<SearchRow> = best
        .into_values()
        .filter(|row| {
            config.include_all_rows
                || matches!(
                    row.classification,
                    Classification::Improves
                        | Classification::NewEntry
                        | Classification::ExceedsUpperBound
                )
        })
        .collect();
    summary.filtered = after_dedup - rows.len();
    summary.emitted = rows.len();
    SearchReport { rows, summary }
}

/// One expected-vs-computed comparison in a verification run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRow {
    pub label: String,
    pub expected_group_order: BigInt,
    pub expected_cover_genus: BigInt,
    pub expected_cover_points: BigInt,
    pub old_record: Option<BigInt>,
    pub expected_classification: Classification,
    pub computed_group_order: Option<BigInt>,
    pub computed_cover_genus: Option<BigInt>,
    pub computed_cover_points: Option<BigInt>,
    /// The bundled records table's lower bound at the computed
    /// (target field, cover genus), independent of the fixture.
    pub computed_old_record: Option<BigInt>,
    pub computed_classification: Option<Classification>,
    pub pass: bool,
    /// Empty when the row passes; otherwise the mismatches.
    pub detail: String,
}

/// Outcome of recomputing a verification fixture.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub rows: Vec<VerificationRow>,
    pub passed: usize,
    pub total: usize,
}

impl VerificationReport {
    pub fn all_pass(&self) -> bool {
        self.passed == self.total
    }
}

/// The bundled expected-invariants fixture (11 rows).
pub fn bundled_verification_fixture() -> &'static str {
    include_str!("../fixtures/verification.jsonl")
}

/// The bundled prior-records table matching the verification fixture.
pub fn bundled_old_records() -> &'static str {
    include_str!("../fixtures/old_records.csv")
}

/// A small demonstration dataset in the dataset JSONL format.
pub fn bundled_sample_dataset() -> &'static str {
    include_str!("../fixtures/sample_dataset.jsonl")
}

struct ExpectedRow {
    label: String,
    group_order: BigInt,
    cover_genus: BigInt,
    cover_points: BigInt,
    old_record: Option<BigInt>,
    classification: Classification,
}

/// Recomputes every fixture row from its label alone and compares:
/// the invariant triple comes from the cover pipeline, the old record
/// from the bundled prior-records table, and the classification from
/// the computed point count against that table value — so perturbing
/// any single fixture field fails exactly its own row.
pub fn verify_paper_tables(fixture: &str) -> crate::error::Result<VerificationReport> {
    let records = crate::records::load_records(bundled_old_records())?;
    let mut expected = Vec::new();
    for (idx, raw) in fixture.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = parse_expected(line).map_err(|e| Error::DatasetLine {
            line: idx + 1,
            source: Box::new(e),
        })?;
        expected.push(row);
    }
    let rows: Vec<VerificationRow> = expected
        .into_iter()
        .map(|row| check_row(row, &records))
        .collect();
    let passed = rows.iter().filter(|row| row.pass).count();
    Ok(VerificationReport {
        total: rows.len(),
        passed,
        rows,
    })
}

fn parse_expected(line: &str) -> crate::error::Result<ExpectedRow> {
    let value: Value = serde_json::from_str(line)?;
    let object = value
        .as_object()
        .ok_or_else(|| Error::Json("line is not a JSON object".to_string()))?;
    let label = object
        .get("label")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json("missing required string field \"label\"".to_string()))?
        .to_string();
    let old_record = match object.get("old_record") {
        None | Some(Value::Null) => None,
        Some(v) => Some(require_integer(v, "old_record")?),
    };
    let classification = object
        .get("classification")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::Json("missing string field \"classification\"".to_string()))?
        .parse::<Classification>()
        .map_err(Error::Json)?;
    Ok(ExpectedRow {
        label,
        group_order: integer_field(object, "group_order")?,
        cover_genus: integer_field(object, "cover_genus")?,
        cover_points: integer_field(object, "cover_points")?,
        old_record,
        classification,
    })
}

fn integer_field(
    object: &serde_json::Map<String, Value>,
    key: &str,
) -> crate::error::Result<BigInt> {
    let value = object
        .get(key)
        .ok_or_else(|| Error::Json(format!("missing field {key:?}")))?;
    require_integer(value, key)
}

fn require_integer(value: &Value, key: &str) -> crate::error::Result<BigInt> {
    match value {
        Value::Number(number) => number
            .to_string()
            .parse::<BigInt>()
            .map_err(|_| Error::Json(format!("field {key:?} is not an integer"))),
        _ => Err(Error::Json(format!("field {key:?} is not an integer"))),
    }
}

/// Classifies a point count against a bare optional record, the way the
/// bundled tables report it (no upper bounds involved).
fn classify_against(old_record: Option<&BigInt>, points: &BigInt) -> Classification {
    match old_record {
        None => Classification::NewEntry,
        Some(old) => match points.cmp(old) {
            std::cmp::Ordering::Greater => Classification::Improves,
            std::cmp::Ordering::Equal => Classification::Ties,
            std::cmp::Ordering::Less => Classification::Below,
        },
    }
}

fn optional(value: &Option<BigInt>) -> String {
    value
        .as_ref()
        .map(BigInt::to_string)
        .unwrap_or_else(|| "none".to_string())
}

fn check_row(expected: ExpectedRow, records: &RecordsTable) -> VerificationRow {
    let computed = (|| {
        let label = IsogenyClassLabel::parse(&expected.label)?;
        let target = label.field().extend(2)?;
        let cover = constant_field_cover(&label.lpolynomial()?)?;
        Ok::<_, Error>((target.q(), cover))
    })();
    match computed {
        Err(error) => VerificationRow {
            pass: false,
            detail: format!("computation failed: {error}"),
            label: expected.label,
            expected_group_order: expected.group_order,
            expected_cover_genus: expected.cover_genus,
            expected_cover_points: expected.cover_points,
            old_record: expected.old_record,
            expected_classification: expected.classification,
            computed_group_order: None,
            computed_cover_genus: None,
            computed_cover_points: None,
            computed_old_record: None,
            computed_classification: None,
        },
        Ok((target_q, cover)) => {
            let computed_old = cover
                .cover_genus
                .to_u64()
                .and_then(|genus| records.lookup(target_q, genus))
                .and_then(|entry| entry.best_lower.clone());
            let classification = classify_against(computed_old.as_ref(), &cover.cover_points);
            let mut mismatches = Vec::new();
            for (name, want, got) in [
                ("group_order", &expected.group_order, &cover.quotient_order),
                ("cover_genus", &expected.cover_genus, &cover.cover_genus),
                ("cover_points", &expected.cover_points, &cover.cover_points),
            ] {
                if want != got {
                    mismatches.push(format!("{name}: expected {want}, computed {got}"));
                }
            }
            if computed_old != expected.old_record {
                mismatches.push(format!(
                    "old_record: expected {}, computed {}",
                    optional(&expected.old_record),
                    optional(&computed_old)
                ));
            }
            if classification != expected.classification {
                mismatches.push(format!(
                    "classification: expected {}, computed {}",
                    expected.classification, classification
                ));
            }
            VerificationRow {
                pass: mismatches.is_empty(),
                detail: mismatches.join("; "),
                label: expected.label,
                expected_group_order: expected.group_order,
                expected_cover_genus: expected.cover_genus,
                expected_cover_points: expected.cover_points,
                old_record: expected.old_record,
                expected_classification: expected.classification,
                computed_group_order: Some(cover.quotient_order),
                computed_cover_genus: Some(cover.cover_genus),
                computed_cover_points: Some(cover.cover_points),
                computed_old_record: computed_old,
                computed_classification: Some(classification),
            }
        }
    }
}

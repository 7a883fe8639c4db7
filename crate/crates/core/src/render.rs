//! Report rendering: a human table whose columns mirror the record
//! tables (label, |G|, g_Y, #Y, old record), plus schema-stable CSV and
//! JSON. All three are deterministic byte-for-byte.

use crate::search::{EvidenceStatus, SearchReport, SearchRow, VerificationReport};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::str::FromStr;

/// Output encodings offered by every report-producing command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Table,
    Csv,
    Json,
}

/// Exact JSON number for an integer of any size.
pub fn bigint_value(n: &BigInt) -> Value {
    Value::Number(
        serde_json::Number::from_str(&n.to_string()).expect("integer strings are JSON numbers"),
    )
}

fn optional_bigint_value(n: Option<&BigInt>) -> Value {
    n.map(bigint_value).unwrap_or(Value::Null)
}

/// Pads every column to its widest cell; two spaces between columns.
fn layout_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let mut emit = |cells: Vec<&str>| {
        let mut line = String::new();
        for (i, cell) in cells.iter().enumerate() {
            if i > 0 {
                line.push_str("  ");
            }
            line.push_str(cell);
            if i + 1 < cells.len() {
                for _ in cell.len()..widths[i] {
                    line.push(' ');
                }
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    };
    emit(header.to_vec());
    for row in rows {
        emit(row.iter().map(String::as_str).collect());
    }
    out
}

fn csv_from_rows(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).expect("in-memory CSV");
    for row in rows {
        writer.write_record(row).expect("in-memory CSV");
    }
    String::from_utf8(writer.into_inner().expect("in-memory CSV")).expect("CSV is UTF-8")
}

fn evidence_cell(evidence: &EvidenceStatus) -> String {
    evidence.to_string()
}

fn evidence_value(evidence: &EvidenceStatus) -> Value {
    match evidence {
        EvidenceStatus::Verified(count) => json!({"status": "verified", "curve_count": count}),
        EvidenceStatus::Unverified => json!({"status": "unverified", "curve_count": null}),
    }
}

fn search_row_cells(row: &SearchRow) -> Vec<String> {
    vec![
        row.label.clone(),
        row.group_order.to_string(),
        row.cover_genus.to_string(),
        row.cover_points.to_string(),
        row.old_lower
            .as_ref()
            .map(BigInt::to_string)
            .unwrap_or_else(|| "-".to_string()),
        row.classification.to_string(),
        evidence_cell(&row.evidence),
    ]
}

const SEARCH_CSV_HEADER: [&str; 10] = [
    "label",
    "base_field",
    "target_field",
    "base_genus",
    "group_order",
    "cover_genus",
    "cover_points",
    "old_lower",
    "classification",
    "evidence",
];

fn search_row_csv(row: &SearchRow) -> Vec<String> {
    vec![
        row.label.clone(),
        row.base_field.to_string(),
        row.target_field.to_string(),
        row.base_genus.to_string(),
        row.group_order.to_string(),
        row.cover_genus.to_string(),
        row.cover_points.to_string(),
        row.old_lower
            .as_ref()
            .map(BigInt::to_string)
            .unwrap_or_default(),
        row.classification.to_string(),
        evidence_cell(&row.evidence),
    ]
}

fn search_row_value(row: &SearchRow) -> Value {
    json!({
        "label": row.label,
        "base_field": row.base_field,
        "target_field": row.target_field,
        "base_genus": row.base_genus,
        "group_order": bigint_value(&row.group_order),
        "cover_genus": bigint_value(&row.cover_genus),
        "cover_points": bigint_value(&row.cover_points),
        "old_lower": optional_bigint_value(row.old_lower.as_ref()),
        "classification": row.classification.to_string(),
        "evidence": evidence_value(&row.evidence),
    })
}

fn summary_value(report: &SearchReport) -> Value {
    let summary = &report.summary;
    json!({
        "candidates": summary.candidates,
        "accepted": summary.accepted,
        "rejections": summary.rejections,
        "classification_counts": summary.classification_counts,
        "deduplicated": summary.deduplicated,
        "filtered": summary.filtered,
        "emitted": summary.emitted,
    })
}

/// Renders a search report. The table mirrors the record-table column
/// order and appends the run summary; CSV carries the rows only.
pub fn render_search(report: &SearchReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = report.rows.iter().map(search_row_cells).collect();
            let mut out = layout_table(
                &[
                    "label",
                    "|G|",
                    "g_Y",
                    "#Y",
                    "old_record",
                    "class",
                    "evidence",
                ],
                &rows,
            );
            out.push('\n');
            let summary = &report.summary;
            out.push_str(&format!("candidates: {}\n", summary.candidates));
            out.push_str(&format!("accepted: {}\n", summary.accepted));
            for (reason, count) in &summary.rejections {
                out.push_str(&format!("rejected[{reason}]: {count}\n"));
            }
            for (class, count) in &summary.classification_counts {
                out.push_str(&format!("classified[{class}]: {count}\n"));
            }
            out.push_str(&format!("deduplicated: {}\n", summary.deduplicated));
            out.push_str(&format!("filtered: {}\n", summary.filtered));
            out.push_str(&format!("emitted: {}\n", summary.emitted));
            out
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = report.rows.iter().map(search_row_csv).collect();
            csv_from_rows(&SEARCH_CSV_HEADER, &rows)
        }
        OutputFormat::Json => {
            let value = json!({
                "rows": report.rows.iter().map(search_row_value).collect::<Vec<_>>(),
                "summary": summary_value(report),
            });
            let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

const VERIFICATION_CSV_HEADER: [&str; 8] = [
    "label",
    "group_order",
    "cover_genus",
    "cover_points",
    "old_record",
    "classification",
    "pass",
    "detail",
];

/// Renders a verification report; the table ends with an "N/M pass"
/// line.
pub fn render_verification(report: &VerificationReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.label.clone(),
                        row.expected_group_order.to_string(),
                        row.expected_cover_genus.to_string(),
                        row.expected_cover_points.to_string(),
                        row.old_record
                            .as_ref()
                            .map(BigInt::to_string)
                            .unwrap_or_else(|| "-".to_string()),
                        row.expected_classification.to_string(),
                        if row.pass {
                            "pass".to_string()
                        } else {
                            format!("FAIL ({})", row.detail)
                        },
                    ]
                })
                .collect();
            let mut out = layout_table(
                &["label", "|G|", "g_Y", "#Y", "old_record", "class", "result"],
                &rows,
            );
            out.push('\n');
            out.push_str(&format!("{}/{} pass\n", report.passed, report.total));
            out
        }
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = report
                .rows
                .iter()
                .map(|row| {
                    vec![
                        row.label.clone(),
                        row.computed_group_order
                            .as_ref()
                            .map(BigInt::to_string)
                            .unwrap_or_default(),
                        row.computed_cover_genus
                            .as_ref()
                            .map(BigInt::to_string)
                            .unwrap_or_default(),
                        row.computed_cover_points
                            .as_ref()
                            .map(BigInt::to_string)
                            .unwrap_or_default(),
                        row.computed_old_record
                            .as_ref()
                            .map(BigInt::to_string)
                            .unwrap_or_default(),
                        row.computed_classification
                            .map(|c| c.to_string())
                            .unwrap_or_default(),
                        row.pass.to_string(),
                        row.detail.clone(),
                    ]
                })
                .collect();
            csv_from_rows(&VERIFICATION_CSV_HEADER, &rows)
        }
        OutputFormat::Json => {
            let rows: Vec<Value> = report
                .rows
                .iter()
                .map(|row| {
                    let computed = match (
                        &row.computed_group_order,
                        &row.computed_cover_genus,
                        &row.computed_cover_points,
                    ) {
                        (Some(order), Some(genus), Some(points)) => json!({
                            "group_order": bigint_value(order),
                            "cover_genus": bigint_value(genus),
                            "cover_points": bigint_value(points),
                            "old_record": row.computed_old_record.as_ref().map(bigint_value),
                            "classification": row.computed_classification.map(|c| c.to_string()),
                        }),
                        _ => Value::Null,
                    };
                    json!({
                        "label": row.label,
                        "expected": {
                            "group_order": bigint_value(&row.expected_group_order),
                            "cover_genus": bigint_value(&row.expected_cover_genus),
                            "cover_points": bigint_value(&row.expected_cover_points),
                            "old_record": optional_bigint_value(row.old_record.as_ref()),
                            "classification": row.expected_classification.to_string(),
                        },
                        "computed": computed,
                        "pass": row.pass,
                        "detail": row.detail,
                    })
                })
                .collect();
            let value = json!({
                "rows": rows,
                "passed": report.passed,
                "total": report.total,
                "all_pass": report.all_pass(),
            });
            let mut text = serde_json::to_string_pretty(&value).expect("report serializes");
            text.push('\n');
            text
        }
    }
}

/// Renders labelled scalar results (decode, invariants, cover, ...):
/// "key: value" lines, a one-row CSV, or a JSON object, preserving the
/// given key order in table and CSV modes.
pub fn render_pairs(pairs: &[(&str, Value)], format: OutputFormat) -> String {
    match format {
        OutputFormat::Table => {
            let mut out = String::new();
            for (key, value) in pairs {
                out.push_str(&format!("{key}: {}\n", plain_value(value)));
            }
            out
        }
        OutputFormat::Csv => {
            let header: Vec<&str> = pairs.iter().map(|(key, _)| *key).collect();
            let row: Vec<String> = pairs.iter().map(|(_, value)| plain_value(value)).collect();
            csv_from_rows(&header, &[row])
        }
        OutputFormat::Json => {
            let mut object = serde_json::Map::new();
            for (key, value) in pairs {
                object.insert((*key).to_string(), value.clone());
            }
            let mut text =
                serde_json::to_string_pretty(&Value::Object(object)).expect("object serializes");
            text.push('\n');
            text
        }
    }
}

/// Human form of a JSON value: strings bare, arrays comma-separated.
fn plain_value(value: &Value) -> String {
    match value {
        Value::String(text) => text.clone(),
        Value::Array(items) => items.iter().map(plain_value).collect::<Vec<_>>().join(","),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmfdb::{parse_dataset, ErrorPolicy};
    use crate::records::load_records;
    use crate::search::{
        bundled_old_records, bundled_verification_fixture, run_search, verify_paper_tables,
        SearchConfig,
    };

    fn table1_report() -> SearchReport {
        let dataset = "{\"label\":\"4.2.d_i_o_x\",\"curve_count\":1}\n{\"label\":\"5.2.e_m_ba_bv_cu\",\"curve_count\":1}\n";
        let parsed = parse_dataset(dataset, ErrorPolicy::FailFast, "test").unwrap();
        let records = load_records(bundled_old_records()).unwrap();
        run_search(&parsed.records, &records, &SearchConfig::default())
    }

    #[test]
    fn table_mode_mirrors_the_record_table_layout() {
        let text = render_search(&table1_report(), OutputFormat::Table);
        let lines: Vec<&str> = text.lines().collect();
        let header: Vec<&str> = lines[0].split_whitespace().collect();
        assert_eq!(
            header,
            [
                "label",
                "|G|",
                "g_Y",
                "#Y",
                "old_record",
                "class",
                "evidence"
            ]
        );
        let first: Vec<&str> = lines[1].split_whitespace().collect();
        assert_eq!(
            first,
            [
                "4.2.d_i_o_x",
                "11",
                "34",
                "66",
                "65",
                "improves",
                "verified(1)"
            ]
        );
        let second: Vec<&str> = lines[2].split_whitespace().collect();
        assert_eq!(
            second,
            [
                "5.2.e_m_ba_bv_cu",
                "12",
                "49",
                "84",
                "81",
                "improves",
                "verified(1)"
            ]
        );
    }

    #[test]
    fn rendering_is_deterministic() {
        let report = table1_report();
        for format in [OutputFormat::Table, OutputFormat::Csv, OutputFormat::Json] {
            assert_eq!(
                render_search(&report, format),
                render_search(&report, format)
            );
        }
        let verification = verify_paper_tables(bundled_verification_fixture()).unwrap();
        for format in [OutputFormat::Table, OutputFormat::Csv, OutputFormat::Json] {
            assert_eq!(
                render_verification(&verification, format),
                render_verification(&verification, format)
            );
        }
    }

    #[test]
    fn empty_report_renders_header_only_csv() {
        let text = render_search(&SearchReport::default(), OutputFormat::Csv);
        assert_eq!(
            text,
            "label,base_field,target_field,base_genus,group_order,cover_genus,cover_points,old_lower,classification,evidence\n"
        );
    }

    #[test]
    fn json_numbers_stay_exact() {
        let mut report = table1_report();
        let huge: BigInt = "123456789012345678901234567890123".parse().unwrap();
        report.rows[0].cover_points = huge.clone();
        let text = render_search(&report, OutputFormat::Json);
        assert!(text.contains("123456789012345678901234567890123"));
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            parsed["rows"][0]["cover_points"].to_string(),
            huge.to_string()
        );
    }

    #[test]
    fn json_search_report_carries_rows_and_summary() {
        let text = render_search(&table1_report(), OutputFormat::Json);
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed["rows"].as_array().unwrap().len(), 2);
        assert_eq!(parsed["rows"][0]["label"], "4.2.d_i_o_x");
        assert_eq!(parsed["rows"][0]["old_lower"].to_string(), "65");
        assert_eq!(parsed["rows"][0]["evidence"]["status"], "verified");
        assert_eq!(parsed["summary"]["emitted"].to_string(), "2");
        assert_eq!(
            parsed["summary"]["classification_counts"]["improves"].to_string(),
            "2"
        );
    }

    #[test]
    fn verification_table_ends_with_the_pass_line() {
        let report = verify_paper_tables(bundled_verification_fixture()).unwrap();
        let text = render_verification(&report, OutputFormat::Table);
        assert!(text.ends_with("11/11 pass\n"), "{text}");
        let csv = render_verification(&report, OutputFormat::Csv);
        assert!(csv.starts_with(
            "label,group_order,cover_genus,cover_points,old_record,classification,pass,detail\n"
        ));
        assert_eq!(csv.lines().count(), 12);
    }

    #[test]
    fn failed_verification_rows_render_their_detail() {
        let fixture =
            bundled_verification_fixture().replace("\"cover_points\":66", "\"cover_points\":67");
        let report = verify_paper_tables(&fixture).unwrap();
        let text = render_verification(&report, OutputFormat::Table);
        assert!(text.contains("FAIL"), "{text}");
        assert!(text.ends_with("10/11 pass\n"), "{text}");
        let json: Value =
            serde_json::from_str(&render_verification(&report, OutputFormat::Json)).unwrap();
        assert_eq!(json["all_pass"], Value::Bool(false));
    }

    #[test]
    fn pairs_render_in_all_formats() {
        let pairs = vec![
            ("label", Value::String("4.2.d_i_o_x".to_string())),
            ("group_order", bigint_value(&BigInt::from(11))),
            ("old", Value::Null),
        ];
        assert_eq!(
            render_pairs(&pairs, OutputFormat::Table),
            "label: 4.2.d_i_o_x\ngroup_order: 11\nold: -\n"
        );
        assert_eq!(
            render_pairs(&pairs, OutputFormat::Csv),
            "label,group_order,old\n4.2.d_i_o_x,11,-\n"
        );
        let parsed: Value =
            serde_json::from_str(&render_pairs(&pairs, OutputFormat::Json)).unwrap();
        assert_eq!(parsed["group_order"].to_string(), "11");
        assert_eq!(parsed["old"], Value::Null);
    }
}

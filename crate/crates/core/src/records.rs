//! Best-known point-count records per (field size, genus), in the style
//! of the manYPoints tables, with classification of new candidates
//! against them.
//!
//! CSV interchange format: header "q,genus,lower,upper", one row per
//! (q, genus) pair, empty cells meaning unknown, '#' comment lines.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

/// Best-known bounds for curves of a given genus over F_q.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecordsEntry {
    pub q: u64,
    pub genus: u64,
    /// Largest known number of points, if any curve is recorded.
    pub best_lower: Option<BigInt>,
    /// Smallest known upper bound, if one is recorded.
    pub best_upper: Option<BigInt>,
}

/// How a candidate point count compares to the recorded bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Classification {
    /// Strictly more points than the recorded lower bound.
    Improves,
    /// Exactly matches the recorded lower bound.
    Ties,
    /// Fewer points than the recorded lower bound.
    Below,
    /// No entry, or no lower bound recorded, at this (q, genus).
    NewEntry,
    /// Exceeds a recorded upper bound: the computation or the records
    /// data is wrong, and reports must surface this loudly.
    ExceedsUpperBound,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Classification::Improves => "improves",
            Classification::Ties => "ties",
            Classification::Below => "below",
            Classification::NewEntry => "new_entry",
            Classification::ExceedsUpperBound => "exceeds_upper_bound",
        };
        f.write_str(text)
    }
}

impl std::str::FromStr for Classification {
    type Err = String;

    fn from_str(text: &str) -> std::result::Result<Self, String> {
        match text {
            "improves" => Ok(Classification::Improves),
            "ties" => Ok(Classification::Ties),
            "below" => Ok(Classification::Below),
            "new_entry" => Ok(Classification::NewEntry),
            "exceeds_upper_bound" => Ok(Classification::ExceedsUpperBound),
            other => Err(format!("unknown classification {other:?}")),
        }
    }
}

/// Immutable-after-load lookup table keyed by (q, genus).
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RecordsTable {
    entries: BTreeMap<(u64, u64), RecordsEntry>,
}

impl RecordsTable {
    pub fn new() -> Self {
        RecordsTable::default()
    }

    pub fn insert(&mut self, entry: RecordsEntry) -> Result<()> {
        let key = (entry.q, entry.genus);
        if self.entries.contains_key(&key) {
            return Err(Error::DuplicateRecordsEntry {
                q: entry.q,
                genus: entry.genus,
            });
        }
        self.entries.insert(key, entry);
        Ok(())
    }

    pub fn lookup(&self, q: u64, genus: u64) -> Option<&RecordsEntry> {
        self.entries.get(&(q, genus))
    }

    pub fn entries(&self) -> impl Iterator<Item = &RecordsEntry> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Classifies a candidate point count against this table. An
    /// exceeded upper bound takes precedence over every other verdict.
    pub fn classify(&self, q: u64, genus: u64, n_points: &BigInt) -> Classification {
        let Some(entry) = self.lookup(q, genus) else {
            return Classification::NewEntry;
        };
        if let Some(upper) = &entry.best_upper {
            if n_points > upper {
                return Classification::ExceedsUpperBound;
            }
        }
        match &entry.best_lower {
            None => Classification::NewEntry,
            Some(lower) => match n_points.cmp(lower) {
                std::cmp::Ordering::Greater => Classification::Improves,
                std::cmp::Ordering::Equal => Classification::Ties,
                std::cmp::Ordering::Less => Classification::Below,
            },
        }
    }
}

/// Parses records CSV. The header must be exactly "q,genus,lower,upper";
/// empty bound cells mean unknown; '#' lines are comments.
pub fn load_records(text: &str) -> Result<RecordsTable> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader
        .headers()
        .map_err(|e| Error::RecordsRow {
            row: 1,
            reason: e.to_string(),
        })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["q", "genus", "lower", "upper"] {
        return Err(Error::RecordsRow {
            row: 1,
            reason: format!(
                "header must be \"q,genus,lower,upper\", got \"{}\"",
                headers.iter().collect::<Vec<_>>().join(",")
            ),
        });
    }
    let mut table = RecordsTable::new();
    for record in reader.records() {
        let record = record.map_err(|e| {
            let row = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::RecordsRow {
                row,
                reason: e.to_string(),
            }
        })?;
        let row = record.position().map(|p| p.line() as usize).unwrap_or(0);
        let entry = parse_row(&record).map_err(|reason| Error::RecordsRow { row, reason })?;
        table.insert(entry)?;
    }
    Ok(table)
}

fn parse_row(record: &csv::StringRecord) -> std::result::Result<RecordsEntry, String> {
    if record.len() != 4 {
        return Err(format!("expected 4 fields, got {}", record.len()));
    }
    let q: u64 = record[0]
        .parse()
        .map_err(|_| format!("invalid field size {:?}", &record[0]))?;
    if q == 0 {
        return Err("field size must be positive".to_string());
    }
    let genus: u64 = record[1]
        .parse()
        .map_err(|_| format!("invalid genus {:?}", &record[1]))?;
    let best_lower = parse_bound(&record[2], "lower")?;
    let best_upper = parse_bound(&record[3], "upper")?;
    if let (Some(lower), Some(upper)) = (&best_lower, &best_upper) {
        if lower > upper {
            return Err(format!("lower bound {lower} exceeds upper bound {upper}"));
        }
    }
    Ok(RecordsEntry {
        q,
        genus,
        best_lower,
        best_upper,
    })
}

fn parse_bound(cell: &str, name: &str) -> std::result::Result<Option<BigInt>, String> {
    if cell.is_empty() {
        return Ok(None);
    }
    let value: BigInt = cell
        .parse()
        .map_err(|_| format!("invalid {name} bound {cell:?}"))?;
    if value < BigInt::one() {
        return Err(format!("{name} bound must be positive, got {value}"));
    }
    Ok(Some(value))
}

/// Serializes a table back to CSV in key order; load/save round-trips.
pub fn save_records(table: &RecordsTable) -> String {
    let mut out = String::from("q,genus,lower,upper\n");
    for entry in table.entries() {
        let lower = entry
            .best_lower
            .as_ref()
            .map(BigInt::to_string)
            .unwrap_or_default();
        let upper = entry
            .best_upper
            .as_ref()
            .map(BigInt::to_string)
            .unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{}\n",
            entry.q, entry.genus, lower, upper
        ));
    }
    out
}

/// The Serre refinement of the Weil bound: a curve of the given genus
/// over F_q has at most q + 1 + genus·⌊2√q⌋ rational points.
pub fn serre_weil_upper(q: u64, genus: &BigInt) -> BigInt {
    let floor_two_sqrt_q = (BigInt::from(q) * 4u32).sqrt();
    BigInt::from(q) + 1 + genus * floor_two_sqrt_q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn loads_rows_with_unknown_cells() {
        let table = load_records("q,genus,lower,upper\n4,34,65,\n16,47,,\n").unwrap();
        assert_eq!(table.len(), 2);
        let first = table.lookup(4, 34).unwrap();
        assert_eq!(first.best_lower, Some(int(65)));
        assert_eq!(first.best_upper, None);
        let second = table.lookup(16, 47).unwrap();
        assert_eq!(second.best_lower, None);
        assert_eq!(second.best_upper, None);
        assert!(table.lookup(4, 35).is_none());
    }

    #[test]
    fn skips_comments_and_blank_lines() {
        let table =
            load_records("q,genus,lower,upper\n# manYPoints excerpt\n\n2,5,17,20\n").unwrap();
        assert_eq!(table.len(), 1);
        assert_eq!(table.lookup(2, 5).unwrap().best_upper, Some(int(20)));
    }

    #[test]
    fn rejects_wrong_header() {
        let err = load_records("q,g,lower,upper\n").unwrap_err();
        assert!(matches!(err, Error::RecordsRow { row: 1, .. }), "{err:?}");
    }

    #[test]
    fn rejects_malformed_rows() {
        for (text, fragment) in [
            ("q,genus,lower,upper\n4,34,sixty,\n", "invalid lower"),
            ("q,genus,lower,upper\n0,34,65,\n", "positive"),
            ("q,genus,lower,upper\n4,-1,65,\n", "invalid genus"),
            ("q,genus,lower,upper\n4,34,0,\n", "must be positive"),
            ("q,genus,lower,upper\n4,34,70,65\n", "exceeds upper"),
            ("q,genus,lower,upper\n4,34,65\n", "fields"),
        ] {
            let err = load_records(text).unwrap_err();
            match err {
                Error::RecordsRow { row: 2, reason } => {
                    assert!(reason.contains(fragment), "{text:?}: {reason}")
                }
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn rejects_duplicate_keys() {
        let err = load_records("q,genus,lower,upper\n4,34,65,\n4,34,66,\n").unwrap_err();
        assert_eq!(err, Error::DuplicateRecordsEntry { q: 4, genus: 34 });
    }

    #[test]
    fn classification_matrix() {
        let table = load_records("q,genus,lower,upper\n4,34,65,70\n16,47,,200\n9,5,,\n").unwrap();
        assert_eq!(table.classify(4, 34, &int(66)), Classification::Improves);
        assert_eq!(table.classify(4, 34, &int(65)), Classification::Ties);
        assert_eq!(table.classify(4, 34, &int(64)), Classification::Below);
        // The flag wins over every other verdict, including NewEntry.
        assert_eq!(
            table.classify(4, 34, &int(71)),
            Classification::ExceedsUpperBound
        );
        assert_eq!(
            table.classify(16, 47, &int(201)),
            Classification::ExceedsUpperBound
        );
        assert_eq!(table.classify(16, 47, &int(150)), Classification::NewEntry);
        assert_eq!(table.classify(9, 5, &int(1)), Classification::NewEntry);
        // Absent entry entirely.
        assert_eq!(table.classify(25, 49, &int(336)), Classification::NewEntry);
    }

    #[test]
    fn classification_agrees_with_bounds_on_a_grid() {
        let table = load_records("q,genus,lower,upper\n2,3,10,14\n").unwrap();
        let entry = table.lookup(2, 3).unwrap();
        for n in 0..=20i64 {
            let got = table.classify(2, 3, &int(n));
            let lower = entry.best_lower.as_ref().unwrap();
            let upper = entry.best_upper.as_ref().unwrap();
            if int(n) > *upper {
                assert_eq!(got, Classification::ExceedsUpperBound);
            } else if int(n) > *lower {
                assert_eq!(got, Classification::Improves);
            } else if int(n) == *lower {
                assert_eq!(got, Classification::Ties);
            } else {
                assert_eq!(got, Classification::Below);
            }
        }
    }

    #[test]
    fn serre_weil_examples() {
        assert_eq!(serre_weil_upper(4, &int(34)), int(141));
        assert!(int(66) <= serre_weil_upper(4, &int(34)));
        assert_eq!(serre_weil_upper(2, &int(0)), int(3));
        assert_eq!(serre_weil_upper(5, &int(3)), int(18));
        // Perfect square vs not: ⌊2√9⌋ = 6, ⌊2√8⌋ = 5.
        assert_eq!(serre_weil_upper(9, &int(1)), int(16));
        assert_eq!(serre_weil_upper(8, &int(1)), int(14));
    }

    #[test]
    fn save_load_round_trip() {
        let text = "q,genus,lower,upper\n2,5,17,20\n4,34,65,\n16,47,,\n25,3,,30\n";
        let table = load_records(text).unwrap();
        assert_eq!(save_records(&table), text);
        assert_eq!(load_records(&save_records(&table)).unwrap(), table);
    }

    #[test]
    fn save_orders_by_key() {
        let mut table = RecordsTable::new();
        for (q, genus) in [(25u64, 3u64), (2, 9), (2, 5), (4, 1)] {
            table
                .insert(RecordsEntry {
                    q,
                    genus,
                    best_lower: Some(int(7)),
                    best_upper: None,
                })
                .unwrap();
        }
        let saved = save_records(&table);
        let keys: Vec<&str> = saved.lines().skip(1).collect();
        assert_eq!(keys, ["2,5,7,", "2,9,7,", "4,1,7,", "25,3,7,"]);
    }
}

//! Exact-arithmetic invariants of unramified abelian covers of curves
//! over finite fields.
//!
//! Starting from the L-polynomial of a curve X over F_r, the library
//! computes point counts, class numbers, and base changes; certifies
//! the Weil conditions; and evaluates the constant-field-extension
//! trick, which produces an unramified abelian cover of X over F_{r^2}
//! whose Galois group order, genus, and rational point count follow
//! from the L-polynomial alone. On top of that sit LMFDB-style dataset
//! ingestion, a best-known-records table, and a search pipeline that
//! finds covers with record numbers of points.
//!
//! Every computation is exact: integers are arbitrary precision and
//! root location is certified by Sturm chains over the rationals.

pub mod cover;
pub mod error;
pub mod field;
pub mod lmfdb;
pub mod lpoly;
mod poly;
pub mod records;
pub mod render;
pub mod search;
pub mod weil;

pub use cover::{constant_field_cover, cover_invariants, CoverInvariants};
pub use error::{Error, Result};
pub use field::FieldSize;
pub use lmfdb::{
    fetch_candidates, parse_dataset, CandidateRecord, DatasetParse, ErrorPolicy, FetchClient,
    FetchConfig, IsogenyClassLabel,
};
pub use lpoly::{LPolynomial, PointCounts, PowerSums};
pub use records::{
    load_records, save_records, serre_weil_upper, Classification, RecordsEntry, RecordsTable,
};
pub use render::{render_pairs, render_search, render_verification, OutputFormat};
pub use search::{
    bundled_old_records, bundled_sample_dataset, bundled_verification_fixture, evaluate_candidate,
    run_search, verify_paper_tables, EvidenceStatus, RejectionReason, SearchConfig, SearchReport,
    SearchRow, SearchSummary, VerificationReport, VerificationRow,
};
pub use weil::{
    real_weil_polynomial, validate_weil, validate_weil_with_depth, ValidationFailure,
    ValidationReport,
};

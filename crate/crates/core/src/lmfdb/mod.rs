//! LMFDB interchange: isogeny-class label codec, line-oriented dataset
//! parsing, and an optional cached HTTP fetch client.

pub mod dataset;
pub mod fetch;
pub mod label;

pub use dataset::{parse_dataset, CandidateRecord, DatasetParse, ErrorPolicy};
pub use fetch::{fetch_candidates, FetchClient, FetchConfig, HttpTransport, Transport};
pub use label::IsogenyClassLabel;

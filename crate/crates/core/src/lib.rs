//! Unusual-port-access detection for network telescope (darknet) traffic.
//!
//! Each UTC day's destination-port counts are treated as a document and
//! ports as words. After stop-port removal and noise thresholding, ports
//! are scored with smoothed TF-IDF over a sliding window of days; ports
//! that suddenly attract traffic on few days float to the top of the
//! daily ranking. Forensic helpers characterize what was flagged (ISN
//! fingerprints, daily UDP port rotation, payload/source-port
//! distributions, /8 source heatmaps), and a seeded scenario generator
//! produces labeled synthetic traffic for end-to-end verification.

pub mod cleanse;
pub mod corpus;
pub mod forensics;
pub mod record;
pub mod report;
pub mod scoring;
pub mod synth;

pub use corpus::{Corpus, DateRange, DayDocument, HourlySeries};
pub use record::{AccessRecord, Protocol, RecordFormat};

//! Daily and hourly port-access count aggregation.
//!
//! A [`DayDocument`] is one UTC day's map from destination port to access
//! count; a [`Corpus`] is an ordered run of consecutive days for one
//! protocol. Days without surviving records are kept as empty documents
//! so window arithmetic stays uniform.

use std::collections::BTreeMap;

use chrono::{DateTime, Datelike, NaiveDate, Timelike};
use serde::{Deserialize, Serialize};

use crate::record::{AccessRecord, Protocol};

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("no records matched protocol {0}")]
    EmptyInput(Protocol),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("timestamp {0} is outside the representable date range")]
    TimestampOutOfRange(i64),
    #[error("invalid corpus file: {0}")]
    InvalidFile(String),
}

/// Inclusive range of UTC dates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DateRange {
    pub start: NaiveDate,
    pub end: NaiveDate,
}

impl DateRange {
    pub fn new(start: NaiveDate, end: NaiveDate) -> Self {
        Self { start, end }
    }

    pub fn contains(&self, day: NaiveDate) -> bool {
        self.start <= day && day <= self.end
    }

    pub fn num_days(&self) -> i64 {
        (self.end - self.start).num_days() + 1
    }

    pub fn days(&self) -> impl Iterator<Item = NaiveDate> + '_ {
        self.start.iter_days().take_while(move |d| *d <= self.end)
    }
}

impl std::fmt::Display for DateRange {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// Port access counts of one UTC day. Absent ports mean count zero;
/// stored counts are strictly positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DayDocument {
    pub day: NaiveDate,
    pub protocol: Protocol,
    pub counts: BTreeMap<u16, u64>,
}

impl DayDocument {
    pub fn new(day: NaiveDate, protocol: Protocol) -> Self {
        Self { day, protocol, counts: BTreeMap::new() }
    }

    /// Total accesses of the day across all ports.
    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn count(&self, port: u16) -> u64 {
        self.counts.get(&port).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Ordered consecutive-day corpus for one protocol.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    protocol: Protocol,
    docs: Vec<DayDocument>,
}

impl Corpus {
    /// Build from per-day documents that must already be consecutive and
    /// strictly increasing by day.
    pub fn from_docs(protocol: Protocol, docs: Vec<DayDocument>) -> Result<Self, CorpusError> {
        if docs.is_empty() {
            return Err(CorpusError::EmptyCorpus);
        }
        for pair in docs.windows(2) {
            if pair[1].day != pair[0].day.succ_opt().ok_or(CorpusError::InvalidFile("date overflow".into()))? {
                return Err(CorpusError::InvalidFile(format!(
                    "days not consecutive: {} then {}",
                    pair[0].day, pair[1].day
                )));
            }
        }
        Ok(Self { protocol, docs })
    }

    pub fn protocol(&self) -> Protocol {
        self.protocol
    }

    /// Number of documents (days), the N of the IDF formula.
    pub fn n_docs(&self) -> usize {
        self.docs.len()
    }

    /// Number of documents containing `port`.
    pub fn df(&self, port: u16) -> usize {
        self.docs.iter().filter(|d| d.counts.contains_key(&port)).count()
    }

    pub fn docs(&self) -> &[DayDocument] {
        &self.docs
    }

    pub fn start_day(&self) -> NaiveDate {
        self.docs[0].day
    }

    pub fn end_day(&self) -> NaiveDate {
        self.docs[self.docs.len() - 1].day
    }

    pub fn range(&self) -> DateRange {
        DateRange::new(self.start_day(), self.end_day())
    }

    pub fn doc_for(&self, day: NaiveDate) -> Option<&DayDocument> {
        let offset = (day - self.start_day()).num_days();
        if offset < 0 {
            return None;
        }
        self.docs.get(offset as usize)
    }

    /// Every distinct port appearing anywhere in the corpus.
    pub fn distinct_ports(&self) -> Vec<u16> {
        let mut ports: Vec<u16> = self
            .docs
            .iter()
            .flat_map(|d| d.counts.keys().copied())
            .collect();
        ports.sort_unstable();
        ports.dedup();
        ports
    }

    /// Total record count across all documents.
    pub fn total(&self) -> u64 {
        self.docs.iter().map(|d| d.total()).sum()
    }
}

/// Hourly port-access counts, bucketed by (UTC date, hour).
/// Buckets with no traffic are absent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HourlySeries {
    pub protocol: Protocol,
    pub buckets: BTreeMap<(NaiveDate, u8), BTreeMap<u16, u64>>,
}

impl HourlySeries {
    /// Per-port totals of one UTC day, summed over its hours.
    pub fn daily_totals(&self, day: NaiveDate) -> BTreeMap<u16, u64> {
        let mut totals = BTreeMap::new();
        for hour in 0u8..24 {
            if let Some(counts) = self.buckets.get(&(day, hour)) {
                for (&port, &n) in counts {
                    *totals.entry(port).or_insert(0) += n;
                }
            }
        }
        totals
    }

    pub fn days(&self) -> Vec<NaiveDate> {
        let mut days: Vec<NaiveDate> = self.buckets.keys().map(|(d, _)| *d).collect();
        days.dedup();
        days
    }
}

fn utc_date_hour(ts: i64) -> Result<(NaiveDate, u8), CorpusError> {
    let dt: DateTime<chrono::Utc> =
        DateTime::from_timestamp(ts, 0).ok_or(CorpusError::TimestampOutOfRange(ts))?;
    Ok((
        NaiveDate::from_ymd_opt(dt.year(), dt.month(), dt.day()).unwrap(),
        dt.hour() as u8,
    ))
}

/// Aggregate records of one protocol into per-day documents spanning the
/// full min..max date range; days without records become empty documents.
pub fn aggregate_daily<'a, I>(records: I, protocol: Protocol) -> Result<Corpus, CorpusError>
where
    I: IntoIterator<Item = &'a AccessRecord>,
{
    let mut by_day: BTreeMap<NaiveDate, BTreeMap<u16, u64>> = BTreeMap::new();
    for rec in records {
        if rec.protocol != protocol {
            continue;
        }
        let (day, _) = utc_date_hour(rec.ts)?;
        *by_day.entry(day).or_default().entry(rec.dst_port).or_insert(0) += 1;
    }
    if by_day.is_empty() {
        return Err(CorpusError::EmptyInput(protocol));
    }
    let first = *by_day.keys().next().unwrap();
    let last = *by_day.keys().next_back().unwrap();
    let docs = DateRange::new(first, last)
        .days()
        .map(|day| DayDocument {
            day,
            protocol,
            counts: by_day.remove(&day).unwrap_or_default(),
        })
        .collect();
    Corpus::from_docs(protocol, docs)
}

/// Aggregate records of one protocol into (UTC date, hour) buckets.
pub fn aggregate_hourly<'a, I>(records: I, protocol: Protocol) -> Result<HourlySeries, CorpusError>
where
    I: IntoIterator<Item = &'a AccessRecord>,
{
    let mut buckets: BTreeMap<(NaiveDate, u8), BTreeMap<u16, u64>> = BTreeMap::new();
    for rec in records {
        if rec.protocol != protocol {
            continue;
        }
        let key = utc_date_hour(rec.ts)?;
        *buckets.entry(key).or_default().entry(rec.dst_port).or_insert(0) += 1;
    }
    if buckets.is_empty() {
        return Err(CorpusError::EmptyInput(protocol));
    }
    Ok(HourlySeries { protocol, buckets })
}

/// Share of total corpus traffic per port, sorted descending and
/// truncated to `top_k`. The untruncated ratios sum to 1.
pub fn port_ratio_table(corpus: &Corpus, top_k: usize) -> Result<Vec<(u16, f64)>, CorpusError> {
    let mut totals: BTreeMap<u16, u64> = BTreeMap::new();
    for doc in corpus.docs() {
        for (&port, &n) in &doc.counts {
            *totals.entry(port).or_insert(0) += n;
        }
    }
    let grand: u64 = totals.values().sum();
    if grand == 0 {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut table: Vec<(u16, f64)> = totals
        .into_iter()
        .map(|(port, n)| (port, n as f64 / grand as f64))
        .collect();
    // descending ratio, ascending port on ties
    table.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    table.truncate(top_k);
    Ok(table)
}

/// Corpus persistence: `{"protocol":"tcp","days":[{"day":"2020-08-01","counts":{"9530":12345}}]}`
#[derive(Serialize, Deserialize)]
struct CorpusFile {
    protocol: Protocol,
    days: Vec<DayFile>,
}

#[derive(Serialize, Deserialize)]
struct DayFile {
    day: NaiveDate,
    counts: BTreeMap<u16, u64>,
}

impl Corpus {
    pub fn to_json(&self) -> String {
        let file = CorpusFile {
            protocol: self.protocol,
            days: self
                .docs
                .iter()
                .map(|d| DayFile { day: d.day, counts: d.counts.clone() })
                .collect(),
        };
        serde_json::to_string(&file).expect("corpus serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Self, CorpusError> {
        let file: CorpusFile =
            serde_json::from_str(json).map_err(|e| CorpusError::InvalidFile(e.to_string()))?;
        let docs: Vec<DayDocument> = file
            .days
            .into_iter()
            .map(|d| DayDocument { day: d.day, protocol: file.protocol, counts: d.counts })
            .collect();
        for doc in &docs {
            if doc.counts.values().any(|&n| n == 0) {
                return Err(CorpusError::InvalidFile(format!("zero count stored for day {}", doc.day)));
            }
        }
        Corpus::from_docs(file.protocol, docs)
    }
}

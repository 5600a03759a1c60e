//! TF-IDF scoring of ports over a sliding window of day documents.
//!
//! For a port t in day document d within a window of N days:
//!
//! ```text
//! tf(t,d)    = n(t,d) / sum_i n(i,d)
//! idf(t)     = ln(N / (df(t)+1)) + 1        (smoothed)
//! idf(t)     = ln(N / (df(t)+1))            (common)
//! tfidf(t,d) = tf(t,d) * idf(t)
//! ```
//!
//! The logarithm is natural. Document frequency df and N are computed
//! over the window only, so a port that was quiet for a month and then
//! spikes scores high even if it was active months ago.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, DateRange, DayDocument};

#[derive(Debug, thiserror::Error)]
pub enum ScoreError {
    #[error("document for {0} has no accesses")]
    EmptyDocument(NaiveDate),
    #[error("day index {index} needs at least {window} days of history, corpus has {available}")]
    InsufficientHistory { index: usize, window: usize, available: usize },
    #[error("range {0} is not fully inside the corpus")]
    RangeOutOfCorpus(DateRange),
    #[error("invalid scoring config: {0}")]
    InvalidConfig(String),
}

/// Which IDF formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IdfMode {
    Smoothed,
    Common,
}

/// Which TF formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TfMode {
    Linear,
    Log,
}

impl std::str::FromStr for IdfMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "smoothed" => Ok(IdfMode::Smoothed),
            "common" => Ok(IdfMode::Common),
            other => Err(format!("unknown idf mode `{other}` (expected smoothed or common)")),
        }
    }
}

impl std::str::FromStr for TfMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "linear" => Ok(TfMode::Linear),
            "log" => Ok(TfMode::Log),
            other => Err(format!("unknown tf mode `{other}` (expected linear or log)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoringConfig {
    pub window_days: usize,
    pub top_k: usize,
    pub idf_mode: IdfMode,
    pub tf_mode: TfMode,
}

impl Default for ScoringConfig {
    fn default() -> Self {
        Self { window_days: 30, top_k: 5, idf_mode: IdfMode::Smoothed, tf_mode: TfMode::Linear }
    }
}

impl ScoringConfig {
    fn validate(&self) -> Result<(), ScoreError> {
        if self.window_days < 2 {
            return Err(ScoreError::InvalidConfig("window_days must be >= 2".into()));
        }
        if self.top_k < 1 {
            return Err(ScoreError::InvalidConfig("top_k must be >= 1".into()));
        }
        Ok(())
    }
}

/// Score of one port on one day.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TfidfScore {
    pub port: u16,
    pub tf: f64,
    pub idf: f64,
    pub tfidf: f64,
    pub day: NaiveDate,
}

/// Per-day ranking: scores sorted by tfidf descending, ties broken by
/// ascending port, truncated to `k` entries.
#[derive(Debug, Clone, PartialEq)]
pub struct TfidfRanking {
    pub day: NaiveDate,
    pub window_days: usize,
    pub entries: Vec<TfidfScore>,
    pub k: usize,
}

/// Linear term frequency: share of the day's accesses hitting `port`.
pub fn tf(port: u16, doc: &DayDocument) -> Result<f64, ScoreError> {
    let total = doc.total();
    if total == 0 {
        return Err(ScoreError::EmptyDocument(doc.day));
    }
    Ok(doc.count(port) as f64 / total as f64)
}

/// Log-scaled term frequency: ln(1+n) / ln(1+total); 0 for absent ports.
pub fn tf_log(port: u16, doc: &DayDocument) -> Result<f64, ScoreError> {
    let total = doc.total();
    if total == 0 {
        return Err(ScoreError::EmptyDocument(doc.day));
    }
    let n = doc.count(port);
    if n == 0 {
        return Ok(0.0);
    }
    Ok((1.0 + n as f64).ln() / (1.0 + total as f64).ln())
}

/// Smoothed IDF value for a document frequency within `n_docs` documents.
pub fn smoothed_idf(n_docs: usize, df: usize) -> f64 {
    common_idf(n_docs, df) + 1.0
}

/// Common (unsmoothed) IDF value: ln(N / (df+1)).
pub fn common_idf(n_docs: usize, df: usize) -> f64 {
    (n_docs as f64 / (df as f64 + 1.0)).ln()
}

/// Smoothed IDF of a port over a whole corpus.
pub fn idf_smoothed(port: u16, corpus: &Corpus) -> f64 {
    smoothed_idf(corpus.n_docs(), corpus.df(port))
}

/// Common IDF of a port over a whole corpus.
pub fn idf_common(port: u16, corpus: &Corpus) -> f64 {
    common_idf(corpus.n_docs(), corpus.df(port))
}

fn tf_value(mode: TfMode, port: u16, doc: &DayDocument) -> Result<f64, ScoreError> {
    match mode {
        TfMode::Linear => tf(port, doc),
        TfMode::Log => tf_log(port, doc),
    }
}

fn idf_value(mode: IdfMode, n_docs: usize, df: usize) -> f64 {
    match mode {
        IdfMode::Smoothed => smoothed_idf(n_docs, df),
        IdfMode::Common => common_idf(n_docs, df),
    }
}

/// Score every port present on day `day_index` against the window of
/// `config.window_days` documents ending there. N and df come from the
/// window alone. An empty target day yields an empty ranking.
pub fn score_day(
    corpus: &Corpus,
    day_index: usize,
    config: &ScoringConfig,
) -> Result<TfidfRanking, ScoreError> {
    config.validate()?;
    let window = config.window_days;
    if day_index >= corpus.n_docs() || day_index + 1 < window {
        return Err(ScoreError::InsufficientHistory {
            index: day_index,
            window,
            available: corpus.n_docs(),
        });
    }
    let docs = &corpus.docs()[day_index + 1 - window..=day_index];
    let target = &docs[window - 1];
    let mut entries = Vec::with_capacity(target.counts.len());
    if !target.is_empty() {
        for &port in target.counts.keys() {
            let df = docs.iter().filter(|d| d.counts.contains_key(&port)).count();
            let tf = tf_value(config.tf_mode, port, target)?;
            let idf = idf_value(config.idf_mode, window, df);
            entries.push(TfidfScore { port, tf, idf, tfidf: tf * idf, day: target.day });
        }
        entries.sort_by(|a, b| b.tfidf.partial_cmp(&a.tfidf).unwrap().then(a.port.cmp(&b.port)));
        entries.truncate(config.top_k);
    }
    Ok(TfidfRanking { day: target.day, window_days: window, entries, k: config.top_k })
}

/// One ranking per day from the first full window to the corpus end.
pub fn sliding_scan(corpus: &Corpus, config: &ScoringConfig) -> Result<Vec<TfidfRanking>, ScoreError> {
    config.validate()?;
    if corpus.n_docs() < config.window_days {
        return Err(ScoreError::InsufficientHistory {
            index: config.window_days - 1,
            window: config.window_days,
            available: corpus.n_docs(),
        });
    }
    (config.window_days - 1..corpus.n_docs())
        .map(|i| score_day(corpus, i, config))
        .collect()
}

/// Per-day counts of one port over a date range, zeros included.
pub fn port_history(
    corpus: &Corpus,
    port: u16,
    range: DateRange,
) -> Result<Vec<(NaiveDate, u64)>, ScoreError> {
    if range.start > range.end
        || !corpus.range().contains(range.start)
        || !corpus.range().contains(range.end)
    {
        return Err(ScoreError::RangeOutOfCorpus(range));
    }
    Ok(range
        .days()
        .map(|day| (day, corpus.doc_for(day).map(|d| d.count(port)).unwrap_or(0)))
        .collect())
}

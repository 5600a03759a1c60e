//! Stop-port removal and noise thresholding.
//!
//! Ubiquitous ports (the stop list) carry no anomaly signal and are
//! dropped outright. Per day, ports below a minimum access count are
//! treated as not appearing at all; without this, large networks see
//! every port every day and all IDF values collapse to the same number.
//!
//! The threshold can be picked automatically: starting from
//! `sweep_start` and doubling, count the ports that reach the maximum
//! attainable IDF (df = 1) at each threshold and stop at the first
//! strict decrease. The threshold just before the drop wins.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::corpus::{Corpus, DayDocument};
use crate::scoring::smoothed_idf;

/// Ports excluded by default: 445, 23, 22, 80, 81, 8080, 443.
pub const DEFAULT_STOP_PORTS: [u16; 7] = [445, 23, 22, 80, 81, 8080, 443];

pub const DEFAULT_SWEEP_START: u64 = 1000;
pub const DEFAULT_HISTOGRAM_BINS: usize = 40;

#[derive(Debug, thiserror::Error)]
pub enum CleanseError {
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("no ports survive threshold {0}")]
    NoSurvivingPorts(u64),
    #[error("invalid cleanse config: {0}")]
    InvalidConfig(String),
}

/// Noise threshold: fixed minimum accesses/day, or auto-selected.
/// Serializes as the string `"auto"` or a bare integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Auto,
    Fixed(u64),
}

impl Serialize for Threshold {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Threshold::Auto => serializer.serialize_str("auto"),
            Threshold::Fixed(v) => serializer.serialize_u64(*v),
        }
    }
}

impl<'de> Deserialize<'de> for Threshold {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct V;
        impl serde::de::Visitor<'_> for V {
            type Value = Threshold;

            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("\"auto\" or a positive integer")
            }

            fn visit_str<E: serde::de::Error>(self, s: &str) -> Result<Threshold, E> {
                s.parse().map_err(E::custom)
            }

            fn visit_u64<E: serde::de::Error>(self, v: u64) -> Result<Threshold, E> {
                if v >= 1 {
                    Ok(Threshold::Fixed(v))
                } else {
                    Err(E::custom("threshold must be at least 1"))
                }
            }
        }
        deserializer.deserialize_any(V)
    }
}

impl std::str::FromStr for Threshold {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "auto" {
            return Ok(Threshold::Auto);
        }
        match s.parse::<u64>() {
            Ok(v) if v >= 1 => Ok(Threshold::Fixed(v)),
            _ => Err(format!("threshold must be `auto` or a positive integer, got `{s}`")),
        }
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Threshold::Auto => f.write_str("auto"),
            Threshold::Fixed(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanseConfig {
    pub stop_ports: BTreeSet<u16>,
    pub threshold: Threshold,
    pub sweep_start: u64,
    pub histogram_bins: usize,
}

impl Default for CleanseConfig {
    fn default() -> Self {
        Self {
            stop_ports: DEFAULT_STOP_PORTS.into_iter().collect(),
            threshold: Threshold::Auto,
            sweep_start: DEFAULT_SWEEP_START,
            histogram_bins: DEFAULT_HISTOGRAM_BINS,
        }
    }
}

impl CleanseConfig {
    fn validate(&self) -> Result<(), CleanseError> {
        if self.sweep_start < 1 {
            return Err(CleanseError::InvalidConfig("sweep_start must be >= 1".into()));
        }
        if self.histogram_bins < 2 {
            return Err(CleanseError::InvalidConfig("histogram_bins must be >= 2".into()));
        }
        if let Threshold::Fixed(v) = self.threshold {
            if v < 1 {
                return Err(CleanseError::InvalidConfig("threshold must be >= 1".into()));
            }
        }
        Ok(())
    }
}

/// Histogram of smoothed IDF values after applying one noise threshold.
/// `top_bin_count` is the exact number of df = 1 ports, not a bin tally.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdfHistogram {
    pub threshold: u64,
    pub bin_edges: Vec<f64>,
    pub bin_counts: Vec<u64>,
    pub top_bin_count: u64,
    pub distinct_ports: u64,
}

/// Remove every stop port from a document; other counts are untouched.
pub fn apply_stop_ports(doc: &DayDocument, stop_ports: &BTreeSet<u16>) -> DayDocument {
    DayDocument {
        day: doc.day,
        protocol: doc.protocol,
        counts: doc
            .counts
            .iter()
            .filter(|(port, _)| !stop_ports.contains(port))
            .map(|(&p, &n)| (p, n))
            .collect(),
    }
}

/// Drop ports with fewer than `threshold` accesses; a count equal to the
/// threshold survives.
pub fn apply_noise_threshold(doc: &DayDocument, threshold: u64) -> DayDocument {
    DayDocument {
        day: doc.day,
        protocol: doc.protocol,
        counts: doc
            .counts
            .iter()
            .filter(|(_, &n)| n >= threshold)
            .map(|(&p, &n)| (p, n))
            .collect(),
    }
}

fn strip_stop_ports(corpus: &Corpus, stop_ports: &BTreeSet<u16>) -> Corpus {
    let docs = corpus.docs().iter().map(|d| apply_stop_ports(d, stop_ports)).collect();
    Corpus::from_docs(corpus.protocol(), docs).expect("day structure unchanged")
}

fn strip_noise(corpus: &Corpus, threshold: u64) -> Corpus {
    let docs = corpus.docs().iter().map(|d| apply_noise_threshold(d, threshold)).collect();
    Corpus::from_docs(corpus.protocol(), docs).expect("day structure unchanged")
}

/// Result of cleansing: the filtered corpus, the threshold that was
/// applied, and the sweep trace when the threshold was auto-selected.
#[derive(Debug, Clone)]
pub struct CleanseOutcome {
    pub corpus: Corpus,
    pub threshold: u64,
    pub sweep_trace: Option<Vec<IdfHistogram>>,
}

/// Apply stop ports, resolve the threshold (sweeping if AUTO), then
/// apply it per document. The day list, and thus N, never changes.
pub fn cleanse_corpus(corpus: &Corpus, config: &CleanseConfig) -> Result<CleanseOutcome, CleanseError> {
    config.validate()?;
    if corpus.n_docs() == 0 {
        return Err(CleanseError::EmptyCorpus);
    }
    let stopped = strip_stop_ports(corpus, &config.stop_ports);
    let (threshold, sweep_trace) = match config.threshold {
        Threshold::Fixed(v) => (v, None),
        Threshold::Auto => {
            if corpus.n_docs() < 2 {
                return Err(CleanseError::InvalidConfig(
                    "auto threshold needs a corpus of at least 2 days".into(),
                ));
            }
            let (t, trace) = auto_select_threshold(&stopped, config.sweep_start)?;
            (t, Some(trace))
        }
    };
    Ok(CleanseOutcome { corpus: strip_noise(&stopped, threshold), threshold, sweep_trace })
}

/// Apply `threshold` to a working copy of an already stop-port-filtered
/// corpus and histogram the smoothed IDF of every surviving port over
/// [0, ln(N/2)+1].
pub fn idf_histogram(corpus: &Corpus, threshold: u64, bins: usize) -> Result<IdfHistogram, CleanseError> {
    if corpus.n_docs() == 0 {
        return Err(CleanseError::EmptyCorpus);
    }
    if bins < 2 {
        return Err(CleanseError::InvalidConfig("histogram_bins must be >= 2".into()));
    }
    let filtered = strip_noise(corpus, threshold);
    let ports = filtered.distinct_ports();
    if ports.is_empty() {
        return Err(CleanseError::NoSurvivingPorts(threshold));
    }
    let n = filtered.n_docs();
    let idf_max = smoothed_idf(n, 1);
    let mut bin_counts = vec![0u64; bins];
    let mut top_bin_count = 0u64;
    for &port in &ports {
        let df = filtered.df(port);
        if df == 1 {
            top_bin_count += 1;
        }
        let idf = smoothed_idf(n, df);
        // values at idf_max land in the last bin
        let mut bin = ((idf / idf_max) * bins as f64).floor() as usize;
        if bin >= bins {
            bin = bins - 1;
        }
        bin_counts[bin] += 1;
    }
    let bin_edges = (0..=bins).map(|i| idf_max * i as f64 / bins as f64).collect();
    Ok(IdfHistogram {
        threshold,
        bin_edges,
        bin_counts,
        top_bin_count,
        distinct_ports: ports.len() as u64,
    })
}

/// Double the threshold from `sweep_start` until the count of maximum-IDF
/// (df = 1) ports strictly decreases, then return the threshold just
/// before the drop together with the whole trace. Equal counts keep the
/// sweep going; wiping out every port also ends it.
pub fn auto_select_threshold(
    corpus: &Corpus,
    sweep_start: u64,
) -> Result<(u64, Vec<IdfHistogram>), CleanseError> {
    if corpus.n_docs() == 0 {
        return Err(CleanseError::EmptyCorpus);
    }
    if sweep_start < 1 {
        return Err(CleanseError::InvalidConfig("sweep_start must be >= 1".into()));
    }
    let mut trace: Vec<IdfHistogram> = Vec::new();
    let mut threshold = sweep_start;
    loop {
        match idf_histogram(corpus, threshold, DEFAULT_HISTOGRAM_BINS) {
            Ok(hist) => {
                let stop = trace
                    .last()
                    .is_some_and(|prev| hist.top_bin_count < prev.top_bin_count);
                if stop {
                    let selected = trace.last().unwrap().threshold;
                    trace.push(hist);
                    return Ok((selected, trace));
                }
                trace.push(hist);
            }
            Err(CleanseError::NoSurvivingPorts(t)) => {
                // overshoot: everything below the new threshold
                return match trace.last() {
                    Some(prev) => Ok((prev.threshold, trace)),
                    None => Err(CleanseError::NoSurvivingPorts(t)),
                };
            }
            Err(e) => return Err(e),
        }
        threshold = threshold
            .checked_mul(2)
            .ok_or_else(|| CleanseError::InvalidConfig("threshold sweep overflowed".into()))?;
    }
}

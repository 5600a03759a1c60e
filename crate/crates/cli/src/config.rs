//! Run configuration: optional JSON config file, overridden by flags,
//! echoed into the output directory for provenance.

use std::collections::BTreeSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use port_tfidf_core::cleanse::{
    CleanseConfig, Threshold, DEFAULT_HISTOGRAM_BINS, DEFAULT_STOP_PORTS, DEFAULT_SWEEP_START,
};
use port_tfidf_core::record::{Protocol, RecordFormat};
use port_tfidf_core::scoring::{IdfMode, ScoringConfig, TfMode};

use crate::error::CliError;

pub const DEFAULT_MIN_SHARE: f64 = 0.8;
pub const DEFAULT_MIN_DAYS: usize = 3;

/// On-disk config shape; every field optional so files can carry only
/// what they override.
#[derive(Debug, Default, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub proto: Option<Protocol>,
    pub format: Option<String>,
    pub stop_ports: Option<Vec<u16>>,
    pub threshold: Option<Threshold>,
    pub sweep_start: Option<u64>,
    pub histogram_bins: Option<usize>,
    pub window: Option<usize>,
    pub top_k: Option<usize>,
    pub idf: Option<IdfMode>,
    pub tf: Option<TfMode>,
    pub min_share: Option<f64>,
    pub min_days: Option<usize>,
    pub seed: Option<u64>,
}

impl FileConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::input(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::input(format!("bad config {}: {e}", path.display())))
    }

    pub fn record_format(&self) -> Result<Option<RecordFormat>, CliError> {
        match &self.format {
            None => Ok(None),
            Some(s) => s.parse().map(Some).map_err(CliError::input),
        }
    }
}

/// Fully resolved parameters of one command, echoed as
/// `run_config.json`. Carries analysis knobs only, never paths, so
/// reruns produce identical output trees.
#[derive(Debug, Clone, Serialize)]
pub struct EffectiveConfig {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub proto: Option<Protocol>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stop_ports: Option<Vec<u16>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Threshold>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep_start: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub histogram_bins: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub idf: Option<IdfMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tf: Option<TfMode>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_share: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_days: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub port: Option<u16>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl EffectiveConfig {
    pub fn new(command: &'static str) -> Self {
        Self {
            command,
            proto: None,
            format: None,
            stop_ports: None,
            threshold: None,
            sweep_start: None,
            histogram_bins: None,
            window: None,
            top_k: None,
            idf: None,
            tf: None,
            min_share: None,
            min_days: None,
            port: None,
            seed: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("config serialization cannot fail")
    }
}

pub fn format_name(format: RecordFormat) -> &'static str {
    match format {
        RecordFormat::Ndjson => "ndjson",
        RecordFormat::Csv => "csv",
    }
}

/// Flags beat file values beat defaults.
pub fn resolve<T>(flag: Option<T>, file: Option<T>, default: T) -> T {
    flag.or(file).unwrap_or(default)
}

pub fn resolve_stop_ports(flag: Option<Vec<u16>>, file: &FileConfig) -> BTreeSet<u16> {
    flag.or_else(|| file.stop_ports.clone())
        .map(|v| v.into_iter().collect())
        .unwrap_or_else(|| DEFAULT_STOP_PORTS.into_iter().collect())
}

pub fn resolve_cleanse(
    stop_ports: BTreeSet<u16>,
    threshold: Option<Threshold>,
    sweep_start: Option<u64>,
    bins: Option<usize>,
    file: &FileConfig,
) -> CleanseConfig {
    CleanseConfig {
        stop_ports,
        threshold: resolve(threshold, file.threshold, Threshold::Auto),
        sweep_start: resolve(sweep_start, file.sweep_start, DEFAULT_SWEEP_START),
        histogram_bins: resolve(bins, file.histogram_bins, DEFAULT_HISTOGRAM_BINS),
    }
}

pub fn resolve_scoring(
    window: Option<usize>,
    top_k: Option<usize>,
    idf: Option<IdfMode>,
    tf: Option<TfMode>,
    file: &FileConfig,
) -> ScoringConfig {
    let defaults = ScoringConfig::default();
    ScoringConfig {
        window_days: resolve(window, file.window, defaults.window_days),
        top_k: resolve(top_k, file.top_k, defaults.top_k),
        idf_mode: resolve(idf, file.idf, defaults.idf_mode),
        tf_mode: resolve(tf, file.tf, defaults.tf_mode),
    }
}

//! Command-line surface: `port-tfidf ingest|sweep|scan|wave|synth`.

use std::path::PathBuf;

use chrono::NaiveDate;
use clap::{Args, Parser, Subcommand};

use port_tfidf_core::cleanse::Threshold;
use port_tfidf_core::record::{Protocol, RecordFormat};
use port_tfidf_core::scoring::{IdfMode, TfMode};

fn parse_protocol(s: &str) -> Result<Protocol, String> {
    s.parse::<Protocol>().map_err(|e| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "port-tfidf", version, about = "TF-IDF port access statistics analysis for darknet traffic")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse raw access records and persist a per-day corpus
    Ingest(IngestArgs),
    /// Auto-select the noise threshold by sweeping IDF histograms
    Sweep(SweepArgs),
    /// Score ports per day over a sliding window and report rankings
    Scan(ScanArgs),
    /// Characterize rotating traffic: wave report, distributions, heatmap
    Wave(WaveArgs),
    /// Generate synthetic labeled traffic from a scenario
    Synth(SynthArgs),
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// JSON config file; explicit flags override file values
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing)
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    /// Record files to ingest, in order
    #[arg(required = true)]
    pub inputs: Vec<PathBuf>,
    /// Input encoding
    #[arg(long)]
    pub format: Option<RecordFormat>,
    /// Transport protocol to keep
    #[arg(long = "proto", value_parser = parse_protocol)]
    pub protocol: Option<Protocol>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Corpus JSON produced by `ingest`
    #[arg(long)]
    pub corpus: PathBuf,
    /// First threshold of the doubling sweep
    #[arg(long)]
    pub sweep_start: Option<u64>,
    /// Comma-separated stop ports removed before sweeping
    #[arg(long, value_delimiter = ',')]
    pub stop_ports: Option<Vec<u16>>,
    /// Number of histogram bins in the emitted CSVs
    #[arg(long)]
    pub bins: Option<usize>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    /// Corpus JSON produced by `ingest`
    #[arg(long)]
    pub corpus: PathBuf,
    /// Sliding window length in days
    #[arg(long)]
    pub window: Option<usize>,
    /// Ranking entries kept per day
    #[arg(long)]
    pub top_k: Option<usize>,
    /// IDF formula
    #[arg(long)]
    pub idf: Option<IdfMode>,
    /// TF formula
    #[arg(long)]
    pub tf: Option<TfMode>,
    /// Noise threshold: `auto` or a minimum accesses/day
    #[arg(long)]
    pub threshold: Option<Threshold>,
    /// Comma-separated stop ports
    #[arg(long, value_delimiter = ',')]
    pub stop_ports: Option<Vec<u16>>,
    /// First threshold of the auto sweep
    #[arg(long)]
    pub sweep_start: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct WaveArgs {
    /// Record file to analyze
    pub records: PathBuf,
    /// Input encoding
    #[arg(long)]
    pub format: Option<RecordFormat>,
    /// Transport protocol to analyze
    #[arg(long = "proto", value_parser = parse_protocol)]
    pub protocol: Option<Protocol>,
    /// Port to characterize; defaults to the strongest dominant port
    #[arg(long)]
    pub port: Option<u16>,
    /// First day of the analysis range (default: first day seen)
    #[arg(long)]
    pub from: Option<NaiveDate>,
    /// Last day of the analysis range (default: last day seen)
    #[arg(long)]
    pub to: Option<NaiveDate>,
    /// Minimum daily share a dominant port needs
    #[arg(long)]
    pub min_share: Option<f64>,
    /// Minimum consecutive qualifying days for a rotation
    #[arg(long)]
    pub min_days: Option<usize>,
    /// Comma-separated stop ports ignored for dominance
    #[arg(long, value_delimiter = ',')]
    pub stop_ports: Option<Vec<u16>>,
    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    /// Scenario JSON file; omit to use the built-in canonical scenario
    #[arg(long, conflicts_with = "paper_scenario")]
    pub spec: Option<PathBuf>,
    /// Use the built-in canonical 92-day scenario
    #[arg(long)]
    pub paper_scenario: bool,
    /// Override the scenario seed
    #[arg(long)]
    pub seed: Option<u64>,
    #[command(flatten)]
    pub common: CommonArgs,
}

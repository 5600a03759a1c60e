//! `port-tfidf ingest`: records in, persisted corpus plus summary out.

use std::collections::BTreeMap;

use chrono::Datelike;
use serde::Serialize;

use port_tfidf_core::corpus::aggregate_daily;
use port_tfidf_core::record::{Protocol, RecordFormat};

use crate::args::IngestArgs;
use crate::config::{format_name, resolve, EffectiveConfig, FileConfig};
use crate::error::CliError;
use crate::outio::{read_records, OutDir};

/// Packet totals per calendar month, the corpus-level size summary.
#[derive(Serialize)]
struct IngestSummary {
    protocol: Protocol,
    days: usize,
    records: u64,
    months: BTreeMap<String, u64>,
}

pub fn run(args: IngestArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let format = resolve(args.format, file.record_format()?, RecordFormat::Ndjson);
    let protocol = resolve(args.protocol, file.proto, Protocol::Tcp);

    let mut records = Vec::new();
    for path in &args.inputs {
        records.extend(read_records(path, format)?);
    }
    let corpus = aggregate_daily(&records, protocol)?;

    let mut months: BTreeMap<String, u64> = BTreeMap::new();
    for doc in corpus.docs() {
        let key = format!("{:04}-{:02}", doc.day.year(), doc.day.month());
        *months.entry(key).or_insert(0) += doc.total();
    }
    let summary = IngestSummary {
        protocol,
        days: corpus.n_docs(),
        records: corpus.total(),
        months,
    };

    let out = OutDir::create(&args.common.out)?;
    out.write("corpus.json", &corpus.to_json())?;
    out.write(
        "ingest_summary.json",
        &serde_json::to_string_pretty(&summary).expect("summary serialization cannot fail"),
    )?;
    let mut config = EffectiveConfig::new("ingest");
    config.proto = Some(protocol);
    config.format = Some(format_name(format));
    out.write("run_config.json", &config.to_json())?;

    println!(
        "ingested {} {} records over {} days ({}..{})",
        summary.records,
        protocol,
        summary.days,
        corpus.start_day(),
        corpus.end_day()
    );
    Ok(())
}

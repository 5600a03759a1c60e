//! `port-tfidf scan`: cleanse, score every day over the sliding window,
//! emit rankings and per-port history files.

use std::collections::BTreeSet;

use port_tfidf_core::cleanse::cleanse_corpus;
use port_tfidf_core::corpus::Corpus;
use port_tfidf_core::report::{history_to_csv, rankings_to_csv, rankings_to_json, sweep_trace_to_csv};
use port_tfidf_core::scoring::{port_history, sliding_scan};

use crate::args::ScanArgs;
use crate::config::{resolve_cleanse, resolve_scoring, resolve_stop_ports, EffectiveConfig, FileConfig};
use crate::error::CliError;
use crate::outio::{read_to_string, OutDir};

pub fn run(args: ScanArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let stop_ports = resolve_stop_ports(args.stop_ports, &file);
    let cleanse_config = resolve_cleanse(stop_ports, args.threshold, args.sweep_start, None, &file);
    let scoring_config = resolve_scoring(args.window, args.top_k, args.idf, args.tf, &file);

    let raw = Corpus::from_json(&read_to_string(&args.corpus)?)?;
    let outcome = cleanse_corpus(&raw, &cleanse_config)?;
    let rankings = sliding_scan(&outcome.corpus, &scoring_config)?;

    let out = OutDir::create(&args.common.out)?;
    out.write("rankings.json", &rankings_to_json(&rankings, &scoring_config))?;
    out.write("rankings.csv", &rankings_to_csv(&rankings))?;
    if let Some(trace) = &outcome.sweep_trace {
        out.write("sweep_trace.csv", &sweep_trace_to_csv(trace))?;
    }

    // full-range raw history for every port that ever ranked
    let flagged: BTreeSet<u16> = rankings
        .iter()
        .flat_map(|r| r.entries.iter().map(|e| e.port))
        .collect();
    for &port in &flagged {
        let history = port_history(&raw, port, raw.range())?;
        out.write(&format!("history_{port}.csv"), &history_to_csv(&history))?;
    }

    let mut config = EffectiveConfig::new("scan");
    config.proto = Some(raw.protocol());
    config.stop_ports = Some(cleanse_config.stop_ports.iter().copied().collect());
    config.threshold = Some(port_tfidf_core::cleanse::Threshold::Fixed(outcome.threshold));
    config.sweep_start = Some(cleanse_config.sweep_start);
    config.window = Some(scoring_config.window_days);
    config.top_k = Some(scoring_config.top_k);
    config.idf = Some(scoring_config.idf_mode);
    config.tf = Some(scoring_config.tf_mode);
    out.write("run_config.json", &config.to_json())?;

    println!(
        "scored {} days at threshold {}; {} distinct ports ranked",
        rankings.len(),
        outcome.threshold,
        flagged.len()
    );
    Ok(())
}

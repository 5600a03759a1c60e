//! `port-tfidf sweep`: IDF-histogram threshold sweep over a corpus.

use port_tfidf_core::cleanse::{
    apply_stop_ports, auto_select_threshold, idf_histogram, DEFAULT_HISTOGRAM_BINS,
    DEFAULT_SWEEP_START,
};
use port_tfidf_core::corpus::Corpus;
use port_tfidf_core::report::{histogram_to_csv, sweep_trace_to_csv};

use crate::args::SweepArgs;
use crate::config::{resolve, resolve_stop_ports, EffectiveConfig, FileConfig};
use crate::error::CliError;
use crate::outio::{read_to_string, OutDir};

pub fn run(args: SweepArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let stop_ports = resolve_stop_ports(args.stop_ports, &file);
    let sweep_start = resolve(args.sweep_start, file.sweep_start, DEFAULT_SWEEP_START);
    let bins = resolve(args.bins, file.histogram_bins, DEFAULT_HISTOGRAM_BINS);

    let corpus = Corpus::from_json(&read_to_string(&args.corpus)?)?;
    let stopped = Corpus::from_docs(
        corpus.protocol(),
        corpus.docs().iter().map(|d| apply_stop_ports(d, &stop_ports)).collect(),
    )?;
    let (threshold, trace) = auto_select_threshold(&stopped, sweep_start)?;

    let out = OutDir::create(&args.common.out)?;
    out.write("sweep_trace.csv", &sweep_trace_to_csv(&trace))?;
    for hist in &trace {
        // re-bin with the requested resolution for plotting
        let plotted = if hist.bin_counts.len() == bins {
            hist.clone()
        } else {
            idf_histogram(&stopped, hist.threshold, bins)?
        };
        out.write(&format!("hist_t{}.csv", hist.threshold), &histogram_to_csv(&plotted))?;
    }
    out.write("threshold.txt", &format!("{threshold}\n"))?;

    let mut config = EffectiveConfig::new("sweep");
    config.stop_ports = Some(stop_ports.iter().copied().collect());
    config.sweep_start = Some(sweep_start);
    config.histogram_bins = Some(bins);
    out.write("run_config.json", &config.to_json())?;

    println!("selected threshold: {threshold}");
    for hist in &trace {
        println!(
            "  threshold {:>8}: {} max-idf ports, {} distinct ports",
            hist.threshold, hist.top_bin_count, hist.distinct_ports
        );
    }
    Ok(())
}

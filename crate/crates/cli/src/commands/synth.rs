//! `port-tfidf synth`: scenario in, NDJSON records plus labels out.

use std::io::Write;

use port_tfidf_core::synth::{generate, labels_to_json, paper_scenario, ScenarioSpec};

use crate::args::SynthArgs;
use crate::config::{resolve, EffectiveConfig, FileConfig};
use crate::error::CliError;
use crate::outio::{read_to_string, OutDir};

pub fn run(args: SynthArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let mut spec = match &args.spec {
        Some(path) => ScenarioSpec::from_json(&read_to_string(path)?)?,
        None => paper_scenario(),
    };
    spec.seed = resolve(args.seed, file.seed, spec.seed);

    let traffic = generate(&spec)?;

    let out = OutDir::create(&args.common.out)?;
    out.write_with("records.ndjson", |w| {
        for record in &traffic.records {
            writeln!(w, "{}", record.to_ndjson())?;
        }
        Ok(())
    })?;
    out.write("labels.json", &labels_to_json(&traffic.labels))?;
    out.write("scenario.json", &spec.to_json())?;

    let mut config = EffectiveConfig::new("synth");
    config.seed = Some(spec.seed);
    out.write("run_config.json", &config.to_json())?;

    println!(
        "generated {} records and {} labels over {}",
        traffic.records.len(),
        traffic.labels.len(),
        spec.range
    );
    Ok(())
}

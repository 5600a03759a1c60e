//! `port-tfidf wave`: rotation report plus payload, source-port and
//! source-block characterization for one port.

use chrono::NaiveDate;

use port_tfidf_core::corpus::{aggregate_hourly, DateRange};
use port_tfidf_core::forensics::{
    detect_wave, isn_fingerprint, payload_distribution, source_heatmap, srcport_distribution,
};
use port_tfidf_core::record::{AccessRecord, Protocol, RecordFormat};
use port_tfidf_core::report::{distribution_to_csv, heatmap_to_csv, heatmap_to_svg};

use crate::args::WaveArgs;
use crate::config::{format_name, resolve, resolve_stop_ports, EffectiveConfig, FileConfig, DEFAULT_MIN_DAYS, DEFAULT_MIN_SHARE};
use crate::error::CliError;
use crate::outio::{read_records, OutDir};

fn record_day(rec: &AccessRecord) -> Option<NaiveDate> {
    chrono::DateTime::from_timestamp(rec.ts, 0).map(|dt| dt.date_naive())
}

pub fn run(args: WaveArgs) -> Result<(), CliError> {
    let file = FileConfig::load(args.common.config.as_deref())?;
    let format = resolve(args.format, file.record_format()?, RecordFormat::Ndjson);
    let protocol = resolve(args.protocol, file.proto, Protocol::Udp);
    let min_share = resolve(args.min_share, file.min_share, DEFAULT_MIN_SHARE);
    let min_days = resolve(args.min_days, file.min_days, DEFAULT_MIN_DAYS);
    let stop_ports = resolve_stop_ports(args.stop_ports, &file);

    let records = read_records(&args.records, format)?;
    let hourly = aggregate_hourly(&records, protocol)?;
    let days = hourly.days();
    let range = DateRange::new(
        args.from.unwrap_or_else(|| days[0]),
        args.to.unwrap_or_else(|| *days.last().unwrap()),
    );

    let report = detect_wave(&hourly, range, min_share, min_days, &stop_ports)?;
    // focus port: explicit flag, else the strongest dominant segment
    let port = match args.port {
        Some(p) => p,
        None => report
            .segments
            .iter()
            .filter_map(|s| s.dominant_port.map(|p| (s.share, p)))
            .max_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(b.1.cmp(&a.1)))
            .map(|(_, p)| p)
            .ok_or_else(|| CliError::domain(format!("no dominant port found in {range}")))?,
    };

    let in_range: Vec<AccessRecord> = records
        .iter()
        .filter(|r| {
            r.protocol == protocol && record_day(r).is_some_and(|d| range.contains(d))
        })
        .cloned()
        .collect();
    let payload = payload_distribution(&in_range, port)?;
    let (srcports, high_fraction) = srcport_distribution(&in_range, port)?;
    let heatmap = source_heatmap(&in_range, port, range)?;

    let out = OutDir::create(&args.common.out)?;
    out.write(
        "wave_report.json",
        &serde_json::to_string_pretty(&report).expect("report serialization cannot fail"),
    )?;
    out.write("payload_dist.csv", &distribution_to_csv(&payload))?;
    out.write("srcport_dist.csv", &distribution_to_csv(&srcports))?;
    out.write("heatmap.csv", &heatmap_to_csv(&heatmap))?;
    out.write("heatmap.svg", &heatmap_to_svg(&heatmap))?;

    // ISN fingerprint applies when the focus port saw TCP SYNs
    let tcp_in_range: Vec<AccessRecord> = records
        .iter()
        .filter(|r| {
            r.protocol == Protocol::Tcp && record_day(r).is_some_and(|d| range.contains(d))
        })
        .cloned()
        .collect();
    if let Ok(isn) = isn_fingerprint(&tcp_in_range, port) {
        out.write(
            "isn_report.json",
            &serde_json::to_string_pretty(&isn).expect("report serialization cannot fail"),
        )?;
    }

    let mut config = EffectiveConfig::new("wave");
    config.proto = Some(protocol);
    config.format = Some(format_name(format));
    config.stop_ports = Some(stop_ports.iter().copied().collect());
    config.min_share = Some(min_share);
    config.min_days = Some(min_days);
    config.port = Some(port);
    out.write("run_config.json", &config.to_json())?;

    println!(
        "port {port} over {range}: rotation_detected={} payload {}..{} src>=50000 {:.3}",
        report.rotation_detected, payload.min, payload.max, high_fraction
    );
    Ok(())
}

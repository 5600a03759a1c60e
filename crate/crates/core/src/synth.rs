//! Seeded synthetic darknet-traffic generation.
//!
//! A [`ScenarioSpec`] describes background scanning plus planted
//! phenomena (TCP bursts, correlated port pairs, rotating UDP waves) and
//! generates an NDJSON-compatible record stream together with
//! ground-truth labels. Generation is keyed by (seed, event, day) with a
//! counter-based RNG, so the same spec always produces byte-identical
//! output and individual events can be regenerated independently.

use std::collections::{BTreeMap, BTreeSet};
use std::net::Ipv4Addr;

use chrono::NaiveDate;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::corpus::DateRange;
use crate::record::{AccessRecord, Protocol};

/// Destination block standing in for the telescope address space.
const TELESCOPE_PREFIX: [u8; 2] = [198, 18];

/// Upper bound on the day span of the scenario and of any single event.
/// Scenario files are untrusted input; without this cap a hostile spec
/// could make validation walk an astronomically long date range.
const MAX_EVENT_DAYS: u64 = 10_000;

#[derive(Debug, thiserror::Error)]
pub enum SynthError {
    #[error("invalid scenario: {0}")]
    InvalidSpec(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PortBias {
    pub port: u16,
    pub weight: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WaveDay {
    pub day: NaiveDate,
    pub port: u16,
}

fn default_volume_ratio() -> f64 {
    0.5
}
fn default_payload_range() -> (u32, u32) {
    (65, 226)
}
fn default_srcport_min() -> u16 {
    50000
}
fn default_srcport_high_fraction() -> f64 {
    0.95
}
fn default_spoofed() -> bool {
    true
}
fn default_udp_fraction() -> f64 {
    0.06
}

/// One planted traffic component.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Event {
    /// Ambient scanning noise with a configurable popular-port bias.
    Background {
        /// Size of the rotating minor-port pool drawn each day.
        ports_per_day: u32,
        /// Uniformly drawn total records per day, inclusive.
        daily_count_range: (u64, u64),
        /// Share of records sent over UDP instead of TCP.
        #[serde(default = "default_udp_fraction")]
        udp_fraction: f64,
        /// Ports receiving a fixed share of the background volume;
        /// the remainder goes to the minor pool.
        popular_port_bias: Vec<PortBias>,
    },
    /// TCP activity that ramps up to a peak and decays away.
    Burst {
        port: u16,
        start_day: NaiveDate,
        ramp_days: u32,
        peak_daily_count: u64,
        decay_days: u32,
        /// Fraction of records whose ISN equals the destination address.
        isn_fingerprint_fraction: f64,
    },
    /// Two TCP ports moving together, the shadow at a fixed volume ratio.
    CorrelatedPair {
        primary_port: u16,
        shadow_port: u16,
        #[serde(default = "default_volume_ratio")]
        volume_ratio: f64,
        start_day: NaiveDate,
        end_day: NaiveDate,
        primary_daily_count: u64,
    },
    /// UDP traffic owning one port per UTC day, rotating at 00:00.
    UdpWave {
        port_schedule: Vec<WaveDay>,
        /// 24 non-negative weights shaping the within-day volume.
        hourly_profile: Vec<f64>,
        daily_count: u64,
        #[serde(default = "default_payload_range")]
        payload_range: (u32, u32),
        #[serde(default = "default_srcport_min")]
        srcport_min: u16,
        #[serde(default = "default_srcport_high_fraction")]
        srcport_high_fraction: f64,
        #[serde(default = "default_spoofed")]
        spoofed_sources: bool,
    },
}

/// A reproducible traffic scenario.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioSpec {
    pub seed: u64,
    pub range: DateRange,
    pub events: Vec<Event>,
}

/// Ground truth for one planted anomaly.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum AnomalyLabel {
    Burst {
        port: u16,
        days: Vec<NaiveDate>,
        daily_counts: BTreeMap<NaiveDate, u64>,
        isn_fraction: f64,
    },
    CorrelatedPair {
        port: u16,
        shadow_port: u16,
        days: Vec<NaiveDate>,
        volume_ratio: f64,
        primary_daily_count: u64,
    },
    UdpWave {
        schedule: Vec<WaveDay>,
        days: Vec<NaiveDate>,
        daily_count: u64,
        payload_range: (u32, u32),
        srcport_min: u16,
        srcport_high_fraction: f64,
    },
}

#[derive(Debug, Clone)]
pub struct GeneratedTraffic {
    /// All records, sorted by timestamp.
    pub records: Vec<AccessRecord>,
    pub labels: Vec<AnomalyLabel>,
}

impl ScenarioSpec {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    pub fn from_json(json: &str) -> Result<Self, SynthError> {
        let spec: ScenarioSpec =
            serde_json::from_str(json).map_err(|e| SynthError::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), SynthError> {
        if self.range.start > self.range.end {
            return Err(SynthError::InvalidSpec("range start is after range end".into()));
        }
        if self.range.num_days() as u64 > MAX_EVENT_DAYS {
            return Err(SynthError::InvalidSpec(format!(
                "scenario range exceeds {MAX_EVENT_DAYS} days"
            )));
        }
        let mut claims: BTreeMap<(u16, NaiveDate), usize> = BTreeMap::new();
        let mut claim = |port: u16, day: NaiveDate, event: usize| -> Result<(), SynthError> {
            if let Some(other) = claims.insert((port, day), event) {
                if other != event {
                    return Err(SynthError::InvalidSpec(format!(
                        "events {other} and {event} both plant port {port} on {day}"
                    )));
                }
            }
            Ok(())
        };
        for (idx, event) in self.events.iter().enumerate() {
            match event {
                Event::Background { daily_count_range, udp_fraction, popular_port_bias, ports_per_day } => {
                    if daily_count_range.0 > daily_count_range.1 {
                        return Err(SynthError::InvalidSpec("daily_count_range is reversed".into()));
                    }
                    if *ports_per_day == 0 {
                        return Err(SynthError::InvalidSpec("ports_per_day must be positive".into()));
                    }
                    if !(0.0..=1.0).contains(udp_fraction) {
                        return Err(SynthError::InvalidSpec("udp_fraction must be in [0,1]".into()));
                    }
                    let weight_sum: f64 = popular_port_bias.iter().map(|b| b.weight).sum();
                    if popular_port_bias.iter().any(|b| b.weight < 0.0) || weight_sum > 1.0 {
                        return Err(SynthError::InvalidSpec(
                            "popular_port_bias weights must be non-negative and sum to at most 1".into(),
                        ));
                    }
                }
                Event::Burst { port, start_day, ramp_days, decay_days, isn_fingerprint_fraction, peak_daily_count } => {
                    if !(0.0..=1.0).contains(isn_fingerprint_fraction) {
                        return Err(SynthError::InvalidSpec(
                            "isn_fingerprint_fraction must be in [0,1]".into(),
                        ));
                    }
                    if ramp_days + decay_days == 0 {
                        return Err(SynthError::InvalidSpec("burst must span at least one day".into()));
                    }
                    if u64::from(*ramp_days) + u64::from(*decay_days) > MAX_EVENT_DAYS {
                        return Err(SynthError::InvalidSpec(format!(
                            "burst exceeds {MAX_EVENT_DAYS} days"
                        )));
                    }
                    if start_day
                        .checked_add_days(chrono::Days::new(u64::from(*ramp_days) + u64::from(*decay_days)))
                        .is_none()
                    {
                        return Err(SynthError::InvalidSpec(
                            "burst extends past the representable date range".into(),
                        ));
                    }
                    for (day, _) in burst_daily_counts(*start_day, *ramp_days, *peak_daily_count, *decay_days) {
                        claim(*port, day, idx)?;
                    }
                }
                Event::CorrelatedPair { primary_port, shadow_port, volume_ratio, start_day, end_day, .. } => {
                    if primary_port == shadow_port {
                        return Err(SynthError::InvalidSpec("pair ports must differ".into()));
                    }
                    if !(*volume_ratio > 0.0 && *volume_ratio <= 1.0) {
                        return Err(SynthError::InvalidSpec("volume_ratio must be in (0,1]".into()));
                    }
                    if start_day > end_day {
                        return Err(SynthError::InvalidSpec("pair start is after its end".into()));
                    }
                    if DateRange::new(*start_day, *end_day).num_days() as u64 > MAX_EVENT_DAYS {
                        return Err(SynthError::InvalidSpec(format!(
                            "pair exceeds {MAX_EVENT_DAYS} days"
                        )));
                    }
                    for day in DateRange::new(*start_day, *end_day).days() {
                        claim(*primary_port, day, idx)?;
                        claim(*shadow_port, day, idx)?;
                    }
                }
                Event::UdpWave { port_schedule, hourly_profile, daily_count, payload_range, srcport_min, srcport_high_fraction, .. } => {
                    if port_schedule.is_empty() {
                        return Err(SynthError::InvalidSpec("wave schedule is empty".into()));
                    }
                    if hourly_profile.len() != 24
                        || hourly_profile.iter().any(|w| *w < 0.0 || !w.is_finite())
                        || hourly_profile.iter().sum::<f64>() <= 0.0
                    {
                        return Err(SynthError::InvalidSpec(
                            "hourly_profile needs 24 non-negative weights with a positive sum".into(),
                        ));
                    }
                    if *daily_count == 0 {
                        return Err(SynthError::InvalidSpec("wave daily_count must be positive".into()));
                    }
                    if payload_range.0 > payload_range.1 {
                        return Err(SynthError::InvalidSpec("payload_range is reversed".into()));
                    }
                    if *srcport_min < 1024 {
                        return Err(SynthError::InvalidSpec("srcport_min must be at least 1024".into()));
                    }
                    if !(0.0..=1.0).contains(srcport_high_fraction) {
                        return Err(SynthError::InvalidSpec(
                            "srcport_high_fraction must be in [0,1]".into(),
                        ));
                    }
                    let mut seen_days = BTreeSet::new();
                    for wd in port_schedule {
                        if !seen_days.insert(wd.day) {
                            return Err(SynthError::InvalidSpec(format!(
                                "wave schedules two ports on {}",
                                wd.day
                            )));
                        }
                        claim(wd.port, wd.day, idx)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Every port planted by a non-background event.
    fn planted_ports(&self) -> BTreeSet<u16> {
        let mut ports = BTreeSet::new();
        for event in &self.events {
            match event {
                Event::Background { .. } => {}
                Event::Burst { port, .. } => {
                    ports.insert(*port);
                }
                Event::CorrelatedPair { primary_port, shadow_port, .. } => {
                    ports.insert(*primary_port);
                    ports.insert(*shadow_port);
                }
                Event::UdpWave { port_schedule, .. } => {
                    ports.extend(port_schedule.iter().map(|wd| wd.port));
                }
            }
        }
        ports
    }
}

/// RNG keyed by (seed, event, day) so any (event, day) cell regenerates
/// identically regardless of generation order.
fn cell_rng(seed: u64, event: u64, day_ordinal: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[0..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&event.to_le_bytes());
    key[16..24].copy_from_slice(&day_ordinal.to_le_bytes());
    key[24..32].copy_from_slice(&0x706f7274u64.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

fn day_ordinal(range: &DateRange, day: NaiveDate) -> u64 {
    (day - range.start).num_days() as u64
}

fn random_unicast_source(rng: &mut ChaCha8Rng) -> Ipv4Addr {
    // skip 0/8, 10/8, 127/8 and everything from 224/8 up
    let first = loop {
        let b: u8 = rng.random_range(1..=223);
        if b != 10 && b != 127 {
            break b;
        }
    };
    Ipv4Addr::new(first, rng.random(), rng.random(), rng.random())
}

fn telescope_dst(rng: &mut ChaCha8Rng) -> Ipv4Addr {
    Ipv4Addr::new(TELESCOPE_PREFIX[0], TELESCOPE_PREFIX[1], rng.random(), rng.random())
}

fn day_timestamp(day: NaiveDate, second_of_day: u32) -> i64 {
    day.and_hms_opt(0, 0, 0).unwrap().and_utc().timestamp() + second_of_day as i64
}

/// Planted per-day counts of a burst: linear ramp to the peak, then
/// linear decay back to zero. Days with zero records are skipped.
fn burst_daily_counts(
    start_day: NaiveDate,
    ramp_days: u32,
    peak_daily_count: u64,
    decay_days: u32,
) -> Vec<(NaiveDate, u64)> {
    let mut out = Vec::new();
    for k in 0..ramp_days {
        let count = ((peak_daily_count as f64) * (k + 1) as f64 / ramp_days as f64).round() as u64;
        if count > 0 {
            out.push((start_day + chrono::Days::new(k as u64), count));
        }
    }
    for j in 0..decay_days {
        let count = ((peak_daily_count as f64) * (decay_days - 1 - j) as f64 / decay_days as f64)
            .round() as u64;
        if count > 0 {
            out.push((start_day + chrono::Days::new((ramp_days + j) as u64), count));
        }
    }
    out
}

/// Integer allocation of `total` records over 24 hourly weights using
/// largest remainders, so the parts always sum to `total`.
fn allocate_hours(total: u64, profile: &[f64]) -> [u64; 24] {
    let weight_sum: f64 = profile.iter().sum();
    let mut base = [0u64; 24];
    let mut remainders: Vec<(usize, f64)> = Vec::with_capacity(24);
    let mut allocated = 0u64;
    for (h, &w) in profile.iter().enumerate() {
        let exact = total as f64 * w / weight_sum;
        let floor = exact.floor() as u64;
        base[h] = floor;
        allocated += floor;
        remainders.push((h, exact - floor as f64));
    }
    // largest fractional part first, earlier hour on ties
    remainders.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    let mut leftover = total - allocated;
    for (h, _) in remainders {
        if leftover == 0 {
            break;
        }
        base[h] += 1;
        leftover -= 1;
    }
    base
}

/// Generate the record stream and ground-truth labels for a scenario.
/// Records come back sorted by timestamp; output is a pure function of
/// the spec.
pub fn generate(spec: &ScenarioSpec) -> Result<GeneratedTraffic, SynthError> {
    spec.validate()?;
    let planted = spec.planted_ports();
    let mut records: Vec<AccessRecord> = Vec::new();
    let mut labels: Vec<AnomalyLabel> = Vec::new();

    for (idx, event) in spec.events.iter().enumerate() {
        match event {
            Event::Background { ports_per_day, daily_count_range, udp_fraction, popular_port_bias } => {
                generate_background(
                    spec,
                    idx as u64,
                    *ports_per_day,
                    *daily_count_range,
                    *udp_fraction,
                    popular_port_bias,
                    &planted,
                    &mut records,
                );
            }
            Event::Burst { port, start_day, ramp_days, peak_daily_count, decay_days, isn_fingerprint_fraction } => {
                let counts = burst_daily_counts(*start_day, *ramp_days, *peak_daily_count, *decay_days);
                let mut daily_counts = BTreeMap::new();
                for (day, count) in &counts {
                    if !spec.range.contains(*day) {
                        continue;
                    }
                    daily_counts.insert(*day, *count);
                    let mut rng = cell_rng(spec.seed, idx as u64, day_ordinal(&spec.range, *day));
                    for _ in 0..*count {
                        let dst_ip = telescope_dst(&mut rng);
                        let fingerprinted = rng.random::<f64>() < *isn_fingerprint_fraction;
                        let isn = if fingerprinted { u32::from(dst_ip) } else { rng.random() };
                        records.push(AccessRecord {
                            ts: day_timestamp(*day, rng.random_range(0..86400)),
                            protocol: Protocol::Tcp,
                            src_ip: random_unicast_source(&mut rng),
                            src_port: rng.random_range(1024..=65535),
                            dst_ip,
                            dst_port: *port,
                            payload_len: 0,
                            tcp_isn: Some(isn),
                        });
                    }
                }
                labels.push(AnomalyLabel::Burst {
                    port: *port,
                    days: daily_counts.keys().copied().collect(),
                    daily_counts,
                    isn_fraction: *isn_fingerprint_fraction,
                });
            }
            Event::CorrelatedPair { primary_port, shadow_port, volume_ratio, start_day, end_day, primary_daily_count } => {
                let shadow_count = ((*primary_daily_count as f64) * volume_ratio).round() as u64;
                let mut days = Vec::new();
                for day in DateRange::new(*start_day, *end_day).days() {
                    if !spec.range.contains(day) {
                        continue;
                    }
                    days.push(day);
                    let mut rng = cell_rng(spec.seed, idx as u64, day_ordinal(&spec.range, day));
                    for (port, count) in [(*primary_port, *primary_daily_count), (*shadow_port, shadow_count)] {
                        for _ in 0..count {
                            records.push(AccessRecord {
                                ts: day_timestamp(day, rng.random_range(0..86400)),
                                protocol: Protocol::Tcp,
                                src_ip: random_unicast_source(&mut rng),
                                src_port: rng.random_range(1024..=65535),
                                dst_ip: telescope_dst(&mut rng),
                                dst_port: port,
                                payload_len: 0,
                                tcp_isn: Some(rng.random()),
                            });
                        }
                    }
                }
                labels.push(AnomalyLabel::CorrelatedPair {
                    port: *primary_port,
                    shadow_port: *shadow_port,
                    days,
                    volume_ratio: *volume_ratio,
                    primary_daily_count: *primary_daily_count,
                });
            }
            Event::UdpWave { port_schedule, hourly_profile, daily_count, payload_range, srcport_min, srcport_high_fraction, spoofed_sources } => {
                let mut days = Vec::new();
                // fixed pool standing in for real (non-spoofed) senders
                let mut pool_rng = cell_rng(spec.seed, idx as u64, u64::MAX);
                let source_pool: Vec<Ipv4Addr> =
                    (0..4096).map(|_| random_unicast_source(&mut pool_rng)).collect();
                for wd in port_schedule {
                    if !spec.range.contains(wd.day) {
                        continue;
                    }
                    days.push(wd.day);
                    let per_hour = allocate_hours(*daily_count, hourly_profile);
                    let mut rng = cell_rng(spec.seed, idx as u64, day_ordinal(&spec.range, wd.day));
                    for (hour, &n) in per_hour.iter().enumerate() {
                        for _ in 0..n {
                            let src_ip = if *spoofed_sources {
                                random_unicast_source(&mut rng)
                            } else {
                                source_pool[rng.random_range(0..source_pool.len())]
                            };
                            let src_port = if rng.random::<f64>() < *srcport_high_fraction {
                                rng.random_range(*srcport_min..=65535)
                            } else {
                                rng.random_range(1024..*srcport_min)
                            };
                            records.push(AccessRecord {
                                ts: day_timestamp(wd.day, hour as u32 * 3600 + rng.random_range(0..3600)),
                                protocol: Protocol::Udp,
                                src_ip,
                                src_port,
                                dst_ip: telescope_dst(&mut rng),
                                dst_port: wd.port,
                                payload_len: rng.random_range(payload_range.0..=payload_range.1),
                                tcp_isn: None,
                            });
                        }
                    }
                }
                labels.push(AnomalyLabel::UdpWave {
                    schedule: port_schedule
                        .iter()
                        .filter(|wd| spec.range.contains(wd.day))
                        .copied()
                        .collect(),
                    days,
                    daily_count: *daily_count,
                    payload_range: *payload_range,
                    srcport_min: *srcport_min,
                    srcport_high_fraction: *srcport_high_fraction,
                });
            }
        }
    }

    records.sort_by_key(|r| r.ts);
    Ok(GeneratedTraffic { records, labels })
}

#[allow(clippy::too_many_arguments)]
fn generate_background(
    spec: &ScenarioSpec,
    event_idx: u64,
    ports_per_day: u32,
    daily_count_range: (u64, u64),
    udp_fraction: f64,
    bias: &[PortBias],
    planted: &BTreeSet<u16>,
    records: &mut Vec<AccessRecord>,
) {
    let bias_total: f64 = bias.iter().map(|b| b.weight).sum();
    // Zipf tail over the daily minor pool: most minor ports stay faint,
    // but each day a handful of them carry real volume, the way scan
    // noise looks in practice.
    let zipf: Vec<f64> = (1..=ports_per_day as usize).map(|r| 1.0 / r as f64).collect();
    let zipf_cum: Vec<f64> = zipf
        .iter()
        .scan(0.0, |acc, w| {
            *acc += w;
            Some(*acc)
        })
        .collect();
    let zipf_total = *zipf_cum.last().unwrap_or(&1.0);
    for day in spec.range.days() {
        let mut rng = cell_rng(spec.seed, event_idx, day_ordinal(&spec.range, day));
        // rotating pool of minor ports, avoiding anything planted or biased
        let mut minor_pool: Vec<u16> = Vec::with_capacity(ports_per_day as usize);
        let mut pool_seen = BTreeSet::new();
        while minor_pool.len() < ports_per_day as usize {
            let port: u16 = rng.random_range(1024..=65535);
            if planted.contains(&port) || bias.iter().any(|b| b.port == port) {
                continue;
            }
            if pool_seen.insert(port) {
                minor_pool.push(port);
            }
        }
        let total = rng.random_range(daily_count_range.0..=daily_count_range.1);
        for _ in 0..total {
            let dst_port = {
                let u: f64 = rng.random();
                if u < bias_total {
                    let mut acc = 0.0;
                    let mut chosen = bias[bias.len() - 1].port;
                    for b in bias {
                        acc += b.weight;
                        if u < acc {
                            chosen = b.port;
                            break;
                        }
                    }
                    chosen
                } else {
                    let target = rng.random::<f64>() * zipf_total;
                    let slot = zipf_cum.partition_point(|&c| c < target).min(minor_pool.len() - 1);
                    minor_pool[slot]
                }
            };
            let protocol = if rng.random::<f64>() < udp_fraction { Protocol::Udp } else { Protocol::Tcp };
            let (payload_len, tcp_isn) = match protocol {
                Protocol::Tcp => (0, Some(rng.random())),
                Protocol::Udp => (rng.random_range(20..=512), None),
            };
            records.push(AccessRecord {
                ts: day_timestamp(day, rng.random_range(0..86400)),
                protocol,
                src_ip: random_unicast_source(&mut rng),
                src_port: rng.random_range(1024..=65535),
                dst_ip: telescope_dst(&mut rng),
                dst_port,
                payload_len,
                tcp_isn,
            });
        }
    }
}

/// Render labels as a JSON array.
pub fn labels_to_json(labels: &[AnomalyLabel]) -> String {
    serde_json::to_string_pretty(labels).expect("label serialization cannot fail")
}

/// Parse a labels file back into ground truth.
pub fn parse_labels(json: &str) -> Result<Vec<AnomalyLabel>, SynthError> {
    serde_json::from_str(json).map_err(|e| SynthError::InvalidSpec(e.to_string()))
}

/// Default diurnal shape: quiet early morning, peak mid-afternoon.
pub fn diurnal_profile() -> Vec<f64> {
    (0..24)
        .map(|h| 1.0 + 0.75 * ((h as f64 - 8.0) * std::f64::consts::PI / 12.0).sin())
        .collect()
}

/// Canonical 92-day scenario covering every planted phenomenon at desk
/// scale: biased background, a ramp/decay TCP burst with ISN
/// fingerprints, a half-volume correlated pair sitting below the noise
/// floor, and a five-day rotating UDP wave.
pub fn paper_scenario() -> ScenarioSpec {
    let range = DateRange::new(
        NaiveDate::from_ymd_opt(2020, 7, 1).unwrap(),
        NaiveDate::from_ymd_opt(2020, 9, 30).unwrap(),
    );
    let popular = [
        (445u16, 0.101),
        (23, 0.071),
        (1433, 0.026),
        (22, 0.022),
        (21, 0.019),
        (80, 0.015),
        (1723, 0.010),
        (5555, 0.009),
        (81, 0.008),
        (8080, 0.008),
    ];
    let wave_ports = [58246u16, 51455, 47210, 53113, 60321];
    ScenarioSpec {
        seed: 20200701,
        range,
        events: vec![
            Event::Background {
                ports_per_day: 300,
                daily_count_range: (14000, 16000),
                udp_fraction: 0.06,
                popular_port_bias: popular
                    .into_iter()
                    .map(|(port, weight)| PortBias { port, weight })
                    .collect(),
            },
            Event::Burst {
                port: 9530,
                start_day: NaiveDate::from_ymd_opt(2020, 7, 28).unwrap(),
                ramp_days: 17,
                peak_daily_count: 6000,
                decay_days: 45,
                isn_fingerprint_fraction: 0.95,
            },
            Event::CorrelatedPair {
                primary_port: 8291,
                shadow_port: 8728,
                volume_ratio: 0.5,
                start_day: NaiveDate::from_ymd_opt(2020, 9, 8).unwrap(),
                end_day: NaiveDate::from_ymd_opt(2020, 9, 30).unwrap(),
                primary_daily_count: 1500,
            },
            Event::UdpWave {
                port_schedule: wave_ports
                    .into_iter()
                    .enumerate()
                    .map(|(i, port)| WaveDay {
                        day: NaiveDate::from_ymd_opt(2020, 8, 1).unwrap() + chrono::Days::new(i as u64),
                        port,
                    })
                    .collect(),
                hourly_profile: diurnal_profile(),
                daily_count: 20000,
                payload_range: (65, 226),
                srcport_min: 50000,
                srcport_high_fraction: 0.95,
                spoofed_sources: true,
            },
        ],
    }
}

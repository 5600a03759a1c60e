//! Deeper characterization of flagged traffic.
//!
//! These analyses run over raw records rather than aggregated documents:
//! the Mirai-family ISN fingerprint (TCP initial sequence number equal to
//! the destination address), daily UDP port rotation, payload-size and
//! source-port distributions, and a /8 source-block heatmap laid out on
//! an order-4 Hilbert curve.

use std::collections::{BTreeMap, BTreeSet};
use std::net::Ipv4Addr;

use chrono::{DateTime, Datelike, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::corpus::{DateRange, HourlySeries};
use crate::record::{AccessRecord, Protocol};

#[derive(Debug, thiserror::Error)]
pub enum ForensicsError {
    #[error("no samples for port {0}")]
    NoSamples(u16),
    #[error("date range {0} selects no data")]
    EmptyRange(DateRange),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

/// How many TCP SYNs to a port carry an ISN equal to the destination
/// address as a 32-bit big-endian integer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IsnReport {
    pub port: u16,
    pub total_syn: u64,
    pub matched: u64,
    pub fraction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveSegment {
    pub day: NaiveDate,
    /// Highest-volume non-stop port of the day; absent when the day has
    /// no qualifying traffic.
    pub dominant_port: Option<u16>,
    pub share: f64,
}

/// Daily dominant-port segments and whether a rotation pattern was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WaveReport {
    pub segments: Vec<WaveSegment>,
    pub rotation_detected: bool,
    /// Rotation boundary, fixed at 00:00 UTC.
    pub boundary_hour: u8,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistributionKind {
    PayloadLen,
    SrcPort,
}

/// Exact-value histogram with totals.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub kind: DistributionKind,
    pub histogram: BTreeMap<u64, u64>,
    pub min: u64,
    pub max: u64,
    pub total: u64,
}

/// 16x16 grid of distinct-source counts per /8 block, Hilbert-ordered.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HilbertHeatmap {
    pub port: u16,
    pub range: DateRange,
    pub grid: Vec<Vec<u64>>,
}

fn day_of(ts: i64) -> Option<NaiveDate> {
    let dt: DateTime<chrono::Utc> = DateTime::from_timestamp(ts, 0)?;
    NaiveDate::from_ymd_opt(dt.year(), dt.month(), dt.day())
}

/// Count TCP records to `port` whose ISN equals the destination IPv4
/// address in network byte order.
pub fn isn_fingerprint(records: &[AccessRecord], port: u16) -> Result<IsnReport, ForensicsError> {
    let mut total_syn = 0u64;
    let mut matched = 0u64;
    for rec in records {
        if rec.protocol != Protocol::Tcp || rec.dst_port != port {
            continue;
        }
        let Some(isn) = rec.tcp_isn else { continue };
        total_syn += 1;
        if isn == u32::from(rec.dst_ip) {
            matched += 1;
        }
    }
    if total_syn == 0 {
        return Err(ForensicsError::NoSamples(port));
    }
    Ok(IsnReport { port, total_syn, matched, fraction: matched as f64 / total_syn as f64 })
}

/// Find daily dominant ports and report a rotation when at least
/// `min_days` consecutive days each concentrate `min_share` of their
/// traffic on one port and those dominant ports are pairwise distinct.
/// Dominance is computed over daily sums, ignoring `stop_ports`.
pub fn detect_wave(
    hourly: &HourlySeries,
    range: DateRange,
    min_share: f64,
    min_days: usize,
    stop_ports: &BTreeSet<u16>,
) -> Result<WaveReport, ForensicsError> {
    if !(min_share > 0.5 && min_share <= 1.0) {
        return Err(ForensicsError::InvalidParams("min_share must be in (0.5, 1]".into()));
    }
    if min_days < 2 {
        return Err(ForensicsError::InvalidParams("min_days must be >= 2".into()));
    }
    if range.start > range.end {
        return Err(ForensicsError::EmptyRange(range));
    }
    if !hourly.buckets.keys().any(|(d, _)| range.contains(*d)) {
        return Err(ForensicsError::EmptyRange(range));
    }

    let mut segments = Vec::with_capacity(range.num_days() as usize);
    for day in range.days() {
        let totals = hourly.daily_totals(day);
        let day_total: u64 = totals
            .iter()
            .filter(|(port, _)| !stop_ports.contains(port))
            .map(|(_, &n)| n)
            .sum();
        let dominant = totals
            .iter()
            .filter(|(port, _)| !stop_ports.contains(port))
            .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(a.0)));
        match dominant {
            Some((&port, &n)) if day_total > 0 => segments.push(WaveSegment {
                day,
                dominant_port: Some(port),
                share: n as f64 / day_total as f64,
            }),
            _ => segments.push(WaveSegment { day, dominant_port: None, share: 0.0 }),
        }
    }

    let qualifies: Vec<Option<u16>> = segments
        .iter()
        .map(|s| if s.share >= min_share { s.dominant_port } else { None })
        .collect();
    let rotation_detected = qualifies
        .windows(min_days)
        .any(|w| {
            let ports: BTreeSet<u16> = w.iter().flatten().copied().collect();
            w.iter().all(|p| p.is_some()) && ports.len() == min_days
        });

    Ok(WaveReport { segments, rotation_detected, boundary_hour: 0 })
}

/// Exact histogram of payload sizes seen on `port`.
pub fn payload_distribution(records: &[AccessRecord], port: u16) -> Result<Distribution, ForensicsError> {
    build_distribution(
        records.iter().filter(|r| r.dst_port == port).map(|r| r.payload_len as u64),
        DistributionKind::PayloadLen,
        port,
    )
}

/// Histogram of source ports seen on `port`, plus the fraction at or
/// above the ephemeral range start (50000).
pub fn srcport_distribution(
    records: &[AccessRecord],
    port: u16,
) -> Result<(Distribution, f64), ForensicsError> {
    let dist = build_distribution(
        records.iter().filter(|r| r.dst_port == port).map(|r| r.src_port as u64),
        DistributionKind::SrcPort,
        port,
    )?;
    let high: u64 = dist.histogram.range(50000..).map(|(_, &n)| n).sum();
    let high_fraction = high as f64 / dist.total as f64;
    Ok((dist, high_fraction))
}

fn build_distribution(
    values: impl Iterator<Item = u64>,
    kind: DistributionKind,
    port: u16,
) -> Result<Distribution, ForensicsError> {
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    let mut total = 0u64;
    for v in values {
        *histogram.entry(v).or_insert(0) += 1;
        total += 1;
    }
    if total == 0 {
        return Err(ForensicsError::NoSamples(port));
    }
    let min = *histogram.keys().next().unwrap();
    let max = *histogram.keys().next_back().unwrap();
    Ok(Distribution { kind, histogram, min, max, total })
}

/// Position of a /8 block on the order-4 Hilbert curve. Index 0 maps to
/// (0,0) and index 255 to (15,0); consecutive blocks stay grid-adjacent.
pub fn hilbert_xy(block: u8) -> (u8, u8) {
    let mut x = 0u16;
    let mut y = 0u16;
    let mut t = block as u16;
    let mut s = 1u16;
    while s < 16 {
        let rx = 1 & (t / 2);
        let ry = 1 & (t ^ rx);
        if ry == 0 {
            if rx == 1 {
                x = s - 1 - x;
                y = s - 1 - y;
            }
            std::mem::swap(&mut x, &mut y);
        }
        x += s * rx;
        y += s * ry;
        t /= 4;
        s *= 2;
    }
    (x as u8, y as u8)
}

/// Distinct source IPs per /8 block for records to `port` within `range`,
/// placed on the Hilbert grid.
pub fn source_heatmap(
    records: &[AccessRecord],
    port: u16,
    range: DateRange,
) -> Result<HilbertHeatmap, ForensicsError> {
    let mut sources: BTreeSet<Ipv4Addr> = BTreeSet::new();
    for rec in records {
        if rec.dst_port != port {
            continue;
        }
        match day_of(rec.ts) {
            Some(day) if range.contains(day) => {
                sources.insert(rec.src_ip);
            }
            _ => {}
        }
    }
    if sources.is_empty() {
        return Err(ForensicsError::NoSamples(port));
    }
    let mut grid = vec![vec![0u64; 16]; 16];
    for ip in sources {
        let (x, y) = hilbert_xy(ip.octets()[0]);
        grid[y as usize][x as usize] += 1;
    }
    Ok(HilbertHeatmap { port, range, grid })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(s: &str) -> NaiveDate {
        s.parse().unwrap()
    }

    #[allow(clippy::too_many_arguments)]
    fn rec(ts: i64, protocol: Protocol, src_ip: &str, src_port: u16, dst_ip: &str, dst_port: u16, plen: u32, isn: Option<u32>) -> AccessRecord {
        AccessRecord {
            ts,
            protocol,
            src_ip: src_ip.parse().unwrap(),
            src_port,
            dst_ip: dst_ip.parse().unwrap(),
            dst_port,
            payload_len: plen,
            tcp_isn: isn,
        }
    }

    const AUG1: i64 = 1596240000;

    #[test]
    fn isn_matches_destination_address() {
        // 192.0.2.9 == 0xC0000209 == 3221225993
        assert_eq!(u32::from("192.0.2.9".parse::<Ipv4Addr>().unwrap()), 0xC0000209);
        let records = vec![
            rec(AUG1, Protocol::Tcp, "1.2.3.4", 40000, "192.0.2.9", 9530, 0, Some(0xC0000209)),
            rec(AUG1, Protocol::Tcp, "1.2.3.5", 40001, "192.0.2.9", 9530, 0, Some(12345)),
            rec(AUG1, Protocol::Tcp, "1.2.3.6", 40002, "192.0.2.9", 9530, 0, None),
            rec(AUG1, Protocol::Udp, "1.2.3.7", 40003, "192.0.2.9", 9530, 0, None),
        ];
        let report = isn_fingerprint(&records, 9530).unwrap();
        assert_eq!(report.total_syn, 2);
        assert_eq!(report.matched, 1);
        assert_eq!(report.fraction, 0.5);
    }

    #[test]
    fn isn_fraction_is_shuffle_invariant() {
        let mut records: Vec<AccessRecord> = (0..64u32)
            .map(|i| {
                let isn = if i % 4 == 0 { 0xC0000209 } else { i };
                rec(AUG1 + i as i64, Protocol::Tcp, "9.9.9.9", 1, "192.0.2.9", 80, 0, Some(isn))
            })
            .collect();
        let before = isn_fingerprint(&records, 80).unwrap();
        records.reverse();
        records.rotate_left(13);
        let after = isn_fingerprint(&records, 80).unwrap();
        assert_eq!(before, after);
        assert_eq!(before.fraction, 0.25);
    }

    #[test]
    fn isn_requires_samples() {
        assert!(matches!(isn_fingerprint(&[], 9530), Err(ForensicsError::NoSamples(9530))));
    }

    fn wave_series(schedule: &[(u16, u64)]) -> HourlySeries {
        // each scheduled port owns one day, spread over a few hours,
        // plus a little background noise on port 7
        let mut buckets = BTreeMap::new();
        for (i, &(port, volume)) in schedule.iter().enumerate() {
            let day = d("2020-08-01") + chrono::Days::new(i as u64);
            for hour in [3u8, 12, 20] {
                let mut counts = BTreeMap::new();
                counts.insert(port, volume / 3);
                if hour == 12 {
                    counts.insert(7, 5);
                }
                buckets.insert((day, hour), counts);
            }
        }
        HourlySeries { protocol: Protocol::Udp, buckets }
    }

    #[test]
    fn rotation_over_five_distinct_ports() {
        let series = wave_series(&[(58246, 3000), (51455, 3000), (40001, 3000), (40002, 3000), (40003, 3000)]);
        let range = DateRange::new(d("2020-08-01"), d("2020-08-05"));
        let report = detect_wave(&series, range, 0.8, 3, &BTreeSet::new()).unwrap();
        assert!(report.rotation_detected);
        assert_eq!(report.segments.len(), 5);
        assert_eq!(report.boundary_hour, 0);
        assert_eq!(report.segments[0].dominant_port, Some(58246));
        assert_eq!(report.segments[1].dominant_port, Some(51455));
        for s in &report.segments {
            assert!(s.share >= 0.8 && s.share <= 1.0);
        }
    }

    #[test]
    fn constant_dominant_port_is_not_a_rotation() {
        let series = wave_series(&[(58246, 3000), (58246, 3000), (58246, 3000), (58246, 3000)]);
        let range = DateRange::new(d("2020-08-01"), d("2020-08-04"));
        let report = detect_wave(&series, range, 0.8, 3, &BTreeSet::new()).unwrap();
        assert!(!report.rotation_detected);
    }

    #[test]
    fn wave_ignores_hour_permutations() {
        let series = wave_series(&[(100, 3000), (200, 3000), (300, 3000)]);
        let mut shuffled = series.clone();
        // move all of day 1's traffic to different hours
        let day = d("2020-08-01");
        let moved: Vec<_> = shuffled
            .buckets
            .range((day, 0)..=(day, 23))
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        for (k, _) in &moved {
            shuffled.buckets.remove(k);
        }
        for (i, (_, v)) in moved.into_iter().enumerate() {
            shuffled.buckets.insert((day, (23 - i) as u8), v);
        }
        let range = DateRange::new(d("2020-08-01"), d("2020-08-03"));
        let a = detect_wave(&series, range, 0.8, 3, &BTreeSet::new()).unwrap();
        let b = detect_wave(&shuffled, range, 0.8, 3, &BTreeSet::new()).unwrap();
        assert_eq!(a.segments, b.segments);
        assert_eq!(a.rotation_detected, b.rotation_detected);
    }

    #[test]
    fn wave_rejects_bad_params_and_empty_ranges() {
        let series = wave_series(&[(100, 300)]);
        let range = DateRange::new(d("2020-08-01"), d("2020-08-01"));
        assert!(matches!(
            detect_wave(&series, range, 0.5, 3, &BTreeSet::new()),
            Err(ForensicsError::InvalidParams(_))
        ));
        assert!(matches!(
            detect_wave(&series, range, 0.8, 1, &BTreeSet::new()),
            Err(ForensicsError::InvalidParams(_))
        ));
        let empty = DateRange::new(d("2021-01-01"), d("2021-01-05"));
        assert!(matches!(
            detect_wave(&series, empty, 0.8, 2, &BTreeSet::new()),
            Err(ForensicsError::EmptyRange(_))
        ));
    }

    #[test]
    fn payload_histogram_exact_values() {
        let records = vec![
            rec(AUG1, Protocol::Udp, "1.1.1.1", 50001, "192.0.2.9", 58246, 100, None),
            rec(AUG1, Protocol::Udp, "1.1.1.2", 50002, "192.0.2.9", 58246, 65, None),
            rec(AUG1, Protocol::Udp, "1.1.1.3", 50003, "192.0.2.9", 58246, 226, None),
            rec(AUG1, Protocol::Udp, "1.1.1.4", 50004, "192.0.2.9", 58246, 100, None),
        ];
        let dist = payload_distribution(&records, 58246).unwrap();
        assert_eq!(dist.min, 65);
        assert_eq!(dist.max, 226);
        assert_eq!(dist.total, 4);
        assert_eq!(dist.histogram[&100], 2);
        assert_eq!(dist.histogram.values().sum::<u64>(), dist.total);

        let single = payload_distribution(&records[..1], 58246).unwrap();
        assert_eq!(single.histogram, [(100u64, 1u64)].into_iter().collect());
    }

    #[test]
    fn srcport_high_fraction() {
        let mut records: Vec<AccessRecord> = (0..20)
            .map(|i| rec(AUG1, Protocol::Udp, "1.1.1.1", 50000 + i, "192.0.2.9", 58246, 80, None))
            .collect();
        let (_, frac) = srcport_distribution(&records, 58246).unwrap();
        assert_eq!(frac, 1.0);

        records.push(rec(AUG1, Protocol::Udp, "1.1.1.1", 1024, "192.0.2.9", 58246, 80, None));
        let (dist, frac) = srcport_distribution(&records, 58246).unwrap();
        assert!((frac - 20.0 / 21.0).abs() < 1e-12);
        assert_eq!(dist.min, 1024);

        assert!(matches!(
            srcport_distribution(&records, 9999),
            Err(ForensicsError::NoSamples(9999))
        ));
    }

    /// Independent construction of the order-4 curve by recursive
    /// quadrant composition, for cross-checking hilbert_xy.
    fn recursive_hilbert(order: u32) -> Vec<(u8, u8)> {
        if order == 0 {
            return vec![(0, 0)];
        }
        let prev = recursive_hilbert(order - 1);
        let half = 1u8 << (order - 1);
        let mut curve = Vec::with_capacity(prev.len() * 4);
        // quadrant 1: transpose
        curve.extend(prev.iter().map(|&(x, y)| (y, x)));
        // quadrant 2: shift up
        curve.extend(prev.iter().map(|&(x, y)| (x, y + half)));
        // quadrant 3: shift up+right
        curve.extend(prev.iter().map(|&(x, y)| (x + half, y + half)));
        // quadrant 4: anti-transpose
        curve.extend(
            prev.iter()
                .map(|&(x, y)| (2 * half - 1 - y, half - 1 - x)),
        );
        curve
    }

    #[test]
    fn hilbert_matches_recursive_oracle() {
        let oracle = recursive_hilbert(4);
        for block in 0u16..=255 {
            assert_eq!(hilbert_xy(block as u8), oracle[block as usize], "block {block}");
        }
    }

    #[test]
    fn hilbert_endpoints_and_adjacency() {
        assert_eq!(hilbert_xy(0), (0, 0));
        assert_eq!(hilbert_xy(255), (15, 0));
        let mut seen = BTreeSet::new();
        for block in 0u16..=255 {
            seen.insert(hilbert_xy(block as u8));
        }
        assert_eq!(seen.len(), 256);
        for block in 0u8..255 {
            let (x0, y0) = hilbert_xy(block);
            let (x1, y1) = hilbert_xy(block + 1);
            let dist = (x0 as i32 - x1 as i32).abs() + (y0 as i32 - y1 as i32).abs();
            assert_eq!(dist, 1, "blocks {block} and {} not adjacent", block + 1);
        }
    }

    #[test]
    fn heatmap_counts_distinct_sources() {
        let records = vec![
            rec(AUG1, Protocol::Udp, "10.1.1.1", 50001, "192.0.2.9", 58246, 80, None),
            rec(AUG1, Protocol::Udp, "10.2.2.2", 50002, "192.0.2.9", 58246, 80, None),
            rec(AUG1 + 5, Protocol::Udp, "10.2.2.2", 50003, "192.0.2.9", 58246, 80, None),
            rec(AUG1, Protocol::Udp, "77.1.2.3", 50004, "192.0.2.9", 58246, 80, None),
        ];
        let range = DateRange::new(d("2020-08-01"), d("2020-08-02"));
        let map = source_heatmap(&records, 58246, range).unwrap();
        let (x10, y10) = hilbert_xy(10);
        assert_eq!(map.grid[y10 as usize][x10 as usize], 2);
        let total: u64 = map.grid.iter().flatten().sum();
        assert_eq!(total, 3);
    }

    #[test]
    fn heatmap_respects_date_range() {
        let records = vec![
            rec(AUG1, Protocol::Udp, "10.1.1.1", 50001, "192.0.2.9", 58246, 80, None),
            rec(AUG1 + 10 * 86400, Protocol::Udp, "20.1.1.1", 50002, "192.0.2.9", 58246, 80, None),
        ];
        let range = DateRange::new(d("2020-08-01"), d("2020-08-02"));
        let map = source_heatmap(&records, 58246, range).unwrap();
        let total: u64 = map.grid.iter().flatten().sum();
        assert_eq!(total, 1);
    }
}

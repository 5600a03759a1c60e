//! Property tests for aggregation, cleansing and scoring invariants.

use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use proptest::prelude::*;

use port_tfidf_core::cleanse::{apply_noise_threshold, apply_stop_ports};
use port_tfidf_core::corpus::{aggregate_daily, aggregate_hourly, Corpus, DayDocument};
use port_tfidf_core::record::{AccessRecord, Protocol};
use port_tfidf_core::scoring::{common_idf, smoothed_idf, score_day, ScoringConfig};

const AUG1: i64 = 1596240000; // 2020-08-01 00:00:00 UTC

fn record(ts: i64, protocol: Protocol, dst_port: u16) -> AccessRecord {
    AccessRecord {
        ts,
        protocol,
        src_ip: "203.0.113.5".parse().unwrap(),
        src_port: 40000,
        dst_ip: "198.18.0.1".parse().unwrap(),
        dst_port,
        payload_len: 0,
        tcp_isn: None,
    }
}

prop_compose! {
    fn arb_records(max_len: usize)
        (items in prop::collection::vec(
            (0i64..5 * 86400, prop::bool::ANY, 1u16..200),
            1..max_len,
        ))
        -> Vec<AccessRecord>
    {
        items
            .into_iter()
            .map(|(off, is_tcp, port)| {
                record(AUG1 + off, if is_tcp { Protocol::Tcp } else { Protocol::Udp }, port)
            })
            .collect()
    }
}

prop_compose! {
    fn arb_doc()
        (counts in prop::collection::btree_map(1u16..500, 1u64..10_000, 0..30))
        -> DayDocument
    {
        DayDocument {
            day: NaiveDate::from_ymd_opt(2020, 8, 1).unwrap(),
            protocol: Protocol::Tcp,
            counts,
        }
    }
}

proptest! {
    #[test]
    fn aggregation_is_order_independent(mut records in arb_records(300), rotate in 0usize..100) {
        prop_assume!(records.iter().any(|r| r.protocol == Protocol::Tcp));
        let a = aggregate_daily(&records, Protocol::Tcp).unwrap();
        records.reverse();
        let mid = rotate % records.len().max(1);
        records.rotate_left(mid);
        let b = aggregate_daily(&records, Protocol::Tcp).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn aggregation_conserves_record_counts(records in arb_records(300)) {
        for protocol in [Protocol::Tcp, Protocol::Udp] {
            let expected = records.iter().filter(|r| r.protocol == protocol).count() as u64;
            match aggregate_daily(&records, protocol) {
                Ok(corpus) => {
                    let total: u64 = corpus.docs().iter().map(|d| d.total()).sum();
                    prop_assert_eq!(total, expected);
                }
                Err(_) => prop_assert_eq!(expected, 0),
            }
        }
    }

    #[test]
    fn hourly_and_daily_totals_agree(records in arb_records(300)) {
        prop_assume!(records.iter().any(|r| r.protocol == Protocol::Tcp));
        let daily = aggregate_daily(&records, Protocol::Tcp).unwrap();
        let hourly = aggregate_hourly(&records, Protocol::Tcp).unwrap();
        for doc in daily.docs() {
            prop_assert_eq!(hourly.daily_totals(doc.day), doc.counts.clone());
        }
    }

    #[test]
    fn df_never_decreases_when_a_day_is_added(records in arb_records(200), extra in arb_records(50)) {
        prop_assume!(records.iter().any(|r| r.protocol == Protocol::Tcp));
        let base = aggregate_daily(&records, Protocol::Tcp).unwrap();
        // append one more day built from the extra batch
        let appended: Vec<AccessRecord> = records
            .iter()
            .cloned()
            .chain(extra.iter().map(|r| {
                let mut r = r.clone();
                r.ts = AUG1 + 5 * 86400 + r.ts.rem_euclid(86400);
                r.protocol = Protocol::Tcp;
                r
            }))
            .collect();
        let grown = aggregate_daily(&appended, Protocol::Tcp).unwrap();
        for port in base.distinct_ports() {
            prop_assert!(grown.df(port) >= base.df(port));
        }
    }

    #[test]
    fn filters_only_shrink_documents(doc in arb_doc(), threshold in 1u64..20_000, stops in prop::collection::btree_set(1u16..500, 0..10)) {
        for filtered in [apply_stop_ports(&doc, &stops), apply_noise_threshold(&doc, threshold)] {
            for (port, count) in &filtered.counts {
                prop_assert_eq!(doc.counts.get(port), Some(count));
            }
            prop_assert!(filtered.counts.len() <= doc.counts.len());
        }
    }

    #[test]
    fn higher_thresholds_nest_survivors(doc in arb_doc(), a in 1u64..5_000, extra in 1u64..5_000) {
        let b = a + extra;
        let surv_a: BTreeSet<u16> = apply_noise_threshold(&doc, a).counts.into_keys().collect();
        let surv_b: BTreeSet<u16> = apply_noise_threshold(&doc, b).counts.into_keys().collect();
        prop_assert!(surv_b.is_subset(&surv_a));
    }

    #[test]
    fn smoothed_idf_is_common_plus_one(n in 1usize..100_000, df_frac in 0.0f64..=1.0) {
        let df = (n as f64 * df_frac) as usize;
        let diff = smoothed_idf(n, df) - common_idf(n, df);
        prop_assert!((diff - 1.0).abs() < 1e-12);
    }

    #[test]
    fn ranking_order_survives_target_day_scaling(
        counts in prop::collection::btree_map(1u16..60, 1u64..500, 1..8),
        scale in 2u64..50,
    ) {
        let mk = |day_counts: BTreeMap<u16, u64>, offset: u64| DayDocument {
            day: NaiveDate::from_ymd_opt(2020, 8, 1).unwrap() + chrono::Days::new(offset),
            protocol: Protocol::Tcp,
            counts: day_counts,
        };
        let history: BTreeMap<u16, u64> = counts.keys().map(|&p| (p, 1)).collect();
        let base = Corpus::from_docs(
            Protocol::Tcp,
            vec![mk(history.clone(), 0), mk(counts.clone(), 1)],
        )
        .unwrap();
        let scaled_counts: BTreeMap<u16, u64> =
            counts.iter().map(|(&p, &n)| (p, n * scale)).collect();
        let scaled = Corpus::from_docs(
            Protocol::Tcp,
            vec![mk(history, 0), mk(scaled_counts, 1)],
        )
        .unwrap();
        let config = ScoringConfig { window_days: 2, top_k: 100, ..Default::default() };
        let r1 = score_day(&base, 1, &config).unwrap();
        let r2 = score_day(&scaled, 1, &config).unwrap();
        let p1: Vec<u16> = r1.entries.iter().map(|e| e.port).collect();
        let p2: Vec<u16> = r2.entries.iter().map(|e| e.port).collect();
        prop_assert_eq!(p1, p2);
    }
}

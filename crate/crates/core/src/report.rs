//! Plot-ready emitters: ranking JSON/CSV, history and histogram CSVs,
//! heatmap CSV/SVG. Everything here is a pure string renderer so output
//! files are byte-stable across runs.

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::cleanse::IdfHistogram;
use crate::forensics::{Distribution, HilbertHeatmap};
use crate::scoring::{IdfMode, ScoringConfig, TfMode, TfidfRanking};

/// Wire form of one day's ranking:
/// `{"day":...,"window":30,"mode":{"idf":"smoothed","tf":"linear"},"top":[...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingReport {
    pub day: NaiveDate,
    pub window: usize,
    pub mode: RankingMode,
    pub top: Vec<RankingEntry>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankingMode {
    pub idf: IdfMode,
    pub tf: TfMode,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankingEntry {
    pub port: u16,
    pub tf: f64,
    pub idf: f64,
    pub tfidf: f64,
}

impl RankingReport {
    pub fn from_ranking(ranking: &TfidfRanking, config: &ScoringConfig) -> Self {
        Self {
            day: ranking.day,
            window: ranking.window_days,
            mode: RankingMode { idf: config.idf_mode, tf: config.tf_mode },
            top: ranking
                .entries
                .iter()
                .map(|e| RankingEntry { port: e.port, tf: e.tf, idf: e.idf, tfidf: e.tfidf })
                .collect(),
        }
    }
}

/// All rankings of a scan as a JSON array of per-day reports.
pub fn rankings_to_json(rankings: &[TfidfRanking], config: &ScoringConfig) -> String {
    let reports: Vec<RankingReport> =
        rankings.iter().map(|r| RankingReport::from_ranking(r, config)).collect();
    serde_json::to_string_pretty(&reports).expect("ranking serialization cannot fail")
}

pub fn rankings_from_json(json: &str) -> Result<Vec<RankingReport>, serde_json::Error> {
    serde_json::from_str(json)
}

/// `day,rank,port,tf,idf,tfidf` rows for every ranking.
pub fn rankings_to_csv(rankings: &[TfidfRanking]) -> String {
    let mut out = String::from("day,rank,port,tf,idf,tfidf\n");
    for ranking in rankings {
        for (i, e) in ranking.entries.iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                ranking.day,
                i + 1,
                e.port,
                e.tf,
                e.idf,
                e.tfidf
            ));
        }
    }
    out
}

/// `day,count` rows for one port's history.
pub fn history_to_csv(history: &[(NaiveDate, u64)]) -> String {
    let mut out = String::from("day,count\n");
    for (day, count) in history {
        out.push_str(&format!("{day},{count}\n"));
    }
    out
}

/// `threshold,top_bin_count,distinct_ports` rows for a sweep trace.
pub fn sweep_trace_to_csv(trace: &[IdfHistogram]) -> String {
    let mut out = String::from("threshold,top_bin_count,distinct_ports\n");
    for hist in trace {
        out.push_str(&format!("{},{},{}\n", hist.threshold, hist.top_bin_count, hist.distinct_ports));
    }
    out
}

/// `bin_low,bin_high,count` rows for one histogram.
pub fn histogram_to_csv(hist: &IdfHistogram) -> String {
    let mut out = String::from("bin_low,bin_high,count\n");
    for (i, count) in hist.bin_counts.iter().enumerate() {
        out.push_str(&format!("{},{},{}\n", hist.bin_edges[i], hist.bin_edges[i + 1], count));
    }
    out
}

/// `value,count` rows for a payload or source-port distribution.
pub fn distribution_to_csv(dist: &Distribution) -> String {
    let mut out = String::from("value,count\n");
    for (value, count) in &dist.histogram {
        out.push_str(&format!("{value},{count}\n"));
    }
    out
}

/// `x,y,count` rows for all 256 heatmap cells, in block order.
pub fn heatmap_to_csv(map: &HilbertHeatmap) -> String {
    let mut out = String::from("x,y,count\n");
    for block in 0u16..=255 {
        let (x, y) = crate::forensics::hilbert_xy(block as u8);
        out.push_str(&format!("{},{},{}\n", x, y, map.grid[y as usize][x as usize]));
    }
    out
}

/// Render the heatmap as a standalone SVG: one shaded cell per /8 block.
pub fn heatmap_to_svg(map: &HilbertHeatmap) -> String {
    const CELL: usize = 24;
    let max = map.grid.iter().flatten().copied().max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\">\n",
        16 * CELL,
        16 * CELL + 20
    ));
    out.push_str(&format!(
        "<title>distinct sources per /8 block, port {} {}</title>\n",
        map.port, map.range
    ));
    for block in 0u16..=255 {
        let (x, y) = crate::forensics::hilbert_xy(block as u8);
        let count = map.grid[y as usize][x as usize];
        // white for empty, darkening blue with count
        let shade = if max == 0 { 0.0 } else { count as f64 / max as f64 };
        let level = 255 - (shade * 200.0).round() as u16;
        // y axis points down in SVG; flip so block 0 draws bottom-left
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{CELL}\" height=\"{CELL}\" fill=\"rgb({level},{level},255)\"><title>block {}/8: {}</title></rect>\n",
            x as usize * CELL,
            (15 - y as usize) * CELL,
            block,
            count
        ));
    }
    out.push_str(&format!(
        "<text x=\"4\" y=\"{}\" font-size=\"12\" font-family=\"monospace\">port {} {} max {}</text>\n",
        16 * CELL + 14,
        map.port,
        map.range,
        max
    ));
    out.push_str("</svg>\n");
    out
}

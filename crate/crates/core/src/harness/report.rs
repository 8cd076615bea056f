use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::extract::Heuristic;

/// Statistics for one instance: extraction size and seed neighbourhood
/// first, then the enumeration results when they were computed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InstanceReport {
    pub name: String,
    pub num_clauses: usize,
    pub island_clauses: usize,
    pub coverage_pct: f64,
    pub num_vars: usize,
    /// Flips from the seed that stay on the island.
    pub confined_degree: usize,
    pub confined_pct: f64,
    pub island_space: Option<u64>,
    /// `2^num_vars / island_space`, rounded half up.
    pub reduction: Option<u64>,
    pub model_count: Option<u64>,
    pub heuristic: Heuristic,
    /// Seconds.
    pub wall_time: f64,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

pub const CSV_COLUMNS: [&str; 12] = [
    "name",
    "num_clauses",
    "island_clauses",
    "coverage_pct",
    "num_vars",
    "confined_degree",
    "confined_pct",
    "island_space",
    "reduction",
    "model_count",
    "heuristic",
    "wall_time",
];

pub fn csv_header() -> String {
    CSV_COLUMNS.join(",")
}

fn opt(v: Option<u64>) -> String {
    v.map(|n| n.to_string()).unwrap_or_default()
}

impl InstanceReport {
    fn csv_fields(&self) -> [String; 12] {
        [
            self.name.clone(),
            self.num_clauses.to_string(),
            self.island_clauses.to_string(),
            format!("{:.1}", self.coverage_pct),
            self.num_vars.to_string(),
            self.confined_degree.to_string(),
            format!("{:.1}", self.confined_pct),
            opt(self.island_space),
            opt(self.reduction),
            opt(self.model_count),
            self.heuristic.to_string(),
            format!("{:.3}", self.wall_time),
        ]
    }
}

/// CSV with a header row, one row per report.
pub fn to_csv(reports: &[InstanceReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(CSV_COLUMNS).expect("in-memory write");
    for r in reports {
        w.write_record(r.csv_fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 fields")
}

/// Aligned plain-text table.
pub fn format_table(reports: &[InstanceReport]) -> String {
    let header = [
        "instance", "|C|", "|Q|", "|var(C)|", "|n(L)|", "|Space(Q)|", "2^n/|Space(Q)|",
        "|sol(C)|",
    ];
    let rows: Vec<[String; 8]> = reports
        .iter()
        .map(|r| {
            [
                r.name.clone(),
                r.num_clauses.to_string(),
                format!("{} ({:.1}%)", r.island_clauses, r.coverage_pct),
                r.num_vars.to_string(),
                format!("{} ({:.1}%)", r.confined_degree, r.confined_pct),
                opt(r.island_space),
                opt(r.reduction),
                opt(r.model_count),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut line = |cells: &[&str]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .enumerate()
            .map(|(i, (c, &w))| {
                if i == 0 {
                    format!("{c:<w$}")
                } else {
                    format!("{c:>w$}")
                }
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(&header);
    for row in &rows {
        let cells: Vec<&str> = row.iter().map(String::as_str).collect();
        line(&cells);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> InstanceReport {
        InstanceReport {
            name: "uf20-01".into(),
            num_clauses: 91,
            island_clauses: 72,
            coverage_pct: 100.0 * 72.0 / 91.0,
            num_vars: 20,
            confined_degree: 7,
            confined_pct: 35.0,
            island_space: Some(1300),
            reduction: Some(807),
            model_count: Some(8),
            heuristic: Heuristic::Ratio,
            wall_time: 0.012_345,
            notes: vec![],
        }
    }

    #[test]
    fn json_round_trip() {
        let r = sample();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<InstanceReport>(&json).unwrap(), r);
        assert!(!json.contains("notes"));
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&[sample()]);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), csv_header());
        assert_eq!(
            lines.next().unwrap(),
            "uf20-01,91,72,79.1,20,7,35.0,1300,807,8,ratio,0.012"
        );
    }

    #[test]
    fn table_is_aligned() {
        let t = format_table(&[sample()]);
        let lines: Vec<&str> = t.lines().collect();
        assert_eq!(lines.len(), 2);
        assert!(lines[1].starts_with("uf20-01"));
        assert!(lines[1].contains("72 (79.1%)"));
        assert_eq!(lines[0].len(), lines[1].len());
    }
}

//! Report serialization: canonical JSON, CSV, and a human-readable table.
//!
//! The JSON body is deterministic for a fixed configuration: struct field
//! order is fixed and no timestamps or timings are included (timing lives on
//! the in-memory report only and is logged to stderr by the CLI).

use crate::connectivity::ConvergenceVerdict;
use crate::graph::Family;
use crate::linalg::FieldSpec;
use crate::specseq::PageReport;
use serde::Serialize;
use std::fmt::Write as _;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckOutcome {
    Pass,
    Fail,
    Skipped,
}

impl CheckOutcome {
    pub fn failed(&self) -> bool {
        matches!(self, CheckOutcome::Fail)
    }
}

/// Outcome of the self-checks enabled for a run.
#[derive(Debug, Clone, Serialize)]
pub struct ChecksSummary {
    pub d1sq: CheckOutcome,
    pub euler: CheckOutcome,
    pub vanishing: CheckOutcome,
    pub identities: CheckOutcome,
}

impl ChecksSummary {
    pub fn all_skipped() -> Self {
        ChecksSummary {
            d1sq: CheckOutcome::Skipped,
            euler: CheckOutcome::Skipped,
            vanishing: CheckOutcome::Skipped,
            identities: CheckOutcome::Skipped,
        }
    }

    pub fn any_failed(&self) -> bool {
        [self.d1sq, self.euler, self.vanishing, self.identities]
            .iter()
            .any(|c| c.failed())
    }
}

#[derive(Serialize)]
struct SpecDto {
    family: Family,
    strands: u32,
    ambient: u32,
    field: FieldSpec,
    q_max: u32,
}

#[derive(Serialize)]
struct Document<'a> {
    spec: SpecDto,
    rows: &'a [crate::specseq::RowReport],
    verdict: &'a ConvergenceVerdict,
    checks: &'a ChecksSummary,
}

/// Canonical JSON document (byte-identical across runs for a fixed config).
pub fn to_json(
    report: &PageReport,
    verdict: &ConvergenceVerdict,
    checks: &ChecksSummary,
) -> String {
    let doc = Document {
        spec: SpecDto {
            family: report.family,
            strands: report.strands,
            ambient: report.ambient,
            field: report.field,
            q_max: report.q_max,
        },
        rows: &report.rows,
        verdict,
        checks,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("report serialization");
    s.push('\n');
    s
}

/// CSV: one line per (q, p); `e2` empty on truncated rows.
pub fn to_csv(report: &PageReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["q", "p", "e1", "e2"]).expect("csv header");
    for row in &report.rows {
        for e in &row.entries {
            let e2 = e.e2.map(|v| v.to_string()).unwrap_or_default();
            w.write_record([
                row.q.to_string(),
                e.p.to_string(),
                e.e1.to_string(),
                e2,
            ])
            .expect("csv record");
        }
    }
    String::from_utf8(w.into_inner().expect("csv flush")).expect("csv utf8")
}

/// Parse the CSV back into (q, p, e1, e2) tuples (round-trip testing).
pub fn parse_csv(text: &str) -> Vec<(u32, u32, usize, Option<usize>)> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| {
            let rec = rec.expect("csv record");
            let q = rec[0].parse().expect("q");
            let p = rec[1].parse().expect("p");
            let e1 = rec[2].parse().expect("e1");
            let e2 = if rec[3].is_empty() {
                None
            } else {
                Some(rec[3].parse().expect("e2"))
            };
            (q, p, e1, e2)
        })
        .collect()
}

/// Human-readable table with the verdict appended.
pub fn to_table(report: &PageReport, verdict: &ConvergenceVerdict) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "family {}  strands {}  ambient {}  field {}  rows q <= {}",
        report.family, report.strands, report.ambient, report.field, report.q_max
    );
    let _ = writeln!(out, "{:>4} {:>4} {:>8} {:>8}", "q", "p", "dim E1", "dim E2");
    for row in &report.rows {
        let nonzero = row.entries.iter().any(|e| e.e1 > 0);
        if !nonzero {
            continue;
        }
        for e in &row.entries {
            if e.e1 == 0 && e.e2.unwrap_or(0) == 0 {
                continue;
            }
            let e2 = e
                .e2
                .map(|v| v.to_string())
                .unwrap_or_else(|| "?".to_string());
            let _ = writeln!(out, "{:>4} {:>4} {:>8} {:>8}", row.q, e.p, e.e1, e2);
        }
        if row.truncated {
            let _ = writeln!(out, "  row q={} truncated (basis size limit)", row.q);
        }
    }
    let _ = writeln!(
        out,
        "convergence: cohomology {:?}, homotopy {:?}{}",
        verdict.cohomology,
        verdict.homotopy,
        verdict
            .target
            .as_deref()
            .map(|t| format!(", target: {t}"))
            .unwrap_or_default()
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::convergence_verdict;
    use crate::linalg::Rationals;
    use crate::models::{Model, ModelSpec};
    use crate::specseq::{e2_page, PageOptions};

    fn sample_report() -> PageReport {
        let spec = ModelSpec::new(Family::Links, 2, 4, FieldSpec::Rationals).unwrap();
        let model = Model::new(spec).unwrap();
        e2_page(&model, &Rationals, 3, &PageOptions::default())
    }

    #[test]
    fn json_is_deterministic() {
        let report = sample_report();
        let verdict = convergence_verdict(Family::Links, 4);
        let checks = ChecksSummary::all_skipped();
        let a = to_json(&report, &verdict, &checks);
        let b = to_json(&sample_report(), &verdict, &checks);
        assert_eq!(a, b);
        assert!(a.contains("\"family\": \"links\""));
    }

    #[test]
    fn csv_round_trips_dimensions() {
        let report = sample_report();
        let csv = to_csv(&report);
        let parsed = parse_csv(&csv);
        let mut idx = 0;
        for row in &report.rows {
            for e in &row.entries {
                let (q, p, e1, e2) = parsed[idx];
                assert_eq!((q, p, e1, e2), (row.q, e.p, e.e1, e.e2));
                idx += 1;
            }
        }
        assert_eq!(idx, parsed.len());
    }

    #[test]
    fn table_mentions_nonzero_entries() {
        let report = sample_report();
        let verdict = convergence_verdict(Family::Links, 4);
        let table = to_table(&report, &verdict);
        assert!(table.contains("dim E2"));
        assert!(table.contains("convergence"));
    }
}

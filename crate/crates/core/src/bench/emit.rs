use std::fmt::Write as _;

use serde::Serialize;

use super::{round_half_up, summarize, BenchReport, BenchRow, Summary};

fn value(v: f64) -> String {
    if (v - v.round()).abs() < 1e-9 {
        format!("{:.0}", v)
    } else {
        format!("{:.2}", v)
    }
}

fn percent(v: f64) -> String {
    format!("{:.2}", round_half_up(v, 2))
}

/// One line per row. Timing is left out so identical runs give identical
/// files.
pub fn to_csv(report: &BenchReport) -> String {
    let mut out = String::from("instance,machines,order,baseline,sa_value,dif_percent,seeds\n");
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.instance,
            r.machines,
            r.order,
            r.baseline.map(value).unwrap_or_default(),
            value(r.sa_value),
            r.dif_percent.map(percent).unwrap_or_default(),
            r.seeds_used
        );
    }
    out
}

/// Repetition/cyclic columns per order, Dif% for each instance's highest
/// order, then scaling tables and the summary.
pub fn to_markdown(report: &BenchReport) -> String {
    let mut orders: Vec<usize> = report.rows.iter().map(|r| r.order).collect();
    orders.sort_unstable();
    orders.dedup();

    let mut instances: Vec<&str> = Vec::new();
    for r in &report.rows {
        if !instances.contains(&r.instance.as_str()) {
            instances.push(&r.instance);
        }
    }

    let mut out = String::new();
    if !instances.is_empty() {
        out.push_str("| Task |");
        for k in &orders {
            let _ = write!(out, " Best {k} | SA {k} |");
        }
        out.push_str(" Dif. % |\n|---|");
        for _ in &orders {
            out.push_str("---:|---:|");
        }
        out.push_str("---:|\n");

        let headline = report.headline_rows();
        for name in &instances {
            let _ = write!(out, "| {name} |");
            for k in &orders {
                let row: Option<&BenchRow> = report.rows.iter().find(|r| r.instance == *name && r.order == *k);
                let best = row.and_then(|r| r.baseline).map(value).unwrap_or_default();
                let sa = row.map(|r| value(r.sa_value)).unwrap_or_default();
                let _ = write!(out, " {best} | {sa} |");
            }
            let dif = headline
                .iter()
                .find(|r| r.instance == *name)
                .and_then(|r| r.dif_percent)
                .map(percent)
                .unwrap_or_default();
            let _ = writeln!(out, " {dif} |");
        }
    }

    for table in &report.scaling {
        let _ = writeln!(out, "\n### {}\n", table.instance);
        out.push_str("| Order | Repetition of order 1 | Solved as cyclic | Difference | Difference, % |\n");
        out.push_str("|---:|---:|---:|---:|---:|\n");
        for r in &table.rows {
            let _ = writeln!(
                out,
                "| {} | {} | {} | {} | {}% |",
                r.order,
                value(r.baseline),
                value(r.sa_value),
                value(r.difference),
                percent(r.dif_percent)
            );
        }
    }

    if let Ok(s) = summarize(report) {
        let _ = write!(
            out,
            "\nDif. % over {} instances: mean {}, max {}",
            s.overall.count,
            percent(s.overall.mean),
            percent(s.overall.max)
        );
        if let Some(large) = s.large {
            let _ = write!(
                out,
                "; instances with at least 10 machines ({}): mean {}",
                large.count,
                percent(large.mean)
            );
        }
        out.push('\n');
    }

    if !report.failures.is_empty() {
        out.push_str("\nFailures:\n");
        for f in &report.failures {
            match f.order {
                Some(k) => {
                    let _ = writeln!(out, "- {} (order {k}): {}", f.instance, f.error);
                }
                None => {
                    let _ = writeln!(out, "- {}: {}", f.instance, f.error);
                }
            }
        }
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    #[serde(flatten)]
    report: &'a BenchReport,
    summary: Option<Summary>,
}

/// Full detail, including per-seed values and timings.
pub fn to_json(report: &BenchReport) -> String {
    let doc = JsonReport {
        report,
        summary: summarize(report).ok(),
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("reports always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::{scaling_tables, BenchFailure};

    fn report() -> BenchReport {
        let mk = |order: usize, sa: f64| BenchRow {
            instance: "la20".into(),
            machines: 10,
            order,
            baseline: Some(902.0 * order as f64),
            sa_value: sa,
            dif_percent: Some(100.0 * (902.0 * order as f64 - sa) / (902.0 * order as f64)),
            lower_bound: 0.0,
            seeds_used: 3,
            per_seed: vec![],
            elapsed: 1.5,
        };
        let rows = vec![mk(1, 907.0), mk(2, 1722.0), mk(4, 3338.0)];
        BenchReport {
            scaling: scaling_tables(&rows),
            rows,
            failures: vec![BenchFailure {
                instance: "broken".into(),
                order: None,
                error: "bad file".into(),
            }],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = to_csv(&report());
        assert_eq!(
            csv,
            "instance,machines,order,baseline,sa_value,dif_percent,seeds\n\
             la20,10,1,902,907,-0.55,3\n\
             la20,10,2,1804,1722,4.55,3\n\
             la20,10,4,3608,3338,7.48,3\n"
        );
    }

    #[test]
    fn markdown_layout() {
        let md = to_markdown(&report());
        assert!(md.starts_with("| Task | Best 1 | SA 1 | Best 2 | SA 2 | Best 4 | SA 4 | Dif. % |\n"));
        assert!(md.contains("| la20 | 902 | 907 | 1804 | 1722 | 3608 | 3338 | 7.48 |"));
        assert!(md.contains("| 1 | 902 | 907 | -5 | -0.55% |"));
        assert!(md.contains("- broken: bad file"));
    }

    #[test]
    fn json_has_detail() {
        let v: serde_json::Value = serde_json::from_str(&to_json(&report())).unwrap();
        assert_eq!(v["rows"].as_array().unwrap().len(), 3);
        assert_eq!(v["rows"][0]["elapsed"], 1.5);
        assert_eq!(v["summary"]["overall"]["count"], 1);
        assert_eq!(v["scaling"][0]["rows"][2]["order"], 4);
    }
}

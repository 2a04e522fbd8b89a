use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use chrono::NaiveDate;
use econ_core::report::{
    build_report, render_to_string, run_pipeline, Cell, InputSpec, OutputFormat, PipelineConfig, Report, SectionBody,
    SectionId,
};
use econ_core::synth::{cointegrated_pair, random_walk_pair, Rng};
use econ_core::{Error, Panel};

/// Writes each panel column as a daily CSV with a few jittered prices per month.
fn write_daily(dir: &Path, panel: &Panel, skip_month: Option<usize>) -> Vec<InputSpec> {
    let mut rng = Rng::new(404);
    let mut specs = Vec::new();
    for (j, label) in panel.labels.iter().enumerate() {
        let mut text = String::from("date,close\n");
        for (i, v) in panel.column(j).iter().enumerate() {
            if skip_month == Some(i) && j == 0 {
                continue;
            }
            let first = panel.start.offset(i as i64).first_day();
            for d in [2u64, 9, 16, 23] {
                let day = first + chrono::Days::new(d);
                let price = 1000.0 + 10.0 * v + 0.01 * rng.normal();
                writeln!(text, "{},{price}", day.format("%Y-%m-%d")).unwrap();
            }
        }
        let path = dir.join(format!("{label}.csv"));
        fs::write(&path, text).unwrap();
        specs.push(InputSpec { name: label.to_uppercase(), path });
    }
    specs
}

fn config(inputs: Vec<InputSpec>) -> PipelineConfig {
    PipelineConfig { inputs, ..PipelineConfig::default() }
}

#[test]
fn files_run_through_every_section() {
    let dir = tempfile::tempdir().unwrap();
    let panel = random_walk_pair(120, 16).unwrap();
    let report = run_pipeline(&config(write_daily(dir.path(), &panel, None))).unwrap();
    assert_eq!(report.sample.observations, 120);
    assert_eq!(report.sample.variables, vec!["X1", "X2"]);
    let ids: Vec<SectionId> = report.sections.iter().map(|s| s.id).collect();
    assert_eq!(ids, SectionId::ALL.to_vec());
    for s in &report.sections {
        assert!(matches!(s.body, SectionBody::Ok { .. }), "{:?} skipped", s.id);
    }
}

#[test]
fn gap_error_names_input_and_month() {
    let dir = tempfile::tempdir().unwrap();
    let panel = random_walk_pair(60, 3).unwrap();
    let err = run_pipeline(&config(write_daily(dir.path(), &panel, Some(30)))).unwrap_err();
    let missing = panel.start.offset(30);
    assert!(matches!(err.root(), Error::Gap(m) if *m == missing), "{err:?}");
    let msg = err.to_string();
    assert!(msg.starts_with("input X1:"), "{msg}");
}

#[test]
fn missing_file_is_reported_with_its_input() {
    let dir = tempfile::tempdir().unwrap();
    let panel = random_walk_pair(40, 3).unwrap();
    let mut inputs = write_daily(dir.path(), &panel, None);
    inputs[1].path = dir.path().join("absent.csv");
    let msg = run_pipeline(&config(inputs)).unwrap_err().to_string();
    assert!(msg.starts_with("input X2:"), "{msg}");
}

#[test]
fn one_input_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let panel = random_walk_pair(40, 3).unwrap();
    let mut inputs = write_daily(dir.path(), &panel, None);
    inputs.truncate(1);
    assert!(matches!(run_pipeline(&config(inputs)), Err(Error::Config(_))));
}

#[test]
fn json_round_trip_is_bit_exact() {
    let panel = cointegrated_pair(2.0, 1.0, 300, 5).unwrap();
    let report = build_report(&panel, &PipelineConfig::default()).unwrap().report;
    let json = render_to_string(&report, OutputFormat::Json).unwrap();
    let back: Report = serde_json::from_str(&json).unwrap();
    assert_eq!(back, report);
    let numbers = |r: &Report| -> Vec<u64> {
        r.sections
            .iter()
            .filter_map(|s| match &s.body {
                SectionBody::Ok { table } => Some(table),
                SectionBody::Skipped { .. } => None,
            })
            .flat_map(|t| t.rows.iter().flat_map(|row| row.cells.iter()))
            .filter_map(|c| match c {
                Cell::Number { value, .. } => Some(value.to_bits()),
                _ => None,
            })
            .collect()
    };
    assert!(!numbers(&report).is_empty());
    assert_eq!(numbers(&back), numbers(&report));
    let top: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert!(top["schema_version"].is_u64());
}

#[test]
fn text_numbers_are_roundings_of_json_values() {
    let panel = random_walk_pair(200, 16).unwrap();
    let report = build_report(&panel, &PipelineConfig::default()).unwrap().report;
    let text = render_to_string(&report, OutputFormat::Text).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    let mut from = 0;
    for s in &report.sections {
        from += lines[from..].iter().position(|l| *l == s.title).expect("section title");
        let SectionBody::Ok { table } = &s.body else { continue };
        for row in &table.rows {
            let line = lines[from + 1..]
                .iter()
                .find(|l| l.starts_with(&row.label) && l[row.label.len()..].starts_with("  "))
                .unwrap_or_else(|| panic!("row {:?} missing", row.label));
            for cell in &row.cells {
                if let Cell::Number { value, decimals, flag } = cell {
                    let mut shown = format!("{:.*}", *decimals as usize, value);
                    if *flag {
                        shown.push('*');
                    }
                    assert!(line.contains(&shown), "{shown} not in {line:?}");
                }
            }
        }
    }
}

#[test]
fn short_sample_skips_instead_of_failing() {
    let dir = tempfile::tempdir().unwrap();
    let panel = random_walk_pair(10, 2).unwrap();
    let report = run_pipeline(&config(write_daily(dir.path(), &panel, None))).unwrap();
    assert_eq!(report.sections.len(), 8);
    let skipped = report
        .sections
        .iter()
        .filter(|s| matches!(s.body, SectionBody::Skipped { .. }))
        .count();
    assert!(skipped > 0);
    let text = render_to_string(&report, OutputFormat::Text).unwrap();
    assert!(text.contains("Skipped: "));
}

#[test]
fn date_format_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let mut specs = Vec::new();
    let mut rng = Rng::new(9);
    for name in ["a", "b"] {
        let mut text = String::new();
        let mut day = NaiveDate::from_ymd_opt(2010, 1, 1).unwrap();
        let mut level = 100.0;
        while day < NaiveDate::from_ymd_opt(2014, 1, 1).unwrap() {
            level += rng.normal();
            writeln!(text, "{},{level}", day.format("%d/%m/%Y")).unwrap();
            day = day + chrono::Days::new(7);
        }
        let path = dir.path().join(format!("{name}.csv"));
        fs::write(&path, text).unwrap();
        specs.push(InputSpec { name: name.into(), path });
    }
    let mut cfg = config(specs);
    cfg.date_format = "%d/%m/%Y".into();
    let report = run_pipeline(&cfg).unwrap();
    assert_eq!(report.sample.observations, 48);
    assert_eq!(report.sample.start, "2010-01");
}

use crate::descriptive::{correlation, summarize, SummaryStats};
use crate::error::{Error, Result};
use crate::granger::{granger_test, hypothesis_verdict, GrangerResult, Hypothesis};
use crate::johansen::{johansen_test, remark_for_rank, JohansenResult};
use crate::series::{aggregate_monthly, align_all, load_csv, Panel, Series};
use crate::unit_root::{adf_test, pp_test, SignificanceLevel, UnitRootResult};
use crate::var::{select_lag, LagSelection};

use super::config::PipelineConfig;
use super::{Cell, Report, Row, SampleInfo, Section, SectionId, Table, SCHEMA_VERSION};

/// The report together with the intermediate results it was built from.
#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub report: Report,
    pub lag_selection: Option<LagSelection>,
    /// VAR lag in levels used downstream (at least one).
    pub var_lag: usize,
    pub johansen: Option<JohansenResult>,
    /// One entry per column pair `(i, j)` with `i < j`.
    pub granger: Vec<(GrangerResult, GrangerResult)>,
    pub verdicts: Vec<Hypothesis>,
}

/// Load, aggregate to monthly means and align every configured input.
pub fn load_panel(cfg: &PipelineConfig) -> Result<Panel> {
    cfg.validate_inputs()?;
    let mut series = Vec::with_capacity(cfg.inputs.len());
    for input in &cfg.inputs {
        let ctx = format!("input {}", input.name);
        let mut raw = load_csv(&input.path, &cfg.date_format).map_err(|e| e.in_section(ctx.clone()))?;
        raw.name = input.name.clone();
        let monthly = aggregate_monthly(&raw).map_err(|e| e.in_section(ctx))?;
        series.push(monthly);
    }
    align_all(&series).map_err(|e| e.in_section("align"))
}

pub fn run_pipeline(cfg: &PipelineConfig) -> Result<Report> {
    cfg.validate()?;
    let panel = load_panel(cfg)?;
    Ok(build_report(&panel, cfg)?.report)
}

fn skip_reason(e: &Error) -> String {
    e.root().to_string()
}

/// Run every analysis stage on an aligned panel. Stage failures become
/// skipped sections; only configuration errors are returned.
pub fn build_report(panel: &Panel, cfg: &PipelineConfig) -> Result<PipelineOutcome> {
    cfg.validate()?;
    let periods = panel.periods();
    let sample = SampleInfo {
        start: periods[0].to_string(),
        end: periods[periods.len() - 1].to_string(),
        observations: panel.len(),
        variables: panel.labels.clone(),
    };
    let mut sections = Vec::with_capacity(SectionId::ALL.len());

    sections.push(summary_section(panel));
    sections.push(match correlation(panel) {
        Ok(r) => {
            let mut columns = vec![String::new()];
            columns.extend(panel.labels.iter().cloned());
            let rows = panel
                .labels
                .iter()
                .enumerate()
                .map(|(i, l)| Row::new(l, (0..panel.width()).map(|j| Cell::stat(r[(i, j)])).collect()))
                .collect();
            Section::table(SectionId::Correlation, Table { columns, rows })
        }
        Err(e) => Section::skipped(SectionId::Correlation, skip_reason(&e)),
    });
    sections.push(unit_root_section(panel, SectionId::UnitRootAdf, |s| {
        adf_test(s, cfg.adf_case, cfg.adf_lags)
    }));
    sections.push(unit_root_section(panel, SectionId::UnitRootPp, |s| {
        pp_test(s, cfg.pp_case, cfg.pp_bandwidth)
    }));

    let (lag_section, lag_selection) = lag_section(panel, cfg.max_lag);
    sections.push(lag_section);
    let selected = lag_selection.as_ref().map_or(1, |s| s.chosen);
    let var_lag = selected.max(1);
    if let Some(s) = sections.last_mut() {
        if lag_selection.is_none() {
            s.notes.push("lag selection failed; lag 1 is used downstream".into());
        } else if selected == 0 {
            s.notes.push("the criterion chose lag 0; lag 1 is used downstream".into());
        }
    }

    // Lagged differences 1..p, so T = n - p - 1 for the selected lag p.
    let johansen = johansen_test(panel, var_lag, cfg.johansen_case);
    match &johansen {
        Ok(j) => {
            sections.push(johansen_section(j, SectionId::JohansenTrace));
            sections.push(johansen_section(j, SectionId::JohansenMaxeig));
        }
        Err(e) => {
            sections.push(Section::skipped(SectionId::JohansenTrace, skip_reason(e)));
            sections.push(Section::skipped(SectionId::JohansenMaxeig, skip_reason(e)));
        }
    }
    let johansen = johansen.ok();

    let (granger_section, granger, verdicts) = granger_section(panel, var_lag, cfg);
    let mut granger_section = granger_section;
    if johansen.as_ref().is_some_and(|j| j.decided_rank == 0) && granger_section.get_table().is_some() {
        granger_section.notes.push(
            "No cointegration was found, so these tests cannot settle the direction of a long-run link; \
             read them as short-run evidence only."
                .into(),
        );
    }
    sections.push(granger_section);

    Ok(PipelineOutcome {
        report: Report {
            schema_version: SCHEMA_VERSION,
            sample,
            sections,
        },
        lag_selection,
        var_lag,
        johansen,
        granger,
        verdicts,
    })
}

fn summary_section(panel: &Panel) -> Section {
    let stats: Result<Vec<SummaryStats>> = (0..panel.width()).map(|j| summarize(&panel.series(j))).collect();
    let stats = match stats {
        Ok(s) => s,
        Err(e) => return Section::skipped(SectionId::SummaryStatistics, skip_reason(&e)),
    };
    let mut columns = vec!["Statistics".to_string()];
    columns.extend(panel.labels.iter().cloned());
    let row = |label: &str, f: fn(&SummaryStats) -> Cell| Row::new(label, stats.iter().map(f).collect());
    let rows = vec![
        row("Mean", |s| Cell::stat(s.mean)),
        row("Median", |s| Cell::stat(s.median)),
        row("Maximum", |s| Cell::stat(s.maximum)),
        row("Minimum", |s| Cell::stat(s.minimum)),
        row("Std. Dev.", |s| Cell::stat(s.std_dev)),
        row("Skewness", |s| Cell::stat(s.skewness)),
        row("Kurtosis", |s| Cell::stat(s.kurtosis)),
        row("Jarque-Bera", |s| Cell::stat(s.jarque_bera)),
        row("Probability", |s| Cell::stat(s.jb_probability)),
        row("Sum", |s| Cell::stat(s.sum)),
        row("Sum Sq. Dev.", |s| Cell::stat(s.sum_sq_dev)),
        row("Observations", |s| Cell::int(s.observations)),
    ];
    Section::table(SectionId::SummaryStatistics, Table { columns, rows })
}

fn unit_root_section(panel: &Panel, id: SectionId, test: impl Fn(&Series) -> Result<UnitRootResult>) -> Section {
    let name = match id {
        SectionId::UnitRootAdf => "Augmented Dickey Fuller",
        _ => "Phillips-Perron",
    };
    let mut results = Vec::with_capacity(panel.width());
    for j in 0..panel.width() {
        let level = panel.series(j);
        let pair = level.diff(1).and_then(|d| Ok((test(&level)?, test(&d)?)));
        match pair {
            Ok(p) => results.push(p),
            Err(e) => return Section::skipped(id, format!("{}: {}", panel.labels[j], skip_reason(&e))),
        }
    }
    let columns = vec![
        String::new(),
        format!("{name} (Level)"),
        "p-value".to_string(),
        format!("{name} (1st Difference)"),
        "p-value".to_string(),
    ];
    let mut rows: Vec<Row> = panel
        .labels
        .iter()
        .zip(&results)
        .map(|(label, (lv, df))| {
            Row::new(
                label,
                vec![
                    Cell::stat(lv.statistic),
                    Cell::prob(lv.p_value),
                    Cell::stat(df.statistic),
                    Cell::prob(df.p_value),
                ],
            )
        })
        .collect();
    for (label, (lv, df)) in panel.labels.iter().zip(&results) {
        for level in SignificanceLevel::ALL {
            rows.push(Row::new(
                format!("{label} critical {}", level.label()),
                vec![
                    Cell::stat(lv.critical_values.get(level)),
                    Cell::Empty,
                    Cell::stat(df.critical_values.get(level)),
                    Cell::Empty,
                ],
            ));
        }
    }
    let what = match id {
        SectionId::UnitRootAdf => "lagged differences",
        _ => "bandwidth",
    };
    let mut section = Section::table(id, Table { columns, rows });
    for (label, (lv, df)) in panel.labels.iter().zip(&results) {
        section.notes.push(format!(
            "{label}: {what} {} (level, {} obs), {} (1st difference, {} obs); {} case",
            lv.lags_or_bandwidth, lv.effective_obs, df.lags_or_bandwidth, df.effective_obs, lv.deterministic_case
        ));
    }
    section
}

fn lag_section(panel: &Panel, max_lag: usize) -> (Section, Option<LagSelection>) {
    let sel = match select_lag(panel, max_lag) {
        Ok(s) => s,
        Err(e) => return (Section::skipped(SectionId::LagSelection, skip_reason(&e)), None),
    };
    let columns = ["Lag", "LogL", "AIC", "SC"].map(String::from).to_vec();
    let rows = sel
        .rows
        .iter()
        .map(|r| {
            Row::new(
                r.lag.to_string(),
                vec![
                    Cell::stat(r.loglik),
                    Cell::flagged(r.aic, r.lag == sel.aic_choice),
                    Cell::flagged(r.sbc, r.lag == sel.chosen),
                ],
            )
        })
        .collect();
    let mut section = Section::table(SectionId::LagSelection, Table { columns, rows });
    section.notes.push(format!(
        "* marks the criterion minimum; {} observations; lag {} chosen by SC",
        sel.effective_obs, sel.chosen
    ));
    (section, Some(sel))
}

fn hypothesis_label(r: usize) -> String {
    if r == 0 {
        "None".into()
    } else {
        format!("At most {r}")
    }
}

fn johansen_section(j: &JohansenResult, id: SectionId) -> Section {
    let (stat_name, stats, crit, probs, rank) = match id {
        SectionId::JohansenTrace => (
            "Trace Statistic",
            &j.trace_stats,
            &j.trace_critical_5pct,
            &j.trace_p_values,
            j.decided_rank,
        ),
        _ => (
            "Max-Eigen Statistic",
            &j.max_eigen_stats,
            &j.max_eigen_critical_5pct,
            &j.max_eigen_p_values,
            j.max_eigen_rank,
        ),
    };
    let columns = [
        "Hypothesized No. of CE(s)",
        "Eigenvalue",
        stat_name,
        "0.05 Critical Value",
        "Prob.**",
        "Remarks",
    ]
    .map(String::from)
    .to_vec();
    let rows = (0..j.eigenvalues.len())
        .map(|r| {
            let remark = if r == 0 {
                Cell::text(remark_for_rank(rank))
            } else {
                Cell::Empty
            };
            Row::new(
                hypothesis_label(r),
                vec![
                    Cell::stat(j.eigenvalues[r]),
                    Cell::stat(stats[r]),
                    Cell::stat(crit[r]),
                    Cell::prob(probs[r]),
                    remark,
                ],
            )
        })
        .collect();
    let mut section = Section::table(id, Table { columns, rows });
    section.notes.push(format!(
        "{} observations, {} lagged difference(s), {} case; ** gamma approximation to the asymptotic null",
        j.effective_obs, j.lagged_diffs, j.deterministic_case
    ));
    section
}

fn verdict_text(h: Hypothesis, first: &str, second: &str) -> String {
    match h {
        Hypothesis::H1 => format!("H1: {first} causes {second} only"),
        Hypothesis::H2 => format!("H2: {second} causes {first} only"),
        Hypothesis::H3 => format!("H3: causality runs both ways between {first} and {second}"),
        Hypothesis::None => format!("none: no causal relationship between {first} and {second}"),
    }
}

fn granger_section(
    panel: &Panel,
    lag: usize,
    cfg: &PipelineConfig,
) -> (Section, Vec<(GrangerResult, GrangerResult)>, Vec<Hypothesis>) {
    let mut results = Vec::new();
    for i in 0..panel.width() {
        for j in i + 1..panel.width() {
            let pair = panel
                .reorder(&[i, j])
                .and_then(|p| granger_test(&p, lag, cfg.granger_on_levels));
            match pair {
                Ok(r) => results.push(r),
                Err(e) => {
                    let reason = format!("{} / {}: {}", panel.labels[i], panel.labels[j], skip_reason(&e));
                    return (Section::skipped(SectionId::Granger, reason), Vec::new(), Vec::new());
                }
            }
        }
    }
    let columns = ["Null Hypothesis:", "Obs", "F-Statistic", "Prob."].map(String::from).to_vec();
    let mut rows = Vec::with_capacity(2 * results.len());
    let mut verdicts = Vec::with_capacity(results.len());
    let mut notes = vec![format!(
        "lag {} on {}",
        lag,
        if cfg.granger_on_levels { "levels" } else { "first differences" }
    )];
    for pair in &results {
        for r in [&pair.0, &pair.1] {
            rows.push(Row::new(
                r.null_hypothesis(),
                vec![Cell::int(r.obs_used), Cell::stat(r.f_statistic), Cell::prob(r.p_value)],
            ));
        }
        let h = hypothesis_verdict(pair, cfg.alpha);
        verdicts.push(h);
        notes.push(format!(
            "verdict at alpha {}: {}",
            cfg.alpha,
            verdict_text(h, &pair.1.cause, &pair.0.cause)
        ));
    }
    let mut section = Section::table(SectionId::Granger, Table { columns, rows });
    section.notes = notes;
    (section, results, verdicts)
}

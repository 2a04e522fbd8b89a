use std::io::Write;

use crate::error::Result;

use super::config::OutputFormat;
use super::{Cell, Report, Section, SectionBody, Table};

pub fn render(report: &Report, format: OutputFormat, out: &mut dyn Write) -> Result<()> {
    match format {
        OutputFormat::Text => out.write_all(text(report).as_bytes())?,
        OutputFormat::Csv => out.write_all(csv(report).as_bytes())?,
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, report).map_err(std::io::Error::from)?;
            out.write_all(b"\n")?;
        }
    }
    out.flush()?;
    Ok(())
}

pub fn render_to_string(report: &Report, format: OutputFormat) -> Result<String> {
    let mut buf = Vec::new();
    render(report, format, &mut buf)?;
    Ok(String::from_utf8(buf).expect("renderers emit UTF-8"))
}

fn text(report: &Report) -> String {
    let s = &report.sample;
    let mut out = format!(
        "Sample: {} to {} ({} monthly observations)\nVariables: {}\n",
        s.start,
        s.end,
        s.observations,
        s.variables.join(", ")
    );
    for section in &report.sections {
        out.push('\n');
        text_section(section, &mut out);
    }
    out
}

fn text_section(section: &Section, out: &mut String) {
    out.push_str(&section.title);
    out.push('\n');
    out.push_str(&"=".repeat(section.title.chars().count()));
    out.push('\n');
    match &section.body {
        SectionBody::Ok { table } => text_table(table, out),
        SectionBody::Skipped { reason } => {
            out.push_str("Skipped: ");
            out.push_str(reason);
            out.push('\n');
        }
    }
    for note in &section.notes {
        out.push_str("Note: ");
        out.push_str(note);
        out.push('\n');
    }
}

fn text_table(table: &Table, out: &mut String) {
    let grid: Vec<Vec<String>> = table
        .rows
        .iter()
        .map(|r| {
            std::iter::once(r.label.clone())
                .chain(r.cells.iter().map(Cell::display))
                .collect()
        })
        .collect();
    let ncols = table.columns.len().max(grid.iter().map(Vec::len).max().unwrap_or(0));
    let mut widths = vec![0; ncols];
    for line in std::iter::once(&table.columns).chain(&grid) {
        for (w, c) in widths.iter_mut().zip(line) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut emit = |line: &[String]| {
        let mut s = String::new();
        for (i, w) in widths.iter().enumerate() {
            let c = line.get(i).map_or("", String::as_str);
            if i == 0 {
                s.push_str(&format!("{c:<w$}"));
            } else {
                s.push_str(&format!("  {c:>w$}"));
            }
        }
        out.push_str(s.trim_end());
        out.push('\n');
    };
    emit(&table.columns);
    for line in &grid {
        emit(line);
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn csv_line(fields: impl IntoIterator<Item = String>) -> String {
    let mut line = fields.into_iter().map(|f| csv_field(&f)).collect::<Vec<_>>().join(",");
    line.push('\n');
    line
}

/// Full precision so the stream can be re-read without loss.
fn csv_cell(c: &Cell) -> String {
    match c {
        Cell::Number { value, .. } => format!("{value}"),
        Cell::Integer { value } => value.to_string(),
        Cell::Text { value } => value.clone(),
        Cell::Empty => String::new(),
    }
}

fn csv(report: &Report) -> String {
    let s = &report.sample;
    let mut out = csv_line([
        "#sample".to_string(),
        s.start.clone(),
        s.end.clone(),
        s.observations.to_string(),
    ]);
    for section in &report.sections {
        out.push_str(&csv_line(["#section".to_string(), section.id.key().to_string()]));
        match &section.body {
            SectionBody::Ok { table } => {
                out.push_str(&csv_line(table.columns.iter().cloned()));
                for row in &table.rows {
                    out.push_str(&csv_line(
                        std::iter::once(row.label.clone()).chain(row.cells.iter().map(csv_cell)),
                    ));
                }
            }
            SectionBody::Skipped { reason } => {
                out.push_str(&csv_line(["#skipped".to_string(), reason.clone()]));
            }
        }
        for note in &section.notes {
            out.push_str(&csv_line(["#note".to_string(), note.clone()]));
        }
    }
    out
}

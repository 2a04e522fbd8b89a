//! Report tables, pipeline orchestration and rendering.

mod config;
mod pipeline;
mod render;

pub use config::{InputSpec, OutputFormat, PipelineConfig};
pub use pipeline::{build_report, load_panel, run_pipeline, PipelineOutcome};
pub use render::{render, render_to_string};

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

/// Display precision for test statistics and descriptive values.
pub const STAT_DECIMALS: u8 = 6;
/// Display precision for probabilities.
pub const PROB_DECIMALS: u8 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SectionId {
    SummaryStatistics,
    Correlation,
    UnitRootAdf,
    UnitRootPp,
    LagSelection,
    JohansenTrace,
    JohansenMaxeig,
    Granger,
}

impl SectionId {
    pub const ALL: [SectionId; 8] = [
        SectionId::SummaryStatistics,
        SectionId::Correlation,
        SectionId::UnitRootAdf,
        SectionId::UnitRootPp,
        SectionId::LagSelection,
        SectionId::JohansenTrace,
        SectionId::JohansenMaxeig,
        SectionId::Granger,
    ];

    pub fn key(self) -> &'static str {
        match self {
            SectionId::SummaryStatistics => "summary_statistics",
            SectionId::Correlation => "correlation",
            SectionId::UnitRootAdf => "unit_root_adf",
            SectionId::UnitRootPp => "unit_root_pp",
            SectionId::LagSelection => "lag_selection",
            SectionId::JohansenTrace => "johansen_trace",
            SectionId::JohansenMaxeig => "johansen_maxeig",
            SectionId::Granger => "granger",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            SectionId::SummaryStatistics => "Summary Statistics",
            SectionId::Correlation => "Correlation Matrix",
            SectionId::UnitRootAdf => "Unit Root Analysis (ADF test)",
            SectionId::UnitRootPp => "Unit Root Analysis (Phillips-Perron test)",
            SectionId::LagSelection => "VAR Lag Order Selection Criteria",
            SectionId::JohansenTrace => "Cointegration Rank Test (Trace)",
            SectionId::JohansenMaxeig => "Cointegration Rank Test (Maximum Eigenvalue)",
            SectionId::Granger => "Pairwise Granger Causality Tests",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Cell {
    Number {
        value: f64,
        decimals: u8,
        /// Marks the preferred entry, rendered with a trailing `*`.
        #[serde(default, skip_serializing_if = "std::ops::Not::not")]
        flag: bool,
    },
    Integer {
        value: i64,
    },
    Text {
        value: String,
    },
    Empty,
}

impl Cell {
    pub fn stat(value: f64) -> Self {
        Cell::Number {
            value,
            decimals: STAT_DECIMALS,
            flag: false,
        }
    }

    pub fn prob(value: f64) -> Self {
        Cell::Number {
            value,
            decimals: PROB_DECIMALS,
            flag: false,
        }
    }

    pub fn flagged(value: f64, flag: bool) -> Self {
        Cell::Number {
            value,
            decimals: STAT_DECIMALS,
            flag,
        }
    }

    pub fn int(value: usize) -> Self {
        Cell::Integer { value: value as i64 }
    }

    pub fn text(value: impl Into<String>) -> Self {
        Cell::Text { value: value.into() }
    }

    /// Text as shown in the plain-text table.
    pub fn display(&self) -> String {
        match self {
            Cell::Number { value, decimals, flag } => {
                let mut s = format!("{:.*}", *decimals as usize, value);
                if *flag {
                    s.push('*');
                }
                s
            }
            Cell::Integer { value } => value.to_string(),
            Cell::Text { value } => value.clone(),
            Cell::Empty => String::new(),
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Cell::Number { value, .. } => Some(*value),
            Cell::Integer { value } => Some(*value as f64),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub label: String,
    pub cells: Vec<Cell>,
}

impl Row {
    pub fn new(label: impl Into<String>, cells: Vec<Cell>) -> Self {
        Self {
            label: label.into(),
            cells,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    /// Header for the label column followed by one header per cell column.
    pub columns: Vec<String>,
    pub rows: Vec<Row>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum SectionBody {
    Ok { table: Table },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Section {
    pub id: SectionId,
    pub title: String,
    #[serde(flatten)]
    pub body: SectionBody,
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Section {
    pub fn table(id: SectionId, table: Table) -> Self {
        Self {
            id,
            title: id.title().to_string(),
            body: SectionBody::Ok { table },
            notes: Vec::new(),
        }
    }

    pub fn skipped(id: SectionId, reason: impl Into<String>) -> Self {
        Self {
            id,
            title: id.title().to_string(),
            body: SectionBody::Skipped { reason: reason.into() },
            notes: Vec::new(),
        }
    }

    pub fn get_table(&self) -> Option<&Table> {
        match &self.body {
            SectionBody::Ok { table } => Some(table),
            SectionBody::Skipped { .. } => None,
        }
    }

    pub fn skip_reason(&self) -> Option<&str> {
        match &self.body {
            SectionBody::Skipped { reason } => Some(reason),
            SectionBody::Ok { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleInfo {
    pub start: String,
    pub end: String,
    pub observations: usize,
    pub variables: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub sample: SampleInfo,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn section(&self, id: SectionId) -> Option<&Section> {
        self.sections.iter().find(|s| s.id == id)
    }
}

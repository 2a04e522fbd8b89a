use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::series::DEFAULT_DATE_FORMAT;
use crate::unit_root::{Bandwidth, DeterministicCase, LagSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "text" | "txt" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::Config(format!("unknown output format {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputSpec {
    pub name: String,
    pub path: PathBuf,
}

impl FromStr for InputSpec {
    type Err = Error;

    /// `NAME=PATH`
    fn from_str(s: &str) -> Result<Self> {
        match s.split_once('=') {
            Some((name, path)) if !name.trim().is_empty() && !path.trim().is_empty() => Ok(InputSpec {
                name: name.trim().to_string(),
                path: PathBuf::from(path.trim()),
            }),
            _ => Err(Error::Config(format!("input must be NAME=PATH, got {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub inputs: Vec<InputSpec>,
    pub date_format: String,
    pub max_lag: usize,
    pub adf_case: DeterministicCase,
    pub adf_lags: LagSpec,
    pub pp_case: DeterministicCase,
    pub pp_bandwidth: Bandwidth,
    pub johansen_case: DeterministicCase,
    pub alpha: f64,
    pub granger_on_levels: bool,
    pub format: OutputFormat,
    pub out: Option<PathBuf>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        Self {
            inputs: Vec::new(),
            date_format: DEFAULT_DATE_FORMAT.to_string(),
            max_lag: 5,
            adf_case: DeterministicCase::Constant,
            adf_lags: LagSpec::default(),
            pp_case: DeterministicCase::Constant,
            pp_bandwidth: Bandwidth::Auto,
            johansen_case: DeterministicCase::Constant,
            alpha: 0.05,
            granger_on_levels: true,
            format: OutputFormat::Text,
            out: None,
        }
    }
}

fn parse_num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{key}: cannot parse {value:?}")))
}

fn parse_auto_or<T: FromStr>(key: &str, value: &str) -> Result<Option<T>> {
    if value.trim().eq_ignore_ascii_case("auto") {
        Ok(None)
    } else {
        parse_num(key, value).map(Some)
    }
}

impl PipelineConfig {
    /// Apply one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim() {
            "input" => self.inputs.push(value.parse()?),
            "date_format" => self.date_format = value.to_string(),
            "max_lag" => self.max_lag = parse_num(key, value)?,
            "alpha" => self.alpha = parse_num(key, value)?,
            "adf_case" => self.adf_case = value.parse()?,
            "pp_case" => self.pp_case = value.parse()?,
            "johansen_case" => self.johansen_case = value.parse()?,
            "adf_lags" => {
                self.adf_lags = match parse_auto_or(key, value)? {
                    Some(k) => LagSpec::Fixed(k),
                    None => LagSpec::Auto { max: None },
                }
            }
            "pp_bandwidth" => {
                self.pp_bandwidth = match parse_auto_or(key, value)? {
                    Some(q) => Bandwidth::Fixed(q),
                    None => Bandwidth::Auto,
                }
            }
            "granger" => {
                self.granger_on_levels = match value {
                    "levels" => true,
                    "diffs" | "differences" => false,
                    other => return Err(Error::Config(format!("granger: expected levels or diffs, got {other:?}"))),
                }
            }
            "format" => self.format = value.parse()?,
            "out" => self.out = Some(PathBuf::from(value)),
            other => return Err(Error::Config(format!("unknown key {other:?}"))),
        }
        Ok(())
    }

    /// Parse a config file body: one `key = value` per line, `#` starts a comment.
    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", i + 1)))?;
            cfg.set(key, value)
                .map_err(|e| Error::Config(format!("line {}: {e}", i + 1)))?;
        }
        Ok(cfg)
    }

    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_text(&std::fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::Config(format!("alpha {} outside (0, 1)", self.alpha)));
        }
        Ok(())
    }

    pub fn validate_inputs(&self) -> Result<()> {
        if self.inputs.len() < 2 {
            return Err(Error::Config(format!(
                "at least two input series are required, got {}",
                self.inputs.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_file_parsing() {
        let cfg = PipelineConfig::from_text(
            "# demo\ninput = gold=data/gold.csv\ninput = nepse=data/nepse.csv\nmax_lag = 4 # small\n\
             alpha=0.1\ngranger = diffs\nformat = json\nadf_lags = 2\npp_bandwidth = auto\n",
        )
        .unwrap();
        assert_eq!(cfg.inputs.len(), 2);
        assert_eq!(cfg.inputs[1].name, "nepse");
        assert_eq!(cfg.max_lag, 4);
        assert_eq!(cfg.alpha, 0.1);
        assert!(!cfg.granger_on_levels);
        assert_eq!(cfg.format, OutputFormat::Json);
        assert_eq!(cfg.adf_lags, LagSpec::Fixed(2));
        assert_eq!(cfg.pp_bandwidth, Bandwidth::Auto);
    }

    #[test]
    fn config_errors() {
        assert!(PipelineConfig::from_text("bogus = 1").is_err());
        assert!(PipelineConfig::from_text("max_lag").is_err());
        assert!(PipelineConfig::from_text("input = nopath").is_err());
        let mut cfg = PipelineConfig::default();
        cfg.alpha = 1.5;
        assert!(cfg.validate().is_err());
        assert!(PipelineConfig::default().validate_inputs().is_err());
    }
}

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use econ_core::report::{build_report, load_panel, render, InputSpec, OutputFormat, PipelineConfig, Report, SectionId};
use econ_core::synth::{cointegrated_pair, one_way_causal_pair, random_walk_pair};
use econ_core::{Panel, RawSeries};

/// Time-series econometrics from the command line.
#[derive(Parser, Debug)]
#[command(name = "econ", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Descriptive statistics with Jarque-Bera normality
    Summary(Common),
    /// Pearson correlation matrix
    Corr(Common),
    /// ADF and Phillips-Perron tests at level and first difference
    Unitroot(Common),
    /// VAR lag order selection
    Lagselect(Common),
    /// Johansen trace and maximum-eigenvalue rank tests
    Johansen(Common),
    /// Pairwise Granger causality
    Granger(Common),
    /// Every table in order
    Pipeline(Common),
    /// Write a seeded demo dataset as CSV files
    Synth(SynthArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Demo {
    /// Two independent random walks
    Independent,
    /// A cointegrated pair with ratio (1, -2)
    Cointegrated,
    /// x white noise, y driven by lagged x
    Causal,
}

impl Demo {
    fn default_seed(self) -> u64 {
        match self {
            Demo::Independent => 16,
            Demo::Cointegrated => 5,
            Demo::Causal => 18,
        }
    }

    fn panel(self, length: usize, seed: Option<u64>) -> econ_core::Result<Panel> {
        let seed = seed.unwrap_or(self.default_seed());
        match self {
            Demo::Independent => random_walk_pair(length, seed),
            Demo::Cointegrated => cointegrated_pair(2.0, 1.0, length, seed),
            Demo::Causal => one_way_causal_pair(0.8, length, seed),
        }
    }
}

const DEMO_LENGTH: usize = 500;

#[derive(Args, Debug)]
struct Common {
    /// Input series as NAME=PATH; repeat once per variable
    #[arg(long, value_name = "NAME=PATH")]
    input: Vec<InputSpec>,
    /// key = value config file; flags override its settings
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// chrono pattern for the date column
    #[arg(long, value_name = "PATTERN")]
    date_format: Option<String>,
    #[arg(long, value_name = "N")]
    max_lag: Option<usize>,
    #[arg(long, value_name = "P")]
    alpha: Option<f64>,
    /// Run Granger tests on levels
    #[arg(long, conflicts_with = "diffs")]
    levels: bool,
    /// Run Granger tests on first differences
    #[arg(long)]
    diffs: bool,
    /// none, constant or constant_trend
    #[arg(long, value_name = "CASE")]
    adf_case: Option<String>,
    #[arg(long, value_name = "CASE")]
    pp_case: Option<String>,
    #[arg(long, value_name = "CASE")]
    johansen_case: Option<String>,
    /// Lagged differences in the ADF regression, or auto
    #[arg(long, value_name = "N|auto")]
    adf_lags: Option<String>,
    /// Bartlett bandwidth for Phillips-Perron, or auto
    #[arg(long, value_name = "N|auto")]
    pp_bandwidth: Option<String>,
    #[arg(long, value_name = "text|csv|json")]
    format: Option<OutputFormat>,
    /// Write to a file instead of standard output
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Analyse a built-in synthetic dataset instead of input files
    #[arg(long, value_enum, conflicts_with = "input")]
    demo: Option<Demo>,
    /// Seed for --demo
    #[arg(long, requires = "demo")]
    seed: Option<u64>,
    /// Length of the --demo series
    #[arg(long, requires = "demo", default_value_t = DEMO_LENGTH)]
    length: usize,
}

#[derive(Args, Debug)]
struct SynthArgs {
    #[arg(long, value_enum, default_value_t = Demo::Independent)]
    demo: Demo,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = DEMO_LENGTH)]
    length: usize,
    /// Output directory
    #[arg(long, value_name = "DIR", default_value = ".")]
    out: PathBuf,
}

/// Failure classes mapped to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Data(anyhow::Error),
}

impl Common {
    fn config(&self) -> Result<PipelineConfig, Failure> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading config {}", path.display()))
                    .map_err(Failure::Usage)?;
                PipelineConfig::from_text(&text).map_err(|e| Failure::Usage(e.into()))?
            }
            None => PipelineConfig::default(),
        };
        if !self.input.is_empty() {
            cfg.inputs = self.input.clone();
        }
        let mut set = |key: &str, value: Option<String>| -> Result<(), Failure> {
            match value {
                Some(v) => cfg.set(key, &v).map_err(|e| Failure::Usage(e.into())),
                None => Ok(()),
            }
        };
        set("date_format", self.date_format.clone())?;
        set("max_lag", self.max_lag.map(|v| v.to_string()))?;
        set("alpha", self.alpha.map(|v| v.to_string()))?;
        set("adf_case", self.adf_case.clone())?;
        set("pp_case", self.pp_case.clone())?;
        set("johansen_case", self.johansen_case.clone())?;
        set("adf_lags", self.adf_lags.clone())?;
        set("pp_bandwidth", self.pp_bandwidth.clone())?;
        if self.levels {
            cfg.granger_on_levels = true;
        }
        if self.diffs {
            cfg.granger_on_levels = false;
        }
        if let Some(f) = self.format {
            cfg.format = f;
        }
        if let Some(out) = &self.out {
            cfg.out = Some(out.clone());
        }
        cfg.validate().map_err(|e| Failure::Usage(e.into()))?;
        if self.demo.is_none() {
            cfg.validate_inputs().map_err(|e| Failure::Usage(e.into()))?;
        }
        Ok(cfg)
    }

    fn panel(&self, cfg: &PipelineConfig) -> Result<Panel, Failure> {
        match self.demo {
            Some(demo) => demo.panel(self.length, self.seed).map_err(|e| Failure::Usage(e.into())),
            None => load_panel(cfg).map_err(|e| Failure::Data(e.into())),
        }
    }
}

fn sections_for(command: &Command) -> &'static [SectionId] {
    use SectionId::*;
    match command {
        Command::Summary(_) => &[SummaryStatistics],
        Command::Corr(_) => &[Correlation],
        Command::Unitroot(_) => &[UnitRootAdf, UnitRootPp],
        Command::Lagselect(_) => &[LagSelection],
        Command::Johansen(_) => &[JohansenTrace, JohansenMaxeig],
        Command::Granger(_) => &[Granger],
        Command::Pipeline(_) | Command::Synth(_) => &SectionId::ALL,
    }
}

fn write_output(report: &Report, cfg: &PipelineConfig) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => {
            let mut file = io::BufWriter::new(
                fs::File::create(path).with_context(|| format!("creating {}", path.display()))?,
            );
            render(report, cfg.format, &mut file)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            render(report, cfg.format, &mut lock)?;
        }
    }
    Ok(())
}

fn analyse(command: &Command, common: &Common) -> Result<(), Failure> {
    let cfg = common.config()?;
    let panel = common.panel(&cfg)?;
    let outcome = build_report(&panel, &cfg).map_err(|e| Failure::Data(e.into()))?;
    let mut report = outcome.report;
    let wanted = sections_for(command);
    report.sections.retain(|s| wanted.contains(&s.id));
    write_output(&report, &cfg).map_err(Failure::Data)
}

fn synth(args: &SynthArgs) -> Result<(), Failure> {
    let panel = args.demo.panel(args.length, args.seed).map_err(|e| Failure::Usage(e.into()))?;
    write_demo(&panel, &args.out).map_err(Failure::Data)
}

/// One `date,value` file per column, one observation per month.
fn write_demo(panel: &Panel, dir: &Path) -> anyhow::Result<()> {
    fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
    let dates: Vec<_> = panel.periods().into_iter().map(|m| m.first_day()).collect();
    let stdout = io::stdout();
    let mut lock = stdout.lock();
    for (j, label) in panel.labels.iter().enumerate() {
        let points = dates.iter().copied().zip(panel.column(j)).collect();
        let mut raw = RawSeries::new(label.clone(), points)?;
        raw.header = Some(format!("date,{label}"));
        let path = dir.join(format!("{label}.csv"));
        fs::write(&path, raw.to_csv(econ_core::series::DEFAULT_DATE_FORMAT))
            .with_context(|| format!("writing {}", path.display()))?;
        writeln!(lock, "{}", path.display())?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    match &cli.command {
        Command::Synth(args) => synth(args),
        Command::Summary(c)
        | Command::Corr(c)
        | Command::Unitroot(c)
        | Command::Lagselect(c)
        | Command::Johansen(c)
        | Command::Granger(c)
        | Command::Pipeline(c) => analyse(&cli.command, c),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            eprintln!("run `econ help` for usage");
            ExitCode::from(1)
        }
        Err(Failure::Data(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

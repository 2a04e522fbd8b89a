//! Seeded synthetic data.
//!
//! The generator is a plain 64-bit linear congruential recurrence so that any
//! implementation can reproduce the streams exactly:
//!
//! ```text
//! state' = 6364136223846793005 * state + 1442695040888963407  (mod 2^64)
//! uniform = state' / 2^64
//! ```
//!
//! Normals come from Box-Muller on consecutive uniform pairs, cosine branch
//! first.

use crate::error::{Error, Result};
use crate::numeric::Matrix;
use crate::series::{Month, Panel, Series};

pub const LCG_MULTIPLIER: u64 = 6_364_136_223_846_793_005;
pub const LCG_INCREMENT: u64 = 1_442_695_040_888_963_407;

const TWO_POW_NEG_64: f64 = 1.0 / 18_446_744_073_709_551_616.0;

#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
    spare_normal: Option<f64>,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            state: seed,
            spare_normal: None,
        }
    }

    pub fn state(&self) -> u64 {
        self.state
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self
            .state
            .wrapping_mul(LCG_MULTIPLIER)
            .wrapping_add(LCG_INCREMENT);
        self.state
    }

    /// Uniform draw in `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        let u = self.next_u64() as f64 * TWO_POW_NEG_64;
        // States within 2^10 of 2^64 round up to exactly 1.0.
        if u >= 1.0 {
            1.0 - f64::EPSILON / 2.0
        } else {
            u
        }
    }

    /// Standard normal draw.
    pub fn normal(&mut self) -> f64 {
        if let Some(z) = self.spare_normal.take() {
            return z;
        }
        let u1 = self.uniform().max(TWO_POW_NEG_64);
        let u2 = self.uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let angle = 2.0 * std::f64::consts::PI * u2;
        self.spare_normal = Some(r * angle.sin());
        r * angle.cos()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProcessKind {
    WhiteNoise,
    RandomWalk,
    Ar1 { phi: f64 },
    /// `x_t = sum_j A_j x_{t-j} + e_t` started from zero. Coefficient matrices
    /// need not be stable, so `A_1 = I` yields independent random walks.
    Var { coefficients: Vec<Matrix> },
    /// Columns `[y, x]` with `w` a random walk, `x = w + s*e`, `y = beta*w + s*n`.
    CointegratedPair { beta: f64, noise_scale: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProcessSpec {
    pub kind: ProcessKind,
    pub length: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Generated {
    Series(Series),
    Panel(Panel),
}

impl Generated {
    pub fn into_series(self) -> Option<Series> {
        match self {
            Generated::Series(s) => Some(s),
            Generated::Panel(_) => None,
        }
    }

    pub fn into_panel(self) -> Option<Panel> {
        match self {
            Generated::Panel(p) => Some(p),
            Generated::Series(_) => None,
        }
    }
}

/// First month of every generated sample.
pub fn synthetic_start() -> Month {
    Month { year: 2000, month: 1 }
}

impl ProcessSpec {
    pub fn new(kind: ProcessKind, length: usize, seed: u64) -> Self {
        Self { kind, length, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.length < 10 {
            return Err(Error::InvalidSpec(format!("length {} below 10", self.length)));
        }
        match &self.kind {
            ProcessKind::Ar1 { phi } if !(phi.abs() < 1.0) => {
                Err(Error::InvalidSpec(format!("ar1 coefficient {phi} is not stationary")))
            }
            ProcessKind::Var { coefficients } => {
                let m = coefficients.first().map_or(0, Matrix::rows);
                if m < 2 {
                    return Err(Error::InvalidSpec("var needs at least one m x m matrix, m >= 2".into()));
                }
                if coefficients.iter().any(|a| a.rows() != m || a.cols() != m) {
                    return Err(Error::InvalidSpec("var coefficient matrices differ in shape".into()));
                }
                Ok(())
            }
            ProcessKind::CointegratedPair { beta, noise_scale }
                if !beta.is_finite() || !noise_scale.is_finite() || *noise_scale < 0.0 =>
            {
                Err(Error::InvalidSpec("cointegrated pair needs finite beta and noise scale >= 0".into()))
            }
            _ => Ok(()),
        }
    }
}

pub fn generate(spec: &ProcessSpec) -> Result<Generated> {
    spec.validate()?;
    let mut rng = Rng::new(spec.seed);
    let n = spec.length;
    let start = synthetic_start();
    let out = match &spec.kind {
        ProcessKind::WhiteNoise => {
            Generated::Series(Series::new("white_noise", start, (0..n).map(|_| rng.normal()).collect())?)
        }
        ProcessKind::RandomWalk => {
            let mut x = 0.0;
            let values = (0..n)
                .map(|_| {
                    x += rng.normal();
                    x
                })
                .collect();
            Generated::Series(Series::new("random_walk", start, values)?)
        }
        ProcessKind::Ar1 { phi } => {
            let mut x = 0.0;
            let values = (0..n)
                .map(|_| {
                    x = phi * x + rng.normal();
                    x
                })
                .collect();
            Generated::Series(Series::new("ar1", start, values)?)
        }
        ProcessKind::Var { coefficients } => {
            let m = coefficients[0].rows();
            let mut data = Matrix::zeros(n, m);
            for t in 0..n {
                for i in 0..m {
                    let mut v = 0.0;
                    for (j, a) in coefficients.iter().enumerate() {
                        if t > j {
                            let prev = data.row(t - j - 1);
                            v += a.row(i).iter().zip(prev).map(|(c, x)| c * x).sum::<f64>();
                        }
                    }
                    data[(t, i)] = v + rng.normal();
                }
            }
            let labels = (1..=m).map(|i| format!("x{i}")).collect();
            Generated::Panel(Panel::new(labels, start, data)?)
        }
        ProcessKind::CointegratedPair { beta, noise_scale } => {
            let mut w = 0.0;
            let mut y = Vec::with_capacity(n);
            let mut x = Vec::with_capacity(n);
            for _ in 0..n {
                w += rng.normal();
                let e = rng.normal();
                let eta = rng.normal();
                x.push(w + noise_scale * e);
                y.push(beta * w + noise_scale * eta);
            }
            Generated::Panel(Panel::from_columns(vec!["y".into(), "x".into()], start, &[&y, &x])?)
        }
    };
    Ok(out)
}

/// Two independent random walks.
pub fn random_walk_pair(length: usize, seed: u64) -> Result<Panel> {
    let spec = ProcessSpec::new(
        ProcessKind::Var {
            coefficients: vec![Matrix::identity(2)],
        },
        length,
        seed,
    );
    Ok(generate(&spec)?.into_panel().expect("var yields a panel"))
}

/// `[y, x]` sharing one stochastic trend, with `y - beta x` stationary.
pub fn cointegrated_pair(beta: f64, noise_scale: f64, length: usize, seed: u64) -> Result<Panel> {
    let spec = ProcessSpec::new(ProcessKind::CointegratedPair { beta, noise_scale }, length, seed);
    Ok(generate(&spec)?.into_panel().expect("pair yields a panel"))
}

/// Columns `[x, y]` with `x` white noise and `y_t = strength * x_{t-1} + e_t`.
pub fn one_way_causal_pair(strength: f64, length: usize, seed: u64) -> Result<Panel> {
    let a = Matrix::from_rows(&[vec![0.0, 0.0], vec![strength, 0.0]])?;
    let spec = ProcessSpec::new(ProcessKind::Var { coefficients: vec![a] }, length, seed);
    Ok(generate(&spec)?.into_panel().expect("var yields a panel"))
}

/// Independent Gaussian white noise in `m` columns.
pub fn white_noise_panel(m: usize, length: usize, seed: u64) -> Result<Panel> {
    let spec = ProcessSpec::new(
        ProcessKind::Var {
            coefficients: vec![Matrix::zeros(m, m)],
        },
        length,
        seed,
    );
    Ok(generate(&spec)?.into_panel().expect("var yields a panel"))
}

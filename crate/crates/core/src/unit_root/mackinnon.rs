//! MacKinnon response surfaces for Dickey-Fuller type statistics (single series).
//!
//! Critical values: MacKinnon (1991), "Critical Values for Cointegration
//! Tests", table 1 with N = 1, `c(T) = b_inf + b1/T + b2/T^2 + b3/T^3`.
//!
//! P-values: MacKinnon (1994) approximate asymptotic distribution functions,
//! `p = Phi(g0 + g1*tau + g2*tau^2 [+ g3*tau^3])`, with separate polynomials
//! below and above `tau_star`.

use crate::error::{Error, Result};
use crate::numeric::norm_cdf;

use super::{DeterministicCase, SignificanceLevel};

struct Surface {
    b_inf: f64,
    b1: f64,
    b2: f64,
    b3: f64,
}

const fn surface(b_inf: f64, b1: f64, b2: f64) -> Surface {
    Surface { b_inf, b1, b2, b3: 0.0 }
}

// Rows ordered 1%, 5%, 10%.
const NO_CONSTANT: [Surface; 3] = [
    surface(-2.5658, -1.960, -10.04),
    surface(-1.9393, -0.398, 0.0),
    surface(-1.6156, -0.181, 0.0),
];
const CONSTANT: [Surface; 3] = [
    surface(-3.4336, -5.999, -29.25),
    surface(-2.8621, -2.738, -8.36),
    surface(-2.5671, -1.438, -4.48),
];
const CONSTANT_TREND: [Surface; 3] = [
    surface(-3.9638, -8.353, -47.44),
    surface(-3.4126, -4.039, -17.83),
    surface(-3.1279, -2.418, -7.58),
];

fn surfaces(case: DeterministicCase) -> &'static [Surface; 3] {
    match case {
        DeterministicCase::None => &NO_CONSTANT,
        DeterministicCase::Constant => &CONSTANT,
        DeterministicCase::ConstantTrend => &CONSTANT_TREND,
    }
}

/// Finite-sample critical value at `effective_obs` usable observations.
///
/// The surfaces were fitted for samples of 20 or more; smaller samples are
/// still evaluated but the approximation degrades.
pub fn mackinnon_critical(
    case: DeterministicCase,
    level: SignificanceLevel,
    effective_obs: usize,
) -> Result<f64> {
    if effective_obs == 0 {
        return Err(Error::too_short(1, 0));
    }
    let s = &surfaces(case)[level.index()];
    let inv = 1.0 / effective_obs as f64;
    Ok(s.b_inf + inv * (s.b1 + inv * (s.b2 + inv * s.b3)))
}

/// Asymptotic critical value (`T -> infinity`).
pub fn mackinnon_asymptotic(case: DeterministicCase, level: SignificanceLevel) -> f64 {
    surfaces(case)[level.index()].b_inf
}

struct PValueCoefficients {
    tau_min: f64,
    tau_max: f64,
    tau_star: f64,
    small: [f64; 3],
    large: [f64; 4],
}

const P_NO_CONSTANT: PValueCoefficients = PValueCoefficients {
    tau_min: -19.04,
    tau_max: f64::INFINITY,
    tau_star: -1.04,
    small: [0.6344, 1.2378, 3.2496e-2],
    large: [0.4797, 0.93557, -0.06999, 0.033066],
};
const P_CONSTANT: PValueCoefficients = PValueCoefficients {
    tau_min: -18.83,
    tau_max: 2.74,
    tau_star: -1.61,
    small: [2.1659, 1.4412, 3.8269e-2],
    large: [1.7339, 0.93202, -0.12745, -0.010368],
};
const P_CONSTANT_TREND: PValueCoefficients = PValueCoefficients {
    tau_min: -16.18,
    tau_max: 0.7,
    tau_star: -2.89,
    small: [3.2512, 1.6047, 4.9588e-2],
    large: [2.5261, 0.61654, -0.37956, -0.060285],
};

fn horner(coefs: &[f64], x: f64) -> f64 {
    coefs.iter().rev().fold(0.0, |acc, c| acc * x + c)
}

/// Point where the cubic `large` polynomial stops increasing, so the p-value
/// stays monotone up to `tau_max`.
fn large_peak(g: &[f64; 4]) -> f64 {
    // g1 + 2 g2 t + 3 g3 t^2 = 0
    let (a, b, c) = (3.0 * g[3], 2.0 * g[2], g[1]);
    if a >= 0.0 {
        return f64::INFINITY;
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return f64::INFINITY;
    }
    // With a < 0 the derivative is positive between the roots; take the upper one.
    (-b - disc.sqrt()) / (2.0 * a)
}

/// Approximate asymptotic p-value for a Dickey-Fuller t statistic.
pub fn mackinnon_pvalue(statistic: f64, case: DeterministicCase) -> f64 {
    let c = match case {
        DeterministicCase::None => &P_NO_CONSTANT,
        DeterministicCase::Constant => &P_CONSTANT,
        DeterministicCase::ConstantTrend => &P_CONSTANT_TREND,
    };
    if statistic.is_nan() {
        return f64::NAN;
    }
    if statistic > c.tau_max {
        return 1.0;
    }
    if statistic < c.tau_min {
        return 0.0;
    }
    let z = if statistic <= c.tau_star {
        horner(&c.small, statistic)
    } else {
        horner(&c.large, statistic.min(large_peak(&c.large)))
    };
    norm_cdf(z).clamp(0.0, 1.0)
}

mod common;

use common::*;
use econ_core::descriptive::{correlation, summarize_values};
use econ_core::granger::granger_test;
use econ_core::johansen::johansen_test;
use econ_core::numeric::{
    chi2_ppf, chi2_sf, f_sf, log_det, norm_cdf, ols_fit, solve_generalized_eig, symmetric_eigen,
};
use econ_core::series::{aggregate_monthly, align, diff_values, Month, RawSeries, Series};
use econ_core::synth::{cointegrated_pair, generate, random_walk_pair, ProcessKind, ProcessSpec, Rng};
use econ_core::unit_root::{
    adf_values, decide, mackinnon_pvalue, pp_values, Bandwidth, Decision, DeterministicCase, LagSpec,
};
use econ_core::var::fit_var;
use econ_core::Panel;
use proptest::prelude::*;

fn walk(seed: u64, n: usize) -> Vec<f64> {
    generate(&ProcessSpec::new(ProcessKind::RandomWalk, n, seed))
        .unwrap()
        .into_series()
        .unwrap()
        .values
}

fn scaled(p: &Panel, a: f64, b: f64) -> Panel {
    let c0: Vec<f64> = p.column(0).iter().map(|x| a * x).collect();
    let c1: Vec<f64> = p.column(1).iter().map(|x| b * x + 3.0).collect();
    Panel::from_columns(p.labels.clone(), p.start, &[&c0, &c1]).unwrap()
}

fn case() -> impl Strategy<Value = DeterministicCase> {
    prop_oneof![
        Just(DeterministicCase::None),
        Just(DeterministicCase::Constant),
        Just(DeterministicCase::ConstantTrend)
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ols_matches_oracle_and_is_orthogonal(seed in any::<u64>(), t in 8usize..=50, k in 1usize..=5) {
        prop_assume!(t > k + 1);
        let mut rng = Rng::new(seed);
        let x = normal_matrix(&mut rng, t, k);
        let y = normals(&mut rng, t);
        let fit = ols_fit(&x, &y).unwrap();
        let oracle = normal_equations(&x, &y);
        let scale = oracle.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        for (a, b) in fit.coefficients.iter().zip(&oracle) {
            prop_assert!((a - b).abs() <= 1e-9 * scale);
        }
        let e_norm = fit.residuals.iter().map(|e| e * e).sum::<f64>().sqrt();
        for j in 0..k {
            let col = x.column(j);
            let dot: f64 = col.iter().zip(&fit.residuals).map(|(a, b)| a * b).sum();
            let c_norm = col.iter().map(|v| v * v).sum::<f64>().sqrt();
            prop_assert!(dot.abs() <= 1e-8 * c_norm * e_norm.max(f64::MIN_POSITIVE));
        }
        prop_assert!(fit.ssr >= 0.0);
        prop_assert_eq!(fit.df_resid, t - k);
    }

    #[test]
    fn generalized_eigenvalues_of_psd_pair_are_nonnegative(seed in any::<u64>(), m in 1usize..=5) {
        let mut rng = Rng::new(seed);
        let g = normal_matrix(&mut rng, m, m.saturating_sub(1).max(1));
        let a = g.matmul(&g.transpose()).unwrap();
        let b = random_pd(&mut rng, m, 0.2);
        let eig = solve_generalized_eig(&a, &b).unwrap();
        for w in eig.values.windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
        prop_assert!(eig.values.iter().all(|&l| l >= -1e-12 * eig.values[0].abs().max(1.0)));
    }

    #[test]
    fn log_det_is_sum_of_log_eigenvalues(seed in any::<u64>(), m in 1usize..=5) {
        let mut rng = Rng::new(seed);
        let a = random_pd(&mut rng, m, 0.3);
        let eig = symmetric_eigen(&a).unwrap();
        let s: f64 = eig.values.iter().map(|l| l.ln()).sum();
        prop_assert!((log_det(&a).unwrap() - s).abs() < 1e-9 * s.abs().max(1.0));
    }

    #[test]
    fn survival_functions_monotone_and_bounded(x in 0.0f64..80.0, dx in 0.0f64..10.0, d1 in 1usize..20, d2 in 1usize..200) {
        for df in [1usize, 2, 5, d1] {
            let a = chi2_sf(x, df).unwrap();
            let b = chi2_sf(x + dx, df).unwrap();
            prop_assert!((0.0..=1.0).contains(&a) && (0.0..=1.0).contains(&b));
            prop_assert!(b <= a);
        }
        let fa = f_sf(x, d1, d2).unwrap();
        let fb = f_sf(x + dx, d1, d2).unwrap();
        prop_assert!((0.0..=1.0).contains(&fa) && fb <= fa);
        let z = x - 40.0;
        prop_assert!(norm_cdf(z) <= norm_cdf(z + dx));
        prop_assert!((norm_cdf(z) + norm_cdf(-z) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chi2_two_df_is_exponential(x in 0.0f64..100.0) {
        prop_assert!((chi2_sf(x, 2).unwrap() - (-x / 2.0).exp()).abs() < 1e-12);
    }

    #[test]
    fn chi2_quantile_round_trip(p in 0.001f64..0.999, df in 1usize..40) {
        let q = chi2_ppf(p, df).unwrap();
        prop_assert!((chi2_sf(q, df).unwrap() - (1.0 - p)).abs() < 1e-9);
    }

    #[test]
    fn monthly_mean_within_daily_range(seed in any::<u64>(), days in 1usize..90) {
        let mut rng = Rng::new(seed);
        let start = chrono::NaiveDate::from_ymd_opt(2013, 1, 1).unwrap();
        let points: Vec<_> = (0..days)
            .map(|i| (start + chrono::Days::new(i as u64), 50.0 + 10.0 * rng.normal()))
            .collect();
        let s = aggregate_monthly(&RawSeries::new("d", points.clone()).unwrap()).unwrap();
        for (i, v) in s.values.iter().enumerate() {
            let m = s.start.offset(i as i64);
            let vals: Vec<f64> = points.iter().filter(|(d, _)| Month::of(*d) == m).map(|(_, v)| *v).collect();
            let lo = vals.iter().cloned().fold(f64::INFINITY, f64::min);
            let hi = vals.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(lo <= *v && *v <= hi);
        }
    }

    #[test]
    fn align_is_symmetric(o1 in 0i64..30, o2 in 0i64..30, n1 in 5usize..40, n2 in 5usize..40) {
        let base = Month::new(2005, 1).unwrap();
        let a = Series::new("a", base.offset(o1), (0..n1).map(|i| i as f64).collect()).unwrap();
        let b = Series::new("b", base.offset(o2), (0..n2).map(|i| i as f64 * 2.0).collect()).unwrap();
        match (align(&a, &b), align(&b, &a)) {
            (Ok(p), Ok(q)) => {
                prop_assert_eq!(p.periods(), q.periods());
                prop_assert_eq!(p.column(0), q.column(1));
            }
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false, "align succeeded in one order only"),
        }
    }

    #[test]
    fn diff_orders_compose(seed in any::<u64>(), n in 3usize..60) {
        let mut rng = Rng::new(seed);
        let xs = normals(&mut rng, n);
        let d1 = diff_values(&xs, 1).unwrap();
        let d2 = diff_values(&xs, 2).unwrap();
        prop_assert_eq!(d1.len(), n - 1);
        prop_assert_eq!(d2.len(), n - 2);
        prop_assert_eq!(d2, diff_values(&d1, 1).unwrap());
    }

    #[test]
    fn equal_seeds_equal_streams(seed in any::<u64>()) {
        let a = generate(&ProcessSpec::new(ProcessKind::RandomWalk, 50, seed)).unwrap();
        let b = generate(&ProcessSpec::new(ProcessKind::RandomWalk, 50, seed)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn summary_identities_and_affine_invariance(seed in any::<u64>(), n in 8usize..200, a in 0.01f64..100.0, b in -1e3f64..1e3) {
        let mut rng = Rng::new(seed);
        let xs = normals(&mut rng, n);
        let s = summarize_values(&xs).unwrap();
        prop_assert!(s.minimum <= s.median && s.median <= s.maximum);
        prop_assert!((s.sum - s.mean * n as f64).abs() <= 1e-9 * s.sum.abs().max(1.0));
        prop_assert!((s.sum_sq_dev - (n as f64 - 1.0) * s.std_dev * s.std_dev).abs() <= 1e-9 * s.sum_sq_dev);
        prop_assert!((0.0..=1.0).contains(&s.jb_probability));
        let ys: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        let t = summarize_values(&ys).unwrap();
        prop_assert!((s.skewness - t.skewness).abs() < 1e-9);
        prop_assert!((s.kurtosis - t.kurtosis).abs() < 1e-9);
        prop_assert!((s.jarque_bera - t.jarque_bera).abs() < 1e-9 * s.jarque_bera.max(1.0));
    }

    #[test]
    fn correlation_is_symmetric_psd(seed in any::<u64>(), m in 2usize..5, n in 5usize..80) {
        let mut rng = Rng::new(seed);
        let cols: Vec<Vec<f64>> = (0..m).map(|_| normals(&mut rng, n)).collect();
        let refs: Vec<&[f64]> = cols.iter().map(Vec::as_slice).collect();
        let labels = (0..m).map(|i| format!("v{i}")).collect();
        let p = Panel::from_columns(labels, Month::new(2000, 1).unwrap(), &refs).unwrap();
        let r = correlation(&p).unwrap();
        prop_assert_eq!(r.asymmetry(), 0.0);
        for i in 0..m {
            prop_assert_eq!(r[(i, i)], 1.0);
        }
        let eig = symmetric_eigen(&r).unwrap();
        prop_assert!(eig.values.iter().all(|&l| l >= -1e-10));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn adf_is_affine_invariant(seed in any::<u64>(), a in 0.01f64..100.0, b in -1e4f64..1e4, k in 0usize..4) {
        let xs = walk(seed, 150);
        let ys: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        for c in [DeterministicCase::Constant, DeterministicCase::ConstantTrend] {
            let r1 = adf_values(&xs, c, LagSpec::Fixed(k)).unwrap();
            let r2 = adf_values(&ys, c, LagSpec::Fixed(k)).unwrap();
            prop_assert!((r1.statistic - r2.statistic).abs() < 1e-9, "{} vs {}", r1.statistic, r2.statistic);
            let p1 = pp_values(&xs, c, Bandwidth::Auto).unwrap();
            let p2 = pp_values(&ys, c, Bandwidth::Auto).unwrap();
            prop_assert!((p1.statistic - p2.statistic).abs() < 1e-8);
        }
    }

    #[test]
    fn adf_zero_lags_equals_pp_zero_bandwidth(seed in any::<u64>(), c in case()) {
        let xs = walk(seed, 120);
        let adf = adf_values(&xs, c, LagSpec::Fixed(0)).unwrap();
        let pp = pp_values(&xs, c, Bandwidth::Fixed(0)).unwrap();
        prop_assert!((adf.statistic - pp.statistic).abs() < 1e-9);
        prop_assert_eq!(adf.critical_values, pp.critical_values);
    }

    #[test]
    fn unit_root_result_invariants(seed in any::<u64>(), c in case()) {
        let xs = walk(seed, 100);
        let r = adf_values(&xs, c, LagSpec::default()).unwrap();
        let cv = r.critical_values;
        prop_assert!(cv.one < cv.five && cv.five < cv.ten);
        prop_assert!((0.0..=1.0).contains(&r.p_value));
        prop_assert_eq!(r.decision_5pct == Decision::Stationary, r.statistic < cv.five);
    }

    #[test]
    fn mackinnon_pvalue_is_monotone(s in -12.0f64..4.0, ds in 0.0f64..2.0, c in case()) {
        prop_assert!(mackinnon_pvalue(s, c) <= mackinnon_pvalue(s + ds, c));
    }

    #[test]
    fn decision_flips_at_critical_value(cv in -5.0f64..-1.0) {
        prop_assert_eq!(decide(cv - 1e-9, cv), Decision::Stationary);
        prop_assert_eq!(decide(cv, cv), Decision::UnitRoot);
    }

    #[test]
    fn var_log_det_nonincreasing_in_lag(seed in any::<u64>()) {
        let p = random_walk_pair(120, seed).unwrap();
        let max = 4;
        let mut prev = f64::INFINITY;
        for lag in 0..=max {
            let sub = Panel::new(p.labels.clone(), p.start, p.data.select_rows(max - lag..p.len())).unwrap();
            let fit = fit_var(&sub, lag).unwrap();
            prop_assert_eq!(fit.effective_obs, p.len() - max);
            let ld = log_det(&fit.residual_cov).unwrap();
            prop_assert!(ld <= prev + 1e-10);
            prev = ld;
        }
    }

    #[test]
    fn johansen_invariants(seed in any::<u64>(), a in 0.01f64..100.0, b in 0.01f64..100.0, k in 0usize..3) {
        let p = cointegrated_pair(1.5, 1.0, 150, seed).unwrap();
        let r = johansen_test(&p, k, DeterministicCase::Constant).unwrap();
        prop_assert!(r.eigenvalues.iter().all(|&l| (-1e-12..1.0).contains(&l)));
        for i in 0..r.trace_stats.len() {
            let tele: f64 = r.max_eigen_stats[i..].iter().sum();
            prop_assert!((r.trace_stats[i] - tele).abs() < 1e-10 * tele.max(1.0));
        }
        let s = johansen_test(&scaled(&p, a, b), k, DeterministicCase::Constant).unwrap();
        for (x, y) in r.trace_stats.iter().zip(&s.trace_stats) {
            prop_assert!((x - y).abs() < 1e-8 * x.abs().max(1.0), "{x} vs {y}");
        }
    }

    #[test]
    fn granger_invariants(seed in any::<u64>(), lag in 1usize..4, levels in any::<bool>(), a in 0.01f64..100.0, b in 0.01f64..100.0) {
        let p = random_walk_pair(80, seed).unwrap();
        let (r0, r1) = granger_test(&p, lag, levels).unwrap();
        for r in [&r0, &r1] {
            prop_assert!(r.f_statistic >= 0.0);
            prop_assert!(r.ssr_restricted >= r.ssr_unrestricted - 1e-10 * r.ssr_restricted);
            prop_assert!((0.0..=1.0).contains(&r.p_value));
            prop_assert!(r.df.1 >= 1);
        }
        if levels {
            prop_assert_eq!(r0.obs_used, p.len() - lag);
        }
        let swapped = p.reorder(&[1, 0]).unwrap();
        let (q0, q1) = granger_test(&swapped, lag, levels).unwrap();
        prop_assert_eq!(&q0, &r1);
        prop_assert_eq!(&q1, &r0);
        let (s0, s1) = granger_test(&scaled(&p, a, b), lag, levels).unwrap();
        prop_assert!((s0.f_statistic - r0.f_statistic).abs() < 1e-9 * r0.f_statistic.max(1.0));
        prop_assert!((s1.f_statistic - r1.f_statistic).abs() < 1e-9 * r1.f_statistic.max(1.0));
    }

    #[test]
    fn f_pvalue_strictly_decreasing(f in 0.0f64..30.0, df in 0.01f64..5.0, d1 in 1usize..6, d2 in 5usize..100) {
        prop_assert!(f_sf(f + df, d1, d2).unwrap() < f_sf(f, d1, d2).unwrap());
    }
}

/// The spread `y - 2x` picks up an independent random walk scaled by `s`;
/// shrinking `s` strengthens the long-run relation.
#[test]
fn rank_nondecreasing_as_relation_strengthens() {
    let base = cointegrated_pair(2.0, 1.0, 300, 5).unwrap();
    let drift = walk(99, 300);
    let mut prev = 0;
    for s in [3.0, 1.0, 0.5, 0.2, 0.1, 0.05, 0.0] {
        let y: Vec<f64> = base.column(0).iter().zip(&drift).map(|(y, z)| y + s * z).collect();
        let p = Panel::from_columns(base.labels.clone(), base.start, &[&y, &base.column(1)]).unwrap();
        let rank = johansen_test(&p, 1, DeterministicCase::Constant).unwrap().decided_rank;
        assert!(rank >= prev, "scale {s}: rank {rank} after {prev}");
        prev = rank;
    }
    assert_eq!(prev, 1);
}

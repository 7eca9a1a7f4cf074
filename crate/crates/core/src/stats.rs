//! Descriptive statistics, Pearson correlation and the paired t-test, with a
//! Student-t distribution built on the regularized incomplete beta function.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Significance level used for the reported critical values.
pub const SIGNIFICANCE: f64 = 0.05;

pub fn mean(xs: &[f64]) -> Result<f64> {
    if xs.is_empty() {
        return Err(Error::InsufficientData { needed: 1, got: 0 });
    }
    Ok(xs.iter().sum::<f64>() / xs.len() as f64)
}

/// Sample variance (n - 1 denominator).
pub fn variance(xs: &[f64]) -> Result<f64> {
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let m = mean(xs)?;
    Ok(xs.iter().map(|x| (x - m) * (x - m)).sum::<f64>() / (xs.len() - 1) as f64)
}

pub fn pearson(xs: &[f64], ys: &[f64]) -> Result<f64> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    if xs.len() < 2 {
        return Err(Error::InsufficientData {
            needed: 2,
            got: xs.len(),
        });
    }
    let mx = mean(xs)?;
    let my = mean(ys)?;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        let (dx, dy) = (x - mx, y - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::UndefinedCorrelation);
    }
    Ok((sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Tails {
    One,
    Two,
}

/// All cells of a spreadsheet-style paired two-sample t-test table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TTestResult {
    pub mean_a: f64,
    pub mean_b: f64,
    pub var_a: f64,
    pub var_b: f64,
    /// `None` when either column is constant.
    pub pearson: Option<f64>,
    pub n: usize,
    pub hypothesized_mean_difference: f64,
    pub df: usize,
    pub t_stat: f64,
    /// P(T >= |t|).
    pub p_one_tail: f64,
    pub t_crit_one_tail: f64,
    pub p_two_tail: f64,
    pub t_crit_two_tail: f64,
}

/// Paired t-test of `xs - ys` against a zero mean difference.
pub fn paired_t_test(xs: &[f64], ys: &[f64]) -> Result<TTestResult> {
    if xs.len() != ys.len() {
        return Err(Error::LengthMismatch(xs.len(), ys.len()));
    }
    let n = xs.len();
    if n < 2 {
        return Err(Error::InsufficientData { needed: 2, got: n });
    }
    let diffs: Vec<f64> = xs.iter().zip(ys).map(|(x, y)| x - y).collect();
    let sd = variance(&diffs)?.sqrt();
    if sd == 0.0 || !sd.is_finite() {
        return Err(Error::DegenerateTest);
    }
    let t_stat = mean(&diffs)? / (sd / (n as f64).sqrt());
    let df = n - 1;
    let p_one_tail = 1.0 - t_cdf(t_stat.abs(), df as f64);
    let pearson = match pearson(xs, ys) {
        Ok(r) => Some(r),
        Err(Error::UndefinedCorrelation) => None,
        Err(e) => return Err(e),
    };
    Ok(TTestResult {
        mean_a: mean(xs)?,
        mean_b: mean(ys)?,
        var_a: variance(xs)?,
        var_b: variance(ys)?,
        pearson,
        n,
        hypothesized_mean_difference: 0.0,
        df,
        t_stat,
        p_one_tail,
        t_crit_one_tail: t_critical(df as f64, SIGNIFICANCE, Tails::One),
        p_two_tail: (2.0 * p_one_tail).min(1.0),
        t_crit_two_tail: t_critical(df as f64, SIGNIFICANCE, Tails::Two),
    })
}

/// Student-t cumulative distribution function.
pub fn t_cdf(t: f64, df: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t.is_infinite() {
        return if t > 0.0 { 1.0 } else { 0.0 };
    }
    let x = df / (df + t * t);
    let tail = 0.5 * regularized_incomplete_beta(0.5 * df, 0.5, x);
    if t >= 0.0 {
        1.0 - tail
    } else {
        tail
    }
}

/// Critical value at significance `alpha`: the `1 - alpha` quantile for one
/// tail, `1 - alpha/2` for two.
pub fn t_critical(df: f64, alpha: f64, tails: Tails) -> f64 {
    let target = match tails {
        Tails::One => 1.0 - alpha,
        Tails::Two => 1.0 - alpha / 2.0,
    };
    let (mut lo, mut hi) = if target >= 0.5 {
        (0.0, 1.0)
    } else {
        (-1.0, 0.0)
    };
    while t_cdf(hi, df) < target {
        lo = hi;
        hi *= 2.0;
    }
    while t_cdf(lo, df) > target {
        hi = lo;
        lo *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if t_cdf(mid, df) < target {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-12 * hi.abs().max(1.0) {
            break;
        }
    }
    0.5 * (lo + hi)
}

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// ln Γ(x) for x > 0 (Lanczos approximation, g = 7).
pub fn ln_gamma(x: f64) -> f64 {
    if x < 0.5 {
        // reflection
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let mut acc = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + acc.ln()
}

/// I_x(a, b).
pub fn regularized_incomplete_beta(a: f64, b: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    if x >= 1.0 {
        return 1.0;
    }
    let ln_front = ln_gamma(a + b) - ln_gamma(a) - ln_gamma(b) + a * x.ln() + b * (1.0 - x).ln();
    let front = ln_front.exp();
    if x < (a + 1.0) / (a + b + 2.0) {
        front * beta_continued_fraction(a, b, x) / a
    } else {
        1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b
    }
}

/// Continued fraction for the incomplete beta, modified Lentz evaluation.
fn beta_continued_fraction(a: f64, b: f64, x: f64) -> f64 {
    const TINY: f64 = 1e-300;
    const EPS: f64 = 1e-16;
    const MAX_ITER: usize = 10_000;
    let guard = |v: f64| if v.abs() < TINY { TINY } else { v };

    let (qab, qap, qam) = (a + b, a + 1.0, a - 1.0);
    let mut c = 1.0;
    let mut d = 1.0 / guard(1.0 - qab * x / qap);
    let mut h = d;
    for m in 1..=MAX_ITER {
        let m = m as f64;
        let m2 = 2.0 * m;
        let even = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 / guard(1.0 + even * d);
        c = guard(1.0 + even / c);
        h *= d * c;
        let odd = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 / guard(1.0 + odd * d);
        c = guard(1.0 + odd / c);
        let delta = d * c;
        h *= delta;
        if (delta - 1.0).abs() < EPS {
            break;
        }
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use statrs::distribution::{ContinuousCDF, StudentsT};

    #[test]
    fn mean_variance_examples() {
        assert_eq!(mean(&[1.0, 2.0, 3.0]).unwrap(), 2.0);
        assert_eq!(variance(&[1.0, 2.0, 3.0]).unwrap(), 1.0);
        assert_eq!(variance(&[4.0; 5]).unwrap(), 0.0);
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_eq!(mean(&xs).unwrap(), 5.0);
        assert!((variance(&xs).unwrap() - 32.0 / 7.0).abs() < 1e-12);
        assert!(mean(&[]).is_err());
        assert!(variance(&[1.0]).is_err());
    }

    #[test]
    fn pearson_examples() {
        let xs = [1.0, 2.0, 3.0, 4.0, 7.0];
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        assert!((pearson(&xs, &ys).unwrap() - 1.0).abs() < 1e-12);
        let neg: Vec<f64> = xs.iter().map(|x| -x).collect();
        assert!((pearson(&xs, &neg).unwrap() + 1.0).abs() < 1e-12);
        assert!((pearson(&[1.0, 2.0, 3.0], &[1.0, 3.0, 2.0]).unwrap() - 0.5).abs() < 1e-12);
        assert!(matches!(
            pearson(&[1.0, 1.0], &[1.0, 2.0]),
            Err(Error::UndefinedCorrelation)
        ));
        assert!(matches!(
            pearson(&[1.0, 2.0], &[1.0]),
            Err(Error::LengthMismatch(2, 1))
        ));
    }

    #[test]
    fn paired_t_examples() {
        let r = paired_t_test(&[1.0, 2.0, 3.0, 4.0, 5.0], &[0.0; 5]).unwrap();
        assert!((r.t_stat - 18f64.sqrt()).abs() < 1e-12);
        assert_eq!(r.df, 4);
        assert_eq!(r.pearson, None);
        assert!(matches!(
            paired_t_test(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]),
            Err(Error::DegenerateTest)
        ));
        let xs: Vec<f64> = (0..9).map(|i| (i * i) as f64).collect();
        let ys: Vec<f64> = (0..9).map(|i| (3 * i) as f64).collect();
        let r = paired_t_test(&xs, &ys).unwrap();
        assert_eq!(r.df, 8);
        assert!((r.t_crit_one_tail - 1.860).abs() < 0.005);
        assert!((r.t_crit_two_tail - 2.306).abs() < 0.005);
    }

    #[test]
    fn t_cdf_reference_points() {
        for df in [1.0, 2.0, 8.0, 30.0] {
            assert_eq!(t_cdf(0.0, df), 0.5);
        }
        assert!((t_cdf(1.860, 8.0) - 0.95).abs() < 1e-3);
        assert!((t_cdf(2.306, 8.0) - 0.975).abs() < 1e-3);
        // df = 1 is Cauchy: F(t) = 1/2 + atan(t)/pi
        for t in [-5.0, -1.0, 0.3, 2.0, 40.0] {
            let exact = 0.5 + f64::atan(t) / std::f64::consts::PI;
            assert!((t_cdf(t, 1.0) - exact).abs() < 1e-12);
        }
        // df = 2: F(t) = 1/2 + t / (2 sqrt(2 + t^2))
        for t in [-3.0f64, -0.5, 0.7, 6.0] {
            let exact = 0.5 + t / (2.0 * (2.0 + t * t).sqrt());
            assert!((t_cdf(t, 2.0) - exact).abs() < 1e-12);
        }
    }

    #[test]
    fn t_cdf_matches_statrs() {
        for df in [1.0, 3.0, 8.0, 25.0, 120.0] {
            let reference = StudentsT::new(0.0, 1.0, df).unwrap();
            for i in -40..=40 {
                let t = i as f64 * 0.25;
                assert!(
                    (t_cdf(t, df) - reference.cdf(t)).abs() < 1e-8,
                    "df={df} t={t}"
                );
            }
        }
    }

    #[test]
    fn critical_values() {
        assert!((t_critical(8.0, 0.05, Tails::One) - 1.860).abs() < 0.005);
        assert!((t_critical(8.0, 0.05, Tails::Two) - 2.306).abs() < 0.005);
        assert!((t_critical(1.0, 0.05, Tails::Two) - 12.706).abs() < 0.01);
        // two-tail critical value is the one-tail value at alpha / 2
        let a = t_critical(5.0, 0.05, Tails::Two);
        let b = t_critical(5.0, 0.025, Tails::One);
        assert!((a - b).abs() < 1e-9);
    }

    #[test]
    fn ln_gamma_known_values() {
        assert!(ln_gamma(1.0).abs() < 1e-13);
        assert!(ln_gamma(2.0).abs() < 1e-13);
        assert!((ln_gamma(0.5) - std::f64::consts::PI.sqrt().ln()).abs() < 1e-13);
        assert!((ln_gamma(10.0) - 362_880f64.ln()).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn t_cdf_symmetry(t in -50.0f64..50.0, df in 1usize..200) {
            let df = df as f64;
            prop_assert!((t_cdf(-t, df) - (1.0 - t_cdf(t, df))).abs() < 1e-12);
        }

        #[test]
        fn t_cdf_monotone(t in -30.0f64..30.0, dt in 1e-3f64..5.0, df in 1usize..100) {
            let df = df as f64;
            prop_assert!(t_cdf(t + dt, df) >= t_cdf(t, df));
        }

        #[test]
        fn t_critical_round_trip(df in 1usize..100, alpha in 0.001f64..0.5) {
            let df = df as f64;
            let t1 = t_critical(df, alpha, Tails::One);
            prop_assert!((t_cdf(t1, df) - (1.0 - alpha)).abs() < 1e-5);
            let t2 = t_critical(df, alpha, Tails::Two);
            prop_assert!(t2 > t1);
        }

        #[test]
        fn paired_t_antisymmetric(
            xs in proptest::collection::vec(-100.0f64..100.0, 2..20),
            shift in proptest::collection::vec(-10.0f64..10.0, 20),
        ) {
            let ys: Vec<f64> = xs.iter().zip(&shift).map(|(x, s)| x + s).collect();
            if let (Ok(a), Ok(b)) = (paired_t_test(&xs, &ys), paired_t_test(&ys, &xs)) {
                prop_assert!((a.t_stat + b.t_stat).abs() < 1e-9 * a.t_stat.abs().max(1.0));
                prop_assert!((a.p_two_tail - 2.0 * a.p_one_tail.min(1.0 - a.p_one_tail)).abs() < 1e-12);
            }
        }

        #[test]
        fn pearson_affine_invariant(
            xs in proptest::collection::vec(-100.0f64..100.0, 3..20),
            ys in proptest::collection::vec(-100.0f64..100.0, 20),
            scale in 0.01f64..100.0, offset in -100.0f64..100.0,
        ) {
            let ys = &ys[..xs.len()];
            if let Ok(r) = pearson(&xs, ys) {
                let tx: Vec<f64> = xs.iter().map(|x| scale * x + offset).collect();
                prop_assert!((pearson(&tx, ys).unwrap() - r).abs() < 1e-12);
                let ty: Vec<f64> = ys.iter().map(|y| scale * y - offset).collect();
                prop_assert!((pearson(&xs, &ty).unwrap() - r).abs() < 1e-12);
            }
        }
    }
}

//! Small least-squares helpers for the convergence/divergence diagnostics.

/// Ordinary least squares fit `y = a + b x`; returns `(a, b, r2)`.
pub fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len() as f64;
    assert!(n >= 2.0, "need at least two points to fit");
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    let mut syy = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
        syy += (y - my) * (y - my);
    }
    if sxx == 0.0 {
        return (my, 0.0, 1.0);
    }
    let b = sxy / sxx;
    let a = my - b * mx;
    let r2 = if syy == 0.0 { 1.0 } else { sxy * sxy / (sxx * syy) };
    (a, b, r2)
}

/// Fit `y = c x^r` through log-log regression; returns `(c, r, r2)`.
/// Only strictly positive samples participate.
pub fn power_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    let lx: Vec<f64> = pts.iter().map(|p| p.0).collect();
    let ly: Vec<f64> = pts.iter().map(|p| p.1).collect();
    let (a, b, r2) = linear_fit(&lx, &ly);
    (a.exp(), b, r2)
}

/// Fit `y = a + b ln x`; returns `(a, b, r2)`.
pub fn log_fit(xs: &[f64], ys: &[f64]) -> (f64, f64, f64) {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    linear_fit(&lx, ys)
}

/// Verdict of a truncated-sum growth diagnosis.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub enum GrowthDiagnosis {
    /// Cumulative sums stabilize; `tail` estimates the remaining mass.
    Convergent { tail: f64 },
    /// Cumulative sums fit `c n^r` with `r > 0`.
    DivergentPower { rate: f64, r2: f64 },
    /// Cumulative sums fit `a + b ln n` with `b > 0`.
    DivergentLog { slope: f64, r2: f64 },
    Inconclusive,
}

/// Classify cumulative partial sums indexed by level (1-based positions).
///
/// Model selection over the top half of the levels, per the reporting rule:
/// divergence requires R^2 >= 0.99 for the winning growth model.
pub fn diagnose_growth(levels: &[f64], cumulative: &[f64]) -> GrowthDiagnosis {
    assert_eq!(levels.len(), cumulative.len());
    if levels.len() < 4 {
        return GrowthDiagnosis::Inconclusive;
    }
    let half = levels.len() / 2;
    let xs = &levels[half..];
    let ys = &cumulative[half..];

    // Convergence test first: relative growth across the fitted window.
    let first = ys[0];
    let last = *ys.last().unwrap();
    if last > 0.0 && (last - first) / last < 0.02 {
        // Geometric tail extrapolation from the last increments.
        let k = ys.len();
        let tail = if k >= 3 {
            let d1 = (ys[k - 1] - ys[k - 2]).abs();
            let d0 = (ys[k - 2] - ys[k - 3]).abs();
            if d0 > 0.0 && d1 < d0 {
                d1 / (1.0 - d1 / d0)
            } else {
                d1
            }
        } else {
            0.0
        };
        return GrowthDiagnosis::Convergent { tail };
    }

    let (_, rate, r2_pow) = power_fit(xs, ys);
    let (_, slope, r2_log) = log_fit(xs, ys);
    if r2_log >= 0.99 && slope > 0.0 && r2_log >= r2_pow {
        return GrowthDiagnosis::DivergentLog { slope, r2: r2_log };
    }
    if r2_pow >= 0.99 && rate > 0.05 {
        return GrowthDiagnosis::DivergentPower { rate, r2: r2_pow };
    }
    if r2_log >= 0.99 && slope > 0.0 {
        return GrowthDiagnosis::DivergentLog { slope, r2: r2_log };
    }
    GrowthDiagnosis::Inconclusive
}

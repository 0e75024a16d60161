//! Small numerical kernels shared by the physics modules.

pub mod dd;

use serde::Serialize;

use crate::error::{Error, Result};

pub use dd::DoubleDouble;

/// Composite Simpson rule on `[a, b]` with `intervals` (even) panels.
pub fn simpson<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, intervals: usize) -> f64 {
    assert!(
        intervals >= 2 && intervals.is_multiple_of(2),
        "simpson needs an even panel count"
    );
    let h = (b - a) / intervals as f64;
    let mut odd = 0.0;
    let mut even = 0.0;
    for i in 1..intervals {
        let x = a + h * i as f64;
        if i % 2 == 1 {
            odd += f(x);
        } else {
            even += f(x);
        }
    }
    h / 3.0 * (f(a) + f(b) + 4.0 * odd + 2.0 * even)
}

/// Neville tableau for extrapolating `values[i] = A(x_i)` to x = 0 when
/// A is a polynomial in x. With x = h² this is Richardson extrapolation
/// for an even error expansion.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Extrapolation {
    /// `table[i][j]`: estimate from points `i-j..=i`.
    pub table: Vec<Vec<f64>>,
    pub estimate: f64,
    /// `|T[k][k] − T[k−1][k−1]|` for k = 1..n.
    pub residuals: Vec<f64>,
}

pub fn extrapolate_to_zero(xs: &[f64], values: &[f64]) -> Result<Extrapolation> {
    if xs.len() != values.len() || xs.is_empty() {
        return Err(Error::Config(
            "extrapolation needs equally many abscissae and values".into(),
        ));
    }
    let n = xs.len();
    let mut table: Vec<Vec<f64>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(i + 1);
        row.push(values[i]);
        for j in 1..=i {
            let prev = &table[i - 1];
            let denom = xs[i - j] - xs[i];
            if denom == 0.0 {
                return Err(Error::Config("repeated extrapolation abscissa".into()));
            }
            let t = row[j - 1] + (row[j - 1] - prev[j - 1]) * xs[i] / denom;
            row.push(t);
        }
        table.push(row);
    }
    let residuals = (1..n)
        .map(|k| (table[k][k] - table[k - 1][k - 1]).abs())
        .collect();
    Ok(Extrapolation {
        estimate: table[n - 1][n - 1],
        table,
        residuals,
    })
}

/// Ordinary least squares y = a + b·x.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinearFit {
    pub intercept: f64,
    pub slope: f64,
    pub r_squared: f64,
    pub stderr_slope: f64,
}

pub fn linear_fit(xs: &[f64], ys: &[f64]) -> LinearFit {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    // A perfectly flat response is a perfect fit.
    let r_squared = if syy <= f64::EPSILON * my.abs().max(1.0) * n {
        1.0
    } else {
        (1.0 - ssr / syy).clamp(0.0, 1.0)
    };
    let stderr_slope = if xs.len() > 2 {
        (ssr / (n - 2.0) / sxx).sqrt()
    } else {
        f64::NAN
    };
    LinearFit {
        intercept,
        slope,
        r_squared,
        stderr_slope,
    }
}

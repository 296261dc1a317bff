//! Least-squares helpers for the scaling analyses: power-law exponents are
//! read off as log-log slopes, transition points as intercepts of a linear
//! segment of a curve.

use crate::error::{GbecError, Result};

/// Ordinary least-squares line through `(x, y)` points: returns
/// `(slope, intercept)`. Needs at least two distinct abscissae.
pub fn linear_regression(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    if points.len() < 2 {
        return Err(GbecError::InsufficientData {
            needed: 2,
            got: points.len(),
        });
    }
    let n = points.len() as f64;
    let mean_x = points.iter().map(|p| p.0).sum::<f64>() / n;
    let mean_y = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mean_x).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mean_x) * (p.1 - mean_y)).sum();
    if sxx == 0.0 {
        return Err(GbecError::Domain(
            "all abscissae coincide; slope is undefined".into(),
    ));
    }
    let slope = sxy / sxx;
    Ok((slope, mean_y - slope * mean_x))
}

/// Slope of `ln y` against `ln x` — the power-law exponent of `y(x)`.
/// All points must have `x > 0` and `y > 0`.
pub fn log_log_slope(points: &[(f64, f64)]) -> Result<f64> {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| {
            if x > 0.0 && y > 0.0 {
                Ok((x.ln(), y.ln()))
            } else {
                Err(GbecError::Domain(format!(
                    "log-log slope needs positive data, got ({x:e}, {y:e})"
                )))
            }
        })
        .collect::<Result<_>>()?;
    Ok(linear_regression(&logs)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exact_line() {
        let pts: Vec<(f64, f64)> = (0..5).map(|i| (i as f64, 3.0 * i as f64 - 2.0)).collect();
        let (m, b) = linear_regression(&pts).unwrap();
        assert!((m - 3.0).abs() < 1e-14);
        assert!((b + 2.0).abs() < 1e-13);
    }

    #[test]
    fn power_law_exponent() {
        let pts: Vec<(f64, f64)> = (1..6).map(|i| (i as f64, (i as f64).powf(-1.5))).collect();
        assert!((log_log_slope(&pts).unwrap() + 1.5).abs() < 1e-12);
    }

    #[test]
    fn too_few_points() {
        assert!(matches!(
            linear_regression(&[(1.0, 2.0)]),
            Err(GbecError::InsufficientData { needed: 2, got: 1 })
        ));
    }
}

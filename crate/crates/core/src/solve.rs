//! Root bracketing and bisection. Every transcendental equation in this crate
//! is solved on a proven-monotone function, so plain bisection with a checked
//! bracket is both sufficient and unconditionally robust.

use crate::error::{GbecError, Result};

/// Bisection root of `f` on `[lo, hi]`.
///
/// Requires a sign change across the bracket. Runs `max_iter` halvings or
/// until the midpoint stops moving in f64, whichever comes first; returns the
/// final midpoint. `f` is evaluated once per iteration.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, max_iter: usize) -> Result<f64> {
    let (mut lo, mut hi) = (lo, hi);
    let flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() || flo.is_nan() || fhi.is_nan() {
        return Err(GbecError::BracketFailure(format!(
            "f({lo:e}) = {flo:e} and f({hi:e}) = {fhi:e} do not bracket a root"
        )));
    }
    let lo_sign = flo.signum();
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break; // f64 resolution reached
        }
        let fmid = f(mid);
        if fmid == 0.0 {
            return Ok(mid);
        }
        if fmid.signum() == lo_sign {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Bisection on `ln x`: solves `f(x) = 0` for `x` in `[lo, hi]`, `lo > 0`.
///
/// Positive quantities spanning many decades (fugacity parameters, band
/// occupation scales) bisect far better in log space.
pub fn bisect_log<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, max_iter: usize) -> Result<f64> {
    if !(lo > 0.0) || !(hi > lo) {
        return Err(GbecError::Domain(format!(
            "log bisection needs 0 < lo < hi, got [{lo:e}, {hi:e}]"
        )));
    }
    let root = bisect(|u: f64| f(u.exp()), lo.ln(), hi.ln(), max_iter)?;
    Ok(root.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_cubic_root() {
        // t = 1 - t^3 has its root at 0.6823278038280193
        let r = bisect(|t| (1.0 - t * t * t) - t, 0.0, 1.0, 200).unwrap();
        assert!((r - 0.682_327_803_828_019_3).abs() < 1e-14);
    }

    #[test]
    fn log_bisection_spans_decades() {
        let r = bisect_log(|x| x.ln() + 20.0, 1e-12, 1.0, 200).unwrap();
        assert!((r - (-20.0f64).exp()).abs() / r < 1e-12);
    }

    #[test]
    fn rejects_non_bracketing_interval() {
        let err = bisect(|x| x * x + 1.0, -1.0, 1.0, 100).unwrap_err();
        assert!(matches!(err, GbecError::BracketFailure(_)));
    }
}

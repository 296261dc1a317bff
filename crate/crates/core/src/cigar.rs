//! Cigar geometry: a strongly anisotropic harmonic trap (aspect ratio
//! Δ = L_∥/L_⊥ ≫ 1) where condensation happens in two steps. At Tc the
//! longitudinal band of states p_x = p_y = 0 starts filling macroscopically
//! (Type II); only at a lower T₁ does the occupation collapse into the true
//! ground state.
//!
//! Two thermodynamic limits are implemented:
//! - Standard: Δ fixed, N → ∞. The anisotropy parameter K = (N/Δ)^{2/3} then
//!   grows and T₁ → Tc: the two steps merge.
//! - Exponential (BZ): N = ℓ⊥³ e^{γ ℓ⊥²} with γ fixed. K grows only like
//!   ln N and the two-step structure survives the limit.
//!
//! Temperatures are t = T/Tc with Tc/T₀ = ζ(3)^{-1/3} carried explicitly at
//! every conversion.

use crate::bose::{zeta3, AlphaParam};
use crate::error::{GbecError, Result};
use crate::fit::linear_regression;
use crate::solve;

/// Which thermodynamic limit the configuration describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMode {
    Standard,
    Bz,
}

/// Cigar-trap system description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CigarConfig {
    pub n_particles: f64,
    /// Aspect ratio Δ = L_∥/L_⊥ (standard mode).
    pub delta: f64,
    pub limit_mode: LimitMode,
    /// Reduced exponent γ of the exponential limit (BZ mode only).
    pub bz_gamma: Option<f64>,
    /// Order-unity constant c in the ln(cN) of the transition estimate.
    pub c_const: f64,
}

impl CigarConfig {
    pub fn standard(n_particles: f64, delta: f64) -> Result<Self> {
        if !(n_particles >= 2.0) || !(delta >= 1.0) || !n_particles.is_finite() || !delta.is_finite()
        {
            return Err(GbecError::Domain(format!(
                "standard cigar needs N >= 2 and delta >= 1, got N = {n_particles}, delta = {delta}"
            )));
        }
        Ok(Self {
            n_particles,
            delta,
            limit_mode: LimitMode::Standard,
            bz_gamma: None,
            c_const: 1.0,
        })
    }

    pub fn bz(n_particles: f64, bz_gamma: f64) -> Result<Self> {
        if !(n_particles >= 2.0) || !(bz_gamma > 0.0) || !bz_gamma.is_finite() {
            return Err(GbecError::Domain(format!(
                "BZ cigar needs N >= 2 and gamma > 0, got N = {n_particles}, gamma = {bz_gamma}"
            )));
        }
        let (ell, _) = bz_geometry(n_particles, bz_gamma)?;
        Ok(Self {
            n_particles,
            delta: ell * ell * ell_parallel_factor(bz_gamma, ell),
            limit_mode: LimitMode::Bz,
            bz_gamma: Some(bz_gamma),
            c_const: 1.0,
        })
    }

    pub fn with_c(mut self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c <= 1.0) {
            return Err(GbecError::Domain(format!(
                "c must be in (0, 1], got {c}"
            )));
        }
        self.c_const = c;
        Ok(self)
    }

    /// The K parameter under this configuration's limit mode.
    pub fn k_value(&self) -> Result<f64> {
        match self.limit_mode {
            LimitMode::Standard => k_parameter(self.n_particles, self.delta),
            LimitMode::Bz => {
                let g = self.bz_gamma.expect("BZ config carries gamma");
                Ok(bz_geometry(self.n_particles, g)?.1)
            }
        }
    }
}

/// Effective aspect ratio implied by the BZ geometry: Δ = N/ℓ⊥³ · (1/e^{0})…
/// reduces to Δ = N/K^{3/2}; kept as a helper so `CigarConfig::bz` can fill
/// the delta field consistently with K = (N/Δ)^{2/3}.
fn ell_parallel_factor(bz_gamma: f64, ell: f64) -> f64 {
    (bz_gamma * ell * ell).exp() / (ell * ell)
}

/// Summary of the two-step structure at one temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoStepReport {
    pub tc_over_t0: f64,
    pub t1_over_tc: f64,
    pub f0: f64,
    pub fg: f64,
    pub alpha: AlphaParam,
}

/// A solved lower-transition estimate. `merged` flags the root being pushed
/// into t = 1: the lower transition has merged with Tc.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransitionEstimate {
    pub t1_over_tc: f64,
    pub merged: bool,
}

/// A solved ground-state fraction. `microscopic` flags f_g < 1/√N — the
/// ground state no longer holds a macroscopic share.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPoint {
    pub f_g: f64,
    pub microscopic: bool,
}

/// K = (N/Δ)^{2/3}.
pub fn k_parameter(n_particles: f64, delta: f64) -> Result<f64> {
    if !(n_particles > 0.0) || !(delta > 0.0) || !n_particles.is_finite() || !delta.is_finite() {
        return Err(GbecError::Domain(format!(
            "k_parameter needs positive N and delta, got N = {n_particles}, delta = {delta}"
        )));
    }
    Ok((n_particles / delta).powf(2.0 / 3.0))
}

/// Band-edge occupation parameter α = e^{-f₀·(T₀/T)·K} with
/// T₀/T = ζ(3)^{1/3}/t. Underflows gracefully to 0 for large K; use
/// [`alpha_band_log`] when the magnitude itself is needed.
pub fn alpha_band(t: f64, f0: f64, k: f64) -> Result<AlphaParam> {
    AlphaParam::new(alpha_band_log(t, f0, k)?.exp())
}

/// ln α for the band-edge parameter: -f₀·K·ζ(3)^{1/3}/t. Finite even when
/// α itself underflows f64.
pub fn alpha_band_log(t: f64, f0: f64, k: f64) -> Result<f64> {
    if !(t > 0.0 && t < 1.0) || !(0.0..=1.0).contains(&f0) || !(k > 0.0) {
        return Err(GbecError::Domain(format!(
            "alpha_band needs t in (0,1), f0 in [0,1], K > 0; got t = {t}, f0 = {f0}, K = {k}"
        )));
    }
    Ok(-f0 * k * zeta3().powf(1.0 / 3.0) / t)
}

/// Shared root-solve for the lower transition: t = A·(1 - t³) on [0, 1].
/// g(t) = t - A(1-t³) is strictly increasing with g(0) < 0 < g(1), so the
/// root is unique; residual is resolved to f64 limits (≪ 1e-10).
fn solve_t1_cubic(a_coef: f64) -> Result<TransitionEstimate> {
    let root = solve::bisect(|t| t - a_coef * (1.0 - t * t * t), 0.0, 1.0, 200)?;
    Ok(TransitionEstimate {
        t1_over_tc: root.min(1.0),
        merged: root >= 1.0 - 1e-9,
    })
}

/// Lower transition in the standard limit: the self-consistent solution of
/// T₁/Tc = f₀(T₁)·K·ζ(3)^{1/3}/ln(cN).
pub fn t1_standard(n_particles: f64, k: f64, c: f64) -> Result<TransitionEstimate> {
    let a = t1_first_iterate(n_particles, k, c)?;
    solve_t1_cubic(a)
}

/// First iterate of the T₁ self-consistency with f₀ = 1:
/// A = K·ζ(3)^{1/3}/ln(cN).
pub fn t1_first_iterate(n_particles: f64, k: f64, c: f64) -> Result<f64> {
    if !(n_particles >= 2.0) || !(k > 0.0) || !(c > 0.0 && c <= 1.0) {
        return Err(GbecError::Domain(format!(
            "t1_standard needs N >= 2, K > 0, c in (0,1]; got N = {n_particles}, K = {k}, c = {c}"
        )));
    }
    let log_cn = (c * n_particles).ln();
    if log_cn <= 0.0 {
        return Err(GbecError::NoSolution(format!(
            "ln(cN) = {log_cn} is not positive; the transition estimate is undefined"
        )));
    }
    Ok(k * zeta3().powf(1.0 / 3.0) / log_cn)
}

/// Lower transition in the BZ limit: root of t = f₀(t)·ζ(3)^{1/3}/γ.
pub fn t1_bz(bz_gamma: f64) -> Result<TransitionEstimate> {
    if !(bz_gamma > 0.0) || !bz_gamma.is_finite() {
        return Err(GbecError::Domain(format!(
            "t1_bz needs gamma > 0, got {bz_gamma}"
        )));
    }
    solve_t1_cubic(zeta3().powf(1.0 / 3.0) / bz_gamma)
}

/// Ground-state fraction from the self-consistency
///
/// ```text
/// f_g = f₀ + B·ln[(1 - e^{-E}) + e^{-E}/(N f_g + 1)],
/// B = t/(ζ(3)^{1/3} K),   E = K ζ(3)^{1/3}/(t N),
/// ```
///
/// (the argument is grouped so 1 - e^{-E} is computed as -expm1(-E); for the
/// giant N of the limits, E is far below f64 granularity of 1).
///
/// The right side is strictly decreasing in f_g, so the fixed point is
/// unique. Solved by damped iteration from f_g = f₀, halving the damping
/// factor every time the update changes sign. Because the map is decreasing,
/// the sign of the residual also brackets the root, and once the damping has
/// collapsed — the signal that the bare map is far from contracting, which
/// happens on the microscopic branch where its slope is ~ -N·f_g — the solve
/// falls back to bisection on that bracket. Iterates are clamped to [1/N², 1].
pub fn fg_self_consistent(t: f64, n_particles: f64, k: f64) -> Result<FixedPoint> {
    if !(t > 0.0 && t < 1.0) || !(n_particles >= 2.0) || !(k > 0.0) {
        return Err(GbecError::Domain(format!(
            "fg_self_consistent needs t in (0,1), N >= 2, K > 0; got t = {t}, N = {n_particles}, K = {k}"
        )));
    }
    let f0 = 1.0 - t * t * t;
    let b = t / (zeta3().powf(1.0 / 3.0) * k);
    let e_param = k * zeta3().powf(1.0 / 3.0) / (t * n_particles);
    let one_minus = -(-e_param).exp_m1();
    let boltz = (-e_param).exp();
    let map = |x: f64| f0 + b * (one_minus + boltz / (n_particles * x + 1.0)).ln();

    let lo = 1.0 / (n_particles * n_particles);
    let done = |f_g: f64| {
        Ok(FixedPoint {
            f_g,
            microscopic: f_g < 1.0 / n_particles.sqrt(),
        })
    };
    let mut x = f0.clamp(lo, 1.0);
    let mut bracket = (lo, 1.0_f64);
    let mut damping = 1.0_f64;
    let mut prev_delta = 0.0_f64;
    for _ in 0..10_000 {
        let delta = map(x).clamp(lo, 1.0) - x;
        if delta.abs() <= 1e-12 * x {
            return done((x + delta).clamp(lo, 1.0));
        }
        if delta > 0.0 {
            bracket.0 = x;
        } else {
            bracket.1 = x;
        }
        let mid = 0.5 * (bracket.0 + bracket.1);
        if mid == bracket.0 || mid == bracket.1 {
            return done(x); // bracket is one ulp wide: f64 resolution reached
        }
        if delta * prev_delta < 0.0 {
            damping *= 0.5;
        }
        prev_delta = delta;
        x = if damping >= 1e-2 {
            let stepped = x + damping * delta;
            if stepped > bracket.0 && stepped < bracket.1 && stepped != x {
                stepped
            } else {
                mid
            }
        } else {
            mid
        };
    }
    Err(GbecError::NonConvergence {
        iterations: 10_000,
        last: x,
    })
}

/// BZ geometry: solves N = ℓ⊥³ e^{γ ℓ⊥²} for ℓ⊥ (unique, since
/// 3 ln ℓ + γℓ² is strictly increasing) and returns (ℓ⊥, K = ℓ⊥²).
pub fn bz_geometry(n_particles: f64, bz_gamma: f64) -> Result<(f64, f64)> {
    if !(n_particles >= 2.0) || !(bz_gamma > 0.0) || !bz_gamma.is_finite() {
        return Err(GbecError::NoSolution(format!(
            "bz_geometry needs N >= 2 and gamma > 0, got N = {n_particles}, gamma = {bz_gamma}"
        )));
    }
    let log_n = n_particles.ln();
    let hi = (log_n / bz_gamma).sqrt() + 2.0;
    let ell = solve::bisect(
        |l| 3.0 * l.ln() + bz_gamma * l * l - log_n,
        1e-12,
        hi,
        200,
    )?;
    Ok((ell, ell * ell))
}

/// The (ℓ⊥, γ) pair implied by a concrete (N, Δ): ℓ⊥ = (N/Δ)^{1/3} and γ
/// from the density relation N = ℓ⊥³ e^{γ ℓ⊥²}.
pub fn bz_gamma_from_delta(n_particles: f64, delta: f64) -> Result<(f64, f64)> {
    let ell = k_parameter(n_particles, delta)?.sqrt();
    let gamma = (n_particles.ln() - 3.0 * ell.ln()) / (ell * ell);
    Ok((ell, gamma))
}

/// Thermodynamic-limit ground-state fraction in the BZ limit:
/// max(0, (1 - t³) - t·γ/ζ(3)^{1/3}).
pub fn fg_tl_limit(t: f64, bz_gamma: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() || !(bz_gamma > 0.0) {
        return Err(GbecError::Domain(format!(
            "fg_tl_limit needs t >= 0 and gamma > 0, got t = {t}, gamma = {bz_gamma}"
        )));
    }
    Ok(((1.0 - t * t * t) - t * bz_gamma / zeta3().powf(1.0 / 3.0)).max(0.0))
}

/// Occupation fraction n/N of band level p_z at band-edge parameter α:
/// 1/(K ζ(3)^{1/3} p_z / t + N α).
pub fn band_occupation(
    p_z: u64,
    t: f64,
    n_particles: f64,
    k: f64,
    alpha: AlphaParam,
) -> Result<f64> {
    if !(t > 0.0) || !(n_particles >= 1.0) || !(k > 0.0) {
        return Err(GbecError::Domain(format!(
            "band_occupation needs t > 0, N >= 1, K > 0; got t = {t}, N = {n_particles}, K = {k}"
        )));
    }
    let denom = k * zeta3().powf(1.0 / 3.0) * p_z as f64 / t + n_particles * alpha.value();
    Ok(1.0 / denom)
}

/// Reads T₁/Tc off a computed (t, f_g) curve: least-squares line through the
/// quasi-linear shoulder f_g ∈ [0.1, 0.35], extrapolated to f_g = 0.
pub fn t1_from_curve(points: &[(f64, f64)]) -> Result<f64> {
    let seg: Vec<(f64, f64)> = points
        .iter()
        .copied()
        .filter(|&(_, fg)| (0.1..=0.35).contains(&fg))
        .collect();
    if seg.len() < 3 {
        return Err(GbecError::InsufficientData {
            needed: 3,
            got: seg.len(),
        });
    }
    let (slope, intercept) = linear_regression(&seg)?;
    if slope >= 0.0 {
        return Err(GbecError::NoSolution(
            "f_g shoulder is not decreasing in t; no zero crossing to extrapolate".into(),
        ));
    }
    Ok(-intercept / slope)
}

/// Assembles the full two-step summary for a configuration at one t < 1.
pub fn two_step_report(cfg: &CigarConfig, t: f64) -> Result<TwoStepReport> {
    let k = cfg.k_value()?;
    let t1 = match cfg.limit_mode {
        LimitMode::Standard => t1_standard(cfg.n_particles, k, cfg.c_const)?,
        LimitMode::Bz => t1_bz(cfg.bz_gamma.expect("BZ config carries gamma"))?,
    };
    let f0 = (1.0 - t * t * t).max(0.0);
    let fixed = fg_self_consistent(t, cfg.n_particles, k)?;
    Ok(TwoStepReport {
        tc_over_t0: zeta3().powf(-1.0 / 3.0),
        t1_over_tc: t1.t1_over_tc,
        f0,
        fg: fixed.f_g,
        alpha: alpha_band(t, f0, k)?,
    })
}

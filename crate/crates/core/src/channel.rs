//! Channel geometry: a 2D gas confined harmonically in z and periodically in
//! x. Condensation here is Type II — below Tc a whole band of s_x states is
//! macroscopically occupied, not just the ground state.
//!
//! Reduced variables: t = T/Tc with Tc/T₀ = (√π ζ(3/2))^{-2/3}, and the band
//! is parametrized by γ = α L²/a². The box length is tied to the particle
//! number through L/a = √N, which makes every fraction below N-independent;
//! N only re-enters when converting fractions back to densities.

use crate::bose::{coth_band_sum, zeta_3half};
use crate::error::{GbecError, Result};
use crate::fit::log_log_slope;
use crate::solve;
use std::f64::consts::PI;

/// Channel system description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig {
    pub n_particles: f64,
}

impl ChannelConfig {
    pub fn new(n_particles: f64) -> Result<Self> {
        if n_particles.is_finite() && n_particles >= 1.0 {
            Ok(Self { n_particles })
        } else {
            Err(GbecError::Domain(format!(
                "particle number must be >= 1, got {n_particles}"
            )))
        }
    }
}

/// Tc/T₀ = (√π ζ(3/2))^{-2/3}.
pub fn critical_temperature_channel() -> f64 {
    (PI.sqrt() * zeta_3half()).powf(-2.0 / 3.0)
}

/// Band (condensate) fraction at t = T/Tc: max(0, 1 - t^{3/2}).
pub fn condensate_fraction_channel(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be >= 0, got {t}"
        )));
    }
    Ok((1.0 - t * t.sqrt()).max(0.0))
}

/// Stiffness of the band dispersion in reduced units: the per-state fraction
/// is 1/(a·s² + γ) with a = T₀/(T) = 1/(t · Tc/T₀).
fn band_stiffness(t: f64) -> f64 {
    1.0 / (t * critical_temperature_channel())
}

/// Solves for γ at 0 < t < 1 from the band-number balance
///
/// ```text
/// Σ_{s∈ℤ} 1/(a s² + γ) = 1 - t^{3/2},    a = T₀/T,
/// ```
///
/// with the sum in coth closed form. The left side is strictly decreasing in
/// γ, so bisection on ln γ ∈ [-30, 30] is guaranteed a bracket; residual is
/// driven below 1e-10. The reduced equation is N-independent (L/a = √N
/// cancels); N is validated but does not influence the root.
pub fn solve_gamma_channel(t: f64, n_particles: f64) -> Result<f64> {
    if !(n_particles >= 1.0) {
        return Err(GbecError::Domain(format!(
            "particle number must be >= 1, got {n_particles}"
        )));
    }
    if !(t > 0.0) || !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be in (0, 1), got {t}"
        )));
    }
    if t >= 1.0 {
        return Err(GbecError::NoSolution(format!(
            "no band condensate at t = {t} >= 1"
        )));
    }
    let a = band_stiffness(t);
    let f0 = condensate_fraction_channel(t)?;
    solve::bisect_log(
        |g| coth_band_sum(a, g).expect("a, g > 0") - f0,
        (-30.0f64).exp(),
        (30.0f64).exp(),
        200,
    )
}

/// Occupation fraction of band state s_x = s (p_z = 0): 1/(a s² + γ).
/// Summed over all s ∈ ℤ this reproduces `coth_band_sum(a, γ)` by
/// construction, i.e. the band fraction.
pub fn per_state_fraction_channel(s: i64, gamma: f64, t: f64) -> Result<f64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(GbecError::Domain(format!(
            "gamma must be > 0, got {gamma}"
        )));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be in (0, 1), got {t}"
        )));
    }
    let s = s as f64;
    Ok(1.0 / (band_stiffness(t) * s * s + gamma))
}

/// Central condensate density (reduced): N·f₀₀/(L/a)^{3/2} with L/a = √N,
/// i.e. f₀₀ · N^{1/4}. This is the §VI.B diagnostic — it diverges with N
/// even though every occupation fraction is bounded.
pub fn central_density(n_particles: f64, t: f64) -> Result<f64> {
    let gamma = solve_gamma_channel(t, n_particles)?;
    let f00 = per_state_fraction_channel(0, gamma, t)?;
    Ok(n_particles * f00 / n_particles.sqrt().powf(1.5))
}

/// Fitted log-log slope of the central density over a ladder of particle
/// numbers at fixed t. The algebra forces exactly 1/4: f₀₀ is N-independent
/// and L ∝ √N.
pub fn central_density_scaling(n_ladder: &[f64], t: f64) -> Result<f64> {
    if n_ladder.len() < 3 {
        return Err(GbecError::InsufficientData {
            needed: 3,
            got: n_ladder.len(),
        });
    }
    let pts: Vec<(f64, f64)> = n_ladder
        .iter()
        .map(|&n| central_density(n, t).map(|rho| (n, rho)))
        .collect::<Result<_>>()?;
    log_log_slope(&pts)
}

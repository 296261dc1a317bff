//! Isotropic 3D harmonic trap: the reference geometry where condensation is
//! the textbook kind — one state, the ground state, macroscopically occupied.
//!
//! All temperatures are reduced: T₀ is the trap's natural scale and
//! Tc/T₀ = ζ(3)^{-1/3}. Below Tc the condensate fraction is 1 - (T/Tc)³; above
//! Tc the chemical-potential parameter α floats and is recovered by inverting
//! F₃.

use crate::bose::{bose_fn_inverse, zeta3, AlphaParam};
use crate::error::{GbecError, Result};

/// Isotropic-trap system description; everything else is a pure function of
/// temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsotropicConfig {
    pub n_particles: f64,
}

impl IsotropicConfig {
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

/// Tc/T₀ = ζ(3)^{-1/3}.
pub fn critical_temperature_iso() -> f64 {
    zeta3().powf(-1.0 / 3.0)
}

/// Condensate fraction at t = T/Tc: max(0, 1 - t³).
pub fn condensate_fraction_iso(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be >= 0, got {t}"
        )));
    }
    Ok((1.0 - t * t * t).max(0.0))
}

/// α above the transition, from (T/T₀)³ F₃(α) = 1, i.e. F₃(α) = ζ(3)/t³ with
/// t = T/Tc.
///
/// Below or at Tc α is pinned at ~0 and the condensate branch applies instead;
/// that case is [`GbecError::NoSolution`].
pub fn alpha_above_tc_iso(t: f64) -> Result<AlphaParam> {
    if !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be finite, got {t}"
        )));
    }
    if t <= 1.0 {
        return Err(GbecError::NoSolution(format!(
            "alpha is pinned at 0 for t <= 1 (got t = {t}); use the condensate branch"
        )));
    }
    let alpha = bose_fn_inverse(3.0, zeta3() / (t * t * t))?;
    AlphaParam::new(alpha)
}

/// Occupation fraction n_p/N of one excited oscillator state with
/// p_x + p_y + p_z = p_sum, below Tc: (T/T₀) N^{1/3} / (p_sum · N).
///
/// At fixed p_sum this is O(N^{-2/3}) — no excited state survives the
/// thermodynamic limit macroscopically.
pub fn excited_occupation_iso(p_sum: u32, n_particles: f64, t: f64) -> Result<f64> {
    if p_sum < 1 {
        return Err(GbecError::Domain(
            "excited occupation needs p_sum >= 1".into(),
        ));
    }
    if !(n_particles >= 1.0) || !(t > 0.0 && t <= 1.0) {
        return Err(GbecError::Domain(format!(
            "need N >= 1 and t in (0, 1], got N = {n_particles}, t = {t}"
        )));
    }
    let t_over_t0 = t * critical_temperature_iso();
    Ok(t_over_t0 * n_particles.powf(1.0 / 3.0) / (p_sum as f64 * n_particles))
}

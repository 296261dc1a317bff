//! General anisotropic box: edges L_i = a·H^{ν_i} scaled by a single
//! thermodynamic-limit dial H with ν₁ + ν₂ + ν₃ = 1 (fixed total volume
//! growth). The value of ν₁ against 1/2 decides which of the three
//! condensation types the box realizes:
//!
//! - Type I (ν₁ < 1/2): ordinary single-state condensation, γ = O(1) from
//!   the ground state alone;
//! - Type II (ν₁ = 1/2): a band of s₁ states condenses with γ = O(1);
//! - Type III (ν₁ > 1/2): the band condenses but γ = O(H^{2ν₁−1}), so every
//!   state in it stays microscopic.
//!
//! Units as in the prism module: lengths in a = ρ^{-1/3}, temperatures in
//! T* = h²/(2πm k_B a²), so the single-state dispersion is
//! βε(s) = (π/τ)Σ_i H^{1−2ν_i}s_i² with τ = t·Tc/T*, and occupancies are
//! written as reduced densities a³ρ_s = 1/(βε + γ).

use crate::bose::coth_band_sum;
use crate::error::{GbecError, Result};
use crate::fit::log_log_slope;
use crate::prism::critical_temperature_prism;
use crate::solve;
use std::f64::consts::PI;

/// Tolerance for the ν₁ = 1/2 equality test and for the exponent invariants.
const NU_TOL: f64 = 1e-12;
/// |ν₁ - 1/2| below this (but above NU_TOL) flags a classification made
/// uncomfortably close to the Type II boundary.
const NU_BOUNDARY_BAND: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbecKind {
    TypeI,
    TypeII,
    TypeIII,
}

/// Classification result; `near_boundary` warns that ν₁ sits within
/// [`NU_BOUNDARY_BAND`] of 1/2 without being equal at tolerance, where the
/// sharp trichotomy is numerically fragile.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GbecClass {
    pub kind: GbecKind,
    pub near_boundary: bool,
}

/// Box scaling exponents plus the H dial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxExponents {
    pub nu1: f64,
    pub nu2: f64,
    pub nu3: f64,
    pub h_param: f64,
}

impl BoxExponents {
    pub fn new(nu1: f64, nu2: f64, nu3: f64, h_param: f64) -> Result<Self> {
        let nu = Self {
            nu1,
            nu2,
            nu3,
            h_param,
        };
        nu.validate()?;
        Ok(nu)
    }

    /// Same exponents at a different point of the H ladder.
    pub fn with_h(&self, h_param: f64) -> Result<Self> {
        Self::new(self.nu1, self.nu2, self.nu3, h_param)
    }

    pub fn validate(&self) -> Result<()> {
        // ordering at the same tolerance as the sum: (1/3, 1/3, 1/3) must
        // survive its one-ulp rounding
        if !(self.nu1 + NU_TOL >= self.nu2 && self.nu2 + NU_TOL >= self.nu3 && self.nu3 > 0.0) {
            return Err(GbecError::InvalidExponents(format!(
                "need nu1 >= nu2 >= nu3 > 0, got ({}, {}, {})",
                self.nu1, self.nu2, self.nu3
            )));
        }
        let sum = self.nu1 + self.nu2 + self.nu3;
        if (sum - 1.0).abs() > NU_TOL {
            return Err(GbecError::InvalidExponents(format!(
                "exponents must sum to 1, got {sum}"
            )));
        }
        if !(self.h_param > 1.0) || !self.h_param.is_finite() {
            return Err(GbecError::InvalidExponents(format!(
                "H must be > 1, got {}",
                self.h_param
            )));
        }
        Ok(())
    }
}

/// Sorts a box into its condensation type by ν₁ alone.
pub fn classify(nu: &BoxExponents) -> Result<GbecClass> {
    nu.validate()?;
    let gap = nu.nu1 - 0.5;
    let kind = if gap.abs() <= NU_TOL {
        GbecKind::TypeII
    } else if gap < 0.0 {
        GbecKind::TypeI
    } else {
        GbecKind::TypeIII
    };
    Ok(GbecClass {
        kind,
        near_boundary: gap.abs() > NU_TOL && gap.abs() < NU_BOUNDARY_BAND,
    })
}

/// Condensed (reduced) density a³ρ₀ = max(0, 1 - t^{3/2}); the 3D box law
/// holds for every exponent choice because the full-spectrum integral is
/// insensitive to the edge anisotropy.
pub fn condensate_fraction_box(t: f64) -> Result<f64> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be >= 0, got {t}"
        )));
    }
    Ok((1.0 - t * t.sqrt()).max(0.0))
}

fn check_t_below_tc(t: f64) -> Result<()> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be in (0, 1), got {t}"
        )));
    }
    if t >= 1.0 {
        return Err(GbecError::NoSolution(format!(
            "no condensate at t = {t} >= 1"
        )));
    }
    Ok(())
}

/// Stiffness of direction i: βε grows by (π/τ)H^{1−2ν_i} per unit s_i².
fn stiffness(nu_i: f64, h_param: f64, t: f64) -> f64 {
    let tau = t * critical_temperature_prism();
    (PI / tau) * h_param.powf(1.0 - 2.0 * nu_i)
}

/// Reduced density of a single state: a³ρ_s = 1/(βε(s) + γ) with
/// βε(s) = (π/τ)(H^{1−2ν₁}s₁² + H^{1−2ν₂}s₂² + H^{1−2ν₃}s₃²).
pub fn state_density(
    s: (i64, i64, i64),
    nu: &BoxExponents,
    t: f64,
    gamma_big: f64,
) -> Result<f64> {
    nu.validate()?;
    if !(t > 0.0 && t < 1.0) {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be in (0, 1), got {t}"
        )));
    }
    if !(gamma_big > 0.0) {
        return Err(GbecError::Domain(format!(
            "gamma must be positive, got {gamma_big}"
        )));
    }
    let (s1, s2, s3) = (s.0 as f64, s.1 as f64, s.2 as f64);
    let beta_eps = stiffness(nu.nu1, nu.h_param, t) * s1 * s1
        + stiffness(nu.nu2, nu.h_param, t) * s2 * s2
        + stiffness(nu.nu3, nu.h_param, t) * s3 * s3;
    Ok(1.0 / (beta_eps + gamma_big))
}

/// Type I γ: the ground state carries the whole condensate, so
/// a³ρ₀ = 1/γ directly.
pub fn gamma_type1(t: f64) -> Result<f64> {
    check_t_below_tc(t)?;
    Ok(1.0 / condensate_fraction_box(t)?)
}

/// Solves the s₁-band balance Σ_{s₁∈ℤ} 1/((π/τ)s₁² + γ) = a³ρ₀ for a
/// Type II box (ν₁ = 1/2, where the band stiffness is H-free). The left
/// side is strictly decreasing in γ; bisection on ln γ. The root is O(1) in
/// H — it never sees H at all.
pub fn solve_gamma_type2(t: f64, nu: &BoxExponents) -> Result<f64> {
    nu.validate()?;
    if (nu.nu1 - 0.5).abs() > NU_TOL {
        return Err(GbecError::InvalidExponents(format!(
            "Type II band equation needs nu1 = 1/2, got {}",
            nu.nu1
        )));
    }
    check_t_below_tc(t)?;
    solve_band_gamma(stiffness(nu.nu1, nu.h_param, t), condensate_fraction_box(t)?)
}

/// Solves the same band balance for a Type III box (ν₁ > 1/2), where the
/// stiffness (π/τ)H^{1−2ν₁} collapses as H grows and the root inflates as
/// γ = O(H^{2ν₁−1}). In the coth→1 regime the closed form is
/// γ → π τ H^{2ν₁−1}/(a³ρ₀)².
pub fn solve_gamma_type3(t: f64, nu: &BoxExponents) -> Result<f64> {
    nu.validate()?;
    if nu.nu1 - 0.5 <= NU_TOL {
        return Err(GbecError::InvalidExponents(format!(
            "Type III band equation needs nu1 > 1/2, got {}",
            nu.nu1
        )));
    }
    check_t_below_tc(t)?;
    solve_band_gamma(stiffness(nu.nu1, nu.h_param, t), condensate_fraction_box(t)?)
}

/// γ for whatever type the box is: ground-state balance for Type I, the
/// coth band balance otherwise.
pub fn solve_gamma_box(t: f64, nu: &BoxExponents) -> Result<f64> {
    match classify(nu)?.kind {
        GbecKind::TypeI => gamma_type1(t),
        GbecKind::TypeII => solve_gamma_type2(t, nu),
        GbecKind::TypeIII => solve_gamma_type3(t, nu),
    }
}

fn solve_band_gamma(a: f64, target: f64) -> Result<f64> {
    let gamma = solve::bisect_log(
        |g| coth_band_sum(a, g).unwrap_or(f64::NAN) - target,
        (-30.0_f64).exp(),
        30.0_f64.exp(),
        200,
    )?;
    let residual = (coth_band_sum(a, gamma)? - target).abs();
    if residual > 1e-10 {
        return Err(GbecError::NonConvergence {
            iterations: 200,
            last: gamma,
        });
    }
    Ok(gamma)
}

/// Where the condensed band ends: the state index s₀ at which the band
/// occupation has dropped by the factor C from its head, and the matching
/// reduced momentum k₀a = 2πs₀/H^{ν₁}. From βε(s₀) = C·γ:
///
/// ```text
/// s₀ = √(Cγ/A₁),   A₁ = (π/τ)H^{1−2ν₁},
/// ```
///
/// giving s₀ = O(H^{2ν₁−1}) states in the band while k₀ = O(H^{ν₁−1}) → 0.
pub fn cutoff_point(nu: &BoxExponents, t: f64, c: f64) -> Result<(f64, f64)> {
    if !(c > 1.0) || !c.is_finite() {
        return Err(GbecError::Domain(format!(
            "occupation-drop threshold must be > 1, got {c}"
        )));
    }
    let gamma = solve_gamma_type3(t, nu)?;
    let a1 = stiffness(nu.nu1, nu.h_param, t);
    let s0 = (c * gamma / a1).sqrt();
    let k0 = 2.0 * PI * s0 / nu.h_param.powf(nu.nu1);
    Ok((s0, k0))
}

/// Fitted log-log slopes (k₀ vs H, s₀ vs H) over an H ladder; the Type III
/// certificate is (−(1−ν₁), 2ν₁−1). Both are exactly C-independent — C only
/// shifts s₀ by √C.
pub fn cutoff_diagnostics(
    nu: &BoxExponents,
    t: f64,
    h_ladder: &[f64],
    c: f64,
) -> Result<(f64, f64)> {
    if h_ladder.len() < 3 {
        return Err(GbecError::InsufficientData {
            needed: 3,
            got: h_ladder.len(),
        });
    }
    let mut k_points = Vec::with_capacity(h_ladder.len());
    let mut s_points = Vec::with_capacity(h_ladder.len());
    for &h in h_ladder {
        let (s0, k0) = cutoff_point(&nu.with_h(h)?, t, c)?;
        s_points.push((h, s0));
        k_points.push((h, k0));
    }
    Ok((log_log_slope(&k_points)?, log_log_slope(&s_points)?))
}

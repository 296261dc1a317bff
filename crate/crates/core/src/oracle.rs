//! Exact finite-system reference: the grand-canonical number equation summed
//! over the actual discrete spectrum, with no continuum approximation, no
//! band/rest split, and no large-N asymptotics. Every closed-form result in
//! the other modules can be checked against this at desk scale.
//!
//! Spectra are enumerated in reduced units (each geometry's own temperature
//! convention) up to βε ≤ cap; what lies beyond is carried analytically as a
//! Boltzmann tail integral. At the default cap of 46, e^{-46} ≈ 1e-20, so the
//! truncated states sit below the f64 resolution of any O(N) total — the cap
//! is a memory bound, not an accuracy knob.

use crate::bose::{gamma_upper, zeta3, AlphaParam};
use crate::channel::critical_temperature_channel;
use crate::error::{GbecError, Result};
use crate::prism::critical_temperature_prism;
use std::f64::consts::PI;

pub const DEFAULT_EPS_TAIL: f64 = 1e-6;
pub const DEFAULT_BETA_EPS_CAP: f64 = 46.0;

/// The four enumerable geometries. Quantum numbers are stored as nonnegative
/// representatives with the sign/degeneracy folded into the level weight:
/// isotropic levels are (p, 0, 0) with weight (p+1)(p+2)/2, cigar levels
/// (p_⊥, p_z, 0) with weight p_⊥+1, channel levels (s, p_z, 0) with weight 2
/// for s > 0, prism levels (s_x, s_y, s_z) with weight 2 per nonzero index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OracleGeometry {
    Isotropic { n_particles: f64 },
    Channel { n_particles: f64 },
    Cigar { n_particles: f64, delta: f64 },
    Prism { l_over_a: f64, d_over_a: f64 },
}

impl OracleGeometry {
    pub fn n_particles(&self) -> f64 {
        match *self {
            Self::Isotropic { n_particles }
            | Self::Channel { n_particles }
            | Self::Cigar { n_particles, .. } => n_particles,
            Self::Prism { l_over_a, d_over_a } => l_over_a * d_over_a * d_over_a,
        }
    }

    /// Condensate fraction predicted by the matching closed-form module.
    pub fn f0_analytic(&self, t: f64) -> f64 {
        match self {
            Self::Isotropic { .. } | Self::Cigar { .. } => (1.0 - t * t * t).max(0.0),
            Self::Channel { .. } | Self::Prism { .. } => (1.0 - t * t.sqrt()).max(0.0),
        }
    }

    /// The condensing manifold: the single ground state for the isotropic
    /// trap, the p_⊥ = 0 column for the cigar, the p_z = 0 row for the
    /// channel, the s_x = s_y = 0 line for the prism.
    pub fn in_band(&self, q: [i32; 3]) -> bool {
        match self {
            Self::Isotropic { .. } => q == [0, 0, 0],
            Self::Channel { .. } => q[1] == 0,
            Self::Cigar { .. } => q[0] == 0,
            Self::Prism { .. } => q[0] == 0 && q[1] == 0,
        }
    }
}

/// One enumerated degenerate level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    pub beta_eps: f64,
    pub weight: f64,
    pub q: [i32; 3],
}

/// Enumerable spectrum plus its cutoff policy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumSpec {
    pub geometry: OracleGeometry,
    pub eps_tail: f64,
    pub beta_eps_cap: f64,
}

impl SpectrumSpec {
    pub fn new(geometry: OracleGeometry) -> Self {
        Self {
            geometry,
            eps_tail: DEFAULT_EPS_TAIL,
            beta_eps_cap: DEFAULT_BETA_EPS_CAP,
        }
    }

    pub fn with_eps_tail(mut self, eps_tail: f64) -> Result<Self> {
        if !(eps_tail > 0.0) || !eps_tail.is_finite() {
            return Err(GbecError::Domain(format!(
                "tail tolerance must be positive, got {eps_tail}"
            )));
        }
        self.eps_tail = eps_tail;
        Ok(self)
    }

    pub fn with_cap(mut self, beta_eps_cap: f64) -> Result<Self> {
        if !(beta_eps_cap >= 1.0) || !beta_eps_cap.is_finite() {
            return Err(GbecError::Domain(format!(
                "enumeration cap must be >= 1, got {beta_eps_cap}"
            )));
        }
        self.beta_eps_cap = beta_eps_cap;
        Ok(self)
    }
}

/// Solved number equation on an enumerated spectrum.
#[derive(Debug, Clone)]
pub struct OracleSolution {
    pub alpha: AlphaParam,
    /// Levels sorted nondecreasing in energy; `occupations[i]` is the total
    /// occupation of level i, degeneracy included.
    pub levels: Vec<Level>,
    pub occupations: Vec<f64>,
    pub f_g: f64,
    pub f_band: f64,
    pub f0: f64,
    pub n_particles: f64,
    /// Boltzmann mass beyond the enumeration cap, evaluated at the solution.
    pub tail: f64,
}

struct EnumeratedSpectrum {
    levels: Vec<Level>,
    /// α-independent tail integral M: the mass beyond the cap is e^{-α}·M.
    tail_integral: f64,
}

/// Solves Σ_i g_i/(e^{βε_i+α} - 1) + e^{-α}M = N for α by bisection on
/// ln α ∈ [ln 1e-18, ln 100]; the left side is strictly decreasing in α, so
/// the bracket is certain once the endpoints straddle N. Residual is driven
/// to f64 resolution (≪ 1e-10·N).
pub fn solve_alpha_exact(spec: &SpectrumSpec, t: f64) -> Result<OracleSolution> {
    if !(t > 0.0) || !t.is_finite() {
        return Err(GbecError::Domain(format!(
            "reduced temperature must be > 0, got {t}"
        )));
    }
    let n = spec.geometry.n_particles();
    if !(n >= 1.0) || !n.is_finite() {
        return Err(GbecError::Domain(format!(
            "particle number must be >= 1, got {n}"
        )));
    }
    let enumerated = enumerate(&spec.geometry, t, spec.beta_eps_cap)?;
    let total = |ln_alpha: f64| -> f64 {
        let alpha = ln_alpha.exp();
        // Neumaier-compensated: millions of terms must not drift the residual
        let mut sum = 0.0_f64;
        let mut comp = 0.0_f64;
        for level in &enumerated.levels {
            let term = level.weight / (level.beta_eps + alpha).exp_m1();
            let fresh = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - fresh) + term
            } else {
                (term - fresh) + sum
            };
            sum = fresh;
        }
        sum + comp + (-alpha).exp() * enumerated.tail_integral
    };

    let (mut lo, mut hi) = (1e-18_f64.ln(), 1e2_f64.ln());
    if total(lo) <= n {
        return Err(GbecError::BracketFailure(format!(
            "spectrum holds fewer than N = {n} particles even at vanishing α"
        )));
    }
    if total(hi) >= n {
        return Err(GbecError::BracketFailure(format!(
            "α = 100 still leaves more than N = {n} particles"
        )));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if total(mid) > n {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 {
            break;
        }
    }
    let ln_alpha = 0.5 * (lo + hi);
    let residual = (total(ln_alpha) - n).abs();
    if residual > 1e-10 * n {
        return Err(GbecError::NonConvergence {
            iterations: 200,
            last: ln_alpha.exp(),
        });
    }

    let alpha = ln_alpha.exp();
    let tail = (-alpha).exp() * enumerated.tail_integral;
    if tail > spec.eps_tail * n {
        return Err(GbecError::CutoffTooTight {
            tail,
            budget: spec.eps_tail * n,
        });
    }

    let mut levels = enumerated.levels;
    levels.sort_unstable_by(|a, b| a.beta_eps.total_cmp(&b.beta_eps));
    let occupations: Vec<f64> = levels
        .iter()
        .map(|level| level.weight / (level.beta_eps + alpha).exp_m1())
        .collect();
    let f_g = 1.0 / alpha.exp_m1() / n;
    let f_band = levels
        .iter()
        .zip(&occupations)
        .filter(|(level, _)| spec.geometry.in_band(level.q))
        .map(|(_, occ)| occ)
        .sum::<f64>()
        / n;
    Ok(OracleSolution {
        alpha: AlphaParam::new(alpha)?,
        levels,
        occupations,
        f_g,
        f_band,
        f0: spec.geometry.f0_analytic(t),
        n_particles: n,
        tail,
    })
}

/// Fraction of particles in states matched by the predicate on quantum
/// numbers (nonnegative representatives; matched level weights count their
/// whole degeneracy class).
pub fn band_fraction_exact<F: Fn([i32; 3]) -> bool>(sol: &OracleSolution, band_selector: F) -> f64 {
    sol.levels
        .iter()
        .zip(&sol.occupations)
        .filter(|(level, _)| band_selector(level.q))
        .map(|(_, occ)| occ)
        .sum::<f64>()
        / sol.n_particles
}

/// Largest fraction held by any one quantum state (degeneracy divided out).
pub fn max_single_state_fraction(sol: &OracleSolution) -> f64 {
    sol.levels
        .iter()
        .zip(&sol.occupations)
        .map(|(level, occ)| occ / level.weight)
        .fold(0.0, f64::max)
        / sol.n_particles
}

fn enumerate(geometry: &OracleGeometry, t: f64, cap: f64) -> Result<EnumeratedSpectrum> {
    match *geometry {
        OracleGeometry::Isotropic { n_particles } => {
            // βε = b·p, degeneracy (p+1)(p+2)/2
            let b = zeta3().powf(1.0 / 3.0) / (t * n_particles.powf(1.0 / 3.0));
            let p_max = (cap / b).floor() as i64;
            let mut levels = Vec::with_capacity((p_max + 1) as usize);
            for p in 0..=p_max {
                let pf = p as f64;
                levels.push(Level {
                    beta_eps: b * pf,
                    weight: (pf + 1.0) * (pf + 2.0) / 2.0,
                    q: [p as i32, 0, 0],
                });
            }
            // smooth level density ε²/(2b³) ⇒ tail Γ(3, cap)/(2b³)
            let tail_integral = (-cap).exp() * (cap * cap + 2.0 * cap + 2.0) / (2.0 * b * b * b);
            Ok(EnumeratedSpectrum {
                levels,
                tail_integral,
            })
        }
        OracleGeometry::Channel { n_particles } => {
            // βε = b_s·s² + b_z·p_z with L/a = √N
            let b_s = 1.0 / (t * critical_temperature_channel()) / n_particles;
            let b_z = 1.0 / (t * critical_temperature_channel()) / n_particles.sqrt();
            let s_max = (cap / b_s).sqrt().floor() as i64;
            let mut levels = Vec::new();
            for s in 0..=s_max {
                let e0 = b_s * (s * s) as f64;
                let z_max = ((cap - e0) / b_z).floor() as i64;
                let weight = if s == 0 { 1.0 } else { 2.0 };
                for p_z in 0..=z_max {
                    levels.push(Level {
                        beta_eps: e0 + b_z * p_z as f64,
                        weight,
                        q: [s as i32, p_z as i32, 0],
                    });
                }
            }
            // density 2√ε/(b_z√b_s) ⇒ tail 2Γ(3/2, cap)/(b_z√b_s)
            let tail_integral = 2.0 * gamma_upper(1.5, cap) / (b_z * b_s.sqrt());
            Ok(EnumeratedSpectrum {
                levels,
                tail_integral,
            })
        }
        OracleGeometry::Cigar { n_particles, delta } => {
            if !(delta > 0.0) || !delta.is_finite() {
                return Err(GbecError::Domain(format!(
                    "level spacing ratio must be positive, got {delta}"
                )));
            }
            // βε = b_⊥·p_⊥ + b_z·p_z with K = (N/Δ)^{2/3}, transverse
            // degeneracy p_⊥ + 1
            let k = (n_particles / delta).powf(2.0 / 3.0);
            let b_perp = zeta3().powf(1.0 / 3.0) / (t * k.sqrt());
            let b_z = zeta3().powf(1.0 / 3.0) * k / (t * n_particles);
            let perp_max = (cap / b_perp).floor() as i64;
            let mut levels = Vec::new();
            for p_perp in 0..=perp_max {
                let e0 = b_perp * p_perp as f64;
                let z_max = ((cap - e0) / b_z).floor() as i64;
                let weight = (p_perp + 1) as f64;
                for p_z in 0..=z_max {
                    levels.push(Level {
                        beta_eps: e0 + b_z * p_z as f64,
                        weight,
                        q: [p_perp as i32, p_z as i32, 0],
                    });
                }
            }
            // density ε²/(2b_⊥²b_z) ⇒ tail Γ(3, cap)/(2b_⊥²b_z)
            let tail_integral =
                (-cap).exp() * (cap * cap + 2.0 * cap + 2.0) / (2.0 * b_perp * b_perp * b_z);
            Ok(EnumeratedSpectrum {
                levels,
                tail_integral,
            })
        }
        OracleGeometry::Prism { l_over_a, d_over_a } => {
            if !(l_over_a > 0.0) || !(d_over_a > 0.0) {
                return Err(GbecError::Domain(format!(
                    "prism edges must be positive, got L/a = {l_over_a}, D/a = {d_over_a}"
                )));
            }
            // βε = (π/τ)[(s_x²+s_y²)/(D/a)² + s_z²/(L/a)²]
            let tau = t * critical_temperature_prism();
            let c = PI / tau;
            let sz_max = ((cap / c).sqrt() * l_over_a).floor() as i64;
            let sxy_max = ((cap / c).sqrt() * d_over_a).floor() as i64;
            let mut levels = Vec::new();
            for s_x in 0..=sxy_max {
                for s_y in 0..=sxy_max {
                    let e0 = c * ((s_x * s_x + s_y * s_y) as f64) / (d_over_a * d_over_a);
                    if e0 > cap {
                        continue;
                    }
                    let w_xy = if s_x == 0 { 1.0 } else { 2.0 } * if s_y == 0 { 1.0 } else { 2.0 };
                    let z_lim = (((cap - e0) / c).sqrt() * l_over_a).floor() as i64;
                    for s_z in 0..=z_lim.min(sz_max) {
                        levels.push(Level {
                            beta_eps: e0 + c * ((s_z * s_z) as f64) / (l_over_a * l_over_a),
                            weight: w_xy * if s_z == 0 { 1.0 } else { 2.0 },
                            q: [s_x as i32, s_y as i32, s_z as i32],
                        });
                    }
                }
            }
            // signed-triple ellipsoid density 2π(D/a)²(L/a)√ε/c^{3/2}
            let tail_integral = 2.0 * PI * d_over_a * d_over_a * l_over_a
                * gamma_upper(1.5, cap)
                / c.powf(1.5);
            Ok(EnumeratedSpectrum {
                levels,
                tail_integral,
            })
        }
    }
}

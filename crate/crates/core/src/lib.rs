//! Numerical laboratory for generalized Bose-Einstein condensation.
//!
//! The crate models ideal Bose gases in strongly anisotropic confinements
//! where condensation happens in two steps: first into a low-lying *band* of
//! states, then (possibly never) into the single ground state. Everything is
//! expressed in reduced units — particle number `N`, reduced temperature
//! `t = T/Tc`, and dimensionless spectra — so no physical constants appear.
//!
//! Layout:
//! - [`bose`]: the Bose functions `F_n(α) = Σ e^{-lα}/l^n`, their inverse,
//!   and the exact closed-form band sum `Σ_s 1/(a s² + γ)`.
//! - [`isotropic`]: isotropic 3D harmonic trap (single-state condensate).
//! - [`channel`]: 2D gas, periodic in x and harmonic in z (band condensate).
//! - [`cigar`]: anisotropic 3D trap with a two-step transition, in both the
//!   standard and the exponential (fixed-γ) thermodynamic limits.
//! - [`prism`]: elongated box where every band state stays microscopic.
//! - [`general_box`]: exponent-scaled boxes `L_i = a·H^{ν_i}` and their
//!   type I/II/III classification.
//! - [`oracle`]: brute-force grand-canonical summation over the discrete
//!   spectra — the ground truth the analytic models are tested against.

pub mod bose;
pub mod channel;
pub mod cigar;
pub mod error;
pub mod fit;
pub mod general_box;
pub mod isotropic;
pub mod oracle;
pub mod prism;
pub mod solve;

pub use error::{GbecError, Result};

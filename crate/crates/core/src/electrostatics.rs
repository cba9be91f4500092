//! Non-retarded (electrostatic) limit via image charges.
//!
//! For source and field points on the atom side of the slab (`z, z' > L/2`,
//! measured from the slab centre) the reflected potential of a unit charge is
//! a geometric series of image pairs from repeated reflection between the two
//! faces:
//!
//! ```text
//! Φ_H = −β/(4π) Σ_m β^{2m} [1/D(z + z' − L + 2mL) − 1/D(z + z' + L + 2mL)],
//! D(h) = √(ρ² + h²),   β = (n² − 1)/(n² + 1).
//! ```
//!
//! Applying `½ Σ_i ⟨μ_i²⟩ ∂_i ∂'_i` to each inverse distance in closed form
//! gives the dipole energy [`image_series_shift`].

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_traits::Float;

use crate::system::{AtomSpec, EnergyShift, Slab};
use crate::{Error, Result};

/// Truncation policy of the image series.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImageSeriesSpec {
    pub tail_tol: f64,
    pub max_terms: usize,
}

impl Default for ImageSeriesSpec {
    fn default() -> Self {
        ImageSeriesSpec { tail_tol: 1e-14, max_terms: 1_000_000 }
    }
}

/// Sums `Σ_m β^{2m} term(m)` where `bound(m)` bounds the tail from `m` on
/// (before the `β^{2m}` factor is applied).
fn geometric_series(
    beta_sq: f64,
    spec: &ImageSeriesSpec,
    mut term: impl FnMut(usize) -> f64,
    mut bound: impl FnMut(usize) -> f64,
) -> Result<f64> {
    let mut sum = 0.0;
    let mut weight = 1.0;
    for m in 0..spec.max_terms {
        sum += weight * term(m);
        weight *= beta_sq;
        let tail = weight * bound(m + 1);
        if tail <= spec.tail_tol * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::Convergence { best: sum, err_bound: weight * bound(spec.max_terms) })
}

fn inverse_distance(rho: f64, h: f64) -> f64 {
    1.0 / (rho * rho + h * h).sqrt()
}

/// Reflected potential `Φ_H(ρ, z, z')` of a unit point charge at height `z'`,
/// seen at height `z`, both on the atom side of the slab.
pub fn phi_h(rho: f64, z: f64, z_prime: f64, slab: &Slab, spec: &ImageSeriesSpec) -> Result<f64> {
    let l = slab.thickness();
    if !l.is_finite() {
        return Err(Error::Unsupported("slab-centred coordinates for a half-space"));
    }
    if !(z > 0.5 * l) {
        return Err(Error::domain("field height z (need z > L/2)", z));
    }
    if !(z_prime > 0.5 * l) {
        return Err(Error::domain("source height z' (need z' > L/2)", z_prime));
    }
    if !(rho >= 0.0) {
        return Err(Error::domain("transverse separation (need >= 0)", rho));
    }
    let beta = slab.image_factor();
    if beta == 0.0 || l == 0.0 {
        return Ok(0.0);
    }
    let near = z + z_prime - l;
    let h = |m: usize| near + 2.0 * m as f64 * l;
    let sum = geometric_series(
        beta * beta,
        spec,
        |m| inverse_distance(rho, h(m)) - inverse_distance(rho, h(m + 1)),
        // the brackets telescope, so the tail from m is at most β^{2m}/D(h_m)
        |m| inverse_distance(rho, h(m)),
    )?;
    Ok(-beta / (4.0 * PI) * sum)
}

/// `∫₀^∞ k² e^{−2𝒵k} (1 − e^{−2kL}) / (1 − β² e^{−2kL}) dk` summed as
/// `Σ_m β^{2m} ¼ [1/(𝒵 + mL)³ − 1/(𝒵 + (m+1)L)³]`.
pub fn image_series_integral(slab: &Slab, z: f64, spec: &ImageSeriesSpec) -> Result<f64> {
    if !(z > 0.0) {
        return Err(Error::domain("atom-surface distance Z (need > 0)", z));
    }
    let l = slab.thickness();
    if l.is_infinite() {
        return Ok(0.25 / (z * z * z));
    }
    let beta = slab.image_factor();
    if l == 0.0 {
        return Ok(0.0);
    }
    let beta_sq = beta * beta;
    let inv_cube = |m: usize| {
        let d = z + m as f64 * l;
        1.0 / (d * d * d)
    };
    let bracket = |m: usize| 0.25 * (inv_cube(m) - inv_cube(m + 1));
    geometric_series(beta_sq, spec, bracket, |m| {
        // telescoping bound, and the decreasing-bracket majorant when β < 1
        let telescoped = 0.25 * inv_cube(m);
        if beta_sq < 1.0 {
            telescoped.min(bracket(m) / (1.0 - beta_sq))
        } else {
            telescoped
        }
    })
}

/// Partial sums of [`image_series_integral`] after `1, 2, …, terms` terms.
pub fn image_series_partial_sums(slab: &Slab, z: f64, terms: usize) -> Vec<f64> {
    let l = slab.thickness();
    let beta_sq = slab.image_factor().powi(2);
    let inv_cube = |m: usize| if m == 0 { 1.0 / z.powi(3) } else { 1.0 / (z + m as f64 * l).powi(3) };
    let mut out = Vec::with_capacity(terms);
    let mut sum = 0.0;
    let mut weight = 1.0;
    for m in 0..terms {
        sum += weight * 0.25 * (inv_cube(m) - inv_cube(m + 1));
        weight *= beta_sq;
        out.push(sum);
    }
    out
}

/// Electrostatic energy of the atomic dipole interacting with its images,
/// `ΔE = −(β/16π) Σ_j (2|μ_⊥|² + |μ_∥|²) · image_series_integral`.
pub fn image_series_shift(atom: &AtomSpec, slab: &Slab, z: f64, spec: &ImageSeriesSpec) -> Result<EnergyShift> {
    let beta = slab.image_factor();
    let integral = if beta == 0.0 { 0.0 } else { image_series_integral(slab, z, spec)? };
    let parts = atom.transitions().iter().map(|t| -beta / (16.0 * PI) * t.electrostatic_weight() * integral).collect();
    Ok(EnergyShift::from_parts(parts))
}

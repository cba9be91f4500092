//! Fresnel and slab reflection/transmission coefficients.
//!
//! Physical coefficients are complex functions of the vacuum normal wave
//! number `k_z` and the transverse wave number `k_∥`. The real kernels
//! [`rtilde`] are the slab reflection coefficients continued onto the
//! imaginary `k_z` axis and written in the quadrature variables `(s, t)`.

use num_complex::Complex64;
use num_traits::Float;

use crate::math::x_coth_x;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    TE,
    TM,
}

impl Polarization {
    pub const BOTH: [Polarization; 2] = [Polarization::TE, Polarization::TM];

    pub fn as_str(self) -> &'static str {
        match self {
            Polarization::TE => "TE",
            Polarization::TM => "TM",
        }
    }
}

/// Wave numbers of one mode in vacuum and in the dielectric, tied together
/// by Snell's law `k_zd² = (n² − 1) k_∥² + n² k_z²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WaveVectors {
    pub k_par: f64,
    pub k_z: Complex64,
    pub k_zd: Complex64,
}

impl WaveVectors {
    pub fn from_vacuum(k_par: f64, k_z: Complex64, n: f64) -> Self {
        WaveVectors { k_par, k_z, k_zd: snell_kzd(k_par, k_z, n) }
    }

    pub fn from_dielectric(k_par: f64, k_zd: Complex64, n: f64) -> Self {
        WaveVectors { k_par, k_z: snell_kz(k_par, k_zd, n), k_zd }
    }

    /// Evanescent decay rate `κ = |i k_z|`.
    pub fn kappa(&self) -> f64 {
        self.k_z.norm()
    }
}

/// `k_zd = √((n² − 1) k_∥² + n² k_z²)`, principal branch (`Re ≥ 0`).
pub fn snell_kzd(k_par: f64, k_z: Complex64, n: f64) -> Complex64 {
    let n2 = n * n;
    (k_z * k_z * n2 + (n2 - 1.0) * k_par * k_par).sqrt()
}

/// `k_z = √(k_zd² − (n² − 1) k_∥²) / n`, principal branch (`Re ≥ 0`).
///
/// Below the light line (`k_zd² < (n² − 1)k_∥²`) this is `i κ` with `κ > 0`.
pub fn snell_kz(k_par: f64, k_zd: Complex64, n: f64) -> Complex64 {
    (k_zd * k_zd - (n * n - 1.0) * k_par * k_par).sqrt() / n
}

fn is_vanishing(den: Complex64, scale: f64) -> bool {
    den.norm() <= 1e-14 * scale || !den.is_finite()
}

/// Single-interface Fresnel amplitude for a wave incident from vacuum.
pub fn fresnel_r(pol: Polarization, k_z: Complex64, k_zd: Complex64, n: f64) -> Result<Complex64> {
    let (num, den, scale) = match pol {
        Polarization::TE => (k_z - k_zd, k_z + k_zd, k_z.norm() + k_zd.norm()),
        Polarization::TM => {
            let a = k_z * (n * n);
            (a - k_zd, a + k_zd, a.norm() + k_zd.norm())
        }
    };
    if is_vanishing(den, scale) {
        return Err(Error::Pole { k_z, k_par: f64::NAN });
    }
    Ok(num / den)
}

fn check_slab(thickness: f64, n: f64) -> Result<()> {
    if !(thickness >= 0.0 && thickness.is_finite()) {
        return Err(Error::domain("slab thickness (need finite L >= 0)", thickness));
    }
    if !(n >= 1.0) {
        return Err(Error::domain("refractive index (need n >= 1)", n));
    }
    Ok(())
}

struct SlabParts {
    r: Complex64,
    k_zd: Complex64,
    phase: Complex64,
    den: Complex64,
}

fn slab_parts(pol: Polarization, k_z: Complex64, k_par: f64, thickness: f64, n: f64) -> Result<SlabParts> {
    check_slab(thickness, n)?;
    let k_zd = snell_kzd(k_par, k_z, n);
    let r = fresnel_r(pol, k_z, k_zd, n).map_err(|_| Error::Pole { k_z, k_par })?;
    let phase = (Complex64::i() * k_zd * (2.0 * thickness)).exp();
    let den = Complex64::new(1.0, 0.0) - r * r * phase;
    Ok(SlabParts { r, k_zd, phase, den })
}

/// `1 − r_λ² e^{2 i k_zd L}`, the denominator whose zeros are the trapped modes.
pub fn slab_denominator(pol: Polarization, k_z: Complex64, k_par: f64, thickness: f64, n: f64) -> Result<Complex64> {
    slab_parts(pol, k_z, k_par, thickness, n).map(|p| p.den)
}

/// Slab reflection amplitude `R_λ`, referenced to the slab centre.
pub fn slab_r(pol: Polarization, k_z: Complex64, k_par: f64, thickness: f64, n: f64) -> Result<Complex64> {
    let p = slab_parts(pol, k_z, k_par, thickness, n)?;
    if is_vanishing(p.den, 1.0 + (p.r * p.r * p.phase).norm()) {
        return Err(Error::Pole { k_z, k_par });
    }
    let one = Complex64::new(1.0, 0.0);
    Ok(p.r * (one - p.phase) / p.den * (-Complex64::i() * k_z * thickness).exp())
}

/// Slab transmission amplitude `T_λ`.
pub fn slab_t(pol: Polarization, k_z: Complex64, k_par: f64, thickness: f64, n: f64) -> Result<Complex64> {
    let p = slab_parts(pol, k_z, k_par, thickness, n)?;
    if is_vanishing(p.den, 1.0 + (p.r * p.r * p.phase).norm()) {
        return Err(Error::Pole { k_z, k_par });
    }
    let one = Complex64::new(1.0, 0.0);
    Ok((one - p.r * p.r) / p.den * (Complex64::i() * (p.k_zd - k_z) * thickness).exp())
}

/// How `coth Λ` is treated inside [`rtilde_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CothModel {
    /// The exact slab kernel.
    Exact,
    /// `coth Λ = 1`: a dielectric half-space.
    HalfSpace,
    /// `coth Λ ≈ 1/Λ`: the thin-slab kernel.
    ThinSlab,
}

/// Slab reflection kernel `R̃_λ(s, t)` for `λ = L E_ji`.
///
/// `lambda = ∞` selects the half-space kernel. Returns exactly 0 at `Λ = 0`.
pub fn rtilde(pol: Polarization, s: f64, t: f64, lambda: f64, n: f64) -> f64 {
    let model = if lambda.is_infinite() { CothModel::HalfSpace } else { CothModel::Exact };
    rtilde_with(pol, s, t, lambda, n, model)
}

/// [`rtilde`] with an explicit treatment of `coth Λ`, where
/// `Λ = λ s √(1 + (n² − 1)t²)`.
pub fn rtilde_with(pol: Polarization, s: f64, t: f64, lambda: f64, n: f64, model: CothModel) -> f64 {
    let n2 = n * n;
    let a = (n2 - 1.0) * t * t;
    let root = (1.0 + a).sqrt();
    // num / (base + cross · coth Λ) for both polarizations
    let (num, base, cross) = match pol {
        Polarization::TE => (-a, 2.0 + a, 2.0 * root),
        Polarization::TM => (n2 * n2 - 1.0 - a, n2 * n2 + 1.0 + a, 2.0 * n2 * root),
    };
    match model {
        CothModel::HalfSpace => num / (base + cross),
        CothModel::Exact => {
            let big_lambda = lambda * s * root;
            // multiplied through by Λ so that Λ → 0 is regular
            num * big_lambda / (base * big_lambda + cross * x_coth_x(big_lambda))
        }
        CothModel::ThinSlab => {
            let sl = s * lambda;
            // coth Λ ≈ 1/Λ removes the square root from the cross term
            num * sl / (base * sl + cross / root)
        }
    }
}

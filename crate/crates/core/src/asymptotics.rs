//! Limiting forms of the shift: half-space, thin slab, retarded and
//! non-retarded regimes, and the magnetodielectric-plate formula used as a
//! cross-check of the retarded thin-slab result.

use alloc::vec::Vec;
use core::f64::consts::{LN_10, PI};

use num_traits::Float;

use crate::electrostatics::{image_series_shift, ImageSeriesSpec};
use crate::quad::{integrate, Tolerance};
use crate::reflection::CothModel;
use crate::shift::{s_integral, transition_w_pairs, w_pair_with, Component, Estimate, QuadratureSpec};
use crate::system::{assemble_shift, reduce, AtomSpec, EnergyShift, ReducedParams, Slab, WPair};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Regime {
    Retarded,
    NonRetarded,
    Intermediate,
}

impl Regime {
    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Retarded => "retarded",
            Regime::NonRetarded => "non-retarded",
            Regime::Intermediate => "intermediate",
        }
    }
}

/// Bounds on `2ζ = 2𝒵E_ji` used to label a configuration.
///
/// The physics only says `2ζ ≫ 1` or `2ζ ≪ 1`; the defaults put the
/// boundaries a decade away from 1 on either side.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeThresholds {
    pub retarded_min: f64,
    pub nonretarded_max: f64,
}

impl Default for RegimeThresholds {
    fn default() -> Self {
        RegimeThresholds { retarded_min: 10.0, nonretarded_max: 0.1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RegimeReport {
    pub two_zeta: f64,
    /// `L/𝒵`
    pub lambda_over_zeta: f64,
    pub regime: Regime,
}

pub fn classify_regime(p: &ReducedParams) -> RegimeReport {
    classify_regime_with(p, &RegimeThresholds::default())
}

pub fn classify_regime_with(p: &ReducedParams, th: &RegimeThresholds) -> RegimeReport {
    let two_zeta = 2.0 * p.zeta;
    let regime = if two_zeta >= th.retarded_min {
        Regime::Retarded
    } else if two_zeta <= th.nonretarded_max {
        Regime::NonRetarded
    } else {
        Regime::Intermediate
    };
    RegimeReport { two_zeta, lambda_over_zeta: p.lambda / p.zeta, regime }
}

fn regimes(atom: &AtomSpec, slab: &Slab, z: f64) -> Result<Vec<RegimeReport>> {
    atom.transitions().iter().map(|t| reduce(slab, t, z).map(|p| classify_regime(&p))).collect()
}

/// A closed-form or reduced estimate together with the regime labels of
/// each transition it was evaluated for.
#[derive(Clone, Debug, PartialEq)]
pub struct AsymptoticShift {
    pub shift: EnergyShift,
    pub regimes: Vec<RegimeReport>,
}

/// `(S_∥, S_⊥)` of a dielectric half-space (`coth Λ = 1`).
pub fn halfspace_s(zeta: f64, n: f64, q: &QuadratureSpec) -> Result<(Estimate, Estimate)> {
    let p = ReducedParams::new(zeta, f64::INFINITY, n)?;
    Ok((
        s_integral(Component::Parallel, &p, q, CothModel::HalfSpace)?,
        s_integral(Component::Perpendicular, &p, q, CothModel::HalfSpace)?,
    ))
}

pub fn halfspace_w(zeta: f64, n: f64, q: &QuadratureSpec) -> Result<WPair> {
    let p = ReducedParams::new(zeta, f64::INFINITY, n)?;
    w_pair_with(&p, q, CothModel::HalfSpace)
}

/// Full shift in front of a half-space of index `n`.
pub fn halfspace_shift(atom: &AtomSpec, n: f64, z: f64, q: &QuadratureSpec) -> Result<EnergyShift> {
    let slab = Slab::half_space(n)?;
    let w = transition_w_pairs(atom, &slab, z, q)?;
    assemble_shift(atom, z, &w)
}

/// `W` pair with the thin-slab kernels (`coth Λ ≈ 1/Λ`), integrated numerically.
pub fn thin_slab_w(p: &ReducedParams, q: &QuadratureSpec) -> Result<WPair> {
    w_pair_with(p, q, CothModel::ThinSlab)
}

fn check_distance(z: f64) -> Result<()> {
    if z > 0.0 && z.is_finite() {
        Ok(())
    } else {
        Err(Error::domain("atom-surface distance Z (need > 0)", z))
    }
}

/// Retarded shift near a slab that is thin compared with `𝒵`:
///
/// ```text
/// δE ≈ −(n² − 1)L/(160π² n² 𝒵⁵) Σ_j [(5 + 9n²)|μ_∥|² + 2(4 + 5n²)|μ_⊥|²] / E_ji
/// ```
///
/// The formula is evaluated for any input; the attached regime reports say
/// whether `2ζ ≫ 1` actually holds.
pub fn retarded_thin_shift(atom: &AtomSpec, slab: &Slab, z: f64) -> Result<AsymptoticShift> {
    check_distance(z)?;
    let n2 = slab.permittivity();
    let l = slab.thickness();
    let pre = -(n2 - 1.0) * l / (160.0 * PI * PI * n2 * z.powi(5));
    let parts = atom
        .transitions()
        .iter()
        .map(|t| {
            let bracket = (5.0 + 9.0 * n2) * t.mu_par_sq() + 2.0 * (4.0 + 5.0 * n2) * t.mu_perp_sq();
            pre * bracket / t.energy()
        })
        .collect();
    Ok(AsymptoticShift { shift: EnergyShift::from_parts(parts), regimes: regimes(atom, slab, z)? })
}

/// Ground-state atom near a thin magnetodielectric plate with `ε(0) = n²`
/// and `μ(0) = 1`:
///
/// ```text
/// U = −α(0)/(160π²) · L/𝒵⁵ · [(14ε² − 9)/ε − (6μ² − 1)/μ]
/// ```
pub fn buhmann_u(alpha0: f64, n: f64, thickness: f64, z: f64) -> Result<f64> {
    check_distance(z)?;
    let slab = Slab::new(n, thickness)?;
    let eps = slab.permittivity();
    let mu = 1.0;
    let bracket = (14.0 * eps * eps - 9.0) / eps - (6.0 * mu * mu - 1.0) / mu;
    Ok(-alpha0 / (160.0 * PI * PI) * thickness / z.powi(5) * bracket)
}

/// Non-retarded shift, summed exactly as an image series.
pub fn nonretarded_shift(atom: &AtomSpec, slab: &Slab, z: f64, spec: &ImageSeriesSpec) -> Result<AsymptoticShift> {
    check_distance(z)?;
    Ok(AsymptoticShift { shift: image_series_shift(atom, slab, z, spec)?, regimes: regimes(atom, slab, z)? })
}

/// `∫₀^∞ k² e^{−2𝒵k} (1 − e^{−2kL}) / (1 − β² e^{−2kL}) dk` by adaptive
/// quadrature, truncated where `e^{−2𝒵k}` has fallen by
/// `q.s_cutoff_decades` decades.
pub fn nonretarded_integral(slab: &Slab, z: f64, q: &QuadratureSpec) -> Result<Estimate> {
    check_distance(z)?;
    q.validate()?;
    let l = slab.thickness();
    let beta = slab.image_factor();
    if l == 0.0 || beta == 0.0 {
        return Ok(Estimate::ZERO);
    }
    let beta_sq = beta * beta;
    let k_max = q.s_cutoff_decades * LN_10 / (2.0 * z);
    let mut breaks = alloc::vec![0.0, 0.5 / z, 1.5 / z];
    if l.is_finite() && 1.0 / l < k_max {
        breaks.push(1.0 / l);
    }
    breaks.push(k_max);
    breaks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    // integrate on the 𝒵³-scaled problem so that abs_tol is meaningful
    let scale = z * z * z;
    let r = integrate(
        |k| {
            let slab_factor = if l.is_infinite() {
                1.0
            } else {
                let e = (-2.0 * k * l).exp();
                -(-2.0 * k * l).exp_m1() / (1.0 - beta_sq * e)
            };
            scale * k * k * (-2.0 * z * k).exp() * slab_factor
        },
        &breaks,
        Tolerance { rel: q.rel_tol, abs: q.abs_tol },
        q.max_subdivisions,
    )?;
    Ok(Estimate { value: r.value / scale, err_est: r.err_est / scale })
}

/// Non-retarded shift with the `k` integral done by quadrature; the
/// independent counterpart of [`nonretarded_shift`].
pub fn nonretarded_shift_quadrature(
    atom: &AtomSpec,
    slab: &Slab,
    z: f64,
    q: &QuadratureSpec,
) -> Result<AsymptoticShift> {
    let integral = nonretarded_integral(slab, z, q)?.value;
    let beta = slab.image_factor();
    let parts = atom.transitions().iter().map(|t| -beta / (16.0 * PI) * t.electrostatic_weight() * integral).collect();
    Ok(AsymptoticShift { shift: EnergyShift::from_parts(parts), regimes: regimes(atom, slab, z)? })
}

/// Non-retarded shift near a thin slab,
/// `ΔE ≈ −3(n⁴ − 1)/(256π n²) · L/𝒵⁴ · Σ_j (2|μ_⊥|² + |μ_∥|²)`.
pub fn nonretarded_thin_shift(atom: &AtomSpec, slab: &Slab, z: f64) -> Result<AsymptoticShift> {
    check_distance(z)?;
    let n2 = slab.permittivity();
    let pre = -3.0 * (n2 * n2 - 1.0) / (256.0 * PI * n2) * slab.thickness() / z.powi(4);
    let parts = atom.transitions().iter().map(|t| pre * t.electrostatic_weight()).collect();
    Ok(AsymptoticShift { shift: EnergyShift::from_parts(parts), regimes: regimes(atom, slab, z)? })
}

//! The exact Casimir-Polder shift as a double integral over the polar
//! quadrature variables `s ∈ [0, ∞)` and `t ∈ [0, 1]`:
//!
//! ```text
//! S_∥ = ¼ ∫ds ∫dt s³/(s²t² + 1) (R̃_TM − t² R̃_TE) e^{−2ζs}
//! S_⊥ = ½ ∫ds ∫dt s³/(s²t² + 1) (1 − t²) R̃_TM   e^{−2ζs}
//! ```
//!
//! with `W_∥ = 8ζ⁴ S_∥` and `W_z = 8ζ⁴ S_⊥`, normalised so that a perfect
//! mirror gives `W = 1` at large `ζ`. The physical shift is
//! `δE = −(1/2π²) Σ_j E_ji³ (S_∥ |μ_∥|² + S_⊥ |μ_⊥|²)`.
//!
//! The inner `t` integral is done adaptively for every outer node; the outer
//! `s` integral is truncated where `e^{−2ζs}` has fallen by
//! `s_cutoff_decades` decades.

use alloc::vec::Vec;
use core::f64::consts::LN_10;

use num_traits::Float;

use crate::quad::{integrate, try_integrate, Tolerance};
use crate::reflection::{rtilde_with, CothModel, Polarization};
pub use crate::system::WPair;
use crate::system::{assemble_shift, reduce, AtomSpec, EnergyShift, ReducedParams, Slab};
use crate::Result;

/// Accuracy contract of the double integrals.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub s_cutoff_decades: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec { rel_tol: 1e-8, abs_tol: 1e-14, s_cutoff_decades: 37.0, max_subdivisions: 2000 }
    }
}

impl QuadratureSpec {
    pub fn with_rel_tol(self, rel_tol: f64) -> Self {
        QuadratureSpec { rel_tol, ..self }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(crate::Error::domain("relative tolerance (need > 0)", self.rel_tol));
        }
        if !(self.abs_tol > 0.0) {
            return Err(crate::Error::domain("absolute tolerance (need > 0)", self.abs_tol));
        }
        if !(self.s_cutoff_decades > 0.0) {
            return Err(crate::Error::domain("cutoff decades (need > 0)", self.s_cutoff_decades));
        }
        if self.max_subdivisions < 2 {
            return Err(crate::Error::domain("subdivision budget (need >= 2)", self.max_subdivisions as f64));
        }
        Ok(())
    }

    /// Upper limit of the `s` integral for a given `ζ`.
    pub fn s_max(&self, zeta: f64) -> f64 {
        self.s_cutoff_decades * LN_10 / (2.0 * zeta)
    }
}

/// A quadrature value with its error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub err_est: f64,
}

impl Estimate {
    pub const ZERO: Estimate = Estimate { value: 0.0, err_est: 0.0 };
}

/// Which dipole orientation an integral belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Component {
    Parallel,
    Perpendicular,
}

impl Component {
    fn prefactor(self) -> f64 {
        match self {
            Component::Parallel => 0.25,
            Component::Perpendicular => 0.5,
        }
    }
}

/// `t`-integrand of `S_∥` or `S_⊥` without the `s³ e^{−2ζs}` factor.
#[inline]
pub fn angular_integrand(component: Component, s: f64, t: f64, p: &ReducedParams, model: CothModel) -> f64 {
    let lorentz = 1.0 / (s * s * t * t + 1.0);
    let tm = rtilde_with(Polarization::TM, s, t, p.lambda, p.n, model);
    match component {
        Component::Parallel => {
            let te = rtilde_with(Polarization::TE, s, t, p.lambda, p.n, model);
            lorentz * (tm - t * t * te)
        }
        Component::Perpendicular => lorentz * (1.0 - t * t) * tm,
    }
}

fn decade_breaks(lo: f64, hi: f64, out: &mut Vec<f64>) {
    let mut x = 10.0_f64.powi(lo.log10().floor() as i32);
    while x < hi {
        if x > lo {
            out.push(x);
        }
        x *= 10.0;
    }
}

fn t_breaks(s: f64, n: f64) -> Vec<f64> {
    let mut b = alloc::vec![0.0];
    if s > 1.0 {
        decade_breaks(0.5 / s, 1.0, &mut b);
        b.push(1.0 / s);
    }
    if n > 1.0 {
        b.push(1.0 / n);
    }
    b.push(1.0);
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.dedup();
    b
}

fn s_breaks(p: &ReducedParams, s_max: f64) -> Vec<f64> {
    let mut b = alloc::vec![0.0];
    let start = 1e-2 * (1.0 / p.zeta).min(1.0);
    decade_breaks(start, s_max, &mut b);
    for x in [1.0 / p.zeta, 3.0 / (2.0 * p.zeta), 1.0 / p.lambda] {
        if x.is_finite() && x > 0.0 && x < s_max {
            b.push(x);
        }
    }
    b.push(s_max);
    b.sort_by(|x, y| x.partial_cmp(y).unwrap());
    b.dedup();
    b
}

/// `S_∥` or `S_⊥` with an explicit reflection model.
pub fn s_integral(component: Component, p: &ReducedParams, q: &QuadratureSpec, model: CothModel) -> Result<Estimate> {
    q.validate()?;
    if p.n == 1.0 || (p.lambda == 0.0 && model != CothModel::HalfSpace) {
        return Ok(Estimate::ZERO);
    }
    if p.zeta < 1e-6 {
        log::warn!(
            "zeta = {:e} is deep in the non-retarded regime; the electrostatic image series is the better tool",
            p.zeta
        );
    }
    // Integrate on the W scale so that abs_tol never dominates a small S.
    let scale = (8.0 * p.zeta.powi(4)).max(1.0);
    let inner_tol = Tolerance { rel: 0.1 * q.rel_tol, abs: f64::MIN_POSITIVE };
    let outer_tol = Tolerance { rel: 0.9 * q.rel_tol, abs: q.abs_tol };
    let s_max = q.s_max(p.zeta);

    let outer = try_integrate(
        |s| {
            let weight = scale * s * s * s * (-2.0 * p.zeta * s).exp();
            if weight == 0.0 {
                return Ok(0.0);
            }
            let inner = integrate(
                |t| angular_integrand(component, s, t, p, model),
                &t_breaks(s, p.n),
                inner_tol,
                q.max_subdivisions,
            )?;
            Ok(weight * inner.value)
        },
        &s_breaks(p, s_max),
        outer_tol,
        q.max_subdivisions,
    )?;
    let pre = component.prefactor() / scale;
    Ok(Estimate { value: pre * outer.value, err_est: pre * (outer.err_est + inner_tol.rel * outer.abs_value) })
}

/// `S_∥(ζ, λ, n)`.
pub fn s_parallel(p: &ReducedParams, q: &QuadratureSpec) -> Result<Estimate> {
    s_integral(Component::Parallel, p, q, default_model(p))
}

/// `S_⊥(ζ, λ, n)`.
pub fn s_perp(p: &ReducedParams, q: &QuadratureSpec) -> Result<Estimate> {
    s_integral(Component::Perpendicular, p, q, default_model(p))
}

fn default_model(p: &ReducedParams) -> CothModel {
    if p.is_half_space() {
        CothModel::HalfSpace
    } else {
        CothModel::Exact
    }
}

/// `W_∥ = 8ζ⁴ S_∥` and `W_z = 8ζ⁴ S_⊥`.
pub fn w_pair(p: &ReducedParams, q: &QuadratureSpec) -> Result<WPair> {
    w_pair_with(p, q, default_model(p))
}

pub fn w_pair_with(p: &ReducedParams, q: &QuadratureSpec, model: CothModel) -> Result<WPair> {
    let par = s_integral(Component::Parallel, p, q, model)?;
    let perp = s_integral(Component::Perpendicular, p, q, model)?;
    let norm = 8.0 * p.zeta.powi(4);
    Ok(WPair { w_par: norm * par.value, w_z: norm * perp.value, err_est: norm * par.err_est.max(perp.err_est) })
}

/// One [`WPair`] per transition of `atom`.
pub fn transition_w_pairs(atom: &AtomSpec, slab: &Slab, z: f64, q: &QuadratureSpec) -> Result<Vec<WPair>> {
    atom.transitions().iter().map(|t| w_pair(&reduce(slab, t, z)?, q)).collect()
}

/// Full Casimir-Polder shift of `atom` at distance `z` from the slab surface.
pub fn energy_shift(atom: &AtomSpec, slab: &Slab, z: f64, q: &QuadratureSpec) -> Result<EnergyShift> {
    let w = transition_w_pairs(atom, slab, z, q)?;
    assemble_shift(atom, z, &w)
}

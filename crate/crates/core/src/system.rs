//! Slab, atom and geometry types, reduction to dimensionless parameters, and
//! assembly of the physical shift from the dimensionless `W` functions.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::{Error, Result};

/// A non-dispersive dielectric slab of refractive index `n` and thickness
/// `thickness`, occupying `-L/2 ≤ z ≤ L/2`.
///
/// An infinite thickness describes a dielectric half-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Slab {
    n: f64,
    thickness: f64,
}

impl Slab {
    pub fn new(n: f64, thickness: f64) -> Result<Self> {
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::domain("refractive index (need n >= 1)", n));
        }
        if !(thickness >= 0.0) {
            return Err(Error::domain("slab thickness (need L >= 0)", thickness));
        }
        Ok(Slab { n, thickness })
    }

    pub fn half_space(n: f64) -> Result<Self> {
        Slab::new(n, f64::INFINITY)
    }

    pub fn n(&self) -> f64 {
        self.n
    }

    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    /// Static permittivity `ε = n²` inside the slab.
    pub fn permittivity(&self) -> f64 {
        self.n * self.n
    }

    /// `β = (ε − 1)/(ε + 1)`, the electrostatic image factor.
    pub fn image_factor(&self) -> f64 {
        let eps = self.permittivity();
        (eps - 1.0) / (eps + 1.0)
    }
}

/// One dipole transition `|i⟩ → |j⟩` out of the ground state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Transition {
    energy: f64,
    mu_par_sq: f64,
    mu_perp_sq: f64,
}

impl Transition {
    /// `energy` is `E_ji`; the dipole squares are `|μ_∥|² = |μ_x|² + |μ_y|²`
    /// and `|μ_⊥|² = |μ_z|²`.
    pub fn new(energy: f64, mu_par_sq: f64, mu_perp_sq: f64) -> Result<Self> {
        if !(energy > 0.0 && energy.is_finite()) {
            return Err(Error::domain("transition energy (need E_ji > 0)", energy));
        }
        if !(mu_par_sq >= 0.0 && mu_par_sq.is_finite()) {
            return Err(Error::domain("|mu_par|^2 (need >= 0)", mu_par_sq));
        }
        if !(mu_perp_sq >= 0.0 && mu_perp_sq.is_finite()) {
            return Err(Error::domain("|mu_perp|^2 (need >= 0)", mu_perp_sq));
        }
        if mu_par_sq == 0.0 && mu_perp_sq == 0.0 {
            return Err(Error::domain("dipole moments (both zero)", 0.0));
        }
        Ok(Transition { energy, mu_par_sq, mu_perp_sq })
    }

    /// Isotropic transition with `|μ_x|² = |μ_y|² = |μ_z|² = mu_nu_sq`.
    pub fn isotropic(energy: f64, mu_nu_sq: f64) -> Result<Self> {
        Transition::new(energy, 2.0 * mu_nu_sq, mu_nu_sq)
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn mu_par_sq(&self) -> f64 {
        self.mu_par_sq
    }

    pub fn mu_perp_sq(&self) -> f64 {
        self.mu_perp_sq
    }

    /// `2|μ_⊥|² + |μ_∥|²`, the combination that enters the non-retarded shift.
    pub fn electrostatic_weight(&self) -> f64 {
        2.0 * self.mu_perp_sq + self.mu_par_sq
    }
}

/// The dipole transitions that contribute to the ground-state shift.
#[derive(Clone, Debug, PartialEq)]
pub struct AtomSpec {
    transitions: Vec<Transition>,
}

impl AtomSpec {
    pub fn new(transitions: Vec<Transition>) -> Result<Self> {
        if transitions.is_empty() {
            return Err(Error::domain("atom transition count", 0.0));
        }
        Ok(AtomSpec { transitions })
    }

    pub fn single(t: Transition) -> Self {
        AtomSpec { transitions: alloc::vec![t] }
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    /// Scales every dipole square by `c > 0`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let ts = self
            .transitions
            .iter()
            .map(|t| Transition::new(t.energy, c * t.mu_par_sq, c * t.mu_perp_sq))
            .collect::<Result<Vec<_>>>()?;
        AtomSpec::new(ts)
    }
}

/// Dimensionless parameters of one transition: `ζ = 𝒵 E_ji`, `λ = L E_ji`
/// and the refractive index. `λ = ∞` is the half-space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReducedParams {
    pub zeta: f64,
    pub lambda: f64,
    pub n: f64,
}

impl ReducedParams {
    pub fn new(zeta: f64, lambda: f64, n: f64) -> Result<Self> {
        if !(zeta > 0.0 && zeta.is_finite()) {
            return Err(Error::domain("zeta = Z E_ji (need > 0)", zeta));
        }
        if !(lambda >= 0.0) {
            return Err(Error::domain("lambda = L E_ji (need >= 0)", lambda));
        }
        if !(n >= 1.0 && n.is_finite()) {
            return Err(Error::domain("refractive index (need n >= 1)", n));
        }
        Ok(ReducedParams { zeta, lambda, n })
    }

    pub fn is_half_space(&self) -> bool {
        self.lambda.is_infinite()
    }
}

/// Reduce a physical configuration to `(ζ, λ, n)`.
///
/// `z` is the atom–surface distance `𝒵 = z₀ − L/2`.
pub fn reduce(slab: &Slab, transition: &Transition, z: f64) -> Result<ReducedParams> {
    if !(z > 0.0 && z.is_finite()) {
        return Err(Error::domain("atom-surface distance Z (need > 0)", z));
    }
    ReducedParams::new(z * transition.energy, slab.thickness * transition.energy, slab.n)
}

/// Dimensionless shift functions of one transition, normalised so that both
/// equal 1 for a perfect mirror in the retarded limit.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WPair {
    pub w_par: f64,
    pub w_z: f64,
    /// Error bound propagated from the quadrature.
    pub err_est: f64,
}

impl WPair {
    pub const ZERO: WPair = WPair { w_par: 0.0, w_z: 0.0, err_est: 0.0 };
}

/// Total shift and its per-transition contributions, in natural units.
#[derive(Clone, Debug, PartialEq)]
pub struct EnergyShift {
    pub value: f64,
    pub per_transition: Vec<f64>,
}

impl EnergyShift {
    pub fn from_parts(per_transition: Vec<f64>) -> Self {
        let value = per_transition.iter().sum();
        EnergyShift { value, per_transition }
    }
}

/// `δE = −(1/4π) Σ_j (W_∥|μ_∥|² + W_z|μ_⊥|²) / (4π E_ji 𝒵⁴)`.
pub fn assemble_shift(atom: &AtomSpec, z: f64, w: &[WPair]) -> Result<EnergyShift> {
    if w.len() != atom.transitions.len() {
        return Err(Error::LengthMismatch { expected: atom.transitions.len(), found: w.len() });
    }
    if !(z > 0.0) {
        return Err(Error::domain("atom-surface distance Z (need > 0)", z));
    }
    let z4 = z * z * z * z;
    let parts = atom
        .transitions
        .iter()
        .zip(w)
        .map(|(t, w)| -(w.w_par * t.mu_par_sq + w.w_z * t.mu_perp_sq) / (16.0 * PI * PI * t.energy * z4))
        .collect();
    Ok(EnergyShift::from_parts(parts))
}

/// `|μ_σ|² = 4πα |p_σ|² / (m² E_ji²)`.
pub fn dipole_sq_from_momentum(p_sq: f64, energy: f64, alpha_fs: f64, mass: f64) -> Result<f64> {
    check_conversion(energy, mass)?;
    Ok(4.0 * PI * alpha_fs * p_sq / (mass * mass * energy * energy))
}

/// Inverse of [`dipole_sq_from_momentum`].
pub fn momentum_sq_from_dipole(mu_sq: f64, energy: f64, alpha_fs: f64, mass: f64) -> Result<f64> {
    check_conversion(energy, mass)?;
    Ok(mu_sq * mass * mass * energy * energy / (4.0 * PI * alpha_fs))
}

fn check_conversion(energy: f64, mass: f64) -> Result<()> {
    if !(energy > 0.0) {
        return Err(Error::domain("transition energy (need E_ji > 0)", energy));
    }
    if !(mass > 0.0) {
        return Err(Error::domain("mass (need m > 0)", mass));
    }
    Ok(())
}

/// Static polarizability `α(0) = 2 Σ_j |μ_ν|²/E_ji` of an isotropic atom.
///
/// Every transition must satisfy `|μ_∥|² = 2|μ_⊥|²`.
pub fn static_polarizability(atom: &AtomSpec) -> Result<f64> {
    let mut alpha = 0.0;
    for t in &atom.transitions {
        if !is_isotropic(t) {
            return Err(Error::Unsupported("static polarizability of an anisotropic atom"));
        }
        alpha += 2.0 * t.mu_perp_sq / t.energy;
    }
    Ok(alpha)
}

pub(crate) fn is_isotropic(t: &Transition) -> bool {
    (t.mu_par_sq - 2.0 * t.mu_perp_sq).abs() <= 1e-12 * t.mu_par_sq.max(t.mu_perp_sq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn unit_atom() -> AtomSpec {
        AtomSpec::single(Transition::new(1.0, 1.0, 1.0).unwrap())
    }

    #[test]
    fn reduce_examples() {
        let t1 = Transition::new(1.0, 1.0, 1.0).unwrap();
        let p = reduce(&Slab::new(2.0, 1.0).unwrap(), &t1, 1.0).unwrap();
        assert_eq!((p.zeta, p.lambda, p.n), (1.0, 1.0, 2.0));

        let t3 = Transition::new(3.0, 1.0, 0.0).unwrap();
        let p = reduce(&Slab::new(2.0, 0.0).unwrap(), &t3, 2.0).unwrap();
        assert_eq!((p.zeta, p.lambda, p.n), (6.0, 0.0, 2.0));

        let t2 = Transition::new(2.0, 0.0, 1.0).unwrap();
        let p = reduce(&Slab::new(1.5, 0.5).unwrap(), &t2, 4.0).unwrap();
        assert_eq!((p.zeta, p.lambda, p.n), (8.0, 1.0, 1.5));
    }

    #[test]
    fn reduce_rejects_bad_distance_and_energy() {
        let s = Slab::new(2.0, 1.0).unwrap();
        let t = Transition::new(1.0, 1.0, 1.0).unwrap();
        assert!(matches!(reduce(&s, &t, 0.0), Err(Error::Domain { .. })));
        assert!(matches!(reduce(&s, &t, -1.0), Err(Error::Domain { .. })));
        assert!(Transition::new(0.0, 1.0, 1.0).is_err());
        assert!(Transition::new(-1.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn type_invariants() {
        assert!(Slab::new(0.9, 1.0).is_err());
        assert!(Slab::new(2.0, -1.0).is_err());
        assert!(Slab::new(f64::NAN, 1.0).is_err());
        assert!(Slab::half_space(2.0).unwrap().thickness().is_infinite());
        assert!(Transition::new(1.0, 0.0, 0.0).is_err());
        assert!(Transition::new(1.0, -1.0, 1.0).is_err());
        assert!(AtomSpec::new(vec![]).is_err());
        assert!(ReducedParams::new(0.0, 1.0, 2.0).is_err());
        assert!(ReducedParams::new(1.0, -1.0, 2.0).is_err());
        assert!(ReducedParams::new(1.0, f64::INFINITY, 2.0).unwrap().is_half_space());
    }

    #[test]
    fn assemble_zero_w_is_zero() {
        let s = assemble_shift(&unit_atom(), 1.0, &[WPair::ZERO]).unwrap();
        assert_eq!(s.value, 0.0);
    }

    #[test]
    fn assemble_unit_plug_in() {
        let w = WPair { w_par: 1.0, w_z: 1.0, err_est: 0.0 };
        let s = assemble_shift(&unit_atom(), 1.0, &[w]).unwrap();
        let expected = -1.0 / (8.0 * PI * PI);
        assert!((s.value - expected).abs() < 1e-16);
        assert_eq!(s.per_transition, vec![s.value]);
    }

    #[test]
    fn assemble_two_identical_transitions_doubles() {
        let t = Transition::new(1.3, 0.7, 0.2).unwrap();
        let w = WPair { w_par: 0.4, w_z: 0.9, err_est: 0.0 };
        let one = assemble_shift(&AtomSpec::single(t), 2.0, &[w]).unwrap();
        let two = assemble_shift(&AtomSpec::new(vec![t, t]).unwrap(), 2.0, &[w, w]).unwrap();
        assert_eq!(two.value, 2.0 * one.value);
        assert_eq!(two.per_transition.iter().sum::<f64>(), two.value);
    }

    #[test]
    fn assemble_length_mismatch() {
        let e = assemble_shift(&unit_atom(), 1.0, &[WPair::ZERO, WPair::ZERO]).unwrap_err();
        assert_eq!(e, Error::LengthMismatch { expected: 1, found: 2 });
    }

    #[test]
    fn dipole_momentum_conversion() {
        let alpha = 7.297_352_569_3e-3;
        assert_eq!(dipole_sq_from_momentum(0.0, 1.0, alpha, 1.0).unwrap(), 0.0);
        let a = dipole_sq_from_momentum(2.5, 1.0, alpha, 3.0).unwrap();
        let b = dipole_sq_from_momentum(2.5, 2.0, alpha, 3.0).unwrap();
        assert!((a / 4.0 - b).abs() <= 1e-15 * b);
        let mu = 0.37;
        let p = momentum_sq_from_dipole(mu, 1.7, alpha, 0.51).unwrap();
        let back = dipole_sq_from_momentum(p, 1.7, alpha, 0.51).unwrap();
        assert!((back - mu).abs() <= 1e-14 * mu);
        assert!(dipole_sq_from_momentum(1.0, 0.0, alpha, 1.0).is_err());
    }

    #[test]
    fn polarizability_examples() {
        let a = AtomSpec::single(Transition::isotropic(2.0, 1.0).unwrap());
        assert_eq!(static_polarizability(&a).unwrap(), 1.0);
        let a = AtomSpec::new(vec![Transition::isotropic(1.0, 1.0).unwrap(), Transition::isotropic(2.0, 1.0).unwrap()])
            .unwrap();
        assert_eq!(static_polarizability(&a).unwrap(), 3.0);
        let aniso = AtomSpec::single(Transition::new(1.0, 1.0, 1.0).unwrap());
        assert!(matches!(static_polarizability(&aniso), Err(Error::Unsupported(_))));
    }
}

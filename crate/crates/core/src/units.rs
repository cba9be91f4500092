//! Conversion from laboratory units to natural units (`ħ = c = ε₀ = 1`).
//!
//! In the eV–nm system energies stay in eV, lengths in nm become eV⁻¹ through
//! `ħc`, and dipole moments given in `e·nm` become natural units through
//! `e² = 4πα` (with `ε₀ = 1`). A shift computed from converted inputs comes
//! out in eV.

use core::f64::consts::PI;

/// `ħc` in eV·nm (CODATA 2018).
pub const HBAR_C_EV_NM: f64 = 197.326_980_4;

/// Fine-structure constant (CODATA 2018).
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnitSystem {
    #[default]
    Natural,
    ElectronVoltNanometre,
}

impl UnitSystem {
    pub fn length(self, value: f64) -> f64 {
        match self {
            UnitSystem::Natural => value,
            UnitSystem::ElectronVoltNanometre => value / HBAR_C_EV_NM,
        }
    }

    pub fn energy(self, value: f64) -> f64 {
        value
    }

    /// Converts a squared dipole moment, `(e·nm)²` in the eV–nm system.
    pub fn dipole_sq(self, value: f64) -> f64 {
        match self {
            UnitSystem::Natural => value,
            UnitSystem::ElectronVoltNanometre => 4.0 * PI * FINE_STRUCTURE * value / (HBAR_C_EV_NM * HBAR_C_EV_NM),
        }
    }
}

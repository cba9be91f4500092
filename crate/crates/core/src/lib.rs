//! Casimir-Polder energy-level shift of a ground-state atom in front of a
//! non-dispersive dielectric slab of finite thickness.
//!
//! The crate is `no_std` (it needs `alloc`) and contains only the numerics:
//!
//! * [`system`]: slab, atom and reduced-parameter types, and the assembly of a
//!   physical shift from the dimensionless shift functions `W_∥`, `W_z`.
//! * [`reflection`]: Fresnel and slab coefficients, including the real
//!   reflection kernels used on the quadrature variables `(s, t)`.
//! * [`shift`]: the exact double integrals and the full energy shift.
//! * [`asymptotics`]: half-space, thin-slab, retarded and non-retarded limits.
//! * [`electrostatics`]: the image-charge series for the non-retarded shift.
//! * [`modes`]: travelling and trapped field modes of the slab and the
//!   trapped-mode dispersion solver.
//!
//! Natural units are used throughout: `ħ = c = ε₀ = 1`, so energies and
//! inverse lengths share one unit. [`units`] converts from eV and nm.

#![no_std]
// newer toolchains provide inherent float math in core, which makes the
// libm-backed Float imports redundant there; older ones still need them
#![allow(unused_imports)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod asymptotics;
pub mod electrostatics;
mod error;
pub mod math;
pub mod modes;
pub mod quad;
pub mod reflection;
pub mod shift;
pub mod system;
pub mod units;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use system::{AtomSpec, EnergyShift, ReducedParams, Slab, Transition};

//! Field modes of the slab: travelling modes (incident, reflected and
//! transmitted plane waves) and trapped modes (guided inside the slab,
//! evanescent outside), plus the trapped-mode dispersion solver.
//!
//! Every mode is a sum of plane waves `amp · ê(k) · e^{i k·r}` per region,
//! with `ê_TE = (k_y, −k_x, 0)/k_∥` and
//! `ê_TM = (k_x k_z, k_y k_z, −k_∥²)/(|k| k_∥)`. For evanescent waves `k_z` is
//! imaginary and `ê_TM` is complex and not of unit length; it is used as is.
//! The transverse wave vector points along `x`.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use num_traits::Float;

use crate::reflection::{slab_denominator, slab_r, slab_t, Polarization, WaveVectors};
use crate::system::Slab;
use crate::{Error, Result};

/// Symmetric or antisymmetric trapped mode (parity of the scalar mode
/// function inside the slab).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    S,
    A,
}

impl Parity {
    pub const BOTH: [Parity; 2] = [Parity::S, Parity::A];

    pub fn as_str(self) -> &'static str {
        match self {
            Parity::S => "S",
            Parity::A => "A",
        }
    }

    fn sign(self) -> f64 {
        match self {
            Parity::S => 1.0,
            Parity::A => -1.0,
        }
    }
}

/// One solution of the trapped-mode dispersion relation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TrappedMode {
    pub pol: Polarization,
    pub parity: Parity,
    pub k_par: f64,
    pub k_zd: f64,
    pub kappa: f64,
    /// `|h(k_zd)| / (κ + c·k_zd)` for the regular form `h` of the relation.
    pub residual: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    LeftVacuum,
    Slab,
    RightVacuum,
}

pub type Vector3 = [Complex64; 3];

#[derive(Clone, Copy, Debug, PartialEq)]
struct PlaneWave {
    amp: Complex64,
    k: Vector3,
    pol: Vector3,
}

impl PlaneWave {
    fn new(amp: Complex64, pol_kind: Polarization, k_par: f64, k_z: Complex64) -> Self {
        let k = [Complex64::new(k_par, 0.0), Complex64::new(0.0, 0.0), k_z];
        PlaneWave { amp, k, pol: polarization_vector(pol_kind, k_par, 0.0, k_z) }
    }

    fn phase(&self, r: [f64; 3]) -> Complex64 {
        let arg = self.k[0] * r[0] + self.k[1] * r[1] + self.k[2] * r[2];
        (Complex64::i() * arg).exp()
    }
}

/// Momentum-space polarization vector `ê_λ(k)`.
///
/// At `k_∥ = 0` the limit along `+x` is used.
pub fn polarization_vector(pol: Polarization, kx: f64, ky: f64, kz: Complex64) -> Vector3 {
    let k_par = (kx * kx + ky * ky).sqrt();
    let (ux, uy) = if k_par > 0.0 { (kx / k_par, ky / k_par) } else { (1.0, 0.0) };
    let zero = Complex64::new(0.0, 0.0);
    match pol {
        Polarization::TE => [Complex64::new(uy, 0.0), Complex64::new(-ux, 0.0), zero],
        Polarization::TM => {
            let k = (kz * kz + k_par * k_par).sqrt();
            [kz * ux / k, kz * uy / k, Complex64::new(-k_par, 0.0) / k]
        }
    }
}

fn cross(a: &Vector3, b: &Vector3) -> Vector3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Piecewise plane-wave representation of one electric mode function.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeField {
    half_thickness: f64,
    permittivity: f64,
    left: Vec<PlaneWave>,
    inside: Vec<PlaneWave>,
    right: Vec<PlaneWave>,
}

impl ModeField {
    pub fn region(&self, z: f64) -> Region {
        if z < -self.half_thickness {
            Region::LeftVacuum
        } else if z > self.half_thickness {
            Region::RightVacuum
        } else {
            Region::Slab
        }
    }

    pub fn half_thickness(&self) -> f64 {
        self.half_thickness
    }

    pub fn permittivity(&self, region: Region) -> f64 {
        match region {
            Region::Slab => self.permittivity,
            _ => 1.0,
        }
    }

    fn waves(&self, region: Region) -> &[PlaneWave] {
        match region {
            Region::LeftVacuum => &self.left,
            Region::Slab => &self.inside,
            Region::RightVacuum => &self.right,
        }
    }

    /// Scalar mode function `f` evaluated with the expression of `region`
    /// (which may be continued past the region's boundary).
    pub fn scalar_in(&self, region: Region, r: [f64; 3]) -> Complex64 {
        self.waves(region).iter().map(|w| w.amp * w.phase(r)).sum()
    }

    pub fn scalar(&self, r: [f64; 3]) -> Complex64 {
        self.scalar_in(self.region(r[2]), r)
    }

    /// Electric mode vector `f = Σ amp ê e^{ik·r}` using `region`'s expression.
    pub fn field_in(&self, region: Region, r: [f64; 3]) -> Vector3 {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for w in self.waves(region) {
            let c = w.amp * w.phase(r);
            for (o, p) in out.iter_mut().zip(&w.pol) {
                *o += c * p;
            }
        }
        out
    }

    pub fn field(&self, r: [f64; 3]) -> Vector3 {
        self.field_in(self.region(r[2]), r)
    }

    /// `ε(z) f`, proportional to the displacement field.
    pub fn displacement_in(&self, region: Region, r: [f64; 3]) -> Vector3 {
        let eps = self.permittivity(region);
        self.field_in(region, r).map(|c| c * eps)
    }

    /// `∇ × f`, evaluated piecewise in closed form (proportional to `B`).
    pub fn curl_in(&self, region: Region, r: [f64; 3]) -> Vector3 {
        let mut out = [Complex64::new(0.0, 0.0); 3];
        for w in self.waves(region) {
            let c = Complex64::i() * w.amp * w.phase(r);
            let kp = cross(&w.k, &w.pol);
            for (o, v) in out.iter_mut().zip(&kp) {
                *o += c * v;
            }
        }
        out
    }
}

/// Interior amplitudes `(I, J)` of a left-incident travelling mode, from
/// matching the vacuum field `e^{ik_z z} + R e^{−ik_z z}` at `z = −L/2`.
fn interior_coefficients(
    pol: Polarization,
    k: &WaveVectors,
    reflected: Complex64,
    thickness: f64,
    n: f64,
) -> (Complex64, Complex64) {
    let i = Complex64::i();
    let h = 0.5 * thickness;
    let a_plus = (-i * k.k_z * h).exp();
    let a_minus = reflected * (i * k.k_z * h).exp();
    // a₊ + a₋ = p (I' + J'),  k_z (a₊ − a₋) = q k_zd (I' − J')
    let (p, q) = match pol {
        Polarization::TE => (1.0, 1.0),
        Polarization::TM => (n, 1.0 / n),
    };
    let sum = (a_plus + a_minus) / p;
    let diff = k.k_z * (a_plus - a_minus) / (k.k_zd * q);
    let i_local = 0.5 * (sum + diff);
    let j_local = 0.5 * (sum - diff);
    (i_local * (i * k.k_zd * h).exp(), j_local * (-i * k.k_zd * h).exp())
}

/// Travelling mode incident from `side`, normalised with `N = (2π)^{−3/2}`.
///
/// `k.k_z` must be real and positive and `k.k_zd` consistent with Snell's law.
pub fn travelling_mode(side: Side, pol: Polarization, k: &WaveVectors, slab: &Slab) -> Result<ModeField> {
    if !(k.k_z.im == 0.0 && k.k_z.re > 0.0) {
        return Err(Error::domain("travelling-mode k_z (need real and > 0)", k.k_z.re));
    }
    if !(k.k_par >= 0.0) {
        return Err(Error::domain("transverse wave number (need >= 0)", k.k_par));
    }
    let (l, n) = (slab.thickness(), slab.n());
    let r = slab_r(pol, k.k_z, k.k_par, l, n)?;
    let t = slab_t(pol, k.k_z, k.k_par, l, n)?;
    let (ii, jj) = interior_coefficients(pol, k, r, l, n);
    let norm = Complex64::new((2.0 * PI).powf(-1.5), 0.0);
    let wave = |amp: Complex64, kz: Complex64| PlaneWave::new(norm * amp, pol, k.k_par, kz);
    let one = Complex64::new(1.0, 0.0);
    let (kz, kzd) = (k.k_z, k.k_zd);

    // the right-incident mode is the left-incident one with z → −z
    let (left, inside, right) = match side {
        Side::Left => (
            alloc::vec![wave(one, kz), wave(r, -kz)],
            alloc::vec![wave(ii, kzd), wave(jj, -kzd)],
            alloc::vec![wave(t, kz)],
        ),
        Side::Right => (
            alloc::vec![wave(t, -kz)],
            alloc::vec![wave(ii, -kzd), wave(jj, kzd)],
            alloc::vec![wave(one, -kz), wave(r, kz)],
        ),
    };
    Ok(ModeField { half_thickness: 0.5 * l, permittivity: n * n, left, inside, right })
}

/// Normalization constant `M_λ` of a trapped mode.
pub fn trapped_normalization(mode: &TrappedMode, slab: &Slab) -> f64 {
    let n2 = slab.permittivity();
    let (kp, kappa) = (mode.k_par, mode.kappa);
    let outside = match mode.pol {
        Polarization::TE => {
            let k_sq = kp * kp - kappa * kappa;
            kp * kp / k_sq / kappa
        }
        Polarization::TM => n2 * kp * kp / (kp * kp + n2 * kappa * kappa) / kappa,
    };
    1.0 / (4.0 * PI * (n2 * 0.5 * slab.thickness() + outside).sqrt())
}

/// Outside amplitude `L^{S,A}_λ` of a trapped mode.
pub fn trapped_outside_coefficient(mode: &TrappedMode, slab: &Slab) -> Complex64 {
    let l = slab.thickness();
    let x = 0.5 * mode.k_zd * l;
    let grow = (0.5 * mode.kappa * l).exp();
    let base = match mode.parity {
        Parity::S => Complex64::new(2.0 * x.cos(), 0.0),
        Parity::A => Complex64::new(0.0, 2.0 * x.sin()),
    };
    let n_factor = match mode.pol {
        Polarization::TE => 1.0,
        Polarization::TM => slab.n(),
    };
    base * (grow * n_factor)
}

/// Trapped mode field: `e^{ik_d⁺·r} ± e^{ik_d⁻·r}` inside, `L e^{−κ|z|}`
/// outside (with the parity sign on the left), times `M_λ`.
pub fn trapped_mode(mode: &TrappedMode, slab: &Slab) -> ModeField {
    let m = Complex64::new(trapped_normalization(mode, slab), 0.0);
    let outside = trapped_outside_coefficient(mode, slab);
    let sign = mode.parity.sign();
    let kzd = Complex64::new(mode.k_zd, 0.0);
    let kz = Complex64::new(0.0, mode.kappa);
    let wave = |amp: Complex64, k_z: Complex64| PlaneWave::new(m * amp, mode.pol, mode.k_par, k_z);
    let one = Complex64::new(1.0, 0.0);
    ModeField {
        half_thickness: 0.5 * slab.thickness(),
        permittivity: slab.permittivity(),
        left: alloc::vec![wave(outside * sign, -kz)],
        inside: alloc::vec![wave(one, kzd), wave(one * sign, -kzd)],
        right: alloc::vec![wave(outside, kz)],
    }
}

/// The tan- or cot-type branch a polarization/parity pair lives on.
///
/// Matching `E_∥` and `D_⊥` for the mode functions above gives
/// `κ = c k_zd tan(k_zd L/2)` for S modes and `κ = −c k_zd cot(k_zd L/2)` for
/// A modes, with `c = 1` (TE) or `1/n²` (TM).
fn is_tan_branch(parity: Parity) -> bool {
    parity == Parity::S
}

fn branch_factor(pol: Polarization, n: f64) -> f64 {
    match pol {
        Polarization::TE => 1.0,
        Polarization::TM => 1.0 / (n * n),
    }
}

/// `κ(k_zd) = √((n² − 1)k_∥² − k_zd²)/n`.
pub fn kappa_of(k_zd: f64, k_par: f64, n: f64) -> f64 {
    let k_max = (n * n - 1.0).sqrt() * k_par;
    ((k_max - k_zd).max(0.0) * (k_max + k_zd)).sqrt() / n
}

/// Regular form of the dispersion relation, free of tan/cot poles:
/// `κ cos x − c k_zd sin x` (S) or `κ sin x + c k_zd cos x` (A), `x = k_zd L/2`.
pub fn dispersion_function(pol: Polarization, parity: Parity, k_zd: f64, k_par: f64, slab: &Slab) -> f64 {
    let n = slab.n();
    let kappa = kappa_of(k_zd, k_par, n);
    let c = branch_factor(pol, n);
    let x = 0.5 * k_zd * slab.thickness();
    if is_tan_branch(parity) {
        kappa * x.cos() - c * k_zd * x.sin()
    } else {
        kappa * x.sin() + c * k_zd * x.cos()
    }
}

fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut f_lo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid > 0.0) == (f_lo > 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// All trapped modes of one polarization and parity at transverse wave
/// number `k_par`, sorted by ascending `k_zd`.
///
/// Roots are bracketed branch by branch between consecutive zeros and poles
/// of tan/cot inside `(0, √(n² − 1) k_par)`; on each branch the relation has
/// exactly one crossing, refined by bisection.
pub fn find_trapped_modes(pol: Polarization, parity: Parity, k_par: f64, slab: &Slab) -> Result<Vec<TrappedMode>> {
    if !(k_par > 0.0 && k_par.is_finite()) {
        return Err(Error::domain("transverse wave number (need k_par > 0)", k_par));
    }
    let (n, l) = (slab.n(), slab.thickness());
    if !l.is_finite() {
        return Err(Error::Unsupported("trapped modes of a half-space"));
    }
    let mut modes = Vec::new();
    if n == 1.0 || l == 0.0 {
        return Ok(modes);
    }
    let k_max = (n * n - 1.0).sqrt() * k_par;
    let x_max = 0.5 * k_max * l;
    let c = branch_factor(pol, n);
    let offset = if is_tan_branch(parity) { 0.0 } else { FRAC_PI_2 };
    let h = |k_zd: f64| dispersion_function(pol, parity, k_zd, k_par, slab);

    let mut m = 0.0;
    loop {
        let x_lo = m * PI + offset;
        if x_lo >= x_max {
            break;
        }
        let lo = 2.0 * x_lo / l;
        let hi = (2.0 * (x_lo + FRAC_PI_2) / l).min(k_max);
        let k_zd = bisect(h, lo, hi);
        let kappa = kappa_of(k_zd, k_par, n);
        if kappa > 0.0 && k_zd > 0.0 {
            let residual = h(k_zd).abs() / (kappa + c * k_zd);
            modes.push(TrappedMode { pol, parity, k_par, k_zd, kappa, residual });
        }
        m += 1.0;
    }
    Ok(modes)
}

/// All trapped modes at `k_par`, over both polarizations and parities.
pub fn all_trapped_modes(k_par: f64, slab: &Slab) -> Result<Vec<TrappedMode>> {
    let mut out = Vec::new();
    for pol in Polarization::BOTH {
        for parity in Parity::BOTH {
            out.extend(find_trapped_modes(pol, parity, k_par, slab)?);
        }
    }
    Ok(out)
}

/// `|1 − r_λ² e^{2ik_zd L}|` at `k_z = iκ`.
pub fn pole_denominator(pol: Polarization, kappa: f64, k_par: f64, slab: &Slab) -> Result<f64> {
    slab_denominator(pol, Complex64::new(0.0, kappa), k_par, slab.thickness(), slab.n()).map(|d| d.norm())
}

/// How far `k_z = iκ` of `mode` is from a zero of the slab reflection
/// denominator: `|D(iκ)| / (κ |∂D/∂κ|)`, which estimates `|δκ|/κ`.
pub fn pole_alignment_check(mode: &TrappedMode, slab: &Slab) -> Result<f64> {
    let (l, n) = (slab.thickness(), slab.n());
    let d = |kappa: f64| slab_denominator(mode.pol, Complex64::new(0.0, kappa), mode.k_par, l, n);
    let step = 1e-6 * mode.kappa;
    let grad = (d(mode.kappa + step)? - d(mode.kappa - step)?) / (2.0 * step);
    let scale = mode.kappa * grad.norm();
    Ok(d(mode.kappa)?.norm() / scale)
}

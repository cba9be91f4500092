//! Independent reference computations used by the integration and
//! acceptance tests. Nothing here calls into the production numerics except
//! for parameter types; formulas are re-typed from their closed forms.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_complex::Complex64;
use slabshift_core::modes::Parity;
use slabshift_core::reflection::Polarization;
use slabshift_core::shift::Component;
use slabshift_core::{ReducedParams, Slab};

/// `(P_n(z), P_n'(z))` by the three-term recurrence.
fn legendre(order: usize, z: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, z);
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    (p1, order as f64 * (z * p1 - p0) / (z * z - 1.0))
}

/// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration.
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; order];
    let mut w = vec![0.0; order];
    for i in 0..order {
        let mut z = (PI * (i as f64 + 0.75) / (order as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(order, z);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let (_, dp) = legendre(order, z);
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    (x, w)
}

/// Nodes and weights of the composite rule over consecutive `breaks`.
pub fn composite_nodes(breaks: &[f64], order: usize) -> Vec<(f64, f64)> {
    let (x, w) = gauss_legendre(order);
    let mut out = Vec::with_capacity(order * breaks.len());
    for pair in breaks.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        for (xi, wi) in x.iter().zip(&w) {
            out.push((mid + half * xi, half * wi));
        }
    }
    out
}

pub fn composite<F: FnMut(f64) -> f64>(mut f: F, breaks: &[f64], order: usize) -> f64 {
    composite_nodes(breaks, order).into_iter().map(|(x, w)| w * f(x)).sum()
}

/// `0, lo, lo·r, lo·r², …, hi` plus any `extra` points inside `(0, hi)`.
pub fn graded_breaks(lo: f64, hi: f64, ratio: f64, extra: &[f64]) -> Vec<f64> {
    let mut b = vec![0.0];
    let mut x = lo;
    while x < hi {
        b.push(x);
        x *= ratio;
    }
    b.push(hi);
    b.extend(extra.iter().copied().filter(|&e| e > 0.0 && e < hi));
    b.sort_by(|a, c| a.partial_cmp(c).unwrap());
    b.dedup();
    b
}

/// Slab reflection kernels in the `(s, t)` variables, written with a plain
/// hyperbolic cotangent.
pub fn rtilde_plain(pol: Polarization, s: f64, t: f64, lambda: f64, n: f64) -> f64 {
    let a = (n * n - 1.0) * t * t;
    let r = (1.0 + a).sqrt();
    let coth = if lambda.is_infinite() { 1.0 } else { 1.0 / (lambda * s * r).tanh() };
    match pol {
        Polarization::TE => -a / (2.0 + a + 2.0 * r * coth),
        Polarization::TM => {
            let n2 = n * n;
            (n2 * n2 - 1.0 - a) / (n2 * n2 + 1.0 + a + 2.0 * n2 * r * coth)
        }
    }
}

/// `S_∥` or `S_⊥` by a fixed tensor-product Gauss-Legendre rule, graded
/// geometrically towards both origins.
pub fn tensor_s(component: Component, p: &ReducedParams, order: usize, ratio: f64) -> f64 {
    let (zeta, lambda, n) = (p.zeta, p.lambda, p.n);
    let s_hi = 45.0 / zeta;
    let s_nodes =
        composite_nodes(&graded_breaks(1e-3 / zeta.max(1.0), s_hi, ratio, &[1.0 / zeta, 1.0 / lambda]), order);
    let t_nodes = composite_nodes(&graded_breaks(1e-4, 1.0, ratio, &[1.0 / n]), order);
    let mut total = 0.0;
    for &(s, ws) in &s_nodes {
        let weight = s * s * s * (-2.0 * zeta * s).exp();
        if weight == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for &(t, wt) in &t_nodes {
            let tm = rtilde_plain(Polarization::TM, s, t, lambda, n);
            let lorentz = 1.0 / (s * s * t * t + 1.0);
            let v = match component {
                Component::Parallel => {
                    let te = rtilde_plain(Polarization::TE, s, t, lambda, n);
                    lorentz * (tm - t * t * te)
                }
                Component::Perpendicular => lorentz * (1.0 - t * t) * tm,
            };
            inner += wt * v;
        }
        total += ws * weight * inner;
    }
    let pre = match component {
        Component::Parallel => 0.25,
        Component::Perpendicular => 0.5,
    };
    pre * total
}

/// Number of trapped modes located by a dense scan of the dispersion
/// relation in its tan/cot form; sign flips across a pole are discarded.
pub fn sign_scan_count(pol: Polarization, parity: Parity, k_par: f64, slab: &Slab, points: usize) -> usize {
    let (n, l) = (slab.n(), slab.thickness());
    let k_max = (n * n - 1.0).sqrt() * k_par;
    let c = match pol {
        Polarization::TE => 1.0,
        Polarization::TM => 1.0 / (n * n),
    };
    let g = |k: f64| {
        let kappa = ((n * n - 1.0) * k_par * k_par - k * k).max(0.0).sqrt() / n;
        let x = 0.5 * k * l;
        match parity {
            Parity::S => kappa - c * k * x.tan(),
            Parity::A => kappa + c * k / x.tan(),
        }
    };
    // the trig function whose zeros are the poles of g
    let pole_of = |k: f64| {
        let x = 0.5 * k * l;
        match parity {
            Parity::S => x.cos(),
            Parity::A => x.sin(),
        }
    };
    let grid: Vec<f64> = (0..=points).map(|i| k_max * i as f64 / points as f64).collect();
    let mut count = 0;
    for w in grid.windows(2) {
        let (a, b) = (w[0].max(1e-300), w[1]);
        let (ga, gb) = (g(a), g(b));
        let pole_between = (pole_of(a) > 0.0) != (pole_of(b) > 0.0);
        if !pole_between && ga != 0.0 && (ga > 0.0) != (gb > 0.0) {
            count += 1;
        }
    }
    count
}

/// Number of `κ ∈ (0, √(n²−1)k_∥/n)` at which `r² e^{2ik_zd L}` passes through
/// `+1`, i.e. zeros of the slab reflection denominator on the imaginary
/// `k_z` axis, counted over both parities.
pub fn pole_scan_count(pol: Polarization, k_par: f64, slab: &Slab, points: usize) -> usize {
    let (n, l) = (slab.n(), slab.thickness());
    let k_max = (n * n - 1.0).sqrt() * k_par;
    let value = |k_zd: f64| {
        let kappa = ((k_max - k_zd) * (k_max + k_zd)).sqrt() / n;
        let kz = Complex64::new(0.0, kappa);
        let kd = Complex64::new(k_zd, 0.0);
        let r = match pol {
            Polarization::TE => (kz - kd) / (kz + kd),
            Polarization::TM => (n * n * kz - kd) / (n * n * kz + kd),
        };
        r * r * (Complex64::new(0.0, 2.0 * k_zd * l)).exp()
    };
    let mut count = 0;
    let mut prev = value(k_max * 0.5 / points as f64);
    for i in 1..points {
        let cur = value(k_max * (i as f64 + 0.5) / points as f64);
        if (prev.im > 0.0) != (cur.im > 0.0) && prev.re + cur.re > 0.0 {
            count += 1;
        }
        prev = cur;
    }
    count
}

/// Electrostatic reflected potential by direct Hankel-transform quadrature
/// of the slab's quasi-static reflection coefficient.
pub fn hankel_phi_h(rho: f64, z: f64, z_prime: f64, slab: &Slab) -> f64 {
    let (n, l) = (slab.n(), slab.thickness());
    let beta = (n * n - 1.0) / (n * n + 1.0);
    let u = z + z_prime - l;
    let k_hi = 80.0 / u;
    let panels = ((k_hi * rho.max(u.recip()) * 4.0) as usize).max(400);
    let breaks: Vec<f64> = (0..=panels).map(|i| k_hi * i as f64 / panels as f64).collect();
    let integral = composite(
        |k| {
            let e = (-2.0 * k * l).exp();
            let refl = -beta * (1.0 - e) / (1.0 - beta * beta * e);
            libm::j0(k * rho) * refl * (-k * u).exp()
        },
        &breaks,
        12,
    );
    integral / (4.0 * PI)
}

/// `½ Σ ⟨μ_i μ_j⟩ ∂_i ∂′_j Φ_H` at coincidence by centred second differences
/// of a potential `phi(ρ, z, z′)` with step `h`.
pub fn finite_difference_shift<F: Fn(f64, f64, f64) -> f64>(
    phi: F,
    z: f64,
    h: f64,
    mu_par_sq: f64,
    mu_perp_sq: f64,
) -> f64 {
    // Φ depends on x − x′ only through ρ, so ∂_x∂′_x Φ = −∂²_ρ Φ at ρ = 0
    let dxx = -(phi(h, z, z) - 2.0 * phi(0.0, z, z) + phi(h, z, z)) / (h * h);
    let dzz = (phi(0.0, z + h, z + h) - phi(0.0, z + h, z - h) - phi(0.0, z - h, z + h) + phi(0.0, z - h, z - h))
        / (4.0 * h * h);
    0.5 * (mu_par_sq * dxx + mu_perp_sq * dzz)
}

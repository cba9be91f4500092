mod oracle;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use slabshift_core::asymptotics::{nonretarded_integral, nonretarded_shift, nonretarded_shift_quadrature};
use slabshift_core::electrostatics::{
    image_series_integral, image_series_partial_sums, image_series_shift, phi_h, ImageSeriesSpec,
};
use slabshift_core::shift::QuadratureSpec;
use slabshift_core::{AtomSpec, Slab, Transition};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

#[test]
fn image_potential_matches_hankel_transform() {
    let mut rng = StdRng::seed_from_u64(21);
    let spec = ImageSeriesSpec::default();
    for _ in 0..20 {
        let slab = Slab::new(rng.gen_range(1.1..4.0), rng.gen_range(0.05..3.0)).unwrap();
        let h = 0.5 * slab.thickness();
        let z = h + rng.gen_range(0.05..2.0);
        let zp = h + rng.gen_range(0.05..2.0);
        let rho = rng.gen_range(0.0..3.0);
        let series = phi_h(rho, z, zp, &slab, &spec).unwrap();
        let hankel = oracle::hankel_phi_h(rho, z, zp, &slab);
        assert!(rel(series, hankel) < 1e-9, "{series} vs {hankel} ({rho}, {z}, {zp}, {slab:?})");
    }
}

#[test]
fn image_potential_is_symmetric_and_attractive() {
    let slab = Slab::new(2.3, 0.7).unwrap();
    let spec = ImageSeriesSpec::default();
    let a = phi_h(0.4, 0.9, 1.6, &slab, &spec).unwrap();
    let b = phi_h(0.4, 1.6, 0.9, &slab, &spec).unwrap();
    assert_eq!(a, b);
    assert!(a < 0.0);
}

#[test]
fn shift_matches_finite_differences_of_the_potential() {
    let spec = ImageSeriesSpec::default();
    let mut rng = StdRng::seed_from_u64(22);
    for _ in 0..20 {
        let slab = Slab::new(rng.gen_range(1.1..4.0), rng.gen_range(0.05..3.0)).unwrap();
        let distance = rng.gen_range(0.1..3.0);
        let t = Transition::new(1.0, rng.gen_range(0.0..2.0), rng.gen_range(0.1..2.0)).unwrap();
        let atom = AtomSpec::single(t);
        let z = 0.5 * slab.thickness() + distance;
        let phi = |rho: f64, a: f64, b: f64| phi_h(rho, a, b, &slab, &spec).unwrap();
        let fd = oracle::finite_difference_shift(phi, z, 1e-4 * distance, t.mu_par_sq(), t.mu_perp_sq());
        let exact = image_series_shift(&atom, &slab, distance, &spec).unwrap().value;
        assert!(rel(fd, exact) < 1e-6, "{fd} vs {exact}");
    }
}

#[test]
fn series_and_quadrature_agree() {
    let spec = ImageSeriesSpec::default();
    let q = QuadratureSpec::default().with_rel_tol(1e-13);
    let mut rng = StdRng::seed_from_u64(23);
    let mut cases = vec![(2.0, 1.0, 1.0)];
    for _ in 0..20 {
        cases.push((rng.gen_range(1.01..6.0), rng.gen_range(0.01..10.0), rng.gen_range(0.01..10.0)));
    }
    let atom = AtomSpec::single(Transition::new(1.0, 1.0, 0.5).unwrap());
    for (n, l, z) in cases {
        let slab = Slab::new(n, l).unwrap();
        let series = image_series_integral(&slab, z, &spec).unwrap();
        let quad = nonretarded_integral(&slab, z, &q).unwrap().value;
        assert!(rel(quad, series) < 1e-10, "n={n} L={l} Z={z}: {quad} vs {series}");
        let a = nonretarded_shift(&atom, &slab, z, &spec).unwrap().shift.value;
        let b = nonretarded_shift_quadrature(&atom, &slab, z, &q).unwrap().shift.value;
        assert!(rel(b, a) < 1e-10);
    }
}

#[test]
fn partial_sums_rise_monotonically_to_the_integral() {
    let q = QuadratureSpec::default().with_rel_tol(1e-13);
    for (n, l, z) in [(2.0, 1.0, 1.0), (5.0, 0.1, 0.3), (1.3, 2.0, 0.05)] {
        let slab = Slab::new(n, l).unwrap();
        let target = nonretarded_integral(&slab, z, &q).unwrap().value;
        let sums = image_series_partial_sums(&slab, z, 30);
        assert!(sums.windows(2).all(|w| w[1] >= w[0]));
        assert!(sums.iter().all(|&s| s > 0.0 && s <= target * (1.0 + 1e-12)));
    }
}

#[test]
fn thicker_slab_attracts_more_but_less_than_half_space() {
    let spec = ImageSeriesSpec::default();
    let z = 0.6;
    let mut prev = 0.0;
    for l in [0.01, 0.1, 1.0, 10.0] {
        let v = image_series_integral(&Slab::new(2.0, l).unwrap(), z, &spec).unwrap();
        assert!(v > prev);
        prev = v;
    }
    let limit = image_series_integral(&Slab::half_space(2.0).unwrap(), z, &spec).unwrap();
    assert!(prev < limit);
    assert!(rel(prev, limit) < 1e-3);
}

use slabshift_core::asymptotics::{
    classify_regime, halfspace_s, halfspace_w, nonretarded_shift, nonretarded_thin_shift, retarded_thin_shift, Regime,
};
use slabshift_core::electrostatics::ImageSeriesSpec;
use slabshift_core::shift::{energy_shift, s_parallel, s_perp, w_pair, QuadratureSpec};
use slabshift_core::{AtomSpec, ReducedParams, Slab, Transition};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn atom() -> AtomSpec {
    AtomSpec::single(Transition::new(1.0, 1.0, 0.5).unwrap())
}

#[test]
fn dense_half_space_approaches_a_perfect_mirror() {
    let q = QuadratureSpec::default();
    let w: Vec<f64> = [10.0, 20.0, 50.0].iter().map(|&z| halfspace_w(z, 1e4, &q).unwrap().w_z).collect();
    assert!(w.windows(2).all(|p| (p[1] - 1.0).abs() < (p[0] - 1.0).abs()));
    assert!((0.98..=1.02).contains(&w[2]));
}

#[test]
fn retarded_thin_slab_error_falls_like_inverse_distance() {
    // the subleading correction to the thin-slab law is O(1/ζ) relative
    let q = QuadratureSpec::default();
    let slab = Slab::new(2.0, 0.5).unwrap();
    let dev = |zeta: f64| {
        let full = energy_shift(&atom(), &slab, zeta, &q).unwrap().value;
        let thin = retarded_thin_shift(&atom(), &slab, zeta).unwrap().shift.value;
        rel(full, thin)
    };
    let (d50, d100, d200) = (dev(50.0), dev(100.0), dev(200.0));
    assert!(d100 < d50 && d200 < d100);
    assert!((d50 / d100 - 2.0).abs() < 0.15, "{d50} {d100}");
    assert!((d100 / d200 - 2.0).abs() < 0.15, "{d100} {d200}");
}

#[test]
fn non_retarded_limit_is_reached_at_small_distance() {
    let q = QuadratureSpec::default();
    let slab = Slab::new(2.0, 1.0).unwrap();
    let full = energy_shift(&atom(), &slab, 0.005, &q).unwrap().value;
    let es = nonretarded_shift(&atom(), &slab, 0.005, &ImageSeriesSpec::default()).unwrap();
    assert!(rel(full, es.shift.value) < 1e-2);
    assert_eq!(es.regimes[0].regime, Regime::NonRetarded);
}

#[test]
fn thin_electrostatic_error_is_linear_in_thickness_ratio() {
    let spec = ImageSeriesSpec::default();
    let dev = |ratio: f64| {
        let slab = Slab::new(2.0, ratio).unwrap();
        let exact = nonretarded_shift(&atom(), &slab, 1.0, &spec).unwrap().shift.value;
        let thin = nonretarded_thin_shift(&atom(), &slab, 1.0).unwrap().shift.value;
        rel(thin, exact)
    };
    let (a, b, c) = (dev(0.01), dev(0.005), dev(0.0025));
    assert!((a / b - 2.0).abs() < 0.05 && (b / c - 2.0).abs() < 0.05, "{a} {b} {c}");
}

#[test]
fn thick_slab_converges_to_half_space() {
    let q = QuadratureSpec::default();
    let (hp, hz) = halfspace_s(1.0, 2.0, &q).unwrap();
    let p = ReducedParams::new(1.0, 200.0, 2.0).unwrap();
    assert!(rel(s_parallel(&p, &q).unwrap().value, hp.value) < 1e-6);
    assert!(rel(s_perp(&p, &q).unwrap().value, hz.value) < 1e-6);
}

#[test]
fn w_is_linear_at_small_distance() {
    let q = QuadratureSpec::default();
    let slope = |zeta: f64| w_pair(&ReducedParams::new(zeta, 1.0, 2.0).unwrap(), &q).unwrap().w_z / zeta;
    assert!(rel(slope(1e-4), slope(1e-3)) < 0.02);
}

#[test]
fn intermediate_distance_claims_no_regime() {
    let r = classify_regime(&ReducedParams::new(1.0, 0.5, 2.0).unwrap());
    assert_eq!(r.regime, Regime::Intermediate);
}

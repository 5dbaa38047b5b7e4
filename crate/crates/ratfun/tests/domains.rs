//! End-to-end fits on region and parametric-path domains.

use std::sync::Arc;

use num_complex::Complex64;
use ratfun::prelude::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[test]
fn exterior_region_keeps_poles_inside() {
    // e^(1/z) is analytic outside the disk; its approximant's poles must
    // stay inside (poles in the exterior region are not allowed)
    let region = Region::exterior(unit_circle()).unwrap();
    let a = approximate_continuum(
        |z: Complex64| (1.0 / z).exp(),
        region,
        &EngineConfig::default(),
    )
    .unwrap();
    let report = a.check();
    assert!(report.max_err <= 1e-10, "check error {:.3e}", report.max_err);
    for p in a.fit().poles().unwrap() {
        assert!(p.norm() <= 1.0 + 1e-9, "pole {p} escaped into the exterior");
    }
}

#[test]
fn interior_region_keeps_poles_outside() {
    let region = Region::interior(unit_circle()).unwrap();
    let a = approximate_continuum(
        |z: Complex64| 1.0 / (z - 2.0) + (0.5 * z).sin(),
        region,
        &EngineConfig::default(),
    )
    .unwrap();
    assert!(a.check().max_err <= 1e-10);
    let poles = a.fit().poles().unwrap();
    assert!(poles.iter().any(|p| (p - c(2.0, 0.0)).norm() <= 1e-6));
    for p in poles {
        assert!(p.norm() >= 1.0 - 1e-9, "pole {p} entered the disk");
    }
}

#[test]
fn squircle_boundary_with_interior_pole_ladder() {
    // quartic superellipse |x|^4 + |y|^4 = 1, parameterized by angle;
    // coth(1/z^3) has poles accumulating inside it but is smooth on it
    let squircle = Curve::parametric(
        |t| {
            let th = std::f64::consts::TAU * t;
            let (s, co) = th.sin_cos();
            c(co.abs().sqrt() * co.signum(), s.abs().sqrt() * s.signum())
        },
        true,
    );
    let f = |z: Complex64| {
        let w = 1.0 / (z * z * z);
        let t = w.tanh();
        1.0 / t
    };
    let a = approximate_continuum(f, squircle, &EngineConfig::default()).unwrap();
    let report = a.check();
    assert!(report.max_err <= 1e-9, "check error {:.3e}", report.max_err);
    // the pole ladder sits at |z| = (1/(k pi))^(1/3) < 0.69, off the boundary
    let poles = a.fit().poles().unwrap();
    assert!(!poles.is_empty());
    for p in &poles {
        assert!(p.norm() < 0.84, "pole {p} should stay well inside the squircle");
    }
}

#[test]
fn custom_pole_predicate_limits_the_returned_fit() {
    // forbid every pole: only the pole-free constant seed iterate survives
    let cfg = EngineConfig {
        allowed: PoleRule::Predicate(Arc::new(|_| false)),
        max_iter: 12,
        ..Default::default()
    };
    let a = approximate_continuum(|z: Complex64| 1.0 / (z - 2.0), unit_interval(), &cfg).unwrap();
    assert_eq!(a.fit().degrees(), (0, 0));
    let rec = &a.history().records;
    assert!(rec.iter().skip(2).any(|r| r.allowed == Some(false)));
}

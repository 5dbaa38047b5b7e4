//! Structural cost check, run in its own process so that the global kernel
//! counter sees only this test: the greedy barycentric loop performs one SVD
//! factorization per node addition, while the Thiele loop performs none.

use num_complex::Complex64;
use ratfun::prelude::*;

#[test]
fn barycentric_pays_one_svd_per_iteration_thiele_none() {
    let pts: Vec<Complex64> = (0..200)
        .map(|k| Complex64::new(-1.0 + 2.0 * k as f64 / 199.0, 0.0))
        .collect();
    let f = |z: Complex64| (2.0 * z).exp() / (z - Complex64::new(2.0, 1.0));

    let before = ratfun::linalg::svd_call_count();
    let cfg = EngineConfig { max_iter: 30, ..Default::default() };
    let a = approximate_discrete(f, &pts, &cfg).unwrap();
    let aaa_svds = ratfun::linalg::svd_call_count() - before;
    assert_eq!(
        aaa_svds as usize,
        a.history().records.len(),
        "one SVD per barycentric iteration"
    );

    let before = ratfun::linalg::svd_call_count();
    let cfg = EngineConfig { method: Method::Thiele, max_iter: 30, ..Default::default() };
    let b = approximate_discrete(f, &pts, &cfg).unwrap();
    let thiele_svds = ratfun::linalg::svd_call_count() - before;
    assert!(b.history().records.len() >= 5);
    assert_eq!(thiele_svds, 0, "the Thiele loop must not factorize anything");
}

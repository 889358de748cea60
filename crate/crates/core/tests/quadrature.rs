use std::f64::consts::PI;

use qsum::classical::{beta_closed_form, gamma};
use qsum::quadrature::{integrate_halfline_log, periodic_trapezoid, qbeta_integral_1, tanh_sinh};
use qsum::{Cplx, Error, EvalConfig, Real};

fn re(x: Real) -> Cplx {
    Cplx::new(x, 0.0)
}

#[test]
fn trapezoid_on_exp_cos() {
    // Mean of e^{cos θ} over a period is I_0(1).
    let r = periodic_trapezoid(&|t: Real| Ok(re(t.cos().exp())), &EvalConfig::default()).unwrap();
    assert!((r.value.re - 1.2660658777520082).abs() < 1e-14);
    assert!(r.nodes_used <= 256);
}

#[test]
fn trapezoid_respects_node_cap() {
    let cfg = EvalConfig { quad_nodes: 32, max_quad_nodes: 64, ..EvalConfig::default() };
    let r = periodic_trapezoid(&|t: Real| Ok(re((200.0 * t.sin()).cos())), &cfg);
    assert!(matches!(r, Err(Error::NodeCapExceeded { cap: 64, .. })), "{r:?}");
}

#[test]
fn half_line_gives_gamma() {
    for s in [0.5, 2.5, 4.0] {
        let r = integrate_halfline_log(&|t: Real| Ok(re(t.powf(s) * (-t).exp())), &EvalConfig::default()).unwrap();
        let g = gamma(re(s)).unwrap().re;
        assert!((r.value.re - g).abs() < 1e-12 * g, "s = {s}");
    }
}

#[test]
fn tanh_sinh_handles_endpoint_singularities() {
    let cfg = EvalConfig::default();
    let r = tanh_sinh(|x: Real| Ok(re(1.0 / x.sqrt())), 0.0, 1.0, &cfg).unwrap();
    assert!((r.value.re - 2.0).abs() < 1e-11);
    let r = tanh_sinh(|x: Real| Ok(re(x.ln())), 0.0, 1.0, &cfg).unwrap();
    assert!((r.value.re + 1.0).abs() < 1e-11);
}

#[test]
fn beta_closed_form_special_cases() {
    // b = 0: ∫_0^{π/2} cos(ax) dx = sin(πa/2)/a.
    let a = 0.7;
    let v = beta_closed_form(a, 0.0).unwrap();
    assert!((v.re - (PI * a / 2.0).sin() / a).abs() < 1e-13);
    // a = 0, b = 2: ∫ cos² = π/4.
    let v = beta_closed_form(0.0, 2.0).unwrap();
    assert!((v.re - PI / 4.0).abs() < 1e-13);
}

#[test]
fn first_qbeta_integral_is_positive_and_stable() {
    let cfg = EvalConfig::default();
    let r1 = qbeta_integral_1(re(2.0), re(0.3), 0.4, &cfg).unwrap();
    let r2 = qbeta_integral_1(re(2.0), re(0.3), 0.4, &cfg.doubled_budget()).unwrap();
    assert!(r1.value.re > 0.0);
    assert!((r1.value - r2.value).norm() <= r1.err_estimate.max(1e-15));
}

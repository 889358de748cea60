//! Structural invariants of the engines, checked on random inputs.

use std::f64::consts::PI;

use proptest::prelude::*;
use qsum::classical::gamma;
use qsum::identities::{evaluate_identity, Point};
use qsum::qcore::{qpoch_finite, qpoch_infinite, ratio};
use qsum::series::generators::{make_psi11_terms, make_sn_terms};
use qsum::series::{sum_bilateral, FnTerms};
use qsum::theta::{theta, theta_product, Nome};
use qsum::{Cplx, EvalConfig, Real};

fn re(x: Real) -> Cplx {
    Cplx::new(x, 0.0)
}

fn polar() -> impl Strategy<Value = Cplx> {
    (0.2f64..3.0, -3.0f64..3.0).prop_map(|(r, t)| Cplx::from_polar(r, t))
}

fn scale() -> impl Strategy<Value = Cplx> {
    (0.5f64..2.0, -3.0f64..3.0).prop_map(|(r, t)| Cplx::from_polar(r, t))
}

fn close(x: Cplx, y: Cplx, rel: Real) -> bool {
    (x - y).norm() <= rel * x.norm().max(y.norm()).max(1e-300)
}

fn point(pairs: &[(&str, Cplx)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn finite_pochhammer_splits(a in polar(), q in 0.05f64..0.95, m in -6i64..7, n in -6i64..7) {
        let cfg = EvalConfig::default();
        let whole = qpoch_finite(a, re(q), m + n, &cfg).unwrap();
        let split = qpoch_finite(a, re(q), m, &cfg).unwrap() * qpoch_finite(a * q.powi(m as i32), re(q), n, &cfg).unwrap();
        prop_assert!(close(whole, split, 1e-10), "{whole} vs {split}");
    }

    #[test]
    fn infinite_pochhammer_splits(a in polar(), q in 0.05f64..0.9, n in 0i64..8) {
        let cfg = EvalConfig::default();
        let whole = qpoch_infinite(a, re(q), &cfg).unwrap();
        let tail = qpoch_infinite(a * q.powi(n as i32), re(q), &cfg).unwrap();
        let split = qpoch_finite(a, re(q), n, &cfg).unwrap() * tail.value;
        prop_assert!(close(whole.value, split, 1e-10), "{} vs {split}", whole.value);
    }

    #[test]
    fn gamma_reflection(x in -4.0f64..4.0, y in -2.0f64..2.0) {
        let z = Cplx::new(x, y);
        prop_assume!((z - z.re.round()).norm() > 1e-2);
        let lhs = gamma(z).unwrap() * gamma(re(1.0) - z).unwrap();
        let rhs = re(PI) / (z * PI).sin();
        prop_assert!(close(lhs, rhs, 1e-11), "{lhs} vs {rhs}");
    }

    #[test]
    fn gamma_recurrence(x in -5.0f64..8.0, y in -3.0f64..3.0) {
        let z = Cplx::new(x, y);
        prop_assume!((z - z.re.round()).norm() > 1e-2);
        let lhs = gamma(z + 1.0).unwrap();
        let rhs = z * gamma(z).unwrap();
        prop_assert!(close(lhs, rhs, 1e-12), "{lhs} vs {rhs}");
    }

    #[test]
    fn theta_periods(j in 1u8..=4, q in 0.05f64..0.6, x in -3.0f64..3.0, y in -0.4f64..0.4) {
        let cfg = EvalConfig::default();
        let nome = Nome::new(re(q)).unwrap();
        let z = Cplx::new(x, y);
        let base = theta(j, z, &nome, &cfg).unwrap().value;
        let sign = if j <= 2 { -1.0 } else { 1.0 };
        let shifted = theta(j, z + PI, &nome, &cfg).unwrap().value;
        prop_assert!((shifted - base * sign).norm() <= 1e-12 * base.norm().max(1.0));
        // z ↦ z + πτ multiplies θ_j by ±q^{−1} e^{−2iz}.
        let sign = if j == 1 || j == 4 { -1.0 } else { 1.0 };
        let factor = (Cplx::new(0.0, -2.0) * z).exp() / q * sign;
        let quasi = theta(j, z + nome.pi_tau(), &nome, &cfg).unwrap().value;
        prop_assert!(close(quasi, base * factor, 1e-11), "{quasi} vs {}", base * factor);
    }

    #[test]
    fn theta_series_matches_product(j in 1u8..=4, q in 0.05f64..0.7, x in -3.0f64..3.0, y in -0.3f64..0.3) {
        let cfg = EvalConfig::default();
        let nome = Nome::new(re(q)).unwrap();
        let z = Cplx::new(x, y);
        let s = theta(j, z, &nome, &cfg).unwrap();
        let p = theta_product(j, z, &nome, &cfg).unwrap();
        prop_assert!((s.value - p).norm() <= 1e-12 * s.value.norm().max(1.0));
    }

    #[test]
    fn landen_is_x_independent(q in 0.05f64..0.5, x in -3.0f64..3.0, y in -0.2f64..0.2) {
        let p = point(&[("q", re(q)), ("x", Cplx::new(x, y))]);
        let r = evaluate_identity("landen", &p, None, &EvalConfig::default()).unwrap();
        prop_assert!(r.pass, "{:?}", r);
    }

    #[test]
    fn doubling_the_budget_stays_within_estimate(a in polar(), zr in 0.3f64..0.9, zt in -2.5f64..2.5, s in 0.1f64..0.8, q in 0.1f64..0.7) {
        let cfg = EvalConfig::default();
        let z = Cplx::from_polar(zr, zt);
        let b = a * z * s;
        let once = sum_bilateral(&make_psi11_terms(a, b, re(q), z, &cfg).unwrap(), &cfg).unwrap();
        let twice = sum_bilateral(&make_psi11_terms(a, b, re(q), z, &cfg).unwrap(), &cfg.doubled_budget()).unwrap();
        prop_assert!(once.converged);
        prop_assert!((once.value - twice.value).norm() <= once.err_estimate.max(1e-15 * once.scale));
    }

    #[test]
    fn sn_reindexing(n in 1u32..=4, q in 0.3f64..0.7, v in prop::array::uniform4(0.2f64..0.7), t in prop::array::uniform4(-2.5f64..2.5)) {
        let cfg = EvalConfig::default();
        let [b, c, d, e] = [0, 1, 2, 3].map(|i| Cplx::from_polar(v[i] * q.powf(0.75), t[i]));
        let a = Cplx::from_polar(1.2, 0.7);
        let terms = make_sn_terms(a, b, c, d, e, q, n, &cfg).unwrap();
        let direct = sum_bilateral(&terms, &cfg).unwrap();
        // n = k + mN: each residue class is a unit-step sum with a ↦ aq^{k/N}.
        let mut by_class = re(0.0);
        for k in 0..n {
            let class = terms.residue_class(k);
            let gen = FnTerms::new(|m: i64| class.unit_step_term(m));
            by_class += sum_bilateral(&gen, &cfg).unwrap().value;
        }
        prop_assert!(close(direct.value, by_class, 1e-11), "{} vs {by_class}", direct.value);
    }

    #[test]
    fn first_extension_at_n1_is_scaled_psi11(a in polar(), zr in 0.3f64..0.9, zt in -2.5f64..2.5, s in 0.1f64..0.8, q in 0.1f64..0.7) {
        let cfg = EvalConfig::default();
        let z = Cplx::from_polar(zr, zt);
        let b = a * z * s;
        let p = point(&[("q", re(q)), ("a", a), ("b", b), ("z", z)]);
        let psi = evaluate_identity("ramanujan_1psi1", &p, None, &cfg).unwrap();
        let mut p1 = p.clone();
        p1.insert("N".into(), re(1.0));
        let ext = evaluate_identity("first_extension", &p1, None, &cfg).unwrap();
        let lift = ratio(&[b], &[a], re(q), &cfg).unwrap();
        let (l, r) = (ext.lhs_value().unwrap(), psi.lhs_value().unwrap() * lift);
        prop_assert!(close(l, r, 1e-10), "{l} vs {r}");
    }

    #[test]
    fn two_variable_ratio_ignores_lambda(q in 0.3f64..0.8, pf in 0.1f64..0.9, a in polar(), b in polar(), z in polar(), l1 in scale(), l2 in scale()) {
        let cfg = EvalConfig::default();
        let base = point(&[("p", re(q * pf)), ("q", re(q)), ("a", a), ("b", b), ("z", z)]);
        let at = |l: Cplx| {
            let mut pt = base.clone();
            pt.insert("lambda".into(), l);
            evaluate_identity("f_two_variable", &pt, None, &cfg).unwrap()
        };
        let (r1, r2) = (at(l1), at(l2));
        prop_assume!(r1.error.is_none() && r2.error.is_none());
        let (v1, v2) = (r1.rhs_value().unwrap(), r2.rhs_value().unwrap());
        // Cancellation in the series makes badly scaled points say nothing.
        prop_assume!(r1.scale.max(r2.scale) < 1e4 * v1.norm());
        prop_assert!(close(v1, v2, 1e-9), "{v1} vs {v2}");
    }
}

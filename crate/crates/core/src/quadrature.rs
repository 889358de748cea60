//! Quadrature engines and the integrals built on them.
//!
//! All rules refine by doubling the node count and report the change
//! between the last two levels as the error estimate. Integrand values at
//! one level are computed with [`par_map`] and summed in node order.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use serde::Serialize;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::qcore::{product_ratio, QArg};
use crate::scalar::{is_finite, re, Cplx, Real, EPS, I};
use crate::series::generators::sn_summand;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadratureResult {
    pub value: Cplx,
    pub err_estimate: Real,
    pub nodes_used: usize,
}

type Integrand<'a> = dyn Fn(Real) -> Result<Cplx> + Sync + 'a;

fn eval_all(f: &Integrand, xs: &[Real]) -> Result<Vec<Cplx>> {
    let vals = par_map(xs, |&x| f(x));
    let mut out = Vec::with_capacity(vals.len());
    for v in vals {
        let v = v?;
        if !is_finite(v) {
            return Err(Error::NonFinite("integrand".into()));
        }
        out.push(v);
    }
    Ok(out)
}

fn ordered_sum(vals: &[Cplx]) -> Cplx {
    vals.iter().fold(re(0.0), |a, &b| a + b)
}

/// Last refinement change, floored by the rounding accumulated over `used` nodes.
fn estimate(delta: Real, value: Cplx, used: usize) -> Real {
    delta.max((used as Real).sqrt() * EPS * value.norm())
}

fn settled(delta: Real, value: Cplx, rel_tol: Real) -> bool {
    delta <= rel_tol * (value.norm() + 1.0)
}

/// `∫_{−π}^{π} f(θ) dθ/2π` for smooth 2π-periodic `f`.
pub fn periodic_trapezoid(f: &Integrand, cfg: &EvalConfig) -> Result<QuadratureResult> {
    let mut m = (cfg.quad_nodes / 2).max(2);
    let nodes = |m: usize, odd_only: bool| -> Vec<Real> {
        let step = if odd_only { 2 } else { 1 };
        let start = if odd_only { 1 } else { 0 };
        (start..m).step_by(step).map(|j| -PI + TAU * j as Real / m as Real).collect()
    };
    let mut sum = ordered_sum(&eval_all(f, &nodes(m, false))?);
    let mut value = sum / m as Real;
    let mut used = m;
    loop {
        let next = 2 * m;
        if next > cfg.max_quad_nodes {
            return Err(Error::NodeCapExceeded { cap: cfg.max_quad_nodes, last_delta: Real::NAN });
        }
        sum += ordered_sum(&eval_all(f, &nodes(next, true))?);
        used += m;
        m = next;
        let new = sum / m as Real;
        let delta = (new - value).norm();
        value = new;
        if settled(delta, value, cfg.rel_tol) {
            return Ok(QuadratureResult { value, err_estimate: estimate(delta, value, used), nodes_used: used });
        }
        if 2 * m > cfg.max_quad_nodes {
            return Err(Error::NodeCapExceeded { cap: cfg.max_quad_nodes, last_delta: delta });
        }
    }
}

const WINDOW_START: Real = 4.0;
const WINDOW_LIMIT: Real = 400.0;

/// `∫_0^∞ f(t) dt/t`, computed as `∫ f(e^u) du` by the trapezoid rule on a
/// window `[−L, R]` grown until both ends are negligible.
pub fn integrate_halfline_log(f: &Integrand, cfg: &EvalConfig) -> Result<QuadratureResult> {
    let g = |u: Real| f(u.exp());
    // Peak from a coarse scan of the starting window.
    let scan: Vec<Real> = (0..=64).map(|j| -WINDOW_START + 2.0 * WINDOW_START * j as Real / 64.0).collect();
    let mut peak = eval_all(&g, &scan)?.iter().fold(0.0, |a: Real, v| a.max(v.norm()));
    let mut used = scan.len();
    let small = |v: Cplx, peak: Real| v.norm() < 1e-3 * cfg.rel_tol * peak;
    let mut ends = [WINDOW_START, WINDOW_START];
    for (side, sign) in [(0usize, -1.0), (1usize, 1.0)] {
        loop {
            let v = g(sign * ends[side])?;
            used += 1;
            if !is_finite(v) {
                return Err(Error::NoDecayDetected(ends[side]));
            }
            peak = peak.max(v.norm());
            if small(v, peak) {
                break;
            }
            ends[side] *= 1.5;
            if ends[side] > WINDOW_LIMIT {
                return Err(Error::NoDecayDetected(WINDOW_LIMIT));
            }
        }
    }
    if peak == 0.0 {
        return Ok(QuadratureResult { value: re(0.0), err_estimate: 0.0, nodes_used: used });
    }
    let (lo, hi) = (-ends[0], ends[1]);
    let width = hi - lo;
    let mut m = (cfg.quad_nodes / 2).max(2);
    let grid = |m: usize, odd_only: bool| -> Vec<Real> {
        let (start, step) = if odd_only { (1, 2) } else { (0, 1) };
        (start..=m).step_by(step).map(|j| lo + width * j as Real / m as Real).collect()
    };
    let first = eval_all(&g, &grid(m, false))?;
    // Endpoint weights are 1/2; the endpoints are negligible by construction.
    let mut sum = ordered_sum(&first) - 0.5 * (first[0] + first[m]);
    used += m + 1;
    let mut value = sum * (width / m as Real);
    loop {
        let next = 2 * m;
        if next > cfg.max_quad_nodes {
            return Err(Error::NodeCapExceeded { cap: cfg.max_quad_nodes, last_delta: Real::NAN });
        }
        sum += ordered_sum(&eval_all(&g, &grid(next, true))?);
        used += m;
        m = next;
        let new = sum * (width / m as Real);
        let delta = (new - value).norm();
        value = new;
        if settled(delta, value, cfg.rel_tol) {
            return Ok(QuadratureResult { value, err_estimate: estimate(delta, value, used), nodes_used: used });
        }
        if 2 * m > cfg.max_quad_nodes {
            return Err(Error::NodeCapExceeded { cap: cfg.max_quad_nodes, last_delta: delta });
        }
    }
}

/// Tanh-sinh rule on `[a, b]`; tolerates integrable endpoint singularities.
pub fn tanh_sinh(f: impl Fn(Real) -> Result<Cplx> + Sync, a: Real, b: Real, cfg: &EvalConfig) -> Result<QuadratureResult> {
    let half = 0.5 * (b - a);
    const T_MAX: Real = 6.5;
    // Node at parameter t: abscissa measured from the nearer endpoint.
    let node = |t: Real| -> Option<(Real, Real)> {
        let s = FRAC_PI_2 * t.abs().sinh();
        let delta = 2.0 / ((2.0 * s).exp() + 1.0);
        if delta == 0.0 {
            return None;
        }
        // 1/cosh²s written with e^{−2s} so it underflows instead of overflowing.
        let e = (-2.0 * s).exp();
        let w = half * FRAC_PI_2 * t.cosh() * 4.0 * e / ((1.0 + e) * (1.0 + e));
        let x = if t < 0.0 { a + half * delta } else { b - half * delta };
        Some((x, w))
    };
    let level = |h: Real, odd_only: bool| -> Result<(Cplx, usize)> {
        let n = (T_MAX / h).floor() as i64;
        let ts: Vec<Real> = (-n..=n)
            .filter(|k| !odd_only || k.rem_euclid(2) == 1)
            .map(|k| k as Real * h)
            .collect();
        let pts: Vec<(Real, Real)> = ts.iter().filter_map(|&t| node(t)).collect();
        let vals = par_map(&pts, |&(x, w)| f(x).map(|v| v * w));
        let mut s = re(0.0);
        for v in vals {
            let v = v?;
            if !is_finite(v) {
                return Err(Error::NonFinite("integrand".into()));
            }
            s += v;
        }
        Ok((s, pts.len()))
    };
    let mut h = 0.5;
    let (mut sum, mut used) = level(h, false)?;
    let mut value = sum * h;
    loop {
        h *= 0.5;
        let (s, n) = level(h, true)?;
        sum += s;
        used += n;
        let new = sum * h;
        let delta = (new - value).norm();
        value = new;
        if settled(delta, value, cfg.rel_tol) {
            return Ok(QuadratureResult { value, err_estimate: estimate(delta, value, used), nodes_used: used });
        }
        if used * 2 > cfg.max_quad_nodes {
            return Err(Error::NodeCapExceeded { cap: cfg.max_quad_nodes, last_delta: delta });
        }
    }
}

fn real_base(q: Real) -> Result<Cplx> {
    if !(q > 0.0 && q < 1.0) {
        return Err(Error::DomainViolation(format!("base {q} must lie in (0, 1)")));
    }
    Ok(re(q))
}

/// `∫_0^∞ (bt, q/at; q)_∞ / (−t, −q/t; q)_∞ dt/t`.
pub fn qbeta_integral_1(a: Cplx, b: Cplx, q: Real, cfg: &EvalConfig) -> Result<QuadratureResult> {
    let qc = real_base(q)?;
    let (nb, na) = (QArg::new(b), QArg::new(qc / a));
    let (d1, d2) = (QArg::new(re(-1.0)), QArg::new(re(-q)));
    integrate_halfline_log(
        &|t: Real| {
            let lt = re(t.ln());
            let r = product_ratio(&[nb.shifted(lt), na.shifted(-lt)], &[d1.shifted(lt), d2.shifted(-lt)], qc, cfg, false)?;
            Ok(r.value.to_complex())
        },
        cfg,
    )
}

/// `∫_0^∞ (−q^b t, −q^{1−a}/t; q)_∞ / (−t, −q/t; q)_∞ t^{c−1} dt`.
pub fn qbeta_integral_2(a: Real, b: Real, c: Real, q: Real, cfg: &EvalConfig) -> Result<QuadratureResult> {
    let qc = real_base(q)?;
    let lq = q.ln();
    let n1 = QArg::from_log(Cplx::new(b * lq, PI));
    let n2 = QArg::from_log(Cplx::new((1.0 - a) * lq, PI));
    let (d1, d2) = (QArg::new(re(-1.0)), QArg::new(re(-q)));
    integrate_halfline_log(
        &|t: Real| {
            let lt = re(t.ln());
            let r = product_ratio(&[n1.shifted(lt), n2.shifted(-lt)], &[d1.shifted(lt), d2.shifted(-lt)], qc, cfg, false)?;
            Ok((r.value * crate::scalar::Scaled::from_log(lt * c)).to_complex())
        },
        cfg,
    )
}

/// The continuous limit of the very-well-poised sum at `a = i`:
/// `∫_0^∞ F(t) dt / (t ln q^{−1})` with `F` the summand evaluated at `u = t`.
pub fn askey_integral(b: Cplx, c: Cplx, d: Cplx, e: Cplx, q: Real, cfg: &EvalConfig) -> Result<QuadratureResult> {
    real_base(q)?;
    let scale = 1.0 / (1.0 / q).ln();
    let r = integrate_halfline_log(
        &|t: Real| sn_summand(I, b, c, d, e, q, t.ln(), cfg).map(|v| v * scale),
        cfg,
    )?;
    Ok(r)
}

/// Rejects a contour on which a denominator factor comes within the guard of zero.
fn scan_contour(den: impl Fn(Real) -> Result<()>) -> Result<()> {
    for j in 0..64 {
        let theta = -PI + TAU * j as Real / 64.0;
        match den(theta) {
            Ok(()) => {}
            Err(Error::IllConditioned(m)) | Err(Error::DivisionByVanishingFactor(m)) => {
                return Err(Error::IllConditionedContour(format!("at θ = {theta:.3}: {m}")));
            }
            Err(e) => return Err(e),
        }
    }
    Ok(())
}

fn ring_check(b: Cplx, y: Cplx, a: Cplx) -> Result<()> {
    const MARGIN: Real = 0.99;
    if !(b.norm() <= MARGIN * y.norm() && y.norm() <= MARGIN * a.norm()) {
        return Err(Error::DomainViolation(format!(
            "contour radius |y| = {:.4} must satisfy |b| < |y| < |a| with 1% margin (|b| = {:.4}, |a| = {:.4})",
            y.norm(),
            b.norm(),
            a.norm()
        )));
    }
    Ok(())
}

/// Right-hand side of the bibasic integral representation of
/// `Σ (bq^n, pq^{−n}/a; p)_∞ (−z)^n q^{n(n−1)/2}`.
pub fn bibasic_integral_rhs(a: Cplx, b: Cplx, z: Cplx, p: Real, q: Real, y: Cplx, cfg: &EvalConfig) -> Result<QuadratureResult> {
    let (pc, qc) = (real_base(p)?, real_base(q)?);
    if !(p < q) {
        return Err(Error::DomainViolation(format!("need p < q, got p = {p}, q = {q}")));
    }
    ring_check(b, y, a)?;
    let r = re(p / q);
    let d1 = QArg::new(-y / a);
    let d2 = QArg::new(-b / y);
    let n1 = QArg::new(y / z);
    let n2 = QArg::new(re(p) * z / (re(q) * y));
    let den = |th: Real| product_ratio(&[], &[d1.shifted(I * th), d2.shifted(-I * th)], pc, cfg, false);
    scan_contour(|th| den(th).map(|_| ()))?;
    let on_q = product_ratio(&[QArg::new(qc), QArg::new(z), QArg::new(qc / z)], &[], qc, cfg, false)?;
    let on_r = product_ratio(&[QArg::new(r)], &[], r, cfg, false)?;
    let on_p = product_ratio(&[QArg::new(b / a)], &[], pc, cfg, false)?;
    let prefactor = (on_q.value * on_r.value * on_p.value).to_complex();
    let integral = periodic_trapezoid(
        &|th: Real| {
            let num = product_ratio(&[n1.shifted(I * th), n2.shifted(-I * th)], &[], r, cfg, false)?;
            let d = den(th)?;
            Ok((num.value * d.value).to_complex())
        },
        cfg,
    )?;
    Ok(QuadratureResult {
        value: prefactor * integral.value,
        err_estimate: prefactor.norm() * integral.err_estimate,
        nodes_used: integral.nodes_used,
    })
}

/// `(bq^n, pq^{−n}/a; p)_∞` by products and by its contour-integral representation.
pub fn psi11_integral_rep_check(a: Cplx, b: Cplx, y: Cplx, n: i64, p: Real, q: Real, cfg: &EvalConfig) -> Result<(Cplx, QuadratureResult)> {
    let (pc, _) = (real_base(p)?, real_base(q)?);
    ring_check(b, y, a)?;
    let lqn = re(n as Real * q.ln());
    let product = product_ratio(&[QArg::new(b).shifted(lqn), QArg::new(re(p) / a).shifted(-lqn)], &[], pc, cfg, false)?
        .value
        .to_complex();
    let n1 = QArg::new(y).shifted(lqn);
    let n2 = QArg::new(re(p) / y).shifted(-lqn);
    let d1 = QArg::new(y / a);
    let d2 = QArg::new(b / y);
    let den = |th: Real| product_ratio(&[], &[d1.shifted(I * th), d2.shifted(-I * th)], pc, cfg, false);
    scan_contour(|th| den(th).map(|_| ()))?;
    let pre = product_ratio(&[QArg::new(pc), QArg::new(b / a)], &[], pc, cfg, false)?.value.to_complex();
    let integral = periodic_trapezoid(
        &|th: Real| {
            let num = product_ratio(&[n1.shifted(I * th), n2.shifted(-I * th)], &[], pc, cfg, false)?;
            Ok((num.value * den(th)?.value).to_complex())
        },
        cfg,
    )?;
    Ok((
        product,
        QuadratureResult {
            value: pre * integral.value,
            err_estimate: pre.norm() * integral.err_estimate,
            nodes_used: integral.nodes_used,
        },
    ))
}

//! Limit trends: a family of exact identities indexed by a parameter that
//! approaches a continuous limit.

use serde::Serialize;

use super::{evaluate_identity, Point};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::quadrature::{askey_integral, qbeta_integral_1};
use crate::scalar::{re, Cplx, Real, I};
use crate::series::generators::{make_second_extension_terms, make_shifted_f_terms, make_sn_terms, make_psi11_terms};
use crate::series::sum_bilateral;
use crate::qcore::ratio;

pub const TREND_FAMILIES: [&str; 3] = ["sn_to_askey", "alpha_psi_to_qbeta", "third_ext_p_to_q"];

/// Gaps below this are rounding or quadrature noise and do not count
/// against monotonicity.
const NOISE_FLOOR: Real = 1e-8;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendStep {
    /// `N` or `p`, depending on the family.
    pub param: Real,
    pub value: [Real; 2],
    pub gap: Real,
    /// Whether the exact identity at this step verified.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrendReport {
    pub family: String,
    pub point: std::collections::BTreeMap<String, [Real; 2]>,
    pub limit: [Real; 2],
    pub steps: Vec<TrendStep>,
    pub threshold: Option<Real>,
    pub final_gap: Real,
    pub decreasing: bool,
    pub pass: bool,
    pub config: EvalConfig,
}

fn pair(z: Cplx) -> [Real; 2] {
    [z.re, z.im]
}

/// Each gap is no larger than the previous one, ignoring gaps under the noise floor.
fn eventually_decreasing(gaps: &[Real]) -> bool {
    gaps.windows(2).all(|w| w[1] <= w[0] || w[1] < NOISE_FLOOR)
}

fn default_path(family: &str) -> Vec<Real> {
    match family {
        "sn_to_askey" => vec![1.0, 2.0, 4.0, 8.0, 16.0],
        "alpha_psi_to_qbeta" => (1..=16).map(|n| n as Real).collect(),
        _ => vec![0.3, 0.4, 0.45],
    }
}

/// Runs one trend family along `path` (values of `N`, or of `p`).
pub fn limit_trend(family: &str, path: Option<&[Real]>, cfg: &EvalConfig) -> Result<TrendReport> {
    if !TREND_FAMILIES.contains(&family) {
        return Err(Error::UnknownFamily(family.into()));
    }
    let path = path.map(<[Real]>::to_vec).unwrap_or_else(|| default_path(family));
    let (point, limit, threshold, steps) = match family {
        "sn_to_askey" => sn_to_askey(&path, cfg)?,
        "alpha_psi_to_qbeta" => alpha_psi_to_qbeta(&path, cfg)?,
        _ => third_ext_p_to_q(&path, cfg)?,
    };
    let gaps: Vec<Real> = steps.iter().map(|s| s.gap).collect();
    let final_gap = gaps.last().copied().unwrap_or(Real::NAN);
    let decreasing = eventually_decreasing(&gaps);
    let verified = steps.iter().all(|s| s.verified);
    let pass = match threshold {
        Some(t) => verified && decreasing && final_gap < t,
        None => verified,
    };
    Ok(TrendReport {
        family: family.into(),
        point: point.iter().map(|(k, v)| (k.clone(), pair(*v))).collect(),
        limit: pair(limit),
        steps,
        threshold,
        final_gap,
        decreasing,
        pass,
        config: *cfg,
    })
}

fn as_index(v: Real) -> Result<u32> {
    if v >= 1.0 && v == v.round() {
        Ok(v as u32)
    } else {
        Err(Error::BadParameter { name: "N".into(), reason: format!("{v} is not a positive integer") })
    }
}

type Trend = (Point, Cplx, Option<Real>, Vec<TrendStep>);

fn sn_to_askey(path: &[Real], cfg: &EvalConfig) -> Result<Trend> {
    let (b, c, d, e, q) = (0.3, 0.4, 0.5, 0.6, 0.5);
    let limit = askey_integral(re(b), re(c), re(d), re(e), q, cfg)?.value;
    let mut point: Point = [("b", b), ("c", c), ("d", d), ("e", e), ("q", q)].iter().map(|(k, v)| (k.to_string(), re(*v))).collect();
    let mut steps = Vec::new();
    for &nv in path {
        let n = as_index(nv)?;
        let s = sum_bilateral(&make_sn_terms(I, re(b), re(c), re(d), re(e), q, n, cfg)?, cfg)?;
        point.insert("N".into(), re(n as Real));
        let verified = evaluate_identity("sn_equals_s1", &point, None, cfg)?.pass;
        steps.push(TrendStep { param: nv, value: pair(s.value), gap: (s.value - limit).norm(), verified });
    }
    point.remove("N");
    Ok((point, limit, Some(1e-3), steps))
}

fn alpha_psi_to_qbeta(path: &[Real], cfg: &EvalConfig) -> Result<Trend> {
    let (a, b, x, q) = (2.0, 0.1, -1.0, 0.3);
    let limit = qbeta_integral_1(re(a), re(b), q, cfg)?.value / (1.0 / q).ln();
    let mut point: Point = [("a", a), ("b", b), ("x", x), ("q", q)].iter().map(|(k, v)| (k.to_string(), re(*v))).collect();
    let mut steps = Vec::new();
    for &nv in path {
        let n = as_index(nv)?;
        let g = make_second_extension_terms(re(a), re(b), re(-x / a), q, n, re(1.0), cfg)?;
        let v = sum_bilateral(&g, cfg)?.value / n as Real;
        point.insert("N".into(), re(n as Real));
        let verified = evaluate_identity("alpha_psi_sum", &point, None, cfg)?.pass;
        steps.push(TrendStep { param: nv, value: pair(v), gap: (v - limit).norm(), verified });
    }
    point.remove("N");
    Ok((point, limit, Some(1e-6), steps))
}

fn third_ext_p_to_q(path: &[Real], cfg: &EvalConfig) -> Result<Trend> {
    let (a, b, z, q, y) = (re(3.0), re(0.1), re(-0.8), 0.5, re(0.6));
    // At p = q the series is (b, q/a; q)_∞ times the 1psi1 sum at argument z/a.
    let psi = sum_bilateral(&make_psi11_terms(a, b, re(q), z / a, cfg)?, cfg)?.value;
    let limit = ratio(&[b, re(q) / a], &[], re(q), cfg)? * psi;
    let mut point: Point = [("a", a), ("b", b), ("z", z), ("q", re(q)), ("y", y)].into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    let mut steps = Vec::new();
    for &p in path {
        let v = sum_bilateral(&make_shifted_f_terms(a, b, z, p, q, cfg)?, cfg)?.value;
        point.insert("p".into(), re(p));
        let verified = evaluate_identity("third_extension", &point, None, cfg)?.pass;
        steps.push(TrendStep { param: p, value: pair(v), gap: (v - limit).norm(), verified });
    }
    point.remove("p");
    Ok((point, limit, None, steps))
}

//! q-Pochhammer products.
//!
//! Arguments of infinite products are kept in log form so that factors
//! such as `(q^{1-n}/a; p)_∞` with enormous `|q^{1-n}/a|` never overflow:
//! a factor `1 − x` with `|x| > 1` is split as `−x·(1 − 1/x)` and the
//! `−x` parts are accumulated as a logarithm.

use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Cplx, Real, Scaled, EPS};

/// Value, absolute error and work count of a convergent evaluation.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesEvaluation {
    pub value: Cplx,
    pub err_estimate: Real,
    pub terms_used: usize,
    pub converged: bool,
    pub diagnostics: Vec<String>,
}

impl SeriesEvaluation {
    pub fn exact(value: Cplx) -> Self {
        SeriesEvaluation { value, err_estimate: 0.0, terms_used: 0, converged: true, diagnostics: vec![] }
    }
}

/// Argument of a product factor sequence `x, xq, xq², …`, stored as `ln x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum QArg {
    Zero,
    Log(Cplx),
}

impl QArg {
    pub fn new(x: Cplx) -> Self {
        if x.norm() == 0.0 {
            QArg::Zero
        } else {
            QArg::Log(x.ln())
        }
    }

    /// `x` given as `exp(l)`.
    pub fn from_log(l: Cplx) -> Self {
        QArg::Log(l)
    }

    /// The argument `x·w`, where `w = exp(lw)`.
    pub fn shifted(self, lw: Cplx) -> Self {
        match self {
            QArg::Zero => QArg::Zero,
            QArg::Log(l) => QArg::Log(l + lw),
        }
    }

    pub fn value(self) -> Cplx {
        match self {
            QArg::Zero => Cplx::new(0.0, 0.0),
            QArg::Log(l) => l.exp(),
        }
    }
}

impl From<Cplx> for QArg {
    fn from(x: Cplx) -> Self {
        QArg::new(x)
    }
}

impl From<Real> for QArg {
    fn from(x: Real) -> Self {
        QArg::new(Cplx::new(x, 0.0))
    }
}

/// A product value with a relative error bound.
#[derive(Debug, Clone, Copy)]
pub struct ProductValue {
    pub value: Scaled,
    pub rel_err: Real,
    pub factors: usize,
}

/// `e^z − 1` without cancellation near zero.
fn exp_m1(z: Cplx) -> Cplx {
    let s = (0.5 * z.im).sin();
    Cplx::new(z.re.exp_m1() * z.im.cos() - 2.0 * s * s, z.re.exp() * z.im.sin())
}

fn check_base(q: Cplx) -> Result<()> {
    if !is_finite(q) || q.norm() >= 1.0 {
        return Err(Error::DomainViolation(format!("base |q| = {} is not below 1", q.norm())));
    }
    Ok(())
}

/// Role of a product inside a ratio, which decides how near-zero
/// factors are treated.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Numerator { strict: bool },
    Denominator,
}

/// `(x; q)_∞` in scaled form.
fn infinite_product(arg: QArg, q: Cplx, cfg: &EvalConfig, role: Role) -> Result<ProductValue> {
    let l0 = match arg {
        QArg::Zero => return Ok(ProductValue { value: Scaled::ONE, rel_err: 0.0, factors: 0 }),
        QArg::Log(l) => l,
    };
    if q.norm() == 0.0 {
        // Only the k = 0 factor survives.
        return single_factor(l0, cfg, role).map(|(v, e)| ProductValue { value: v, rel_err: e, factors: 1 });
    }
    let lq = q.ln();
    let qa = q.norm();
    let target = (cfg.rel_tol * 1e-3).max(EPS * 0.25);
    let mut logs = Cplx::new(0.0, 0.0);
    let mut mant = Scaled::ONE;
    let mut k = 0usize;
    // Large factors: accumulate −x as a logarithm.
    let mut l = l0;
    while l.re > 0.0 {
        if k >= cfg.max_terms {
            return Err(Error::BudgetExceeded(k));
        }
        logs += l + Cplx::new(0.0, PI);
        logs.im = logs.im.rem_euclid(TAU);
        let f = -exp_m1(-l);
        mant = apply(mant, f, cfg, role)?;
        l += lq;
        k += 1;
    }
    // Small factors: iterate x directly.
    let mut x = l.exp();
    loop {
        let xa = x.norm();
        let tail = xa / ((1.0 - qa) * (1.0 - xa).max(1e-300));
        if tail < target {
            let rel_err = tail + 4.0 * EPS * (k as Real + 1.0) + 4.0 * EPS * l0.norm();
            let value = Scaled::from_log(logs) * mant;
            return Ok(ProductValue { value, rel_err, factors: k });
        }
        if k >= cfg.max_terms {
            return Err(Error::BudgetExceeded(k));
        }
        // Near 1 the log form avoids cancellation in 1 − x.
        let f = if xa > 0.5 { -exp_m1(l) } else { Cplx::new(1.0, 0.0) - x };
        mant = apply(mant, f, cfg, role)?;
        x *= q;
        l += lq;
        k += 1;
    }
}

fn single_factor(l: Cplx, cfg: &EvalConfig, role: Role) -> Result<(Scaled, Real)> {
    let f = -exp_m1(l);
    Ok((apply(Scaled::ONE, f, cfg, role)?, 4.0 * EPS))
}

fn apply(acc: Scaled, f: Cplx, cfg: &EvalConfig, role: Role) -> Result<Scaled> {
    let m = f.norm();
    if m == 0.0 {
        return match role {
            Role::Denominator => Err(Error::DivisionByVanishingFactor("infinite product in a denominator has an exact zero".into())),
            Role::Numerator { .. } => Ok(Scaled::ZERO),
        };
    }
    if m < cfg.ill_cond_guard {
        match role {
            Role::Denominator => {
                return Err(Error::IllConditioned(format!("denominator factor of modulus {m:e}")));
            }
            Role::Numerator { strict: true } => {
                return Err(Error::IllConditioned(format!("factor of modulus {m:e}")));
            }
            Role::Numerator { strict: false } => {}
        }
    }
    Ok(acc * f)
}

/// `Π (num_i; q)_∞ / Π (den_j; q)_∞` in scaled form.
///
/// Near-zero numerator factors are accepted unless `strict`; they only
/// make the value small. Near-zero denominator factors are always an error.
pub fn product_ratio(num: &[QArg], den: &[QArg], q: Cplx, cfg: &EvalConfig, strict: bool) -> Result<ProductValue> {
    check_base(q)?;
    let mut value = Scaled::ONE;
    let mut rel_err = 0.0;
    let mut factors = 0;
    for &a in num {
        let p = infinite_product(a, q, cfg, Role::Numerator { strict })?;
        if p.value.is_zero() {
            return Ok(ProductValue { value: Scaled::ZERO, rel_err: 0.0, factors: factors + p.factors });
        }
        value = value * p.value;
        rel_err += p.rel_err;
        factors += p.factors;
    }
    for &a in den {
        let p = infinite_product(a, q, cfg, Role::Denominator)?;
        value = value / p.value;
        rel_err += p.rel_err;
        factors += p.factors;
    }
    Ok(ProductValue { value, rel_err, factors })
}

/// Plain-complex convenience wrapper of [`product_ratio`] for values that fit in `f64`.
pub fn ratio(num: &[Cplx], den: &[Cplx], q: Cplx, cfg: &EvalConfig) -> Result<Cplx> {
    let num: Vec<QArg> = num.iter().map(|&x| QArg::new(x)).collect();
    let den: Vec<QArg> = den.iter().map(|&x| QArg::new(x)).collect();
    let v = product_ratio(&num, &den, q, cfg, false)?.value.to_complex();
    if !is_finite(v) {
        return Err(Error::NonFinite("product ratio overflows".into()));
    }
    Ok(v)
}

/// `(a; q)_n` for any integer `n`, with `(a; q)_{−n} = 1/(aq^{−n}; q)_n`.
pub fn qpoch_finite(a: Cplx, q: Cplx, n: i64, cfg: &EvalConfig) -> Result<Cplx> {
    let one = Cplx::new(1.0, 0.0);
    if n >= 0 {
        let mut p = one;
        let mut x = a;
        for _ in 0..n {
            p *= one - x;
            x *= q;
        }
        return Ok(p);
    }
    if q.norm() == 0.0 {
        return Err(Error::DomainViolation("negative index needs q ≠ 0".into()));
    }
    let qi = q.inv();
    let mut p = one;
    let mut x = a * qi;
    for _ in 0..(-n) {
        let f = one - x;
        if f.norm() < cfg.ill_cond_guard {
            return Err(Error::DivisionByVanishingFactor(format!("factor 1 − aq^-k of modulus {:e}", f.norm())));
        }
        p *= f;
        x *= qi;
    }
    Ok(p.inv())
}

/// `(a; q)_∞`.
pub fn qpoch_infinite(a: Cplx, q: Cplx, cfg: &EvalConfig) -> Result<SeriesEvaluation> {
    qpoch_multi(&[a], q, cfg)
}

/// `(a_1, …, a_m; q)_∞`.
pub fn qpoch_multi(args: &[Cplx], q: Cplx, cfg: &EvalConfig) -> Result<SeriesEvaluation> {
    check_base(q)?;
    let mut value = Cplx::new(1.0, 0.0);
    let mut rel_sq = 0.0;
    let mut terms = 0;
    for &a in args {
        let p = infinite_product(QArg::new(a), q, cfg, Role::Numerator { strict: true })?;
        terms += p.factors;
        if p.value.is_zero() {
            let mut ev = SeriesEvaluation::exact(Cplx::new(0.0, 0.0));
            ev.terms_used = terms;
            ev.diagnostics.push("exact zero factor".into());
            return Ok(ev);
        }
        value *= p.value.to_complex();
        rel_sq += p.rel_err * p.rel_err;
    }
    if !is_finite(value) {
        return Err(Error::NonFinite("product overflows".into()));
    }
    Ok(SeriesEvaluation {
        value,
        err_estimate: rel_sq.sqrt() * value.norm(),
        terms_used: terms,
        converged: true,
        diagnostics: vec![],
    })
}

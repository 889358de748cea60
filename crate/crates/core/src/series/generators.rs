//! Term generators for the concrete series.
//!
//! Constructors validate the convergence region (with a 1% margin on
//! strict inequalities) before anything is summed.

use std::f64::consts::PI;

use super::{Decay, TermGenerator};
use crate::classical::{reciprocal_gamma_parts, BandLimited};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::qcore::{product_ratio, qpoch_finite, QArg};
use crate::scalar::{is_finite, re, sin_pi, sinc_pi, Cplx, Real, Scaled, I};

/// Safety factor applied to strict inequalities of convergence regions.
pub const MARGIN: Real = 0.99;

fn violation(msg: String) -> Error {
    Error::DomainViolation(msg)
}

fn base_check(q: Cplx) -> Result<()> {
    if !is_finite(q) || q.norm() >= 1.0 || q.norm() == 0.0 {
        return Err(violation(format!("base must satisfy 0 < |q| < 1, got |q| = {}", q.norm())));
    }
    Ok(())
}

fn real_base(q: Real, name: &str) -> Result<()> {
    if !(q > 0.0 && q < 1.0) {
        return Err(violation(format!("{name} = {q} must lie in (0, 1)")));
    }
    Ok(())
}

/// Whether `x = q^k` for some integer `k ≥ 0`, to rounding.
fn is_nonneg_power(x: Cplx, q: Cplx) -> bool {
    let mut p = re(1.0);
    for _ in 0..200 {
        if (x - p).norm() <= 1e-14 * p.norm().max(1e-300) {
            return true;
        }
        p *= q;
        if p.norm() < x.norm() * 0.5 {
            return false;
        }
    }
    false
}

fn finite(v: Scaled, what: &str) -> Result<Cplx> {
    let c = v.to_complex();
    if !is_finite(c) {
        return Err(Error::NonFinite(what.into()));
    }
    Ok(c)
}

/// `(a;q)_n/(b;q)_n z^n`, `n ∈ ℤ`.
#[derive(Debug, Clone)]
pub struct Psi11Terms {
    a: Cplx,
    b: Cplx,
    q: Cplx,
    z: Cplx,
    cfg: EvalConfig,
}

pub fn make_psi11_terms(a: Cplx, b: Cplx, q: Cplx, z: Cplx, cfg: &EvalConfig) -> Result<Psi11Terms> {
    base_check(q)?;
    if !(z.norm() <= MARGIN) {
        return Err(violation(format!("|z| = {:.4} must be below 1 (with 1% margin)", z.norm())));
    }
    // When b = q^k the terms vanish for n ≤ −k and the inner ring is not needed.
    if !is_nonneg_power(b, q) && !((b / a).norm() <= MARGIN * z.norm()) {
        return Err(violation(format!("ring |b/a| < |z| violated: |b/a| = {:.4}, |z| = {:.4}", (b / a).norm(), z.norm())));
    }
    Ok(Psi11Terms { a, b, q, z, cfg: *cfg })
}

/// `(a;q)_n z^n/(q;q)_n`; summed unilaterally this is the q-binomial series.
pub fn make_qbinomial_terms(a: Cplx, q: Cplx, z: Cplx, cfg: &EvalConfig) -> Result<Psi11Terms> {
    base_check(q)?;
    if !(z.norm() <= MARGIN) {
        return Err(violation(format!("|z| = {:.4} must be below 1 (with 1% margin)", z.norm())));
    }
    Ok(Psi11Terms { a, b: q, q, z, cfg: *cfg })
}

impl TermGenerator for Psi11Terms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let num = qpoch_finite(self.a, self.q, n, &self.cfg)?;
        if n < 0 && num.norm() == 0.0 {
            return Ok(re(0.0));
        }
        let den = match qpoch_finite(self.b, self.q, n, &self.cfg) {
            Ok(d) => d,
            // (b;q)_{−m} = 1/(bq^{−m};q)_m is infinite when b = q^k, so the term is zero.
            Err(Error::DivisionByVanishingFactor(_)) if n < 0 => return Ok(re(0.0)),
            Err(e) => return Err(e),
        };
        if den.norm() == 0.0 {
            return Err(Error::DivisionByVanishingFactor("(b;q)_n vanishes".into()));
        }
        Ok(num / den * self.z.powi(n as i32))
    }

    fn forward(&self) -> Box<dyn Iterator<Item = Result<Cplx>> + '_> {
        let one = re(1.0);
        let mut t = one;
        let mut qk = one;
        let mut first = true;
        Box::new(std::iter::from_fn(move || {
            if first {
                first = false;
                return Some(Ok(t));
            }
            let d = one - self.b * qk;
            if d.norm() == 0.0 {
                return Some(Err(Error::DivisionByVanishingFactor("(b;q)_n vanishes".into())));
            }
            t = t * (one - self.a * qk) / d * self.z;
            qk *= self.q;
            Some(Ok(t))
        }))
    }

    fn backward(&self) -> Box<dyn Iterator<Item = Result<Cplx>> + '_> {
        // t_{−m−1} = t_{−m} · (q^{m+1} − b)/(q^{m+1} − a) / z.
        let mut t = re(1.0);
        let mut qk = self.q;
        Box::new(std::iter::from_fn(move || {
            let d = qk - self.a;
            if d.norm() < self.cfg.ill_cond_guard * qk.norm().max(self.a.norm()) {
                return Some(Err(Error::DivisionByVanishingFactor("a = q^k makes a negative-index factor vanish".into())));
            }
            t = t * (qk - self.b) / d / self.z;
            qk *= self.q;
            Some(Ok(t))
        }))
    }
}

/// `(bp^n;q)_∞/(ap^n;q)_∞ z^n` with `p = q^{1/N}`.
pub struct FirstExtensionTerms {
    na: QArg,
    nb: QArg,
    lp: Real,
    lz: Cplx,
    q: Real,
    cfg: EvalConfig,
}

pub fn make_first_extension_terms(a: Cplx, b: Cplx, q: Real, n_ext: u32, z: Cplx, cfg: &EvalConfig) -> Result<FirstExtensionTerms> {
    real_base(q, "q")?;
    if n_ext == 0 {
        return Err(violation("N must be at least 1".into()));
    }
    let inner = (b / a).norm().powf(1.0 / n_ext as Real);
    if !(z.norm() <= MARGIN && inner <= MARGIN * z.norm()) {
        return Err(violation(format!(
            "ring |b/a|^(1/N) < |z| < 1 violated: |b/a|^(1/N) = {inner:.4}, |z| = {:.4}",
            z.norm()
        )));
    }
    Ok(FirstExtensionTerms { na: QArg::new(a), nb: QArg::new(b), lp: q.ln() / n_ext as Real, lz: z.ln(), q, cfg: *cfg })
}

impl TermGenerator for FirstExtensionTerms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let s = re(n as Real * self.lp);
        let r = product_ratio(&[self.nb.shifted(s)], &[self.na.shifted(s)], re(self.q), &self.cfg, false)?;
        finite(r.value * Scaled::from_log(self.lz * n as Real), "first extension term")
    }
}

/// `(bq^{αn}, q^{1−αn}/a; q)_∞ / (−axq^{αn}, −q^{1−αn}/(ax); q)_∞ · y^n`, `α = 1/N`.
pub struct SecondExtensionTerms {
    num: [QArg; 2],
    den: [QArg; 2],
    lstep: Real,
    ly: Cplx,
    q: Real,
    cfg: EvalConfig,
}

pub fn make_second_extension_terms(a: Cplx, b: Cplx, x: Cplx, q: Real, n_ext: u32, y: Cplx, cfg: &EvalConfig) -> Result<SecondExtensionTerms> {
    real_base(q, "q")?;
    if n_ext == 0 {
        return Err(violation("N must be at least 1".into()));
    }
    let n = n_ext as Real;
    // Terms behave like (b/(ax y^N))^{-n/N} and (x y^N)^{n/N} at the two ends.
    let lo = (b / (a * x)).norm().powf(1.0 / n);
    let hi = x.norm().powf(-1.0 / n);
    if !(lo <= MARGIN * y.norm() && y.norm() <= MARGIN * hi) {
        return Err(violation(format!(
            "ring |b/(ax)|^(1/N) < |y| < |x|^(-1/N) violated: {lo:.4} < {:.4} < {hi:.4}",
            y.norm()
        )));
    }
    let qc = re(q);
    Ok(SecondExtensionTerms {
        num: [QArg::new(b), QArg::new(qc / a)],
        den: [QArg::new(-a * x), QArg::new(-qc / (a * x))],
        lstep: q.ln() / n,
        ly: y.ln(),
        q,
        cfg: *cfg,
    })
}

impl TermGenerator for SecondExtensionTerms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let s = re(n as Real * self.lstep);
        let r = product_ratio(
            &[self.num[0].shifted(s), self.num[1].shifted(-s)],
            &[self.den[0].shifted(s), self.den[1].shifted(-s)],
            re(self.q),
            &self.cfg,
            false,
        )?;
        finite(r.value * Scaled::from_log(self.ly * n as Real), "second extension term")
    }
}

/// Very-well-poised bilateral `₆ψ₆` terms.
pub struct Psi66Terms {
    num: [Cplx; 6],
    den: [Cplx; 6],
    arg: Cplx,
    q: Cplx,
    cfg: EvalConfig,
}

pub fn make_psi66_terms(a: Cplx, b: Cplx, c: Cplx, d: Cplx, e: Cplx, q: Cplx, cfg: &EvalConfig) -> Result<Psi66Terms> {
    base_check(q)?;
    let arg = q * a * a / (b * c * d * e);
    if !(arg.norm() <= MARGIN) {
        return Err(violation(format!("|qa²/bcde| = {:.4} must be below 1 (with 1% margin)", arg.norm())));
    }
    let sa = a.sqrt();
    Ok(Psi66Terms {
        num: [q * sa, -q * sa, b, c, d, e],
        den: [sa, -sa, a * q / b, a * q / c, a * q / d, a * q / e],
        arg,
        q,
        cfg: *cfg,
    })
}

impl TermGenerator for Psi66Terms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let mut t = self.arg.powi(n as i32);
        for (&u, &v) in self.num.iter().zip(&self.den) {
            t *= qpoch_finite(u, self.q, n, &self.cfg)? / qpoch_finite(v, self.q, n, &self.cfg)?;
        }
        Ok(t)
    }

    fn forward(&self) -> Box<dyn Iterator<Item = Result<Cplx>> + '_> {
        let one = re(1.0);
        let mut t = one;
        let mut qk = one;
        let mut first = true;
        Box::new(std::iter::from_fn(move || {
            if first {
                first = false;
                return Some(Ok(t));
            }
            let mut r = self.arg;
            for (&u, &v) in self.num.iter().zip(&self.den) {
                let d = one - v * qk;
                if d.norm() < self.cfg.ill_cond_guard {
                    return Some(Err(Error::DivisionByVanishingFactor("₆ψ₆ denominator factor".into())));
                }
                r *= (one - u * qk) / d;
            }
            t *= r;
            qk *= self.q;
            Some(Ok(t))
        }))
    }

    fn backward(&self) -> Box<dyn Iterator<Item = Result<Cplx>> + '_> {
        let mut t = re(1.0);
        let mut qk = self.q;
        Box::new(std::iter::from_fn(move || {
            let mut r = self.arg.inv();
            for (&u, &v) in self.num.iter().zip(&self.den) {
                let d = qk - u;
                if d.norm() < self.cfg.ill_cond_guard * qk.norm().max(u.norm()) {
                    return Some(Err(Error::DivisionByVanishingFactor("₆ψ₆ negative-index factor".into())));
                }
                r *= (qk - v) / d;
            }
            t *= r;
            qk *= self.q;
            Some(Ok(t))
        }))
    }
}

/// The summand of `S_N` at `u = exp(lu)` (without the `α` prefactor):
/// `(abu, acu, adu, aeu, b/au, c/au, d/au, e/au; q)_∞` over
/// `(±aqu, ±q/au, ±a√q u, ±√q/au; q)_∞`.
#[allow(clippy::too_many_arguments)]
pub fn sn_summand(a: Cplx, b: Cplx, c: Cplx, d: Cplx, e: Cplx, q: Real, lu: Real, cfg: &EvalConfig) -> Result<Cplx> {
    let s = re(lu);
    let sq = q.sqrt();
    let up = |x: Cplx| QArg::new(x).shifted(s);
    let dn = |x: Cplx| QArg::new(x).shifted(-s);
    let num = [up(a * b), up(a * c), up(a * d), up(a * e), dn(b / a), dn(c / a), dn(d / a), dn(e / a)];
    let den = [
        up(a * q),
        up(-a * q),
        dn(re(q) / a),
        dn(-re(q) / a),
        up(a * sq),
        up(-a * sq),
        dn(re(sq) / a),
        dn(-re(sq) / a),
    ];
    let r = product_ratio(&num, &den, re(q), cfg, false)?;
    finite(r.value, "S_N summand")
}

/// `α · summand(u = q^{αn})`, `α = 1/N`.
pub struct SnTerms {
    params: [Cplx; 5],
    q: Real,
    alpha: Real,
    cfg: EvalConfig,
}

#[allow(clippy::too_many_arguments)]
pub fn make_sn_terms(a: Cplx, b: Cplx, c: Cplx, d: Cplx, e: Cplx, q: Real, n_ext: u32, cfg: &EvalConfig) -> Result<SnTerms> {
    real_base(q, "q")?;
    if n_ext == 0 {
        return Err(violation("N must be at least 1".into()));
    }
    let arg = (b * c * d * e).norm() / (q * q * q);
    if !(arg <= MARGIN) {
        return Err(violation(format!("|bcde/q³| = {arg:.4} must be below 1 (with 1% margin)")));
    }
    Ok(SnTerms { params: [a, b, c, d, e], q, alpha: 1.0 / n_ext as Real, cfg: *cfg })
}

impl SnTerms {
    /// The same summand with `a ↦ a·q^{k/N}`, read with unit step in `n`
    /// (the `k`-th residue class of the reindexing `n = k + mN`).
    pub fn residue_class(&self, k: u32) -> SnTerms {
        let [a, b, c, d, e] = self.params;
        let shift = (k as Real * self.alpha * self.q.ln()).exp();
        SnTerms { params: [a * shift, b, c, d, e], q: self.q, alpha: self.alpha, cfg: self.cfg }
    }

    /// Term with unit step: `α · summand(u = q^m)`.
    pub fn unit_step_term(&self, m: i64) -> Result<Cplx> {
        let [a, b, c, d, e] = self.params;
        Ok(sn_summand(a, b, c, d, e, self.q, m as Real * self.q.ln(), &self.cfg)? * self.alpha)
    }
}

impl TermGenerator for SnTerms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let [a, b, c, d, e] = self.params;
        let lu = self.alpha * n as Real * self.q.ln();
        Ok(sn_summand(a, b, c, d, e, self.q, lu, &self.cfg)? * self.alpha)
    }
}

/// `(bq^n, cq^{−n}; p)_∞ (−z)^n q^{n(n−1)/2}`.
///
/// With `c = q/a` this is the series defining `f(a, b, z)`.
pub struct FTerms {
    b: QArg,
    c: QArg,
    lmz: Cplx,
    p: Real,
    q: Real,
    cfg: EvalConfig,
}

fn f_domain(a: Cplx, b: Cplx, z: Cplx, p: Real, q: Real) -> Result<()> {
    real_base(p, "p")?;
    real_base(q, "q")?;
    if p < q {
        return Ok(());
    }
    if p == q {
        if b.norm() <= MARGIN * z.norm() && z.norm() <= MARGIN * a.norm() {
            return Ok(());
        }
        return Err(violation(format!(
            "with p = q the ring |b| < |z| < |a| is required: {:.4} < {:.4} < {:.4}",
            b.norm(),
            z.norm(),
            a.norm()
        )));
    }
    Err(violation(format!("need p < q or p = q, got p = {p}, q = {q}")))
}

/// Terms of `f(a, b, z)`.
pub fn make_f_terms(a: Cplx, b: Cplx, z: Cplx, p: Real, q: Real, cfg: &EvalConfig) -> Result<FTerms> {
    f_domain(a, b, z, p, q)?;
    Ok(FTerms { b: QArg::new(b), c: QArg::new(re(q) / a), lmz: (-z).ln(), p, q, cfg: *cfg })
}

/// Terms of `Σ (bq^n, pq^{−n}/a; p)_∞ (−z)^n q^{n(n−1)/2}`, i.e. `f(aq/p, b, z)`.
pub fn make_shifted_f_terms(a: Cplx, b: Cplx, z: Cplx, p: Real, q: Real, cfg: &EvalConfig) -> Result<FTerms> {
    f_domain(a * q / p, b, z, p, q)?;
    Ok(FTerms { b: QArg::new(b), c: QArg::new(re(p) / a), lmz: (-z).ln(), p, q, cfg: *cfg })
}

impl TermGenerator for FTerms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let nf = n as Real;
        let lq = self.q.ln();
        let s = re(nf * lq);
        if self.lmz.re == Real::NEG_INFINITY {
            // z = 0: only n = 0 survives.
            return if n == 0 {
                finite(product_ratio(&[self.b, self.c], &[], re(self.p), &self.cfg, false)?.value, "f term")
            } else {
                Ok(re(0.0))
            };
        }
        let r = product_ratio(&[self.b.shifted(s), self.c.shifted(-s)], &[], re(self.p), &self.cfg, false)?;
        let w = Scaled::from_log(self.lmz * nf + re(0.5 * nf * (nf - 1.0) * lq));
        finite(r.value * w, "f term")
    }
}

/// Terms `π(−z)^{s_m} / (Ω sin(πs_m ... ))` of the `m`-sum, `Ω = ln(1/p)`,
/// `s_m = (ln a + 2πim)/Ω`.
pub struct MSumTerms {
    la: Real,
    omega: Real,
    lmz: Cplx,
}

pub fn make_msum_terms(a: Real, z: Cplx, p: Real) -> Result<MSumTerms> {
    real_base(p, "p")?;
    if !(a > 0.0) {
        return Err(violation(format!("a = {a} must be a positive real")));
    }
    let lmz = (-z).ln();
    if !(lmz.im.abs() <= MARGIN * PI) || z.norm() == 0.0 {
        return Err(violation(format!("z = {z} is on or too near the cut of (−z)^s")));
    }
    let omega = (1.0 / p).ln();
    let frac = a.ln() / omega;
    if (frac - frac.round()).abs() < 1e-3 {
        return Err(violation(format!("ln a/ln(1/p) = {frac:.6} is too close to an integer")));
    }
    Ok(MSumTerms { la: a.ln(), omega, lmz })
}

impl TermGenerator for MSumTerms {
    fn term(&self, m: i64) -> Result<Cplx> {
        let om = self.omega;
        let s = Cplx::new(self.la, 2.0 * PI * m as Real) / om;
        let w = Cplx::new(PI * self.la / om, 2.0 * PI * PI * m as Real / om);
        // ln(1/sin w) without overflow in e^{±iw}.
        let inv_sin_log = if m == 0 {
            re(1.0 / sin_pi(self.la / om)).ln()
        } else if w.im > 0.0 {
            let e = (I * w).exp();
            re(-2.0).ln() + I.ln() + I * w - (re(1.0) - e * e).ln()
        } else {
            let e = (-I * w).exp();
            re(2.0).ln() + I.ln() - I * w - (re(1.0) - e * e).ln()
        };
        let l = re((PI / om).ln()) + s * self.lmz + inv_sin_log;
        Ok(l.exp())
    }
}

/// Which gamma-side bilateral sum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaKind {
    /// `1/[Γ(a+αn)Γ(b−αn)Γ(c+αn)Γ(d−αn)]`.
    Dougall { a: Real, b: Real, c: Real, d: Real },
    /// `Γ(a+1)/[Γ(a−c−αn+1)Γ(αn+c+1)] · e^{i(c+αn)x}`.
    Binomial { a: Cplx, c: Real, x: Real },
    /// `sinc(π(y−αn)) · g(αn)`.
    Sampling { g: BandLimited, y: Real },
}

pub struct GammaBilateralTerms {
    kind: GammaKind,
    alpha: Real,
}

fn period_of(alpha: Real) -> usize {
    let n = (1.0 / alpha).round();
    if n >= 1.0 && (n * alpha - 1.0).abs() < 1e-12 {
        n as usize
    } else {
        1
    }
}

pub fn make_gamma_bilateral_terms(kind: GammaKind, alpha: Real) -> Result<GammaBilateralTerms> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(violation(format!("α = {alpha} must lie in (0, 1]")));
    }
    match kind {
        GammaKind::Dougall { a, b, c, d } => {
            let s = a + b + c + d;
            if !(s >= 3.0 / MARGIN) {
                return Err(violation(format!("a + b + c + d = {s:.4} must exceed 3 (with 1% margin)")));
            }
        }
        GammaKind::Binomial { a, x, .. } => {
            if !(a.re >= 1e-2) {
                return Err(violation(format!("Re a = {:.4} must be positive", a.re)));
            }
            if !(x.abs() <= MARGIN * PI) {
                return Err(violation(format!("x = {x:.4} must lie in (−π, π) (with 1% margin)")));
            }
        }
        GammaKind::Sampling { g, .. } => {
            if let BandLimited::CosPower(b) = g {
                if !(b >= 0.0) {
                    return Err(violation(format!("profile exponent b = {b} must be nonnegative")));
                }
            }
        }
    }
    Ok(GammaBilateralTerms { kind, alpha })
}

impl TermGenerator for GammaBilateralTerms {
    fn term(&self, n: i64) -> Result<Cplx> {
        let an = self.alpha * n as Real;
        match self.kind {
            GammaKind::Dougall { a, b, c, d } => {
                let parts = [
                    reciprocal_gamma_parts(re(a + an)),
                    reciprocal_gamma_parts(re(b - an)),
                    reciprocal_gamma_parts(re(c + an)),
                    reciprocal_gamma_parts(re(d - an)),
                ];
                let mut f = re(1.0);
                let mut l = re(0.0);
                for (pf, pl) in parts {
                    f *= pf;
                    l += pl;
                }
                if f == re(0.0) {
                    return Ok(f);
                }
                Ok(f * l.exp())
            }
            GammaKind::Binomial { a, c, x } => {
                let (f1, l1) = reciprocal_gamma_parts(a - c - an + 1.0);
                let (f2, l2) = reciprocal_gamma_parts(re(an + c + 1.0));
                if f1 == re(0.0) || f2 == re(0.0) {
                    return Ok(re(0.0));
                }
                let lg = crate::classical::ln_gamma(a + 1.0)?;
                let phase = I * ((c + an) * x);
                Ok(f1 * f2 * (lg + l1 + l2 + phase).exp())
            }
            GammaKind::Sampling { g, y } => Ok(g.g(an) * sinc_pi(y - an)),
        }
    }

    fn decay(&self) -> Decay {
        let period = period_of(self.alpha);
        match self.kind {
            GammaKind::Dougall { a, b, c, d } => Decay::Algebraic { exponent: a + b + c + d - 2.0, period },
            GammaKind::Binomial { .. } => Decay::Oscillatory,
            GammaKind::Sampling { g, .. } => Decay::Algebraic { exponent: 1.0 + g.decay_exponent(), period },
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::ratio;
    use crate::series::{sum_bilateral, sum_unilateral};

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn close(a: Cplx, b: Cplx, tol: Real) -> bool {
        (a - b).norm() <= tol * b.norm().max(1e-300)
    }

    #[test]
    fn psi11_terms_by_hand() {
        let g = make_psi11_terms(re(2.0), re(0.1), re(0.3), re(0.4), &cfg()).unwrap();
        assert_eq!(g.term(0).unwrap(), re(1.0));
        assert!(close(g.term(1).unwrap(), re(-4.0 / 9.0), 1e-15));
        let expected = (1.0 - 0.1 / 0.3) / (1.0 - 2.0 / 0.3) / 0.4;
        assert!(close(g.term(-1).unwrap(), re(expected), 1e-15));
        // Recurrences agree with the direct formula.
        let fwd: Vec<_> = g.forward().take(12).map(|t| t.unwrap()).collect();
        let bwd: Vec<_> = g.backward().take(12).map(|t| t.unwrap()).collect();
        for k in 0..12 {
            assert!(close(fwd[k], g.term(k as i64).unwrap(), 1e-13));
            assert!(close(bwd[k], g.term(-(k as i64) - 1).unwrap(), 1e-13));
        }
    }

    #[test]
    fn psi11_outside_ring_is_rejected() {
        assert!(matches!(make_psi11_terms(re(2.0), re(0.1), re(0.3), re(1.5), &cfg()), Err(Error::DomainViolation(_))));
        assert!(matches!(make_psi11_terms(re(2.0), re(1.5), re(0.3), re(0.4), &cfg()), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn psi11_with_b_equal_q_is_q_binomial() {
        let (a, q, z) = (re(0.5), re(0.3), re(0.4));
        let g = make_psi11_terms(a, q, q, z, &cfg()).unwrap();
        let s = sum_bilateral(&g, &cfg()).unwrap();
        let oracle = ratio(&[a * z], &[z], q, &cfg()).unwrap();
        assert!(close(s.value, oracle, 1e-13));
    }

    #[test]
    fn q_binomial_unilateral() {
        let (a, q, z) = (re(0.2), re(0.5), re(0.3));
        let g = make_qbinomial_terms(a, q, z, &cfg()).unwrap();
        let s = sum_unilateral(&g, &cfg()).unwrap();
        let oracle = ratio(&[a * z], &[z], q, &cfg()).unwrap();
        assert!(close(s.value, oracle, 1e-13));
    }

    #[test]
    fn first_extension_examples() {
        let c = cfg();
        let (a, b, q, z) = (re(0.5), re(0.05), 0.25, re(0.6));
        let g = make_first_extension_terms(a, b, q, 2, z, &c).unwrap();
        assert!(close(g.term(0).unwrap(), ratio(&[b], &[a], re(q), &c).unwrap(), 1e-14));
        let h = q.sqrt();
        assert!(close(g.term(1).unwrap(), ratio(&[b * h], &[a * h], re(q), &c).unwrap() * 0.6, 1e-14));
        // N = 1 is (b;q)_∞/(a;q)_∞ times the ₁ψ₁ terms.
        let g1 = make_first_extension_terms(re(2.0), re(0.1), 0.3, 1, re(0.4), &c).unwrap();
        let p = make_psi11_terms(re(2.0), re(0.1), re(0.3), re(0.4), &c).unwrap();
        let k = ratio(&[re(0.1)], &[re(2.0)], re(0.3), &c).unwrap();
        for n in -5..=5 {
            assert!(close(g1.term(n).unwrap(), k * p.term(n).unwrap(), 1e-12), "n = {n}");
        }
    }

    #[test]
    fn second_extension_examples() {
        let c = cfg();
        let (a, b, x, q) = (re(3.0), re(0.2), re(0.5), 0.4);
        let g = make_second_extension_terms(a, b, x, q, 2, re(1.0), &c).unwrap();
        let t0 = ratio(&[b, re(q) / a], &[-a * x, -re(q) / (a * x)], re(q), &c).unwrap();
        assert!(close(g.term(0).unwrap(), t0, 1e-14));
        // b = −ax cancels the first factor pair.
        let y = 1.1;
        let g = make_second_extension_terms(a, -a * x, x, q, 3, re(y), &c).unwrap();
        for n in [-2, 1, 4] {
            let s = (n as Real / 3.0 * q.ln()).exp();
            let rest = ratio(&[re(q / s) / a], &[-re(q / s) / (a * x)], re(q), &c).unwrap() * y.powi(n as i32);
            assert!(close(g.term(n).unwrap(), rest, 1e-13));
        }
    }

    #[test]
    fn second_extension_alpha_one_is_psi11() {
        // With N = 1 the terms are t_0 · (a;q)_n/(b;q)_n (−xy)^n.
        let c = cfg();
        let (a, b, x, q, y) = (re(3.0), re(0.2), re(0.5), 0.4, re(0.8));
        let g = make_second_extension_terms(a, b, x, q, 1, y, &c).unwrap();
        let p = make_psi11_terms(a, b, re(q), -x * y, &c).unwrap();
        let t0 = g.term(0).unwrap();
        for n in -4..=4 {
            assert!(close(g.term(n).unwrap(), t0 * p.term(n).unwrap(), 1e-12), "n = {n}");
        }
    }

    #[test]
    fn psi66_recurrences_match_direct() {
        let c = cfg();
        let g = make_psi66_terms(re(0.3), re(0.8), re(0.9), re(1.1), re(1.3), re(0.5), &c).unwrap();
        assert_eq!(g.term(0).unwrap(), re(1.0));
        let fwd: Vec<_> = g.forward().take(8).map(|t| t.unwrap()).collect();
        let bwd: Vec<_> = g.backward().take(8).map(|t| t.unwrap()).collect();
        for k in 0..8 {
            assert!(close(fwd[k], g.term(k as i64).unwrap(), 1e-12));
            assert!(close(bwd[k], g.term(-(k as i64) - 1).unwrap(), 1e-12));
        }
    }

    #[test]
    fn f_series_zero_at_c_inverse_c() {
        let c = cfg();
        let g = make_f_terms(re(2.0), re(0.5), re(1.0), 0.2, 0.5, &c).unwrap();
        let s = sum_bilateral(&g, &c).unwrap();
        assert!(s.value.norm() < 1e-13 * s.scale.max(1.0), "{}", s.value);
        let n0 = g.term(0).unwrap();
        let oracle = ratio(&[re(0.5), re(0.25)], &[], re(0.2), &c).unwrap();
        assert!(close(n0, oracle, 1e-14));
    }

    #[test]
    fn f_series_first_term() {
        let c = cfg();
        let g = make_f_terms(re(3.0), re(0.1), re(1.0), 0.2, 0.5, &c).unwrap();
        let oracle = ratio(&[re(0.05), re(1.0 / 3.0)], &[], re(0.2), &c).unwrap() * -1.0;
        assert!(close(g.term(1).unwrap(), oracle, 1e-14));
    }

    #[test]
    fn msum_first_term_and_decay() {
        let p = 0.4f64;
        let om = (1.0 / p).ln();
        let g = make_msum_terms(1.3, re(0.6) * Cplx::from_polar(1.0, PI / 3.0), p).unwrap();
        let z = re(0.6) * Cplx::from_polar(1.0, PI / 3.0);
        let s = 1.3f64.ln() / om;
        let t0 = re(PI) * (-z).powc(re(s)) / (om * (PI * s).sin());
        assert!(close(g.term(0).unwrap(), t0, 1e-14));
        let g = make_msum_terms(1.3, re(-0.6), p).unwrap();
        assert!(g.term(3).unwrap().norm() / g.term(0).unwrap().norm() < 1e-10);
        assert!(make_msum_terms(1.3, re(0.6), p).is_err());
    }

    #[test]
    fn dougall_example() {
        let g = make_gamma_bilateral_terms(GammaKind::Dougall { a: 1.5, b: 1.5, c: 1.5, d: 1.5 }, 1.0).unwrap();
        let s = sum_bilateral(&g, &cfg()).unwrap();
        assert!(close(s.value, re(2.0), 1e-11), "{}", s.value);
    }

    #[test]
    fn binomial_example() {
        let g = make_gamma_bilateral_terms(GammaKind::Binomial { a: re(2.0), c: 0.0, x: PI / 2.0 }, 1.0).unwrap();
        let s = sum_bilateral(&g, &cfg()).unwrap();
        assert!(close(s.value, Cplx::new(0.0, 2.0), 1e-13), "{}", s.value);
    }

    #[test]
    fn sampling_example() {
        let g = make_gamma_bilateral_terms(GammaKind::Sampling { g: BandLimited::Sinc, y: 0.25 }, 0.5).unwrap();
        let s = sum_bilateral(&g, &cfg()).unwrap();
        let oracle = 2.0 * (PI / 4.0).sin() / (PI / 4.0);
        assert!(close(s.value, re(oracle), 1e-10), "{} vs {oracle}", s.value);
    }
}

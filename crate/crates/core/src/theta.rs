//! Jacobi theta functions `θ1…θ4` in nome form, `q = e^{iπτ}`.
//!
//! Before summing, `z` is reduced by the quasi-periods `π` and `πτ` so the
//! series always runs in the fundamental strip; the product forms reuse
//! the same reduction and go through [`crate::qcore`].

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::qcore::{product_ratio, QArg, SeriesEvaluation};
use crate::scalar::{is_finite, re, Cplx, Real, Scaled, EPS, I};

/// A nome `q` with `|q| < 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Nome {
    q: Cplx,
}

impl Nome {
    pub fn new(q: Cplx) -> Result<Self> {
        if !is_finite(q) || q.norm() >= 1.0 {
            return Err(Error::DomainViolation(format!("nome modulus {} is not below 1", q.norm())));
        }
        Ok(Nome { q })
    }

    /// `q = e^{iπτ}`, `Im τ > 0`.
    pub fn from_tau(tau: Cplx) -> Result<Self> {
        if !(tau.im > 0.0) {
            return Err(Error::DomainViolation("Im τ must be positive".into()));
        }
        Nome::new((I * std::f64::consts::PI * tau).exp())
    }

    pub fn q(&self) -> Cplx {
        self.q
    }

    /// Nome of `Nτ`, i.e. `q^N`.
    pub fn scaled(&self, n: u32) -> Nome {
        Nome { q: self.q.powu(n) }
    }

    /// `πτ = −i ln q` (principal logarithm).
    pub fn pi_tau(&self) -> Cplx {
        -I * self.q.ln()
    }
}

fn check_index(j: u8) -> Result<()> {
    if (1..=4).contains(&j) {
        Ok(())
    } else {
        Err(Error::DomainViolation(format!("theta index {j} is not in 1..4")))
    }
}

/// `z = z0 + mπτ + kπ` with `z0` in the fundamental strip, and the factor
/// `θ_j(z) / θ_j(z0)`.
fn reduce(j: u8, z: Cplx, nome: &Nome) -> (Cplx, Cplx) {
    let pt = nome.pi_tau();
    let m = (z.im / pt.im).round();
    let mut z0 = z - pt * m;
    let k = (z0.re / std::f64::consts::PI).round();
    z0 -= re(k * std::f64::consts::PI);
    let odd_m = (m as i64).rem_euclid(2) == 1;
    let odd_k = (k as i64).rem_euclid(2) == 1;
    let mut sign = 1.0;
    if odd_m && (j == 1 || j == 4) {
        sign = -sign;
    }
    if odd_k && (j == 1 || j == 2) {
        sign = -sign;
    }
    // q^{−m²} e^{−2imz0}
    let log = -(m * m) * nome.q.ln() - 2.0 * I * m * z0;
    let factor = if m == 0.0 { re(sign) } else { log.exp() * sign };
    (z0, factor)
}

/// `θ_j(z | q)` by its Fourier series.
pub fn theta(j: u8, z: Cplx, nome: &Nome, cfg: &EvalConfig) -> Result<SeriesEvaluation> {
    check_index(j)?;
    let q = nome.q;
    if q.norm() == 0.0 {
        let v = if j >= 3 { re(1.0) } else { re(0.0) };
        return Ok(SeriesEvaluation::exact(v));
    }
    let (z0, factor) = reduce(j, z, nome);
    let lq = q.ln();
    let half = j <= 2;
    let mut sum = if half { re(0.0) } else { re(1.0) };
    let mut abs_sum = sum.norm();
    let y = z0.im.abs();
    let mut n: usize = 0;
    let mut last_bound = Real::INFINITY;
    loop {
        if n >= cfg.max_terms {
            return Err(Error::BudgetExceeded(n));
        }
        // Index k of the exponent: (n + 1/2)² for θ1, θ2 and n² (n ≥ 1) for θ3, θ4.
        let (e, freq) = if half {
            (n as Real + 0.5, 2.0 * n as Real + 1.0)
        } else {
            ((n + 1) as Real, 2.0 * (n + 1) as Real)
        };
        let bound = 2.0 * (e * e * lq.re + freq * y).exp();
        if bound < EPS * 1e-3 * sum.norm().max(1e-300) && bound < last_bound || bound == 0.0 {
            let ratio = (bound / last_bound).min(0.5);
            let err = bound / (1.0 - ratio) + 4.0 * EPS * abs_sum;
            let value = sum * factor;
            return Ok(SeriesEvaluation {
                value,
                err_estimate: err * factor.norm(),
                terms_used: n,
                converged: true,
                diagnostics: vec![],
            });
        }
        last_bound = bound;
        let w = (lq * (e * e)).exp();
        let sign = match j {
            1 | 4 if (if half { n } else { n + 1 }) % 2 == 1 => -1.0,
            _ => 1.0,
        };
        let t = match j {
            1 => (z0 * freq).sin(),
            _ => (z0 * freq).cos(),
        } * w
            * (2.0 * sign);
        sum += t;
        abs_sum += t.norm();
        n += 1;
    }
}

/// `θ1′(0 | q) = 2 Σ (−1)^n (2n+1) q^{(n+1/2)²}`.
pub fn theta1_prime_zero(nome: &Nome, cfg: &EvalConfig) -> Result<SeriesEvaluation> {
    let q = nome.q;
    if q.norm() == 0.0 {
        return Ok(SeriesEvaluation::exact(re(0.0)));
    }
    let lq = q.ln();
    let mut sum = re(0.0);
    let mut n = 0usize;
    loop {
        if n >= cfg.max_terms {
            return Err(Error::BudgetExceeded(n));
        }
        let e = n as Real + 0.5;
        let f = 2.0 * n as Real + 1.0;
        let bound = 2.0 * f * (e * e * lq.re).exp();
        if n > 0 && bound < EPS * 1e-3 * sum.norm() {
            return Ok(SeriesEvaluation {
                value: sum,
                err_estimate: 2.0 * bound + 4.0 * EPS * sum.norm(),
                terms_used: n,
                converged: true,
                diagnostics: vec![],
            });
        }
        let sign = if n % 2 == 1 { -1.0 } else { 1.0 };
        sum += (lq * (e * e)).exp() * (2.0 * sign * f);
        n += 1;
    }
}

/// `θ_j(z | q)` from the Jacobi triple product.
pub fn theta_product(j: u8, z: Cplx, nome: &Nome, cfg: &EvalConfig) -> Result<Cplx> {
    check_index(j)?;
    let q = nome.q;
    if q.norm() == 0.0 {
        return Ok(if j >= 3 { re(1.0) } else { re(0.0) });
    }
    let (z0, factor) = reduce(j, z, nome);
    let big_q = q * q;
    let e2 = 2.0 * I * z0;
    let quarter = (0.25 * q.ln()).exp();
    let args: [Cplx; 2] = match j {
        1 => [big_q, big_q],
        2 => [-big_q, -big_q],
        3 => [-q, -q],
        _ => [q, q],
    };
    let num = [
        QArg::new(big_q),
        QArg::new(args[0]).shifted(e2),
        QArg::new(args[1]).shifted(-e2),
    ];
    let p = product_ratio(&num, &[], big_q, cfg, false)?;
    let lead = match j {
        1 => quarter * 2.0 * z0.sin(),
        2 => quarter * 2.0 * z0.cos(),
        _ => re(1.0),
    };
    let v = (p.value * lead * factor).to_complex();
    if !is_finite(v) {
        return Err(Error::NonFinite("theta product".into()));
    }
    Ok(v)
}

/// `θ1′(0 | q) = 2q^{1/4} (q²; q²)³_∞`.
pub fn theta1_prime_zero_product(nome: &Nome, cfg: &EvalConfig) -> Result<Cplx> {
    let q = nome.q;
    if q.norm() == 0.0 {
        return Ok(re(0.0));
    }
    let big_q = q * q;
    let a = QArg::new(big_q);
    let p = product_ratio(&[a, a, a], &[], big_q, cfg, false)?;
    let quarter = Scaled::from_log(0.25 * q.ln());
    Ok((p.value * quarter * re(2.0)).to_complex())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> EvalConfig {
        EvalConfig::default()
    }

    fn th(j: u8, z: Cplx, q: Real) -> Cplx {
        theta(j, z, &Nome::new(re(q)).unwrap(), &cfg()).unwrap().value
    }

    #[test]
    fn trivial_values() {
        assert_eq!(th(1, re(0.0), 0.4), re(0.0));
        assert_eq!(th(3, re(0.0), 0.0), re(1.0));
        assert_eq!(theta1_prime_zero(&Nome::new(re(0.0)).unwrap(), &cfg()).unwrap().value, re(0.0));
    }

    #[test]
    fn jacobi_quartic() {
        let q = 0.3;
        let d = th(3, re(0.0), q).powu(4) - th(2, re(0.0), q).powu(4) - th(4, re(0.0), q).powu(4);
        assert!(d.norm() < 1e-14);
    }

    #[test]
    fn derivative_at_zero() {
        let n = Nome::new(re(0.25)).unwrap();
        let d = theta1_prime_zero(&n, &cfg()).unwrap().value;
        let prod = th(2, re(0.0), 0.25) * th(3, re(0.0), 0.25) * th(4, re(0.0), 0.25);
        assert!((d - prod).norm() < 1e-14);
        let n = Nome::new(re(0.2)).unwrap();
        let d = theta1_prime_zero(&n, &cfg()).unwrap().value;
        let mut p = 1.0;
        for k in 1..60 {
            p *= 1.0 - 0.04f64.powi(k);
        }
        assert!((d.re - 2.0 * 0.2f64.powf(0.25) * p.powi(3)).abs() < 1e-14);
        assert!((theta1_prime_zero_product(&n, &cfg()).unwrap() - d).norm() < 1e-14);
    }

    #[test]
    fn reduction_matches_direct_series() {
        // Moderate arguments where the unreduced series also converges quickly.
        let q = Cplx::new(0.2, 0.1);
        let n = Nome::new(q).unwrap();
        let z = Cplx::new(2.9, 0.8);
        for j in 1..=4u8 {
            let direct: Cplx = (0..60)
                .map(|k: i32| {
                    let (e, f) = if j <= 2 { (k as Real + 0.5, (2 * k + 1) as Real) } else { (k as Real, (2 * k) as Real) };
                    let w = (q.ln() * (e * e)).exp();
                    let s = if (j == 1 || j == 4) && k % 2 == 1 { -1.0 } else { 1.0 };
                    let c = if j <= 2 { 2.0 } else if k == 0 { 1.0 } else { 2.0 };
                    let trig = if j == 1 { (z * f).sin() } else { (z * f).cos() };
                    trig * w * s * c
                })
                .sum();
            let v = theta(j, z, &n, &cfg()).unwrap().value;
            assert!((v - direct).norm() < 1e-13 * direct.norm().max(1.0), "θ{j}: {v} vs {direct}");
            let p = theta_product(j, z, &n, &cfg()).unwrap();
            assert!((p - direct).norm() < 1e-13 * direct.norm().max(1.0), "θ{j} product: {p} vs {direct}");
        }
    }
}

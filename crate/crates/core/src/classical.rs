//! Complex gamma function and the band-limited test functions used by the
//! sampling identity.

use std::f64::consts::PI;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::quadrature::{tanh_sinh, QuadratureResult};
use crate::scalar::{cos_pi, re, sin_pi_c, sinc_pi, Cplx, Real};

const LANCZOS_G: Real = 7.0;
const LANCZOS: [Real; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

fn nonpositive_integer(z: Cplx) -> Option<i64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.round() {
        Some(z.re as i64)
    } else {
        None
    }
}

/// `ln Γ(z)` for `Re z ≥ 1/2` (Lanczos, g = 7, nine terms).
fn ln_gamma_right(z: Cplx) -> Cplx {
    let z = z - 1.0;
    let mut x = re(LANCZOS[0]);
    for (i, &c) in LANCZOS.iter().enumerate().skip(1) {
        x += c / (z + i as Real);
    }
    let t = z + LANCZOS_G + 0.5;
    0.5 * (2.0 * PI).ln() + (z + 0.5) * t.ln() - t + x.ln()
}

/// A logarithm of `Γ(z)`; the branch is unspecified, only `exp` of it is meaningful.
pub fn ln_gamma(z: Cplx) -> Result<Cplx> {
    if let Some(k) = nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(k));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z))
    } else {
        Ok(PI.ln() - sin_pi_c(z).ln() - ln_gamma_right(1.0 - z))
    }
}

pub fn gamma(z: Cplx) -> Result<Cplx> {
    if let Some(k) = nonpositive_integer(z) {
        return Err(Error::PoleAtNonpositiveInteger(k));
    }
    if z.re >= 0.5 {
        Ok(ln_gamma_right(z).exp())
    } else {
        Ok(PI / (sin_pi_c(z) * ln_gamma_right(1.0 - z).exp()))
    }
}

/// `1/Γ(z) = factor · exp(log)`, split so that huge and tiny parts never
/// meet in floating point before the caller combines several of them.
pub fn reciprocal_gamma_parts(z: Cplx) -> (Cplx, Cplx) {
    if nonpositive_integer(z).is_some() {
        return (re(0.0), re(0.0));
    }
    if z.re >= 0.5 {
        (re(1.0), -ln_gamma_right(z))
    } else {
        (sin_pi_c(z) / PI, ln_gamma_right(1.0 - z))
    }
}

/// `1/Γ(z)`, entire; exactly zero at the poles of `Γ`.
pub fn reciprocal_gamma(z: Cplx) -> Cplx {
    let (f, l) = reciprocal_gamma_parts(z);
    if f == re(0.0) {
        return f;
    }
    f * l.exp()
}

/// Band-limited functions `g(y) = ∫_{−π}^{π} f(x) e^{ixy} dx/2π` with known `f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BandLimited {
    /// `f ≡ 1`, `g(y) = sin(πy)/(πy)`.
    Sinc,
    /// `f(x) = cos^b(x/2)`.
    CosPower(Real),
}

impl BandLimited {
    pub fn name(&self) -> &'static str {
        match self {
            BandLimited::Sinc => "sinc",
            BandLimited::CosPower(_) => "cos_power",
        }
    }

    pub fn g(&self, y: Real) -> Cplx {
        match *self {
            BandLimited::Sinc => re(sinc_pi(y)),
            BandLimited::CosPower(b) => {
                let (f1, l1) = reciprocal_gamma_parts(re(b / 2.0 + y + 1.0));
                let (f2, l2) = reciprocal_gamma_parts(re(b / 2.0 - y + 1.0));
                if f1 == re(0.0) || f2 == re(0.0) {
                    return re(0.0);
                }
                let lg = ln_gamma_right(re(b + 1.0));
                f1 * f2 * (lg + l1 + l2 - b * 2f64.ln()).exp()
            }
        }
    }

    /// `f(x)` on `(−π, π)`.
    pub fn profile(&self, x: Real) -> Real {
        match *self {
            BandLimited::Sinc => 1.0,
            BandLimited::CosPower(b) => (0.5 * x).cos().powf(b),
        }
    }

    /// `|g(y)| = O(|y|^{-e})`.
    pub fn decay_exponent(&self) -> Real {
        match *self {
            BandLimited::Sinc => 1.0,
            BandLimited::CosPower(b) => b + 1.0,
        }
    }
}

/// `∫_0^{π/2} cos^b x · cos(ax) dx` by quadrature, and its closed form.
///
/// The integral is taken after `w = π/2 − x`, so the endpoint behaviour of
/// `cos^b` for `b < 0` sits at `w = 0` where `sin w` is accurate.
pub fn beta_integral_check(a: Real, b: Real, cfg: &EvalConfig) -> Result<(QuadratureResult, Cplx)> {
    if !(b > -1.0) {
        return Err(Error::DomainViolation(format!("b = {b} must exceed −1")));
    }
    let quad = tanh_sinh(
        |w| {
            // cos(a(π/2 − w)) with an exact half-period reduction.
            let phase = a * (0.5 - w / PI);
            Ok(re(w.sin().powf(b) * cos_pi(phase)))
        },
        0.0,
        PI / 2.0,
        cfg,
    )?;
    Ok((quad, beta_closed_form(a, b)?))
}

/// `πΓ(b+1) / [2^{b+1} Γ((a+b)/2+1) Γ((b−a)/2+1)]`.
pub fn beta_closed_form(a: Real, b: Real) -> Result<Cplx> {
    Ok(re(PI * 2f64.powf(-(b + 1.0)))
        * gamma(re(b + 1.0))?
        * reciprocal_gamma(re((a + b) / 2.0 + 1.0))
        * reciprocal_gamma(re((b - a) / 2.0 + 1.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Cplx, b: Cplx, tol: Real) -> bool {
        (a - b).norm() <= tol * b.norm().max(1.0)
    }

    #[test]
    fn gamma_values() {
        assert!(close(gamma(re(1.0)).unwrap(), re(1.0), 1e-15));
        assert!(close(gamma(re(5.0)).unwrap(), re(24.0), 1e-14));
        assert!(close(gamma(re(0.5)).unwrap(), re(PI.sqrt()), 1e-15));
        assert!(close(gamma(re(-0.5)).unwrap(), re(-2.0 * PI.sqrt()), 1e-14));
        assert!(matches!(gamma(re(-3.0)), Err(Error::PoleAtNonpositiveInteger(-3))));
        // Γ(1+i) from the reflection identity |Γ(1+i)|² = π/sinh π.
        let g = gamma(Cplx::new(1.0, 1.0)).unwrap();
        assert!((g.norm_sqr() - PI / PI.sinh()).abs() < 1e-14);
    }

    #[test]
    fn reciprocal_values() {
        assert_eq!(reciprocal_gamma(re(0.0)), re(0.0));
        assert_eq!(reciprocal_gamma(re(-3.0)), re(0.0));
        assert!(close(reciprocal_gamma(re(2.0)), re(1.0), 1e-15));
        assert!(close(reciprocal_gamma(re(-2.5)), gamma(re(-2.5)).unwrap().inv(), 1e-13));
    }

    #[test]
    fn sinc_and_cos_power_g() {
        assert!(close(BandLimited::Sinc.g(0.25), re((PI / 4.0).sin() / (PI / 4.0)), 1e-15));
        // b = 0 gives f ≡ 1, so g must be the sinc.
        for y in [0.0, 0.3, 1.7, -2.2] {
            assert!(close(BandLimited::CosPower(0.0).g(y), BandLimited::Sinc.g(y), 1e-13));
        }
        // b = 2: cos²(x/2) = (1 + cos x)/2 gives g(1) = 1/4.
        assert!(close(BandLimited::CosPower(2.0).g(1.0), re(0.25), 1e-14));
    }

    #[test]
    fn beta_integral_examples() {
        let cfg = EvalConfig::default();
        let (q, c) = beta_integral_check(0.0, 0.0, &cfg).unwrap();
        assert!(close(q.value, re(PI / 2.0), 1e-13) && close(c, re(PI / 2.0), 1e-14));
        let (q, c) = beta_integral_check(1.0, 1.0, &cfg).unwrap();
        assert!(close(q.value, re(PI / 4.0), 1e-13) && close(c, re(PI / 4.0), 1e-14));
        // cos³x·cos 2x = (4 cos x + 3 cos 3x + cos 5x)/8 integrates to 2/5.
        let (q, c) = beta_integral_check(2.0, 3.0, &cfg).unwrap();
        assert!(close(q.value, re(0.4), 1e-12) && close(c, re(0.4), 1e-13));
        let (q, c) = beta_integral_check(0.7, -0.6, &cfg).unwrap();
        assert!(close(q.value, c, 1e-10), "{} {}", q.value, c);
    }
}

//! Scalar conventions shared by every evaluator.
//!
//! All arithmetic goes through [`Cplx`]; swapping the precision tier means
//! changing the aliases here and the few constants that depend on `f64`.
//! Complex powers always use the principal logarithm, `Arg ∈ (−π, π]`.

use std::f64::consts::{LN_2, PI};
use std::ops::{Div, Mul};

use num_complex::Complex64;

pub type Real = f64;
pub type Cplx = Complex64;

pub const I: Cplx = Cplx::new(0.0, 1.0);
pub const EPS: Real = f64::EPSILON;

#[inline]
pub fn re(x: Real) -> Cplx {
    Cplx::new(x, 0.0)
}

pub fn is_finite(z: Cplx) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// Reduces `x` to `[-1, 1]` modulo 2 without touching the fractional bits.
fn reduce_mod2(x: Real) -> Real {
    x - 2.0 * (x * 0.5).round()
}

/// `sin(πx)`, exact zero at the integers.
pub fn sin_pi(x: Real) -> Real {
    if !x.is_finite() {
        return Real::NAN;
    }
    let r = reduce_mod2(x);
    let (s, a) = if r < 0.0 { (-1.0, -r) } else { (1.0, r) };
    // sin(πa) = sin(π(1 − a)) keeps the argument in [0, π/2].
    let a = if a > 0.5 { 1.0 - a } else { a };
    s * (PI * a).sin()
}

/// `cos(πx)`, exact zero at the half-integers.
pub fn cos_pi(x: Real) -> Real {
    if !x.is_finite() {
        return Real::NAN;
    }
    sin_pi(reduce_mod2(x) + 0.5)
}

/// `sin(πz)` for complex `z`, using the exact real reduction.
pub fn sin_pi_c(z: Cplx) -> Cplx {
    let y = PI * z.im;
    Cplx::new(sin_pi(z.re) * y.cosh(), cos_pi(z.re) * y.sinh())
}

/// `sin(πx)/(πx)`.
pub fn sinc_pi(x: Real) -> Real {
    if x == 0.0 {
        1.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

/// Principal power `w^s = exp(s·Log w)`; `0^s = 0` for `Re s > 0`.
pub fn principal_pow(w: Cplx, s: Cplx) -> Cplx {
    if w == Cplx::new(0.0, 0.0) {
        return if s.re > 0.0 {
            Cplx::new(0.0, 0.0)
        } else if s == Cplx::new(0.0, 0.0) {
            Cplx::new(1.0, 0.0)
        } else {
            Cplx::new(Real::INFINITY, 0.0)
        };
    }
    (s * w.ln()).exp()
}

/// A complex number stored as `mantissa · 2^exp2`.
///
/// Products of q-Pochhammer factors with large arguments routinely pass
/// through magnitudes far outside the `f64` range even when the final
/// value is modest; this type keeps the exponent separately.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scaled {
    mant: Cplx,
    exp2: i64,
}

const RENORM_HI: Real = 1e150;
const RENORM_LO: Real = 1e-150;

impl Scaled {
    pub const ONE: Scaled = Scaled { mant: Cplx::new(1.0, 0.0), exp2: 0 };
    pub const ZERO: Scaled = Scaled { mant: Cplx::new(0.0, 0.0), exp2: 0 };

    pub fn new(z: Cplx) -> Self {
        Scaled { mant: z, exp2: 0 }.normalized()
    }

    /// `exp(l)` without overflow.
    pub fn from_log(l: Cplx) -> Self {
        let k = (l.re / LN_2).floor();
        let mant = Cplx::from_polar((l.re - k * LN_2).exp(), l.im);
        Scaled { mant, exp2: k as i64 }
    }

    fn normalized(mut self) -> Self {
        let m = self.mant.re.abs().max(self.mant.im.abs());
        if m == 0.0 {
            return Scaled::ZERO;
        }
        if !m.is_finite() {
            return self;
        }
        if !(RENORM_LO..=RENORM_HI).contains(&m) {
            let e = m.log2().floor() as i64;
            self.mant *= pow2(-e);
            self.exp2 += e;
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.mant == Cplx::new(0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        is_finite(self.mant)
    }

    /// `log2 |value|`, `-inf` for zero.
    pub fn log2_abs(&self) -> Real {
        self.mant.norm().log2() + self.exp2 as Real
    }

    pub fn abs(&self) -> Real {
        self.mant.norm() * pow2(self.exp2)
    }

    pub fn inv(self) -> Self {
        Scaled { mant: self.mant.inv(), exp2: -self.exp2 }.normalized()
    }

    /// Converts to a plain complex number; may overflow to infinity or
    /// underflow to zero.
    pub fn to_complex(self) -> Cplx {
        if self.is_zero() {
            return Cplx::new(0.0, 0.0);
        }
        let half = self.exp2 / 2;
        self.mant * pow2(half) * pow2(self.exp2 - half)
    }
}

fn pow2(e: i64) -> Real {
    let e = e.clamp(-2000, 2000) as i32;
    2f64.powi(e)
}

impl Mul for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant * rhs.mant, exp2: self.exp2 + rhs.exp2 }.normalized()
    }
}

impl Mul<Cplx> for Scaled {
    type Output = Scaled;
    fn mul(self, rhs: Cplx) -> Scaled {
        Scaled { mant: self.mant * rhs, exp2: self.exp2 }.normalized()
    }
}

impl Div for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Scaled) -> Scaled {
        Scaled { mant: self.mant / rhs.mant, exp2: self.exp2 - rhs.exp2 }.normalized()
    }
}

impl Div<Cplx> for Scaled {
    type Output = Scaled;
    fn div(self, rhs: Cplx) -> Scaled {
        Scaled { mant: self.mant / rhs, exp2: self.exp2 }.normalized()
    }
}

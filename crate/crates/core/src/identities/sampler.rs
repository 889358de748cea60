//! Seeded parameter draws.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::scalar::{Cplx, Real};

/// Phases stay this far from the negative real axis.
const CUT_GAP: Real = 0.2;

pub struct Draw {
    rng: ChaCha8Rng,
}

/// SplitMix64 finalizer, used to decorrelate nearby seeds.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// FNV-1a of the identity name, so different rows see different streams.
fn name_hash(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3))
}

impl Draw {
    pub fn new(name: &str, seed: u64, index: u64) -> Self {
        let s = mix(mix(seed ^ name_hash(name)).wrapping_add(index));
        Draw { rng: ChaCha8Rng::seed_from_u64(s) }
    }

    pub fn uniform(&mut self, lo: Real, hi: Real) -> Real {
        if lo >= hi {
            return lo;
        }
        self.rng.random_range(lo..hi)
    }

    pub fn log_uniform(&mut self, lo: Real, hi: Real) -> Real {
        self.uniform(lo.ln(), hi.ln()).exp()
    }

    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    pub fn choose<T: Copy>(&mut self, items: &[T]) -> T {
        items[self.rng.random_range(0..items.len())]
    }

    pub fn coin(&mut self) -> bool {
        self.rng.random_bool(0.5)
    }

    /// Phase uniform on `(−π + 0.2, π − 0.2)`.
    pub fn phase(&mut self) -> Real {
        self.uniform(-PI + CUT_GAP, PI - CUT_GAP)
    }

    /// Complex number with log-uniform modulus in `[lo, hi]` and a phase
    /// away from the negative real axis.
    pub fn complex(&mut self, lo: Real, hi: Real) -> Cplx {
        let r = self.log_uniform(lo, hi);
        Cplx::from_polar(r, self.phase())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: Vec<Real> = (0..4).map(|_| 0.0).scan(Draw::new("x", 7, 0), |d, _| Some(d.uniform(0.0, 1.0))).collect();
        let b: Vec<Real> = (0..4).map(|_| 0.0).scan(Draw::new("x", 7, 0), |d, _| Some(d.uniform(0.0, 1.0))).collect();
        let c: Vec<Real> = (0..4).map(|_| 0.0).scan(Draw::new("y", 7, 0), |d, _| Some(d.uniform(0.0, 1.0))).collect();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }
}

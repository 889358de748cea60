//! Summation of unilateral and bilateral series.
//!
//! The default rule watches the envelope of recent terms on each side and
//! stops once the geometric tail estimate and the newest terms have both
//! been negligible for four consecutive steps. Series whose terms decay
//! only like a power of `n` declare so through [`Decay`] and are handled
//! by Richardson extrapolation (non-oscillating part present) or by a
//! smooth cutoff (purely oscillating terms).

pub mod generators;

use std::collections::VecDeque;

use serde::Serialize;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::qcore::SeriesEvaluation;
use crate::scalar::{is_finite, Cplx, Real, EPS};

/// How the terms fall off for large `|n|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Decay {
    /// At least geometric.
    Geometric,
    /// `|t_n| ~ |n|^{-exponent}` times a factor periodic in `n` with the given period.
    Algebraic { exponent: Real, period: usize },
    /// Power-law envelope multiplied by oscillations with no constant component.
    Oscillatory,
}

pub trait TermGenerator: Sync {
    fn term(&self, n: i64) -> Result<Cplx>;

    fn decay(&self) -> Decay {
        Decay::Geometric
    }

    /// Terms `n = 0, 1, 2, …`; generators with a cheap recurrence override this.
    fn forward(&self) -> Box<dyn Iterator<Item = Result<Cplx>> + '_> {
        Box::new((0..).map(move |n| self.term(n)))
    }

    /// Terms `n = −1, −2, …`.
    fn backward(&self) -> Box<dyn Iterator<Item = Result<Cplx>> + '_> {
        Box::new((1..).map(move |n| self.term(-n)))
    }
}

/// A generator built from a closure.
pub struct FnTerms<F> {
    f: F,
    decay: Decay,
}

impl<F: Fn(i64) -> Result<Cplx> + Sync> FnTerms<F> {
    pub fn new(f: F) -> Self {
        FnTerms { f, decay: Decay::Geometric }
    }

    pub fn with_decay(f: F, decay: Decay) -> Self {
        FnTerms { f, decay }
    }
}

impl<F: Fn(i64) -> Result<Cplx> + Sync> TermGenerator for FnTerms<F> {
    fn term(&self, n: i64) -> Result<Cplx> {
        (self.f)(n)
    }
    fn decay(&self) -> Decay {
        self.decay
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SumOutcome {
    pub value: Cplx,
    pub err_estimate: Real,
    pub terms_used: usize,
    pub converged: bool,
    pub diagnostics: Vec<String>,
    /// Last observed envelope ratio for `n → +∞` and `n → −∞`.
    pub tail_ratios: (Real, Real),
    /// Largest partial sum modulus seen; the natural scale for absolute checks.
    pub scale: Real,
}

impl SumOutcome {
    pub fn evaluation(&self) -> SeriesEvaluation {
        SeriesEvaluation {
            value: self.value,
            err_estimate: self.err_estimate,
            terms_used: self.terms_used,
            converged: self.converged,
            diagnostics: self.diagnostics.clone(),
        }
    }
}

const WINDOW: usize = 8;
const QUIET_STEPS: usize = 4;

/// Magnitudes of the most recent `2·WINDOW` terms of one side.
struct Envelope {
    recent: VecDeque<Real>,
}

impl Envelope {
    fn new() -> Self {
        Envelope { recent: VecDeque::with_capacity(2 * WINDOW) }
    }

    fn push(&mut self, m: Real) {
        if self.recent.len() == 2 * WINDOW {
            self.recent.pop_front();
        }
        self.recent.push_back(m);
    }

    /// `(tail estimate, per-step ratio)`; infinite while undetermined.
    fn tail(&self) -> (Real, Real) {
        if self.recent.len() < 2 * WINDOW {
            if self.recent.iter().all(|&m| m == 0.0) && self.recent.len() >= WINDOW {
                return (0.0, 0.0);
            }
            return (Real::INFINITY, Real::INFINITY);
        }
        let prev = self.recent.iter().take(WINDOW).fold(0.0, |a: Real, &b| a.max(b));
        let now = self.recent.iter().skip(WINDOW).fold(0.0, |a: Real, &b| a.max(b));
        if now == 0.0 {
            return (0.0, 0.0);
        }
        if prev == 0.0 {
            return (Real::INFINITY, Real::INFINITY);
        }
        let r = (now / prev).powf(1.0 / WINDOW as Real);
        if r >= 1.0 {
            (Real::INFINITY, r)
        } else {
            (now * r / (1.0 - r), r)
        }
    }
}

fn next_term(it: &mut dyn Iterator<Item = Result<Cplx>>, n: i64) -> Result<Cplx> {
    let t = it.next().expect("term iterators are infinite")?;
    if !is_finite(t) {
        return Err(Error::NonFinite(format!("term {n}")));
    }
    Ok(t)
}

/// Stopping threshold: relative to `|S|`, but never below a small
/// fraction of the largest partial sum, and never above `|S| + 1`.
fn threshold(sum: Cplx, scale: Real, rel_tol: Real) -> Real {
    let s = sum.norm();
    rel_tol * (s + 1.0).min(s.max(1e-3 * scale))
}

/// `Σ_{n∈ℤ} t_n`, accumulated in the order `0, ±1, ±2, …`.
pub fn sum_bilateral(gen: &dyn TermGenerator, cfg: &EvalConfig) -> Result<SumOutcome> {
    match gen.decay() {
        Decay::Geometric => sum_geometric(gen, cfg, true),
        Decay::Algebraic { exponent, period } => sum_richardson(gen, cfg, true, exponent, period),
        Decay::Oscillatory => sum_smoothed(gen, cfg, true),
    }
}

/// `Σ_{n≥0} t_n`.
pub fn sum_unilateral(gen: &dyn TermGenerator, cfg: &EvalConfig) -> Result<SumOutcome> {
    match gen.decay() {
        Decay::Geometric => sum_geometric(gen, cfg, false),
        Decay::Algebraic { exponent, period } => sum_richardson(gen, cfg, false, exponent, period),
        Decay::Oscillatory => sum_smoothed(gen, cfg, false),
    }
}

fn sum_geometric(gen: &dyn TermGenerator, cfg: &EvalConfig, bilateral: bool) -> Result<SumOutcome> {
    let mut fwd = gen.forward();
    let mut bwd = if bilateral { Some(gen.backward()) } else { None };
    let t0 = next_term(&mut *fwd, 0)?;
    let mut sum = t0;
    let mut abs_sum = t0.norm();
    let mut scale = t0.norm();
    let mut plus = Envelope::new();
    let mut minus = Envelope::new();
    let mut quiet = 0;
    let mut used = 1usize;
    let per_step = if bilateral { 2 } else { 1 };
    let mut k: i64 = 0;
    let (mut tails, mut ratios) = ((Real::INFINITY, 0.0), (Real::INFINITY, 0.0));
    loop {
        if used + per_step > cfg.max_terms {
            let r = ratios.0.max(ratios.1);
            if r < 1.0 {
                let err = tails.0 + tails.1 + 2.0 * EPS * abs_sum;
                return Ok(SumOutcome {
                    value: sum,
                    err_estimate: err,
                    terms_used: used,
                    converged: false,
                    diagnostics: vec![format!("term budget exhausted with tail ratio {r:.4}")],
                    tail_ratios: ratios,
                    scale,
                });
            }
            return Err(Error::NoDecay { terms: used, detail: format!("tail ratio {r:.4}") });
        }
        k += 1;
        let tp = next_term(&mut *fwd, k)?;
        plus.push(tp.norm());
        sum += tp;
        abs_sum += tp.norm();
        let mut newest = tp.norm();
        if let Some(b) = bwd.as_mut() {
            let tm = next_term(&mut **b, -k)?;
            minus.push(tm.norm());
            sum += tm;
            abs_sum += tm.norm();
            newest = newest.max(tm.norm());
        }
        used += per_step;
        scale = scale.max(sum.norm());
        let (tp_tail, rp) = plus.tail();
        let (tm_tail, rm) = if bilateral { minus.tail() } else { (0.0, 0.0) };
        tails = (tp_tail, tm_tail);
        ratios = (rp, rm);
        let thr = threshold(sum, scale, cfg.rel_tol);
        if tp_tail + tm_tail <= 0.5 * thr && newest <= thr {
            quiet += 1;
        } else {
            quiet = 0;
        }
        if quiet >= QUIET_STEPS {
            let err = tp_tail + tm_tail + 2.0 * EPS * abs_sum;
            return Ok(SumOutcome {
                value: sum,
                err_estimate: err,
                terms_used: used,
                converged: true,
                diagnostics: vec![],
                tail_ratios: ratios,
                scale,
            });
        }
    }
}

/// Running symmetric partial sums, extended on demand.
struct Partial<'a> {
    fwd: Box<dyn Iterator<Item = Result<Cplx>> + 'a>,
    bwd: Option<Box<dyn Iterator<Item = Result<Cplx>> + 'a>>,
    k: usize,
    sum: Cplx,
    abs_sum: Real,
    scale: Real,
    used: usize,
}

impl<'a> Partial<'a> {
    fn new(gen: &'a dyn TermGenerator, bilateral: bool) -> Result<Self> {
        let mut fwd = gen.forward();
        let t0 = next_term(&mut *fwd, 0)?;
        Ok(Partial {
            fwd,
            bwd: if bilateral { Some(gen.backward()) } else { None },
            k: 0,
            sum: t0,
            abs_sum: t0.norm(),
            scale: t0.norm(),
            used: 1,
        })
    }

    fn per_step(&self) -> usize {
        if self.bwd.is_some() { 2 } else { 1 }
    }

    /// Advance to `Σ_{|n|≤k}`, each term weighted by `w(n)`.
    fn advance_to(&mut self, k: usize, w: &dyn Fn(usize) -> Real) -> Result<()> {
        while self.k < k {
            self.k += 1;
            let n = self.k as i64;
            let wt = w(self.k);
            let tp = next_term(&mut *self.fwd, n)?;
            self.sum += tp * wt;
            self.abs_sum += tp.norm();
            if let Some(b) = self.bwd.as_mut() {
                let tm = next_term(&mut **b, -n)?;
                self.sum += tm * wt;
                self.abs_sum += tm.norm();
            }
            self.used += self.per_step();
            self.scale = self.scale.max(self.sum.norm());
        }
        Ok(())
    }
}

const RICHARDSON_DEPTH: usize = 12;

fn sum_richardson(
    gen: &dyn TermGenerator,
    cfg: &EvalConfig,
    bilateral: bool,
    exponent: Real,
    period: usize,
) -> Result<SumOutcome> {
    let sigma = exponent - 1.0;
    if sigma <= 0.0 {
        return Err(Error::DomainViolation(format!("terms decay like |n|^-{exponent:.3}, which is not summable")));
    }
    let period = period.max(1);
    let base = period * (32usize.div_ceil(period));
    let mut p = Partial::new(gen, bilateral)?;
    let per_step = p.per_step();
    let mut table: Vec<Vec<Cplx>> = Vec::new();
    let mut best: Option<(Cplx, Real)> = None;
    let mut prev_diag: Option<Cplx> = None;
    for j in 0..RICHARDSON_DEPTH {
        let k = base << j;
        if 1 + per_step * k > cfg.max_terms {
            break;
        }
        p.advance_to(k, &|_| 1.0)?;
        let mut row = vec![p.sum];
        for i in 1..=j {
            let f = (2.0 as Real).powf(sigma + (i - 1) as Real) - 1.0;
            let prev = table[j - 1][i - 1];
            let cur = row[i - 1];
            row.push(cur + (cur - prev) / f);
        }
        let diag = row[j];
        table.push(row);
        if let Some(pd) = prev_diag {
            let est = (diag - pd).norm() + 2.0 * EPS * p.abs_sum * 4.0;
            if best.is_none_or(|(_, e)| est < e) {
                best = Some((diag, est));
            }
            if est <= threshold(diag, p.scale, cfg.rel_tol) {
                return Ok(SumOutcome {
                    value: diag,
                    err_estimate: est,
                    terms_used: p.used,
                    converged: true,
                    diagnostics: vec![format!("Richardson extrapolation from {} levels", j + 1)],
                    tail_ratios: (1.0, if bilateral { 1.0 } else { 0.0 }),
                    scale: p.scale,
                });
            }
        }
        prev_diag = Some(diag);
    }
    match best {
        Some((value, err)) => Ok(SumOutcome {
            value,
            err_estimate: err,
            terms_used: p.used,
            converged: false,
            diagnostics: vec!["Richardson extrapolation did not reach the tolerance".into()],
            tail_ratios: (1.0, if bilateral { 1.0 } else { 0.0 }),
            scale: p.scale,
        }),
        None => Err(Error::BudgetExceeded(p.used)),
    }
}

/// Smooth cutoff `1` on `[0, 1/2]`, `0` from `1` on, `C^∞` in between.
fn cutoff(s: Real) -> Real {
    if s <= 0.5 {
        return 1.0;
    }
    if s >= 1.0 {
        return 0.0;
    }
    let u = 2.0 * s - 1.0;
    let a = (-1.0 / (1.0 - u)).exp();
    let b = (-1.0 / u).exp();
    a / (a + b)
}

fn sum_smoothed(gen: &dyn TermGenerator, cfg: &EvalConfig, bilateral: bool) -> Result<SumOutcome> {
    let mut prev: Option<Cplx> = None;
    let mut best: Option<(Cplx, Real, usize, Real)> = None;
    let mut k = 64usize;
    let per_step = if bilateral { 2 } else { 1 };
    while per_step * k < cfg.max_terms {
        let mut p = Partial::new(gen, bilateral)?;
        let kk = k as Real;
        p.advance_to(k, &|n| cutoff(n as Real / kk))?;
        let v = p.sum;
        if let Some(pv) = prev {
            let est = (v - pv).norm() + 2.0 * EPS * p.abs_sum;
            if best.is_none_or(|(_, e, _, _)| est < e) {
                best = Some((v, est, p.used, p.scale));
            }
            if est <= threshold(v, p.scale, cfg.rel_tol) {
                return Ok(SumOutcome {
                    value: v,
                    err_estimate: est,
                    terms_used: p.used,
                    converged: true,
                    diagnostics: vec![format!("smooth cutoff at |n| = {k}")],
                    tail_ratios: (1.0, if bilateral { 1.0 } else { 0.0 }),
                    scale: p.scale,
                });
            }
        }
        prev = Some(v);
        k *= 2;
    }
    match best {
        Some((value, err, used, scale)) => Ok(SumOutcome {
            value,
            err_estimate: err,
            terms_used: used,
            converged: false,
            diagnostics: vec!["smoothed partial sums did not settle within the budget".into()],
            tail_ratios: (1.0, if bilateral { 1.0 } else { 0.0 }),
            scale,
        }),
        None => Err(Error::BudgetExceeded(cfg.max_terms)),
    }
}

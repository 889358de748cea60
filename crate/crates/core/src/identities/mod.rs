//! Identity catalog, verification and sweeps.
//!
//! Each [`IdentityDescriptor`] binds a parameter schema, domain predicates
//! and two evaluators that take different numerical routes (series against
//! products, quadrature against products, and so on).

mod catalog;
pub mod report;
pub mod sampler;
pub mod trend;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Serialize;

use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::parallel::par_map;
use crate::quadrature::QuadratureResult;
use crate::scalar::{Cplx, Real, EPS};
use crate::series::SumOutcome;

pub use report::{CheckResult, Summary, VerificationReport};
pub use sampler::Draw;
pub use trend::{limit_trend, TrendReport, TREND_FAMILIES};

/// A parameter assignment; ordered so reports are stable.
pub type Point = BTreeMap<String, Cplx>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ParamKind {
    Real,
    Complex,
    PositiveInteger,
    Integer,
    Angle,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
}

/// Read access to a validated point.
#[derive(Clone, Copy)]
pub struct Args<'a>(pub &'a Point);

impl Args<'_> {
    pub fn c(&self, k: &str) -> Cplx {
        self.0.get(k).copied().unwrap_or(Cplx::new(Real::NAN, Real::NAN))
    }
    pub fn r(&self, k: &str) -> Real {
        self.c(k).re
    }
    pub fn n(&self, k: &str) -> i64 {
        self.r(k).round() as i64
    }
}

/// A domain predicate with its human-readable form.
#[derive(Clone, Copy)]
pub struct Constraint {
    pub text: &'static str,
    pub check: fn(Args) -> bool,
}

/// Broad class of a row, which fixes its default tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    SeriesProduct,
    Quadrature,
    Theta,
}

impl Family {
    pub fn default_tol(self) -> Real {
        match self {
            Family::SeriesProduct => 1e-9,
            Family::Quadrature => 1e-7,
            Family::Theta => 1e-10,
        }
    }
}

/// One side of an identity with its bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct Side {
    pub value: Cplx,
    pub err: Real,
    pub terms: usize,
    pub nodes: usize,
    /// Largest intermediate magnitude, the floor for absolute comparisons.
    pub scale: Real,
    pub notes: Vec<String>,
}

impl Side {
    pub fn value(value: Cplx) -> Self {
        Side { value, err: 0.0, terms: 0, nodes: 0, scale: value.norm(), notes: vec![] }
    }

    pub fn with_err(value: Cplx, err: Real) -> Self {
        Side { err, ..Side::value(value) }
    }

    pub fn scaled(mut self, k: Cplx) -> Self {
        self.value *= k;
        self.err *= k.norm();
        self.scale *= k.norm();
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

impl From<SumOutcome> for Side {
    fn from(s: SumOutcome) -> Self {
        let mut notes = s.diagnostics;
        if !s.converged {
            notes.push("series not converged to engine tolerance".into());
        }
        Side { value: s.value, err: s.err_estimate, terms: s.terms_used, nodes: 0, scale: s.scale.max(s.value.norm()), notes }
    }
}

impl From<QuadratureResult> for Side {
    fn from(q: QuadratureResult) -> Self {
        Side { value: q.value, err: q.err_estimate, terms: 0, nodes: q.nodes_used, scale: q.value.norm(), notes: vec![] }
    }
}

pub type Evaluator = fn(Args, &EvalConfig) -> Result<Side>;

pub struct IdentityDescriptor {
    /// Short row tag, `R1` … `R31`.
    pub tag: &'static str,
    pub id: &'static str,
    pub title: &'static str,
    pub params: Vec<ParamSpec>,
    pub constraints: Vec<Constraint>,
    pub family: Family,
    /// One side is identically zero; compare absolutely against the scale.
    pub zero_rhs: bool,
    pub notes: &'static str,
    pub(crate) defaults: Option<fn(&mut Point)>,
    pub(crate) sample: fn(&mut Draw) -> Point,
    pub(crate) lhs: Evaluator,
    pub(crate) rhs: Evaluator,
}

impl IdentityDescriptor {
    pub fn default_tol(&self) -> Real {
        self.family.default_tol()
    }

    /// Fills defaults, then checks the schema and every constraint.
    pub fn prepare(&self, point: &Point) -> Result<Point> {
        let mut p = point.clone();
        if let Some(d) = self.defaults {
            d(&mut p);
        }
        for k in p.keys() {
            if !self.params.iter().any(|s| s.name == k) {
                return Err(Error::BadParameter { name: k.clone(), reason: format!("not a parameter of {}", self.id) });
            }
        }
        for spec in &self.params {
            let v = *p.get(spec.name).ok_or_else(|| Error::MissingParameter(spec.name.into()))?;
            if !(v.re.is_finite() && v.im.is_finite()) {
                return Err(Error::BadParameter { name: spec.name.into(), reason: "not finite".into() });
            }
            let real = v.im == 0.0;
            let integral = real && v.re == v.re.round();
            let ok = match spec.kind {
                ParamKind::Complex => true,
                ParamKind::Real | ParamKind::Angle => real,
                ParamKind::Integer => integral,
                ParamKind::PositiveInteger => integral && v.re >= 1.0,
            };
            if !ok {
                return Err(Error::BadParameter { name: spec.name.into(), reason: format!("expected {:?}, got {v}", spec.kind) });
            }
        }
        for c in &self.constraints {
            if !(c.check)(Args(&p)) {
                return Err(Error::ConstraintViolation(c.text.into()));
            }
        }
        Ok(p)
    }

    pub fn constraint_text(&self) -> Vec<&'static str> {
        self.constraints.iter().map(|c| c.text).collect()
    }
}

static REGISTRY: OnceLock<Vec<IdentityDescriptor>> = OnceLock::new();

/// All rows, in tag order.
pub fn registry() -> &'static [IdentityDescriptor] {
    REGISTRY.get_or_init(catalog::build)
}

/// Looks a row up by id or tag.
pub fn find(name: &str) -> Result<&'static IdentityDescriptor> {
    registry()
        .iter()
        .find(|d| d.id == name || d.tag.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownIdentity(name.into()))
}

/// Engines run a thousand times tighter than the check, but never tighter
/// than the configured tolerance.
fn engine_config(cfg: &EvalConfig, tol: Real) -> EvalConfig {
    EvalConfig { rel_tol: cfg.rel_tol.max(tol * 1e-3), ..*cfg }
}

fn check(desc: &IdentityDescriptor, point: Point, tol: Real, cfg: &EvalConfig, seed: Option<u64>) -> CheckResult {
    let ecfg = engine_config(cfg, tol);
    let args = Args(&point);
    let sides = (desc.lhs)(args, &ecfg).and_then(|l| (desc.rhs)(args, &ecfg).map(|r| (l, r)));
    let mut r = match sides {
        Ok((l, r)) => CheckResult::compare(desc, point, seed, tol, l, r),
        Err(e) => CheckResult::errored(desc, point, seed, tol, e),
    };
    if !r.pass && r.error.is_none() && ill_conditioned(&r) {
        let v = r.lhs_value().map_or(0.0, |l| l.norm()).max(r.rhs_value().map_or(0.0, |v| v.norm()));
        r.notes.push(format!("ill-conditioned point: scale/|value| = {:.2e}", r.scale / v));
    }
    r
}

/// Verifies one row at one point.
///
/// Unknown rows and domain violations are errors; evaluator failures are
/// recorded in the result.
pub fn evaluate_identity(id: &str, point: &Point, tol: Option<Real>, cfg: &EvalConfig) -> Result<CheckResult> {
    let desc = find(id)?;
    let p = desc.prepare(point)?;
    Ok(check(desc, p, tol.unwrap_or(desc.default_tol()), cfg, None))
}

/// Deterministic point for `(row, seed)`.
pub fn sample_point(id: &str, seed: u64) -> Result<Point> {
    let desc = find(id)?;
    Sampler::new(desc, seed, 0, &Point::new()).next_point()
}

/// Admissible points from the stream of one `(row, seed, index)`.
struct Sampler<'a> {
    desc: &'a IdentityDescriptor,
    draw: Draw,
    overrides: &'a Point,
}

impl<'a> Sampler<'a> {
    fn new(desc: &'a IdentityDescriptor, seed: u64, index: u64, overrides: &'a Point) -> Self {
        Sampler { desc, draw: Draw::new(desc.id, seed, index), overrides }
    }

    fn raw(&mut self) -> Point {
        let mut p = (self.desc.sample)(&mut self.draw);
        for (k, v) in self.overrides {
            p.insert(k.clone(), *v);
        }
        p
    }

    /// Next draw passing schema and constraints; after 1000 rejections the
    /// last violation is returned together with the offending point.
    fn next_point(&mut self) -> Result<Point> {
        self.next_or_violation().map_err(|(_, e)| e)
    }

    fn next_or_violation(&mut self) -> std::result::Result<Point, (Point, Error)> {
        let mut last = None;
        for _ in 0..1000 {
            let p = self.raw();
            match self.desc.prepare(&p) {
                Ok(p) => return Ok(p),
                Err(e) => last = Some((p, e)),
            }
        }
        let (p, e) = last.expect("at least one draw");
        Err(match e {
            Error::ConstraintViolation(_) | Error::BadParameter { .. } | Error::MissingParameter(_) => (p, e),
            _ => (p, Error::SamplerExhausted(self.desc.id.into())),
        })
    }
}

/// Largest `scale/|value|` at which a relative check at `tol` is still
/// meaningful when each term carries a few hundred ulps of product rounding.
fn condition_limit(tol: Real) -> Real {
    tol / (1024.0 * EPS)
}

/// Whether a result says more about rounding than about the identity.
fn ill_conditioned(r: &CheckResult) -> bool {
    if r.notes.iter().any(|n| n.starts_with("absolute criterion")) {
        return false;
    }
    match (r.lhs_value(), r.rhs_value()) {
        (Some(l), Some(rv)) => r.scale > condition_limit(r.tol) * l.norm().max(rv.norm()),
        _ => matches!(r.error.as_deref(), Some(e) if ILL_CONDITIONED_PREFIXES.iter().any(|p| e.starts_with(p))),
    }
}

/// Error messages that mark a point as too close to a singularity.
const ILL_CONDITIONED_PREFIXES: [&str; 3] = ["ill-conditioned", "division by vanishing factor", "contour is ill-conditioned"];

/// Redraws allowed per point before an ill-conditioned result is reported as is.
const MAX_REDRAWS: usize = 50;

/// Options of a sweep beyond the row and configuration.
#[derive(Debug, Clone, Default)]
pub struct SweepOptions {
    pub count: usize,
    pub seed: u64,
    pub tol: Option<Real>,
    /// Parameters pinned on every point (sampled values are replaced).
    pub overrides: Point,
}

/// Verifies `count` sampled points. Failures and errors are data.
///
/// A point whose sides are dominated by cancellation (largest intermediate
/// over result beyond what double precision can resolve at `tol`), or that
/// sits on a near-zero factor, is redrawn from the same stream; the number
/// of redraws is noted in the result.
pub fn sweep(id: &str, opts: &SweepOptions, cfg: &EvalConfig) -> Result<VerificationReport> {
    let desc = find(id)?;
    let tol = opts.tol.unwrap_or(desc.default_tol());
    let idx: Vec<u64> = (0..opts.count as u64).collect();
    let results = par_map(&idx, |&i| {
        let mut sampler = Sampler::new(desc, opts.seed, i, &opts.overrides);
        let mut redraws = 0;
        loop {
            let r = match sampler.next_or_violation() {
                Ok(p) => check(desc, p, tol, cfg, Some(opts.seed)),
                Err((p, e)) => return CheckResult::errored(desc, p, Some(opts.seed), tol, e),
            };
            if redraws < MAX_REDRAWS && ill_conditioned(&r) {
                redraws += 1;
                continue;
            }
            let mut r = r;
            if redraws > 0 {
                r.notes.push(format!("{redraws} ill-conditioned draw(s) skipped"));
            }
            return r;
        }
    });
    Ok(VerificationReport::new(desc, opts.seed, tol, cfg, results))
}

//! Per-point results and sweep reports.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{IdentityDescriptor, Point, Side};
use crate::config::EvalConfig;
use crate::error::Error;
use crate::scalar::{Cplx, Real};

/// Below this fraction of the scale a side counts as zero.
const ZERO_FLOOR: Real = 1e-13;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Budget {
    pub terms: usize,
    pub nodes: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub identity: String,
    pub seed: Option<u64>,
    pub point: BTreeMap<String, [Real; 2]>,
    pub lhs: Option<[Real; 2]>,
    pub rhs: Option<[Real; 2]>,
    pub abs_err: Option<Real>,
    pub rel_err: Option<Real>,
    pub tol: Real,
    /// Absolute comparisons are made against `tol · scale`.
    pub scale: Real,
    pub pass: bool,
    pub budget: Budget,
    pub notes: Vec<String>,
    pub error: Option<String>,
}

fn pair(z: Cplx) -> [Real; 2] {
    [z.re, z.im]
}

fn point_record(p: &Point) -> BTreeMap<String, [Real; 2]> {
    p.iter().map(|(k, v)| (k.clone(), pair(*v))).collect()
}

impl CheckResult {
    pub(crate) fn compare(desc: &IdentityDescriptor, point: Point, seed: Option<u64>, tol: Real, l: Side, r: Side) -> Self {
        let abs = (l.value - r.value).norm();
        let rn = r.value.norm();
        let rel = if rn > 0.0 { abs / rn } else if abs == 0.0 { 0.0 } else { Real::INFINITY };
        let scale = l.scale.max(r.scale);
        let zero_side = desc.zero_rhs || rn < ZERO_FLOOR * scale;
        let finite = abs.is_finite();
        let pass = finite && (rel <= tol || (zero_side && abs <= tol * scale));
        let mut notes = Vec::new();
        if zero_side {
            notes.push("absolute criterion (vanishing side)".to_string());
        }
        notes.extend(l.notes.into_iter().map(|n| format!("lhs: {n}")));
        notes.extend(r.notes.into_iter().map(|n| format!("rhs: {n}")));
        let est = l.err + r.err;
        if est > tol * rn.max(scale * ZERO_FLOOR) {
            notes.push(format!("engine error estimate {est:.3e} is large against the tolerance"));
        }
        CheckResult {
            identity: desc.id.into(),
            seed,
            point: point_record(&point),
            lhs: Some(pair(l.value)),
            rhs: Some(pair(r.value)),
            abs_err: Some(abs).filter(|v| v.is_finite()),
            rel_err: Some(rel).filter(|v| v.is_finite()),
            tol,
            scale,
            pass,
            budget: Budget { terms: l.terms + r.terms, nodes: l.nodes + r.nodes },
            notes,
            error: None,
        }
    }

    pub(crate) fn errored(desc: &IdentityDescriptor, point: Point, seed: Option<u64>, tol: Real, e: Error) -> Self {
        CheckResult {
            identity: desc.id.into(),
            seed,
            point: point_record(&point),
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            tol,
            scale: 0.0,
            pass: false,
            budget: Budget { terms: 0, nodes: 0 },
            notes: Vec::new(),
            error: Some(e.to_string()),
        }
    }

    pub fn lhs_value(&self) -> Option<Cplx> {
        self.lhs.map(|[a, b]| Cplx::new(a, b))
    }

    pub fn rhs_value(&self) -> Option<Cplx> {
        self.rhs.map(|[a, b]| Cplx::new(a, b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub identity: String,
    pub seed: u64,
    pub count: usize,
    pub tol: Real,
    pub config: EvalConfig,
    pub summary: Summary,
    pub results: Vec<CheckResult>,
}

impl VerificationReport {
    pub(crate) fn new(desc: &IdentityDescriptor, seed: u64, tol: Real, cfg: &EvalConfig, results: Vec<CheckResult>) -> Self {
        let mut summary = Summary { pass: 0, fail: 0, error: 0 };
        for r in &results {
            match (r.pass, &r.error) {
                (true, _) => summary.pass += 1,
                (false, None) => summary.fail += 1,
                (false, Some(_)) => summary.error += 1,
            }
        }
        VerificationReport { identity: desc.id.into(), seed, count: results.len(), tol, config: *cfg, summary, results }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.pass == self.count
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

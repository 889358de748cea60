//! Functions reachable through `eval`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use qsum::classical::{beta_integral_check, gamma, reciprocal_gamma};
use qsum::qcore::{qpoch_finite, qpoch_infinite};
use qsum::quadrature::{askey_integral, bibasic_integral_rhs, qbeta_integral_1, qbeta_integral_2, QuadratureResult};
use qsum::series::generators::{
    make_f_terms, make_first_extension_terms, make_msum_terms, make_psi11_terms, make_psi66_terms, make_qbinomial_terms,
    make_sn_terms,
};
use qsum::series::{sum_bilateral, sum_unilateral, SumOutcome};
use qsum::theta::{theta, theta1_prime_zero, Nome};
use qsum::{Cplx, EvalConfig, Real, SeriesEvaluation};
use serde::Serialize;

#[derive(Debug, Serialize)]
pub struct EvalOutput {
    pub function: String,
    pub value: [Real; 2],
    pub err_estimate: Real,
    pub terms_used: usize,
    pub nodes_used: usize,
    pub converged: bool,
}

impl EvalOutput {
    fn exact(v: Cplx) -> Self {
        EvalOutput { function: String::new(), value: [v.re, v.im], err_estimate: 0.0, terms_used: 0, nodes_used: 0, converged: true }
    }
}

impl From<SeriesEvaluation> for EvalOutput {
    fn from(s: SeriesEvaluation) -> Self {
        EvalOutput { err_estimate: s.err_estimate, terms_used: s.terms_used, converged: s.converged, ..EvalOutput::exact(s.value) }
    }
}

impl From<SumOutcome> for EvalOutput {
    fn from(s: SumOutcome) -> Self {
        s.evaluation().into()
    }
}

impl From<QuadratureResult> for EvalOutput {
    fn from(q: QuadratureResult) -> Self {
        EvalOutput { err_estimate: q.err_estimate, nodes_used: q.nodes_used, ..EvalOutput::exact(q.value) }
    }
}

/// Name and parameter list of every exposed function.
pub const FUNCTIONS: &[(&str, &[&str])] = &[
    ("qpoch_finite", &["a", "q", "n"]),
    ("qpoch_infinite", &["a", "q"]),
    ("theta", &["j", "z", "q"]),
    ("theta1_prime_zero", &["q"]),
    ("gamma", &["z"]),
    ("reciprocal_gamma", &["z"]),
    ("psi11", &["a", "b", "q", "z"]),
    ("q_binomial", &["a", "q", "z"]),
    ("first_extension", &["a", "b", "q", "N", "z"]),
    ("f_series", &["a", "b", "z", "p", "q"]),
    ("msum", &["a", "z", "p"]),
    ("psi66", &["a", "b", "c", "d", "e", "q"]),
    ("sn", &["a", "b", "c", "d", "e", "q", "N"]),
    ("qbeta_1", &["a", "b", "q"]),
    ("qbeta_2", &["a", "b", "c", "q"]),
    ("askey", &["b", "c", "d", "e", "q"]),
    ("bibasic_integral", &["a", "b", "z", "p", "q", "y"]),
    ("beta_integral", &["a", "b"]),
];

struct Params<'a>(&'a BTreeMap<String, Cplx>);

impl Params<'_> {
    fn c(&self, k: &str) -> Result<Cplx> {
        self.0.get(k).copied().ok_or_else(|| anyhow!("missing parameter {k}"))
    }
    fn r(&self, k: &str) -> Result<Real> {
        let v = self.c(k)?;
        if v.im != 0.0 {
            bail!("parameter {k} must be real, got {v}");
        }
        Ok(v.re)
    }
    fn int(&self, k: &str) -> Result<i64> {
        let v = self.r(k)?;
        if v != v.round() {
            bail!("parameter {k} must be an integer, got {v}");
        }
        Ok(v as i64)
    }
    fn pos(&self, k: &str) -> Result<u32> {
        let v = self.int(k)?;
        if v < 1 {
            bail!("parameter {k} must be a positive integer, got {v}");
        }
        Ok(v as u32)
    }
}

pub fn evaluate(function: &str, params: &BTreeMap<String, Cplx>, cfg: &EvalConfig) -> Result<EvalOutput> {
    let Some((_, names)) = FUNCTIONS.iter().find(|(n, _)| *n == function) else {
        let known: Vec<&str> = FUNCTIONS.iter().map(|(n, _)| *n).collect();
        bail!("unknown function `{function}`; known: {}", known.join(", "));
    };
    if let Some(extra) = params.keys().find(|k| !names.contains(&k.as_str())) {
        bail!("`{function}` takes no parameter {extra} (parameters: {})", names.join(", "));
    }
    let p = Params(params);
    let mut out: EvalOutput = match function {
        "qpoch_finite" => EvalOutput::exact(qpoch_finite(p.c("a")?, p.c("q")?, p.int("n")?, cfg)?),
        "qpoch_infinite" => qpoch_infinite(p.c("a")?, p.c("q")?, cfg)?.into(),
        "theta" => {
            let j = p.int("j")?;
            if !(1..=4).contains(&j) {
                bail!("j must be 1, 2, 3 or 4");
            }
            theta(j as u8, p.c("z")?, &Nome::new(p.c("q")?)?, cfg)?.into()
        }
        "theta1_prime_zero" => theta1_prime_zero(&Nome::new(p.c("q")?)?, cfg)?.into(),
        "gamma" => EvalOutput::exact(gamma(p.c("z")?)?),
        "reciprocal_gamma" => EvalOutput::exact(reciprocal_gamma(p.c("z")?)),
        "psi11" => sum_bilateral(&make_psi11_terms(p.c("a")?, p.c("b")?, p.c("q")?, p.c("z")?, cfg)?, cfg)?.into(),
        "q_binomial" => sum_unilateral(&make_qbinomial_terms(p.c("a")?, p.c("q")?, p.c("z")?, cfg)?, cfg)?.into(),
        "first_extension" => {
            let g = make_first_extension_terms(p.c("a")?, p.c("b")?, p.r("q")?, p.pos("N")?, p.c("z")?, cfg)?;
            sum_bilateral(&g, cfg)?.into()
        }
        "f_series" => sum_bilateral(&make_f_terms(p.c("a")?, p.c("b")?, p.c("z")?, p.r("p")?, p.r("q")?, cfg)?, cfg)?.into(),
        "msum" => sum_bilateral(&make_msum_terms(p.r("a")?, p.c("z")?, p.r("p")?)?, cfg)?.into(),
        "psi66" => {
            let g = make_psi66_terms(p.c("a")?, p.c("b")?, p.c("c")?, p.c("d")?, p.c("e")?, p.c("q")?, cfg)?;
            sum_bilateral(&g, cfg)?.into()
        }
        "sn" => {
            let g = make_sn_terms(p.c("a")?, p.c("b")?, p.c("c")?, p.c("d")?, p.c("e")?, p.r("q")?, p.pos("N")?, cfg)?;
            sum_bilateral(&g, cfg)?.into()
        }
        "qbeta_1" => qbeta_integral_1(p.c("a")?, p.c("b")?, p.r("q")?, cfg)?.into(),
        "qbeta_2" => qbeta_integral_2(p.r("a")?, p.r("b")?, p.r("c")?, p.r("q")?, cfg)?.into(),
        "askey" => askey_integral(p.c("b")?, p.c("c")?, p.c("d")?, p.c("e")?, p.r("q")?, cfg)?.into(),
        "bibasic_integral" => bibasic_integral_rhs(p.c("a")?, p.c("b")?, p.c("z")?, p.r("p")?, p.r("q")?, p.c("y")?, cfg)?.into(),
        "beta_integral" => beta_integral_check(p.r("a")?, p.r("b")?, cfg)?.0.into(),
        _ => unreachable!("listed in FUNCTIONS"),
    };
    out.function = function.to_string();
    Ok(out)
}

//! The thirty-one rows.
//!
//! Every row pairs two evaluators that share no top-level engine where the
//! identity allows it (series against products, quadrature against
//! products, theta series against triple products). The transformation
//! rows of `f(a, b, z)` necessarily compare the series with itself at
//! transformed arguments.

use std::f64::consts::PI;

use super::{Args, Constraint, Draw, Family, IdentityDescriptor, ParamKind, ParamSpec, Point, Side};
use crate::classical::{beta_closed_form, beta_integral_check, gamma, reciprocal_gamma, BandLimited};
use crate::config::EvalConfig;
use crate::error::{Error, Result};
use crate::qcore::{product_ratio, qpoch_finite, qpoch_infinite, ratio, QArg};
use crate::quadrature::{askey_integral, bibasic_integral_rhs, psi11_integral_rep_check, qbeta_integral_1, qbeta_integral_2};
use crate::scalar::{principal_pow, re, sin_pi, Cplx, Real, Scaled, I};
use crate::series::generators::{
    make_f_terms, make_first_extension_terms, make_gamma_bilateral_terms, make_msum_terms, make_psi11_terms,
    make_psi66_terms, make_qbinomial_terms, make_second_extension_terms, make_shifted_f_terms, make_sn_terms,
    GammaKind, MARGIN,
};
use crate::series::{sum_bilateral, sum_unilateral, FnTerms, SumOutcome, TermGenerator};
use crate::theta::{theta, theta1_prime_zero_product, theta_product, Nome};

// ---------------------------------------------------------------------------
// Schema helpers

fn real(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Real }
}
fn cplx(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Complex }
}
fn posint(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::PositiveInteger }
}
fn int(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Integer }
}
fn angle(name: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Angle }
}

fn point<const K: usize>(kv: [(&str, Cplx); K]) -> Point {
    kv.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

/// `x < y` with the 1% interior margin.
fn lt(x: Real, y: Real) -> bool {
    x <= MARGIN * y
}

fn in_unit(x: Real) -> bool {
    x > 0.0 && lt(x, 1.0)
}

const Q_UNIT: Constraint = Constraint { text: "0 < q < 1", check: |a| in_unit(a.r("q")) };
const P_UNIT: Constraint = Constraint { text: "0 < p < 1", check: |a| in_unit(a.r("p")) };
const P_BELOW_Q: Constraint = Constraint { text: "0 < p < q < 1", check: |a| a.r("p") > 0.0 && lt(a.r("p"), a.r("q")) && in_unit(a.r("q")) };

fn nome_ok(q: Real, z: Cplx) -> bool {
    q.abs() * (2.0 * z.im.abs()).exp() < 0.95
}

// ---------------------------------------------------------------------------
// Sampling helpers

fn sample_q(d: &mut Draw) -> Real {
    d.uniform(0.1, 0.7)
}

/// `0 < p < q < 1` with `q − p ≥ 0.05`.
fn sample_pq(d: &mut Draw) -> (Real, Real) {
    let q = d.uniform(0.3, 0.8);
    let p = d.uniform(0.05, q - 0.05);
    (p, q)
}

/// Scales `x` to a modulus drawn log-uniformly in `[lo, hi]·|x|` and rotates it by a random phase.
fn shrink(d: &mut Draw, x: Cplx, lo: Real, hi: Real) -> Cplx {
    x * d.complex(lo, hi)
}

fn away_from_multiples_of_pi(d: &mut Draw) -> Real {
    let r = d.uniform(0.25, PI - 0.25);
    if d.coin() {
        r
    } else {
        -r
    }
}

// ---------------------------------------------------------------------------
// Evaluation helpers

fn products(num: &[Cplx], den: &[Cplx], q: Real, cfg: &EvalConfig) -> Result<Cplx> {
    ratio(num, den, re(q), cfg)
}

fn bilateral(g: &dyn TermGenerator, cfg: &EvalConfig) -> Result<Side> {
    Ok(sum_bilateral(g, cfg)?.into())
}

fn unilateral(g: &dyn TermGenerator, cfg: &EvalConfig) -> Result<Side> {
    Ok(sum_unilateral(g, cfg)?.into())
}

fn f_series(a: Cplx, b: Cplx, z: Cplx, p: Real, q: Real, cfg: &EvalConfig) -> Result<SumOutcome> {
    sum_bilateral(&make_f_terms(a, b, z, p, q, cfg)?, cfg)
}

fn theta_series(j: u8, z: Cplx, nome: &Nome, cfg: &EvalConfig) -> Result<Side> {
    let s = theta(j, z, nome, cfg)?;
    Ok(Side { terms: s.terms_used, notes: s.diagnostics, ..Side::with_err(s.value, s.err_estimate) })
}

/// Combines two sides multiplicatively, propagating relative errors.
fn mul(x: Side, y: Side) -> Side {
    let value = x.value * y.value;
    let err = x.err * y.value.norm() + y.err * x.value.norm();
    let mut notes = x.notes;
    notes.extend(y.notes);
    Side { value, err, terms: x.terms + y.terms, nodes: x.nodes + y.nodes, scale: x.scale * y.scale.max(y.value.norm()), notes }
}

fn div(x: Side, y: Side) -> Result<Side> {
    if y.value.norm() == 0.0 {
        return Err(Error::DivisionByVanishingFactor("denominator side is zero".into()));
    }
    let inv = y.value.inv();
    let value = x.value * inv;
    let err = (x.err + value.norm() * y.err) * inv.norm();
    let mut notes = x.notes;
    notes.extend(y.notes);
    Ok(Side { value, err, terms: x.terms + y.terms, nodes: x.nodes + y.nodes, scale: value.norm().max(x.scale * inv.norm()), notes })
}

fn add(x: Side, y: Side) -> Side {
    let mut notes = x.notes;
    notes.extend(y.notes);
    let value = x.value + y.value;
    Side { value, err: x.err + y.err, terms: x.terms + y.terms, nodes: x.nodes + y.nodes, scale: x.scale.max(y.scale).max(value.norm()), notes }
}

/// The elliptic ratio `(p, p, az, p/az; p)_∞ / (a, p/a, z, p/z; p)_∞`.
fn elliptic_ratio(a: Cplx, z: Cplx, p: Real, cfg: &EvalConfig) -> Result<Cplx> {
    let pc = re(p);
    products(&[pc, pc, a * z, pc / (a * z)], &[a, pc / a, z, pc / z], p, cfg)
}

/// `(q, b/a, az, q/az; q)_∞ / (b, q/a, z, b/az; q)_∞`.
fn psi11_closed_form(a: Cplx, b: Cplx, q: Real, z: Cplx, cfg: &EvalConfig) -> Result<Cplx> {
    let qc = re(q);
    products(&[qc, b / a, a * z, qc / (a * z)], &[b, qc / a, z, b / (a * z)], q, cfg)
}

/// `(bc/q, bd/q, be/q, cd/q, ce/q, de/q, q; q)_∞ / (bcde/q³; q)_∞`.
fn s1_closed_form(b: Cplx, c: Cplx, d: Cplx, e: Cplx, q: Real, cfg: &EvalConfig) -> Result<Cplx> {
    let qc = re(q);
    products(
        &[b * c / qc, b * d / qc, b * e / qc, c * d / qc, c * e / qc, d * e / qc, qc],
        &[b * c * d * e / (qc * qc * qc)],
        q,
        cfg,
    )
}

fn bcde(a: Args) -> [Cplx; 4] {
    [a.c("b"), a.c("c"), a.c("d"), a.c("e")]
}

fn alpha_of(a: Args) -> Real {
    1.0 / a.n("N") as Real
}

// ---------------------------------------------------------------------------
// Rows with their own generators

/// `Σ_{n≥1} (rq^n, rq^{1−n}; p)_∞ (−1)^{n−1} (2n−1) q^{n(n−1)/2}`.
fn weighted_theta_tail(r: Cplx, p: Real, q: Real, cfg: &EvalConfig) -> Result<SumOutcome> {
    let lq = q.ln();
    let base = QArg::new(r);
    let gen = FnTerms::new(|k: i64| {
        let n = (k + 1) as Real;
        let pr = product_ratio(&[base.shifted(re(n * lq)), base.shifted(re((1.0 - n) * lq))], &[], re(p), cfg, false)?;
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let w = Scaled::from_log(re(0.5 * n * (n - 1.0) * lq)) * re(sign * (2.0 * n - 1.0));
        Ok((pr.value * w).to_complex())
    });
    sum_unilateral(&gen, cfg)
}

/// The very-well-poised bibasic sum over `k ≥ 0`.
fn bibasic_vwp_sum(a: Cplx, b: Cplx, theta: Real, p: Real, q: Real, cfg: &EvalConfig) -> Result<SumOutcome> {
    let (e1, e2) = (Cplx::from_polar(1.0, theta), Cplx::from_polar(1.0, -theta));
    let qc = re(q);
    let a2 = a * a;
    let (ab, bda) = (QArg::new(a * b), QArg::new(b / a));
    let lq = q.ln();
    let gen = FnTerms::new(|k: i64| {
        let kf = k as Real;
        let mut v = (re(1.0) - a2 * qc.powf(2.0 * kf)) / (re(1.0) - a2);
        for x in [a2, a * e1, a * e2] {
            v *= qpoch_finite(x, qc, k, cfg)?;
        }
        for x in [qc, qc * a * e1, qc * a * e2] {
            v /= qpoch_finite(x, qc, k, cfg)?;
        }
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let pr = product_ratio(&[ab.shifted(re(kf * lq)), bda.shifted(re(-kf * lq))], &[], re(p), cfg, false)?;
        Ok((pr.value * Scaled::from_log(re(0.5 * kf * (kf + 1.0) * lq)) * (v * sign)).to_complex())
    });
    sum_unilateral(&gen, cfg)
}

/// Theta sides of the N-term relation.
fn theta_relation_lhs(x: Cplx, y: Cplx, n: u32, nome: &Nome, cfg: &EvalConfig) -> Result<Side> {
    let big = nome.scaled(n);
    let pt = nome.pi_tau();
    let mut acc = Side::value(re(0.0));
    for k in 0..n {
        let shift = pt * k as Real;
        let num = theta_series(1, x + y * n as Real + shift, &big, cfg)?;
        let den = theta_series(1, x + shift, &big, cfg)?;
        let w = (I * y * (2.0 * k as Real)).exp();
        acc = add(acc, div(num, den)?.scaled(w));
    }
    Ok(acc)
}

fn theta_relation_rhs(x: Cplx, y: Cplx, n: u32, nome: &Nome, cfg: &EvalConfig) -> Result<Side> {
    let big = nome.scaled(n);
    let lead = theta1_prime_zero_product(nome, cfg)? / theta1_prime_zero_product(&big, cfg)?;
    let v = lead * theta_product(1, y * n as Real, &big, cfg)? * theta_product(1, x + y, nome, cfg)?
        / (theta_product(1, x, nome, cfg)? * theta_product(1, y, nome, cfg)?);
    Ok(Side::value(v))
}

fn gamma_sum(kind: GammaKind, alpha: Real, cfg: &EvalConfig) -> Result<Side> {
    let g = make_gamma_bilateral_terms(kind, alpha)?;
    Ok(Side::from(sum_bilateral(&g, cfg)?).scaled(re(alpha)))
}

fn binomial_rhs(a: Cplx, x: Real) -> Side {
    Side::value(principal_pow(re(1.0) + Cplx::from_polar(1.0, x), a))
}

fn band_limited(a: Args) -> BandLimited {
    if a.n("profile") == 0 {
        BandLimited::Sinc
    } else {
        BandLimited::CosPower(a.r("b"))
    }
}

// ---------------------------------------------------------------------------

pub(super) fn build() -> Vec<IdentityDescriptor> {
    vec![
        IdentityDescriptor {
            tag: "R1",
            id: "ramanujan_1psi1",
            title: "Ramanujan's 1psi1 sum",
            params: vec![real("q"), cplx("a"), cplx("b"), cplx("z")],
            constraints: vec![
                Q_UNIT,
                Constraint { text: "|b/a| < |z| < 1", check: |a| lt((a.c("b") / a.c("a")).norm(), a.c("z").norm()) && lt(a.c("z").norm(), 1.0) },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "series summed in both directions against the six-product closed form",
            defaults: None,
            sample: |d| {
                let a = d.complex(0.5, 3.0);
                let z = d.complex(0.2, 0.9);
                point([("q", re(sample_q(d))), ("a", a), ("b", shrink(d, a * z, 0.05, 0.9)), ("z", z)])
            },
            lhs: |a, cfg| bilateral(&make_psi11_terms(a.c("a"), a.c("b"), re(a.r("q")), a.c("z"), cfg)?, cfg),
            rhs: |a, cfg| Ok(Side::value(psi11_closed_form(a.c("a"), a.c("b"), a.r("q"), a.c("z"), cfg)?)),
        },
        IdentityDescriptor {
            tag: "R2",
            id: "q_binomial",
            title: "q-binomial theorem",
            params: vec![real("q"), cplx("a"), cplx("z")],
            constraints: vec![Q_UNIT, Constraint { text: "|z| < 1", check: |a| lt(a.c("z").norm(), 1.0) }],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "the 1psi1 sum at b = q, where the negative-index terms vanish",
            defaults: None,
            sample: |d| point([("q", re(sample_q(d))), ("a", d.complex(0.1, 3.0)), ("z", d.complex(0.05, 0.9))]),
            lhs: |a, cfg| unilateral(&make_qbinomial_terms(a.c("a"), re(a.r("q")), a.c("z"), cfg)?, cfg),
            rhs: |a, cfg| Ok(Side::value(products(&[a.c("a") * a.c("z")], &[a.c("z")], a.r("q"), cfg)?)),
        },
        IdentityDescriptor {
            tag: "R3",
            id: "first_extension",
            title: "bilateral sum with p = q^{1/N}",
            params: vec![real("q"), posint("N"), cplx("a"), cplx("b"), cplx("z")],
            constraints: vec![
                Q_UNIT,
                Constraint {
                    text: "|b/a|^{1/N} < |z| < 1",
                    check: |a| lt((a.c("b") / a.c("a")).norm().powf(alpha_of(a)), a.c("z").norm()) && lt(a.c("z").norm(), 1.0),
                },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "p = q^{1/N}; terms use infinite products at shifted arguments",
            defaults: None,
            sample: |d| {
                let n = d.integer(1, 5);
                let a = d.complex(0.7, 2.0);
                let z = d.complex(0.5, 0.9);
                let b = shrink(d, a * z.powi(n as i32), 0.05, 0.9);
                point([("q", re(sample_q(d))), ("N", re(n as Real)), ("a", a), ("b", b), ("z", z)])
            },
            lhs: |a, cfg| {
                let n = a.n("N") as u32;
                bilateral(&make_first_extension_terms(a.c("a"), a.c("b"), a.r("q"), n, a.c("z"), cfg)?, cfg)
            },
            rhs: |a, cfg| {
                let (q, n) = (a.r("q"), a.n("N") as i32);
                let (aa, b, z) = (a.c("a"), a.c("b"), a.c("z"));
                let p = q.powf(1.0 / n as Real);
                let zn = z.powi(n);
                let qc = re(q);
                let on_q = products(&[b / aa, qc / zn], &[qc, b / (aa * zn)], q, cfg)?;
                Ok(Side::value(on_q * elliptic_ratio(aa, z, p, cfg)?))
            },
        },
        IdentityDescriptor {
            tag: "R4",
            id: "m_sum",
            title: "bilateral m-sum with (−z)^s",
            params: vec![real("p"), real("a"), cplx("z")],
            constraints: vec![
                P_UNIT,
                Constraint { text: "a > 0", check: |a| a.r("a") > 0.0 },
                Constraint {
                    text: "ln a / ln(1/p) at least 0.02 from an integer",
                    check: |a| {
                        let f = a.r("a").ln() / (1.0 / a.r("p")).ln();
                        (f - f.round()).abs() >= 0.02
                    },
                },
                Constraint { text: "|Arg(−z)| < π, z ≠ 0", check: |a| a.c("z").norm() > 0.0 && lt((-a.c("z")).arg().abs(), PI) },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "principal branch of (−z)^s",
            defaults: None,
            sample: |d| {
                let p = d.uniform(0.1, 0.7);
                let a = d.log_uniform(0.3, 3.0);
                let z = -Cplx::from_polar(d.log_uniform(0.3, 3.0), d.uniform(-2.5, 2.5));
                point([("p", re(p)), ("a", re(a)), ("z", z)])
            },
            lhs: |a, cfg| bilateral(&make_msum_terms(a.r("a"), a.c("z"), a.r("p"))?, cfg),
            rhs: |a, cfg| Ok(Side::value(-elliptic_ratio(re(a.r("a")), a.c("z"), a.r("p"), cfg)?)),
        },
        IdentityDescriptor {
            tag: "R5",
            id: "product_relation_N",
            title: "relation between infinite products in bases q and q^{1/N}",
            params: vec![real("q"), posint("N"), cplx("a"), cplx("z")],
            constraints: vec![Q_UNIT],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "finite N-term sum of product ratios against a closed product",
            defaults: None,
            sample: |d| {
                let n = d.integer(2, 5);
                point([("q", re(sample_q(d))), ("N", re(n as Real)), ("a", d.complex(0.5, 2.0)), ("z", d.complex(0.5, 1.5))])
            },
            lhs: |a, cfg| {
                let (q, n) = (a.r("q"), a.n("N"));
                let (aa, z) = (a.c("a"), a.c("z"));
                let zn = z.powi(n as i32);
                let mut acc = Side::value(re(0.0));
                for k in 0..n {
                    let s = q.powf(k as Real / n as Real);
                    let t = q.powf(1.0 - k as Real / n as Real);
                    let v = products(&[aa * s * zn, re(t) / (aa * zn)], &[aa * s, re(t) / aa], q, cfg)?;
                    acc = add(acc, Side::value(z.powi(k as i32) * v));
                }
                Ok(acc)
            },
            rhs: |a, cfg| {
                let (q, n) = (a.r("q"), a.n("N") as i32);
                let (aa, z) = (a.c("a"), a.c("z"));
                let zn = z.powi(n);
                let qc = re(q);
                let p = q.powf(1.0 / n as Real);
                Ok(Side::value(products(&[zn, qc / zn], &[qc, qc], q, cfg)? * elliptic_ratio(aa, z, p, cfg)?))
            },
        },
        IdentityDescriptor {
            tag: "R6",
            id: "n2_product_identity",
            title: "two-term product identity at N = 2",
            params: vec![real("q"), cplx("a"), cplx("z")],
            constraints: vec![Q_UNIT],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "two products in base q against four in base √q",
            defaults: None,
            sample: |d| point([("q", re(sample_q(d))), ("a", d.complex(0.3, 3.0)), ("z", d.complex(0.3, 3.0))]),
            lhs: |a, cfg| {
                let q = a.r("q");
                let s = re(q.sqrt());
                let (aa, z) = (a.c("a"), a.c("z"));
                let az2 = aa * z * z;
                let t1 = products(&[aa * s, s / aa, az2, re(q) / az2], &[], q, cfg)?;
                let t2 = products(&[aa, re(q) / aa, az2 * s, s / az2], &[], q, cfg)?;
                Ok(add(Side::value(t1), Side::value(z * t2)))
            },
            rhs: |a, cfg| {
                let q = a.r("q");
                let s = q.sqrt();
                let (aa, z) = (a.c("a"), a.c("z"));
                let sq = products(&[re(s), re(s)], &[], q, cfg)?;
                let on_s = products(&[-z, -re(s) / z, aa * z, re(s) / (aa * z)], &[], s, cfg)?;
                Ok(Side::value(sq * on_s))
            },
        },
        IdentityDescriptor {
            tag: "R7",
            id: "theta_addition_2tau",
            title: "θ3θ4 addition formula with nome doubling",
            params: vec![real("q"), cplx("x"), cplx("y")],
            constraints: vec![
                Constraint { text: "0 < q < 1 (nome)", check: |a| in_unit(a.r("q")) },
                Constraint { text: "|q| e^{2|Im x|} < 0.95", check: |a| nome_ok(a.r("q"), a.c("x")) },
                Constraint { text: "|q| e^{2|Im y|} < 0.95", check: |a| nome_ok(a.r("q"), a.c("y")) },
            ],
            family: Family::Theta,
            zero_rhs: false,
            notes: "theta series on the left, triple products on the right",
            defaults: None,
            sample: |d| {
                let q = d.uniform(0.05, 0.5);
                let x = Cplx::new(d.uniform(-PI, PI), d.uniform(-0.3, 0.3));
                let y = Cplx::new(d.uniform(-PI, PI), d.uniform(-0.3, 0.3));
                point([("q", re(q)), ("x", x), ("y", y)])
            },
            lhs: |a, cfg| {
                let nome = Nome::new(re(a.r("q")))?;
                Ok(mul(theta_series(3, a.c("x"), &nome, cfg)?, theta_series(4, a.c("y"), &nome, cfg)?))
            },
            rhs: |a, cfg| {
                let nome2 = Nome::new(re(a.r("q")).powi(2))?;
                let (x, y) = (a.c("x"), a.c("y"));
                let v = theta_product(4, x + y, &nome2, cfg)? * theta_product(4, y - x, &nome2, cfg)?
                    + theta_product(1, x + y, &nome2, cfg)? * theta_product(1, y - x, &nome2, cfg)?;
                Ok(Side::value(v))
            },
        },
        IdentityDescriptor {
            tag: "R8",
            id: "landen",
            title: "Landen's transformation",
            params: vec![real("q"), cplx("x")],
            constraints: vec![
                Constraint { text: "0 < q < 1 (nome)", check: |a| in_unit(a.r("q")) },
                Constraint { text: "|q| e^{2|Im x|} < 0.95", check: |a| nome_ok(a.r("q"), a.c("x")) },
            ],
            family: Family::Theta,
            zero_rhs: false,
            notes: "θ3(x)θ4(x)/θ4(2x | 2τ) against its value at x = 0",
            defaults: None,
            sample: |d| {
                let q = d.uniform(0.05, 0.5);
                point([("q", re(q)), ("x", Cplx::new(d.uniform(-PI, PI), d.uniform(-0.2, 0.2)))])
            },
            lhs: |a, cfg| {
                let q = a.r("q");
                let (nome, nome2) = (Nome::new(re(q))?, Nome::new(re(q * q))?);
                let x = a.c("x");
                let num = mul(theta_series(3, x, &nome, cfg)?, theta_series(4, x, &nome, cfg)?);
                div(num, theta_series(4, x * 2.0, &nome2, cfg)?)
            },
            rhs: |a, cfg| {
                let q = a.r("q");
                let (nome, nome2) = (Nome::new(re(q))?, Nome::new(re(q * q))?);
                let zero = re(0.0);
                Ok(Side::value(theta_product(3, zero, &nome, cfg)? * theta_product(4, zero, &nome, cfg)? / theta_product(4, zero, &nome2, cfg)?))
            },
        },
        IdentityDescriptor {
            tag: "R9",
            id: "theta_relation_N",
            title: "N-term θ1 relation between nomes q and q^N",
            params: vec![real("q"), posint("N"), cplx("x"), cplx("y")],
            constraints: vec![
                Constraint { text: "0 < q < 1 (nome)", check: |a| in_unit(a.r("q")) },
                Constraint { text: "|q| e^{2|Im x|} < 0.95", check: |a| nome_ok(a.r("q"), a.c("x")) },
                Constraint { text: "|q| e^{2|Im y|} < 0.95", check: |a| nome_ok(a.r("q"), a.c("y")) },
            ],
            family: Family::Theta,
            zero_rhs: false,
            notes: "shift kπτ with πτ = −i ln q; left side by series with quasi-period reduction",
            defaults: None,
            sample: |d| {
                let q = d.uniform(0.05, 0.5);
                let n = d.choose(&[2, 3]);
                let x = Cplx::new(away_from_multiples_of_pi(d), d.uniform(-0.2, 0.2));
                let y = Cplx::new(away_from_multiples_of_pi(d), d.uniform(-0.2, 0.2));
                point([("q", re(q)), ("N", re(n as Real)), ("x", x), ("y", y)])
            },
            lhs: |a, cfg| theta_relation_lhs(a.c("x"), a.c("y"), a.n("N") as u32, &Nome::new(re(a.r("q")))?, cfg),
            rhs: |a, cfg| theta_relation_rhs(a.c("x"), a.c("y"), a.n("N") as u32, &Nome::new(re(a.r("q")))?, cfg),
        },
        IdentityDescriptor {
            tag: "R10",
            id: "y_identity",
            title: "y-weighted bilateral sum in base q^{1/N}",
            params: vec![real("q"), posint("N"), cplx("a"), cplx("b"), cplx("x"), cplx("y")],
            constraints: vec![
                Q_UNIT,
                Constraint {
                    text: "|b/(ax)|^{1/N} < |y| < |x|^{-1/N}",
                    check: |a| {
                        let al = alpha_of(a);
                        let y = a.c("y").norm();
                        lt((a.c("b") / (a.c("a") * a.c("x"))).norm().powf(al), y) && lt(y, a.c("x").norm().powf(-al))
                    },
                },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "p = q^{1/N}",
            defaults: None,
            sample: |d| {
                let n = d.integer(1, 4);
                let a = d.complex(0.5, 3.0);
                let x = d.complex(0.2, 1.2);
                let hi = 0.9 * x.norm().powf(-1.0 / n as Real);
                let y = Cplx::from_polar(d.log_uniform(0.3f64.min(hi * 0.5), hi), d.phase());
                let b = shrink(d, a * x * y.powi(n as i32), 0.05, 0.9);
                point([("q", re(sample_q(d))), ("N", re(n as Real)), ("a", a), ("b", b), ("x", x), ("y", y)])
            },
            lhs: |a, cfg| {
                let g = make_second_extension_terms(a.c("a"), a.c("b"), a.c("x"), a.r("q"), a.n("N") as u32, a.c("y"), cfg)?;
                bilateral(&g, cfg)
            },
            rhs: |a, cfg| {
                let (q, n) = (a.r("q"), a.n("N") as i32);
                let (aa, b, x, y) = (a.c("a"), a.c("b"), a.c("x"), a.c("y"));
                let p = q.powf(1.0 / n as Real);
                let (qc, pc) = (re(q), re(p));
                let yn = y.powi(n);
                let on_q = products(&[b / aa, yn, qc / yn], &[qc, -x * yn, -b / (aa * x * yn)], q, cfg)?;
                let axy = aa * x * y;
                let on_p = products(&[pc, pc, -axy, -pc / axy], &[-aa * x, -pc / (aa * x), y, pc / y], p, cfg)?;
                Ok(Side::value(on_q * on_p))
            },
        },
        IdentityDescriptor {
            tag: "R11",
            id: "alpha_psi_sum",
            title: "1psi1 analogue with step α = 1/N",
            params: vec![real("q"), posint("N"), cplx("a"), cplx("b"), cplx("x")],
            constraints: vec![
                Q_UNIT,
                Constraint { text: "|b| < |x| < |a|", check: |a| lt(a.c("b").norm(), a.c("x").norm()) && lt(a.c("x").norm(), a.c("a").norm()) },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "the y = 1 sum with x ↦ −x/a; holds for every N",
            defaults: None,
            sample: |d| {
                let n = d.integer(1, 6);
                let a = d.complex(2.0, 4.0);
                let x = d.complex(0.5, 1.5);
                let b = shrink(d, x, 0.02, 0.3);
                point([("q", re(sample_q(d))), ("N", re(n as Real)), ("a", a), ("b", b), ("x", x)])
            },
            lhs: |a, cfg| {
                let aa = a.c("a");
                let g = make_second_extension_terms(aa, a.c("b"), -a.c("x") / aa, a.r("q"), a.n("N") as u32, re(1.0), cfg)?;
                Ok(bilateral(&g, cfg)?.scaled(re(alpha_of(a))))
            },
            rhs: |a, cfg| {
                let (aa, b, x) = (a.c("a"), a.c("b"), a.c("x"));
                let q = a.r("q");
                Ok(Side::value(products(&[re(q), b / aa], &[x / aa, b / x], q, cfg)?))
            },
        },
        IdentityDescriptor {
            tag: "R12",
            id: "qbeta_1",
            title: "first q-beta integral",
            params: vec![real("q"), cplx("a"), cplx("b")],
            constraints: vec![
                Q_UNIT,
                Constraint { text: "|b| < 1 < |a|", check: |a| lt(a.c("b").norm(), 1.0) && lt(1.0, a.c("a").norm()) },
            ],
            family: Family::Quadrature,
            zero_rhs: false,
            notes: "trapezoid in ln t over the half line",
            defaults: None,
            sample: |d| point([("q", re(sample_q(d))), ("a", d.complex(2.0, 6.0)), ("b", d.complex(0.05, 0.5))]),
            lhs: |a, cfg| Ok(qbeta_integral_1(a.c("a"), a.c("b"), a.r("q"), cfg)?.into()),
            rhs: |a, cfg| {
                let q = a.r("q");
                let (aa, b) = (a.c("a"), a.c("b"));
                Ok(Side::value(products(&[re(q), b / aa], &[-re(1.0) / aa, -b], q, cfg)? * (1.0 / q).ln()))
            },
        },
        IdentityDescriptor {
            tag: "R13",
            id: "qbeta_2",
            title: "second q-beta integral",
            params: vec![real("q"), real("a"), real("b"), real("c")],
            constraints: vec![
                Q_UNIT,
                Constraint { text: "a < c < b", check: |a| a.r("a") + 0.05 <= a.r("c") && a.r("c") + 0.05 <= a.r("b") },
                Constraint { text: "c not an integer", check: |a| sin_pi(a.r("c")).abs() > 1e-3 },
            ],
            family: Family::Quadrature,
            zero_rhs: false,
            notes: "integrand carries t^{c−1}",
            defaults: None,
            sample: |d| {
                let c = d.uniform(0.15, 0.85);
                let a = c - d.uniform(0.4, 1.5);
                let b = c + d.uniform(0.4, 1.5);
                point([("q", re(sample_q(d))), ("a", re(a)), ("b", re(b)), ("c", re(c))])
            },
            lhs: |a, cfg| Ok(qbeta_integral_2(a.r("a"), a.r("b"), a.r("c"), a.r("q"), cfg)?.into()),
            rhs: |a, cfg| {
                let (q, aa, b, c) = (a.r("q"), a.r("a"), a.r("b"), a.r("c"));
                let v = products(&[re(q.powf(b - aa)), re(q.powf(c)), re(q.powf(1.0 - c))], &[re(q), re(q.powf(b - c)), re(q.powf(c - aa))], q, cfg)?;
                Ok(Side::value(v * (PI / sin_pi(c))))
            },
        },
        IdentityDescriptor {
            tag: "R14",
            id: "bailey_6psi6",
            title: "Bailey's very-well-poised 6psi6 sum",
            params: vec![real("q"), cplx("a"), cplx("b"), cplx("c"), cplx("d"), cplx("e")],
            constraints: vec![
                Q_UNIT,
                Constraint {
                    text: "|qa²/bcde| < 1",
                    check: |a| {
                        let [b, c, d, e] = bcde(a);
                        lt((a.c("a") * a.c("a") * a.r("q") / (b * c * d * e)).norm(), 1.0)
                    },
                },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "",
            defaults: None,
            sample: |d| {
                let q = sample_q(d);
                let a = d.complex(0.3, 2.0);
                let [b, c, dd, e] = [d.complex(0.4, 3.0), d.complex(0.4, 3.0), d.complex(0.4, 3.0), d.complex(0.4, 3.0)];
                let arg = (a * a * q / (b * c * dd * e)).norm();
                // Rescale e so the argument lands in [0.05, 0.7].
                let e = if arg > 0.7 { e * (arg / d.uniform(0.05, 0.7)) } else { e };
                point([("q", re(q)), ("a", a), ("b", b), ("c", c), ("d", dd), ("e", e)])
            },
            lhs: |a, cfg| {
                let [b, c, d, e] = bcde(a);
                bilateral(&make_psi66_terms(a.c("a"), b, c, d, e, re(a.r("q")), cfg)?, cfg)
            },
            rhs: |a, cfg| {
                let [b, c, d, e] = bcde(a);
                let aa = a.c("a");
                let q = a.r("q");
                let aq = aa * q;
                let qc = re(q);
                let v = products(
                    &[aq, aq / (b * c), aq / (b * d), aq / (b * e), aq / (c * d), aq / (c * e), aq / (d * e), qc, qc / aa],
                    &[aq / b, aq / c, aq / d, aq / e, qc / b, qc / c, qc / d, qc / e, aq * aa / (b * c * d * e)],
                    q,
                    cfg,
                )?;
                Ok(Side::value(v))
            },
        },
        IdentityDescriptor {
            tag: "R15",
            id: "sn_equals_s1",
            title: "S_N = S_1 for the sum with step 1/N",
            params: vec![real("q"), posint("N"), cplx("a"), cplx("b"), cplx("c"), cplx("d"), cplx("e")],
            constraints: vec![
                Q_UNIT,
                Constraint {
                    text: "|bcde/q³| < 1",
                    check: |a| {
                        let [b, c, d, e] = bcde(a);
                        lt((b * c * d * e).norm() / a.r("q").powi(3), 1.0)
                    },
                },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "a defaults to i; the closed form does not involve a",
            defaults: Some(|p| {
                p.entry("a".into()).or_insert(I);
            }),
            sample: |d| {
                let q = d.uniform(0.3, 0.7);
                let n = d.integer(1, 4);
                let a = d.complex(0.5, 2.0);
                let mut v = [d.complex(0.15, 0.9), d.complex(0.15, 0.9), d.complex(0.15, 0.9), d.complex(0.15, 0.9)];
                let arg = v.iter().map(|x| x.norm()).product::<Real>() / q.powi(3);
                let target = d.uniform(0.02, 0.5);
                if arg > target {
                    let s = (target / arg).powf(0.25);
                    v.iter_mut().for_each(|x| *x *= s);
                }
                let [b, c, dd, e] = v;
                point([("q", re(q)), ("N", re(n as Real)), ("a", a), ("b", b), ("c", c), ("d", dd), ("e", e)])
            },
            lhs: |a, cfg| {
                let [b, c, d, e] = bcde(a);
                bilateral(&make_sn_terms(a.c("a"), b, c, d, e, a.r("q"), a.n("N") as u32, cfg)?, cfg)
            },
            rhs: |a, cfg| {
                let [b, c, d, e] = bcde(a);
                Ok(Side::value(s1_closed_form(b, c, d, e, a.r("q"), cfg)?))
            },
        },
        IdentityDescriptor {
            tag: "R16",
            id: "askey",
            title: "Askey's integral as the continuous limit",
            params: vec![real("q"), real("b"), real("c"), real("d"), real("e")],
            constraints: vec![
                Q_UNIT,
                Constraint {
                    text: "|bcde/q³| < 1",
                    check: |a| lt((a.r("b") * a.r("c") * a.r("d") * a.r("e")).abs() / a.r("q").powi(3), 1.0),
                },
            ],
            family: Family::Quadrature,
            zero_rhs: false,
            notes: "summand at a = i integrated against du/(u ln(1/q))",
            defaults: None,
            sample: |d| {
                let q = d.uniform(0.4, 0.8);
                let mut v = [0.0; 4];
                for x in v.iter_mut() {
                    *x = d.log_uniform(0.1, 0.9) * if d.coin() { 1.0 } else { -1.0 };
                }
                let arg = v.iter().map(|x| x.abs()).product::<Real>() / q.powi(3);
                let target = d.uniform(0.02, 0.5);
                if arg > target {
                    let s = (target / arg).powf(0.25);
                    v.iter_mut().for_each(|x| *x *= s);
                }
                point([("q", re(q)), ("b", re(v[0])), ("c", re(v[1])), ("d", re(v[2])), ("e", re(v[3]))])
            },
            lhs: |a, cfg| Ok(askey_integral(re(a.r("b")), re(a.r("c")), re(a.r("d")), re(a.r("e")), a.r("q"), cfg)?.into()),
            rhs: |a, cfg| Ok(Side::value(s1_closed_form(re(a.r("b")), re(a.r("c")), re(a.r("d")), re(a.r("e")), a.r("q"), cfg)?)),
        },
        IdentityDescriptor {
            tag: "R17",
            id: "stanton_bibasic",
            title: "very-well-poised bibasic sum",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), angle("theta")],
            constraints: vec![
                P_BELOW_Q,
                Constraint { text: "|a| < 1", check: |a| lt(a.c("a").norm(), 1.0) },
                Constraint { text: "a² ≠ 1", check: |a| (re(1.0) - a.c("a") * a.c("a")).norm() > 1e-3 },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "unilateral sum in k against products in both bases",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                point([("p", re(p)), ("q", re(q)), ("a", d.complex(0.1, 0.9)), ("b", d.complex(0.1, 2.0)), ("theta", re(d.uniform(-PI, PI)))])
            },
            lhs: |a, cfg| {
                let s = bibasic_vwp_sum(a.c("a"), a.c("b"), a.r("theta"), a.r("p"), a.r("q"), cfg)?;
                Ok(s.into())
            },
            rhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let (aa, b, th) = (a.c("a"), a.c("b"), a.r("theta"));
                let (e1, e2) = (Cplx::from_polar(1.0, th), Cplx::from_polar(1.0, -th));
                let qc = re(q);
                let on_q = products(&[qc, qc * aa * aa], &[qc * aa * e1, qc * aa * e2], q, cfg)?;
                let on_p = products(&[b * e1, b * e2], &[], p, cfg)?;
                Ok(Side::value(on_q * on_p))
            },
        },
        IdentityDescriptor {
            tag: "R18",
            id: "f_simple_transform",
            title: "f(a, b, z) = −z f(1/b, 1/a, 1/z)",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), cplx("z")],
            constraints: vec![P_BELOW_Q, Constraint { text: "z ≠ 0, a ≠ 0, b ≠ 0", check: |a| a.c("z").norm() * a.c("a").norm() * a.c("b").norm() > 0.0 }],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "reindexing n ↦ 1 − n of the defining series",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                point([("p", re(p)), ("q", re(q)), ("a", d.complex(0.3, 3.0)), ("b", d.complex(0.3, 3.0)), ("z", d.complex(0.3, 3.0))])
            },
            lhs: |a, cfg| Ok(f_series(a.c("a"), a.c("b"), a.c("z"), a.r("p"), a.r("q"), cfg)?.into()),
            rhs: |a, cfg| {
                let z = a.c("z");
                let one = re(1.0);
                let s: Side = f_series(one / a.c("b"), one / a.c("a"), one / z, a.r("p"), a.r("q"), cfg)?.into();
                Ok(s.scaled(-z))
            },
        },
        IdentityDescriptor {
            tag: "R19",
            id: "f_y_transform",
            title: "y-transformation of f",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), cplx("z"), cplx("y")],
            constraints: vec![P_BELOW_Q, Constraint { text: "y ≠ 0, z ≠ 0", check: |a| a.c("y").norm() * a.c("z").norm() > 0.0 }],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                point([
                    ("p", re(p)),
                    ("q", re(q)),
                    ("a", d.complex(0.5, 2.0)),
                    ("b", d.complex(0.5, 2.0)),
                    ("z", d.complex(0.5, 2.0)),
                    ("y", d.complex(0.5, 2.0)),
                ])
            },
            lhs: |a, cfg| Ok(f_series(a.c("a"), a.c("b"), a.c("z"), a.r("p"), a.r("q"), cfg)?.into()),
            rhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let (aa, b, z, y) = (a.c("a"), a.c("b"), a.c("z"), a.c("y"));
                let qc = re(q);
                let k = products(&[z, qc / z], &[z / y, qc * y / z], q, cfg)?;
                let s: Side = f_series(aa / y, b / y, z / y, p, q, cfg)?.into();
                Ok(s.scaled(k))
            },
        },
        IdentityDescriptor {
            tag: "R20",
            id: "f_two_variable",
            title: "f(a, b, z)/(z, q/z; q)_∞ under common scaling",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), cplx("z"), cplx("lambda")],
            constraints: vec![
                P_BELOW_Q,
                Constraint { text: "0.5 ≤ |λ| ≤ 2", check: |a| (0.5..=2.0).contains(&a.c("lambda").norm()) },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                point([
                    ("p", re(p)),
                    ("q", re(q)),
                    ("a", d.complex(0.3, 3.0)),
                    ("b", d.complex(0.3, 3.0)),
                    ("z", d.complex(0.3, 3.0)),
                    ("lambda", d.complex(0.5, 2.0)),
                ])
            },
            lhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let z = a.c("z");
                let s: Side = f_series(a.c("a"), a.c("b"), z, p, q, cfg)?.into();
                Ok(s.scaled(products(&[], &[z, re(q) / z], q, cfg)?))
            },
            rhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let l = a.c("lambda");
                let z = l * a.c("z");
                let s: Side = f_series(l * a.c("a"), l * a.c("b"), z, p, q, cfg)?.into();
                Ok(s.scaled(products(&[], &[z, re(q) / z], q, cfg)?))
            },
        },
        IdentityDescriptor {
            tag: "R21",
            id: "f_zeros",
            title: "zeros of f at z = q^m",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), int("m")],
            constraints: vec![P_BELOW_Q],
            family: Family::SeriesProduct,
            zero_rhs: true,
            notes: "c = … is shorthand for a = c, b = 1/c, m = 0",
            defaults: Some(|p| {
                if let Some(c) = p.remove("c") {
                    p.insert("a".into(), c);
                    p.insert("b".into(), c.inv());
                    p.entry("m".into()).or_insert(re(0.0));
                }
            }),
            sample: |d| {
                let (p, q) = sample_pq(d);
                let (a, b, m) = if d.coin() {
                    let c = d.complex(0.3, 3.0);
                    (c, c.inv(), 0)
                } else {
                    (d.complex(0.3, 3.0), d.complex(0.3, 3.0), d.choose(&[-1, 0, 1, 2]))
                };
                point([("p", re(p)), ("q", re(q)), ("a", a), ("b", b), ("m", re(m as Real))])
            },
            lhs: |a, cfg| {
                let q = a.r("q");
                Ok(f_series(a.c("a"), a.c("b"), re(q.powi(a.n("m") as i32)), a.r("p"), q, cfg)?.into())
            },
            rhs: |_, _| Ok(Side::value(re(0.0))),
        },
        IdentityDescriptor {
            tag: "R22",
            id: "f_sqrt_ab",
            title: "f at z = √(ab)",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b")],
            constraints: vec![P_BELOW_Q],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "s = √(ab) principal, r = s/a",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                point([("p", re(p)), ("q", re(q)), ("a", d.complex(0.5, 2.0)), ("b", d.complex(0.5, 2.0))])
            },
            lhs: |a, cfg| {
                let (aa, b) = (a.c("a"), a.c("b"));
                Ok(f_series(aa, b, (aa * b).sqrt(), a.r("p"), a.r("q"), cfg)?.into())
            },
            rhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let (aa, b) = (a.c("a"), a.c("b"));
                let s = (aa * b).sqrt();
                let qc = re(q);
                let k = products(&[s, qc / s], &[qc, qc], q, cfg)?;
                let t: Side = weighted_theta_tail(s / aa, p, q, cfg)?.into();
                Ok(t.scaled(k))
            },
        },
        IdentityDescriptor {
            tag: "R23",
            id: "euler_cube",
            title: "(q;q)_∞³ as a series",
            params: vec![real("q")],
            constraints: vec![Q_UNIT],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "",
            defaults: None,
            sample: |d| point([("q", re(d.uniform(0.05, 0.65)))]),
            lhs: |a, cfg| {
                let v = qpoch_infinite(re(a.r("q")), re(a.r("q")), cfg)?;
                Ok(Side::with_err(v.value.powi(3), 3.0 * v.err_estimate * v.value.norm().powi(2)))
            },
            rhs: |a, cfg| {
                let q = a.r("q");
                let gen = FnTerms::new(move |k: i64| {
                    let n = (k + 1) as Real;
                    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
                    Ok(re(sign * (2.0 * n - 1.0) * q.powf(0.5 * n * (n - 1.0))))
                });
                unilateral(&gen, cfg)
            },
        },
        IdentityDescriptor {
            tag: "R24",
            id: "summation_19",
            title: "bibasic summation with bases p < q",
            params: vec![real("p"), real("q"), cplx("a"), cplx("z")],
            constraints: vec![P_BELOW_Q, Constraint { text: "a ≠ 0, z ≠ 0", check: |a| a.c("a").norm() * a.c("z").norm() > 0.0 }],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                point([("p", re(p)), ("q", re(q)), ("a", d.complex(0.3, 3.0)), ("z", d.complex(0.3, 3.0))])
            },
            lhs: |a, cfg| {
                let (aa, z) = (a.c("a"), a.c("z"));
                bilateral(&make_shifted_f_terms(aa, aa, z, a.r("p"), a.r("q"), cfg)?, cfg)
            },
            rhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let (aa, z) = (a.c("a"), a.c("z"));
                let r = p / q;
                let (pc, qc) = (re(p), re(q));
                let k = products(&[qc], &[], q, cfg)? * products(&[re(r)], &[], r, cfg)? / products(&[pc], &[], p, cfg)?;
                let on_r = products(&[-aa / z, -pc * z / (aa * qc)], &[], r, cfg)?;
                let on_q = products(&[z, qc / z], &[], q, cfg)?;
                Ok(Side::value(k * on_r * on_q))
            },
        },
        IdentityDescriptor {
            tag: "R25",
            id: "psi11_int_rep",
            title: "contour-integral representation of a product",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), cplx("y"), int("n")],
            constraints: vec![
                P_BELOW_Q,
                Constraint { text: "|b| < |y| < |a|", check: |a| lt(a.c("b").norm(), a.c("y").norm()) && lt(a.c("y").norm(), a.c("a").norm()) },
            ],
            family: Family::Quadrature,
            zero_rhs: false,
            notes: "periodic trapezoid on |t| = |y|",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                let a = d.complex(1.0, 4.0);
                let y = a * d.complex(1.0 / 4.0, 1.0 / 1.5);
                let b = y * d.complex(1.0 / 4.0, 1.0 / 1.5);
                point([("p", re(p)), ("q", re(q)), ("a", a), ("b", b), ("y", y), ("n", re(d.integer(-2, 2) as Real))])
            },
            lhs: |a, cfg| {
                let (v, _) = psi11_integral_rep_check(a.c("a"), a.c("b"), a.c("y"), a.n("n"), a.r("p"), a.r("q"), cfg)?;
                Ok(Side::value(v))
            },
            rhs: |a, cfg| {
                let (_, r) = psi11_integral_rep_check(a.c("a"), a.c("b"), a.c("y"), a.n("n"), a.r("p"), a.r("q"), cfg)?;
                Ok(r.into())
            },
        },
        IdentityDescriptor {
            tag: "R26",
            id: "third_extension",
            title: "bilateral series as a bibasic integral",
            params: vec![real("p"), real("q"), cplx("a"), cplx("b"), cplx("z"), cplx("y")],
            constraints: vec![
                P_BELOW_Q,
                Constraint { text: "|b| < |y| < |a|", check: |a| lt(a.c("b").norm(), a.c("y").norm()) && lt(a.c("y").norm(), a.c("a").norm()) },
                Constraint { text: "z ≠ 0", check: |a| a.c("z").norm() > 0.0 },
            ],
            family: Family::Quadrature,
            zero_rhs: false,
            notes: "left side Σ (bq^n, pq^{−n}/a; p)_∞ (−z)^n q^{n(n−1)/2}, which is f(aq/p, b, z)",
            defaults: None,
            sample: |d| {
                let (p, q) = sample_pq(d);
                let a = d.complex(1.0, 4.0);
                let y = a * d.complex(1.0 / 4.0, 1.0 / 1.5);
                let b = y * d.complex(1.0 / 4.0, 1.0 / 1.5);
                point([("p", re(p)), ("q", re(q)), ("a", a), ("b", b), ("z", d.complex(0.3, 2.0)), ("y", y)])
            },
            lhs: |a, cfg| bilateral(&make_shifted_f_terms(a.c("a"), a.c("b"), a.c("z"), a.r("p"), a.r("q"), cfg)?, cfg),
            rhs: |a, cfg| {
                let (p, q) = (a.r("p"), a.r("q"));
                let (aa, b, z, y) = (a.c("a"), a.c("b"), a.c("z"), a.c("y"));
                let main: Side = bibasic_integral_rhs(aa, b, z, p, q, y, cfg)?.into();
                // Second contour at the geometric mean radius.
                let y2 = Cplx::from_polar((aa.norm() * b.norm()).sqrt(), y.arg() + 0.5);
                let note = match bibasic_integral_rhs(aa, b, z, p, q, y2, cfg) {
                    Ok(alt) => format!("y-independence: |Δ| = {:.3e} at y' = {:.6}", (alt.value - main.value).norm(), y2),
                    Err(e) => format!("y-independence not checked: {e}"),
                };
                Ok(main.note(note))
            },
        },
        IdentityDescriptor {
            tag: "R27",
            id: "dougall_alpha",
            title: "Dougall's bilateral sum with step α = 1/N",
            params: vec![real("a"), real("b"), real("c"), real("d"), posint("N")],
            constraints: vec![Constraint {
                text: "a + b + c + d > 3",
                check: |a| a.r("a") + a.r("b") + a.r("c") + a.r("d") >= 3.0 / MARGIN,
            }],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "terms decay like |n|^{2−(a+b+c+d)}; Richardson extrapolation over the period N",
            defaults: None,
            sample: |d| {
                let mut v = [0.0; 4];
                loop {
                    for x in v.iter_mut() {
                        *x = d.uniform(0.3, 2.5);
                    }
                    if v.iter().sum::<Real>() >= 3.5 {
                        break;
                    }
                }
                let n = d.integer(1, 3);
                point([("a", re(v[0])), ("b", re(v[1])), ("c", re(v[2])), ("d", re(v[3])), ("N", re(n as Real))])
            },
            lhs: |a, cfg| {
                let kind = GammaKind::Dougall { a: a.r("a"), b: a.r("b"), c: a.r("c"), d: a.r("d") };
                gamma_sum(kind, alpha_of(a), cfg)
            },
            rhs: |a, _| {
                let (aa, b, c, d) = (a.r("a"), a.r("b"), a.r("c"), a.r("d"));
                let v = gamma(re(aa + b + c + d - 3.0))?
                    * reciprocal_gamma(re(aa + b - 1.0))
                    * reciprocal_gamma(re(aa + d - 1.0))
                    * reciprocal_gamma(re(c + b - 1.0))
                    * reciprocal_gamma(re(c + d - 1.0));
                Ok(Side::value(v))
            },
        },
        IdentityDescriptor {
            tag: "R28",
            id: "binomial_alpha",
            title: "binomial theorem with step α = 1/N",
            params: vec![cplx("a"), real("c"), angle("x"), posint("N")],
            constraints: vec![
                Constraint { text: "Re a > 0", check: |a| a.c("a").re > 0.0 },
                Constraint { text: "−π < x < π", check: |a| lt(a.r("x").abs(), PI) },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "oscillatory terms summed with a smooth cutoff",
            defaults: None,
            sample: |d| {
                let a = Cplx::new(d.uniform(0.5, 4.0), d.uniform(-1.0, 1.0));
                let x = d.uniform(-PI + 0.3, PI - 0.3);
                let n = d.choose(&[1, 2, 4]);
                point([("a", a), ("c", re(d.uniform(-1.0, 1.0))), ("x", re(x)), ("N", re(n as Real))])
            },
            lhs: |a, cfg| gamma_sum(GammaKind::Binomial { a: a.c("a"), c: a.r("c"), x: a.r("x") }, alpha_of(a), cfg),
            rhs: |a, _| Ok(binomial_rhs(a.c("a"), a.r("x"))),
        },
        IdentityDescriptor {
            tag: "R29",
            id: "binomial_riemann",
            title: "bilateral binomial sum at α = 1",
            params: vec![cplx("a"), real("c"), angle("x")],
            constraints: vec![
                Constraint { text: "Re a > 0", check: |a| a.c("a").re > 0.0 },
                Constraint { text: "−π < x < π", check: |a| lt(a.r("x").abs(), PI) },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "",
            defaults: None,
            sample: |d| {
                let a = Cplx::new(d.uniform(0.5, 4.0), d.uniform(-1.0, 1.0));
                point([("a", a), ("c", re(d.uniform(-1.0, 1.0))), ("x", re(d.uniform(-PI + 0.3, PI - 0.3)))])
            },
            lhs: |a, cfg| gamma_sum(GammaKind::Binomial { a: a.c("a"), c: a.r("c"), x: a.r("x") }, 1.0, cfg),
            rhs: |a, _| Ok(binomial_rhs(a.c("a"), a.r("x"))),
        },
        IdentityDescriptor {
            tag: "R30",
            id: "sampling",
            title: "sampling theorem for band-limited g",
            params: vec![int("profile"), real("b"), real("y"), posint("N")],
            constraints: vec![
                Constraint { text: "profile ∈ {0 (sinc), 1 (cos^b)}", check: |a| matches!(a.n("profile"), 0 | 1) },
                Constraint { text: "b ≥ 0", check: |a| a.r("b") >= 0.0 },
            ],
            family: Family::SeriesProduct,
            zero_rhs: false,
            notes: "α Σ sinc(π(y − αn)) g(αn) against g(y)",
            defaults: None,
            sample: |d| {
                let profile = d.integer(0, 1);
                let b = if profile == 0 { 0.0 } else { d.uniform(0.0, 3.0) };
                point([("profile", re(profile as Real)), ("b", re(b)), ("y", re(d.uniform(-3.0, 3.0))), ("N", re(d.integer(1, 3) as Real))])
            },
            lhs: |a, cfg| gamma_sum(GammaKind::Sampling { g: band_limited(a), y: a.r("y") }, alpha_of(a), cfg),
            rhs: |a, _| Ok(Side::value(band_limited(a).g(a.r("y")))),
        },
        IdentityDescriptor {
            tag: "R31",
            id: "beta_integral_classical",
            title: "∫_0^{π/2} cos^b x cos ax dx",
            params: vec![real("a"), real("b")],
            constraints: vec![Constraint { text: "b > −1", check: |a| a.r("b") > -1.0 }],
            family: Family::Quadrature,
            zero_rhs: false,
            notes: "tanh-sinh quadrature against the gamma closed form",
            defaults: None,
            sample: |d| point([("a", re(d.uniform(-4.0, 4.0))), ("b", re(d.uniform(-0.9, 4.0)))]),
            lhs: |a, cfg| Ok(beta_integral_check(a.r("a"), a.r("b"), cfg)?.0.into()),
            rhs: |a, _| Ok(Side::value(beta_closed_form(a.r("a"), a.r("b"))?)),
        },
    ]
}

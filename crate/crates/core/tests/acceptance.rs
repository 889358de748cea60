//! Acceptance checks. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; any failure makes the binary exit 1.

use std::process::ExitCode;
use std::time::Instant;

use qsum::identities::{evaluate_identity, registry, sweep, CheckResult, Draw, Point, SweepOptions};
use qsum::parallel::with_workers;
use qsum::qcore::{qpoch_infinite, ratio};
use qsum::quadrature::{askey_integral, bibasic_integral_rhs, qbeta_integral_1};
use qsum::series::generators::{make_f_terms, make_psi11_terms};
use qsum::series::sum_bilateral;
use qsum::theta::{theta, Nome};
use qsum::{Cplx, EvalConfig, Real, SeriesEvaluation};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn(&EvalConfig) -> Outcome);

fn re(x: Real) -> Cplx {
    Cplx::new(x, 0.0)
}

fn point(pairs: &[(&str, Cplx)]) -> Point {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn point_of(r: &CheckResult) -> Point {
    r.point.iter().map(|(k, v)| (k.clone(), Cplx::new(v[0], v[1]))).collect()
}

fn opts(count: usize, seed: u64, tol: Option<Real>, pinned: &[(&str, Cplx)]) -> SweepOptions {
    SweepOptions { count, seed, tol, overrides: point(pinned) }
}

/// Runs a sweep and demands every point pass.
fn all_pass(id: &str, o: &SweepOptions, cfg: &EvalConfig) -> Result<Vec<CheckResult>, String> {
    let rep = sweep(id, o, cfg).map_err(|e| format!("{id}: {e}"))?;
    if !rep.all_passed() {
        let bad = rep.results.iter().find(|r| !r.pass).expect("a failing point");
        return Err(format!(
            "{id} {}/{} (first failure rel {:?} abs {:?} error {:?})",
            rep.summary.pass, rep.count, bad.rel_err, bad.abs_err, bad.error
        ));
    }
    Ok(rep.results)
}

fn registry_sweep(cfg: &EvalConfig) -> Outcome {
    let t0 = Instant::now();
    for d in registry() {
        all_pass(d.id, &opts(25, 1, None, &[]), cfg)?;
    }
    let secs = t0.elapsed().as_secs_f64();
    if secs > 300.0 {
        return Err(format!("took {secs:.1} s"));
    }
    Ok(format!("{} rows 25/25 in {secs:.2} s", registry().len()))
}

fn first_extension(cfg: &EvalConfig) -> Outcome {
    for n in [1.0, 2.0, 3.0, 5.0] {
        all_pass("first_extension", &opts(10, 7, None, &[("N", re(n))]), cfg)?;
    }
    // With N = 1 the sum is (b;q)_∞/(a;q)_∞ times the 1psi1 series.
    let mut worst: Real = 0.0;
    for r in all_pass("first_extension", &opts(10, 8, None, &[("N", re(1.0))]), cfg)? {
        let mut p = point_of(&r);
        p.remove("N");
        let (a, b, q) = (p["a"], p["b"], p["q"]);
        let psi = evaluate_identity("ramanujan_1psi1", &p, None, cfg).map_err(|e| e.to_string())?;
        let lift = ratio(&[b], &[a], q, cfg).map_err(|e| e.to_string())?;
        let (ext, base) = (r.lhs_value().unwrap(), psi.lhs_value().unwrap() * lift);
        worst = worst.max((ext - base).norm() / base.norm());
    }
    if worst >= 1e-10 {
        return Err(format!("N = 1 against 1psi1: rel {worst:.2e}"));
    }
    Ok(format!("N ∈ {{1,2,3,5}} × 10 pass; N = 1 vs 1psi1 max rel {worst:.1e}"))
}

fn sn_equals_s1(cfg: &EvalConfig) -> Outcome {
    let mut worst: Real = 0.0;
    for n in 1..=4 {
        for r in all_pass("sn_equals_s1", &opts(5, 11, None, &[("N", re(n as Real))]), cfg)? {
            worst = worst.max(r.rel_err.unwrap_or(Real::INFINITY));
        }
    }
    if worst >= 1e-9 {
        return Err(format!("max rel {worst:.2e}"));
    }
    Ok(format!("N = 1..4 × 5, max rel {worst:.1e}"))
}

fn askey_limit(cfg: &EvalConfig) -> Outcome {
    let sets = [
        [0.5, 0.3, -0.2, 0.4, 0.1],
        [0.7, -0.5, 0.6, 0.3, -0.4],
        [0.6, 0.1, 0.2, -0.3, 0.25],
    ];
    let mut worst: Real = 0.0;
    let mut nodes = 0;
    for s in sets {
        let p = point(&[("q", re(s[0])), ("b", re(s[1])), ("c", re(s[2])), ("d", re(s[3])), ("e", re(s[4]))]);
        let r = evaluate_identity("askey", &p, None, cfg).map_err(|e| e.to_string())?;
        let abs = r.abs_err.ok_or_else(|| format!("no value at {s:?}: {:?}", r.error))?;
        worst = worst.max(abs);
        nodes = nodes.max(r.budget.nodes);
    }
    if worst >= 1e-6 || nodes > 4096 {
        return Err(format!("max |S_∞ − S_1| {worst:.2e}, nodes {nodes}"));
    }
    Ok(format!("max |S_∞ − S_1| {worst:.1e}, max nodes {nodes}"))
}

fn bibasic_integral(cfg: &EvalConfig) -> Outcome {
    let mut spread: Real = 0.0;
    for r in all_pass("third_extension", &opts(10, 13, None, &[]), cfg)? {
        let p = point_of(&r);
        let (a, b) = (p["a"], p["b"]);
        let (lo, hi) = (b.norm().ln(), a.norm().ln());
        let mut values = vec![];
        for (t, phase) in [(0.3, 0.4), (0.5, -1.1), (0.7, 2.0)] {
            let y = Cplx::from_polar((lo + t * (hi - lo)).exp(), phase);
            let v = bibasic_integral_rhs(a, b, p["z"], p["p"].re, p["q"].re, y, cfg).map_err(|e| e.to_string())?;
            values.push(v.value);
        }
        let lhs = r.lhs_value().unwrap();
        for v in values {
            spread = spread.max((v - lhs).norm() / lhs.norm());
        }
    }
    if spread >= 1e-7 {
        return Err(format!("contour values spread {spread:.2e}"));
    }
    Ok(format!("10 points pass; 3 contours per point within {spread:.1e}"))
}

fn theta_suite(cfg: &EvalConfig) -> Outcome {
    let tol = Some(1e-10);
    all_pass("landen", &opts(20, 17, tol, &[]), cfg)?;
    all_pass("theta_addition_2tau", &opts(20, 17, tol, &[]), cfg)?;
    for n in [2.0, 3.0] {
        all_pass("theta_relation_N", &opts(20, 17, tol, &[("N", re(n))]), cfg)?;
    }
    Ok("Landen, N = 2 addition, N-term relation for N ∈ {2,3}: 20/20 each".into())
}

fn classical_suite(cfg: &EvalConfig) -> Outcome {
    let tol = Some(1e-8);
    for n in [1.0, 2.0, 3.0] {
        all_pass("dougall_alpha", &opts(10, 19, tol, &[("N", re(n))]), cfg)?;
    }
    for n in [1.0, 2.0, 4.0] {
        all_pass("binomial_alpha", &opts(10, 19, tol, &[("N", re(n))]), cfg)?;
    }
    all_pass("sampling", &opts(10, 19, tol, &[]), cfg)?;
    all_pass("beta_integral_classical", &opts(10, 19, tol, &[]), cfg)?;
    Ok("Dougall α ∈ {1,1/2,1/3}, binomial α ∈ {1,1/2,1/4}, sampling, beta: 10/10 each".into())
}

fn zero_structure(cfg: &EvalConfig) -> Outcome {
    for m in [-1.0, 0.0, 1.0, 2.0] {
        all_pass("f_zeros", &opts(10, 23, None, &[("m", re(m))]), cfg)?;
    }
    for i in 0..10 {
        let mut d = Draw::new("c-form", 23, i);
        let q = d.uniform(0.3, 0.8);
        let p = d.uniform(0.05, q - 0.05);
        let c = d.complex(0.3, 3.0);
        let pt = point(&[("p", re(p)), ("q", re(q)), ("c", c)]);
        let r = evaluate_identity("f_zeros", &pt, None, cfg).map_err(|e| e.to_string())?;
        if !r.pass {
            return Err(format!("f(c, 1/c, 1) at c = {c}: abs {:?} scale {:.2e}", r.abs_err, r.scale));
        }
    }
    Ok("z = q^m for m ∈ {−1,0,1,2} and f(c,1/c,1): 10/10 each".into())
}

/// One evaluation by a different engine per call, cycling through five.
fn engine_evaluation(k: u64, cfg: &EvalConfig) -> qsum::Result<SeriesEvaluation> {
    let mut d = Draw::new("engine-honesty", 29, k);
    match k % 5 {
        0 => qpoch_infinite(d.complex(0.1, 3.0), re(d.uniform(0.1, 0.9)), cfg),
        1 => {
            let nome = Nome::new(re(d.uniform(0.05, 0.6)))?;
            theta(d.integer(1, 4) as u8, Cplx::new(d.uniform(-2.0, 2.0), d.uniform(-0.5, 0.5)), &nome, cfg)
        }
        2 => {
            let (a, z) = (d.complex(0.5, 3.0), d.complex(0.3, 0.9));
            let b = a * z * d.uniform(0.1, 0.8);
            Ok(sum_bilateral(&make_psi11_terms(a, b, re(d.uniform(0.1, 0.7)), z, cfg)?, cfg)?.evaluation())
        }
        3 => {
            let q = d.uniform(0.3, 0.8);
            let p = d.uniform(0.05, q - 0.05);
            let terms = make_f_terms(d.complex(0.5, 2.0), d.complex(0.5, 2.0), d.complex(0.5, 2.0), p, q, cfg)?;
            Ok(sum_bilateral(&terms, cfg)?.evaluation())
        }
        _ => {
            let quad = if d.coin() {
                let a = d.complex(1.5, 3.0);
                qbeta_integral_1(a, d.complex(0.1, 0.7), d.uniform(0.2, 0.7), cfg)?
            } else {
                let v: Vec<Real> = (0..4).map(|_| d.uniform(-0.4, 0.4)).collect();
                askey_integral(re(v[0]), re(v[1]), re(v[2]), re(v[3]), d.uniform(0.5, 0.8), cfg)?
            };
            Ok(SeriesEvaluation {
                value: quad.value,
                err_estimate: quad.err_estimate,
                terms_used: quad.nodes_used,
                converged: true,
                diagnostics: vec![],
            })
        }
    }
}

fn engine_honesty(cfg: &EvalConfig) -> Outcome {
    let doubled = cfg.doubled_budget();
    let (mut seen, mut honest, mut k) = (0, 0, 0);
    while seen < 100 && k < 1000 {
        let first = engine_evaluation(k, cfg);
        let again = engine_evaluation(k, &doubled);
        k += 1;
        let (Ok(v1), Ok(v2)) = (first, again) else { continue };
        if !v1.converged {
            continue;
        }
        seen += 1;
        if (v2.value - v1.value).norm() <= v1.err_estimate {
            honest += 1;
        }
    }
    if seen < 100 || honest < 99 {
        return Err(format!("{honest}/{seen} within err_estimate"));
    }
    Ok(format!("{honest}/{seen} re-evaluations within err_estimate"))
}

fn full_suite_json(cfg: &EvalConfig) -> Result<String, String> {
    let mut out = String::new();
    for d in registry() {
        out += &sweep(d.id, &opts(25, 1, None, &[]), cfg).map_err(|e| e.to_string())?.to_json();
    }
    Ok(out)
}

fn determinism(cfg: &EvalConfig) -> Outcome {
    let a = full_suite_json(cfg)?;
    let b = full_suite_json(cfg)?;
    let single = with_workers(1, || full_suite_json(cfg))?;
    let many = with_workers(4, || full_suite_json(cfg))?;
    if a != b || a != single || a != many {
        return Err("structured reports differ between runs".into());
    }
    Ok(format!("{} bytes identical over 2 runs and 1 or 4 workers", a.len()))
}

fn main() -> ExitCode {
    let cfg = EvalConfig::default();
    let criteria: [Criterion; 10] = [
        ("registry sweep", registry_sweep),
        ("first extension", first_extension),
        ("S_N = S_1", sn_equals_s1),
        ("Askey limit", askey_limit),
        ("bibasic integral", bibasic_integral),
        ("theta suite", theta_suite),
        ("classical suite", classical_suite),
        ("zero structure", zero_structure),
        ("engine honesty", engine_honesty),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run(&cfg) {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {}/{} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Human-readable rendering. Numbers are rounded to 12 significant digits.

use qsum::identities::{CheckResult, IdentityDescriptor, TrendReport, VerificationReport};
use qsum::{Cplx, Real};

use crate::eval::EvalOutput;

pub fn sig(x: Real) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: Real = format!("{x:.11e}").parse().unwrap_or(x);
    let m = rounded.abs();
    if m != 0.0 && !(1e-5..1e15).contains(&m) {
        format!("{rounded:e}")
    } else {
        rounded.to_string()
    }
}

pub fn complex(z: Cplx) -> String {
    if z.im == 0.0 {
        return sig(z.re);
    }
    if z.re == 0.0 {
        return format!("{}i", sig(z.im));
    }
    let sign = if z.im < 0.0 { '-' } else { '+' };
    format!("{}{sign}{}i", sig(z.re), sig(z.im.abs()))
}

fn pair(p: Option<[Real; 2]>) -> String {
    p.map(|[a, b]| complex(Cplx::new(a, b))).unwrap_or_else(|| "-".into())
}

fn opt(x: Option<Real>) -> String {
    x.map(|v| format!("{v:.3e}")).unwrap_or_else(|| "-".into())
}

pub fn eval(o: &EvalOutput) -> String {
    let mut s = format!("{} = {}\n", o.function, complex(Cplx::new(o.value[0], o.value[1])));
    s += &format!("  err_estimate {:.3e}\n", o.err_estimate);
    if o.terms_used > 0 {
        s += &format!("  terms_used   {}\n", o.terms_used);
    }
    if o.nodes_used > 0 {
        s += &format!("  nodes_used   {}\n", o.nodes_used);
    }
    if !o.converged {
        s += "  not converged\n";
    }
    s
}

pub fn check(r: &CheckResult) -> String {
    let verdict = if r.pass { "PASS" } else if r.error.is_some() { "ERROR" } else { "FAIL" };
    let point: Vec<String> = r.point.iter().map(|(k, [a, b])| format!("{k}={}", complex(Cplx::new(*a, *b)))).collect();
    let mut s = format!("{verdict} {} [{}]\n", r.identity, point.join(" "));
    if let Some(e) = &r.error {
        s += &format!("  error   {e}\n");
        return s;
    }
    s += &format!("  lhs     {}\n  rhs     {}\n", pair(r.lhs), pair(r.rhs));
    s += &format!("  abs_err {}  rel_err {}  tol {:.1e}\n", opt(r.abs_err), opt(r.rel_err), r.tol);
    s += &format!("  budget  terms {} nodes {}\n", r.budget.terms, r.budget.nodes);
    for n in &r.notes {
        s += &format!("  note    {n}\n");
    }
    s
}

pub fn report(rep: &VerificationReport, verbose: bool) -> String {
    let mut s = String::new();
    for (i, r) in rep.results.iter().enumerate() {
        if verbose || !r.pass {
            s += &format!("#{i} {}", check(r));
        }
    }
    s += &format!(
        "{:<26} {:>3}/{:<3} pass  {} fail  {} error  (tol {:.0e}, seed {})\n",
        rep.identity, rep.summary.pass, rep.count, rep.summary.fail, rep.summary.error, rep.tol, rep.seed
    );
    s
}

pub fn listing(d: &IdentityDescriptor) -> String {
    let params: Vec<String> = d.params.iter().map(|p| format!("{}:{}", p.name, kind(p.kind))).collect();
    let mut s = format!("{:<4} {:<26} {}\n", d.tag, d.id, d.title);
    s += &format!("     params      {}\n", params.join(" "));
    s += &format!("     constraints {}\n", d.constraint_text().join("; "));
    s += &format!("     tolerance   {:.0e} ({})\n", d.default_tol(), family(d));
    if !d.notes.is_empty() {
        s += &format!("     notes       {}\n", d.notes);
    }
    s
}

fn kind(k: qsum::identities::ParamKind) -> &'static str {
    use qsum::identities::ParamKind::*;
    match k {
        Real => "real",
        Complex => "complex",
        PositiveInteger => "positive-integer",
        Integer => "integer",
        Angle => "angle",
    }
}

fn family(d: &IdentityDescriptor) -> &'static str {
    use qsum::identities::Family::*;
    match d.family {
        SeriesProduct => "series/product",
        Quadrature => "quadrature",
        Theta => "theta",
    }
}

pub fn trend(t: &TrendReport) -> String {
    let mut s = format!("{} (limit {})\n", t.family, complex(Cplx::new(t.limit[0], t.limit[1])));
    s += &format!("  {:>8}  {:>24}  {:>10}  verified\n", "step", "value", "gap");
    for st in &t.steps {
        s += &format!(
            "  {:>8}  {:>24}  {:>10.3e}  {}\n",
            sig(st.param),
            complex(Cplx::new(st.value[0], st.value[1])),
            st.gap,
            if st.verified { "yes" } else { "no" }
        );
    }
    if let Some(th) = t.threshold {
        s += &format!("  final gap {:.3e} (threshold {th:.0e}), decreasing: {}\n", t.final_gap, t.decreasing);
    }
    s += &format!("  {}\n", if t.pass { "PASS" } else { "FAIL" });
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(sig(1.772453850905516), "1.77245385091");
        assert_eq!(sig(0.328125), "0.328125");
        assert_eq!(sig(2.251931850534e-39), "2.25193185053e-39");
        assert_eq!(sig(-3e20), "-3e20");
        assert_eq!(complex(Cplx::new(1.0, -2.0)), "1-2i");
        assert_eq!(complex(Cplx::new(0.0, 2.0)), "2i");
    }
}

//! Parameter literals: `name=value` with `value` one of `re`, `imi`,
//! `re+imi` or `re-imi`.

use std::collections::BTreeMap;

use anyhow::{anyhow, bail, Result};
use qsum::Cplx;

pub fn parse_complex(s: &str) -> Result<Cplx> {
    let bad = || anyhow!("cannot parse complex literal `{s}` (expected re, imi, re+imi or re-imi)");
    if s.is_empty() || s.contains(char::is_whitespace) {
        return Err(bad());
    }
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|r| Cplx::new(r, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not the leading one or part of an exponent.
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => t.parse::<f64>().map_err(|_| bad()),
        }
    };
    match split {
        Some(k) => {
            let re = body[..k].parse::<f64>().map_err(|_| bad())?;
            Ok(Cplx::new(re, imag(&body[k..])?))
        }
        None => Ok(Cplx::new(0.0, imag(body)?)),
    }
}

/// Parses `name=value` pairs; later duplicates are an error.
pub fn parse_assignments(items: &[String]) -> Result<BTreeMap<String, Cplx>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (k, v) = item.split_once('=').ok_or_else(|| anyhow!("expected name=value, got `{item}`"))?;
        if k.is_empty() {
            bail!("empty parameter name in `{item}`");
        }
        let v = parse_complex(v).map_err(|e| anyhow!("parameter {k}: {e}"))?;
        if out.insert(k.to_string(), v).is_some() {
            bail!("parameter {k} given twice");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn literals() {
        assert_eq!(parse_complex("0.5").unwrap(), Cplx::new(0.5, 0.0));
        assert_eq!(parse_complex("-2").unwrap(), Cplx::new(-2.0, 0.0));
        assert_eq!(parse_complex("1+2i").unwrap(), Cplx::new(1.0, 2.0));
        assert_eq!(parse_complex("1-2.5i").unwrap(), Cplx::new(1.0, -2.5));
        assert_eq!(parse_complex("-1e-3+4e2i").unwrap(), Cplx::new(-1e-3, 400.0));
        assert_eq!(parse_complex("3i").unwrap(), Cplx::new(0.0, 3.0));
        assert_eq!(parse_complex("i").unwrap(), Cplx::new(0.0, 1.0));
        assert_eq!(parse_complex("-i").unwrap(), Cplx::new(0.0, -1.0));
        assert_eq!(parse_complex("0.3-i").unwrap(), Cplx::new(0.3, -1.0));
        for bad in ["", "1 + 2i", "x", "1+2", "1+xi", "--1"] {
            assert!(parse_complex(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn assignments() {
        let m = parse_assignments(&["a=2".into(), "z=0.1-0.2i".into()]).unwrap();
        assert_eq!(m["z"], Cplx::new(0.1, -0.2));
        assert!(parse_assignments(&["a".into()]).is_err());
        assert!(parse_assignments(&["a=1".into(), "a=2".into()]).is_err());
    }
}

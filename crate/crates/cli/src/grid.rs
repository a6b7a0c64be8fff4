//! Grid syntax: `log:lo:hi:n`, `lin:lo:hi:n`, or a comma list.

use crate::error::CliError;

pub fn parse_grid(field: &'static str, spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = |reason: String| CliError::config(field, reason);
    let spec = spec.trim();
    if let Some((kind, rest)) = spec.split_once(':') {
        let parts: Vec<&str> = rest.split(':').collect();
        let [lo, hi, n] = parts[..] else {
            return Err(bad(format!("expected {kind}:lo:hi:n, got `{spec}`")));
        };
        let lo = parse_value(field, lo)?;
        let hi = parse_value(field, hi)?;
        let n: usize = n
            .trim()
            .parse()
            .map_err(|_| bad(format!("point count `{n}` is not a positive integer")))?;
        if n == 0 {
            return Err(bad("point count must be positive".into()));
        }
        return match kind {
            "log" => {
                log_grid(lo, hi, n).ok_or_else(|| bad("log grid needs positive bounds".into()))
            }
            "lin" => Ok(lin_grid(lo, hi, n)),
            other => Err(bad(format!("unknown grid kind `{other}` (use log or lin)"))),
        };
    }
    let values = spec
        .split(',')
        .map(|v| parse_value(field, v))
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(bad("empty grid".into()));
    }
    Ok(values)
}

fn parse_value(field: &'static str, text: &str) -> Result<f64, CliError> {
    let v: f64 = text
        .trim()
        .parse()
        .map_err(|_| CliError::config(field, format!("`{text}` is not a number")))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(CliError::config(field, format!("`{text}` is not finite")))
    }
}

/// n points evenly spaced in log; endpoints are exact.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Option<Vec<f64>> {
    if !(lo > 0.0 && hi > 0.0) {
        return None;
    }
    if n == 1 {
        return Some(vec![lo]);
    }
    let (a, b) = (lo.log10(), hi.log10());
    let last = (n - 1) as f64;
    Some(
        (0..n)
            .map(|i| match i {
                0 => lo,
                i if i == n - 1 => hi,
                i => 10f64.powf(a + (b - a) * i as f64 / last),
            })
            .collect(),
    )
}

pub fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return vec![lo];
    }
    let last = (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                hi
            } else {
                lo + (hi - lo) * i as f64 / last
            }
        })
        .collect()
}

//! Text form of a [`SurfaceFunction`].
//!
//! ```text
//! # comment
//! n = 2
//! scale = 1
//! mode k=0 l=1 center=1.5 width=0.4 amp=1,0
//! mode k=3 l=2 center=1.5 width=0.3 amp=0.5,-0.2 poly=1,0.5
//! mode k=1 l=1 samples=0,0;0.4,0;0.9,0.1;0.4,0;0,0
//! ```
//!
//! `amp` is `re,im`; `poly` lists coefficients of `(ρ−center)^j`; `samples` are
//! `re,im` pairs on a uniform grid of `[1, 2]`. A file without `mode` lines is
//! the zero function.

use super::{Mode, ModeIndex, RadialProfile, SurfaceFunction};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::collections::HashMap;
use std::fmt::Write as _;

fn err(line: usize, msg: impl std::fmt::Display) -> Error {
    Error::Config(format!("line {line}: {msg}"))
}

fn parse_f64(line: usize, key: &str, s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|_| err(line, format!("`{key}`: cannot parse `{s}` as a number")))
}

fn parse_complex(line: usize, key: &str, s: &str) -> Result<Complex64> {
    let (re, im) = s.split_once(',').ok_or_else(|| err(line, format!("`{key}` expects `re,im`")))?;
    Ok(Complex64::new(parse_f64(line, key, re)?, parse_f64(line, key, im)?))
}

pub fn parse_surface_function(text: &str) -> Result<SurfaceFunction<f64>> {
    let mut n: Option<usize> = None;
    let mut scale = 1.0;
    let mut pending: Vec<(usize, HashMap<String, String>)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("mode") {
            let mut fields = HashMap::new();
            for tok in rest.split_whitespace() {
                let (k, v) = tok.split_once('=').ok_or_else(|| err(line_no, format!("expected key=value, got `{tok}`")))?;
                if fields.insert(k.to_string(), v.to_string()).is_some() {
                    return Err(err(line_no, format!("duplicate key `{k}`")));
                }
            }
            pending.push((line_no, fields));
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| err(line_no, "expected `key = value`"))?;
        match key.trim() {
            "n" => {
                n = Some(value.trim().parse().map_err(|_| err(line_no, "`n` must be an integer"))?);
            }
            "scale" => scale = parse_f64(line_no, "scale", value)?,
            other => return Err(err(line_no, format!("unknown key `{other}`"))),
        }
    }
    let n = n.ok_or_else(|| Error::Config("missing `n`".into()))?;
    let mut modes = Vec::with_capacity(pending.len());
    for (line_no, mut f) in pending {
        let mut take = |k: &str| f.remove(k);
        let k: usize = take("k")
            .ok_or_else(|| err(line_no, "mode needs `k`"))?
            .parse()
            .map_err(|_| err(line_no, "`k` must be an integer"))?;
        let l: usize = take("l")
            .ok_or_else(|| err(line_no, "mode needs `l`"))?
            .parse()
            .map_err(|_| err(line_no, "`l` must be an integer"))?;
        let index = ModeIndex::new(n, k, l).map_err(|e| err(line_no, e))?;
        let profile = if let Some(samples) = take("samples") {
            let values = samples
                .split(';')
                .map(|s| parse_complex(line_no, "samples", s))
                .collect::<Result<Vec<_>>>()?;
            RadialProfile::sampled(values).map_err(|e| err(line_no, e))?
        } else {
            let center = parse_f64(line_no, "center", &take("center").ok_or_else(|| err(line_no, "mode needs `center`"))?)?;
            let width = parse_f64(line_no, "width", &take("width").ok_or_else(|| err(line_no, "mode needs `width`"))?)?;
            let amp = match take("amp") {
                Some(s) => parse_complex(line_no, "amp", &s)?,
                None => Complex64::new(1.0, 0.0),
            };
            let poly = match take("poly") {
                Some(s) => s.split(',').map(|c| parse_f64(line_no, "poly", c)).collect::<Result<Vec<_>>>()?,
                None => Vec::new(),
            };
            RadialProfile::modulated_bump(center, width, amp, poly).map_err(|e| err(line_no, e))?
        };
        if let Some(extra) = f.keys().next() {
            return Err(err(line_no, format!("unknown mode key `{extra}`")));
        }
        modes.push(Mode { index, profile });
    }
    SurfaceFunction::with_scale(n, modes, scale)
}

pub fn write_surface_function(g: &SurfaceFunction<f64>) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}", g.n());
    let _ = writeln!(s, "scale = {:.17e}", g.scale());
    for m in g.modes() {
        let _ = write!(s, "mode k={} l={}", m.index.k(), m.index.l());
        match &m.profile {
            RadialProfile::Bump { center, width, amplitude, poly } => {
                let _ = write!(s, " center={center:.17e} width={width:.17e} amp={:.17e},{:.17e}", amplitude.re, amplitude.im);
                if !poly.is_empty() {
                    let p: Vec<String> = poly.iter().map(|c| format!("{c:.17e}")).collect();
                    let _ = write!(s, " poly={}", p.join(","));
                }
            }
            RadialProfile::Sampled { values, .. } => {
                let p: Vec<String> = values.iter().map(|v| format!("{:.17e},{:.17e}", v.re, v.im)).collect();
                let _ = write!(s, " samples={}", p.join(";"));
            }
        }
        s.push('\n');
    }
    s
}

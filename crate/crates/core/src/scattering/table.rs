//! Tabulated imaginary-axis reflectivities.
//!
//! File format, one sample per line:
//!
//! ```text
//! # comment
//! units: absolute        (or q-relative: ξ given in units of 1/q)
//! 0.0   -1.0
//! 0.5   -0.8
//! ```

use std::fs;
use std::io;
use std::path::Path;
use std::str::FromStr;

use crate::error::{CasimirError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableUnits {
    Absolute,
    QRelative,
}

impl FromStr for TableUnits {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "absolute" => Ok(TableUnits::Absolute),
            "q-relative" => Ok(TableUnits::QRelative),
            other => Err(format!("unknown units '{other}' (expected absolute or q-relative)")),
        }
    }
}

/// Samples of `r[iξ]` with monotone cubic (Fritsch–Butland) interpolation.
///
/// Below the first abscissa the first value is held; above the last one the
/// amplitude decays as `r_N ξ_N / ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct ReflectivityTable {
    xi: Vec<f64>,
    r: Vec<f64>,
    slopes: Vec<f64>,
    units: TableUnits,
}

fn parse_err(line: usize, msg: impl Into<String>) -> CasimirError {
    CasimirError::Parse { line, msg: msg.into() }
}

impl ReflectivityTable {
    pub fn new(xi: Vec<f64>, r: Vec<f64>, units: TableUnits) -> Result<Self> {
        if xi.len() != r.len() {
            return Err(CasimirError::Domain("xi and r columns differ in length".into()));
        }
        if xi.len() < 2 {
            return Err(CasimirError::Domain("a reflectivity table needs at least two samples".into()));
        }
        for (i, (&x, &v)) in xi.iter().zip(&r).enumerate() {
            if !x.is_finite() || x < 0.0 || !v.is_finite() {
                return Err(CasimirError::Domain(format!("sample {i}: non-finite or negative abscissa")));
            }
            if v.abs() > 1.0 {
                return Err(CasimirError::Domain(format!("sample {i}: |r[i xi]| = {} exceeds 1", v.abs())));
            }
            if i > 0 && x <= xi[i - 1] {
                return Err(CasimirError::Domain(format!("sample {i}: xi must be strictly increasing")));
            }
        }
        let slopes = pchip_slopes(&xi, &r);
        Ok(Self { xi, r, slopes, units })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut units = TableUnits::Absolute;
        let mut xi = Vec::new();
        let mut r = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("units:") {
                units = rest.parse().map_err(|e: String| parse_err(line_no, e))?;
                continue;
            }
            let mut cols = line.split_whitespace();
            let (Some(a), Some(b), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(parse_err(line_no, "expected two columns 'xi r_value'"));
            };
            let x: f64 = a.parse().map_err(|_| parse_err(line_no, format!("bad xi '{a}'")))?;
            let v: f64 = b.parse().map_err(|_| parse_err(line_no, format!("bad r value '{b}'")))?;
            if let Some(&last) = xi.last() {
                if x <= last {
                    return Err(parse_err(line_no, "xi must be strictly increasing"));
                }
            }
            if v.abs() > 1.0 {
                return Err(parse_err(line_no, format!("|r| = {} exceeds 1", v.abs())));
            }
            xi.push(x);
            r.push(v);
        }
        Self::new(xi, r, units)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            fs::read_to_string(path).map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn units(&self) -> TableUnits {
        self.units
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.xi.iter().copied().zip(self.r.iter().copied())
    }

    /// Rescales q-relative abscissae (`ξ q`) to absolute frequencies.
    pub fn to_absolute(&self, q: f64) -> Self {
        match self.units {
            TableUnits::Absolute => self.clone(),
            TableUnits::QRelative => {
                let xi = self.xi.iter().map(|x| x / q).collect::<Vec<_>>();
                let slopes = self.slopes.iter().map(|s| s * q).collect();
                Self { xi, r: self.r.clone(), slopes, units: TableUnits::Absolute }
            }
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xi.len();
        if x <= self.xi[0] {
            return self.r[0];
        }
        if x >= self.xi[n - 1] {
            return self.r[n - 1] * self.xi[n - 1] / x;
        }
        let k = self.xi.partition_point(|&v| v <= x) - 1;
        let h = self.xi[k + 1] - self.xi[k];
        let t = (x - self.xi[k]) / h;
        let (t2, t3) = (t * t, t * t * t);
        let h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
        let h10 = t3 - 2.0 * t2 + t;
        let h01 = -2.0 * t3 + 3.0 * t2;
        let h11 = t3 - t2;
        h00 * self.r[k] + h10 * h * self.slopes[k] + h01 * self.r[k + 1] + h11 * h * self.slopes[k + 1]
    }
}

fn pchip_slopes(x: &[f64], y: &[f64]) -> Vec<f64> {
    let n = x.len();
    let h: Vec<f64> = x.windows(2).map(|w| w[1] - w[0]).collect();
    let delta: Vec<f64> = (0..n - 1).map(|k| (y[k + 1] - y[k]) / h[k]).collect();
    if n == 2 {
        return vec![delta[0]; 2];
    }
    let mut m = vec![0.0; n];
    for k in 1..n - 1 {
        if delta[k - 1] * delta[k] > 0.0 {
            let w1 = 2.0 * h[k] + h[k - 1];
            let w2 = h[k] + 2.0 * h[k - 1];
            m[k] = (w1 + w2) / (w1 / delta[k - 1] + w2 / delta[k]);
        }
    }
    m[0] = end_slope(h[0], h[1], delta[0], delta[1]);
    m[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
    m
}

fn end_slope(h0: f64, h1: f64, d0: f64, d1: f64) -> f64 {
    let d = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
    if d.signum() != d0.signum() {
        0.0
    } else if d0.signum() != d1.signum() && d.abs() > 3.0 * d0.abs() {
        3.0 * d0
    } else {
        d
    }
}

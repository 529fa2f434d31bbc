//! Special functions behind the closed-form limits.
//!
//! * [`polylog`]: the incomplete zeta function `ζ_x(p) = Σ_{ℓ≥1} x^ℓ / ℓ^p`
//!   for `|x| ≤ 1` and integer `p ≥ 2`.
//! * [`bernoulli`]: exact Bernoulli numbers.
//! * [`erlang_weight`]: the density of a sum of `ℓ` exponential delays, used
//!   to collapse the multiple delay integrals of the roundtrip series.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{domain, Result};

/// Argument of the incomplete zeta function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogArg {
    pub x: f64,
    pub p: u32,
}

impl PolylogArg {
    pub fn new(x: f64, p: u32) -> Result<Self> {
        if !x.is_finite() || x.abs() > 1.0 {
            return domain(format!("polylog weight must satisfy |x| <= 1, got {x}"));
        }
        if p < 2 {
            return domain(format!("polylog order must be >= 2, got {p}"));
        }
        Ok(Self { x, p })
    }
}

/// Exact Bernoulli numbers `B_0 ..= B_max` (convention `B_1 = -1/2`).
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    /// Builds the table from the recurrence `Σ_{j=0}^{m} C(m+1, j) B_j = 0`.
    pub fn new(max_order: usize) -> Self {
        let mut values: Vec<BigRational> = Vec::with_capacity(max_order + 1);
        values.push(BigRational::one());
        // binomial row C(m+1, j), updated in place
        let mut row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
        for m in 1..=max_order {
            // row currently holds C(m, .); advance to C(m+1, .)
            let mut next = vec![BigInt::one(); m + 2];
            for j in 1..=m {
                next[j] = &row[j - 1] + &row[j];
            }
            row = next;
            let mut acc = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                acc += BigRational::from_integer(row[j].clone()) * b;
            }
            let denom = BigRational::from_integer(row[m].clone());
            values.push(-acc / denom);
        }
        Self { values }
    }

    pub fn max_order(&self) -> usize {
        self.values.len() - 1
    }

    pub fn get(&self, k: usize) -> Option<&BigRational> {
        self.values.get(k)
    }

    pub fn get_f64(&self, k: usize) -> Option<f64> {
        self.values.get(k).map(rational_to_f64)
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => r.to_f64().unwrap_or(f64::NAN),
    }
}

const BERNOULLI_CACHE_ORDER: usize = 120;

fn bernoulli_f64_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let t = BernoulliTable::new(BERNOULLI_CACHE_ORDER);
        (0..=BERNOULLI_CACHE_ORDER).map(|k| t.get_f64(k).unwrap()).collect()
    })
}

/// Floating-point `B_k` from the cached exact table. Out-of-range orders return `None`.
pub(crate) fn bernoulli_f64(k: usize) -> Option<f64> {
    bernoulli_f64_table().get(k).copied()
}

/// Exact Bernoulli number `B_k` for even `k ≥ 2`.
pub fn bernoulli(k: usize) -> Result<BigRational> {
    if k < 2 || !k.is_multiple_of(2) {
        return domain(format!("bernoulli order must be even and >= 2, got {k}"));
    }
    let table = BernoulliTable::new(k);
    Ok(table.get(k).cloned().expect("table built up to k"))
}

/// `ζ_x(p)` with relative tolerance `tol`.
pub fn polylog(arg: PolylogArg, tol: f64) -> Result<f64> {
    polylog_with_error(arg, tol).map(|(v, _)| v)
}

/// `ζ_x(p)` together with an estimate of the absolute truncation error.
pub fn polylog_with_error(arg: PolylogArg, tol: f64) -> Result<(f64, f64)> {
    let PolylogArg { x, p } = PolylogArg::new(arg.x, arg.p)?;
    if !(tol > 0.0) {
        return domain(format!("polylog tolerance must be positive, got {tol}"));
    }
    Ok(polylog_unchecked(x, p, tol))
}

fn polylog_unchecked(x: f64, p: u32, tol: f64) -> (f64, f64) {
    if x == 0.0 {
        (0.0, 0.0)
    } else if x == 1.0 {
        zeta_with_error(p, tol)
    } else if x == -1.0 {
        // alternating series: ζ_{-1}(p) = -(1 - 2^{1-p}) ζ(p)
        let (z, e) = zeta_with_error(p, tol);
        let f = 1.0 - 2f64.powi(1 - p as i32);
        (-f * z, f * e)
    } else if x.abs() <= 0.5 {
        direct_sum(x, p, tol)
    } else if x > 0.0 {
        log_series(x, p, tol)
    } else {
        // duplication: ζ_{-y}(p) = 2^{1-p} ζ_{y²}(p) - ζ_y(p)
        let y = -x;
        let scale = 2f64.powi(1 - p as i32);
        let (a, ea) = polylog_unchecked(y * y, p, tol * 0.25);
        let (b, eb) = polylog_unchecked(y, p, tol * 0.25);
        (scale * a - b, scale * ea + eb)
    }
}

/// Partial sum until the geometric tail bound `|x|^{L+1} / ((L+1)^p (1-|x|))`
/// drops below `tol` relative to the sum. Returns the sum and that bound.
fn direct_sum(x: f64, p: u32, tol: f64) -> (f64, f64) {
    let ax = x.abs();
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut power = 1.0;
    let mut ell: u64 = 0;
    loop {
        ell += 1;
        power *= x;
        let term = power / (ell as f64).powi(p as i32);
        // Kahan
        let y = term - comp;
        let t = sum + y;
        comp = (t - sum) - y;
        sum = t;
        let next = (ell + 1) as f64;
        let bound = (power.abs() * ax) / (next.powi(p as i32) * (1.0 - ax));
        if bound <= tol * sum.abs() || bound < f64::MIN_POSITIVE {
            return (sum, bound);
        }
    }
}

/// `ζ(p)` for integer `p ≥ 2`: partial sum to `N` plus the Euler–Maclaurin
/// tail starting with the integral `∫_N^∞ t^{-p} dt`.
fn zeta_with_error(p: u32, tol: f64) -> (f64, f64) {
    const N: u32 = 16;
    let pf = p as f64;
    let n = N as f64;
    let mut head = 0.0;
    for ell in (1..=N).rev() {
        head += (ell as f64).powf(-pf);
    }
    // Σ_{ℓ>N} ℓ^{-p} = N^{1-p}/(p-1) - N^{-p}/2 + Σ_k B_{2k}/(2k)! (p)_{2k-1} N^{-p-2k+1}
    let mut tail = n.powf(1.0 - pf) / (pf - 1.0) - 0.5 * n.powf(-pf);
    let mut rising = pf; // (p)_{2k-1} for k = 1
    let mut fact = 2.0; // (2k)!
    let mut err = f64::INFINITY;
    for k in 1..=(BERNOULLI_CACHE_ORDER / 2 - 1) {
        let b = bernoulli_f64(2 * k).unwrap();
        let term = b / fact * rising * n.powf(-pf - (2 * k) as f64 + 1.0);
        if term.abs() >= err {
            // asymptotic series started to diverge
            break;
        }
        tail += term;
        err = term.abs();
        if err <= 0.01 * tol * (head + tail) {
            break;
        }
        let m = (2 * k) as f64;
        rising *= (pf + m - 1.0) * (pf + m);
        fact *= (m + 1.0) * (m + 2.0);
    }
    (head + tail, err)
}

fn zeta_value(p: u32) -> f64 {
    zeta_with_error(p, 1e-17).0
}

/// Riemann zeta at non-positive integers: `ζ(0) = -1/2`, `ζ(-n) = -B_{n+1}/(n+1)`.
fn zeta_nonpositive(n: usize) -> f64 {
    if n == 0 {
        -0.5
    } else {
        -bernoulli_f64(n + 1).unwrap_or(0.0) / (n as f64 + 1.0)
    }
}

/// Expansion of `ζ_x(p)` in `μ = ln x` around `x = 1`, convergent for `|μ| < 2π`:
///
/// `Σ_{k≠p-1} ζ(p-k) μ^k / k! + μ^{p-1}/(p-1)! (H_{p-1} - ln(-μ))`.
fn log_series(x: f64, p: u32, tol: f64) -> (f64, f64) {
    let mu = x.ln();
    let pu = p as usize;
    let mut sum = 0.0;
    let mut last = f64::INFINITY;
    let mut mu_pow = 1.0; // μ^k / k!
    let mut k = 0usize;
    loop {
        let term = if k + 1 == pu {
            let harmonic: f64 = (1..pu).map(|j| 1.0 / j as f64).sum();
            mu_pow * (harmonic - (-mu).ln())
        } else if k + 1 < pu {
            zeta_value((pu - k) as u32) * mu_pow
        } else {
            let n = k - pu;
            if n + 1 > BERNOULLI_CACHE_ORDER {
                break;
            }
            zeta_nonpositive(n) * mu_pow
        };
        sum += term;
        if k >= pu && term.abs() <= 0.01 * tol * sum.abs() && term != 0.0 {
            last = term.abs();
            break;
        }
        if term != 0.0 {
            last = term.abs();
        }
        k += 1;
        mu_pow *= mu / k as f64;
    }
    (sum, last)
}

/// Riemann zeta function at integer `p ≥ 2`.
pub fn zeta(p: u32) -> Result<f64> {
    polylog(PolylogArg::new(1.0, p)?, 1e-15)
}

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 32 {
        return (2..=n).map(|k| (k as f64).ln()).sum();
    }
    // Stirling series for ln Γ(z), z = n + 1
    let z = n as f64 + 1.0;
    let mut s = (z - 0.5) * z.ln() - z + 0.5 * (2.0 * PI).ln();
    let mut zpow = z;
    for k in 1..=8usize {
        let b = bernoulli_f64(2 * k).unwrap();
        s += b / ((2 * k) as f64 * (2 * k - 1) as f64 * zpow);
        zpow *= z * z;
    }
    s
}

/// Density of the sum of `ell` independent exponential delays of rate `rate`:
/// `rate^ℓ s^{ℓ-1} e^{-rate s} / (ℓ-1)!`.
pub fn erlang_weight(ell: u32, rate: f64, s: f64) -> Result<f64> {
    if ell < 1 {
        return domain("erlang_weight needs ell >= 1");
    }
    if !(rate > 0.0) || !rate.is_finite() {
        return domain(format!("erlang_weight rate must be positive, got {rate}"));
    }
    if !(s >= 0.0) {
        return domain(format!("erlang_weight time must be >= 0, got {s}"));
    }
    if s == 0.0 {
        return Ok(if ell == 1 { rate } else { 0.0 });
    }
    let l = ell as f64;
    let ln = l * rate.ln() + (l - 1.0) * s.ln() - rate * s - ln_factorial(ell as u64 - 1);
    Ok(ln.exp())
}

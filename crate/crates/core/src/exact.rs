//! Reference solutions of Burgers' equation and the modified Bessel
//! functions of the first kind they need.

use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Below this argument `bessel_i` sums the ascending series directly.
const SERIES_LIMIT: f64 = 12.0;

/// `sine_wave_exact` refuses a denominator smaller than this many rounding
/// units of the summed term magnitudes.
const CONDITION_LIMIT: f64 = 1e6;

/// Truncation policy for the Fourier-Bessel series of the sine problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesControl {
    pub abs_tol: f64,
    pub max_terms: usize,
}

impl Default for SeriesControl {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_terms: 500,
        }
    }
}

impl SeriesControl {
    pub fn new(abs_tol: f64, max_terms: usize) -> Result<Self> {
        if !(abs_tol > 0.0) {
            return Err(Error::domain(format!("abs_tol must be > 0, got {abs_tol}")));
        }
        if max_terms == 0 {
            return Err(Error::domain("max_terms must be >= 1"));
        }
        Ok(Self { abs_tol, max_terms })
    }
}

/// Modified Bessel function of the first kind `I_order(z)`, `z >= 0`.
///
/// Small arguments use the ascending series; larger ones use Miller's
/// backward recurrence normalised with `I_0 + 2 sum_k I_k = e^z`.
pub fn bessel_i(order: u32, z: f64) -> Result<f64> {
    if !(z >= 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("bessel_i needs finite z >= 0, got {z}")));
    }
    if z == 0.0 {
        return Ok(if order == 0 { 1.0 } else { 0.0 });
    }
    if z <= SERIES_LIMIT {
        Ok(bessel_i_series(order, z))
    } else {
        bessel_i_miller(order, z)
    }
}

fn bessel_i_series(order: u32, z: f64) -> f64 {
    let half = 0.5 * z;
    let q = half * half;
    // (z/2)^n / n!
    let mut lead = 1.0;
    for k in 1..=order {
        lead *= half / k as f64;
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    let n = order as f64;
    for k in 1..500 {
        let kf = k as f64;
        term *= q / (kf * (kf + n));
        sum += term;
        if term < 1e-17 * sum {
            break;
        }
    }
    lead * sum
}

fn bessel_i_miller(order: u32, z: f64) -> Result<f64> {
    let n = order as usize;
    let span = (order as f64).max(z);
    let start = n.max(z.ceil() as usize) + 40 + (10.0 * span.sqrt()) as usize;
    let two_over_z = 2.0 / z;

    let mut above = 0.0; // I_{k+1}
    let mut cur = 1e-280; // I_k
    let mut at_order = 0.0;
    let mut tail = 0.0; // sum_{k>=1} I_k
    for k in (1..=start).rev() {
        if k == n {
            at_order = cur;
        }
        tail += cur;
        let below = above + k as f64 * two_over_z * cur;
        above = cur;
        cur = below;
        if cur > 1e250 {
            above *= 1e-250;
            cur *= 1e-250;
            at_order *= 1e-250;
            tail *= 1e-250;
        }
    }
    if n == 0 {
        at_order = cur;
    }
    let norm = cur + 2.0 * tail;
    let log_value = z + (at_order / norm).ln();
    let value = log_value.exp();
    if !value.is_finite() {
        return Err(Error::Overflow(format!(
            "I_{order}({z}) exceeds the f64 range; use bessel_i_ratio"
        )));
    }
    Ok(value)
}

/// `I_j(z) / I_0(z)` for `j = 0..=max_order`, computed from the continued
/// fraction for `I_k / I_{k-1}` without forming either function.
pub fn bessel_i_ratios(max_order: usize, z: f64) -> Result<Vec<f64>> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::domain(format!("bessel_i_ratios needs finite z > 0, got {z}")));
    }
    let start = max_order + z.ceil() as usize + 60;
    let two_over_z = 2.0 / z;
    // consecutive[k] = I_k / I_{k-1}
    let mut consecutive = vec![0.0; max_order + 1];
    let mut r = 0.0;
    for k in (1..=start).rev() {
        r = 1.0 / (k as f64 * two_over_z + r);
        if k <= max_order {
            consecutive[k] = r;
        }
    }
    let mut out = Vec::with_capacity(max_order + 1);
    let mut acc = 1.0;
    out.push(acc);
    for &c in &consecutive[1..] {
        acc *= c;
        out.push(acc);
    }
    Ok(out)
}

/// `I_order(z) / I_0(z)`.
pub fn bessel_i_ratio(order: usize, z: f64) -> Result<f64> {
    Ok(bessel_i_ratios(order, z)?[order])
}

/// Cole-Hopf series solution for `U(x, 0) = sin(pi x)` on `[0, 1]` with
/// homogeneous Dirichlet data.
///
/// Both sums are written in terms of `I_j / I_0` at `1 / (2 pi lambda)`,
/// which keeps the evaluation finite for small viscosities. At `t = 0` the
/// initial profile is returned.
///
/// For small `lambda` and early times the denominator is exponentially small
/// compared with its terms; when cancellation would leave fewer than about six
/// correct digits, `Error::IllConditioned` is returned.
pub fn sine_wave_exact(x: f64, t: f64, lambda: f64, ctl: SeriesControl) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("x = {x} outside [0, 1]")));
    }
    if !(t >= 0.0) {
        return Err(Error::domain(format!("t = {t} must be >= 0")));
    }
    if !(lambda > 0.0) {
        return Err(Error::domain(format!("lambda = {lambda} must be > 0")));
    }
    if t == 0.0 {
        return Ok((PI * x).sin());
    }
    // every sin(j pi x) vanishes
    if x == 0.0 || x == 1.0 {
        return Ok(0.0);
    }
    let z = 1.0 / (2.0 * PI * lambda);
    let ratios = bessel_i_ratios(ctl.max_terms, z)?;
    let decay_rate = PI * PI * lambda * t;

    let mut num = 0.0;
    let mut den = 0.0;
    let mut scale = 1.0;
    let mut last = f64::INFINITY;
    for (j, &ratio) in ratios.iter().enumerate().skip(1) {
        let jf = j as f64;
        let weight = ratio * (-jf * jf * decay_rate).exp();
        let angle = jf * PI * x;
        num += jf * weight * angle.sin();
        den += weight * angle.cos();
        scale += 2.0 * weight;
        last = jf * weight;
        if jf * weight < ctl.abs_tol && weight < ctl.abs_tol {
            let denominator = 1.0 + 2.0 * den;
            if denominator.abs() < CONDITION_LIMIT * f64::EPSILON * scale * jf.sqrt() {
                return Err(Error::IllConditioned { denominator, scale });
            }
            return Ok(4.0 * PI * lambda * num / denominator);
        }
    }
    Err(Error::NonConvergence {
        max_terms: ctl.max_terms,
        last_term: last,
    })
}

/// Parameters of the travelling-wave solution
/// `U = (a + m + (m - a) e^eta) / (1 + e^eta)`, `eta = a (x - m t - g) / lambda`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TravelingWave {
    pub alpha: f64,
    pub mu: f64,
    pub gamma: f64,
    pub lambda: f64,
}

impl TravelingWave {
    pub fn new(alpha: f64, mu: f64, gamma: f64, lambda: f64) -> Result<Self> {
        if !(lambda > 0.0) {
            return Err(Error::domain(format!("lambda = {lambda} must be > 0")));
        }
        if !(alpha.is_finite() && mu.is_finite() && gamma.is_finite()) {
            return Err(Error::domain("travelling-wave parameters must be finite"));
        }
        Ok(Self {
            alpha,
            mu,
            gamma,
            lambda,
        })
    }

    fn eta(&self, x: f64, t: f64) -> f64 {
        self.alpha * (x - self.mu * t - self.gamma) / self.lambda
    }

    /// The closed form rewritten as `mu - alpha tanh(eta / 2)`, which tends to
    /// `mu -+ alpha` without overflow as `eta -> +-inf`.
    pub fn value(&self, x: f64, t: f64) -> f64 {
        self.mu - self.alpha * (0.5 * self.eta(x, t)).tanh()
    }

    /// `dU/dx`.
    pub fn slope(&self, x: f64, t: f64) -> f64 {
        let c = (0.5 * self.eta(x, t)).cosh();
        -0.5 * self.alpha * self.alpha / self.lambda / (c * c)
    }

    /// Position of the front centre `eta = 0` at time `t`.
    pub fn front(&self, t: f64) -> f64 {
        self.mu * t + self.gamma
    }
}

pub fn traveling_wave_exact(x: f64, t: f64, alpha: f64, mu: f64, gamma: f64, lambda: f64) -> f64 {
    TravelingWave {
        alpha,
        mu,
        gamma,
        lambda,
    }
    .value(x, t)
}

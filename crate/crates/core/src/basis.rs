//! Cubic trigonometric B-splines on a uniform partition.
//!
//! The basis function `CTB_i` is centred on knot `x_i` and supported on
//! `[x_{i-2}, x_{i+2}]`. On each of its four cells it is a product of three
//! half-angle sine factors
//!
//! ```text
//! w_j(x) = sin((x - x_j) / 2),    p_j(x) = sin((x_j - x) / 2)
//! ```
//!
//! scaled by `1 / (sin(h/2) sin(h) sin(3h/2))`. Derivatives are obtained by
//! carrying value, first and second derivative of every factor through the
//! products (see [`Jet`]), so they are exact up to rounding.
//!
//! An independent evaluation path is the trigonometric de Boor style
//! recurrence in [`trig_bspline`]; with the same uniform knots the order-4
//! function starting at `x_{i-2}` coincides with `CTB_i`.

use std::f64::consts::PI;
use std::ops::{Add, Mul};

use crate::error::{Error, Result};

/// Uniform partition `a = x_0 < x_1 < ... < x_N = b`, with extension knots
/// on both sides obtained from the same spacing.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformPartition {
    a: f64,
    b: f64,
    n_cells: usize,
    h: f64,
}

impl UniformPartition {
    pub fn new(a: f64, b: f64, n_cells: usize) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::domain("partition endpoints must be finite"));
        }
        if b <= a {
            return Err(Error::domain(format!("empty interval [{a}, {b}]")));
        }
        if n_cells < 3 {
            return Err(Error::domain(format!(
                "need at least 3 cells, got {n_cells}"
            )));
        }
        let h = (b - a) / n_cells as f64;
        check_spacing(h)?;
        Ok(Self { a, b, n_cells, h })
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of cells `N`.
    #[inline]
    pub fn n_cells(&self) -> usize {
        self.n_cells
    }

    #[inline]
    pub fn h(&self) -> f64 {
        self.h
    }

    /// `x_i = a + i h`; valid for any integer `i`, including extension knots.
    #[inline]
    pub fn knot(&self, i: isize) -> f64 {
        self.a + i as f64 * self.h
    }

    /// Interior and boundary knots `x_0 ..= x_N`.
    pub fn knots(&self) -> Vec<f64> {
        (0..=self.n_cells as isize).map(|i| self.knot(i)).collect()
    }

    /// Index of the knot equal to `x` within `tol`, if any.
    pub fn knot_index(&self, x: f64, tol: f64) -> Option<usize> {
        let i = ((x - self.a) / self.h).round();
        if i < 0.0 || i > self.n_cells as f64 {
            return None;
        }
        let i = i as usize;
        ((self.knot(i as isize) - x).abs() <= tol).then_some(i)
    }

    /// Basis function `CTB_i(x)`.
    pub fn ctb(&self, i: isize, x: f64) -> f64 {
        centered_jet(x - self.knot(i), self.h).value
    }

    /// First (`order == 1`) or second (`order == 2`) derivative of `CTB_i`.
    ///
    /// # Panics
    ///
    /// Panics on any other order.
    pub fn ctb_deriv(&self, i: isize, x: f64, order: u8) -> f64 {
        let jet = centered_jet(x - self.knot(i), self.h);
        match order {
            1 => jet.d1,
            2 => jet.d2,
            _ => panic!("ctb_deriv supports orders 1 and 2, got {order}"),
        }
    }

    /// Value and first two derivatives of `CTB_i` at `x` in one pass.
    pub fn ctb_jet(&self, i: isize, x: f64) -> Jet {
        centered_jet(x - self.knot(i), self.h)
    }
}

fn check_spacing(h: f64) -> Result<()> {
    if !(h > 0.0 && h < 2.0 * PI / 3.0) {
        return Err(Error::domain(format!(
            "mesh spacing h = {h} outside (0, 2*pi/3)"
        )));
    }
    if normalizer(h) == 0.0 {
        return Err(Error::domain(format!("normaliser vanishes for h = {h}")));
    }
    Ok(())
}

/// `sin(h/2) sin(h) sin(3h/2)`.
#[inline]
fn normalizer(h: f64) -> f64 {
    (0.5 * h).sin() * h.sin() * (1.5 * h).sin()
}

/// Value and first two derivatives of a function at a point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub value: f64,
    pub d1: f64,
    pub d2: f64,
}

impl Jet {
    /// `sin((x - c) / 2)` seen as a function of `x`, evaluated at `x`.
    #[inline]
    fn half_sine(arg: f64) -> Jet {
        let (s, c) = (0.5 * arg).sin_cos();
        Jet {
            value: s,
            d1: 0.5 * c,
            d2: -0.25 * s,
        }
    }

    /// `w_j`: rising factor `sin((x - x_j) / 2)`, given `x - x_j`.
    #[inline]
    fn rising(dx: f64) -> Jet {
        Self::half_sine(dx)
    }

    /// `p_j`: falling factor `sin((x_j - x) / 2)`, given `x - x_j`.
    #[inline]
    fn falling(dx: f64) -> Jet {
        let j = Self::half_sine(-dx);
        Jet {
            value: j.value,
            d1: -j.d1,
            d2: j.d2,
        }
    }

    #[inline]
    fn scale(self, k: f64) -> Jet {
        Jet {
            value: k * self.value,
            d1: k * self.d1,
            d2: k * self.d2,
        }
    }
}

impl Add for Jet {
    type Output = Jet;
    #[inline]
    fn add(self, o: Jet) -> Jet {
        Jet {
            value: self.value + o.value,
            d1: self.d1 + o.d1,
            d2: self.d2 + o.d2,
        }
    }
}

impl Mul for Jet {
    type Output = Jet;
    #[inline]
    fn mul(self, o: Jet) -> Jet {
        Jet {
            value: self.value * o.value,
            d1: self.d1 * o.value + self.value * o.d1,
            d2: self.d2 * o.value + 2.0 * self.d1 * o.d1 + self.value * o.d2,
        }
    }
}

/// Closed-form piecewise `CTB` centred at 0 with knots at `k h`, `k = -2..=2`.
/// `s` is the offset from the centre knot.
fn centered_jet(s: f64, h: f64) -> Jet {
    if !(s > -2.0 * h && s < 2.0 * h) {
        return Jet::default();
    }
    // offsets of x from the knots x_{i-2} .. x_{i+2}
    let d = |k: i32| s - k as f64 * h;
    let w = |k: i32| Jet::rising(d(k));
    let p = |k: i32| Jet::falling(d(k));

    let piece = if s < -h {
        let w0 = w(-2);
        w0 * w0 * w0
    } else if s < 0.0 {
        let wm2 = w(-2);
        let wm1 = w(-1);
        wm2 * (wm2 * p(0) + p(1) * wm1) + p(2) * wm1 * wm1
    } else if s < h {
        let p1 = p(1);
        let p2 = p(2);
        w(-2) * p1 * p1 + p2 * (w(-1) * p1 + p2 * w(0))
    } else {
        let p2 = p(2);
        p2 * p2 * p2
    };
    piece.scale(1.0 / normalizer(h))
}

/// Knot values of `CTB_i` and its first two derivatives, as used by the
/// collocation scheme:
///
/// ```text
/// U_i   = alpha1 d_{i-1} + alpha2 d_i + alpha1 d_{i+1}
/// U_i'  = beta1  d_{i-1}              + beta2  d_{i+1}
/// U_i'' = gamma1 d_{i-1} + gamma2 d_i + gamma1 d_{i+1}
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeCoefficients {
    pub alpha1: f64,
    pub alpha2: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub gamma1: f64,
    pub gamma2: f64,
}

impl SchemeCoefficients {
    /// Coefficients for mesh spacing `h`, `0 < h < 2*pi/3`.
    ///
    /// `gamma2` is the second derivative of the closed form at its centre
    /// knot. It coincides with `-3 cot^2(h/2) / (2 + 4 cos h)`; the variant
    /// with `cot^2(3h/2)` does not (see tests).
    pub fn for_spacing(h: f64) -> Result<Self> {
        check_spacing(h)?;
        let half = 0.5 * h;
        let csc_3half = 1.0 / (1.5 * h).sin();
        let alpha1 = half.sin().powi(2) / h.sin() * csc_3half;
        let alpha2 = 2.0 / (1.0 + 2.0 * h.cos());
        let beta2 = 0.75 * csc_3half;
        let gamma1 = 3.0 * (1.0 + 3.0 * h.cos()) / half.sin().powi(2)
            / (16.0 * (2.0 * half.cos() + (1.5 * h).cos()));
        let gamma2 = centered_jet(0.0, h).d2;
        Ok(Self {
            alpha1,
            alpha2,
            beta1: -beta2,
            beta2,
            gamma1,
            gamma2,
        })
    }

    pub fn for_partition(p: &UniformPartition) -> Self {
        Self::for_spacing(p.h()).expect("partition spacing was validated on construction")
    }
}

/// Order-`k` trigonometric B-spline `T_i^k(x)` by the two-term recurrence
/// from the order-1 indicator of `[x_i, x_{i+1})`.
///
/// `T_{i-2}^4` equals `CTB_i` on the same partition.
pub fn trig_bspline(i: isize, k: usize, x: f64, p: &UniformPartition) -> Result<f64> {
    if k == 0 {
        return Err(Error::domain("trigonometric B-spline order must be >= 1"));
    }
    if k == 1 {
        let inside = x >= p.knot(i) && x < p.knot(i + 1);
        return Ok(if inside { 1.0 } else { 0.0 });
    }
    let k_i = k as isize;
    let left_den = (0.5 * (p.knot(i + k_i - 1) - p.knot(i))).sin();
    let right_den = (0.5 * (p.knot(i + k_i) - p.knot(i + 1))).sin();
    if left_den.abs() < f64::EPSILON || right_den.abs() < f64::EPSILON {
        return Err(Error::domain(format!(
            "vanishing recurrence denominator at order {k}, h = {}",
            p.h()
        )));
    }
    let left = (0.5 * (x - p.knot(i))).sin() / left_den * trig_bspline(i, k - 1, x, p)?;
    let right =
        (0.5 * (p.knot(i + k_i) - x)).sin() / right_den * trig_bspline(i + 1, k - 1, x, p)?;
    Ok(left + right)
}

//! Pointwise errors, discrete norms and fixed-precision comparison tables.

use std::fmt;

use crate::basis::UniformPartition;
use crate::error::{Error, Result};
use crate::scheme::{NodalState, Snapshot};

/// Tolerance for matching a requested abscissa to a knot.
pub const KNOT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointError {
    pub x: f64,
    pub t: f64,
    pub numerical: f64,
    pub exact: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ErrorReport {
    pub l_inf: f64,
    /// `sqrt(h sum e_i^2)` over the knots.
    pub l2: f64,
    pub pointwise: Vec<PointError>,
}

impl ErrorReport {
    /// Knot with the largest error.
    pub fn worst(&self) -> Option<&PointError> {
        self.pointwise
            .iter()
            .max_by(|a, b| a.abs_error.total_cmp(&b.abs_error))
    }
}

/// Errors of `num` against `exact_fn(x)` at every knot of `part`. A NaN
/// reference value makes both norms NaN.
pub fn error_norms<F>(
    num: &NodalState,
    exact_fn: F,
    t: f64,
    part: &UniformPartition,
) -> Result<ErrorReport>
where
    F: Fn(f64) -> Result<f64>,
{
    if num.u.len() != part.n_cells() + 1 {
        return Err(Error::domain(format!(
            "nodal state has {} values for {} knots",
            num.u.len(),
            part.n_cells() + 1
        )));
    }
    let mut pointwise = Vec::with_capacity(num.u.len());
    let mut l_inf = 0.0_f64;
    let mut sq = 0.0;
    for (i, &numerical) in num.u.iter().enumerate() {
        let x = part.knot(i as isize);
        let exact = exact_fn(x)?;
        let abs_error = (numerical - exact).abs();
        if abs_error.is_nan() || abs_error > l_inf {
            l_inf = abs_error;
        }
        sq += abs_error * abs_error;
        pointwise.push(PointError {
            x,
            t,
            numerical,
            exact,
            abs_error,
        });
    }
    Ok(ErrorReport {
        l_inf,
        l2: (part.h() * sq).sqrt(),
        pointwise,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TableRow {
    pub x: f64,
    pub t: f64,
    pub present: f64,
    pub exact: f64,
}

/// Solution values at selected knots and times, rendered with a fixed number
/// of decimals. Rows are ordered by `x`, then `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub decimals: usize,
    pub rows: Vec<TableRow>,
}

impl fmt::Display for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = self.decimals + 4;
        writeln!(f, "{:>7} {:>7} {:>w$} {:>w$}", "x", "t", "present", "exact")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>7.3} {:>7.3} {:>w$.d$} {:>w$.d$}",
                r.x,
                r.t,
                r.present,
                r.exact,
                d = self.decimals
            )?;
        }
        Ok(())
    }
}

/// Tabulates `states` at `sample_xs`, which must be knots of `part`.
pub fn table_report<F>(
    states: &[Snapshot],
    sample_xs: &[f64],
    part: &UniformPartition,
    exact_fn: F,
    decimals: usize,
) -> Result<Table>
where
    F: Fn(f64, f64) -> Result<f64>,
{
    let indices = sample_xs
        .iter()
        .map(|&x| part.knot_index(x, KNOT_TOL).ok_or(Error::NotAKnot(x)))
        .collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(indices.len() * states.len());
    for (&x, &i) in sample_xs.iter().zip(&indices) {
        for snap in states {
            rows.push(TableRow {
                x,
                t: snap.time,
                present: snap.state.u[i],
                exact: exact_fn(x, snap.time)?,
            });
        }
    }
    Ok(Table { decimals, rows })
}

/// Decimal rendering with `digits` significant digits, no exponent.
pub fn format_significant(v: f64, digits: usize) -> String {
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let magnitude = v.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{v:.decimals$}")
}

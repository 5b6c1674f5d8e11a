//! Direct solvers for the banded systems produced by the collocation scheme.
//!
//! Neither solver pivots. The time-stepping matrices are diagonally dominant
//! for the parameter ranges of interest; a vanishing pivot is reported as
//! [`Error::ZeroPivot`] with the offending row.

use crate::error::{Error, Result};

const PIVOT_EPS: f64 = 1e-300;

/// `sub[i-1] x[i-1] + diag[i] x[i] + sup[i] x[i+1] = rhs[i]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagonalSystem {
    pub sub: Vec<f64>,
    pub diag: Vec<f64>,
    pub sup: Vec<f64>,
    pub rhs: Vec<f64>,
}

impl TridiagonalSystem {
    pub fn new(sub: Vec<f64>, diag: Vec<f64>, sup: Vec<f64>, rhs: Vec<f64>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::domain("empty tridiagonal system"));
        }
        if sub.len() != n - 1 || sup.len() != n - 1 || rhs.len() != n {
            return Err(Error::domain(format!(
                "inconsistent tridiagonal lengths: sub {}, diag {n}, sup {}, rhs {}",
                sub.len(),
                sup.len(),
                rhs.len()
            )));
        }
        Ok(Self { sub, diag, sup, rhs })
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// `A x`.
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut s = self.diag[i] * x[i];
                if i > 0 {
                    s += self.sub[i - 1] * x[i - 1];
                }
                if i + 1 < n {
                    s += self.sup[i] * x[i + 1];
                }
                s
            })
            .collect()
    }
}

/// Thomas algorithm: forward elimination followed by back substitution.
pub fn thomas_solve(sys: &TridiagonalSystem) -> Result<Vec<f64>> {
    let n = sys.len();
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];

    let mut pivot = sys.diag[0];
    if pivot.abs() < PIVOT_EPS {
        return Err(Error::ZeroPivot { row: 0, pivot });
    }
    if n > 1 {
        c[0] = sys.sup[0] / pivot;
    }
    d[0] = sys.rhs[0] / pivot;
    for i in 1..n {
        pivot = sys.diag[i] - sys.sub[i - 1] * c[i - 1];
        if pivot.abs() < PIVOT_EPS || !pivot.is_finite() {
            return Err(Error::ZeroPivot { row: i, pivot });
        }
        if i + 1 < n {
            c[i] = sys.sup[i] / pivot;
        }
        d[i] = (sys.rhs[i] - sys.sub[i - 1] * d[i - 1]) / pivot;
    }

    for i in (0..n - 1).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

/// Half bandwidth of [`BandedSystem`].
pub const HALF_BAND: usize = 2;

/// Square system with nonzeros only on diagonals `-2..=2`.
///
/// `bands[i][k]` is the coefficient of `x[i + k - 2]`; entries that would
/// fall outside the matrix are ignored.
#[derive(Debug, Clone, PartialEq)]
pub struct BandedSystem {
    pub bands: Vec<[f64; 2 * HALF_BAND + 1]>,
    pub rhs: Vec<f64>,
}

impl BandedSystem {
    pub fn zeros(n: usize) -> Self {
        Self {
            bands: vec![[0.0; 2 * HALF_BAND + 1]; n],
            rhs: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    /// Sets `A[row][col]`.
    ///
    /// # Panics
    ///
    /// Panics if `col` is outside the band of `row`.
    pub fn set(&mut self, row: usize, col: usize, value: f64) {
        let k = col as isize - row as isize + HALF_BAND as isize;
        assert!(
            (0..=2 * HALF_BAND as isize).contains(&k) && col < self.len(),
            "entry ({row}, {col}) outside the band"
        );
        self.bands[row][k as usize] = value;
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let k = col as isize - row as isize + HALF_BAND as isize;
        if (0..=2 * HALF_BAND as isize).contains(&k) && col < self.len() {
            self.bands[row][k as usize]
        } else {
            0.0
        }
    }

    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let lo = i.saturating_sub(HALF_BAND);
                let hi = (i + HALF_BAND).min(n - 1);
                (lo..=hi).map(|j| self.get(i, j) * x[j]).sum()
            })
            .collect()
    }
}

impl From<&TridiagonalSystem> for BandedSystem {
    fn from(t: &TridiagonalSystem) -> Self {
        let n = t.len();
        let mut b = BandedSystem::zeros(n);
        for i in 0..n {
            b.set(i, i, t.diag[i]);
            if i > 0 {
                b.set(i, i - 1, t.sub[i - 1]);
            }
            if i + 1 < n {
                b.set(i, i + 1, t.sup[i]);
            }
        }
        b.rhs.clone_from(&t.rhs);
        b
    }
}

/// Gaussian elimination restricted to the band, without pivoting.
pub fn banded_solve(sys: &BandedSystem) -> Result<Vec<f64>> {
    let n = sys.len();
    if n == 0 {
        return Err(Error::domain("empty banded system"));
    }
    let mut a = sys.bands.clone();
    let mut rhs = sys.rhs.clone();
    let w = HALF_BAND;
    // a[r][c - r + w] addresses A[r][c]
    for k in 0..n {
        let pivot = a[k][w];
        if pivot.abs() < PIVOT_EPS || !pivot.is_finite() {
            return Err(Error::ZeroPivot { row: k, pivot });
        }
        for r in (k + 1)..(k + w + 1).min(n) {
            let factor = a[r][k + w - r] / pivot;
            if factor == 0.0 {
                continue;
            }
            for c in k..(k + w + 1).min(n) {
                a[r][c + w - r] -= factor * a[k][c + w - k];
            }
            rhs[r] -= factor * rhs[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let mut s = rhs[k];
        for c in (k + 1)..(k + w + 1).min(n) {
            s -= a[k][c + w - k] * x[c];
        }
        x[k] = s / a[k][w];
    }
    Ok(x)
}

/// `max_i |(A x - rhs)_i|`.
pub fn residual_inf(ax: &[f64], rhs: &[f64]) -> f64 {
    ax.iter()
        .zip(rhs)
        .map(|(l, r)| (l - r).abs())
        .fold(0.0, f64::max)
}

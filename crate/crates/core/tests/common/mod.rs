#![allow(dead_code, clippy::needless_range_loop)]

use ctb_burgers::basis::UniformPartition;
use ctb_burgers::scheme::{CoefficientVector, ProblemSpec};

/// Dense Gaussian elimination with partial pivoting.
pub fn dense_solve(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let n = b.len();
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i][k].abs().total_cmp(&a[j][k].abs()))
            .unwrap();
        a.swap(k, p);
        b.swap(k, p);
        assert!(a[k][k].abs() > 1e-300, "singular dense system");
        for i in k + 1..n {
            let f = a[i][k] / a[k][k];
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                a[i][j] -= f * a[k][j];
            }
            b[i] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for k in (0..n).rev() {
        let s: f64 = (k + 1..n).map(|j| a[k][j] * x[j]).sum();
        x[k] = (b[k] - s) / a[k][k];
    }
    x
}

/// `U`, `U_x`, `U_xx` of the spline with parameters `c` at `x`, summed from
/// the basis functions themselves.
pub fn spline_jet(c: &CoefficientVector, part: &UniformPartition, x: f64) -> [f64; 3] {
    let n = part.n_cells() as isize;
    let mut out = [0.0; 3];
    for j in -1..=n + 1 {
        let d = c.get(j);
        out[0] += d * part.ctb(j, x);
        out[1] += d * part.ctb_deriv(j, x, 1);
        out[2] += d * part.ctb_deriv(j, x, 2);
    }
    out
}

/// One linearised Crank-Nicolson step written out as a dense
/// `(N+3) x (N+3)` system: Dirichlet rows at both ends and one collocation
/// row per knot, every entry taken from direct basis evaluation.
pub fn dense_step(c: &CoefficientVector, p: &ProblemSpec) -> Vec<f64> {
    let part = p.partition().unwrap();
    let n = part.n_cells();
    let size = n + 3;
    let half_dt = 0.5 * p.dt;
    let mut a = vec![vec![0.0; size]; size];
    let mut b = vec![0.0; size];
    let col = |j: isize| (j + 1) as usize;
    for j in -1..=n as isize + 1 {
        a[0][col(j)] = part.ctb(j, part.a());
        a[n + 2][col(j)] = part.ctb(j, part.b());
    }
    b[0] = p.boundary_left;
    b[n + 2] = p.boundary_right;
    for m in 0..=n {
        let x = part.knot(m as isize);
        let [u, ux, uxx] = spline_jet(c, &part, x);
        for j in -1..=n as isize + 1 {
            let (v, d1, d2) = (part.ctb(j, x), part.ctb_deriv(j, x, 1), part.ctb_deriv(j, x, 2));
            a[m + 1][col(j)] = v + half_dt * (v * ux + u * d1) - p.lambda * half_dt * d2;
        }
        b[m + 1] = u + p.lambda * half_dt * uxx;
    }
    dense_solve(a, b)
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn max_abs(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, v| m.max(v.abs()))
}

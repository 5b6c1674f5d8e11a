//! Crank-Nicolson / collocation scheme for `U_t + U U_x - lambda U_xx = 0`.
//!
//! The solution is expanded as `U_N(x, t) = sum_{i=-1}^{N+1} d_i(t) CTB_i(x)`.
//! Collocating the time-discretised equation at the knots, with the product
//! term linearised as `(U U_x)^{n+1} ~ U^{n+1} U_x^n + U^n U_x^{n+1} - U^n U_x^n`,
//! gives for each knot `m = 0..=N`
//!
//! ```text
//!   [a1 + dt/2 (a1 Ux + b1 U - l g1)] d_{m-1}
//! + [a2 + dt/2 (a2 Ux      - l g2)] d_m
//! + [a1 + dt/2 (a1 Ux + b2 U - l g1)] d_{m+1}
//! = (a1 + l dt/2 g1) d^n_{m-1} + (a2 + l dt/2 g2) d^n_m + (a1 + l dt/2 g1) d^n_{m+1}
//! ```
//!
//! with `U`, `Ux` the nodal value and slope at `x_m` from the previous level.
//! The two phantom parameters `d_{-1}`, `d_{N+1}` are eliminated through the
//! Dirichlet data, leaving an `(N+1) x (N+1)` tridiagonal system per step.

use std::f64::consts::PI;
use std::fmt;
use std::sync::Arc;

use crate::basis::{SchemeCoefficients, UniformPartition};
use crate::error::{Error, Result};
use crate::exact::TravelingWave;
use crate::linalg::{banded_solve, thomas_solve, BandedSystem, TridiagonalSystem};

/// Relative tolerance for sample times landing on the step grid.
pub const TIME_ALIGNMENT_TOL: f64 = 1e-9;

/// Tolerance for `f(a) = U_a`, `f(b) = U_b`.
pub const COMPATIBILITY_TOL: f64 = 1e-10;

/// Initial condition together with its derivative; the derivative supplies
/// the two end conditions of the initial interpolation.
pub trait InitialProfile: Send + Sync + fmt::Debug {
    fn value(&self, x: f64) -> f64;
    fn slope(&self, x: f64) -> f64;
}

/// `sin(pi x)`.
#[derive(Debug, Clone, Copy, Default)]
pub struct SineProfile;

impl InitialProfile for SineProfile {
    fn value(&self, x: f64) -> f64 {
        (PI * x).sin()
    }
    fn slope(&self, x: f64) -> f64 {
        PI * (PI * x).cos()
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ConstantProfile(pub f64);

impl InitialProfile for ConstantProfile {
    fn value(&self, _x: f64) -> f64 {
        self.0
    }
    fn slope(&self, _x: f64) -> f64 {
        0.0
    }
}

/// Travelling wave at `t = 0`.
impl InitialProfile for TravelingWave {
    fn value(&self, x: f64) -> f64 {
        TravelingWave::value(self, x, 0.0)
    }
    fn slope(&self, x: f64) -> f64 {
        TravelingWave::slope(self, x, 0.0)
    }
}

/// Boundary-value problem on `[a, b]` with constant Dirichlet data.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub dt: f64,
    pub n_cells: usize,
    pub end_time: f64,
    pub boundary_left: f64,
    pub boundary_right: f64,
    pub initial: Arc<dyn InitialProfile>,
    /// Allowed mismatch between the initial profile and the boundary data.
    pub compatibility_tol: f64,
}

impl ProblemSpec {
    /// The sine-wave problem on `[0, 1]` with zero boundary data.
    pub fn sine(lambda: f64, n_cells: usize, dt: f64, end_time: f64) -> Self {
        Self {
            lambda,
            a: 0.0,
            b: 1.0,
            dt,
            n_cells,
            end_time,
            boundary_left: 0.0,
            boundary_right: 0.0,
            initial: Arc::new(SineProfile),
            compatibility_tol: COMPATIBILITY_TOL,
        }
    }

    /// The travelling-wave problem on `[0, 1]`, initial data from the exact
    /// solution at `t = 0`, Dirichlet data `mu + alpha` and `mu - alpha`.
    ///
    /// The initial profile only approaches the boundary data exponentially
    /// in `alpha / lambda`, so the compatibility check is relaxed to the
    /// actual mismatch.
    pub fn traveling(wave: TravelingWave, n_cells: usize, dt: f64, end_time: f64) -> Self {
        let left = wave.mu + wave.alpha;
        let right = wave.mu - wave.alpha;
        let mismatch = (wave.value(0.0, 0.0) - left)
            .abs()
            .max((wave.value(1.0, 0.0) - right).abs());
        Self {
            lambda: wave.lambda,
            a: 0.0,
            b: 1.0,
            dt,
            n_cells,
            end_time,
            boundary_left: left,
            boundary_right: right,
            initial: Arc::new(wave),
            compatibility_tol: COMPATIBILITY_TOL.max(1.001 * mismatch),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return Err(Error::config("lambda", format!("must be > 0, got {}", self.lambda)));
        }
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(Error::config("dt", format!("must be > 0, got {}", self.dt)));
        }
        if !(self.end_time >= 0.0) || !self.end_time.is_finite() {
            return Err(Error::config(
                "end_time",
                format!("must be >= 0, got {}", self.end_time),
            ));
        }
        if !(self.boundary_left.is_finite() && self.boundary_right.is_finite()) {
            return Err(Error::config("boundary", "boundary values must be finite"));
        }
        self.partition()
            .map_err(|e| Error::config("n_cells", e.to_string()))?;
        let left = (self.initial.value(self.a) - self.boundary_left).abs();
        if !(left <= self.compatibility_tol) {
            return Err(Error::config(
                "boundary_left",
                format!("initial condition differs by {left:e} at x = {}", self.a),
            ));
        }
        let right = (self.initial.value(self.b) - self.boundary_right).abs();
        if !(right <= self.compatibility_tol) {
            return Err(Error::config(
                "boundary_right",
                format!("initial condition differs by {right:e} at x = {}", self.b),
            ));
        }
        Ok(())
    }

    pub fn partition(&self) -> Result<UniformPartition> {
        UniformPartition::new(self.a, self.b, self.n_cells)
    }
}

/// Spline parameters `d_{-1} ..= d_{N+1}` at one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientVector {
    delta: Vec<f64>,
    pub time: f64,
}

impl CoefficientVector {
    /// `delta` holds `d_{-1}` first; it must have `N + 3` entries, `N >= 3`.
    pub fn new(delta: Vec<f64>, time: f64) -> Result<Self> {
        if delta.len() < 6 {
            return Err(Error::domain(format!(
                "coefficient vector needs N + 3 >= 6 entries, got {}",
                delta.len()
            )));
        }
        Ok(Self { delta, time })
    }

    pub fn zeros(n_cells: usize) -> Self {
        Self {
            delta: vec![0.0; n_cells + 3],
            time: 0.0,
        }
    }

    /// `N`.
    pub fn n_cells(&self) -> usize {
        self.delta.len() - 3
    }

    /// `d_i`, `i` in `-1 ..= N+1`.
    #[inline]
    pub fn get(&self, i: isize) -> f64 {
        self.delta[(i + 1) as usize]
    }

    #[inline]
    fn set(&mut self, i: isize, v: f64) {
        self.delta[(i + 1) as usize] = v;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.delta
    }
}

/// Nodal value, slope and curvature at `x_0 ..= x_N`.
#[derive(Debug, Clone, PartialEq)]
pub struct NodalState {
    pub u: Vec<f64>,
    pub ux: Vec<f64>,
    pub uxx: Vec<f64>,
}

pub fn nodal_values(c: &CoefficientVector, sc: &SchemeCoefficients) -> NodalState {
    let n = c.n_cells() as isize;
    let mut u = Vec::with_capacity(n as usize + 1);
    let mut ux = Vec::with_capacity(n as usize + 1);
    let mut uxx = Vec::with_capacity(n as usize + 1);
    for i in 0..=n {
        let (l, m, r) = (c.get(i - 1), c.get(i), c.get(i + 1));
        u.push(sc.alpha1 * l + sc.alpha2 * m + sc.alpha1 * r);
        ux.push(sc.beta1 * l + sc.beta2 * r);
        uxx.push(sc.gamma1 * l + sc.gamma2 * m + sc.gamma1 * r);
    }
    NodalState { u, ux, uxx }
}

/// Solves for `d^0` from interpolation at every knot plus the slope of the
/// initial profile at both ends: an `(N+3) x (N+3)` pentadiagonal system.
pub fn initialize_coefficients(
    p: &ProblemSpec,
    part: &UniformPartition,
    sc: &SchemeCoefficients,
) -> Result<CoefficientVector> {
    let n = part.n_cells();
    let mut sys = BandedSystem::zeros(n + 3);
    // column j holds d_{j-1}
    sys.set(0, 0, sc.beta1);
    sys.set(0, 2, sc.beta2);
    sys.rhs[0] = p.initial.slope(part.a());
    for m in 0..=n {
        let row = m + 1;
        sys.set(row, m, sc.alpha1);
        sys.set(row, m + 1, sc.alpha2);
        sys.set(row, m + 2, sc.alpha1);
        sys.rhs[row] = p.initial.value(part.knot(m as isize));
    }
    sys.set(n + 2, n, sc.beta1);
    sys.set(n + 2, n + 2, sc.beta2);
    sys.rhs[n + 2] = p.initial.slope(part.b());

    let delta = banded_solve(&sys)?;
    CoefficientVector::new(delta, 0.0)
}

/// The `N + 1` collocation equations of one step over the `N + 3` unknowns.
/// Row `m` reads `lower[m] d_{m-1} + diag[m] d_m + upper[m] d_{m+1} = rhs[m]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CollocationSystem {
    pub lower: Vec<f64>,
    pub diag: Vec<f64>,
    pub upper: Vec<f64>,
    pub rhs: Vec<f64>,
}

pub fn assemble_step(
    c: &CoefficientVector,
    p: &ProblemSpec,
    sc: &SchemeCoefficients,
) -> CollocationSystem {
    let n = c.n_cells();
    let half_dt = 0.5 * p.dt;
    let lam = p.lambda;
    let nodal = nodal_values(c, sc);

    let rhs_side = sc.alpha1 + lam * half_dt * sc.gamma1;
    let rhs_mid = sc.alpha2 + lam * half_dt * sc.gamma2;

    let mut sys = CollocationSystem {
        lower: Vec::with_capacity(n + 1),
        diag: Vec::with_capacity(n + 1),
        upper: Vec::with_capacity(n + 1),
        rhs: Vec::with_capacity(n + 1),
    };
    for m in 0..=n {
        let u = nodal.u[m];
        let ux = nodal.ux[m];
        let side = sc.alpha1 * ux - lam * sc.gamma1;
        sys.lower.push(sc.alpha1 + half_dt * (side + sc.beta1 * u));
        sys.diag.push(sc.alpha2 + half_dt * (sc.alpha2 * ux - lam * sc.gamma2));
        sys.upper.push(sc.alpha1 + half_dt * (side + sc.beta2 * u));

        let mi = m as isize;
        sys.rhs
            .push(rhs_side * (c.get(mi - 1) + c.get(mi + 1)) + rhs_mid * c.get(mi));
    }
    sys
}

/// Removes `d_{-1}` and `d_{N+1}` using
/// `d_{-1} = (U_a - a2 d_0 - a1 d_1) / a1` and its mirror at `x_N`.
pub fn eliminate_boundary(
    sys: &CollocationSystem,
    p: &ProblemSpec,
    sc: &SchemeCoefficients,
) -> TridiagonalSystem {
    let n = sys.diag.len() - 1;
    let ratio = sc.alpha2 / sc.alpha1;
    let mut diag = sys.diag.clone();
    let mut rhs = sys.rhs.clone();
    let mut sup = sys.upper[..n].to_vec();
    let mut sub = sys.lower[1..].to_vec();

    let l0 = sys.lower[0];
    diag[0] -= l0 * ratio;
    sup[0] -= l0;
    rhs[0] -= l0 * p.boundary_left / sc.alpha1;

    let un = sys.upper[n];
    diag[n] -= un * ratio;
    sub[n - 1] -= un;
    rhs[n] -= un * p.boundary_right / sc.alpha1;

    TridiagonalSystem {
        sub,
        diag,
        sup,
        rhs,
    }
}

/// One time step: assemble, eliminate the phantom parameters, solve, and
/// recover `d_{-1}`, `d_{N+1}` from the boundary data.
pub fn advance(
    c: &CoefficientVector,
    p: &ProblemSpec,
    sc: &SchemeCoefficients,
) -> Result<CoefficientVector> {
    let n = c.n_cells() as isize;
    let interior = thomas_solve(&eliminate_boundary(&assemble_step(c, p, sc), p, sc))?;

    let mut next = CoefficientVector::zeros(c.n_cells());
    for (i, v) in interior.into_iter().enumerate() {
        next.set(i as isize, v);
    }
    next.set(
        -1,
        (p.boundary_left - sc.alpha2 * next.get(0) - sc.alpha1 * next.get(1)) / sc.alpha1,
    );
    next.set(
        n + 1,
        (p.boundary_right - sc.alpha1 * next.get(n - 1) - sc.alpha2 * next.get(n)) / sc.alpha1,
    );
    next.time = c.time + p.dt;
    Ok(next)
}

/// Time-marching driver owning one evolving coefficient vector.
#[derive(Debug, Clone)]
pub struct Solver {
    problem: ProblemSpec,
    partition: UniformPartition,
    coeffs: SchemeCoefficients,
    state: CoefficientVector,
    step: usize,
}

impl Solver {
    pub fn new(problem: ProblemSpec) -> Result<Self> {
        problem.validate()?;
        let partition = problem.partition()?;
        let coeffs = SchemeCoefficients::for_partition(&partition);
        let state = initialize_coefficients(&problem, &partition, &coeffs)?;
        Ok(Self {
            problem,
            partition,
            coeffs,
            state,
            step: 0,
        })
    }

    pub fn problem(&self) -> &ProblemSpec {
        &self.problem
    }

    pub fn partition(&self) -> &UniformPartition {
        &self.partition
    }

    pub fn coefficients(&self) -> &SchemeCoefficients {
        &self.coeffs
    }

    pub fn state(&self) -> &CoefficientVector {
        &self.state
    }

    pub fn steps_taken(&self) -> usize {
        self.step
    }

    /// `step * dt`, free of accumulated rounding.
    pub fn time(&self) -> f64 {
        self.step as f64 * self.problem.dt
    }

    pub fn nodal(&self) -> NodalState {
        nodal_values(&self.state, &self.coeffs)
    }

    pub fn step(&mut self) -> Result<()> {
        let mut next = advance(&self.state, &self.problem, &self.coeffs)?;
        self.step += 1;
        next.time = self.time();
        self.state = next;
        Ok(())
    }

    pub fn step_until(&mut self, target_step: usize) -> Result<()> {
        while self.step < target_step {
            self.step()?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub time: f64,
    pub step: usize,
    pub coefficients: CoefficientVector,
    pub state: NodalState,
}

/// Step index of `time`, or an error if it is not on the grid.
pub fn aligned_step(time: f64, dt: f64) -> Result<usize> {
    let steps = time / dt;
    let k = steps.round();
    if !(time >= 0.0) || (steps - k).abs() > TIME_ALIGNMENT_TOL * k.max(1.0) {
        return Err(Error::MisalignedTime { time, dt });
    }
    Ok(k as usize)
}

/// Runs `p` to `t_end` and records the state at each of `sample_times`
/// (ascending, on the step grid, at most `t_end`). With no sample times the
/// final state is returned.
pub fn solve_to_time(p: &ProblemSpec, t_end: f64, sample_times: &[f64]) -> Result<Vec<Snapshot>> {
    if !(t_end >= 0.0) {
        return Err(Error::config("t_end", format!("must be >= 0, got {t_end}")));
    }
    let total = (t_end / p.dt).round() as usize;
    let mut targets = Vec::with_capacity(sample_times.len().max(1));
    for &t in sample_times {
        let k = aligned_step(t, p.dt)?;
        if k > total {
            return Err(Error::config(
                "sample_times",
                format!("sample time {t} is beyond t_end = {t_end}"),
            ));
        }
        if targets.last().is_some_and(|&(_, prev)| k <= prev) {
            return Err(Error::config(
                "sample_times",
                "sample times must be strictly ascending",
            ));
        }
        targets.push((t, k));
    }
    if targets.is_empty() {
        targets.push((total as f64 * p.dt, total));
    }

    let mut solver = Solver::new(p.clone())?;
    let mut out = Vec::with_capacity(targets.len());
    for (time, k) in targets {
        solver.step_until(k)?;
        out.push(Snapshot {
            time,
            step: k,
            coefficients: solver.state().clone(),
            state: solver.nodal(),
        });
    }
    Ok(out)
}
